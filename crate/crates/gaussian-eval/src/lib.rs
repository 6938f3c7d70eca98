//! Numeric evaluation of symbolic information terms on the jointly Gaussian
//! superposition input model.
//!
//! The model is linear: every supported random-variable label is a fixed
//! linear combination of independent unit-variance circularly-symmetric
//! complex Gaussian basis coordinates, so every covariance is a Gram matrix
//! and every conditional mutual information is a ratio of (pseudo-)
//! determinants. A generic engine ([`eval_term`]) evaluates any canonical
//! term over the supported labels; the twelve per-user decoding bounds also
//! have direct closed-form transcriptions ([`closed_form`]) used as an
//! independent oracle.
//!
//! All rates are in bits per complex channel use (log base 2).

mod closed;
mod cov;

pub use closed::{bound_term, closed_form, DecodingBound, User};
pub use cov::{build_cov, eval_expr, eval_term, CovModel, EvalError, BASIS_DIM};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// (De)serialize a complex number as `{"re": …, "im": …}`.
mod complex_rect {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Rect {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Rect { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Rect::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }
}

/// Channel gains and power budgets of the two-source, two-destination
/// Gaussian network. Noise variances are fixed at 1, so powers are
/// dimensionless SNR units.
///
/// Direct gains (`h31`, `h42`) and cooperation gains (`h21`, `h12`) are
/// real; the interfering gains (`h32`, `h41`) are complex because their
/// phase changes the beamforming term of the full decoding bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianScenario {
    /// Direct gain, source 1 to destination 1.
    pub h31: f64,
    /// Direct gain, source 2 to destination 2.
    pub h42: f64,
    /// Cooperation gain, source 1 to source 2.
    pub h21: f64,
    /// Cooperation gain, source 2 to source 1.
    pub h12: f64,
    /// Interfering gain, source 2 to destination 1.
    #[serde(with = "complex_rect")]
    pub h32: Complex64,
    /// Interfering gain, source 1 to destination 2.
    #[serde(with = "complex_rect")]
    pub h41: Complex64,
    /// Power budget of source 1.
    #[serde(rename = "P1")]
    pub p1: f64,
    /// Power budget of source 2.
    #[serde(rename = "P2")]
    pub p2: f64,
}

impl GaussianScenario {
    /// Rotate the interfering gains by the given phases (radians), keeping
    /// their magnitudes. [`symmetric_network`] produces phase-0 gains; this
    /// is the override for studying phase sensitivity.
    pub fn with_interference_phases(mut self, phi32: f64, phi41: f64) -> Self {
        self.h32 = Complex64::from_polar(self.h32.norm(), phi32);
        self.h41 = Complex64::from_polar(self.h41.norm(), phi41);
        self
    }

    /// Power budget of the given user.
    pub fn budget(&self, user: User) -> f64 {
        match user {
            User::One => self.p1,
            User::Two => self.p2,
        }
    }
}

/// The symmetric geometry: sources at mutual distance `y`, each at distance
/// `x` from its own destination, with gains inversely proportional to
/// distance. Cooperation gains `1/y`, direct gains `1/x`, interfering gains
/// `1/√(x²+y²)` (real, phase 0; see
/// [`GaussianScenario::with_interference_phases`]).
///
/// Panics if `x ≤ 0`, `y ≤ 0`, or `p < 0`.
pub fn symmetric_network(p: f64, x: f64, y: f64) -> GaussianScenario {
    assert!(x > 0.0 && y > 0.0, "distances must be positive");
    assert!(p >= 0.0, "power must be nonnegative");
    let cross = 1.0 / x.hypot(y);
    GaussianScenario {
        h31: 1.0 / x,
        h42: 1.0 / x,
        h21: 1.0 / y,
        h12: 1.0 / y,
        h32: Complex64::new(cross, 0.0),
        h41: Complex64::new(cross, 0.0),
        p1: p,
        p2: p,
    }
}

/// Invalid power split: a negative or non-finite component, or a per-user
/// total above the budget.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PowerError {
    /// A variance or beamforming weight is negative or non-finite.
    #[error("power component {name} is invalid: {value}")]
    BadComponent {
        /// Field name of the offending component.
        name: &'static str,
        /// Its value.
        value: f64,
    },
    /// The per-user power total exceeds the scenario budget.
    #[error("user {user} spends {used} but has budget {budget}")]
    BudgetExceeded {
        /// 1-based user index.
        user: u8,
        /// Total spent power.
        used: f64,
        /// The budget it exceeds.
        budget: f64,
    },
}

/// Relative slack allowed when checking the power budget, so grid points
/// that sum to the budget survive floating-point rounding.
const POWER_SLACK: f64 = 1e-9;

/// One point of the superposition power allocation: beamforming weights on
/// the shared coordinate and the six layer variances.
///
/// The layers of user `u` stack as `V_u = α_u·Q + X_u0c`,
/// `U_u = V_u + X_u0n`, `T_u = X_u = U_u + X_uun`; user `u` spends
/// `|α_u|² + var_u0c + var_u0n + var_uun`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    /// Beamforming weight of source 1 on the shared coordinate.
    #[serde(with = "complex_rect")]
    pub alpha1: Complex64,
    /// Beamforming weight of source 2 on the shared coordinate.
    #[serde(with = "complex_rect")]
    pub alpha2: Complex64,
    /// Variance of source 1's cooperative-common innovation.
    pub var_10c: f64,
    /// Variance of source 1's non-cooperative common layer.
    pub var_10n: f64,
    /// Variance of source 1's private layer.
    pub var_11n: f64,
    /// Variance of source 2's cooperative-common innovation.
    pub var_20c: f64,
    /// Variance of source 2's non-cooperative common layer.
    pub var_20n: f64,
    /// Variance of source 2's private layer.
    pub var_22n: f64,
}

impl PowerSplit {
    /// The all-zero split: both sources silent.
    pub fn silent() -> PowerSplit {
        PowerSplit::default()
    }

    /// Total power spent by the given user.
    pub fn used_power(&self, user: User) -> f64 {
        match user {
            User::One => self.alpha1.norm_sqr() + self.var_10c + self.var_10n + self.var_11n,
            User::Two => self.alpha2.norm_sqr() + self.var_20c + self.var_20n + self.var_22n,
        }
    }

    /// True when no power rides on the cooperative layers (no shared
    /// coordinate, no cooperative-common innovations): the split only
    /// exercises the non-cooperative region.
    pub fn is_no_gf(&self) -> bool {
        self.alpha1.norm_sqr() == 0.0
            && self.alpha2.norm_sqr() == 0.0
            && self.var_10c == 0.0
            && self.var_20c == 0.0
    }

    /// Swap the two users' allocations.
    pub fn swap_users(self) -> PowerSplit {
        PowerSplit {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            var_10c: self.var_20c,
            var_10n: self.var_20n,
            var_11n: self.var_22n,
            var_20c: self.var_10c,
            var_20n: self.var_10n,
            var_22n: self.var_11n,
        }
    }

    /// Check componentwise validity and both power budgets.
    pub fn validate(&self, scn: &GaussianScenario) -> Result<(), PowerError> {
        let vars = [
            ("var_10c", self.var_10c),
            ("var_10n", self.var_10n),
            ("var_11n", self.var_11n),
            ("var_20c", self.var_20c),
            ("var_20n", self.var_20n),
            ("var_22n", self.var_22n),
        ];
        for (name, value) in vars {
            if !value.is_finite() || value < 0.0 {
                return Err(PowerError::BadComponent { name, value });
            }
        }
        for (name, value) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(PowerError::BadComponent {
                    name,
                    value: f64::NAN,
                });
            }
        }
        for (user, idx) in [(User::One, 1u8), (User::Two, 2u8)] {
            let used = self.used_power(user);
            let budget = scn.budget(user);
            if used > budget + POWER_SLACK * (1.0 + budget) {
                return Err(PowerError::BudgetExceeded {
                    user: idx,
                    used,
                    budget,
                });
            }
        }
        Ok(())
    }
}
