//! Closed-form transcriptions of the twelve per-user decoding bounds and
//! their anchor terms.

use info_symbols::{InfoTerm, RvLabel};

use crate::{GaussianScenario, PowerSplit};

/// One of the two source/destination pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum User {
    /// Source 1 / destination 1.
    One,
    /// Source 2 / destination 2.
    Two,
}

impl User {
    /// Both users.
    pub const BOTH: [User; 2] = [User::One, User::Two];
}

/// The six decoding-bound kinds of one user's rate system: the cooperative
/// common rate decoded at the other source, and the five private-stack
/// bounds at the own destination (private alone, private with the
/// interferer's common, private with the own common, private with both
/// commons, and the full stack including the cooperative layers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecodingBound {
    /// Cooperative common innovation, decoded at the other source.
    Coop,
    /// Private layer alone.
    Priv,
    /// Private layer jointly with the interferer's common layer.
    PrivCross,
    /// Private layer jointly with the own common layer.
    PrivOwn,
    /// Private layer jointly with both common layers.
    PrivBoth,
    /// The full stack, cooperative layers included.
    Full,
}

impl DecodingBound {
    /// All six kinds, in chain order.
    pub const ALL: [DecodingBound; 6] = [
        DecodingBound::Coop,
        DecodingBound::Priv,
        DecodingBound::PrivCross,
        DecodingBound::PrivOwn,
        DecodingBound::PrivBoth,
        DecodingBound::Full,
    ];
}

/// The canonical information term a decoding bound evaluates.
pub fn bound_term(bound: DecodingBound, user: User) -> InfoTerm {
    use RvLabel::*;
    let t = match bound {
        DecodingBound::Coop => InfoTerm::new([V1], [Y2], [Q, V2, U2, T2, X2]),
        DecodingBound::Priv => InfoTerm::new([Y3], [T1], [Q, V1, V2, U1, U2]),
        DecodingBound::PrivCross => InfoTerm::new([Y3], [T1, U2], [Q, V1, V2, U1]),
        DecodingBound::PrivOwn => InfoTerm::new([Y3], [T1, U1], [Q, V1, V2, U2]),
        DecodingBound::PrivBoth => InfoTerm::new([Y3], [T1, U1, U2], [Q, V1, V2]),
        DecodingBound::Full => InfoTerm::new([Y3], [T1, U1, U2, Q, V1, V2], []),
    }
    .expect("decoding-bound terms never collapse");
    match user {
        User::One => t,
        User::Two => t.swap_user(),
    }
}

/// Direct closed-form value of a decoding bound, in bits per channel use.
///
/// These are hand-transcribed SNR formulas, independent of the generic
/// covariance engine, and serve as its oracle. For user 1 with
/// `g = |h|²`, writing `D = 1 + g32·var_22n` for the residual interference
/// at destination 1:
/// - `Coop`:      `log₂(1 + g21·var_10c / (1 + g21·(var_10n + var_11n)))`
/// - `Priv`:      `log₂(1 + g31·var_11n / D)`
/// - `PrivCross`: `log₂(1 + (g31·var_11n + g32·var_20n) / D)`
/// - `PrivOwn`:   `log₂(1 + g31·(var_10n + var_11n) / D)`
/// - `PrivBoth`:  `log₂(1 + (g31·(var_10n + var_11n) + g32·var_20n) / D)`
/// - `Full`:      `log₂(1 + (g31·(var_10c + var_10n + var_11n)
///   + g32·(var_20c + var_20n) + |h31·α1 + h32·α2|²) / D)`
///
/// User 2 swaps the roles throughout (`g21→g12`, `g31→g42`, `g32→g41`,
/// variances mirrored, beamforming `|h42·α2 + h41·α1|²`).
pub fn closed_form(
    bound: DecodingBound,
    user: User,
    scn: &GaussianScenario,
    split: &PowerSplit,
) -> f64 {
    let snr = |x: f64| (1.0 + x).log2();
    match user {
        User::One => {
            let g21 = scn.h21 * scn.h21;
            let g31 = scn.h31 * scn.h31;
            let g32 = scn.h32.norm_sqr();
            let d = 1.0 + g32 * split.var_22n;
            match bound {
                DecodingBound::Coop => {
                    snr(g21 * split.var_10c / (1.0 + g21 * (split.var_10n + split.var_11n)))
                }
                DecodingBound::Priv => snr(g31 * split.var_11n / d),
                DecodingBound::PrivCross => {
                    snr((g31 * split.var_11n + g32 * split.var_20n) / d)
                }
                DecodingBound::PrivOwn => snr(g31 * (split.var_10n + split.var_11n) / d),
                DecodingBound::PrivBoth => {
                    snr((g31 * (split.var_10n + split.var_11n) + g32 * split.var_20n) / d)
                }
                DecodingBound::Full => {
                    let beam = (scn.h32 * split.alpha2
                        + num_complex::Complex64::new(scn.h31, 0.0) * split.alpha1)
                        .norm_sqr();
                    snr(
                        (g31 * (split.var_10c + split.var_10n + split.var_11n)
                            + g32 * (split.var_20c + split.var_20n)
                            + beam)
                            / d,
                    )
                }
            }
        }
        User::Two => {
            let g12 = scn.h12 * scn.h12;
            let g42 = scn.h42 * scn.h42;
            let g41 = scn.h41.norm_sqr();
            let d = 1.0 + g41 * split.var_11n;
            match bound {
                DecodingBound::Coop => {
                    snr(g12 * split.var_20c / (1.0 + g12 * (split.var_20n + split.var_22n)))
                }
                DecodingBound::Priv => snr(g42 * split.var_22n / d),
                DecodingBound::PrivCross => {
                    snr((g42 * split.var_22n + g41 * split.var_10n) / d)
                }
                DecodingBound::PrivOwn => snr(g42 * (split.var_20n + split.var_22n) / d),
                DecodingBound::PrivBoth => {
                    snr((g42 * (split.var_20n + split.var_22n) + g41 * split.var_10n) / d)
                }
                DecodingBound::Full => {
                    let beam = (num_complex::Complex64::new(scn.h42, 0.0) * split.alpha2
                        + scn.h41 * split.alpha1)
                        .norm_sqr();
                    snr(
                        (g42 * (split.var_20c + split.var_20n + split.var_22n)
                            + g41 * (split.var_10c + split.var_10n)
                            + beam)
                            / d,
                    )
                }
            }
        }
    }
}
