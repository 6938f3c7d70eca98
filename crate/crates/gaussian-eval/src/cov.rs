//! The linear covariance model and the generic term evaluator.

use std::collections::BTreeMap;

use info_symbols::{InfoAtom, InfoExpr, InfoTerm, RvLabel};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{GaussianScenario, PowerError, PowerSplit};

/// Number of independent basis coordinates: the shared coordinate, the six
/// layer innovations, and the four channel noises.
pub const BASIS_DIM: usize = 11;

/// Basis indices, in order: Q, X10c, X10n, X11n, X20c, X20n, X22n, N1..N4.
const Q: usize = 0;
const X10C: usize = 1;
const X10N: usize = 2;
const X11N: usize = 3;
const X20C: usize = 4;
const X20N: usize = 5;
const X22N: usize = 6;
const N1: usize = 7;
const N2: usize = 8;
const N3: usize = 9;
const N4: usize = 10;

type Row = [Complex64; BASIS_DIM];

/// Eigenvalues at or below `EIG_CUTOFF` times the spectral scale count as
/// zero for pseudo-determinants, ranks, and pseudo-inverses.
const EIG_CUTOFF: f64 = 1e-12;

/// Why a term could not be evaluated on a model.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// The label has no Gaussian row (the cooperative-private carriers have
    /// no single-letter Gaussian model here).
    #[error("label {0} has no Gaussian row in this model")]
    UnsupportedLabel(RvLabel),
    /// Conditioning produced an inconsistent pseudo-inverse or a rank
    /// mismatch between the two conditional blocks.
    #[error("numerical degeneracy evaluating {labels}")]
    Degenerate {
        /// Display form of the offending term.
        labels: String,
    },
    /// A capacity symbol appeared without a bound value.
    #[error("capacity symbol `{0}` has no bound value")]
    MissingCapacity(String),
}

/// A snapshot of the jointly Gaussian network at one (scenario, split)
/// point: each supported label is a row of coefficients over independent
/// unit-variance circularly-symmetric complex basis coordinates, so the
/// covariance of any label set is the Gram matrix of its rows.
#[derive(Clone, Debug)]
pub struct CovModel {
    rows: BTreeMap<RvLabel, Row>,
}

/// Build the covariance model for a scenario and a valid power split.
///
/// Layers stack as `V_u = α_u·Q + X_u0c`, `U_u = V_u + X_u0n`,
/// `T_u = X_u = U_u + X_uun`; outputs are `Y1 = h12·X2 + N1`,
/// `Y2 = h21·X1 + N2`, `Y3 = h31·X1 + h32·X2 + N3`,
/// `Y4 = h41·X1 + h42·X2 + N4`.
pub fn build_cov(scn: &GaussianScenario, split: &PowerSplit) -> Result<CovModel, PowerError> {
    split.validate(scn)?;
    let zero: Row = [Complex64::new(0.0, 0.0); BASIS_DIM];
    let real = |x: f64| Complex64::new(x, 0.0);

    let mut q = zero;
    q[Q] = real(1.0);

    let mut v1 = zero;
    v1[Q] = split.alpha1;
    v1[X10C] = real(split.var_10c.sqrt());
    let mut u1 = v1;
    u1[X10N] = real(split.var_10n.sqrt());
    let mut x1 = u1;
    x1[X11N] = real(split.var_11n.sqrt());

    let mut v2 = zero;
    v2[Q] = split.alpha2;
    v2[X20C] = real(split.var_20c.sqrt());
    let mut u2 = v2;
    u2[X20N] = real(split.var_20n.sqrt());
    let mut x2 = u2;
    x2[X22N] = real(split.var_22n.sqrt());

    let combine = |g1: Complex64, g2: Complex64, noise: usize| {
        let mut y = zero;
        for k in 0..BASIS_DIM {
            y[k] = g1 * x1[k] + g2 * x2[k];
        }
        y[noise] = real(1.0);
        y
    };
    let y1 = combine(real(0.0), real(scn.h12), N1);
    let y2 = combine(real(scn.h21), real(0.0), N2);
    let y3 = combine(real(scn.h31), scn.h32, N3);
    let y4 = combine(scn.h41, real(scn.h42), N4);

    let mut rows = BTreeMap::new();
    rows.insert(RvLabel::Q, q);
    rows.insert(RvLabel::V1, v1);
    rows.insert(RvLabel::U1, u1);
    rows.insert(RvLabel::T1, x1);
    rows.insert(RvLabel::X1, x1);
    rows.insert(RvLabel::V2, v2);
    rows.insert(RvLabel::U2, u2);
    rows.insert(RvLabel::T2, x2);
    rows.insert(RvLabel::X2, x2);
    rows.insert(RvLabel::Y1, y1);
    rows.insert(RvLabel::Y2, y2);
    rows.insert(RvLabel::Y3, y3);
    rows.insert(RvLabel::Y4, y4);
    Ok(CovModel { rows })
}

impl CovModel {
    fn row(&self, label: RvLabel) -> Result<&Row, EvalError> {
        self.rows.get(&label).ok_or(EvalError::UnsupportedLabel(label))
    }

    fn stack(&self, labels: impl IntoIterator<Item = RvLabel>) -> Result<Vec<Row>, EvalError> {
        labels.into_iter().map(|l| self.row(l).copied()).collect()
    }

    /// Variance of a single label.
    pub fn variance(&self, label: RvLabel) -> Result<f64, EvalError> {
        Ok(self.covariance(label, label)?.re)
    }

    /// Covariance `E[a · conj(b)]` of two labels.
    pub fn covariance(&self, a: RvLabel, b: RvLabel) -> Result<Complex64, EvalError> {
        let ra = self.row(a)?;
        let rb = self.row(b)?;
        Ok((0..BASIS_DIM).map(|k| ra[k] * rb[k].conj()).sum())
    }

    /// Conditional covariance (Schur complement) of `of` given `given`.
    pub fn conditional_gram(
        &self,
        of: &[RvLabel],
        given: &[RvLabel],
    ) -> Result<DMatrix<Complex64>, EvalError> {
        let l = self.stack(of.iter().copied())?;
        let c = self.stack(given.iter().copied())?;
        conditional(&l, &c).ok_or_else(|| EvalError::Degenerate {
            labels: format!("{of:?} | {given:?}"),
        })
    }
}

/// Gram matrix `G[i][j] = Σ_k a_i[k]·conj(b_j[k])` of two row stacks.
fn gram(a: &[Row], b: &[Row]) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.len(), b.len(), |i, j| {
        (0..BASIS_DIM).map(|k| a[i][k] * b[j][k].conj()).sum()
    })
}

/// Schur-complement conditional covariance `Σ_L - Σ_LC·Σ_C⁺·Σ_CL` with an
/// eigenvalue-cutoff pseudo-inverse. Returns `None` when the cross block
/// does not vanish on the null space of the conditioning block, which is
/// the only way the pseudo-inverse formula can be inconsistent.
fn conditional(l: &[Row], c: &[Row]) -> Option<DMatrix<Complex64>> {
    let g_ll = gram(l, l);
    if c.is_empty() {
        return Some(g_ll);
    }
    let g_cc = gram(c, c);
    let g_lc = gram(l, c);
    let eig = g_cc.clone().symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let cut = EIG_CUTOFF * scale.max(1.0);
    let inv_diag = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&v| {
            if v > cut {
                Complex64::new(1.0 / v, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
    );
    let pinv = &eig.eigenvectors * DMatrix::from_diagonal(&inv_diag) * eig.eigenvectors.adjoint();
    let resid = (&g_lc - (&g_lc * &pinv) * &g_cc).norm();
    if resid > 1e-6 * (1.0 + g_ll.norm() + g_cc.norm()) {
        return None;
    }
    Some(&g_ll - &g_lc * pinv * g_lc.adjoint())
}

/// Log-base-2 pseudo-determinant and rank of a Hermitian positive
/// semidefinite matrix. `None` when an eigenvalue is meaningfully negative
/// (numerical breakage of semidefiniteness).
fn log2_pdet(m: &DMatrix<Complex64>) -> Option<(f64, usize)> {
    let eig = m.clone().symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let cut = EIG_CUTOFF * scale.max(1.0);
    let mut logp = 0.0;
    let mut rank = 0;
    for &v in eig.eigenvalues.iter() {
        if v > cut {
            logp += v.log2();
            rank += 1;
        } else if v < -cut {
            return None;
        }
    }
    Some((logp, rank))
}

/// Evaluate a canonical term on the model, in bits per complex channel use.
///
/// Computes `log₂(pdet Σ_{L|C} / pdet Σ_{L|R∪C})` over the complex
/// circularly-symmetric covariances; on the real two-coordinate
/// representation this equals the usual half-log-determinant ratio, because
/// the real-representation determinants are the squared complex ones and
/// the constant factors cancel in the ratio.
///
/// Degeneracy errors name the term: they arise when the two conditional
/// blocks disagree in rank (a left-side direction became deterministic only
/// after conditioning on the right side, i.e. the mutual information
/// diverges) or when semidefiniteness breaks numerically.
pub fn eval_term(t: &InfoTerm, model: &CovModel) -> Result<f64, EvalError> {
    let degen = || EvalError::Degenerate {
        labels: t.to_string(),
    };
    let l = model.stack(t.left().iter().copied())?;
    let c = model.stack(t.cond().iter().copied())?;
    let mut rc = model.stack(t.right().iter().copied())?;
    rc.extend_from_slice(&c);

    let s_lc = conditional(&l, &c).ok_or_else(degen)?;
    let s_lrc = conditional(&l, &rc).ok_or_else(degen)?;
    let (log_lc, rank_lc) = log2_pdet(&s_lc).ok_or_else(degen)?;
    let (log_lrc, rank_lrc) = log2_pdet(&s_lrc).ok_or_else(degen)?;
    if rank_lc != rank_lrc {
        return Err(degen());
    }
    let value = log_lc - log_lrc;
    if value < -1e-12 {
        return Err(degen());
    }
    Ok(value.max(0.0))
}

/// Evaluate an atom combination: terms through [`eval_term`], capacity
/// symbols through the `capacities` bindings, plus the rational constant.
pub fn eval_expr(
    e: &InfoExpr,
    model: &CovModel,
    capacities: &BTreeMap<String, f64>,
) -> Result<f64, EvalError> {
    let mut value = constraint_core::rat_to_f64(e.constant_part());
    for (atom, coeff) in e.terms() {
        let x = match atom {
            InfoAtom::Term(t) => eval_term(t, model)?,
            InfoAtom::Capacity(name) => *capacities
                .get(name)
                .ok_or_else(|| EvalError::MissingCapacity(name.clone()))?,
        };
        value += constraint_core::rat_to_f64(coeff) * x;
    }
    Ok(value)
}
