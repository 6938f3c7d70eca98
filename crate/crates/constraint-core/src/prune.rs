//! Redundancy removal.
//!
//! [`drop_redundant_symbolic`] is a *sound* pruner for systems whose rhs are
//! symbolic atom expressions: it removes a constraint only when a
//! nonnegative combination of other constraints provably implies it, where
//! "provably" means the rhs slack is manifestly nonnegative or becomes so
//! after subtracting slacks of registered dominance facts. It can miss
//! redundancies (facts are curated, combinations are limited to pairs) but
//! never removes a live constraint, and never removes a flagged one.
//!
//! The public pruner is deliberately conservative about *recombining* rhs
//! expressions: a pair of dominators is only considered when one of the two
//! has an identically zero rhs (a sign constraint), so two substantive
//! bounds are never added together to subsume a third. This keeps bounds
//! like `R1 + R2 ≤ a + b` alongside `R1 ≤ a`, `R2 ≤ b`: each distinct rhs
//! expression stands on its own unless a registered fact relates them.
//! [`drop_redundant_symbolic_extended`] lifts that restriction and allows
//! arbitrary pairs; the reduction pipelines use it where specialization is
//! expected to collapse sum bounds into combinations of smaller ones.
//!
//! [`drop_redundant_numeric`] is an *exact* pruner for constant-rhs systems:
//! each candidate's lhs is maximized over the remaining rows by
//! Fourier-Motzkin and dropped iff the maximum does not exceed its rhs. For
//! a full-dimensional polyhedron this yields the unique minimal description.

use std::fmt;

use num::{Signed, Zero};

use crate::fm::{maximize, FmOptions, MaximizeError};
use crate::{rat, LinComb, Rat, Relation, RhsExpr, System};

/// Curated dominance knowledge usable by the symbolic pruner: each pair
/// `(lo, hi)` asserts `lo ≤ hi` pointwise, so the slack `hi − lo` is a
/// nonnegative quantity that may be subtracted while proving nonnegativity.
#[derive(Clone, Debug, Default)]
pub struct FactSet<A: Ord + Clone> {
    slacks: Vec<RhsExpr<A>>,
}

impl<A: Ord + Clone> FactSet<A> {
    /// Empty fact set.
    pub fn new() -> Self {
        FactSet { slacks: Vec::new() }
    }

    /// Record `lo ≤ hi`. Trivial facts (`lo = hi`) are ignored.
    pub fn add(&mut self, lo: &RhsExpr<A>, hi: &RhsExpr<A>) {
        let slack = hi.sub(lo);
        if !slack.is_zero() && !self.slacks.contains(&slack) {
            self.slacks.push(slack);
        }
    }

    /// Build from `(lo, hi)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a RhsExpr<A>, &'a RhsExpr<A>)>) -> Self
    where
        A: 'a,
    {
        let mut out = Self::new();
        for (lo, hi) in pairs {
            out.add(lo, hi);
        }
        out
    }

    /// The registered nonnegative slack expressions.
    pub fn slacks(&self) -> &[RhsExpr<A>] {
        &self.slacks
    }

    /// Prove `expr ≥ 0`: manifestly, or after subtracting up to `depth`
    /// fact slacks. Subtracting a slack `hi − lo` is only attempted when it
    /// cancels some positive-coefficient atom of `expr` (otherwise it cannot
    /// help reach a manifestly nonnegative form).
    pub fn provably_nonneg(&self, expr: &RhsExpr<A>, depth: usize) -> bool {
        if expr.is_manifestly_nonneg() {
            return true;
        }
        if depth == 0 {
            return false;
        }
        for slack in &self.slacks {
            let overlaps = slack
                .terms()
                .any(|(a, c)| c.is_positive() && expr.coeff(a).is_positive());
            if !overlaps {
                continue;
            }
            if self.provably_nonneg(&expr.sub(slack), depth - 1) {
                return true;
            }
        }
        false
    }
}

const PROOF_DEPTH: usize = 3;

/// Sound symbolic pruning; see module docs. Deterministic: rows are
/// processed in normalized order and removal decisions depend only on the
/// normalized system and the fact set. Equality rows and flagged rows are
/// never candidates for removal, and the fixpoint is capped at five passes.
pub fn drop_redundant_symbolic<V, A>(sys: &System<V, A>, facts: &FactSet<A>) -> System<V, A>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    prune_fixpoint(sys, facts, false)
}

/// Like [`drop_redundant_symbolic`] but also considers pairs of dominators
/// whose rhs are both nonzero, so a sum bound equal to the sum of two
/// retained bounds is removed; pairs sharing the target's lhs direction are
/// searched along their one-parameter combination line, which removes
/// averaged rows such as the midpoint of two retained sum bounds. Sound for
/// polyhedral containment at a fixed rhs valuation; use where such
/// collapses are intended.
pub fn drop_redundant_symbolic_extended<V, A>(sys: &System<V, A>, facts: &FactSet<A>) -> System<V, A>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    prune_fixpoint(sys, facts, true)
}

fn prune_fixpoint<V, A>(sys: &System<V, A>, facts: &FactSet<A>, free_pairs: bool) -> System<V, A>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut rows = sys.normalize().into_vec();
    for _pass in 0..5 {
        let mut changed = false;
        let mut i = 0;
        while i < rows.len() {
            if is_implied(&rows, i, facts, free_pairs) {
                rows.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    System::from_vec(rows)
}

fn is_implied<V, A>(
    rows: &[crate::Constraint<V, A>],
    k: usize,
    facts: &FactSet<A>,
    free_pairs: bool,
) -> bool
where
    V: Ord + Clone,
    A: Ord + Clone,
{
    let target = &rows[k];
    if target.rel != Relation::Le || target.flag.is_some() {
        return false;
    }
    // Vacuous rows: `0 ≤ nonneg`.
    if target.lhs.is_empty() && facts.provably_nonneg(&target.rhs, PROOF_DEPTH) {
        return true;
    }
    // Single dominator: lhs_k = λ·lhs_j, λ > 0.
    for (j, dom) in rows.iter().enumerate() {
        if j == k || dom.rel != Relation::Le || dom.lhs.is_empty() {
            continue;
        }
        if let Some(lambda) = proportionality(&target.lhs, &dom.lhs) {
            if lambda.is_positive()
                && facts.provably_nonneg(&target.rhs.sub(&dom.rhs.scale(&lambda)), PROOF_DEPTH)
            {
                return true;
            }
        }
    }
    // Pair of dominators: lhs_k = λ₁·lhs_j1 + λ₂·lhs_j2, λ ≥ 0.
    for j1 in 0..rows.len() {
        if j1 == k || rows[j1].rel != Relation::Le || rows[j1].lhs.is_empty() {
            continue;
        }
        for j2 in (j1 + 1)..rows.len() {
            if j2 == k || rows[j2].rel != Relation::Le || rows[j2].lhs.is_empty() {
                continue;
            }
            if !free_pairs && !rows[j1].rhs.is_zero() && !rows[j2].rhs.is_zero() {
                continue;
            }
            if let Some((l1, l2)) = pair_coefficients(&target.lhs, &rows[j1].lhs, &rows[j2].lhs) {
                if !l1.is_negative() && !l2.is_negative() {
                    let covered = rows[j1].rhs.scale(&l1).add(&rows[j2].rhs.scale(&l2));
                    if facts.provably_nonneg(&target.rhs.sub(&covered), PROOF_DEPTH) {
                        return true;
                    }
                }
            } else if free_pairs && parallel_pair_implies(target, &rows[j1], &rows[j2], facts) {
                return true;
            }
        }
    }
    false
}

/// λ with `a = λ·b`, when it exists.
fn proportionality<V: Ord + Clone>(a: &LinComb<V>, b: &LinComb<V>) -> Option<Rat> {
    let (v0, c0) = b.leading()?;
    let lambda = a.coeff(v0) / c0;
    if a == &b.scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Dominator pair with all three lhs parallel: `t = λ₁·b1 + λ₂·b2` then has
/// a line of solutions, so the unique 2×2 solve never fires. The residual
/// `rhs_t − λ₁·rhs₁ − λ₂·rhs₂` is affine in λ₁ along that line; its
/// provability can only switch where some coefficient changes sign, so it
/// suffices to test the λ₁ values zeroing one coefficient (plus the
/// endpoints, which the single-dominator rule already covers).
fn parallel_pair_implies<V, A>(
    target: &crate::Constraint<V, A>,
    d1: &crate::Constraint<V, A>,
    d2: &crate::Constraint<V, A>,
    facts: &FactSet<A>,
) -> bool
where
    V: Ord + Clone,
    A: Ord + Clone,
{
    let (Some(alpha), Some(beta)) = (
        proportionality(&d1.lhs, &target.lhs),
        proportionality(&d2.lhs, &target.lhs),
    ) else {
        return false;
    };
    if alpha.is_zero() || beta.is_zero() {
        return false;
    }
    // λ₂ = (1 − λ₁·α)/β; residual(λ₁) = base + λ₁·step.
    let base = target.rhs.sub(&d2.rhs.scale(&(rat(1) / &beta)));
    let step = d2.rhs.scale(&(&alpha / &beta)).sub(&d1.rhs);
    let mut candidates: Vec<Rat> = Vec::new();
    for (a, s) in step.terms() {
        if !s.is_zero() {
            candidates.push(-(base.coeff(a) / s));
        }
    }
    if !step.constant_part().is_zero() {
        candidates.push(-(base.constant_part() / step.constant_part()));
    }
    candidates.sort();
    candidates.dedup();
    for l1 in candidates {
        if l1.is_negative() {
            continue;
        }
        let l2 = (rat(1) - &l1 * &alpha) / &beta;
        if l2.is_negative() {
            continue;
        }
        if facts.provably_nonneg(&base.add(&step.scale(&l1)), PROOF_DEPTH) {
            return true;
        }
    }
    false
}

/// (λ₁, λ₂) with `t = λ₁·b1 + λ₂·b2`, when uniquely determined.
fn pair_coefficients<V: Ord + Clone>(
    t: &LinComb<V>,
    b1: &LinComb<V>,
    b2: &LinComb<V>,
) -> Option<(Rat, Rat)> {
    // Find two anchor variables giving an invertible 2×2 system.
    let vars: Vec<&V> = b1.vars().chain(b2.vars()).chain(t.vars()).collect();
    for (i, u) in vars.iter().enumerate() {
        for w in vars.iter().skip(i + 1) {
            let a11 = b1.coeff(u);
            let a12 = b2.coeff(u);
            let a21 = b1.coeff(w);
            let a22 = b2.coeff(w);
            let det = &a11 * &a22 - &a12 * &a21;
            if det.is_zero() {
                continue;
            }
            let t1 = t.coeff(u);
            let t2 = t.coeff(w);
            let l1 = (&t1 * &a22 - &t2 * &a12) / &det;
            let l2 = (&a11 * &t2 - &a21 * &t1) / &det;
            if t == &b1.scale(&l1).add(&b2.scale(&l2)) {
                return Some((l1, l2));
            }
            return None;
        }
    }
    None
}

/// Exact redundancy removal for constant-rhs systems; see module docs.
/// Rows are visited in normalized order; each is tested against all
/// currently retained rows and removed immediately when implied. Equality
/// rows are kept untouched.
pub fn drop_redundant_numeric<V, A>(
    sys: &System<V, A>,
    opts: FmOptions,
) -> Result<System<V, A>, MaximizeError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut rows = sys.normalize().into_vec();
    let mut i = 0;
    while i < rows.len() {
        if rows[i].rel != Relation::Le {
            i += 1;
            continue;
        }
        let candidate = rows[i].clone();
        let others: System<V, A> =
            rows.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()).collect();
        if others.is_empty() {
            i += 1;
            continue;
        }
        let implied = match maximize(&others, &candidate.lhs, opts)? {
            Some(max) => max <= *candidate.rhs.constant_part(),
            None => false,
        };
        if implied {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(System::from_vec(rows))
}
