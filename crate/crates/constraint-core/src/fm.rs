//! Fourier-Motzkin elimination over exact rationals.
//!
//! Variables are free reals; nonnegativity, when wanted, must be present as
//! explicit `−v ≤ 0` rows. Equality rows are consumed by substitution before
//! any sign pairing, so a variable defined by an equality never multiplies
//! the row count. Each elimination stage is followed by a cheap sound
//! reduction pass ([`quick_reduce`]) to keep intermediate growth in check.
//!
//! Growth across stages is additionally controlled by the classical
//! history bound: every row carries the set of input rows it derives from,
//! and a derived inequality combining more than `k + 1` input rows after
//! `k` eliminations is redundant (its multiplier vector decomposes into
//! extreme rays of the elimination cone, each supported on at most `k + 1`
//! rows) and is discarded at birth. The bound is relative to one
//! [`eliminate`] call, so eliminating many variables in a single call
//! prunes far better than one call per variable.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use crate::{Constraint, LinComb, Rat, Relation, RhsExpr, System};

/// Elimination options.
#[derive(Clone, Copy, Debug)]
pub struct FmOptions {
    /// Hard cap on the intermediate row count; exceeding it aborts.
    pub cap: usize,
}

impl Default for FmOptions {
    fn default() -> Self {
        FmOptions { cap: 100_000 }
    }
}

/// Elimination failure.
#[derive(Debug, Clone, thiserror::Error)]
pub enum FmError {
    /// The intermediate system outgrew [`FmOptions::cap`].
    #[error("eliminating `{victim}` produced {rows} rows, over the cap of {cap}")]
    Blowup { victim: String, rows: usize, cap: usize },
}

/// Snapshot of the system just before one victim was eliminated. A full
/// trace allows any point of the projection to be lifted back to a point of
/// the original system (soundness witness).
#[derive(Clone, Debug)]
pub struct StageRecord<V: Ord + Clone, A: Ord + Clone> {
    pub victim: V,
    pub before: System<V, A>,
}

/// Eliminate `victims` in caller order. Eliminating a variable absent from
/// the system is a no-op for that victim.
pub fn eliminate<V, A>(
    sys: &System<V, A>,
    victims: &[V],
    opts: FmOptions,
) -> Result<System<V, A>, FmError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    Ok(eliminate_traced(sys, victims, opts)?.0)
}

/// [`eliminate`], also returning the per-stage snapshots.
pub fn eliminate_traced<V, A>(
    sys: &System<V, A>,
    victims: &[V],
    opts: FmOptions,
) -> Result<(System<V, A>, Vec<StageRecord<V, A>>), FmError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut cur = sys.normalize();
    let mut trace = Vec::with_capacity(victims.len());
    for v in victims {
        trace.push(StageRecord { victim: v.clone(), before: cur.clone() });
        cur = stage(&cur, v, opts)?;
        cur = quick_reduce(&cur);
    }
    Ok((cur, trace))
}

/// One elimination stage for a single victim.
fn stage<V, A>(sys: &System<V, A>, v: &V, opts: FmOptions) -> Result<System<V, A>, FmError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    // Prefer substitution through an equality that contains the victim.
    let eq_idx = sys
        .iter()
        .position(|c| c.rel == Relation::Eq && !c.lhs.coeff(v).is_zero());
    if let Some(i) = eq_idx {
        let eq0 = &sys.constraints()[i];
        let c = eq0.lhs.coeff(v);
        let mut out = System::new();
        for (j, row) in sys.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = row.lhs.coeff(v);
            if d.is_zero() {
                out.push(row.clone());
                continue;
            }
            let ratio = &d / &c;
            let lhs = row.lhs.sub(&eq0.lhs.scale(&ratio));
            let rhs = row.rhs.sub(&eq0.rhs.scale(&ratio));
            debug_assert!(lhs.coeff(v).is_zero());
            out.push(Constraint {
                lhs,
                rel: row.rel,
                rhs,
                label: row.label.clone(),
                flag: row.flag.clone().or_else(|| eq0.flag.clone()),
            });
        }
        check_cap(out.len(), v, opts)?;
        return Ok(out);
    }

    // No equality: pair opposite signs among ≤ rows.
    let mut keep: Vec<Constraint<V, A>> = Vec::new();
    let mut pos: Vec<&Constraint<V, A>> = Vec::new();
    let mut neg: Vec<&Constraint<V, A>> = Vec::new();
    for row in sys.iter() {
        let c = row.lhs.coeff(v);
        if c.is_zero() {
            keep.push(row.clone());
        } else if c.is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }
    let combos = pos.len() * neg.len();
    check_cap(keep.len() + combos, v, opts)?;
    let mut out = System::from_vec(keep);
    for a in &pos {
        let p = a.lhs.coeff(v);
        let a_lhs = a.lhs.scale(&(Rat::from_integer(1.into()) / &p));
        let a_rhs = a.rhs.scale(&(Rat::from_integer(1.into()) / &p));
        for b in &neg {
            let n = b.lhs.coeff(v);
            let s = -Rat::from_integer(1.into()) / &n;
            let lhs = a_lhs.add(&b.lhs.scale(&s));
            let rhs = a_rhs.add(&b.rhs.scale(&s));
            debug_assert!(lhs.coeff(v).is_zero());
            out.push(Constraint {
                lhs,
                rel: Relation::Le,
                rhs,
                label: None,
                flag: a.flag.clone().or_else(|| b.flag.clone()),
            });
        }
    }
    Ok(out)
}

fn check_cap<V: fmt::Display>(rows: usize, v: &V, opts: FmOptions) -> Result<(), FmError> {
    if rows > opts.cap {
        Err(FmError::Blowup { victim: v.to_string(), rows, cap: opts.cap })
    } else {
        Ok(())
    }
}

/// Cheap sound reduction: normalize + dedup, drop vacuous rows, and drop ≤
/// rows manifestly dominated by another row with the same lhs. Flagged rows
/// are kept (their removability is someone else's theorem, not ours).
pub fn quick_reduce<V, A>(sys: &System<V, A>) -> System<V, A>
where
    V: Ord + Clone,
    A: Ord + Clone,
{
    let normalized = sys.normalize();
    let mut rows: Vec<Constraint<V, A>> = normalized
        .into_vec()
        .into_iter()
        .filter(|c| {
            let vacuous = c.lhs.is_empty()
                && match c.rel {
                    Relation::Le => c.rhs.is_manifestly_nonneg(),
                    Relation::Eq => c.rhs.is_zero(),
                };
            !vacuous
        })
        .collect();

    // Same-lhs dominance: rhs_i − rhs_j manifestly nonneg ⇒ row i implied.
    let mut removed = vec![false; rows.len()];
    for i in 0..rows.len() {
        if removed[i] || rows[i].rel != Relation::Le || rows[i].flag.is_some() {
            continue;
        }
        for j in 0..rows.len() {
            if i == j || removed[j] || rows[j].rel != Relation::Le {
                continue;
            }
            if rows[i].lhs == rows[j].lhs && rows[i].rhs.sub(&rows[j].rhs).is_manifestly_nonneg() {
                removed[i] = true;
                break;
            }
        }
    }
    let mut k = 0;
    rows.retain(|_| {
        let keep = !removed[k];
        k += 1;
        keep
    });
    System::from_vec(rows)
}

/// Failure to lift a projected point back through an elimination trace.
#[derive(Debug, Clone, thiserror::Error)]
pub enum LiftError {
    /// A rhs contained an atom with no value in the environment.
    #[error("cannot lift: {0}")]
    MissingAtom(#[from] crate::MissingAtomError),
    /// The victim's bounds were contradictory at this point, meaning the
    /// point does not satisfy the projected system.
    #[error("victim `{victim}` has empty bound interval [{lo} > {hi}]")]
    EmptyInterval { victim: String, lo: String, hi: String },
}

/// Extend `assign` (a point of the projected system) to a point of the
/// original system by walking the trace backwards, choosing each victim
/// inside its implied interval. All arithmetic is exact, so a successful
/// lift is a proof of FM soundness for this point.
pub fn lift_point<V, A>(
    trace: &[StageRecord<V, A>],
    assign: &BTreeMap<V, Rat>,
    atom_env: &BTreeMap<A, Rat>,
) -> Result<BTreeMap<V, Rat>, LiftError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut point = assign.clone();
    for st in trace.iter().rev() {
        let v = &st.victim;
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for row in st.before.iter() {
            let c = row.lhs.coeff(v);
            if c.is_zero() {
                continue;
            }
            let rest = row.lhs.sub(&LinComb::var_scaled(v.clone(), c.clone()));
            let bound = (row.rhs.eval(atom_env)? - rest.eval(&point)) / &c;
            match row.rel {
                Relation::Eq => {
                    raise(&mut lo, &bound);
                    lower(&mut hi, &bound);
                }
                Relation::Le => {
                    if c.is_positive() {
                        lower(&mut hi, &bound);
                    } else {
                        raise(&mut lo, &bound);
                    }
                }
            }
        }
        let value = match (&lo, &hi) {
            (None, None) => Rat::zero(),
            (Some(l), None) => l.clone(),
            (None, Some(h)) => h.clone(),
            (Some(l), Some(h)) => {
                if l > h {
                    return Err(LiftError::EmptyInterval {
                        victim: v.to_string(),
                        lo: l.to_string(),
                        hi: h.to_string(),
                    });
                }
                (l + h) / Rat::from_integer(2.into())
            }
        };
        point.insert(v.clone(), value);
    }
    Ok(point)
}

fn raise(slot: &mut Option<Rat>, v: &Rat) {
    if slot.as_ref().map(|cur| v > cur).unwrap_or(true) {
        *slot = Some(v.clone());
    }
}

fn lower(slot: &mut Option<Rat>, v: &Rat) {
    if slot.as_ref().map(|cur| v < cur).unwrap_or(true) {
        *slot = Some(v.clone());
    }
}

/// Check a point against every constraint of a system, exactly.
pub fn satisfies<V, A>(
    sys: &System<V, A>,
    point: &BTreeMap<V, Rat>,
    atom_env: &BTreeMap<A, Rat>,
) -> Result<bool, crate::MissingAtomError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    for row in sys.iter() {
        let lhs = row.lhs.eval(point);
        let rhs = row.rhs.eval(atom_env)?;
        let ok = match row.rel {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact upper bound of a linear objective over the polyhedron, via FM:
/// introduce `z = objective`, eliminate everything else, read the tightest
/// bound on `z`. Returns `None` when unbounded above. RHS must be constant
/// (no atoms). Infeasible systems yield `Some(-∞)` conceptually; this is
/// reported as `Err(Infeasible)` since rational −∞ is not representable.
pub fn maximize<V, A>(
    sys: &System<V, A>,
    objective: &LinComb<V>,
    opts: FmOptions,
) -> Result<Option<Rat>, MaximizeError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    if let Some(row) = sys.iter().find(|c| !c.rhs.is_constant()) {
        return Err(MaximizeError::NonConstantRhs(crate::text::render_constraint(row)));
    }
    // Work over an indexed alphabet so a fresh variable exists for z.
    let vars: Vec<V> = sys
        .all_vars()
        .into_iter()
        .chain(objective.vars().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&V, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let z = vars.len();
    let remap = |comb: &LinComb<V>| -> LinComb<usize> {
        LinComb::from_pairs(comb.terms().map(|(v, c)| (index[v], c.clone())))
    };
    let mut indexed: System<usize, A> = sys
        .iter()
        .map(|c| Constraint {
            lhs: remap(&c.lhs),
            rel: c.rel,
            rhs: RhsExpr::constant(c.rhs.constant_part().clone()),
            label: None,
            flag: None,
        })
        .collect();
    let mut z_lhs = remap(objective).neg();
    z_lhs = z_lhs.add(&LinComb::var(z));
    indexed.push(Constraint::eq(z_lhs, RhsExpr::zero()));
    let victims: Vec<usize> = (0..vars.len()).collect();
    let reduced = eliminate(&indexed, &victims, opts)?;

    let mut upper: Option<Rat> = None;
    let mut lower_bd: Option<Rat> = None;
    for row in reduced.iter() {
        let c = row.lhs.coeff(&z);
        if c.is_zero() {
            // Pure condition row: `0 ≤ const` or `0 = const`.
            let rhs = row.rhs.constant_part();
            let feasible = match row.rel {
                Relation::Le => !rhs.is_negative(),
                Relation::Eq => rhs.is_zero(),
            };
            if !feasible {
                return Err(MaximizeError::Infeasible);
            }
            continue;
        }
        let bound = row.rhs.constant_part() / &c;
        match row.rel {
            Relation::Eq => {
                lower(&mut upper, &bound);
                raise(&mut lower_bd, &bound);
            }
            Relation::Le => {
                if c.is_positive() {
                    lower(&mut upper, &bound);
                } else {
                    raise(&mut lower_bd, &bound);
                }
            }
        }
    }
    if let (Some(l), Some(h)) = (&lower_bd, &upper) {
        if l > h {
            return Err(MaximizeError::Infeasible);
        }
    }
    Ok(upper)
}

/// Failure of [`maximize`].
#[derive(Debug, Clone, thiserror::Error)]
pub enum MaximizeError {
    /// The polyhedron is empty.
    #[error("system is infeasible")]
    Infeasible,
    /// Elimination blew past its cap.
    #[error(transparent)]
    Fm(#[from] FmError),
    /// A rhs contained symbolic atoms; only constant rhs are supported.
    #[error("non-constant rhs in numeric operation: {0}")]
    NonConstantRhs(String),
}
