//! Exact linear constraint systems over arbitrary variable and atom alphabets.
//!
//! A [`Constraint`] relates a rational linear combination of *variables* (lhs)
//! to an affine combination of *atoms* plus a rational constant (rhs).
//! Variables are the quantities eliminated and projected (rates); atoms are
//! opaque symbolic bounds (mutual-information terms, capacities) that only
//! ever appear on right-hand sides. Both alphabets are generic so the same
//! machinery serves purely numeric systems (`A = ()`) and symbolic ones.
//!
//! All arithmetic is exact over [`Rat`] (`num::BigRational`); no floating
//! point enters elimination, substitution, or pruning. Floating point only
//! appears in [`vertices`], which evaluates a finished system numerically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub mod fm;
pub mod prune;
pub mod text;
pub mod vertices;

pub use fm::{eliminate, eliminate_traced, quick_reduce, FmError, FmOptions, StageRecord};
pub use prune::{drop_redundant_numeric, drop_redundant_symbolic, FactSet};
pub use text::{parse_system, render_system, ParseError};
pub use vertices::{clip_halfplanes, numeric_vertices_2d, VertexError};

/// Exact rational scalar used throughout.
pub type Rat = BigRational;

/// Integer rational literal.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fractional rational literal. Panics on zero denominator.
pub fn ratq(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Affine expression over atoms: `Σ cᵢ·aᵢ + constant`.
///
/// Zero coefficients are never stored. Atoms are assumed to denote
/// nonnegative quantities (mutual informations, link capacities), which is
/// what [`RhsExpr::is_manifestly_nonneg`] relies on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RhsExpr<A: Ord + Clone> {
    terms: BTreeMap<A, Rat>,
    constant: Rat,
}

impl<A: Ord + Clone> Default for RhsExpr<A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<A: Ord + Clone> RhsExpr<A> {
    /// The zero expression.
    pub fn zero() -> Self {
        RhsExpr { terms: BTreeMap::new(), constant: Rat::zero() }
    }

    /// A constant expression.
    pub fn constant(c: Rat) -> Self {
        RhsExpr { terms: BTreeMap::new(), constant: c }
    }

    /// A single atom with coefficient 1.
    pub fn atom(a: A) -> Self {
        Self::atom_scaled(a, Rat::one())
    }

    /// A single atom with the given coefficient.
    pub fn atom_scaled(a: A, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(a, c);
        }
        RhsExpr { terms, constant: Rat::zero() }
    }

    /// Coefficient of `a` (zero if absent).
    pub fn coeff(&self, a: &A) -> Rat {
        self.terms.get(a).cloned().unwrap_or_else(Rat::zero)
    }

    /// The additive constant.
    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    /// Iterator over `(atom, coefficient)` pairs in atom order.
    pub fn terms(&self) -> impl Iterator<Item = (&A, &Rat)> {
        self.terms.iter()
    }

    /// Atoms with nonzero coefficient.
    pub fn atoms(&self) -> impl Iterator<Item = &A> {
        self.terms.keys()
    }

    /// True when the expression is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// True when no atoms appear (constant expression).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients and the constant are nonnegative. Because atoms
    /// denote nonnegative quantities this certifies the value is ≥ 0.
    pub fn is_manifestly_nonneg(&self) -> bool {
        !self.constant.is_negative() && self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of two expressions.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            add_coeff(&mut out.terms, a.clone(), c.clone());
        }
        out.constant += &other.constant;
        out
    }

    /// Difference of two expressions.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RhsExpr {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * s)).collect(),
            constant: &self.constant * s,
        }
    }

    /// Rewrite every atom through `f`, merging the images.
    pub fn map_atoms<B: Ord + Clone>(&self, f: impl Fn(&A) -> RhsExpr<B>) -> RhsExpr<B> {
        let mut out = RhsExpr::constant(self.constant.clone());
        for (a, c) in &self.terms {
            out = out.add(&f(a).scale(c));
        }
        out
    }

    /// Exact numeric value under an atom environment.
    pub fn eval(&self, env: &BTreeMap<A, Rat>) -> Result<Rat, MissingAtomError>
    where
        A: fmt::Display,
    {
        let mut v = self.constant.clone();
        for (a, c) in &self.terms {
            let x = env.get(a).ok_or_else(|| MissingAtomError(a.to_string()))?;
            v += c * x;
        }
        Ok(v)
    }

    /// Floating-point value under an atom environment.
    pub fn eval_f64(&self, env: &BTreeMap<A, f64>) -> Result<f64, MissingAtomError>
    where
        A: fmt::Display,
    {
        let mut v = rat_to_f64(&self.constant);
        for (a, c) in &self.terms {
            let x = env.get(a).ok_or_else(|| MissingAtomError(a.to_string()))?;
            v += rat_to_f64(c) * x;
        }
        Ok(v)
    }
}

/// An atom required for evaluation was absent from the environment.
#[derive(Debug, Clone, thiserror::Error)]
#[error("no value bound for atom `{0}`")]
pub struct MissingAtomError(pub String);

/// Convert an exact rational to `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    num::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

fn add_coeff<K: Ord>(map: &mut BTreeMap<K, Rat>, k: K, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Linear combination of variables: `Σ cᵢ·vᵢ`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<V: Ord + Clone> {
    terms: BTreeMap<V, Rat>,
}

impl<V: Ord + Clone> Default for LinComb<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone> LinComb<V> {
    /// The empty combination.
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    /// A single variable with coefficient 1.
    pub fn var(v: V) -> Self {
        Self::var_scaled(v, Rat::one())
    }

    /// A single variable with the given coefficient.
    pub fn var_scaled(v: V, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(v, c);
        }
        LinComb { terms }
    }

    /// Build from `(variable, coefficient)` pairs, merging duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, Rat)>) -> Self {
        let mut out = Self::zero();
        for (v, c) in pairs {
            add_coeff(&mut out.terms, v, c);
        }
        out
    }

    /// Sum of unit-coefficient variables.
    pub fn sum(vars: impl IntoIterator<Item = V>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, Rat::one())))
    }

    /// Coefficient of `v` (zero if absent).
    pub fn coeff(&self, v: &V) -> Rat {
        self.terms.get(v).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterator over `(variable, coefficient)` pairs in variable order.
    pub fn terms(&self) -> impl Iterator<Item = (&V, &Rat)> {
        self.terms.iter()
    }

    /// Variables with nonzero coefficient.
    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.terms.keys()
    }

    /// Number of variables present.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no variables are present.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// First `(variable, coefficient)` pair in variable order.
    pub fn leading(&self) -> Option<(&V, &Rat)> {
        self.terms.iter().next()
    }

    /// Sum of two combinations.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            add_coeff(&mut out.terms, v.clone(), c.clone());
        }
        out
    }

    /// Difference of two combinations.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(v, c)| (v.clone(), c * s)).collect() }
    }

    /// Rewrite every variable through `f`, merging the images.
    pub fn map_vars<W: Ord + Clone>(&self, f: impl Fn(&V) -> LinComb<W>) -> LinComb<W> {
        let mut out = LinComb::zero();
        for (v, c) in &self.terms {
            out = out.add(&f(v).scale(c));
        }
        out
    }

    /// Exact numeric value under a variable assignment (missing vars = 0).
    pub fn eval(&self, assign: &BTreeMap<V, Rat>) -> Rat {
        let mut v = Rat::zero();
        for (var, c) in &self.terms {
            if let Some(x) = assign.get(var) {
                v += c * x;
            }
        }
        v
    }
}

/// Constraint direction. `≥` rows are normalized to `≤` at construction by
/// negating both sides, so only these two relations are ever stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// lhs ≤ rhs
    Le,
    /// lhs = rhs
    Eq,
}

/// One linear constraint `lhs REL rhs` with optional diagnostic label and
/// removability flag.
///
/// A `flag` marks a constraint as provably removable from the region it
/// belongs to by an argument outside plain redundancy (so automatic pruning
/// must never delete it). Labels are purely diagnostic. Neither participates
/// in structural equality of systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint<V: Ord + Clone, A: Ord + Clone> {
    pub lhs: LinComb<V>,
    pub rel: Relation,
    pub rhs: RhsExpr<A>,
    pub label: Option<String>,
    pub flag: Option<String>,
}

impl<V: Ord + Clone, A: Ord + Clone> Constraint<V, A> {
    /// `lhs ≤ rhs`.
    pub fn le(lhs: LinComb<V>, rhs: RhsExpr<A>) -> Self {
        Constraint { lhs, rel: Relation::Le, rhs, label: None, flag: None }
    }

    /// `lhs = rhs`.
    pub fn eq(lhs: LinComb<V>, rhs: RhsExpr<A>) -> Self {
        Constraint { lhs, rel: Relation::Eq, rhs, label: None, flag: None }
    }

    /// `lhs ≥ rhs`, stored as `−lhs ≤ −rhs`.
    pub fn ge(lhs: LinComb<V>, rhs: RhsExpr<A>) -> Self {
        Constraint { lhs: lhs.neg(), rel: Relation::Le, rhs: rhs.neg(), label: None, flag: None }
    }

    /// Attach a diagnostic label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Mark as removable-by-external-argument.
    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flag = Some(flag.into());
        self
    }

    /// Structural key ignoring label and flag.
    pub fn key(&self) -> (&LinComb<V>, Relation, &RhsExpr<A>) {
        (&self.lhs, self.rel, &self.rhs)
    }

    /// Canonical scaling: coefficients become coprime integers. Equalities
    /// are additionally sign-oriented (leading lhs coefficient positive, or
    /// leading rhs coefficient positive when the lhs is empty). Inequalities
    /// only admit positive scaling.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        let lhs_coeffs: Vec<Rat> = out.lhs.terms.values().cloned().collect();
        let rhs_coeffs: Vec<Rat> = out
            .rhs
            .terms
            .values()
            .cloned()
            .chain(if out.rhs.constant.is_zero() { None } else { Some(out.rhs.constant.clone()) })
            .collect();
        let basis: Vec<Rat> = if lhs_coeffs.is_empty() { rhs_coeffs } else { lhs_coeffs };
        let mut scale = canonical_scale(&basis);
        if out.rel == Relation::Eq {
            let lead_sign = out
                .lhs
                .leading()
                .map(|(_, c)| c.clone())
                .or_else(|| out.rhs.terms.values().next().cloned())
                .unwrap_or_else(|| out.rhs.constant.clone());
            if lead_sign.is_negative() {
                scale = -scale;
            }
        }
        out.lhs = out.lhs.scale(&scale);
        out.rhs = out.rhs.scale(&scale);
        out
    }
}

/// Positive scalar making the given coefficients coprime integers.
/// Returns 1 for an empty list and 0 only when all inputs are zero.
fn canonical_scale(coeffs: &[Rat]) -> Rat {
    let nonzero: Vec<&Rat> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Rat::one();
    }
    let mut denom_lcm = BigInt::one();
    for c in &nonzero {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for c in &nonzero {
        let scaled = (*c * Rat::from_integer(denom_lcm.clone())).to_integer();
        numer_gcd = numer_gcd.gcd(&scaled);
    }
    Rat::new(denom_lcm, numer_gcd)
}

/// A finite set of constraints over shared alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System<V: Ord + Clone, A: Ord + Clone> {
    cons: Vec<Constraint<V, A>>,
}

impl<V: Ord + Clone, A: Ord + Clone> Default for System<V, A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<V: Ord + Clone, A: Ord + Clone> FromIterator<Constraint<V, A>> for System<V, A> {
    fn from_iter<T: IntoIterator<Item = Constraint<V, A>>>(iter: T) -> Self {
        System { cons: iter.into_iter().collect() }
    }
}

impl<V: Ord + Clone, A: Ord + Clone> System<V, A> {
    /// Empty system.
    pub fn new() -> Self {
        System { cons: Vec::new() }
    }

    /// Wrap a constraint list.
    pub fn from_vec(cons: Vec<Constraint<V, A>>) -> Self {
        System { cons }
    }

    /// Append one constraint.
    pub fn push(&mut self, c: Constraint<V, A>) {
        self.cons.push(c);
    }

    /// Append all constraints of `other`.
    pub fn extend_from(&mut self, other: &Self) {
        self.cons.extend(other.cons.iter().cloned());
    }

    /// Union of two systems (no dedup; call [`System::normalize`]).
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// Number of constraints.
    pub fn len(&self) -> usize {
        self.cons.len()
    }

    /// True when no constraints are present.
    pub fn is_empty(&self) -> bool {
        self.cons.is_empty()
    }

    /// Iterate over constraints.
    pub fn iter(&self) -> impl Iterator<Item = &Constraint<V, A>> {
        self.cons.iter()
    }

    /// Borrow the constraint list.
    pub fn constraints(&self) -> &[Constraint<V, A>] {
        &self.cons
    }

    /// Take ownership of the constraint list.
    pub fn into_vec(self) -> Vec<Constraint<V, A>> {
        self.cons
    }

    /// All variables appearing on any lhs.
    pub fn all_vars(&self) -> BTreeSet<V> {
        self.cons.iter().flat_map(|c| c.lhs.vars().cloned()).collect()
    }

    /// All atoms appearing on any rhs.
    pub fn all_atoms(&self) -> BTreeSet<A> {
        self.cons.iter().flat_map(|c| c.rhs.atoms().cloned()).collect()
    }

    /// Canonical form: every constraint normalized, sorted, exact duplicates
    /// merged. When duplicates differ in metadata the merged row keeps the
    /// first label and is flagged only if every duplicate was flagged (an
    /// unflagged copy proves the row is a genuine member of the region).
    pub fn normalize(&self) -> Self {
        let mut map: BTreeMap<(LinComb<V>, Relation, RhsExpr<A>), (Option<String>, Option<String>)> =
            BTreeMap::new();
        for c in &self.cons {
            let n = c.normalized();
            let key = (n.lhs, n.rel, n.rhs);
            match map.get_mut(&key) {
                None => {
                    map.insert(key, (n.label, n.flag));
                }
                Some((label, flag)) => {
                    if label.is_none() {
                        *label = n.label;
                    }
                    if n.flag.is_none() {
                        *flag = None;
                    }
                }
            }
        }
        System {
            cons: map
                .into_iter()
                .map(|((lhs, rel, rhs), (label, flag))| Constraint { lhs, rel, rhs, label, flag })
                .collect(),
        }
    }

    /// Rewrite every rhs atom through `f`.
    pub fn map_atoms<B: Ord + Clone>(&self, f: impl Fn(&A) -> RhsExpr<B>) -> System<V, B> {
        System {
            cons: self
                .cons
                .iter()
                .map(|c| Constraint {
                    lhs: c.lhs.clone(),
                    rel: c.rel,
                    rhs: c.rhs.map_atoms(&f),
                    label: c.label.clone(),
                    flag: c.flag.clone(),
                })
                .collect(),
        }
    }

    /// Rewrite every lhs variable through `f`.
    pub fn map_vars<W: Ord + Clone>(&self, f: impl Fn(&V) -> LinComb<W>) -> System<W, A> {
        System {
            cons: self
                .cons
                .iter()
                .map(|c| Constraint {
                    lhs: c.lhs.map_vars(&f),
                    rel: c.rel,
                    rhs: c.rhs.clone(),
                    label: c.label.clone(),
                    flag: c.flag.clone(),
                })
                .collect(),
        }
    }

    /// Replace atom `a` by the expression `value` everywhere.
    pub fn pin_atom_expr(&self, a: &A, value: &RhsExpr<A>) -> Self {
        self.map_atoms(|x| if x == a { value.clone() } else { RhsExpr::atom(x.clone()) })
    }

    /// Replace atom `a` by zero everywhere.
    pub fn pin_atom_zero(&self, a: &A) -> Self {
        self.pin_atom_expr(a, &RhsExpr::zero())
    }

    /// Send atom `a` to +∞: constraints where it appears with positive
    /// coefficient become vacuous and are deleted. A negative coefficient or
    /// an appearance in an equality has no sensible limit and is an error.
    pub fn pin_atom_infinite(&self, a: &A) -> Result<Self, PinError>
    where
        V: fmt::Display,
        A: fmt::Display,
    {
        let mut cons = Vec::new();
        for c in &self.cons {
            let coeff = c.rhs.coeff(a);
            if coeff.is_zero() {
                cons.push(c.clone());
            } else if c.rel == Relation::Eq {
                return Err(PinError::InfiniteInEquality(text::render_constraint(c)));
            } else if coeff.is_negative() {
                return Err(PinError::InfiniteNegativeCoeff(text::render_constraint(c)));
            }
            // Positive coefficient in a ≤ row: bound is +∞, row deleted.
        }
        Ok(System { cons })
    }

    /// Add explicit nonnegativity rows `−v ≤ 0` for the given variables.
    pub fn with_nonneg(&self, vars: impl IntoIterator<Item = V>) -> Self {
        let mut out = self.clone();
        for v in vars {
            out.push(
                Constraint::le(LinComb::var_scaled(v, -Rat::one()), RhsExpr::zero())
                    .with_label("nonneg"),
            );
        }
        out
    }

    /// Remove single-variable nonnegativity rows (`−v ≤ 0`).
    pub fn strip_nonneg(&self) -> Self {
        System {
            cons: self
                .cons
                .iter()
                .filter(|c| {
                    !(c.rel == Relation::Le
                        && c.rhs.is_zero()
                        && c.lhs.len() == 1
                        && c.lhs.leading().map(|(_, coeff)| coeff.is_negative()).unwrap_or(false))
                })
                .cloned()
                .collect(),
        }
    }

    /// Drop all flagged constraints.
    pub fn without_flagged(&self) -> Self {
        System { cons: self.cons.iter().filter(|c| c.flag.is_none()).cloned().collect() }
    }

    /// The flagged constraints only.
    pub fn flagged(&self) -> Self {
        System { cons: self.cons.iter().filter(|c| c.flag.is_some()).cloned().collect() }
    }
}

/// Pinning an atom to +∞ hit a constraint where the limit is meaningless.
#[derive(Debug, Clone, thiserror::Error)]
pub enum PinError {
    /// The atom appears in an equality row.
    #[error("cannot send atom to +infinity inside an equality: {0}")]
    InfiniteInEquality(String),
    /// The atom appears with a negative coefficient (bound would be −∞).
    #[error("atom with negative coefficient has no +infinity limit: {0}")]
    InfiniteNegativeCoeff(String),
}

/// Structural difference between two systems, as rendered constraint text.
#[derive(Debug, Clone, Default)]
pub struct SystemDiff {
    /// Constraints present only in the left system.
    pub only_left: Vec<String>,
    /// Constraints present only in the right system.
    pub only_right: Vec<String>,
}

impl fmt::Display for SystemDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "systems differ:")?;
        for c in &self.only_left {
            writeln!(f, "  only in left:  {c}")?;
        }
        for c in &self.only_right {
            writeln!(f, "  only in right: {c}")?;
        }
        Ok(())
    }
}

/// Compare two systems as sets of normalized constraints, ignoring labels
/// and flags. On mismatch the diff lists the offending constraints.
pub fn systems_equal<V, A>(left: &System<V, A>, right: &System<V, A>) -> Result<(), SystemDiff>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let l = left.normalize();
    let r = right.normalize();
    let lset: BTreeSet<_> = l.iter().map(|c| (c.lhs.clone(), c.rel, c.rhs.clone())).collect();
    let rset: BTreeSet<_> = r.iter().map(|c| (c.lhs.clone(), c.rel, c.rhs.clone())).collect();
    if lset == rset {
        return Ok(());
    }
    let mut diff = SystemDiff::default();
    for c in l.iter() {
        if !rset.contains(&(c.lhs.clone(), c.rel, c.rhs.clone())) {
            diff.only_left.push(text::render_constraint(c));
        }
    }
    for c in r.iter() {
        if !lset.contains(&(c.lhs.clone(), c.rel, c.rhs.clone())) {
            diff.only_right.push(text::render_constraint(c));
        }
    }
    Err(diff)
}
