//! Numeric vertex enumeration for 2-D rate systems.
//!
//! A finished system over two rate variables is evaluated to half-planes
//! `a·x + b·y ≤ c` (equalities become opposed pairs, nonnegativity of both
//! rates is implicit) and intersected by Sutherland-Hodgman clipping of a
//! large box. Every f64 input is converted exactly to a rational, the whole
//! clip runs in exact arithmetic, and coordinates round to f64 only on
//! output, so degenerate contacts and collinear edges need no tolerances.
//! The result is the counter-clockwise vertex list starting at the
//! lexicographically smallest vertex. Unbounded polyhedra are detected by
//! contact with the clip box and reported as errors with a recession
//! direction; infeasible ones yield an empty list.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, Zero};

use crate::{rat, rat_to_f64, Rat, Relation, System};

/// Vertex-enumeration failure.
#[derive(Debug, Clone, thiserror::Error)]
pub enum VertexError {
    /// The region is unbounded along the reported direction.
    #[error("region is unbounded along direction ({0}, {1})")]
    Unbounded(f64, f64),
    /// A rhs atom had no numeric binding.
    #[error("no value bound for atom `{0}`")]
    UnknownAtom(String),
    /// A lhs variable other than the two plot axes appeared.
    #[error("variable `{0}` is neither plot axis; eliminate it first")]
    ForeignVariable(String),
}

/// Half-width of the clip box. Regions extending past this are reported as
/// unbounded, so bound values must stay well below it; rate bounds in bits
/// are orders of magnitude smaller.
const BOX: i64 = 1_000_000_000;
/// Spec'd merge tolerance for coincident vertices after rounding to f64.
const MERGE_EPS: f64 = 1e-12;

/// Enumerate the vertices of the region of `sys` in the `(x_var, y_var)`
/// plane under the given atom values. Both rates are implicitly ≥ 0.
pub fn numeric_vertices_2d<V, A>(
    sys: &System<V, A>,
    x_var: &V,
    y_var: &V,
    atom_env: &BTreeMap<A, f64>,
) -> Result<Vec<(f64, f64)>, VertexError>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut rows: Vec<(f64, f64, f64)> = vec![(-1.0, 0.0, 0.0), (0.0, -1.0, 0.0)];
    for c in sys.iter() {
        for (v, _) in c.lhs.terms() {
            if v != x_var && v != y_var {
                return Err(VertexError::ForeignVariable(v.to_string()));
            }
        }
        let a = rat_to_f64(&c.lhs.coeff(x_var));
        let b = rat_to_f64(&c.lhs.coeff(y_var));
        let rhs = c
            .rhs
            .eval_f64(atom_env)
            .map_err(|e| VertexError::UnknownAtom(e.0))?;
        rows.push((a, b, rhs));
        if c.rel == Relation::Eq {
            rows.push((-a, -b, -rhs));
        }
    }
    clip_halfplanes(&rows)
}

/// Intersect half-planes `a·x + b·y ≤ c`; see module docs for conventions.
/// Non-finite coefficients violate the caller contract and panic.
pub fn clip_halfplanes(rows: &[(f64, f64, f64)]) -> Result<Vec<(f64, f64)>, VertexError> {
    let exact = |v: f64| {
        BigRational::from_float(v).unwrap_or_else(|| panic!("non-finite half-plane datum {v}"))
    };
    let rrows: Vec<(Rat, Rat, Rat)> =
        rows.iter().map(|&(a, b, c)| (exact(a), exact(b), exact(c))).collect();

    let big = rat(BOX);
    let mut poly: Vec<(Rat, Rat)> = vec![
        (-big.clone(), -big.clone()),
        (big.clone(), -big.clone()),
        (big.clone(), big.clone()),
        (-big.clone(), big.clone()),
    ];
    for (a, b, c) in &rrows {
        if a.is_zero() && b.is_zero() {
            if c.is_negative() {
                return Ok(Vec::new());
            }
            continue;
        }
        poly = clip_one(&poly, a, b, c);
        if poly.is_empty() {
            return Ok(Vec::new());
        }
    }

    // Points still on the box boundary mean the true region is unbounded.
    if poly.iter().any(|(x, y)| x.abs() == big || y.abs() == big) {
        let (dx, dy) = recession_direction(rows).unwrap_or_else(|| {
            let (x, y) = poly
                .iter()
                .max_by_key(|(x, y)| x.abs() + y.abs())
                .map(|(x, y)| (rat_to_f64(x), rat_to_f64(y)))
                .unwrap();
            let n = (x * x + y * y).sqrt();
            (x / n, y / n)
        });
        return Err(VertexError::Unbounded(dx, dy));
    }

    poly = dedup_exact(poly);
    poly = drop_straight_points(poly);
    poly = rotate_to_lex_min(poly);
    Ok(round_and_merge(&poly))
}

fn clip_one(poly: &[(Rat, Rat)], a: &Rat, b: &Rat, c: &Rat) -> Vec<(Rat, Rat)> {
    let side = |p: &(Rat, Rat)| a * &p.0 + b * &p.1 - c;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % poly.len()];
        let da = side(cur);
        let db = side(nxt);
        let cur_in = !da.is_positive();
        let nxt_in = !db.is_positive();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != nxt_in {
            let t = &da / (&da - &db);
            out.push((&cur.0 + &t * (&nxt.0 - &cur.0), &cur.1 + &t * (&nxt.1 - &cur.1)));
        }
    }
    out
}

/// A direction `d` with `a_i·d ≤ 0` for every half-plane, if one exists
/// among the candidate rays (axes, diagonal, and all constraint boundaries).
fn recession_direction(rows: &[(f64, f64, f64)]) -> Option<(f64, f64)> {
    let mut candidates = vec![
        (1.0, 0.0),
        (0.0, 1.0),
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
    ];
    for &(a, b, _) in rows {
        let n = (a * a + b * b).sqrt();
        if n > 0.0 {
            candidates.push((-b / n, a / n));
            candidates.push((b / n, -a / n));
        }
    }
    candidates
        .into_iter()
        .find(|&(dx, dy)| rows.iter().all(|&(a, b, _)| a * dx + b * dy <= 1e-12))
}

/// Remove repeated points from the ring. A convex traversal never revisits
/// a vertex, so global equality dedup is safe and also collapses the
/// doubled rings degenerate clips produce.
fn dedup_exact(poly: Vec<(Rat, Rat)>) -> Vec<(Rat, Rat)> {
    let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(poly.len());
    for p in poly {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Remove interior points of straight edges: zero cross product and
/// non-reversing direction. The direction check keeps the endpoints of a
/// region that degenerated to a segment.
fn drop_straight_points(mut pts: Vec<(Rat, Rat)>) -> Vec<(Rat, Rat)> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let cur = &pts[i];
            let next = &pts[(i + 1) % n];
            let ux = &cur.0 - &prev.0;
            let uy = &cur.1 - &prev.1;
            let vx = &next.0 - &cur.0;
            let vy = &next.1 - &cur.1;
            let cross = &ux * &vy - &uy * &vx;
            if cross.is_zero() && !(&ux * &vx + &uy * &vy).is_negative() {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

fn rotate_to_lex_min(poly: Vec<(Rat, Rat)>) -> Vec<(Rat, Rat)> {
    if poly.is_empty() {
        return poly;
    }
    let start = poly.iter().enumerate().min_by(|(_, p), (_, q)| p.cmp(q)).map(|(i, _)| i).unwrap();
    let mut out = Vec::with_capacity(poly.len());
    out.extend_from_slice(&poly[start..]);
    out.extend_from_slice(&poly[..start]);
    out
}

/// Round to f64 and merge vertices that became indistinguishable, keeping
/// the spec'd absolute tolerance.
fn round_and_merge(poly: &[(Rat, Rat)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(poly.len());
    for (x, y) in poly {
        let p = (rat_to_f64(x), rat_to_f64(y));
        if out.iter().all(|&q| (p.0 - q.0).abs() > MERGE_EPS || (p.1 - q.1).abs() > MERGE_EPS) {
            out.push(p);
        }
    }
    out
}
