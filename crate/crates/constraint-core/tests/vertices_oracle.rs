//! Vertex enumeration against an independent brute-force oracle.
//!
//! The oracle intersects every pair of boundary lines, keeps the points
//! satisfying all half-planes, and dedups. It shares no code with the
//! Sutherland-Hodgman implementation under test.

use std::collections::BTreeMap;

use constraint_core::{
    clip_halfplanes, numeric_vertices_2d, rat, Constraint, LinComb, RhsExpr, System, VertexError,
};
use proptest::prelude::*;

/// Independent oracle: pairwise line intersections filtered by feasibility.
fn oracle_vertices(rows: &[(f64, f64, f64)]) -> Vec<(f64, f64)> {
    let feasible = |x: f64, y: f64| {
        rows.iter().all(|&(a, b, c)| a * x + b * y <= c + 1e-7 * c.abs().max(1.0))
    };
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let (a1, b1, c1) = rows[i];
            let (a2, b2, c2) = rows[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / det;
            let y = (a1 * c2 - a2 * c1) / det;
            if feasible(x, y) && pts.iter().all(|&(px, py)| (px - x).abs() > 1e-6 || (py - y).abs() > 1e-6)
            {
                pts.push((x, y));
            }
        }
    }
    pts
}

fn assert_same_vertex_set(got: &[(f64, f64)], want: &[(f64, f64)], tol: f64) {
    assert_eq!(got.len(), want.len(), "vertex count differs: got {got:?}, want {want:?}");
    let mut got: Vec<_> = got.to_vec();
    let mut want: Vec<_> = want.to_vec();
    got.sort_by(|p, q| p.partial_cmp(q).unwrap());
    want.sort_by(|p, q| p.partial_cmp(q).unwrap());
    for (g, w) in got.iter().zip(&want) {
        assert!(
            (g.0 - w.0).abs() <= tol && (g.1 - w.1).abs() <= tol,
            "vertex {g:?} != {w:?} (sets {got:?} vs {want:?})"
        );
    }
}

fn shoelace(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    let mut area = 0.0;
    for i in 0..n {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % n];
        area += x1 * y2 - x2 * y1;
    }
    area / 2.0
}

#[test]
fn pentagon_example() {
    // R1 ≤ 1, R2 ≤ 1, R1 + R2 ≤ 3/2, both rates ≥ 0.
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R1".into()), RhsExpr::constant(rat(1))));
    sys.push(Constraint::le(LinComb::var("R2".into()), RhsExpr::constant(rat(1))));
    sys.push(Constraint::le(
        LinComb::sum(["R1".to_string(), "R2".to_string()]),
        RhsExpr::constant(constraint_core::ratq(3, 2)),
    ));
    let verts =
        numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new()).unwrap();
    let expected = [(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)];
    assert_eq!(verts.len(), 5);
    for (g, w) in verts.iter().zip(&expected) {
        assert!((g.0 - w.0).abs() < 1e-9 && (g.1 - w.1).abs() < 1e-9, "{verts:?}");
    }
}

#[test]
fn single_vertex_at_origin() {
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R1".into()), RhsExpr::zero()));
    sys.push(Constraint::le(LinComb::var("R2".into()), RhsExpr::zero()));
    let verts =
        numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new()).unwrap();
    assert_eq!(verts.len(), 1, "{verts:?}");
    assert!((verts[0].0).abs() < 1e-12 && (verts[0].1).abs() < 1e-12);
}

#[test]
fn unbounded_region_is_an_error() {
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R2".into()), RhsExpr::constant(rat(1))));
    let err = numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new())
        .unwrap_err();
    match err {
        VertexError::Unbounded(dx, dy) => {
            assert!(dx > 0.9 && dy.abs() < 1e-9, "direction ({dx},{dy})");
        }
        other => panic!("expected Unbounded, got {other}"),
    }
}

#[test]
fn infeasible_region_is_empty() {
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R1".into()), RhsExpr::constant(rat(-1))));
    let verts =
        numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new()).unwrap();
    assert!(verts.is_empty());
}

#[test]
fn foreign_variable_is_an_error() {
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R3".into()), RhsExpr::constant(rat(1))));
    let err = numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new())
        .unwrap_err();
    assert!(matches!(err, VertexError::ForeignVariable(v) if v == "R3"));
}

#[test]
fn equality_row_gives_segment() {
    // R1 + R2 = 1 within the unit square: the segment from (0,1) to (1,0).
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(LinComb::var("R1".into()), RhsExpr::constant(rat(1))));
    sys.push(Constraint::le(LinComb::var("R2".into()), RhsExpr::constant(rat(1))));
    sys.push(Constraint::eq(
        LinComb::sum(["R1".to_string(), "R2".to_string()]),
        RhsExpr::constant(rat(1)),
    ));
    let verts =
        numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new()).unwrap();
    assert_same_vertex_set(&verts, &[(0.0, 1.0), (1.0, 0.0)], 1e-9);
}

#[test]
fn atom_valued_rhs_is_evaluated() {
    let mut sys: System<String, String> = System::new();
    sys.push(Constraint::le(
        LinComb::var("R1".into()),
        RhsExpr::atom("a".to_string()).add(&RhsExpr::atom_scaled("b".to_string(), rat(2))),
    ));
    sys.push(Constraint::le(LinComb::var("R2".into()), RhsExpr::atom("b".to_string())));
    let env: BTreeMap<String, f64> = [("a".to_string(), 0.5), ("b".to_string(), 0.25)].into();
    let verts = numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &env).unwrap();
    assert_same_vertex_set(&verts, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.25), (0.0, 0.25)], 1e-9);

    let err = numeric_vertices_2d(&sys, &"R1".to_string(), &"R2".to_string(), &BTreeMap::new())
        .unwrap_err();
    assert!(matches!(err, VertexError::UnknownAtom(_)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    /// Random bounded systems agree with the pairwise-intersection oracle,
    /// come out CCW, and start at the lexicographically smallest vertex.
    #[test]
    fn matches_oracle(
        xcap in 2u32..40,
        ycap in 2u32..40,
        extra in prop::collection::vec((-3i32..=3, -3i32..=3, 0u32..=40), 0..6),
    ) {
        // Quarter-integer data is exact in f64; the origin is always feasible.
        let mut rows: Vec<(f64, f64, f64)> = vec![
            (-1.0, 0.0, 0.0),
            (0.0, -1.0, 0.0),
            (1.0, 0.0, xcap as f64 / 4.0),
            (0.0, 1.0, ycap as f64 / 4.0),
        ];
        for (a, b, c) in extra {
            if a == 0 && b == 0 {
                continue;
            }
            rows.push((a as f64, b as f64, c as f64 / 4.0));
        }
        let got = clip_halfplanes(&rows).unwrap();
        let want = oracle_vertices(&rows);
        assert_same_vertex_set(&got, &want, 1e-6);
        if got.len() >= 3 {
            prop_assert!(shoelace(&got) > 0.0, "not CCW: {got:?}");
        }
        if !got.is_empty() {
            let min = got.iter().cloned().min_by(|p, q| p.partial_cmp(q).unwrap()).unwrap();
            prop_assert_eq!(got[0], min, "does not start at lex-min: {:?}", got);
        }
    }
}
