//! Fourier-Motzkin: worked examples and the spec'd invariants.
//!
//! Soundness: a point of the projection lifts exactly (rational arithmetic)
//! to a point of the original system; a point of the original system
//! projects into the output. Order-insensitivity: after normalization and
//! exact redundancy removal, the result does not depend on victim order
//! (tested on full-dimensional inequality systems, where the irredundant
//! description is unique).

use std::collections::BTreeMap;

use constraint_core::fm::{lift_point, satisfies};
use constraint_core::{
    drop_redundant_numeric, eliminate, eliminate_traced, rat, ratq, systems_equal, Constraint,
    FmOptions, LinComb, Rat, RhsExpr, System,
};
use proptest::prelude::*;

type NumSys = System<String, String>;

fn le(pairs: &[(&str, i64)], rhs: Rat) -> Constraint<String, String> {
    Constraint::le(
        LinComb::from_pairs(pairs.iter().map(|(v, c)| (v.to_string(), rat(*c)))),
        RhsExpr::constant(rhs),
    )
}

fn eq(pairs: &[(&str, i64)], rhs: Rat) -> Constraint<String, String> {
    Constraint::eq(
        LinComb::from_pairs(pairs.iter().map(|(v, c)| (v.to_string(), rat(*c)))),
        RhsExpr::constant(rhs),
    )
}

#[test]
fn one_variable_projection() {
    // {x ≤ 3, −x ≤ 0, y − x ≤ 2} projected to y gives {y ≤ 5}.
    let sys = NumSys::from_vec(vec![
        le(&[("x", 1)], rat(3)),
        le(&[("x", -1)], rat(0)),
        le(&[("y", 1), ("x", -1)], rat(2)),
    ]);
    let out = eliminate(&sys, &["x".to_string()], FmOptions::default()).unwrap();
    let want = NumSys::from_vec(vec![le(&[("y", 1)], rat(5))]);
    systems_equal(&out, &want).unwrap();
}

#[test]
fn equality_substitution_precedes_pairing() {
    // {x + y = 4, x − y ≤ 0, −x ≤ 0}, eliminating x, substitutes x := 4 − y.
    let sys = NumSys::from_vec(vec![
        eq(&[("x", 1), ("y", 1)], rat(4)),
        le(&[("x", 1), ("y", -1)], rat(0)),
        le(&[("x", -1)], rat(0)),
    ]);
    let out = eliminate(&sys, &["x".to_string()], FmOptions::default()).unwrap();
    let want = NumSys::from_vec(vec![le(&[("y", -1)], rat(-2)), le(&[("y", 1)], rat(4))]);
    systems_equal(&out, &want).unwrap();
}

#[test]
fn absent_victim_is_a_noop() {
    let sys = NumSys::from_vec(vec![le(&[("x", 1)], rat(1))]);
    let out = eliminate(&sys, &["z".to_string()], FmOptions::default()).unwrap();
    systems_equal(&out, &sys).unwrap();
}

#[test]
fn blowup_cap_is_enforced() {
    // 8 upper and 8 lower bounds on x against distinct other vars: 64 combos.
    let mut sys = NumSys::new();
    for i in 0..8 {
        sys.push(le(&[("x", 1), (&format!("u{i}"), 1)], rat(i)));
        sys.push(le(&[("x", -1), (&format!("w{i}"), 1)], rat(i)));
    }
    let err = eliminate(&sys, &["x".to_string()], FmOptions { cap: 10 }).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains('x') && msg.contains("cap"), "{msg}");
}

/// Random full-dimensional feasible inequality system with a known interior
/// point: rhs = lhs(x0) + slack, slack ≥ 1.
#[derive(Debug, Clone)]
struct Instance {
    sys: NumSys,
    interior: BTreeMap<String, Rat>,
    vars: Vec<String>,
}

fn var_name(i: usize) -> String {
    format!("v{i}")
}

fn arb_instance(nvars: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Instance> {
    nvars
        .prop_flat_map(|n| {
            let point = prop::collection::vec((-20i64..=20, 1i64..=4), n);
            let rows = prop::collection::vec(
                (prop::collection::vec(-3i64..=3, n), 1i64..=8),
                3..=8,
            );
            (Just(n), point, rows)
        })
        .prop_map(|(n, point, rows)| {
            let vars: Vec<String> = (0..n).map(var_name).collect();
            let interior: BTreeMap<String, Rat> = vars
                .iter()
                .cloned()
                .zip(point.iter().map(|(p, q)| ratq(*p, *q)))
                .collect();
            let mut sys = NumSys::new();
            for (coeffs, slack) in rows {
                let lhs = LinComb::from_pairs(
                    vars.iter().cloned().zip(coeffs.iter().map(|c| rat(*c))),
                );
                if lhs.is_empty() {
                    continue;
                }
                let rhs = lhs.eval(&interior) + rat(slack);
                sys.push(Constraint::le(lhs, RhsExpr::constant(rhs)));
            }
            Instance { sys, interior, vars }
        })
        .prop_filter("needs at least one row", |inst| !inst.sys.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    /// Forward soundness: any point of the input satisfies the projection;
    /// backward soundness: any sampled point of the projection lifts to an
    /// exact point of the input.
    #[test]
    fn projection_is_sound_and_liftable(
        inst in arb_instance(2..=4),
        nvictims in 1usize..=3,
        probe in prop::collection::vec((-25i64..=25, 1i64..=3), 8),
    ) {
        let victims: Vec<String> =
            inst.vars.iter().take(nvictims.min(inst.vars.len())).cloned().collect();
        let (out, trace) =
            eliminate_traced(&inst.sys, &victims, FmOptions::default()).unwrap();
        let env = BTreeMap::new();

        // The known interior point projects into the output and lifts back.
        let projected: BTreeMap<String, Rat> = inst
            .interior
            .iter()
            .filter(|(v, _)| !victims.contains(v))
            .map(|(v, x)| (v.clone(), x.clone()))
            .collect();
        prop_assert!(satisfies(&out, &projected, &env).unwrap());
        let lifted = lift_point(&trace, &projected, &env).unwrap();
        prop_assert!(satisfies(&inst.sys, &lifted, &env).unwrap());

        // Random survivor-space probes: satisfy output ⇒ liftable to input.
        let survivors: Vec<String> =
            inst.vars.iter().filter(|v| !victims.contains(v)).cloned().collect();
        for chunk in probe.chunks(survivors.len().max(1)) {
            if chunk.len() < survivors.len() || survivors.is_empty() {
                continue;
            }
            let cand: BTreeMap<String, Rat> = survivors
                .iter()
                .cloned()
                .zip(chunk.iter().map(|(p, q)| ratq(*p, *q)))
                .collect();
            if satisfies(&out, &cand, &env).unwrap() {
                let lifted = lift_point(&trace, &cand, &env).unwrap();
                prop_assert!(satisfies(&inst.sys, &lifted, &env).unwrap());
            }
        }
    }

    /// Victim order does not matter after exact redundancy removal.
    #[test]
    fn projection_is_order_insensitive(inst in arb_instance(3..=4), seed in any::<u64>()) {
        let n = inst.vars.len();
        let victims: Vec<String> = inst.vars.iter().take(n - 1).cloned().collect();
        let mut reversed = victims.clone();
        reversed.reverse();
        // A third order: rotate by a seeded amount.
        let mut rotated = victims.clone();
        rotated.rotate_left((seed as usize) % victims.len().max(1));

        let mut canon: Vec<NumSys> = Vec::new();
        for order in [victims, reversed, rotated] {
            let out = eliminate(&inst.sys, &order, FmOptions::default()).unwrap();
            let min = drop_redundant_numeric(&out, FmOptions::default()).unwrap();
            canon.push(min.normalize());
        }
        systems_equal(&canon[0], &canon[1]).map_err(|d| TestCaseError::fail(d.to_string()))?;
        systems_equal(&canon[0], &canon[2]).map_err(|d| TestCaseError::fail(d.to_string()))?;
    }
}

#[test]
fn zero_coefficient_victim_rows_pass_through() {
    // Rows not mentioning the victim are untouched (up to normalization).
    let sys = NumSys::from_vec(vec![
        le(&[("x", 1), ("y", 1)], rat(2)),
        le(&[("y", 2)], rat(4)),
        le(&[("x", -1)], rat(0)),
    ]);
    let out = eliminate(&sys, &["x".to_string()], FmOptions::default()).unwrap();
    let want = NumSys::from_vec(vec![le(&[("y", 1)], rat(2))]);
    // y + x ≤ 2 with −x ≤ 0 combines to y ≤ 2; y ≤ 2 absorbs 2y ≤ 4.
    systems_equal(&out, &want).unwrap();
}
