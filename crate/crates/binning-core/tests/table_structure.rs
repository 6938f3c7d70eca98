//! Bookkeeping checks on the literal error-event table: multiplicities,
//! correct-set/pattern agreement, complement structure of the bounds,
//! penalty placement rules, and the displayed-versus-derived correction
//! discrepancy set.

use std::collections::BTreeSet;

use binning_core::{
    delta1, delta1_restatement, delta2, dest1_rows_full, discrepancies, slot_labels, Dest, Slot,
    OK_PATTERN_COUNT, SLOT_LABELS,
};
use constraint_core::RhsExpr;
use info_symbols::{swap_expr, InfoAtom, InfoTerm, RateSymbol, RvLabel};

fn term(left: &[RvLabel], right: &[RvLabel], cond: &[RvLabel]) -> InfoTerm {
    InfoTerm::new(left.iter().copied(), right.iter().copied(), cond.iter().copied()).unwrap()
}

#[test]
fn table_has_28_rows_in_index_order() {
    let rows = dest1_rows_full();
    assert_eq!(rows.len(), 28);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.index, i);
        assert_eq!(row.dest, Dest::One);
    }
}

#[test]
fn multiplicities_count_wildcards_and_events() {
    let rows = dest1_rows_full();
    let mut total = 0u64;
    for row in &rows {
        assert_eq!(
            row.multiplicity,
            1 << row.wildcards(),
            "row {} multiplicity does not match its wildcard count",
            row.index
        );
        total += row.multiplicity;
    }
    // All patterns over 8 binary slots: the table's classes plus the
    // all-correct patterns cover them exactly once.
    assert_eq!(total + OK_PATTERN_COUNT, 256);
}

#[test]
fn correct_sets_are_the_correct_slots() {
    for row in dest1_rows_full() {
        let from_pattern: BTreeSet<RvLabel> = SLOT_LABELS
            .iter()
            .zip(row.pattern.iter())
            .filter(|(_, s)| **s == Slot::Correct)
            .map(|(l, _)| *l)
            .collect();
        let listed: BTreeSet<RvLabel> = row.correct_set.iter().copied().collect();
        assert_eq!(from_pattern, listed, "row {}", row.index);
        assert_eq!(listed.len(), row.correct_set.len(), "row {} repeats a label", row.index);
    }
}

#[test]
fn main_terms_decode_the_complement_of_the_correct_set() {
    // Every bound's leading term is the received signal against exactly
    // the layers not known correct, conditioned on those that are; the
    // first row decodes everything unconditionally.
    let all: BTreeSet<RvLabel> = SLOT_LABELS.iter().copied().collect();
    for row in dest1_rows_full() {
        let correct: BTreeSet<RvLabel> = row.correct_set.iter().copied().collect();
        let complement: Vec<RvLabel> = all.difference(&correct).copied().collect();
        let expected = InfoTerm::new(
            [RvLabel::Y3],
            complement,
            correct.iter().copied(),
        )
        .unwrap();
        assert_eq!(row.main, expected, "row {}", row.index);
    }
    assert!(dest1_rows_full()[0].main.cond().is_empty());
    assert!(dest1_rows_full()[0].main.right().contains(&RvLabel::Q));
}

#[test]
fn penalty_placement_follows_the_bin_structure() {
    use RateSymbol::{P10c, P11c, P20c, Pp11c};
    for row in dest1_rows_full() {
        let slot = |l: RvLabel| row.pattern[SLOT_LABELS.iter().position(|x| *x == l).unwrap()];
        // Wrong common-layer candidates carry that layer's bin rate.
        assert_eq!(
            row.penalties.contains(&P10c),
            slot(RvLabel::V1) == Slot::Wrong,
            "row {}",
            row.index
        );
        assert_eq!(
            row.penalties.contains(&P20c),
            slot(RvLabel::V2) == Slot::Wrong,
            "row {}",
            row.index
        );
        // The cooperative-private pair: a wrong (or open) old layer
        // carries the double bin; an unresolved new layer over a correct
        // old one carries the single bin; both-correct carries neither.
        let (s1, z1) = (slot(RvLabel::S1), slot(RvLabel::Z1));
        let expect_s = s1 != Slot::Correct;
        let expect_z = s1 == Slot::Correct && z1 != Slot::Correct;
        assert_eq!(row.penalties.contains(&Pp11c), expect_s, "row {}", row.index);
        assert_eq!(row.penalties.contains(&P11c), expect_z, "row {}", row.index);
    }
}

#[test]
fn first_and_last_rows_match_their_displayed_sums() {
    use RateSymbol::{Pp11c, RT1, RU1, RU2, RV1, RV2, RZ1};
    let rows = dest1_rows_full();
    let lhs0: BTreeSet<RateSymbol> = rows[0].message_lhs.iter().copied().collect();
    assert_eq!(
        lhs0,
        [RV1, RV2, RU1, RT1, RU2, RZ1].into_iter().collect::<BTreeSet<_>>()
    );
    assert_eq!(rows[0].penalties, vec![Pp11c]);
    assert_eq!(rows[12].message_lhs, vec![RZ1]);
    assert_eq!(rows[27].message_lhs, vec![RT1]);
    // Row 12's bound decodes only the cooperative-private pair.
    assert_eq!(
        rows[12].main,
        term(
            &[RvLabel::Y3],
            &[RvLabel::S1, RvLabel::Z1],
            &[RvLabel::Q, RvLabel::V1, RvLabel::U1, RvLabel::T1, RvLabel::V2, RvLabel::U2]
        )
    );
}

#[test]
fn zero_correction_rows_are_exactly_the_generation_matched_classes() {
    let expected: BTreeSet<usize> = [0, 1, 2, 3, 4, 7, 10, 13].into_iter().collect();
    for row in dest1_rows_full() {
        assert_eq!(
            row.displayed_correction.is_empty(),
            expected.contains(&row.index),
            "row {}",
            row.index
        );
        // The canonical expression of an empty correction list is zero.
        if row.displayed_correction.is_empty() {
            let mut e = RhsExpr::<InfoAtom>::zero();
            for t in &row.displayed_correction {
                e = e.add(&RhsExpr::atom(InfoAtom::Term(t.clone())));
            }
            assert!(e.is_zero());
        }
    }
}

#[test]
fn displayed_and_derived_corrections_disagree_only_on_the_flagged_rows() {
    assert_eq!(discrepancies(), vec![25, 26, 27]);
    use RvLabel::{Q, S1, U1, V1, Z1};
    for row in dest1_rows_full() {
        if discrepancies().contains(&row.index) {
            // The disagreement is confined to the second correction term:
            // same canonical sides, conditioning differs by the common
            // layer's presence.
            assert_eq!(row.displayed_correction[1], term(&[U1], &[S1, Z1], &[Q]));
            assert_eq!(row.derived_correction[1], term(&[U1], &[S1, Z1], &[Q, V1]));
            assert_eq!(row.displayed_correction[0], row.derived_correction[0]);
            assert_eq!(
                row.displayed_correction.len(),
                row.derived_correction.len()
            );
            assert_eq!(row.displayed_correction[2..], row.derived_correction[2..]);
        } else {
            assert_eq!(row.displayed_correction, row.derived_correction, "row {}", row.index);
        }
    }
}

#[test]
fn credit_expressions_have_their_defining_shapes() {
    use RvLabel::{Q, S1, S2, T1, T2, U1, U2, V1, V2, Z1, Z2};
    let d1 = delta1();
    let expected = [
        term(&[S1], &[V1, U1, T1], &[Q]),
        term(&[Z1], &[U1, T1], &[Q, S1, V1]),
        term(&[V2, U2], &[V1, U1, T1, S1, Z1], &[Q]),
    ];
    let atoms: BTreeSet<&InfoAtom> = d1.atoms().collect();
    assert_eq!(atoms.len(), 3);
    for t in &expected {
        assert_eq!(d1.coeff(&InfoAtom::Term(t.clone())), constraint_core::rat(1));
    }
    // The restatement moves the old cooperative-private layer into the
    // conditioning of the third term; it is a different expression.
    let r = delta1_restatement();
    assert_ne!(d1, r);
    assert_eq!(
        r.coeff(&InfoAtom::Term(term(&[V2, U2], &[V1, U1, T1, Z1], &[Q, S1]))),
        constraint_core::rat(1)
    );
    // The second-destination credit is the user swap.
    assert_eq!(delta2(), swap_expr(&d1));
    assert_eq!(
        delta2().coeff(&InfoAtom::Term(term(&[S2], &[V2, U2, T2], &[Q]))),
        constraint_core::rat(1)
    );
    assert_eq!(
        delta2().coeff(&InfoAtom::Term(term(&[Z2], &[U2, T2], &[Q, S2, V2]))),
        constraint_core::rat(1)
    );
}

#[test]
fn every_row_symbol_is_defined_in_the_aggregated_block() {
    let sys = binning_core::build_full();
    let defined: BTreeSet<RateSymbol> = sys.aggregated.all_vars().into_iter().collect();
    for group in [
        sys.dest1().all_vars(),
        sys.dest2().all_vars(),
        sys.encoder.all_vars(),
    ] {
        for v in group {
            assert!(defined.contains(&v), "{v} is not tied to the split rates");
        }
    }
}

#[test]
fn aggregated_block_encodes_the_expected_identities() {
    use RateSymbol::{P10c, P11c, P20c, Pp11c, R10c, R11c, R20c, RQ, RS1, RV1, RV2, RZ1};
    use std::collections::BTreeMap;
    let defs = binning_core::aggregated_defs();
    assert_eq!(defs.len(), 11);
    // Solve the equalities on a random-looking integer assignment of the
    // split rates and confirm the documented consequences.
    let mut env: BTreeMap<RateSymbol, constraint_core::Rat> = BTreeMap::new();
    let base = [
        (RateSymbol::R10c, 3),
        (RateSymbol::R10n, 5),
        (RateSymbol::R11n, 7),
        (RateSymbol::R11c, 11),
        (RateSymbol::R20c, 13),
        (RateSymbol::R20n, 17),
        (RateSymbol::R22n, 19),
        (RateSymbol::R22c, 23),
        (RateSymbol::P10c, 29),
        (RateSymbol::P10n, 31),
        (RateSymbol::P11n, 37),
        (RateSymbol::P20c, 41),
        (RateSymbol::P20n, 43),
        (RateSymbol::P22n, 47),
        (RateSymbol::P11c, 53),
        (RateSymbol::P22c, 59),
        (RateSymbol::Pp11c, 61),
        (RateSymbol::Pp22c, 67),
    ];
    for (sym, v) in base {
        env.insert(sym, constraint_core::rat(v));
    }
    // Each definition fixes its aggregated symbol.
    for c in defs.iter() {
        let agg = c
            .lhs
            .terms()
            .find(|(_, coeff)| **coeff == constraint_core::rat(1))
            .map(|(v, _)| *v)
            .unwrap();
        let rest: constraint_core::Rat = c
            .lhs
            .terms()
            .filter(|(v, _)| **v != agg)
            .map(|(v, coeff)| coeff.clone() * env[v].clone())
            .sum();
        env.insert(agg, -rest);
    }
    assert_eq!(env[&RQ], env[&R10c].clone() + env[&R20c].clone());
    assert_eq!(env[&RV1], env[&R10c].clone() + env[&P10c].clone());
    assert_eq!(env[&RZ1], env[&R11c].clone() + env[&P11c].clone());
    // Common-layer aggregate: both users' common rates, bins accounted
    // separately.
    assert_eq!(
        env[&RV1].clone() + env[&RV2].clone(),
        env[&RQ].clone() + env[&P10c].clone() + env[&P20c].clone()
    );
    // New cooperative-private aggregate in terms of the old one.
    assert_eq!(
        env[&RZ1],
        env[&RS1].clone() - env[&Pp11c].clone() + env[&P11c].clone()
    );
}

#[test]
fn slot_labels_swap_per_destination() {
    assert_eq!(slot_labels(Dest::One), SLOT_LABELS);
    assert_eq!(
        slot_labels(Dest::Two),
        [
            RvLabel::Q,
            RvLabel::V2,
            RvLabel::U2,
            RvLabel::T2,
            RvLabel::S2,
            RvLabel::Z2,
            RvLabel::V1,
            RvLabel::U1,
        ]
    );
}

#[test]
fn row_constraints_put_penalties_on_the_left() {
    use RateSymbol::{P10c, P20c, Pp11c, RT1, RU1, RU2, RZ1};
    let rows = dest1_rows_full();
    let c = rows[1].constraint();
    for sym in [RU1, RT1, RZ1, RU2, P10c, Pp11c, P20c] {
        assert_eq!(c.lhs.coeff(&sym), constraint_core::rat(1));
    }
    assert_eq!(c.lhs.len(), 7);
    assert_eq!(c.label.as_deref(), Some("E1_1"));
    // The bound carries the decoded-signal term plus the three credit
    // terms, nothing else for an uncorrected row.
    assert_eq!(c.rhs.atoms().count(), 4);
    assert_eq!(
        c.rhs.coeff(&InfoAtom::Term(rows[1].main.clone())),
        constraint_core::rat(1)
    );
    // A corrected row subtracts its displayed corrections.
    let c27 = rows[27].constraint();
    for t in &rows[27].displayed_correction {
        assert_eq!(
            c27.rhs.coeff(&InfoAtom::Term(t.clone())),
            constraint_core::rat(-1),
            "correction must be subtracted"
        );
    }
}
