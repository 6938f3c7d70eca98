//! Specializations of the superposition region: pin bound atoms, merge
//! auxiliaries, and check the pruned survivors against the known regions
//! for each embedded channel.

use constraint_core::systems_equal;
use info_symbols::RvLabel;
use region_templates::reduce::{reduction_plan, run_all_reductions, Reduction};

#[test]
fn every_reduction_matches_its_expected_region() {
    for (plan, result) in run_all_reductions() {
        let Some(expected) = &plan.expected else { continue };
        if let Err(diff) = systems_equal(&result, expected) {
            panic!("{} mismatch\n{diff}", plan.id);
        }
    }
}

#[test]
fn expected_row_counts() {
    let counts = [
        (Reduction::NoFeedback, 7),
        (Reduction::Cognitive, 5),
        (Reduction::Broadcast, 4),
        (Reduction::MacGf, 4),
        (Reduction::MacGfCommon, 4),
        (Reduction::RelayDf, 2),
        (Reduction::Conferencing, 15),
    ];
    for (id, want) in counts {
        let got = reduction_plan(id).run();
        assert_eq!(got.len(), want, "row count for {id}");
    }
}

#[test]
fn output_feedback_keeps_shape_and_rewires_observations() {
    // Feeding back the destination outputs keeps all fifteen bounds; it
    // only replaces the source observations inside the atoms.
    let plan = reduction_plan(Reduction::OutputFeedback);
    assert!(plan.expected.is_none());
    let result = plan.run();
    assert_eq!(result.len(), 15);
    for c in result.iter() {
        for (atom, _) in c.rhs.terms() {
            let info_symbols::InfoAtom::Term(t) = atom else {
                panic!("output feedback leaves no capacity atoms")
            };
            assert!(
                t.labels().all(|l| l != RvLabel::Y1 && l != RvLabel::Y2),
                "source observations must be rewired: {atom}"
            );
        }
    }
}

#[test]
fn common_rate_enters_exactly_the_joint_decoding_rows() {
    use info_symbols::RateSymbol::R0;
    let with = reduction_plan(Reduction::MacGfCommon).run();
    let without = reduction_plan(Reduction::MacGf).run();
    assert_eq!(with.len(), without.len());
    let carrying: Vec<_> = with
        .iter()
        .filter(|c| c.lhs.coeff(&R0) != constraint_core::rat(0))
        .collect();
    assert_eq!(carrying.len(), 1, "exactly the full-decoding sum row carries the common rate");
    assert_eq!(carrying[0].lhs.coeff(&R0), constraint_core::rat(1));
}

#[test]
fn names_round_trip() {
    for id in Reduction::ALL {
        let parsed: Reduction = id.name().parse().expect("canonical name parses");
        assert_eq!(parsed, id);
        let relaxed: Reduction = id
            .name()
            .to_ascii_lowercase()
            .replace('_', "-")
            .parse()
            .expect("relaxed spelling parses");
        assert_eq!(relaxed, id);
        assert!(!id.describe().is_empty());
    }
    assert!("NO_SUCH_REDUCTION".parse::<Reduction>().is_err());
}

#[test]
fn conferencing_is_the_region_with_capacity_links() {
    let result = reduction_plan(Reduction::Conferencing).run();
    let caps: std::collections::BTreeSet<String> = result
        .iter()
        .flat_map(|c| c.rhs.terms())
        .filter_map(|(a, _)| match a {
            info_symbols::InfoAtom::Capacity(name) => Some(name.clone()),
            info_symbols::InfoAtom::Term(_) => None,
        })
        .collect();
    assert_eq!(
        caps,
        ["C12", "C21"].into_iter().map(str::to_string).collect::<std::collections::BTreeSet<_>>()
    );
}
