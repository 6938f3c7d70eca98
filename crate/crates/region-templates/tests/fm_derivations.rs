//! End-to-end Fourier-Motzkin derivations: project the per-decoder split-rate
//! systems onto total rates and check the pruned result matches the curated
//! two-dimensional region templates exactly.

use constraint_core::systems_equal;
use region_templates::derive::{
    all_derivations, derive_ext_region, derive_hk_region, derive_sup_region,
};
use region_templates::{build, hk_remark_pair, RegionTemplateId};

#[test]
fn baseline_projection_matches_curated_region() {
    let derived = derive_hk_region().expect("projection succeeds");
    let expected = build(RegionTemplateId::HkRegion).union(&hk_remark_pair());
    if let Err(diff) = systems_equal(&derived, &expected) {
        panic!("baseline region mismatch\n{diff}");
    }
}

#[test]
fn superposition_projection_matches_curated_region() {
    let derived = derive_sup_region().expect("projection succeeds");
    let expected = build(RegionTemplateId::SupRegion);
    if let Err(diff) = systems_equal(&derived, &expected) {
        panic!("superposition region mismatch\n{diff}");
    }
}

#[test]
fn strict_decoding_projection_matches_curated_region() {
    let derived = derive_ext_region().expect("projection succeeds");
    let expected =
        build(RegionTemplateId::ExtRegion).union(&region_templates::ext_remark_row());
    if let Err(diff) = systems_equal(&derived, &expected) {
        panic!("strict decoding region mismatch\n{diff}");
    }
}

#[test]
fn all_derivations_are_consistent() {
    let runs = all_derivations().expect("all projections succeed");
    assert_eq!(runs.len(), 3);
    let names: Vec<_> = runs.iter().map(|d| d.name).collect();
    assert_eq!(names, ["baseline", "superposition", "strict-decoding"]);
    for d in &runs {
        if let Err(diff) = systems_equal(&d.derived, &d.expected) {
            panic!("{} mismatch\n{diff}", d.name);
        }
    }
}

#[test]
fn derivations_detect_mutated_inputs() {
    // Dropping one decoder bound must change the projected region; this
    // guards against the comparison being vacuously loose.
    use region_templates::derive::project_to_totals;
    use info_symbols::RateSymbol;

    let full = build(RegionTemplateId::HkDec1).union(&build(RegionTemplateId::HkDec2));
    let mutated: region_templates::RateSystem = full
        .iter()
        .filter(|c| c.label.as_deref() != Some("hk1-priv-both"))
        .cloned()
        .collect();
    let splits1 = [RateSymbol::R10n, RateSymbol::R11n];
    let splits2 = [RateSymbol::R20n, RateSymbol::R22n];
    let projected = project_to_totals(&mutated, &splits1, &splits2).expect("projection succeeds");
    let finished = region_templates::derive::finish(
        projected,
        &region_templates::anchors::hk_chain_facts().fact_set(),
    );
    let expected = build(RegionTemplateId::HkRegion).union(&hk_remark_pair());
    assert!(
        systems_equal(&finished, &expected).is_err(),
        "removing a decoder bound must perturb the projected region"
    );
}
