//! Eliminating the bin and aggregate rates from the full double-binned
//! decoder systems, under each pinning of the auxiliary layers.

use constraint_core::{rat, systems_equal, Constraint, LinComb, RhsExpr};
use info_symbols::RateSymbol;
use region_templates::binning::{
    binning_equality_eliminate, degenerate_expected, eliminate_binned_rates, marton_expected,
    rate_bound_families, BinningElimError, BinningPinning,
};

#[test]
fn degenerate_pinning_collapses_to_superposition_bounds() {
    let got = binning_equality_eliminate(BinningPinning::SuperpositionDegenerate)
        .expect("elimination succeeds");
    if let Err(diff) = systems_equal(&got, &degenerate_expected()) {
        panic!("degenerate pinning mismatch\n{diff}");
    }
}

#[test]
fn broadcast_pinning_collapses_to_pair_binning_bounds() {
    let got =
        binning_equality_eliminate(BinningPinning::BroadcastPair).expect("elimination succeeds");
    if let Err(diff) = systems_equal(&got, &marton_expected()) {
        panic!("broadcast pinning mismatch\n{diff}");
    }
}

#[test]
fn full_elimination_produces_the_five_split_families() {
    let families = rate_bound_families(BinningPinning::Full).expect("elimination succeeds");
    let want: std::collections::BTreeSet<(i64, i64)> =
        [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)].into_iter().collect();
    assert_eq!(families, want);
}

#[test]
fn infeasible_bin_rates_are_reported() {
    // An equality forcing a bin rate to a constant, against a bound forcing
    // it nonpositive, leaves `0 <= -1` after elimination; the checker must
    // name it rather than return an empty system.
    let mut sys = region_templates::RateSystem::new();
    sys.push(Constraint::eq(
        LinComb::var(RateSymbol::P10c),
        RhsExpr::constant(rat(1)),
    ));
    sys.push(Constraint::le(LinComb::var(RateSymbol::P10c), RhsExpr::zero()));
    let err = eliminate_binned_rates(&sys).expect_err("must detect infeasibility");
    assert!(matches!(err, BinningElimError::NegativeBinningRate(_)), "got {err:?}");
}

#[test]
fn pinning_names_round_trip() {
    for p in BinningPinning::ALL {
        let parsed: BinningPinning = p.name().parse().expect("canonical name parses");
        assert_eq!(parsed, p);
        assert!(!p.describe().is_empty());
    }
    assert!("NO_SUCH_PINNING".parse::<BinningPinning>().is_err());
}
