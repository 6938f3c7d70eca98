//! Canonicalization, substitution, and registry behavior.

use constraint_core::{rat, RhsExpr};
use info_symbols::{
    cap, mi, substitute_expr, DominanceError, DominanceRegistry, InfoAtom, InfoTerm, RateSymbol,
    RvLabel,
};
use proptest::prelude::*;
use RvLabel::*;

fn term(
    l: impl IntoIterator<Item = RvLabel>,
    r: impl IntoIterator<Item = RvLabel>,
    c: impl IntoIterator<Item = RvLabel>,
) -> InfoTerm {
    InfoTerm::new(l, r, c).unwrap()
}

#[test]
fn empty_labels_are_removed() {
    let t = term([Y3], [T1, Empty], [Q, Empty]);
    assert_eq!(t, term([Y3], [T1], [Q]));
    assert_eq!(t.to_string(), "I(Y3 ; T1 | Q)");
}

#[test]
fn bundles_expand_in_conditioning() {
    let t = term([Y1], [V2], [X1Bar]);
    let cond: Vec<RvLabel> = t.cond().iter().copied().collect();
    assert_eq!(cond, vec![Q, S1, S2, Z1, V1, T1, U1, X1]);
    assert_eq!(t.left().len(), 1);
}

#[test]
fn conditioned_labels_are_absorbed() {
    let t = term([Y3], [T1, Q], [Q, V1]);
    assert_eq!(t, term([Y3], [T1], [Q, V1]));
}

#[test]
fn sides_are_symmetric() {
    assert_eq!(term([Y3], [T1, U1], [Q]), term([T1, U1], [Y3], [Q]));
}

#[test]
fn collapsed_terms_are_zero() {
    assert!(InfoTerm::new([Y3], [Empty], [Q]).is_none());
    assert!(InfoTerm::new([Q, V1], [Y3], [Q, V1]).is_none());
    assert!(mi([Y3], [T1], [T1]).is_zero());
}

#[test]
fn display_matches_documented_syntax() {
    let t = term([Y3], [T1, U1], [Q, V1, V2, U2]);
    assert_eq!(t.to_string(), "I(Y3 ; T1,U1 | Q,V1,V2,U2)");
    let back: InfoTerm = t.to_string().parse().unwrap();
    assert_eq!(back, t);
}

#[test]
fn expression_arithmetic_is_a_group() {
    let e = mi([Y3], [T1], [Q]).add(&mi([V1], [Y2], [Q]).scale(&rat(2)));
    assert!(e.sub(&e).is_zero());
    let minus = e.neg();
    assert!(e.add(&minus).is_zero());
}

#[test]
fn substitution_collapses_and_passes_capacities() {
    // Erasing T1 sends a private-decoding bound to zero.
    let e = mi([Y3], [T1], [Q, V1, V2, U1, U2]);
    let gone = substitute_expr(&e, &|l| if l == T1 { Empty } else { l });
    assert!(gone.is_zero());

    let with_cap = e.add(&cap("C12"));
    let mapped = substitute_expr(&with_cap, &|l| if l == T1 { Empty } else { l });
    assert_eq!(mapped, cap("C12"));
}

#[test]
fn merged_destination_identifies_crossed_bounds() {
    // Under {Y4→Y3, T1→EMPTY, T2→EMPTY}, destination 2's mixed bound maps
    // onto destination 1's opposite mixed bound.
    let sigma = |l: RvLabel| match l {
        Y4 => Y3,
        T1 | T2 => Empty,
        other => other,
    };
    let c13c = mi([Y3], [T1, U2], [Q, V1, V2, U1]);
    let c13d = mi([Y3], [T1, U1], [Q, V1, V2, U2]);
    let c14c = mi([Y4], [T2, U1], [Q, V1, V2, U2]);
    let c14d = mi([Y4], [T2, U2], [Q, V1, V2, U1]);
    assert_eq!(substitute_expr(&c14c, &sigma), substitute_expr(&c13d, &sigma));
    assert_eq!(substitute_expr(&c14d, &sigma), substitute_expr(&c13c, &sigma));
    assert_ne!(substitute_expr(&c13c, &sigma), substitute_expr(&c13d, &sigma));
}

#[test]
fn registry_rejects_reversals_and_accepts_self() {
    let lo = term([Y3], [T1], [Q, V1, V2, U1, U2]);
    let hi = term([Y3], [T1, U1, U2], [Q, V1, V2]);
    let mut reg = DominanceRegistry::new();
    let first = reg.register(&lo, &hi).unwrap();
    assert!(matches!(reg.register(&hi, &lo), Err(DominanceError::Contradicts { .. })));
    // Self-registration is inert.
    reg.register(&lo, &lo).unwrap();
    assert_eq!(reg.pairs().len(), 1);
    // Re-registration returns the same handle.
    assert_eq!(reg.register(&lo, &hi).unwrap(), first);
}

#[test]
fn registry_facts_drive_pruning() {
    use constraint_core::{prune::drop_redundant_symbolic, Constraint, LinComb, System};
    let lo = term([Y3], [T1], [Q, V1, V2, U1, U2]);
    let hi = term([Y3], [T1, U1, U2], [Q, V1, V2]);
    let mut reg = DominanceRegistry::new();
    reg.register(&lo, &hi).unwrap();

    let mut sys: System<RateSymbol, InfoAtom> = System::new();
    sys.push(Constraint::le(
        LinComb::var(RateSymbol::R1),
        RhsExpr::atom(InfoAtom::Term(lo.clone())),
    ));
    sys.push(Constraint::le(
        LinComb::var(RateSymbol::R1),
        RhsExpr::atom(InfoAtom::Term(hi.clone())),
    ));
    let out = drop_redundant_symbolic(&sys, &reg.facts());
    assert_eq!(out.len(), 1);
    assert_eq!(out.iter().next().unwrap().rhs, RhsExpr::atom(InfoAtom::Term(lo)));
}

#[test]
fn rate_symbols_roundtrip_and_swap() {
    for r in RateSymbol::ALL {
        let back: RateSymbol = r.to_string().parse().unwrap();
        assert_eq!(back, r);
        assert_eq!(r.swap_user().swap_user(), r);
    }
    assert_eq!(RateSymbol::P10c.to_string(), "R'_10c");
    assert_eq!(RateSymbol::Pp11c.to_string(), "R''_11c");
    assert_eq!(RateSymbol::P10c.swap_user(), RateSymbol::P20c);
}

fn arb_label() -> impl Strategy<Value = RvLabel> {
    prop::sample::select(vec![
        Q, S1, S2, Z1, Z2, V1, V2, T1, U1, T2, U2, X1, X2, Y1, Y2, Y3, Y4, X1Bar, X2Bar, Empty,
    ])
}

fn arb_sets() -> impl Strategy<Value = (Vec<RvLabel>, Vec<RvLabel>, Vec<RvLabel>)> {
    (
        prop::collection::vec(arb_label(), 1..4),
        prop::collection::vec(arb_label(), 1..4),
        prop::collection::vec(arb_label(), 0..4),
    )
}

proptest! {
    /// Canonicalization is idempotent: rebuilding from the canonical parts
    /// is the identity.
    #[test]
    fn canonicalize_idempotent((l, r, c) in arb_sets()) {
        if let Some(t) = InfoTerm::new(l, r, c) {
            let again = InfoTerm::new(
                t.left().iter().copied(),
                t.right().iter().copied(),
                t.cond().iter().copied(),
            ).unwrap();
            prop_assert_eq!(again, t);
        }
    }

    /// Substituting raw label sets and canonicalizing equals canonicalizing
    /// first and substituting the canonical term.
    #[test]
    fn substitution_commutes_with_canonicalization(
        (l, r, c) in arb_sets(),
        swap in any::<bool>(),
        erase in prop::sample::select(vec![Q, V1, U1, T1, Y3, U2]),
    ) {
        let sigma = move |lab: RvLabel| {
            let lab = if swap { lab.swap_user() } else { lab };
            if lab == erase { Empty } else { lab }
        };
        // Bundles must be expanded before mapping on the raw side too:
        // substitution is defined on expanded terms.
        let expand = |ls: &[RvLabel]| -> Vec<RvLabel> {
            ls.iter()
                .flat_map(|&x| x.expansion().map(|b| b.to_vec()).unwrap_or_else(|| vec![x]))
                .collect()
        };
        let raw = InfoTerm::new(
            expand(&l).into_iter().map(sigma),
            expand(&r).into_iter().map(sigma),
            expand(&c).into_iter().map(sigma),
        );
        let canon_first = InfoTerm::new(l, r, c).and_then(|t| t.substitute(&sigma));
        prop_assert_eq!(raw, canon_first);
    }

    /// Parse/display roundtrip on canonical terms.
    #[test]
    fn term_text_roundtrip((l, r, c) in arb_sets()) {
        if let Some(t) = InfoTerm::new(l, r, c) {
            let back: InfoTerm = t.to_string().parse().unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
