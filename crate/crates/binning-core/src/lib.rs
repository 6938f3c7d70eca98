//! Data-complete encoding of the superposition-and-binning constraint
//! system for the two-source cooperative interference channel.
//!
//! The scheme splits each user's message into cooperative-common,
//! non-cooperative common, non-cooperative private, and cooperative
//! private layers, bins the fresh layers against the cooperative state
//! both sources share, and has each destination jointly decode eight
//! message layers. This crate stores the resulting constraint system as
//! literal data:
//!
//! * the bin-pairing, known-interference-binning, and cross-decoding
//!   constraints at the encoders ([`encoder_bc`], [`encoder_mdc`],
//!   [`encoder_coop`]);
//! * the 28-row error-event table per destination ([`dest1_rows_full`]),
//!   each row carrying its displayed rate bound;
//! * the equalities defining aggregated per-layer rates
//!   ([`aggregated_defs`]);
//! * the documented reduced variants ([`build_variant`]).
//!
//! Where the source's displayed bound and its own step-by-step derivation
//! disagree, both forms are stored and the disagreement is surfaced by
//! [`discrepancies`] instead of being silently reconciled.

mod table;

pub use table::{dest1_rows_full, slot_labels, ErrorEventRow, Slot, OK_PATTERN_COUNT, SLOT_LABELS};

use std::fmt;
use std::str::FromStr;

use constraint_core::{Constraint, LinComb, RhsExpr, System};
use info_symbols::{mi, swap_expr, InfoAtom, InfoExpr, RateSymbol, RvLabel};

/// A decoding destination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dest {
    /// Destination of user 1's messages.
    One,
    /// Destination of user 2's messages.
    Two,
}

impl Dest {
    /// 1-based index used in constraint labels.
    pub fn index(self) -> u8 {
        match self {
            Dest::One => 1,
            Dest::Two => 2,
        }
    }

    /// The other destination.
    pub fn swap(self) -> Dest {
        match self {
            Dest::One => Dest::Two,
            Dest::Two => Dest::One,
        }
    }
}

/// Joint-typicality credit for destination 1: the error exponents are
/// computed against the codebook-generation distribution, which factors
/// more finely than the true joint distribution, and the mismatch credits
/// every bound with
/// `I(S1;V1,U1,T1|Q) + I(Z1;U1,T1|Q,S1,V1) + I(V2,U2;V1,U1,T1,S1,Z1|Q)`.
pub fn delta1() -> InfoExpr {
    use RvLabel::{Q, S1, T1, U1, U2, V1, V2, Z1};
    mi([S1], [V1, U1, T1], [Q])
        .add(&mi([Z1], [U1, T1], [Q, S1, V1]))
        .add(&mi([V2, U2], [V1, U1, T1, S1, Z1], [Q]))
}

/// The credit for destination 2: [`delta1`] user-swapped.
pub fn delta2() -> InfoExpr {
    swap_expr(&delta1())
}

/// The credit for the given destination.
pub fn delta_for(dest: Dest) -> InfoExpr {
    match dest {
        Dest::One => delta1(),
        Dest::Two => delta2(),
    }
}

/// The credit as restated alongside the assembled bounds, whose third
/// term conditions on the old cooperative-private layer instead of
/// listing it on the message side: `I(V2,U2;V1,U1,T1,Z1|Q,S1)`. The
/// defining form is [`delta1`]; this variant is kept for diagnostics
/// because the two are not the same function of the joint distribution.
pub fn delta1_restatement() -> InfoExpr {
    use RvLabel::{Q, S1, T1, U1, U2, V1, V2, Z1};
    mi([S1], [V1, U1, T1], [Q])
        .add(&mi([Z1], [U1, T1], [Q, S1, V1]))
        .add(&mi([V2, U2], [V1, U1, T1, Z1], [Q, S1]))
}

/// Indices of table rows whose displayed correction disagrees with the
/// correction the step-by-step derivation produces. The displayed form is
/// what [`ErrorEventRow::bound`] uses; the derived form is kept in
/// [`ErrorEventRow::derived_correction`] for inspection.
pub fn discrepancies() -> Vec<usize> {
    dest1_rows_full()
        .iter()
        .filter(|r| r.displayed_correction != r.derived_correction)
        .map(|r| r.index)
        .collect()
}

/// Bin-pairing constraint on the old cooperative-private pair: the two
/// sources' double-binned layers must jointly cover the dependence the
/// encoding imposes between them.
pub fn encoder_bc() -> System<RateSymbol, InfoAtom> {
    use RateSymbol::{Pp11c, Pp22c};
    use RvLabel::{Q, S1, S2};
    System::from_vec(vec![Constraint::ge(
        LinComb::sum([Pp11c, Pp22c]),
        mi([S1], [S2], [Q]),
    )
    .with_label("bc")])
}

/// Known-interference binning at each source: the fresh layers are binned
/// so the full codeword set looks jointly typical with the shared
/// cooperative pair, and the new cooperative-private layer is binned last
/// against everything the destination will not decode first.
pub fn encoder_mdc() -> System<RateSymbol, InfoAtom> {
    use RateSymbol::{P10c, P10n, P11c, P11n};
    use RvLabel::{Q, S1, S2, T1, U1, V1, Z1};
    let user1 = System::from_vec(vec![
        Constraint::ge(LinComb::sum([P10c]), mi([V1], [S1, S2], [Q])).with_label("mdc1-a"),
        Constraint::ge(LinComb::sum([P10n, P10c]), mi([U1, V1], [S1, S2], [Q]))
            .with_label("mdc1-b"),
        Constraint::ge(LinComb::sum([P11n, P10n, P10c]), mi([V1, U1, T1], [S1, S2], [Q]))
            .with_label("mdc1-c"),
        Constraint::ge(LinComb::sum([P11c]), mi([Z1], [S2, U1, T1], [Q, S1, V1]))
            .with_label("zbin1"),
    ]);
    user1.union(&swap_system(&user1))
}

/// Cross-decoding at each source: from its feedback signal and everything
/// it knows, a source decodes the peer's fresh cooperative layers before
/// the next slot. The side terms credit the bin structure of the wrong
/// candidates.
pub fn encoder_coop() -> System<RateSymbol, InfoAtom> {
    use RateSymbol::{RV2, RZ2};
    use RvLabel::{Q, S1, S2, V2, X1Bar, Y1, Z2};
    let at_source1 = System::from_vec(vec![
        Constraint::le(
            LinComb::sum([RZ2]),
            mi([Z2], [Y1], [X1Bar, V2]).add(&mi([Z2], [S1], [Q, S2, V2])),
        )
        .with_label("coop1-a"),
        Constraint::le(
            LinComb::sum([RV2, RZ2]),
            mi([V2, Z2], [Y1], [X1Bar])
                .add(&mi([Z2], [S1], [Q, S2, V2]))
                .add(&mi([V2], [S1, S2], [Q])),
        )
        .with_label("coop1-c"),
    ]);
    at_source1.union(&swap_system(&at_source1))
}

/// Equalities defining each aggregated per-layer rate as its message rate
/// plus its bin rate (the common layer aggregates both users' cooperative
/// common messages and carries no bin of its own).
pub fn aggregated_defs() -> System<RateSymbol, InfoAtom> {
    use RateSymbol::*;
    let defs: [(RateSymbol, &[RateSymbol]); 11] = [
        (RQ, &[R10c, R20c]),
        (RV1, &[R10c, P10c]),
        (RU1, &[R10n, P10n]),
        (RT1, &[R11n, P11n]),
        (RS1, &[R11c, Pp11c]),
        (RZ1, &[R11c, P11c]),
        (RV2, &[R20c, P20c]),
        (RU2, &[R20n, P20n]),
        (RT2, &[R22n, P22n]),
        (RS2, &[R22c, Pp22c]),
        (RZ2, &[R22c, P22c]),
    ];
    defs.into_iter()
        .map(|(agg, parts)| {
            let lhs = LinComb::var(agg).sub(&LinComb::sum(parts.iter().copied()));
            Constraint::eq(lhs, RhsExpr::zero()).with_label(format!("def-{agg}"))
        })
        .collect()
}

/// A documented reduced form of the full system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// No binning of the common layers against the cooperative pair
    /// (`R'_10c = R'_20c = 0`): every event defined by a wrong common-layer
    /// bin becomes impossible.
    NoVBin,
    /// No binning of user 1's new cooperative-private layer
    /// (`R'_11c = 0`): events with the old pair correct but the new layer
    /// wrong become impossible, and destination 1's system collapses to
    /// the displayed grouped form.
    NoZBin,
    /// Decode the common and old cooperative-private layers first, strip
    /// them, then jointly decode the rest.
    TwoStep,
}

impl Variant {
    /// Canonical spelling, as accepted by the parser.
    pub fn name(self) -> &'static str {
        match self {
            Variant::NoVBin => "NO_VBIN",
            Variant::NoZBin => "NO_ZBIN",
            Variant::TwoStep => "TWO_STEP",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-variant parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown binning variant `{0}` (expected NO_VBIN, NO_ZBIN, or TWO_STEP)")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "NO_VBIN" => Ok(Variant::NoVBin),
            "NO_ZBIN" => Ok(Variant::NoZBin),
            "TWO_STEP" => Ok(Variant::TwoStep),
            _ => Err(UnknownVariant(s.trim().to_string())),
        }
    }
}

/// The assembled constraint system of the superposition-and-binning
/// scheme: encoder-side constraints, per-destination error-event rows,
/// optional first-stage decoding bounds, and the aggregated-rate
/// equalities tying the row symbols to the split rates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinningSystem {
    /// Bin-pairing, known-interference binning, and cross-decoding
    /// constraints for both sources.
    pub encoder: System<RateSymbol, InfoAtom>,
    /// Definitional equalities for the aggregated per-layer rates.
    pub aggregated: System<RateSymbol, InfoAtom>,
    /// First-stage decoding bounds at destination 1 (two-step variant
    /// only; empty otherwise).
    pub first_stage1: System<RateSymbol, InfoAtom>,
    /// First-stage decoding bounds at destination 2.
    pub first_stage2: System<RateSymbol, InfoAtom>,
    /// Error-event rows in effect at destination 1.
    pub dest1_rows: Vec<ErrorEventRow>,
    /// Error-event rows in effect at destination 2.
    pub dest2_rows: Vec<ErrorEventRow>,
}

impl BinningSystem {
    /// Destination-1 rows as a constraint system.
    pub fn dest1(&self) -> System<RateSymbol, InfoAtom> {
        self.dest1_rows.iter().map(ErrorEventRow::constraint).collect()
    }

    /// Destination-2 rows as a constraint system.
    pub fn dest2(&self) -> System<RateSymbol, InfoAtom> {
        self.dest2_rows.iter().map(ErrorEventRow::constraint).collect()
    }

    /// Everything as one system: encoder, aggregated equalities, first
    /// stages, then both destinations.
    pub fn full_system(&self) -> System<RateSymbol, InfoAtom> {
        self.encoder
            .union(&self.aggregated)
            .union(&self.first_stage1)
            .union(&self.first_stage2)
            .union(&self.dest1())
            .union(&self.dest2())
    }

    /// The system with the two users' roles exchanged. An involution; on
    /// the full system it is a symmetry, on one-sided variants it moves
    /// the restriction to the other user.
    pub fn swap_users(&self) -> BinningSystem {
        BinningSystem {
            encoder: swap_system(&self.encoder),
            aggregated: swap_system(&self.aggregated),
            first_stage1: swap_system(&self.first_stage2),
            first_stage2: swap_system(&self.first_stage1),
            dest1_rows: self.dest2_rows.iter().map(ErrorEventRow::swap_users).collect(),
            dest2_rows: self.dest1_rows.iter().map(ErrorEventRow::swap_users).collect(),
        }
    }
}

/// The complete system: all encoder constraints, all 28 rows at each
/// destination, and the aggregated-rate equalities.
pub fn build_full() -> BinningSystem {
    let dest1_rows = dest1_rows_full();
    let dest2_rows: Vec<ErrorEventRow> = dest1_rows.iter().map(ErrorEventRow::swap_users).collect();
    let sys = BinningSystem {
        encoder: encoder_bc().union(&encoder_mdc()).union(&encoder_coop()),
        aggregated: aggregated_defs(),
        first_stage1: System::new(),
        first_stage2: System::new(),
        dest1_rows,
        dest2_rows,
    };
    assert_integer_coeffs(&sys);
    sys
}

/// Table rows dropped under [`Variant::NoVBin`]: every class whose
/// defining error includes a wrong common-layer bin at either user.
pub const NO_VBIN_DROPPED: [usize; 13] = [1, 2, 3, 4, 7, 10, 13, 14, 15, 16, 19, 22, 25];

/// Table rows whose events become impossible under [`Variant::NoZBin`]:
/// old cooperative-private layer correct but new layer wrong.
pub const NO_ZBIN_IMPOSSIBLE: [usize; 9] = [13, 14, 15, 16, 17, 18, 19, 20, 21];

/// The reduced system for the given variant, exactly as documented: rows
/// are dropped or regrouped and the zeroed bin rates are removed from
/// every remaining constraint.
pub fn build_variant(variant: Variant) -> BinningSystem {
    use RateSymbol::{P10c, P11c, P20c, RQ, RS1};
    let full = build_full();
    let sys = match variant {
        Variant::NoVBin => {
            let keep = |rows: &[ErrorEventRow]| -> Vec<ErrorEventRow> {
                rows.iter()
                    .filter(|r| !NO_VBIN_DROPPED.contains(&r.index))
                    .map(|r| {
                        // Surviving classes never carry a common-layer bin
                        // penalty; the zeroing is a no-op on the rows.
                        assert!(!r.penalties.contains(&P10c) && !r.penalties.contains(&P20c));
                        r.clone()
                    })
                    .collect()
            };
            BinningSystem {
                encoder: zero_vars(&full.encoder, &[P10c, P20c]),
                aggregated: zero_vars(&full.aggregated, &[P10c, P20c]),
                first_stage1: System::new(),
                first_stage2: System::new(),
                dest1_rows: keep(&full.dest1_rows),
                dest2_rows: keep(&full.dest2_rows),
            }
        }
        Variant::NoZBin => BinningSystem {
            encoder: zero_vars(&full.encoder, &[P11c]),
            aggregated: zero_vars(&full.aggregated, &[P11c]),
            first_stage1: System::new(),
            first_stage2: System::new(),
            dest1_rows: no_zbin_rows(&full.dest1_rows),
            // The restriction is one-sided; the peer decoder keeps the
            // full table (its rows carry no `R'_11c` anyway).
            dest2_rows: full.dest2_rows.clone(),
        },
        Variant::TwoStep => {
            use RvLabel::{Q, S1, Y3};
            let second_stage = |rows: &[ErrorEventRow]| -> Vec<ErrorEventRow> {
                rows.iter().filter(|r| r.index >= 13).cloned().collect()
            };
            let first_stage1 = System::from_vec(vec![
                Constraint::le(LinComb::sum([RS1]), mi([Y3], [S1], [Q])).with_label("first1-s"),
                Constraint::le(LinComb::sum([RQ, RS1]), mi([Y3], [S1, Q], []))
                    .with_label("first1-qs"),
            ]);
            BinningSystem {
                encoder: full.encoder.clone(),
                aggregated: full.aggregated.clone(),
                first_stage2: swap_system(&first_stage1),
                first_stage1,
                dest1_rows: second_stage(&full.dest1_rows),
                dest2_rows: second_stage(&full.dest2_rows),
            }
        }
    };
    assert_integer_coeffs(&sys);
    sys
}

/// Parse a variant name and build it; the error names the rejected input.
pub fn build_variant_named(name: &str) -> Result<BinningSystem, UnknownVariant> {
    Ok(build_variant(name.parse()?))
}

/// Destination-1 rows of the no-Z-binning reduced display: the grouped
/// bounds flattened to one row per bound expression, with the zeroed bin
/// rate removed from the penalties. The standalone peer-common bound
/// (`R_U2` against rows 10 and 11) is dropped: an error on that layer
/// alone is not an error for this destination. Expressions from the
/// impossible classes still appear, exactly as displayed; their rows keep
/// the original bookkeeping columns under the regrouped left-hand side.
fn no_zbin_rows(full_rows: &[ErrorEventRow]) -> Vec<ErrorEventRow> {
    use RateSymbol::{P11c, RT1, RU1, RU2, RV1, RV2, RZ1};
    let groups: [(&[RateSymbol], &[usize]); 6] = [
        (&[RV1, RV2, RU1, RT1, RU2], &[0]),
        (&[RU1, RT1, RU2], &[1, 2, 4, 5, 13, 14, 16, 17, 22, 23]),
        (&[RU1, RT1], &[3, 6, 15, 18, 24]),
        (&[RT1, RU2], &[7, 8, 19, 20, 25, 26]),
        (&[RT1], &[9, 21, 27]),
        (&[RZ1], &[12]),
    ];
    let mut out = Vec::new();
    for (lhs, indices) in groups {
        for &idx in indices {
            let mut row = full_rows[idx].clone();
            row.message_lhs = lhs.to_vec();
            row.penalties.retain(|p| *p != P11c);
            out.push(row);
        }
    }
    out
}

/// Remove the given rate symbols (pinned to zero) from every constraint.
fn zero_vars(
    sys: &System<RateSymbol, InfoAtom>,
    dead: &[RateSymbol],
) -> System<RateSymbol, InfoAtom> {
    sys.map_vars(|v| if dead.contains(v) { LinComb::zero() } else { LinComb::var(*v) })
}

/// User-swap a whole system: rate symbols, labels inside terms, and the
/// diagnostic labels of the known constraint families. Capacity atoms
/// pass through (none arise in binning systems).
fn swap_system(sys: &System<RateSymbol, InfoAtom>) -> System<RateSymbol, InfoAtom> {
    sys.iter()
        .map(|c| {
            let lhs = c.lhs.map_vars(|v| LinComb::var(v.swap_user()));
            let rhs = c.rhs.map_atoms(|a| match a {
                InfoAtom::Term(t) => RhsExpr::atom(InfoAtom::Term(t.swap_user())),
                InfoAtom::Capacity(name) => RhsExpr::atom(InfoAtom::Capacity(name.clone())),
            });
            Constraint {
                lhs,
                rel: c.rel,
                rhs,
                label: c.label.as_deref().map(swap_label),
                flag: c.flag.clone(),
            }
        })
        .collect()
}

fn swap_label(label: &str) -> String {
    for (a, b) in [
        ("E1_", "E2_"),
        ("mdc1-", "mdc2-"),
        ("zbin1", "zbin2"),
        ("coop1-", "coop2-"),
        ("first1-", "first2-"),
    ] {
        if let Some(rest) = label.strip_prefix(a) {
            return format!("{b}{rest}");
        }
        if let Some(rest) = label.strip_prefix(b) {
            return format!("{a}{rest}");
        }
    }
    if let Some(rest) = label.strip_prefix("def-") {
        if let Ok(sym) = rest.parse::<RateSymbol>() {
            return format!("def-{}", sym.swap_user());
        }
    }
    label.to_string()
}

/// Every coefficient in this system family is an integer; enforce it on
/// each constructed system.
fn assert_integer_coeffs(sys: &BinningSystem) {
    let check = |s: &System<RateSymbol, InfoAtom>| {
        for c in s.iter() {
            for (v, coeff) in c.lhs.terms() {
                assert!(coeff.is_integer(), "non-integer coefficient on {v}");
            }
            for (_, coeff) in c.rhs.terms() {
                assert!(coeff.is_integer(), "non-integer info-term coefficient");
            }
            assert!(c.rhs.constant_part().is_integer(), "non-integer constant");
        }
    };
    check(&sys.encoder);
    check(&sys.aggregated);
    check(&sys.first_stage1);
    check(&sys.first_stage2);
    check(&sys.dest1());
    check(&sys.dest2());
}
