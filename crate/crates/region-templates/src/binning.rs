//! Folding the binning scheme's bin rates into its decoding bounds.
//!
//! The assembled binning system constrains message rates, bin rates, and
//! aggregated per-layer rates. The known-interference binning constraints
//! are tight at the optimum, so they are imposed as equalities and used
//! to substitute the bin rates away; the aggregated-rate definitions then
//! eliminate the per-layer rates, and the bin-pairing rates are removed
//! by sign pairing against the pairing constraint, which stays an
//! inequality. What remains is a system over the split message rates
//! alone, whose projection onto the total rates uses only the five
//! families R1, R2, R1+R2, 2R1+R2, R1+2R2.
//!
//! Two pinnings specialize the scheme before elimination: collapsing the
//! cooperative-private layers reproduces the superposition scheme's
//! decoders, and collapsing everything except one cooperative-private
//! layer per user leaves a two-receiver broadcast core.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use binning_core::{
    aggregated_defs, dest1_rows_full, encoder_bc, encoder_coop, encoder_mdc, slot_labels,
    Dest, ErrorEventRow, Slot,
};
use constraint_core::prune::drop_redundant_symbolic_extended;
use constraint_core::text::render_constraint;
use constraint_core::{rat, Constraint, FactSet, FmError, FmOptions, LinComb, Relation, RhsExpr};
use info_symbols::{mi, InfoAtom, InfoTerm, RateSymbol, RvLabel};

use crate::{build, substitute_system, RateSystem, RegionTemplateId};

/// How the binning scheme is specialized before bin-rate elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BinningPinning {
    /// No specialization: the full scheme.
    Full,
    /// Collapse the cooperative-private layers onto the common layer; the
    /// scheme degenerates to the superposition scheme.
    SuperpositionDegenerate,
    /// Collapse every layer except the cooperative-private pair; the
    /// scheme degenerates to a two-receiver broadcast core with paired
    /// bins.
    BroadcastPair,
}

impl BinningPinning {
    /// Every pinning, in listing order.
    pub const ALL: [BinningPinning; 3] = [
        BinningPinning::Full,
        BinningPinning::SuperpositionDegenerate,
        BinningPinning::BroadcastPair,
    ];

    /// Canonical spelling, as accepted by the parser.
    pub fn name(self) -> &'static str {
        match self {
            BinningPinning::Full => "FULL",
            BinningPinning::SuperpositionDegenerate => "SUPERPOSITION_DEGENERATE",
            BinningPinning::BroadcastPair => "BROADCAST_PAIR",
        }
    }

    /// One-line description for listings.
    pub fn describe(self) -> &'static str {
        match self {
            BinningPinning::Full => "the full binning scheme",
            BinningPinning::SuperpositionDegenerate => {
                "cooperative-private layers collapsed: the superposition scheme"
            }
            BinningPinning::BroadcastPair => {
                "all but the cooperative-private pair collapsed: a broadcast core"
            }
        }
    }
}

impl fmt::Display for BinningPinning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-pinning parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown binning pinning `{0}`")]
pub struct UnknownPinning(pub String);

impl FromStr for BinningPinning {
    type Err = UnknownPinning;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        BinningPinning::ALL
            .into_iter()
            .find(|p| p.name() == wanted)
            .ok_or_else(|| UnknownPinning(s.trim().to_string()))
    }
}

/// Failure modes of bin-rate elimination.
#[derive(Debug, thiserror::Error)]
pub enum BinningElimError {
    /// Fourier-Motzkin exceeded its row cap.
    #[error(transparent)]
    Fm(#[from] FmError),
    /// Elimination exposed an infeasible row: some binning rate would
    /// have to be negative.
    #[error("required binning rate is negative: {0}")]
    NegativeBinningRate(String),
    /// A projected bound uses a rate combination outside the five
    /// families.
    #[error("unexpected rate family after elimination: {0}")]
    UnexpectedFamily(String),
}

const PRIMES: [RateSymbol; 8] = [
    RateSymbol::P10c,
    RateSymbol::P10n,
    RateSymbol::P11n,
    RateSymbol::P11c,
    RateSymbol::P20c,
    RateSymbol::P20n,
    RateSymbol::P22n,
    RateSymbol::P22c,
];

const AGGREGATES: [RateSymbol; 11] = [
    RateSymbol::RQ,
    RateSymbol::RV1,
    RateSymbol::RU1,
    RateSymbol::RT1,
    RateSymbol::RS1,
    RateSymbol::RZ1,
    RateSymbol::RV2,
    RateSymbol::RU2,
    RateSymbol::RT2,
    RateSymbol::RS2,
    RateSymbol::RZ2,
];

const PAIR_BINS: [RateSymbol; 2] = [RateSymbol::Pp11c, RateSymbol::Pp22c];

const SPLITS: [RateSymbol; 8] = [
    RateSymbol::R10c,
    RateSymbol::R10n,
    RateSymbol::R11n,
    RateSymbol::R11c,
    RateSymbol::R20c,
    RateSymbol::R20n,
    RateSymbol::R22n,
    RateSymbol::R22c,
];

const USER1_SPLITS: [RateSymbol; 4] =
    [RateSymbol::R10c, RateSymbol::R10n, RateSymbol::R11n, RateSymbol::R11c];

const FAMILY_CANDIDATES: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)];

/// The assembled constraint system for a pinning, before any elimination:
/// pairing constraint, known-interference binning as equalities,
/// cross-decoding constraints, aggregated-rate definitions, and the
/// error-event rows that remain meaningful under the pinning.
pub fn assemble(pin: BinningPinning) -> RateSystem {
    match pin {
        BinningPinning::Full => encoder_bc()
            .union(&as_equalities(&encoder_mdc()))
            .union(&encoder_coop())
            .union(&aggregated_defs())
            .union(&live_dest_system(Dest::One, &slot_labels(Dest::One)))
            .union(&live_dest_system(Dest::Two, &slot_labels(Dest::Two))),
        BinningPinning::SuperpositionDegenerate => {
            let base = encoder_bc()
                .union(&as_equalities(&encoder_mdc()))
                .union(&encoder_coop())
                .union(&aggregated_defs())
                .union(&live_dest_system(Dest::One, &degenerate_live(Dest::One)))
                .union(&live_dest_system(Dest::Two, &degenerate_live(Dest::Two)));
            let collapsed = substitute_system(&base, &degenerate_sigma);
            drop_cross_source_terms(&collapsed)
        }
        BinningPinning::BroadcastPair => {
            // The cross-decoding constraints bound the layers decoded at
            // the other source, all of which collapse here, so they are
            // omitted rather than collapsed into vacuity.
            let base = encoder_bc()
                .union(&as_equalities(&encoder_mdc()))
                .union(&aggregated_defs())
                .union(&live_dest_system(Dest::One, &broadcast_live(Dest::One)))
                .union(&live_dest_system(Dest::Two, &broadcast_live(Dest::Two)));
            let collapsed = substitute_system(&base, &broadcast_sigma);
            zero_rates(
                &collapsed,
                &[
                    RateSymbol::R10c,
                    RateSymbol::R10n,
                    RateSymbol::R11n,
                    RateSymbol::R20c,
                    RateSymbol::R20n,
                    RateSymbol::R22n,
                ],
            )
        }
    }
}

/// Substitute the bin rates away and reduce to the split message rates.
///
/// The known-interference binning constraints are imposed as equalities
/// and eliminate the per-layer bin rates; the aggregated-rate definitions
/// eliminate the per-layer totals; the bin-pairing rates are removed by
/// sign pairing against the pairing inequality (kept an inequality, so
/// both pairing rates remain free within it); and the survivors are
/// pruned. For [`BinningPinning::BroadcastPair`] the pairing rates and
/// the pairing constraint are retained, since the paired bins are the
/// substance of that core. For the other pinnings the projection onto
/// total rates is checked to use only the five rate families.
pub fn binning_equality_eliminate(pin: BinningPinning) -> Result<RateSystem, BinningElimError> {
    let reduced = eliminated(pin)?;
    if pin != BinningPinning::BroadcastPair {
        let families = project_families(&reduced)?;
        let want: BTreeSet<(i64, i64)> = FAMILY_CANDIDATES.into_iter().collect();
        if families != want {
            return Err(BinningElimError::UnexpectedFamily(format!(
                "families {families:?}, want {want:?}"
            )));
        }
    }
    Ok(reduced)
}

/// The distinct total-rate families of the projected region for a
/// pinning, as coprime (R1, R2) coefficient pairs.
pub fn rate_bound_families(
    pin: BinningPinning,
) -> Result<BTreeSet<(i64, i64)>, BinningElimError> {
    let reduced = eliminated(pin)?;
    project_families(&reduced)
}

/// Stages shared by every pinning: bin-rate substitution, aggregated-rate
/// substitution, pair-bin sign pairing (skipped when the pair is
/// retained), and one specialization-specific collapse, then pruning.
fn eliminated(pin: BinningPinning) -> Result<RateSystem, BinningElimError> {
    let sys = assemble(pin);
    eprintln!("[trace] assembled {pin}: {} rows", sys.len());
    let mut work = eliminate_binned_rates(&sys)?;
    eprintln!("[trace] after primes+aggregates: {} rows", work.len());
    if pin != BinningPinning::BroadcastPair {
        work = work.with_nonneg(PAIR_BINS);
        work = constraint_core::eliminate(&work, &PAIR_BINS, FmOptions::default())?;
        check_feasible(&work)?;
        eprintln!("[trace] after pair bins: {} rows", work.len());
    }
    if pin == BinningPinning::SuperpositionDegenerate {
        // The collapsed cooperative-private split rates are forced to
        // zero by the collapsed cross-decoding constraints.
        let coop_commons = [RateSymbol::R11c, RateSymbol::R22c];
        work = work.with_nonneg(coop_commons);
        work = constraint_core::eliminate(&work, &coop_commons, FmOptions::default())?;
        check_feasible(&work)?;
    }
    eprintln!("[trace] before final prune: {} rows", work.len());
    let pruned = drop_redundant_symbolic_extended(&work, &FactSet::new());
    eprintln!("[trace] after final prune: {} rows", pruned.len());
    Ok(pruned.strip_nonneg().normalize())
}

/// Substitute away the per-layer bin rates and the aggregated per-layer
/// rates using their defining equalities, checking feasibility after
/// each pass. Exposed so doctored systems can exercise the infeasibility
/// report.
pub fn eliminate_binned_rates(sys: &RateSystem) -> Result<RateSystem, BinningElimError> {
    let work = constraint_core::eliminate(sys, &PRIMES, FmOptions::default())?;
    check_feasible(&work)?;
    let work = constraint_core::eliminate(&work, &AGGREGATES, FmOptions::default())?;
    check_feasible(&work)?;
    Ok(work)
}

/// The superposition-scheme system the degenerate pinning must reproduce.
pub fn degenerate_expected() -> RateSystem {
    build(RegionTemplateId::SupCoop1)
        .union(&build(RegionTemplateId::SupDec1))
        .union(&build(RegionTemplateId::SupCoop2))
        .union(&build(RegionTemplateId::SupDec2))
}

/// The paired-bin broadcast core the broadcast pinning must reproduce:
/// per-user bounds on the surviving layer with and without the common
/// time-sharing part, plus the retained pairing constraint.
pub fn marton_expected() -> RateSystem {
    use RateSymbol::{Pp11c, Pp22c, R11c, R22c};
    use RvLabel::{Q, S1, S2, Y3, Y4};
    constraint_core::System::from_vec(vec![
        Constraint::le(LinComb::sum([R11c, Pp11c]), mi([Y3], [S1, Q], [])),
        Constraint::le(LinComb::sum([R11c, Pp11c]), mi([Y3], [S1], [Q])),
        Constraint::le(LinComb::sum([R22c, Pp22c]), mi([Y4], [S2, Q], [])),
        Constraint::le(LinComb::sum([R22c, Pp22c]), mi([Y4], [S2], [Q])),
        Constraint::ge(LinComb::sum([Pp11c, Pp22c]), mi([S1], [S2], [Q])),
    ])
}

fn as_equalities(sys: &RateSystem) -> RateSystem {
    sys.iter()
        .map(|c| {
            let mut eq = Constraint::eq(c.lhs.clone(), c.rhs.clone());
            eq.label = c.label.clone();
            eq.flag = c.flag.clone();
            eq
        })
        .collect()
}

fn dest_rows(dest: Dest) -> Vec<ErrorEventRow> {
    match dest {
        Dest::One => dest1_rows_full(),
        Dest::Two => dest1_rows_full().into_iter().map(|r| r.swap_users()).collect(),
    }
}

/// Error-event rows that stay meaningful when only `live` layers carry
/// fresh content: a collapsed layer is wrong exactly when the common
/// layer is, so rows marking one wrong on its own describe impossible
/// events. The all-wrong row survives as the common-layer error.
fn live_dest_system(dest: Dest, live: &[RvLabel]) -> RateSystem {
    dest_rows(dest)
        .iter()
        .filter(|r| row_live(r, live))
        .map(ErrorEventRow::constraint)
        .collect()
}

fn row_live(row: &ErrorEventRow, live: &[RvLabel]) -> bool {
    if row.pattern[0] == Slot::Wrong {
        return true;
    }
    slot_labels(row.dest)
        .iter()
        .zip(row.pattern.iter())
        .all(|(l, s)| live.contains(l) || *s != Slot::Wrong)
}

fn degenerate_live(dest: Dest) -> Vec<RvLabel> {
    let base = [RvLabel::Q, RvLabel::U1, RvLabel::T1, RvLabel::U2];
    match dest {
        Dest::One => base.to_vec(),
        Dest::Two => base.iter().map(|l| l.swap_user()).collect(),
    }
}

fn broadcast_live(dest: Dest) -> Vec<RvLabel> {
    let base = [RvLabel::Q, RvLabel::S1];
    match dest {
        Dest::One => base.to_vec(),
        Dest::Two => base.iter().map(|l| l.swap_user()).collect(),
    }
}

fn degenerate_sigma(l: RvLabel) -> RvLabel {
    match l {
        RvLabel::S1 | RvLabel::Z1 | RvLabel::S2 | RvLabel::Z2 => RvLabel::Q,
        other => other,
    }
}

fn broadcast_sigma(l: RvLabel) -> RvLabel {
    match l {
        RvLabel::V1
        | RvLabel::U1
        | RvLabel::T1
        | RvLabel::Z1
        | RvLabel::V2
        | RvLabel::U2
        | RvLabel::T2
        | RvLabel::Z2 => RvLabel::Q,
        other => other,
    }
}

fn zero_rates(sys: &RateSystem, rates: &[RateSymbol]) -> RateSystem {
    sys.map_vars(|v| if rates.contains(v) { LinComb::zero() } else { LinComb::var(*v) })
}

/// Drop information terms between the two non-cooperative stacks given
/// the common layer: with the cooperative-private layers collapsed, the
/// stacks are conditionally independent given it, so these terms are
/// identically zero.
fn drop_cross_source_terms(sys: &RateSystem) -> RateSystem {
    sys.map_atoms(|a| match a {
        InfoAtom::Term(t) if is_cross_source(t) => RhsExpr::zero(),
        other => RhsExpr::atom(other.clone()),
    })
}

fn is_cross_source(t: &InfoTerm) -> bool {
    use RvLabel::{Q, T1, T2, U1, U2, V1, V2, X1, X2};
    let stack1: BTreeSet<RvLabel> = [V1, U1, T1, X1].into_iter().collect();
    let stack2: BTreeSet<RvLabel> = [V2, U2, T2, X2].into_iter().collect();
    if t.left().is_empty() || t.right().is_empty() {
        return false;
    }
    let split = (t.left().is_subset(&stack1) && t.right().is_subset(&stack2))
        || (t.left().is_subset(&stack2) && t.right().is_subset(&stack1));
    split
        && t.cond().contains(&Q)
        && t.cond().iter().all(|l| *l == Q || stack1.contains(l) || stack2.contains(l))
}

/// Report rows of the form `0 <= negative`: elimination has forced some
/// required binning rate below zero.
fn check_feasible(sys: &RateSystem) -> Result<(), BinningElimError> {
    for c in sys.iter() {
        if c.rel == Relation::Le
            && c.lhs.is_empty()
            && !c.rhs.is_zero()
            && c.rhs.neg().is_manifestly_nonneg()
        {
            return Err(BinningElimError::NegativeBinningRate(render_constraint(c)));
        }
    }
    Ok(())
}

/// Project a split-rate system onto the total rates and classify every
/// surviving bound's left-hand side into a coprime (R1, R2) family.
fn project_families(sys: &RateSystem) -> Result<BTreeSet<(i64, i64)>, BinningElimError> {
    let vars = sys.all_vars();
    let present: Vec<RateSymbol> =
        SPLITS.iter().copied().filter(|s| vars.contains(s)).collect();
    let (user1, user2): (Vec<RateSymbol>, Vec<RateSymbol>) =
        present.iter().partition(|s| USER1_SPLITS.contains(s));
    let mut work = sys.clone();
    work.push(
        Constraint::eq(
            LinComb::var(RateSymbol::R1).sub(&LinComb::sum(user1.iter().copied())),
            RhsExpr::zero(),
        )
        .with_label("family-def-R1"),
    );
    work.push(
        Constraint::eq(
            LinComb::var(RateSymbol::R2).sub(&LinComb::sum(user2.iter().copied())),
            RhsExpr::zero(),
        )
        .with_label("family-def-R2"),
    );
    let mut work = work.with_nonneg(
        present.iter().copied().chain([RateSymbol::R1, RateSymbol::R2]),
    );
    let mut remaining = present;
    while !remaining.is_empty() {
        let victim = pick_victim(&work, &remaining);
        eprintln!("[trace] eliminating {victim}: {} rows", work.len());
        work = constraint_core::eliminate(&work, &[victim], FmOptions::default())?;
        eprintln!("[trace]   after fm: {} rows", work.len());
        work = drop_redundant_symbolic_extended(&work, &FactSet::new());
        eprintln!("[trace]   after prune: {} rows", work.len());
        remaining.retain(|v| *v != victim);
    }
    let work = work.strip_nonneg().normalize();
    let mut families = BTreeSet::new();
    for c in work.iter() {
        if c.lhs.is_empty() {
            continue;
        }
        match classify_family(&c.lhs) {
            Some(f) => {
                families.insert(f);
            }
            None => {
                return Err(BinningElimError::UnexpectedFamily(render_constraint(c)));
            }
        }
    }
    Ok(families)
}

/// Next split to eliminate: one with a defining equality if any remains,
/// otherwise the one with the fewest sign pairings.
fn pick_victim(work: &RateSystem, remaining: &[RateSymbol]) -> RateSymbol {
    let zero = rat(0);
    for &v in remaining {
        let in_eq = work
            .iter()
            .any(|c| c.rel == Relation::Eq && c.lhs.coeff(&v) != zero);
        if in_eq {
            return v;
        }
    }
    remaining
        .iter()
        .copied()
        .min_by_key(|v| {
            let pos = work.iter().filter(|c| c.lhs.coeff(v) > zero).count();
            let neg = work.iter().filter(|c| c.lhs.coeff(v) < zero).count();
            pos * neg
        })
        .expect("remaining is nonempty")
}

fn classify_family(lhs: &LinComb<RateSymbol>) -> Option<(i64, i64)> {
    if lhs.vars().any(|v| *v != RateSymbol::R1 && *v != RateSymbol::R2) {
        return None;
    }
    let c1 = lhs.coeff(&RateSymbol::R1);
    let c2 = lhs.coeff(&RateSymbol::R2);
    for (a, b) in FAMILY_CANDIDATES {
        let scale = if a != 0 {
            c1.clone() / rat(a)
        } else {
            c2.clone() / rat(b)
        };
        if scale > rat(0) && c1 == rat(a) * scale.clone() && c2 == rat(b) * scale {
            return Some((a, b));
        }
    }
    None
}
