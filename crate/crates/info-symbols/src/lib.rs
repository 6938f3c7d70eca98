//! Symbolic layer for rate systems: random-variable labels, canonical
//! conditional mutual-information terms, rate symbols, substitution maps,
//! and the curated dominance-fact registry.
//!
//! Terms are canonical by construction (bundles expanded, `EMPTY` removed,
//! conditioned labels absorbed, sides ordered), so term equality is plain
//! structural equality and expression equality is term-map equality. No
//! entropy identities are applied beyond absorption: there is no prover,
//! and every symbolic identification downstream is label-set equality.

mod registry;
mod term;

use std::fmt;
use std::str::FromStr;

use constraint_core::RhsExpr;

pub use registry::{DominanceError, DominanceRegistry, FactHandle};
pub use term::InfoTerm;

/// Random-variable labels of the cooperative interference network.
///
/// The declaration order fixes the canonical sort used everywhere labels
/// are displayed: time-sharing first, then the binning pairs, cooperative
/// common/private layers, channel inputs, and channel outputs. `X1Bar` and
/// `X2Bar` are the "everything known at a source" bundles; they never
/// survive canonicalization. `Empty` denotes the erased label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RvLabel {
    /// Time-sharing / common context.
    Q,
    /// Source 1 cooperative-private message carrier (old block).
    S1,
    /// Source 2 cooperative-private message carrier (old block).
    S2,
    /// Source 1 cooperative-private refinement (new block).
    Z1,
    /// Source 2 cooperative-private refinement (new block).
    Z2,
    /// Source 1 cooperative-common layer.
    V1,
    /// Source 2 cooperative-common layer.
    V2,
    /// Observation at source 1.
    Y1,
    /// Observation at source 2.
    Y2,
    /// Channel output at destination 1.
    Y3,
    /// Channel output at destination 2.
    Y4,
    /// Source 1 full private stack (equals the channel input here).
    T1,
    /// Source 1 non-cooperative common layer.
    U1,
    /// Source 2 full private stack.
    T2,
    /// Source 2 non-cooperative common layer.
    U2,
    /// Channel input of source 1.
    X1,
    /// Channel input of source 2.
    X2,
    /// Bundle of everything known at source 1.
    X1Bar,
    /// Bundle of everything known at source 2.
    X2Bar,
    /// The erased label; removed by canonicalization.
    Empty,
}

impl RvLabel {
    /// All concrete labels (no bundles, no `Empty`).
    pub const CONCRETE: [RvLabel; 17] = [
        RvLabel::Q,
        RvLabel::S1,
        RvLabel::S2,
        RvLabel::Z1,
        RvLabel::Z2,
        RvLabel::V1,
        RvLabel::V2,
        RvLabel::Y1,
        RvLabel::Y2,
        RvLabel::Y3,
        RvLabel::Y4,
        RvLabel::T1,
        RvLabel::U1,
        RvLabel::T2,
        RvLabel::U2,
        RvLabel::X1,
        RvLabel::X2,
    ];

    /// The bundle expansion, when this label is a bundle.
    pub fn expansion(self) -> Option<&'static [RvLabel]> {
        match self {
            RvLabel::X1Bar => Some(&[
                RvLabel::Q,
                RvLabel::S1,
                RvLabel::S2,
                RvLabel::Z1,
                RvLabel::V1,
                RvLabel::U1,
                RvLabel::T1,
                RvLabel::X1,
            ]),
            RvLabel::X2Bar => Some(&[
                RvLabel::Q,
                RvLabel::S1,
                RvLabel::S2,
                RvLabel::Z2,
                RvLabel::V2,
                RvLabel::U2,
                RvLabel::T2,
                RvLabel::X2,
            ]),
            _ => None,
        }
    }

    /// Swap the two users (and their destinations).
    pub fn swap_user(self) -> RvLabel {
        match self {
            RvLabel::Q => RvLabel::Q,
            RvLabel::S1 => RvLabel::S2,
            RvLabel::S2 => RvLabel::S1,
            RvLabel::Z1 => RvLabel::Z2,
            RvLabel::Z2 => RvLabel::Z1,
            RvLabel::V1 => RvLabel::V2,
            RvLabel::V2 => RvLabel::V1,
            RvLabel::U1 => RvLabel::U2,
            RvLabel::U2 => RvLabel::U1,
            RvLabel::T1 => RvLabel::T2,
            RvLabel::T2 => RvLabel::T1,
            RvLabel::X1 => RvLabel::X2,
            RvLabel::X2 => RvLabel::X1,
            RvLabel::Y1 => RvLabel::Y2,
            RvLabel::Y2 => RvLabel::Y1,
            RvLabel::Y3 => RvLabel::Y4,
            RvLabel::Y4 => RvLabel::Y3,
            RvLabel::X1Bar => RvLabel::X2Bar,
            RvLabel::X2Bar => RvLabel::X1Bar,
            RvLabel::Empty => RvLabel::Empty,
        }
    }

    fn name(self) -> &'static str {
        match self {
            RvLabel::Q => "Q",
            RvLabel::S1 => "S1",
            RvLabel::S2 => "S2",
            RvLabel::Z1 => "Z1",
            RvLabel::Z2 => "Z2",
            RvLabel::V1 => "V1",
            RvLabel::V2 => "V2",
            RvLabel::T1 => "T1",
            RvLabel::U1 => "U1",
            RvLabel::T2 => "T2",
            RvLabel::U2 => "U2",
            RvLabel::X1 => "X1",
            RvLabel::X2 => "X2",
            RvLabel::Y1 => "Y1",
            RvLabel::Y2 => "Y2",
            RvLabel::Y3 => "Y3",
            RvLabel::Y4 => "Y4",
            RvLabel::X1Bar => "X1bar",
            RvLabel::X2Bar => "X2bar",
            RvLabel::Empty => "EMPTY",
        }
    }
}

impl fmt::Display for RvLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-label parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown label `{0}`")]
pub struct ParseLabelError(pub String);

impl FromStr for RvLabel {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            RvLabel::Q,
            RvLabel::S1,
            RvLabel::S2,
            RvLabel::Z1,
            RvLabel::Z2,
            RvLabel::V1,
            RvLabel::V2,
            RvLabel::Y1,
            RvLabel::Y2,
            RvLabel::Y3,
            RvLabel::Y4,
            RvLabel::T1,
            RvLabel::U1,
            RvLabel::T2,
            RvLabel::U2,
            RvLabel::X1,
            RvLabel::X2,
            RvLabel::X1Bar,
            RvLabel::X2Bar,
            RvLabel::Empty,
        ];
        all.into_iter()
            .find(|l| l.name() == s.trim())
            .ok_or_else(|| ParseLabelError(s.trim().to_string()))
    }
}

/// Rate symbols of the split-rate and aggregated-rate families.
///
/// `P` marks a binning (prime) rate, `Pp` a double-prime rate. The
/// aggregated family (`RQ`, `RV1`, ...) is tied to the split family by
/// definitional equalities wherever both coexist in one system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(missing_docs)]
pub enum RateSymbol {
    R1,
    R2,
    R0,
    R10c,
    R10n,
    R11n,
    R20c,
    R20n,
    R22n,
    R11c,
    R22c,
    P10c,
    P10n,
    P11n,
    P20c,
    P20n,
    P22n,
    P11c,
    P22c,
    Pp11c,
    Pp22c,
    RQ,
    RV1,
    RU1,
    RT1,
    RS1,
    RZ1,
    RV2,
    RU2,
    RT2,
    RS2,
    RZ2,
}

impl RateSymbol {
    /// Every symbol, in declaration order.
    pub const ALL: [RateSymbol; 32] = [
        RateSymbol::R1,
        RateSymbol::R2,
        RateSymbol::R0,
        RateSymbol::R10c,
        RateSymbol::R10n,
        RateSymbol::R11n,
        RateSymbol::R20c,
        RateSymbol::R20n,
        RateSymbol::R22n,
        RateSymbol::R11c,
        RateSymbol::R22c,
        RateSymbol::P10c,
        RateSymbol::P10n,
        RateSymbol::P11n,
        RateSymbol::P20c,
        RateSymbol::P20n,
        RateSymbol::P22n,
        RateSymbol::P11c,
        RateSymbol::P22c,
        RateSymbol::Pp11c,
        RateSymbol::Pp22c,
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

    /// Swap the two users.
    pub fn swap_user(self) -> RateSymbol {
        use RateSymbol::*;
        match self {
            R1 => R2,
            R2 => R1,
            R0 => R0,
            R10c => R20c,
            R10n => R20n,
            R11n => R22n,
            R20c => R10c,
            R20n => R10n,
            R22n => R11n,
            R11c => R22c,
            R22c => R11c,
            P10c => P20c,
            P10n => P20n,
            P11n => P22n,
            P20c => P10c,
            P20n => P10n,
            P22n => P11n,
            P11c => P22c,
            P22c => P11c,
            Pp11c => Pp22c,
            Pp22c => Pp11c,
            RQ => RQ,
            RV1 => RV2,
            RU1 => RU2,
            RT1 => RT2,
            RS1 => RS2,
            RZ1 => RZ2,
            RV2 => RV1,
            RU2 => RU1,
            RT2 => RT1,
            RS2 => RS1,
            RZ2 => RZ1,
        }
    }

    fn name(self) -> &'static str {
        use RateSymbol::*;
        match self {
            R1 => "R1",
            R2 => "R2",
            R0 => "R0",
            R10c => "R_10c",
            R10n => "R_10n",
            R11n => "R_11n",
            R20c => "R_20c",
            R20n => "R_20n",
            R22n => "R_22n",
            R11c => "R_11c",
            R22c => "R_22c",
            P10c => "R'_10c",
            P10n => "R'_10n",
            P11n => "R'_11n",
            P20c => "R'_20c",
            P20n => "R'_20n",
            P22n => "R'_22n",
            P11c => "R'_11c",
            P22c => "R'_22c",
            Pp11c => "R''_11c",
            Pp22c => "R''_22c",
            RQ => "R_Q",
            RV1 => "R_V1",
            RU1 => "R_U1",
            RT1 => "R_T1",
            RS1 => "R_S1",
            RZ1 => "R_Z1",
            RV2 => "R_V2",
            RU2 => "R_U2",
            RT2 => "R_T2",
            RS2 => "R_S2",
            RZ2 => "R_Z2",
        }
    }
}

impl fmt::Display for RateSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-rate-symbol parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown rate symbol `{0}`")]
pub struct ParseRateError(pub String);

impl FromStr for RateSymbol {
    type Err = ParseRateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RateSymbol::ALL
            .into_iter()
            .find(|r| r.name() == s.trim())
            .ok_or_else(|| ParseRateError(s.trim().to_string()))
    }
}

/// An opaque rhs atom: a canonical information term, or a named external
/// capacity (used when a cooperation term is pinned to a conferencing-link
/// capacity).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfoAtom {
    /// A conditional mutual-information term.
    Term(InfoTerm),
    /// A named capacity constant.
    Capacity(String),
}

impl fmt::Display for InfoAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoAtom::Term(t) => t.fmt(f),
            InfoAtom::Capacity(name) => f.write_str(name),
        }
    }
}

/// Unparseable atom text.
#[derive(Debug, Clone, thiserror::Error)]
#[error("cannot parse info atom `{0}`")]
pub struct ParseAtomError(pub String);

impl FromStr for InfoAtom {
    type Err = ParseAtomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with("I(") {
            return s
                .parse::<InfoTerm>()
                .map(InfoAtom::Term)
                .map_err(|_| ParseAtomError(s.to_string()));
        }
        if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Ok(InfoAtom::Capacity(s.to_string()));
        }
        Err(ParseAtomError(s.to_string()))
    }
}

/// A rational combination of information atoms plus a rational constant.
pub type InfoExpr = RhsExpr<InfoAtom>;

/// The expression `I(left ∧ right | cond)`: a single-term [`InfoExpr`], or
/// zero when the term collapses.
pub fn mi(
    left: impl IntoIterator<Item = RvLabel>,
    right: impl IntoIterator<Item = RvLabel>,
    cond: impl IntoIterator<Item = RvLabel>,
) -> InfoExpr {
    match InfoTerm::new(left, right, cond) {
        Some(t) => RhsExpr::atom(InfoAtom::Term(t)),
        None => RhsExpr::zero(),
    }
}

/// A named capacity constant as an expression.
pub fn cap(name: &str) -> InfoExpr {
    RhsExpr::atom(InfoAtom::Capacity(name.to_string()))
}

/// Apply a label substitution to an expression: each term is remapped and
/// re-canonicalized; collapsed terms vanish; capacities pass through.
pub fn substitute_expr(
    e: &InfoExpr,
    sigma: &dyn Fn(RvLabel) -> RvLabel,
) -> InfoExpr {
    let mut out = RhsExpr::constant(e.constant_part().clone());
    for (atom, coeff) in e.terms() {
        match atom {
            InfoAtom::Term(t) => {
                if let Some(mapped) = t.substitute(sigma) {
                    out = out.add(&RhsExpr::atom_scaled(InfoAtom::Term(mapped), coeff.clone()));
                }
            }
            InfoAtom::Capacity(name) => {
                out = out
                    .add(&RhsExpr::atom_scaled(InfoAtom::Capacity(name.clone()), coeff.clone()));
            }
        }
    }
    out
}

/// Swap the two users throughout an expression.
pub fn swap_expr(e: &InfoExpr) -> InfoExpr {
    substitute_expr(e, &|l| l.swap_user())
}
