//! The literal error-event table for joint decoding at a destination.
//!
//! Each row records one class of error events for the eight-message joint
//! decoder: which message layers are wrong (`1`), correct (`0`), or
//! irrelevant (`*`); how many raw events the class covers; the set of
//! layers known correct; the displayed rate sum it bounds; the bin-rate
//! penalties displayed inside the bound; the decoded-signal term of the
//! bound; and the mutual-information corrections subtracted from it.
//!
//! Rows are stored verbatim as data, not re-derived from an error-event
//! enumeration: the table itself is the contract, and tests check its
//! internal bookkeeping (multiplicities, correct-set/pattern agreement,
//! complement structure of the decoded-signal terms) rather than
//! regenerate it.

use constraint_core::{Constraint, LinComb, RhsExpr};
use info_symbols::{InfoAtom, InfoExpr, InfoTerm, RateSymbol, RvLabel};

use crate::{delta_for, Dest};

/// Decode-slot order of the pattern column for a destination-1 row:
/// the common layer, then the own-user stack, the cooperative-private
/// pair, and the peer layers decoded alongside.
pub const SLOT_LABELS: [RvLabel; 8] = [
    RvLabel::Q,
    RvLabel::V1,
    RvLabel::U1,
    RvLabel::T1,
    RvLabel::S1,
    RvLabel::Z1,
    RvLabel::V2,
    RvLabel::U2,
];

/// Slot labels for a row at the given destination (user-swapped for
/// destination 2).
pub fn slot_labels(dest: Dest) -> [RvLabel; 8] {
    match dest {
        Dest::One => SLOT_LABELS,
        Dest::Two => SLOT_LABELS.map(RvLabel::swap_user),
    }
}

/// State of one decoded layer within an error-event class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// The layer is decoded correctly in every event of the class.
    Correct,
    /// The layer is decoded wrongly in every event of the class.
    Wrong,
    /// The layer's state does not affect the class.
    Any,
}

/// One row of the error-event table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorEventRow {
    /// Row index, 0 through 27.
    pub index: usize,
    /// Destination whose decoder the row constrains.
    pub dest: Dest,
    /// Layer states in [`slot_labels`] order.
    pub pattern: [Slot; 8],
    /// Number of raw error events the class covers.
    pub multiplicity: u64,
    /// Layers known correct in this class, in table order.
    pub correct_set: Vec<RvLabel>,
    /// Aggregated rates on the displayed left-hand side.
    pub message_lhs: Vec<RateSymbol>,
    /// Bin rates displayed as negative terms inside the bound; in the
    /// assembled constraint they move to the left-hand side.
    pub penalties: Vec<RateSymbol>,
    /// The decoded-signal mutual-information term of the bound.
    pub main: InfoTerm,
    /// Correction terms subtracted from the bound, as displayed.
    pub displayed_correction: Vec<InfoTerm>,
    /// Correction terms as the step-by-step derivation produces them.
    /// Differs from the displayed form only where the source disagrees
    /// with itself; see [`crate::discrepancies`].
    pub derived_correction: Vec<InfoTerm>,
}

impl ErrorEventRow {
    /// Number of `*` slots; the multiplicity column equals 2 to this power.
    pub fn wildcards(&self) -> u32 {
        self.pattern.iter().filter(|s| **s == Slot::Any).count() as u32
    }

    /// The info-expression bound on the row's rate sum: decoded-signal
    /// term, plus the joint-typicality credit for this destination, minus
    /// the displayed corrections. Bin-rate penalties are not part of this
    /// expression; they are rate symbols and live on the constraint's
    /// left-hand side.
    pub fn bound(&self) -> InfoExpr {
        let mut e = RhsExpr::atom(InfoAtom::Term(self.main.clone())).add(&delta_for(self.dest));
        for t in &self.displayed_correction {
            e = e.sub(&RhsExpr::atom(InfoAtom::Term(t.clone())));
        }
        e
    }

    /// The row as a constraint: message rates plus bin-rate penalties on
    /// the left, [`ErrorEventRow::bound`] on the right.
    pub fn constraint(&self) -> Constraint<RateSymbol, InfoAtom> {
        let lhs = LinComb::sum(self.message_lhs.iter().chain(&self.penalties).copied());
        Constraint::le(lhs, self.bound()).with_label(format!("E{}_{}", self.dest.index(), self.index))
    }

    /// The same row for the other destination: every label and rate symbol
    /// user-swapped, pattern and bookkeeping unchanged.
    pub fn swap_users(&self) -> ErrorEventRow {
        ErrorEventRow {
            index: self.index,
            dest: self.dest.swap(),
            pattern: self.pattern,
            multiplicity: self.multiplicity,
            correct_set: self.correct_set.iter().map(|l| l.swap_user()).collect(),
            message_lhs: self.message_lhs.iter().map(|r| r.swap_user()).collect(),
            penalties: self.penalties.iter().map(|r| r.swap_user()).collect(),
            main: self.main.swap_user(),
            displayed_correction: self.displayed_correction.iter().map(InfoTerm::swap_user).collect(),
            derived_correction: self.derived_correction.iter().map(InfoTerm::swap_user).collect(),
        }
    }
}

fn parse_pattern(s: &str) -> [Slot; 8] {
    let mut out = [Slot::Any; 8];
    assert_eq!(s.len(), 8, "pattern `{s}` must have 8 slots");
    for (i, ch) in s.chars().enumerate() {
        out[i] = match ch {
            '0' => Slot::Correct,
            '1' => Slot::Wrong,
            '*' => Slot::Any,
            _ => panic!("bad pattern char `{ch}`"),
        };
    }
    out
}

fn t(left: &[RvLabel], right: &[RvLabel], cond: &[RvLabel]) -> InfoTerm {
    InfoTerm::new(left.iter().copied(), right.iter().copied(), cond.iter().copied())
        .expect("correction terms never collapse")
}

#[allow(clippy::too_many_arguments)]
fn row(
    index: usize,
    pattern: &str,
    multiplicity: u64,
    correct: &[RvLabel],
    lhs: &[RateSymbol],
    penalties: &[RateSymbol],
    main_right: &[RvLabel],
    displayed: Vec<InfoTerm>,
    derived: Option<Vec<InfoTerm>>,
) -> ErrorEventRow {
    let main = InfoTerm::new(
        [RvLabel::Y3],
        main_right.iter().copied(),
        correct.iter().copied(),
    )
    .expect("decoded-signal terms never collapse");
    let derived_correction = derived.unwrap_or_else(|| displayed.clone());
    ErrorEventRow {
        index,
        dest: Dest::One,
        pattern: parse_pattern(pattern),
        multiplicity,
        correct_set: correct.to_vec(),
        message_lhs: lhs.to_vec(),
        penalties: penalties.to_vec(),
        main,
        displayed_correction: displayed,
        derived_correction,
    }
}

/// The full 28-row table for destination 1, in index order.
pub fn dest1_rows_full() -> Vec<ErrorEventRow> {
    use RateSymbol::{P10c, P11c, P20c, Pp11c, RT1, RU1, RU2, RV1, RV2, RZ1};
    use RvLabel::{Q, S1, T1, U1, U2, V1, V2, Z1};

    // Slot order: [q, v1, u1, t1, s1, z1, v2, u2].
    vec![
        row(
            0,
            "1*******",
            128,
            &[],
            &[RU1, RT1, RZ1, RU2, RV1, RV2],
            &[Pp11c],
            &[Q, V1, U1, T1, S1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            1,
            "01**1*1*",
            16,
            &[Q],
            &[RU1, RT1, RZ1, RU2],
            &[P10c, Pp11c, P20c],
            &[V1, U1, T1, S1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            2,
            "01**1*01",
            8,
            &[Q, V2],
            &[RU1, RT1, RZ1, RU2],
            &[P10c, Pp11c],
            &[V1, U1, T1, S1, Z1, U2],
            vec![],
            None,
        ),
        row(
            3,
            "01**1*00",
            8,
            &[Q, V2, U2],
            &[RU1, RT1, RZ1],
            &[P10c, Pp11c],
            &[V1, U1, T1, S1, Z1],
            vec![],
            None,
        ),
        row(
            4,
            "001*1*1*",
            8,
            &[Q, V1],
            &[RU1, RT1, RZ1, RU2],
            &[Pp11c, P20c],
            &[U1, T1, S1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            5,
            "001*1*01",
            4,
            &[Q, V2, V1],
            &[RU1, RT1, RZ1, RU2],
            &[Pp11c],
            &[U1, T1, S1, Z1, U2],
            vec![t(&[V1], &[V2], &[Q])],
            None,
        ),
        row(
            6,
            "001*1*00",
            4,
            &[Q, V2, U2, V1],
            &[RU1, RT1, RZ1],
            &[Pp11c],
            &[U1, T1, S1, Z1],
            vec![t(&[V1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            7,
            "00011*1*",
            4,
            &[Q, V1, U1],
            &[RT1, RZ1, RU2],
            &[Pp11c, P20c],
            &[T1, S1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            8,
            "00011*01",
            2,
            &[Q, V2, V1, U1],
            &[RT1, RZ1, RU2],
            &[Pp11c],
            &[T1, S1, Z1, U2],
            vec![t(&[V1, U1], &[V2], &[Q])],
            None,
        ),
        row(
            9,
            "00011*00",
            2,
            &[Q, V2, U2, V1, U1],
            &[RT1, RZ1],
            &[Pp11c],
            &[T1, S1, Z1],
            vec![t(&[V1, U1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            10,
            "00001*1*",
            4,
            &[Q, V1, U1, T1],
            &[RZ1, RU2],
            &[Pp11c, P20c],
            &[S1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            11,
            "00001*01",
            2,
            &[Q, V2, V1, U1, T1],
            &[RZ1, RU2],
            &[Pp11c],
            &[S1, Z1, U2],
            vec![t(&[V1, U1, T1], &[V2], &[Q])],
            None,
        ),
        row(
            12,
            "00001*00",
            2,
            &[Q, V2, U2, V1, U1, T1],
            &[RZ1],
            &[Pp11c],
            &[S1, Z1],
            vec![t(&[V1, U1, T1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            13,
            "01**0*1*",
            16,
            &[Q, S1],
            &[RU1, RT1, RU2],
            &[P10c, P11c, P20c],
            &[V1, U1, T1, Z1, V2, U2],
            vec![],
            None,
        ),
        row(
            14,
            "01**0*01",
            8,
            &[Q, S1, V2],
            &[RU1, RT1, RU2],
            &[P10c, P11c],
            &[V1, U1, T1, Z1, U2],
            vec![t(&[S1], &[V2], &[Q])],
            None,
        ),
        row(
            15,
            "01**0*00",
            8,
            &[Q, S1, V2, U2],
            &[RU1, RT1],
            &[P10c, P11c],
            &[V1, U1, T1, Z1],
            vec![t(&[S1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            16,
            "001*011*",
            4,
            &[Q, S1, V1],
            &[RU1, RT1, RU2],
            &[P11c, P20c],
            &[U1, T1, Z1, V2, U2],
            vec![t(&[S1], &[V1], &[Q])],
            None,
        ),
        row(
            17,
            "001*0101",
            2,
            &[Q, S1, V2, V1],
            &[RU1, RT1, RU2],
            &[P11c],
            &[U1, T1, Z1, U2],
            vec![t(&[S1], &[V1], &[Q]), t(&[S1, V1], &[V2], &[Q])],
            None,
        ),
        row(
            18,
            "001*0100",
            2,
            &[Q, S1, V2, U2, V1],
            &[RU1, RT1],
            &[P11c],
            &[U1, T1, Z1],
            vec![t(&[S1], &[V1], &[Q]), t(&[S1, V1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            19,
            "0001011*",
            2,
            &[Q, S1, V1, U1],
            &[RT1, RU2],
            &[P11c, P20c],
            &[T1, Z1, V2, U2],
            vec![t(&[S1], &[V1, U1], &[Q])],
            None,
        ),
        row(
            20,
            "00010101",
            1,
            &[Q, S1, V2, V1, U1],
            &[RT1, RU2],
            &[P11c],
            &[T1, Z1, U2],
            vec![t(&[S1], &[V1, U1], &[Q]), t(&[S1, V1, U1], &[V2], &[Q])],
            None,
        ),
        row(
            21,
            "00010100",
            1,
            &[Q, S1, V2, U2, V1, U1],
            &[RT1],
            &[P11c],
            &[T1, Z1],
            vec![t(&[S1], &[V1, U1], &[Q]), t(&[S1, V1, U1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            22,
            "001*001*",
            4,
            &[Q, S1, Z1, V1],
            &[RU1, RT1, RU2],
            &[P20c],
            &[U1, T1, V2, U2],
            vec![t(&[S1], &[V1], &[Q])],
            None,
        ),
        row(
            23,
            "001*0001",
            2,
            &[Q, S1, Z1, V2, V1],
            &[RU1, RT1, RU2],
            &[],
            &[U1, T1, U2],
            vec![t(&[S1], &[V1], &[Q]), t(&[S1, Z1, V1], &[V2], &[Q])],
            None,
        ),
        row(
            24,
            "001*0000",
            2,
            &[Q, S1, Z1, V2, U2, V1],
            &[RU1, RT1],
            &[],
            &[U1, T1],
            vec![t(&[S1], &[V1], &[Q]), t(&[S1, Z1, V1], &[V2, U2], &[Q])],
            None,
        ),
        row(
            25,
            "0001001*",
            2,
            &[Q, S1, Z1, V1, U1],
            &[RT1, RU2],
            &[P20c],
            &[T1, V2, U2],
            vec![t(&[S1], &[V1], &[Q]), t(&[S1, Z1], &[U1], &[Q])],
            Some(vec![t(&[S1], &[V1], &[Q]), t(&[U1], &[S1, Z1], &[Q, V1])]),
        ),
        row(
            26,
            "00010001",
            1,
            &[Q, S1, Z1, V2, V1, U1],
            &[RT1, RU2],
            &[],
            &[T1, U2],
            vec![
                t(&[S1], &[V1], &[Q]),
                t(&[S1, Z1], &[U1], &[Q]),
                t(&[S1, Z1, V1, U1], &[V2], &[Q]),
            ],
            Some(vec![
                t(&[S1], &[V1], &[Q]),
                t(&[U1], &[S1, Z1], &[Q, V1]),
                t(&[S1, Z1, V1, U1], &[V2], &[Q]),
            ]),
        ),
        row(
            27,
            "00010000",
            1,
            &[Q, S1, Z1, V2, U2, V1, U1],
            &[RT1],
            &[],
            &[T1],
            vec![
                t(&[S1], &[V1], &[Q]),
                t(&[S1, Z1], &[U1], &[Q]),
                t(&[S1, Z1, V1, U1], &[V2, U2], &[Q]),
            ],
            Some(vec![
                t(&[S1], &[V1], &[Q]),
                t(&[U1], &[S1, Z1], &[Q, V1]),
                t(&[S1, Z1, V1, U1], &[V2, U2], &[Q]),
            ]),
        ),
    ]
}

/// Number of all-layers-correct patterns excluded from the table's event
/// count: the three slots that may be marked `*` when everything that
/// matters is correct.
pub const OK_PATTERN_COUNT: u64 = 8;
