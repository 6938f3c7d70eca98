//! Reduction maps: specializations of the superposition region obtained
//! by pinning cooperation bounds, renaming random variables, and pruning
//! what collapses.
//!
//! Each [`Reduction`] compiles to a [`ReductionPlan`]; [`ReductionPlan::run`]
//! applies it to the curated superposition region. Where the specialized
//! region has a known closed form, the plan carries it in `expected` so
//! callers can verify the collapse.

use std::fmt;
use std::str::FromStr;

use constraint_core::{Constraint, LinComb};
use info_symbols::{cap, substitute_expr, InfoAtom, InfoExpr, RateSymbol, RvLabel};

use crate::anchors::{sup_atom, sup_bound, sup_chain_facts, SupBound, User};
use crate::{build, substitute_system, RateSystem, RegionTemplateId};

/// A special case of the cooperative interference channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reduction {
    /// No cooperation links: both cooperation bounds pinned to zero.
    NoFeedback,
    /// Each source observes its intended destination's channel output.
    OutputFeedback,
    /// Source 2 knows user 1's message noncausally.
    Cognitive,
    /// One encoder knows both messages: both cooperation bounds infinite.
    Broadcast,
    /// Both destinations coincide, no private-from-cooperation layers.
    MacGf,
    /// Multiaccess collapse with an extra common message rate.
    MacGfCommon,
    /// Multiaccess collapse with user 2 silent: a decode-forward relay.
    RelayDf,
    /// Cooperation links replaced by rate-limited conferencing capacities.
    Conferencing,
}

impl Reduction {
    /// Every reduction, in listing order.
    pub const ALL: [Reduction; 8] = [
        Reduction::NoFeedback,
        Reduction::OutputFeedback,
        Reduction::Cognitive,
        Reduction::Broadcast,
        Reduction::MacGf,
        Reduction::MacGfCommon,
        Reduction::RelayDf,
        Reduction::Conferencing,
    ];

    /// Canonical spelling, as accepted by the parser.
    pub fn name(self) -> &'static str {
        match self {
            Reduction::NoFeedback => "NO_FEEDBACK",
            Reduction::OutputFeedback => "OUTPUT_FEEDBACK",
            Reduction::Cognitive => "COGNITIVE",
            Reduction::Broadcast => "BROADCAST",
            Reduction::MacGf => "MAC_GF",
            Reduction::MacGfCommon => "MAC_GF_COMMON",
            Reduction::RelayDf => "RELAY_DF",
            Reduction::Conferencing => "CONFERENCING",
        }
    }

    /// One-line description for listings.
    pub fn describe(self) -> &'static str {
        match self {
            Reduction::NoFeedback => "no cooperation: collapses to the baseline region",
            Reduction::OutputFeedback => "sources observe the destination outputs",
            Reduction::Cognitive => "source 2 knows user 1's message",
            Reduction::Broadcast => "one encoder knows both messages",
            Reduction::MacGf => "single destination, cooperating encoders",
            Reduction::MacGfCommon => "single destination with a common message",
            Reduction::RelayDf => "decode-forward relay (user 2 silent)",
            Reduction::Conferencing => "rate-limited conferencing links",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-reduction parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown reduction `{0}`")]
pub struct UnknownReduction(pub String);

impl FromStr for Reduction {
    type Err = UnknownReduction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == wanted)
            .ok_or_else(|| UnknownReduction(s.trim().to_string()))
    }
}

/// How one bound atom is specialized.
#[derive(Clone, Debug)]
pub enum Pinning {
    /// Replace the atom by zero (the link is absent).
    Zero(InfoAtom),
    /// Send the atom to infinity (the link is unconstrained); constraints
    /// it relaxes are dropped.
    Infinite(InfoAtom),
    /// Replace the atom by a named capacity.
    Capacity(InfoAtom, &'static str),
}

/// A compiled reduction: what to pin, rename, zero, and compare against.
#[derive(Clone, Debug)]
pub struct ReductionPlan {
    /// The reduction this plan implements.
    pub id: Reduction,
    /// Atom specializations, applied in order before the renaming.
    pub pinnings: Vec<Pinning>,
    /// Random-variable renaming applied to every bound.
    pub sigma: Vec<(RvLabel, RvLabel)>,
    /// Whether to drop constraints flagged removable before specializing.
    pub drop_flagged: bool,
    /// Rates forced to zero (silent users).
    pub zero_rates: Vec<RateSymbol>,
    /// Whether to widen full-decoding bounds with a common rate `R_0`.
    pub add_common_rate: bool,
    /// The closed form the result must equal, when one is known.
    pub expected: Option<RateSystem>,
}

fn apply_sigma_expr(e: &InfoExpr, sigma: &[(RvLabel, RvLabel)]) -> InfoExpr {
    substitute_expr(e, &|l| {
        sigma.iter().find(|(from, _)| *from == l).map_or(l, |(_, to)| *to)
    })
}

impl ReductionPlan {
    /// Apply this plan to the curated superposition region.
    pub fn run(&self) -> RateSystem {
        let mut sys = build(RegionTemplateId::SupRegion);
        if self.add_common_rate {
            let full1 = sup_atom(User::One, SupBound::Full);
            let full2 = sup_atom(User::Two, SupBound::Full);
            sys = sys
                .iter()
                .map(|c| {
                    let widened = c.rhs.coeff(&full1) > constraint_core::rat(0)
                        || c.rhs.coeff(&full2) > constraint_core::rat(0);
                    if widened {
                        Constraint {
                            lhs: c.lhs.add(&LinComb::var(RateSymbol::R0)),
                            ..c.clone()
                        }
                    } else {
                        c.clone()
                    }
                })
                .collect();
        }
        if self.drop_flagged {
            sys = sys.without_flagged();
        }
        for pin in &self.pinnings {
            sys = match pin {
                Pinning::Zero(a) => sys.pin_atom_zero(a),
                Pinning::Infinite(a) => sys
                    .pin_atom_infinite(a)
                    .expect("region templates keep bound atoms out of equalities"),
                Pinning::Capacity(a, name) => sys.pin_atom_expr(a, &cap(name)),
            };
        }
        sys = substitute_system(&sys, &|l| {
            self.sigma.iter().find(|(from, _)| *from == l).map_or(l, |(_, to)| *to)
        });
        if !self.zero_rates.is_empty() {
            sys = sys.map_vars(|v| {
                if self.zero_rates.contains(v) {
                    LinComb::zero()
                } else {
                    LinComb::var(*v)
                }
            });
        }
        let facts = sup_chain_facts()
            .substituted(&|l| {
                self.sigma.iter().find(|(from, _)| *from == l).map_or(l, |(_, to)| *to)
            })
            .fact_set();
        let kept = sys.with_nonneg(sys.all_vars());
        let pruned = constraint_core::prune::drop_redundant_symbolic_extended(&kept, &facts);
        pruned.strip_nonneg().normalize()
    }
}

/// Compile a reduction into its plan.
pub fn reduction_plan(id: Reduction) -> ReductionPlan {
    let coop1 = sup_atom(User::One, SupBound::Coop);
    let coop2 = sup_atom(User::Two, SupBound::Coop);
    match id {
        Reduction::NoFeedback => ReductionPlan {
            id,
            pinnings: vec![Pinning::Zero(coop1), Pinning::Zero(coop2)],
            sigma: vec![(RvLabel::V1, RvLabel::Q), (RvLabel::V2, RvLabel::Q)],
            drop_flagged: true,
            zero_rates: vec![],
            add_common_rate: false,
            expected: Some(build(RegionTemplateId::HkRegion)),
        },
        Reduction::OutputFeedback => ReductionPlan {
            id,
            pinnings: vec![],
            sigma: vec![(RvLabel::Y1, RvLabel::Y3), (RvLabel::Y2, RvLabel::Y4)],
            drop_flagged: false,
            zero_rates: vec![],
            add_common_rate: false,
            expected: None,
        },
        Reduction::Cognitive => {
            let sigma = vec![
                (RvLabel::U1, RvLabel::Q),
                (RvLabel::V1, RvLabel::Q),
                (RvLabel::V2, RvLabel::Q),
            ];
            let expected = cognitive_expected(&sigma);
            ReductionPlan {
                id,
                pinnings: vec![Pinning::Infinite(coop1), Pinning::Zero(coop2)],
                sigma,
                drop_flagged: true,
                zero_rates: vec![],
                add_common_rate: false,
                expected: Some(expected),
            }
        }
        Reduction::Broadcast => {
            let sigma = vec![
                (RvLabel::U1, RvLabel::Q),
                (RvLabel::V1, RvLabel::Q),
                (RvLabel::U2, RvLabel::Q),
                (RvLabel::V2, RvLabel::Q),
            ];
            let expected = broadcast_expected(&sigma);
            ReductionPlan {
                id,
                pinnings: vec![Pinning::Infinite(coop1), Pinning::Infinite(coop2)],
                sigma,
                drop_flagged: true,
                zero_rates: vec![],
                add_common_rate: false,
                expected: Some(expected),
            }
        }
        Reduction::MacGf => {
            let sigma = mac_sigma();
            let expected = mac_expected(&sigma, false);
            ReductionPlan {
                id,
                pinnings: vec![],
                sigma,
                drop_flagged: true,
                zero_rates: vec![],
                add_common_rate: false,
                expected: Some(expected),
            }
        }
        Reduction::MacGfCommon => {
            let sigma = mac_sigma();
            let expected = mac_expected(&sigma, true);
            ReductionPlan {
                id,
                pinnings: vec![],
                sigma,
                drop_flagged: true,
                zero_rates: vec![],
                add_common_rate: true,
                expected: Some(expected),
            }
        }
        Reduction::RelayDf => {
            let sigma = mac_sigma();
            let expected = relay_expected(&sigma);
            ReductionPlan {
                id,
                pinnings: vec![],
                sigma,
                drop_flagged: true,
                zero_rates: vec![RateSymbol::R2],
                add_common_rate: false,
                expected: Some(expected),
            }
        }
        Reduction::Conferencing => {
            let expected = build(RegionTemplateId::SupRegion)
                .pin_atom_expr(&coop1, &cap("C21"))
                .pin_atom_expr(&coop2, &cap("C12"));
            ReductionPlan {
                id,
                pinnings: vec![
                    Pinning::Capacity(coop1, "C21"),
                    Pinning::Capacity(coop2, "C12"),
                ],
                sigma: vec![],
                drop_flagged: false,
                zero_rates: vec![],
                add_common_rate: false,
                expected: Some(expected),
            }
        }
    }
}

/// Run every reduction; returns each plan with its result.
pub fn run_all_reductions() -> Vec<(ReductionPlan, RateSystem)> {
    Reduction::ALL
        .into_iter()
        .map(|r| {
            let plan = reduction_plan(r);
            let out = plan.run();
            (plan, out)
        })
        .collect()
}

fn mac_sigma() -> Vec<(RvLabel, RvLabel)> {
    vec![
        (RvLabel::Y4, RvLabel::Y3),
        (RvLabel::T1, RvLabel::Empty),
        (RvLabel::T2, RvLabel::Empty),
    ]
}

fn sig_bound(user: User, b: SupBound, sigma: &[(RvLabel, RvLabel)]) -> InfoExpr {
    apply_sigma_expr(&sup_bound(user, b), sigma)
}

fn cognitive_expected(sigma: &[(RvLabel, RvLabel)]) -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| sig_bound(User::One, x, sigma);
    let b = |x| sig_bound(User::Two, x, sigma);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    constraint_core::System::from_vec(vec![
        Constraint::le(r1.clone(), a(SupBound::Full)),
        Constraint::le(r2.clone(), b(SupBound::PrivOwn)),
        Constraint::le(r1.add(&r2), a(SupBound::Full).add(&b(SupBound::Priv))),
        Constraint::le(r1.add(&r2), a(SupBound::Priv).add(&b(SupBound::Full))),
        Constraint::le(
            r1.add(&r2.scale(&constraint_core::rat(2))),
            a(SupBound::PrivCross).add(&b(SupBound::Priv)).add(&b(SupBound::Full)),
        ),
    ])
}

fn broadcast_expected(sigma: &[(RvLabel, RvLabel)]) -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| sig_bound(User::One, x, sigma);
    let b = |x| sig_bound(User::Two, x, sigma);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    constraint_core::System::from_vec(vec![
        Constraint::le(r1.clone(), a(SupBound::Full)),
        Constraint::le(r2.clone(), b(SupBound::Full)),
        Constraint::le(r1.add(&r2), a(SupBound::Full).add(&b(SupBound::Priv))),
        Constraint::le(r1.add(&r2), a(SupBound::Priv).add(&b(SupBound::Full))),
    ])
}

fn mac_expected(sigma: &[(RvLabel, RvLabel)], common: bool) -> RateSystem {
    use RateSymbol::{R0, R1, R2};
    let a = |x| sig_bound(User::One, x, sigma);
    let b = |x| sig_bound(User::Two, x, sigma);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    let mut sum_lhs = r1.add(&r2);
    if common {
        sum_lhs = sum_lhs.add(&LinComb::var(R0));
    }
    constraint_core::System::from_vec(vec![
        Constraint::le(r1.clone(), a(SupBound::Coop).add(&a(SupBound::PrivOwn))),
        Constraint::le(r2.clone(), b(SupBound::Coop).add(&b(SupBound::PrivOwn))),
        Constraint::le(sum_lhs, a(SupBound::Full)),
        Constraint::le(
            r1.add(&r2),
            a(SupBound::Coop).add(&b(SupBound::Coop)).add(&a(SupBound::PrivBoth)),
        ),
    ])
}

fn relay_expected(sigma: &[(RvLabel, RvLabel)]) -> RateSystem {
    use RateSymbol::R1;
    let a = |x| sig_bound(User::One, x, sigma);
    constraint_core::System::from_vec(vec![
        Constraint::le(LinComb::var(R1), a(SupBound::Coop).add(&a(SupBound::PrivOwn))),
        Constraint::le(LinComb::var(R1), a(SupBound::Full)),
    ])
}
