//! Constraint-system templates for the two-user cooperative interference
//! channel: the non-cooperative baseline decoders and their projected
//! region, the cooperative superposition scheme's decoders and region,
//! the strict-decoding variant, and the superposition-and-binning system,
//! together with the derivations and reduction maps tying them together.
//!
//! Everything is exact symbolic data over [`constraint_core`] systems:
//! [`build`] returns the curated constraint lists, [`derive`] reproduces
//! the projected regions by Fourier-Motzkin elimination, [`reduce`] maps
//! the cooperative region onto its special cases, and [`binning`] folds
//! the bin rates of the binning scheme into its decoding bounds.

pub mod anchors;
pub mod binning;
pub mod derive;
pub mod reduce;

use std::fmt;
use std::str::FromStr;

use constraint_core::{Constraint, LinComb, System};
use info_symbols::{swap_expr, InfoAtom, RateSymbol, RvLabel};

use anchors::{hk_bound, sup_bound, ext_pair_bound, ext_triple_bound, HkBound, SupBound, User};

/// A constraint system over rate symbols with mutual-information bounds.
pub type RateSystem = System<RateSymbol, InfoAtom>;

/// Flag carried by constraints that are removable by a reparameterization
/// of the scheme rather than implied by the rest of the system.
pub const REMOVABLE_FLAG: &str = "removable";

/// Identifier of one curated constraint system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegionTemplateId {
    /// Baseline joint decoder at destination 1.
    HkDec1,
    /// Baseline joint decoder at destination 2.
    HkDec2,
    /// Baseline region over the message rates.
    HkRegion,
    /// Cooperative common layer of user 1 decoded at source 2.
    SupCoop1,
    /// Superposition-scheme joint decoder at destination 1.
    SupDec1,
    /// Cooperative common layer of user 2 decoded at source 1.
    SupCoop2,
    /// Superposition-scheme joint decoder at destination 2.
    SupDec2,
    /// Superposition-scheme region over the message rates.
    SupRegion,
    /// Strict-decoding constraints at source 1.
    ExtCoop,
    /// Strict-decoding region over the message rates.
    ExtRegion,
    /// Bin-pairing constraint of the binning scheme.
    BinEncBc,
    /// Known-interference binning constraints at both sources.
    BinEncMdc,
    /// Cross-decoding constraints of the binning scheme.
    BinEncCoop,
    /// Error-event bounds at destination 1 with the aggregated-rate
    /// definitions.
    BinDec1,
    /// Error-event bounds at destination 2 with the aggregated-rate
    /// definitions.
    BinDec2,
}

impl RegionTemplateId {
    /// Every template, in listing order.
    pub const ALL: [RegionTemplateId; 15] = [
        RegionTemplateId::HkDec1,
        RegionTemplateId::HkDec2,
        RegionTemplateId::HkRegion,
        RegionTemplateId::SupCoop1,
        RegionTemplateId::SupDec1,
        RegionTemplateId::SupCoop2,
        RegionTemplateId::SupDec2,
        RegionTemplateId::SupRegion,
        RegionTemplateId::ExtCoop,
        RegionTemplateId::ExtRegion,
        RegionTemplateId::BinEncBc,
        RegionTemplateId::BinEncMdc,
        RegionTemplateId::BinEncCoop,
        RegionTemplateId::BinDec1,
        RegionTemplateId::BinDec2,
    ];

    /// Canonical spelling, as accepted by the parser.
    pub fn name(self) -> &'static str {
        match self {
            RegionTemplateId::HkDec1 => "HK_DEC1",
            RegionTemplateId::HkDec2 => "HK_DEC2",
            RegionTemplateId::HkRegion => "HK_REGION",
            RegionTemplateId::SupCoop1 => "SUP_COOP1",
            RegionTemplateId::SupDec1 => "SUP_DEC1",
            RegionTemplateId::SupCoop2 => "SUP_COOP2",
            RegionTemplateId::SupDec2 => "SUP_DEC2",
            RegionTemplateId::SupRegion => "SUP_REGION",
            RegionTemplateId::ExtCoop => "EXT_COOP",
            RegionTemplateId::ExtRegion => "EXT_REGION",
            RegionTemplateId::BinEncBc => "BIN_ENC_BC",
            RegionTemplateId::BinEncMdc => "BIN_ENC_MDC",
            RegionTemplateId::BinEncCoop => "BIN_ENC_COOP",
            RegionTemplateId::BinDec1 => "BIN_DEC1",
            RegionTemplateId::BinDec2 => "BIN_DEC2",
        }
    }

    /// One-line description for listings.
    pub fn describe(self) -> &'static str {
        match self {
            RegionTemplateId::HkDec1 => "baseline joint decoder at destination 1",
            RegionTemplateId::HkDec2 => "baseline joint decoder at destination 2",
            RegionTemplateId::HkRegion => "baseline region over the message rates",
            RegionTemplateId::SupCoop1 => "user-1 cooperative layer decoded at source 2",
            RegionTemplateId::SupDec1 => "superposition joint decoder at destination 1",
            RegionTemplateId::SupCoop2 => "user-2 cooperative layer decoded at source 1",
            RegionTemplateId::SupDec2 => "superposition joint decoder at destination 2",
            RegionTemplateId::SupRegion => "superposition region over the message rates",
            RegionTemplateId::ExtCoop => "strict-decoding constraints at source 1",
            RegionTemplateId::ExtRegion => "strict-decoding region over the message rates",
            RegionTemplateId::BinEncBc => "bin-pairing constraint of the binning scheme",
            RegionTemplateId::BinEncMdc => "known-interference binning at both sources",
            RegionTemplateId::BinEncCoop => "cross-decoding constraints of the binning scheme",
            RegionTemplateId::BinDec1 => "binning error-event bounds at destination 1",
            RegionTemplateId::BinDec2 => "binning error-event bounds at destination 2",
        }
    }
}

impl fmt::Display for RegionTemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknown-template parse error.
#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown region template `{0}`")]
pub struct UnknownTemplate(pub String);

impl FromStr for RegionTemplateId {
    type Err = UnknownTemplate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        RegionTemplateId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| UnknownTemplate(s.trim().to_string()))
    }
}

/// The constraint system for one template.
pub fn build(id: RegionTemplateId) -> RateSystem {
    match id {
        RegionTemplateId::HkDec1 => hk_dec(User::One),
        RegionTemplateId::HkDec2 => hk_dec(User::Two),
        RegionTemplateId::HkRegion => hk_region(),
        RegionTemplateId::SupCoop1 => sup_coop(User::One),
        RegionTemplateId::SupDec1 => sup_dec(User::One),
        RegionTemplateId::SupCoop2 => sup_coop(User::Two),
        RegionTemplateId::SupDec2 => sup_dec(User::Two),
        RegionTemplateId::SupRegion => sup_region(),
        RegionTemplateId::ExtCoop => ext_coop(),
        RegionTemplateId::ExtRegion => ext_region(),
        RegionTemplateId::BinEncBc => binning_core::encoder_bc(),
        RegionTemplateId::BinEncMdc => binning_core::encoder_mdc(),
        RegionTemplateId::BinEncCoop => binning_core::encoder_coop(),
        RegionTemplateId::BinDec1 => {
            binning_core::build_full().dest1().union(&binning_core::aggregated_defs())
        }
        RegionTemplateId::BinDec2 => {
            binning_core::build_full().dest2().union(&binning_core::aggregated_defs())
        }
    }
}

/// User-swap a whole system: rate symbols, labels inside terms, and the
/// user digit of this crate's constraint labels. An involution.
pub fn swap_rate_system(sys: &RateSystem) -> RateSystem {
    sys.iter()
        .map(|c| Constraint {
            lhs: c.lhs.map_vars(|v| LinComb::var(v.swap_user())),
            rel: c.rel,
            rhs: swap_expr(&c.rhs),
            label: c.label.as_deref().map(swap_template_label),
            flag: c.flag.clone(),
        })
        .collect()
}

/// Apply a label substitution to every bound of a system.
pub fn substitute_system(sys: &RateSystem, sigma: &dyn Fn(RvLabel) -> RvLabel) -> RateSystem {
    sys.map_atoms(|a| {
        info_symbols::substitute_expr(&constraint_core::RhsExpr::atom(a.clone()), sigma)
    })
}

fn swap_template_label(label: &str) -> String {
    for (a, b) in [
        ("hk1-", "hk2-"),
        ("sup1-", "sup2-"),
        ("ext1-", "ext2-"),
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

fn hk_dec(user: User) -> RateSystem {
    use RateSymbol::{R10n, R11n, R20n};
    let b = |x| hk_bound(User::One, x);
    let user1 = System::from_vec(vec![
        Constraint::le(LinComb::sum([R11n]), b(HkBound::Priv)).with_label("hk1-priv"),
        Constraint::le(LinComb::sum([R20n, R11n]), b(HkBound::PrivCross))
            .with_label("hk1-priv-cross"),
        Constraint::le(LinComb::sum([R10n, R11n]), b(HkBound::PrivOwn)).with_label("hk1-priv-own"),
        Constraint::le(LinComb::sum([R20n, R10n, R11n]), b(HkBound::PrivBoth))
            .with_label("hk1-priv-both"),
    ]);
    match user {
        User::One => user1,
        User::Two => swap_rate_system(&user1),
    }
}

fn hk_region() -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| hk_bound(User::One, x);
    let b = |x| hk_bound(User::Two, x);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    let sum = r1.add(&r2);
    let two_r1_r2 = r1.scale(&constraint_core::rat(2)).add(&r2);
    let r1_two_r2 = r1.add(&r2.scale(&constraint_core::rat(2)));
    System::from_vec(vec![
        Constraint::le(r1.clone(), a(HkBound::PrivOwn)).with_label("hk-r1"),
        Constraint::le(r2.clone(), b(HkBound::PrivOwn)).with_label("hk-r2"),
        Constraint::le(sum.clone(), a(HkBound::PrivBoth).add(&b(HkBound::Priv)))
            .with_label("hk-sum-a"),
        Constraint::le(sum.clone(), a(HkBound::Priv).add(&b(HkBound::PrivBoth)))
            .with_label("hk-sum-b"),
        Constraint::le(sum, a(HkBound::PrivCross).add(&b(HkBound::PrivCross)))
            .with_label("hk-sum-c"),
        Constraint::le(
            two_r1_r2,
            a(HkBound::PrivBoth).add(&a(HkBound::Priv)).add(&b(HkBound::PrivCross)),
        )
        .with_label("hk-2r1-r2"),
        Constraint::le(
            r1_two_r2,
            a(HkBound::PrivCross).add(&b(HkBound::Priv)).add(&b(HkBound::PrivBoth)),
        )
        .with_label("hk-r1-2r2"),
    ])
}

/// The two single-rate bounds that complete the baseline region as the
/// joint decoders project it. They are flagged [`REMOVABLE_FLAG`]: a
/// reparameterization of the split (moving the private layer into the
/// common one whenever such a bound binds) makes them redundant, so the
/// curated region omits them.
pub fn hk_remark_pair() -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| hk_bound(User::One, x);
    let b = |x| hk_bound(User::Two, x);
    System::from_vec(vec![
        Constraint::le(LinComb::var(R1), a(HkBound::Priv).add(&b(HkBound::PrivCross)))
            .with_label("hk-r1-alt")
            .with_flag(REMOVABLE_FLAG),
        Constraint::le(LinComb::var(R2), b(HkBound::Priv).add(&a(HkBound::PrivCross)))
            .with_label("hk-r2-alt")
            .with_flag(REMOVABLE_FLAG),
    ])
}

fn sup_coop(user: User) -> RateSystem {
    use RateSymbol::R10c;
    let user1 = System::from_vec(vec![Constraint::le(
        LinComb::sum([R10c]),
        sup_bound(User::One, SupBound::Coop),
    )
    .with_label("sup1-coop")]);
    match user {
        User::One => user1,
        User::Two => swap_rate_system(&user1),
    }
}

fn sup_dec(user: User) -> RateSystem {
    use RateSymbol::{R10c, R10n, R11n, R20c, R20n};
    let b = |x| sup_bound(User::One, x);
    let user1 = System::from_vec(vec![
        Constraint::le(LinComb::sum([R11n]), b(SupBound::Priv)).with_label("sup1-priv"),
        Constraint::le(LinComb::sum([R11n, R20n]), b(SupBound::PrivCross))
            .with_label("sup1-priv-cross"),
        Constraint::le(LinComb::sum([R11n, R10n]), b(SupBound::PrivOwn))
            .with_label("sup1-priv-own"),
        Constraint::le(LinComb::sum([R11n, R10n, R20n]), b(SupBound::PrivBoth))
            .with_label("sup1-priv-both"),
        Constraint::le(LinComb::sum([R11n, R10n, R20n, R20c, R10c]), b(SupBound::Full))
            .with_label("sup1-full"),
    ]);
    match user {
        User::One => user1,
        User::Two => swap_rate_system(&user1),
    }
}

fn sup_region() -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| sup_bound(User::One, x);
    let b = |x| sup_bound(User::Two, x);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    let sum = r1.add(&r2);
    let two_r1_r2 = r1.scale(&constraint_core::rat(2)).add(&r2);
    let r1_two_r2 = r1.add(&r2.scale(&constraint_core::rat(2)));
    System::from_vec(vec![
        Constraint::le(r1.clone(), a(SupBound::Full)).with_label("r1-direct"),
        Constraint::le(r1.clone(), a(SupBound::Coop).add(&a(SupBound::PrivOwn)))
            .with_label("r1-coop"),
        Constraint::le(r2.clone(), b(SupBound::Full)).with_label("r2-direct"),
        Constraint::le(r2.clone(), b(SupBound::Coop).add(&b(SupBound::PrivOwn)))
            .with_label("r2-coop"),
        Constraint::le(sum.clone(), a(SupBound::Full).add(&b(SupBound::Priv)))
            .with_label("sum-a"),
        Constraint::le(sum.clone(), a(SupBound::Priv).add(&b(SupBound::Full)))
            .with_label("sum-b"),
        Constraint::le(
            sum.clone(),
            a(SupBound::Coop)
                .add(&b(SupBound::Coop))
                .add(&a(SupBound::PrivBoth))
                .add(&b(SupBound::Priv)),
        )
        .with_label("sum-c"),
        Constraint::le(
            sum.clone(),
            a(SupBound::Coop)
                .add(&b(SupBound::Coop))
                .add(&a(SupBound::Priv))
                .add(&b(SupBound::PrivBoth)),
        )
        .with_label("sum-d"),
        Constraint::le(
            sum,
            a(SupBound::Coop)
                .add(&b(SupBound::Coop))
                .add(&a(SupBound::PrivCross))
                .add(&b(SupBound::PrivCross)),
        )
        .with_label("sum-e"),
        Constraint::le(
            two_r1_r2.clone(),
            a(SupBound::Coop)
                .add(&a(SupBound::Priv))
                .add(&a(SupBound::Full))
                .add(&b(SupBound::PrivCross)),
        )
        .with_label("2r1-r2-a"),
        Constraint::le(
            two_r1_r2,
            a(SupBound::Coop)
                .scale(&constraint_core::rat(2))
                .add(&b(SupBound::Coop))
                .add(&a(SupBound::Priv))
                .add(&a(SupBound::PrivBoth))
                .add(&b(SupBound::PrivCross)),
        )
        .with_label("2r1-r2-b"),
        Constraint::le(
            r1_two_r2.clone(),
            b(SupBound::Coop)
                .add(&a(SupBound::PrivCross))
                .add(&b(SupBound::Priv))
                .add(&b(SupBound::Full)),
        )
        .with_label("r1-2r2-a"),
        Constraint::le(
            r1_two_r2,
            a(SupBound::Coop)
                .add(&b(SupBound::Coop).scale(&constraint_core::rat(2)))
                .add(&a(SupBound::PrivCross))
                .add(&b(SupBound::Priv))
                .add(&b(SupBound::PrivBoth)),
        )
        .with_label("r1-2r2-b"),
        Constraint::le(
            LinComb::var(R1),
            a(SupBound::Coop).add(&a(SupBound::Priv)).add(&b(SupBound::PrivCross)),
        )
        .with_label("r1-alt")
        .with_flag(REMOVABLE_FLAG),
        Constraint::le(
            LinComb::var(R2),
            b(SupBound::Coop).add(&b(SupBound::Priv)).add(&a(SupBound::PrivCross)),
        )
        .with_label("r2-alt")
        .with_flag(REMOVABLE_FLAG),
    ])
}

fn ext_coop() -> RateSystem {
    use RateSymbol::{R20c, R20n, R22n};
    System::from_vec(vec![
        Constraint::le(LinComb::sum([R20n, R20c]), ext_pair_bound()).with_label("ext1-pair"),
        Constraint::le(LinComb::sum([R22n, R20n, R20c]), ext_triple_bound())
            .with_label("ext1-triple"),
    ])
}

/// The single-rate bound on `R_1` that completes the strict-decoding region
/// as the decoders project it, flagged [`REMOVABLE_FLAG`] for the same
/// reparameterization reason as [`hk_remark_pair`]. Only user 1's side
/// appears: user 2's counterpart is already the pair bound, whose
/// cooperative split the strict decoder absorbs.
pub fn ext_remark_row() -> RateSystem {
    use RateSymbol::R1;
    System::from_vec(vec![Constraint::le(
        LinComb::var(R1),
        sup_bound(User::One, SupBound::Coop)
            .add(&sup_bound(User::One, SupBound::Priv))
            .add(&sup_bound(User::Two, SupBound::PrivCross)),
    )
    .with_label("ext-r1-alt")
    .with_flag(REMOVABLE_FLAG)])
}

fn ext_region() -> RateSystem {
    use RateSymbol::{R1, R2};
    let a = |x| sup_bound(User::One, x);
    let b = |x| sup_bound(User::Two, x);
    let r1 = LinComb::var(R1);
    let r2 = LinComb::var(R2);
    let sum = r1.add(&r2);
    let two_r1_r2 = r1.scale(&constraint_core::rat(2)).add(&r2);
    System::from_vec(vec![
        Constraint::le(r1.clone(), a(SupBound::Full)).with_label("ext-r1-direct"),
        Constraint::le(r1, a(SupBound::Coop).add(&a(SupBound::PrivOwn)))
            .with_label("ext-r1-coop"),
        Constraint::le(r2.clone(), b(SupBound::Full)).with_label("ext-r2-direct"),
        Constraint::le(r2, ext_pair_bound().add(&b(SupBound::Priv))).with_label("ext-r2-pair"),
        Constraint::le(sum.clone(), a(SupBound::Full).add(&b(SupBound::Priv)))
            .with_label("ext-sum-a"),
        Constraint::le(sum.clone(), a(SupBound::Priv).add(&b(SupBound::Full)))
            .with_label("ext-sum-b"),
        Constraint::le(
            sum,
            a(SupBound::Coop)
                .add(&ext_pair_bound())
                .add(&a(SupBound::Priv))
                .add(&b(SupBound::PrivCross)),
        )
        .with_label("ext-sum-c"),
        Constraint::le(
            two_r1_r2,
            a(SupBound::Coop)
                .add(&a(SupBound::Priv))
                .add(&a(SupBound::Full))
                .add(&b(SupBound::PrivCross)),
        )
        .with_label("ext-2r1-r2"),
    ])
}
