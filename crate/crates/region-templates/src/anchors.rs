//! The named mutual-information bounds the region templates are built
//! from, plus the curated dominance facts relating them.
//!
//! Every decoding system in this crate bounds partial rate sums by one of
//! a small set of expressions: the cross-decoding bound at the peer
//! source, the four joint-decoding bounds at the own destination (private
//! layer alone, with the interferer's common layer, with the own common
//! layer, with both), and the everything-at-once bound. Naming them once
//! keeps the templates, the derived regions, and the reduction maps in
//! exact structural agreement.

use constraint_core::prune::FactSet;
use info_symbols::{mi, substitute_expr, swap_expr, InfoAtom, InfoExpr, RvLabel};

/// One of the two cooperating users.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum User {
    /// The user decoded by destination 1.
    One,
    /// The user decoded by destination 2.
    Two,
}

impl User {
    /// The other user.
    pub fn swap(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }
}

/// The bound expressions of the cooperative superposition scheme, for one
/// user: the cross-decoding bound at the peer source and the five
/// joint-decoding bounds at the own destination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SupBound {
    /// Peer source decodes the cooperative common layer from its feedback
    /// signal.
    Coop,
    /// Destination decodes the private layer, everything else known.
    Priv,
    /// Private layer jointly with the interferer's common layer.
    PrivCross,
    /// Private layer jointly with the own common layer.
    PrivOwn,
    /// Private layer jointly with both common layers.
    PrivBoth,
    /// Everything the destination decodes, jointly.
    Full,
}

/// All six superposition bounds, in display order.
pub const SUP_BOUNDS: [SupBound; 6] = [
    SupBound::Coop,
    SupBound::Priv,
    SupBound::PrivCross,
    SupBound::PrivOwn,
    SupBound::PrivBoth,
    SupBound::Full,
];

/// The joint-decoding bounds of the non-cooperative baseline scheme.
/// There is no cooperative layer, so there is no `Coop` or `Full` analog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HkBound {
    /// Private layer alone.
    Priv,
    /// Private layer jointly with the interferer's common layer.
    PrivCross,
    /// Private layer jointly with the own common layer.
    PrivOwn,
    /// Private layer jointly with both common layers.
    PrivBoth,
}

/// All four baseline bounds, in display order.
pub const HK_BOUNDS: [HkBound; 4] = [
    HkBound::Priv,
    HkBound::PrivCross,
    HkBound::PrivOwn,
    HkBound::PrivBoth,
];

/// The superposition-scheme bound expression for `user`.
pub fn sup_bound(user: User, bound: SupBound) -> InfoExpr {
    use RvLabel::{Q, T1, T2, U1, U2, V1, V2, X2, Y2, Y3};
    let user1 = match bound {
        SupBound::Coop => mi([V1], [Y2], [Q, V2, U2, T2, X2]),
        SupBound::Priv => mi([Y3], [T1], [Q, V1, V2, U1, U2]),
        SupBound::PrivCross => mi([Y3], [T1, U2], [Q, V1, V2, U1]),
        SupBound::PrivOwn => mi([Y3], [T1, U1], [Q, V1, V2, U2]),
        SupBound::PrivBoth => mi([Y3], [T1, U1, U2], [Q, V1, V2]),
        SupBound::Full => mi([Y3], [T1, U1, U2, Q, V1, V2], []),
    };
    match user {
        User::One => user1,
        User::Two => swap_expr(&user1),
    }
}

/// The superposition bound as a single atom (every [`sup_bound`]
/// expression is one mutual-information term with coefficient one).
pub fn sup_atom(user: User, bound: SupBound) -> InfoAtom {
    let expr = sup_bound(user, bound);
    let (atom, _) = expr.terms().next().expect("superposition bounds are single terms");
    atom.clone()
}

/// The baseline-scheme bound expression for `user`.
pub fn hk_bound(user: User, bound: HkBound) -> InfoExpr {
    use RvLabel::{Q, T1, U1, U2, Y3};
    let user1 = match bound {
        HkBound::Priv => mi([Y3], [T1], [U1, U2, Q]),
        HkBound::PrivCross => mi([Y3], [T1, U2], [U1, Q]),
        HkBound::PrivOwn => mi([Y3], [T1, U1], [U2, Q]),
        HkBound::PrivBoth => mi([Y3], [T1, U1, U2], [Q]),
    };
    match user {
        User::One => user1,
        User::Two => swap_expr(&user1),
    }
}

/// Strict-decoding bound at source 1: the peer's common layers are
/// decoded jointly from the feedback signal.
pub fn ext_pair_bound() -> InfoExpr {
    use RvLabel::{Q, T1, U1, U2, V1, V2, X1, Y1};
    mi([V2, U2], [Y1], [Q, V1, U1, T1, X1])
}

/// Strict-decoding bound at source 1 with the peer's private layer
/// included; with an uninformative feedback signal it forces the peer's
/// whole rate to zero.
pub fn ext_triple_bound() -> InfoExpr {
    use RvLabel::{Q, T1, T2, U1, U2, V1, V2, X1, Y1};
    mi([T2, U2, V2], [Y1], [Q, V1, U1, T1, X1])
}

/// An ordered list of `lo <= hi` dominance facts between bound
/// expressions, kept as pairs so a label substitution can be pushed
/// through before building a [`FactSet`].
#[derive(Clone, Debug, Default)]
pub struct ChainFacts {
    pairs: Vec<(InfoExpr, InfoExpr)>,
}

impl ChainFacts {
    /// No facts.
    pub fn new() -> Self {
        ChainFacts { pairs: Vec::new() }
    }

    /// Record `lo <= hi`.
    pub fn push(&mut self, lo: InfoExpr, hi: InfoExpr) {
        self.pairs.push((lo, hi));
    }

    /// The recorded pairs.
    pub fn pairs(&self) -> &[(InfoExpr, InfoExpr)] {
        &self.pairs
    }

    /// Both fact lists, concatenated.
    pub fn merged(&self, other: &ChainFacts) -> ChainFacts {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        ChainFacts { pairs }
    }

    /// The facts with a label substitution applied to both sides. Sound
    /// because each fact holds for every joint distribution the scheme
    /// induces, and substitution only instantiates particular choices of
    /// the auxiliary layers.
    pub fn substituted(&self, f: &dyn Fn(RvLabel) -> RvLabel) -> ChainFacts {
        ChainFacts {
            pairs: self
                .pairs
                .iter()
                .map(|(lo, hi)| (substitute_expr(lo, f), substitute_expr(hi, f)))
                .collect(),
        }
    }

    /// The facts as a pruning fact set.
    pub fn fact_set(&self) -> FactSet<InfoAtom> {
        FactSet::from_pairs(self.pairs.iter().map(|(lo, hi)| (lo, hi)))
    }
}

/// Dominance facts among the superposition bounds of one user, mirrored
/// for the other: the private bound grows as decoded layers are added
/// (plain chain-rule monotonicity), everything is below the joint bound,
/// and the both-commons bound splits across the two single-common bounds
/// because the common layers are independent given the cooperative
/// layers.
pub fn sup_chain_facts() -> ChainFacts {
    let mut facts = ChainFacts::new();
    for user in [User::One, User::Two] {
        let b = |x| sup_bound(user, x);
        facts.push(b(SupBound::Priv), b(SupBound::PrivCross));
        facts.push(b(SupBound::Priv), b(SupBound::PrivOwn));
        facts.push(b(SupBound::PrivCross), b(SupBound::PrivBoth));
        facts.push(b(SupBound::PrivOwn), b(SupBound::PrivBoth));
        facts.push(b(SupBound::PrivBoth), b(SupBound::Full));
        facts.push(
            b(SupBound::PrivBoth),
            b(SupBound::PrivCross).add(&b(SupBound::PrivOwn)),
        );
    }
    facts
}

/// The same dominance structure for the baseline bounds.
pub fn hk_chain_facts() -> ChainFacts {
    let mut facts = ChainFacts::new();
    for user in [User::One, User::Two] {
        let b = |x| hk_bound(user, x);
        facts.push(b(HkBound::Priv), b(HkBound::PrivCross));
        facts.push(b(HkBound::Priv), b(HkBound::PrivOwn));
        facts.push(b(HkBound::PrivCross), b(HkBound::PrivBoth));
        facts.push(b(HkBound::PrivOwn), b(HkBound::PrivBoth));
        facts.push(
            b(HkBound::PrivBoth),
            b(HkBound::PrivCross).add(&b(HkBound::PrivOwn)),
        );
    }
    facts
}

/// [`sup_chain_facts`] extended with the strict-decoding bounds: adding
/// the peer's private layer to the decoded set only grows the bound, and
/// the pair bound dominates the plain cross-decoding bound (chain rule on
/// the decoded set).
pub fn ext_chain_facts() -> ChainFacts {
    let mut facts = sup_chain_facts();
    facts.push(ext_pair_bound(), ext_triple_bound());
    facts.push(sup_bound(User::Two, SupBound::Coop), ext_pair_bound());
    facts
}
