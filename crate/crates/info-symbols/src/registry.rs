//! Curated dominance facts.
//!
//! The registry stores directional `lo ≤ hi` facts between information
//! expressions. Facts are data, never derived: the engine consuming them
//! composes slacks, but the registry itself records exactly what was
//! registered and rejects a registration that reverses an existing strict
//! fact.

use constraint_core::prune::FactSet;

use crate::{InfoAtom, InfoExpr, InfoTerm};

/// Opaque receipt for a registered fact. Self-facts yield an inert handle
/// without recording anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactHandle(usize);

/// Rejected registration.
#[derive(Debug, Clone, thiserror::Error)]
pub enum DominanceError {
    /// The reversed fact is already registered and the sides differ.
    #[error("fact reverses already-registered dominance: `{lo}` vs `{hi}`")]
    Contradicts {
        /// Lower side of the rejected fact, rendered.
        lo: String,
        /// Upper side of the rejected fact, rendered.
        hi: String,
    },
}

/// Append-only store of `lo ≤ hi` facts over information expressions.
#[derive(Clone, Debug, Default)]
pub struct DominanceRegistry {
    pairs: Vec<(InfoExpr, InfoExpr)>,
}

fn render(e: &InfoExpr) -> String {
    let mut parts: Vec<String> = e
        .terms()
        .map(|(a, c)| if c == &constraint_core::rat(1) { a.to_string() } else { format!("{c}*{a}") })
        .collect();
    if parts.is_empty() {
        parts.push(e.constant_part().to_string());
    }
    parts.join(" + ")
}

impl DominanceRegistry {
    /// Empty registry.
    pub fn new() -> Self {
        Self::default()
    }

    /// Record `lo ≤ hi` between single terms. Self-facts are accepted and
    /// have no effect; a reversal of an existing fact is rejected.
    pub fn register(&mut self, lo: &InfoTerm, hi: &InfoTerm) -> Result<FactHandle, DominanceError> {
        self.register_expr(
            &InfoExpr::atom(InfoAtom::Term(lo.clone())),
            &InfoExpr::atom(InfoAtom::Term(hi.clone())),
        )
    }

    /// Record `lo ≤ hi` between expressions; see [`Self::register`].
    pub fn register_expr(
        &mut self,
        lo: &InfoExpr,
        hi: &InfoExpr,
    ) -> Result<FactHandle, DominanceError> {
        if lo == hi {
            return Ok(FactHandle(usize::MAX));
        }
        if self.pairs.iter().any(|(l, h)| l == hi && h == lo) {
            return Err(DominanceError::Contradicts { lo: render(lo), hi: render(hi) });
        }
        if let Some(pos) = self.pairs.iter().position(|(l, h)| l == lo && h == hi) {
            return Ok(FactHandle(pos));
        }
        self.pairs.push((lo.clone(), hi.clone()));
        Ok(FactHandle(self.pairs.len() - 1))
    }

    /// The registered pairs.
    pub fn pairs(&self) -> &[(InfoExpr, InfoExpr)] {
        &self.pairs
    }

    /// Export the facts for the pruning engine.
    pub fn facts(&self) -> FactSet<InfoAtom> {
        FactSet::from_pairs(self.pairs.iter().map(|(lo, hi)| (lo, hi)))
    }
}
