//! Canonical conditional mutual-information terms.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{ParseLabelError, RvLabel};

/// The canonical form of `I(left ∧ right | cond)`.
///
/// Canonicalization, applied on construction: bundles (`X1bar`, `X2bar`)
/// are expanded, `EMPTY` labels are removed, labels present in `cond` are
/// absorbed out of `left` and `right`, and the two sides are oriented so
/// the lexicographically smaller set comes first (mutual information is
/// symmetric). A term whose side becomes empty is zero and has no
/// canonical form; constructors return `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfoTerm {
    left: BTreeSet<RvLabel>,
    right: BTreeSet<RvLabel>,
    cond: BTreeSet<RvLabel>,
}

fn expand(labels: impl IntoIterator<Item = RvLabel>) -> BTreeSet<RvLabel> {
    let mut out = BTreeSet::new();
    for l in labels {
        match l.expansion() {
            Some(bundle) => out.extend(bundle.iter().copied()),
            None => {
                if l != RvLabel::Empty {
                    out.insert(l);
                }
            }
        }
    }
    out
}

impl InfoTerm {
    /// Canonicalize `I(left ∧ right | cond)`; `None` when the term is zero.
    pub fn new(
        left: impl IntoIterator<Item = RvLabel>,
        right: impl IntoIterator<Item = RvLabel>,
        cond: impl IntoIterator<Item = RvLabel>,
    ) -> Option<InfoTerm> {
        let cond = expand(cond);
        let left: BTreeSet<_> = expand(left).difference(&cond).copied().collect();
        let right: BTreeSet<_> = expand(right).difference(&cond).copied().collect();
        if left.is_empty() || right.is_empty() {
            return None;
        }
        // Orient the shorter side first (ties lexicographic) so single
        // channel outputs lead composite message sides.
        let flip = (right.len(), &right) < (left.len(), &left);
        let (left, right) = if flip { (right, left) } else { (left, right) };
        Some(InfoTerm { left, right, cond })
    }

    /// First side.
    pub fn left(&self) -> &BTreeSet<RvLabel> {
        &self.left
    }

    /// Second side.
    pub fn right(&self) -> &BTreeSet<RvLabel> {
        &self.right
    }

    /// Conditioning set.
    pub fn cond(&self) -> &BTreeSet<RvLabel> {
        &self.cond
    }

    /// Every label the term mentions.
    pub fn labels(&self) -> impl Iterator<Item = RvLabel> + '_ {
        self.left.iter().chain(&self.right).chain(&self.cond).copied()
    }

    /// Apply a label map and re-canonicalize; `None` when the image is zero.
    pub fn substitute(&self, sigma: &dyn Fn(RvLabel) -> RvLabel) -> Option<InfoTerm> {
        InfoTerm::new(
            self.left.iter().map(|&l| sigma(l)),
            self.right.iter().map(|&l| sigma(l)),
            self.cond.iter().map(|&l| sigma(l)),
        )
    }

    /// Swap the two users; always nonzero since swapping is a bijection on
    /// concrete labels.
    pub fn swap_user(&self) -> InfoTerm {
        self.substitute(&|l| l.swap_user()).expect("user swap cannot collapse a term")
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<RvLabel>) -> fmt::Result {
    for (i, l) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for InfoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("I(")?;
        write_set(f, &self.left)?;
        f.write_str(" ; ")?;
        write_set(f, &self.right)?;
        if !self.cond.is_empty() {
            f.write_str(" | ")?;
            write_set(f, &self.cond)?;
        }
        f.write_str(")")
    }
}

/// Unparseable or zero term text.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ParseTermError {
    /// The text does not have the `I(left ; right | cond)` shape.
    #[error("malformed info term `{0}`")]
    Shape(String),
    /// A label inside the term is unknown.
    #[error(transparent)]
    Label(#[from] ParseLabelError),
    /// The parsed term canonicalizes to zero.
    #[error("term `{0}` is identically zero")]
    Zero(String),
}

fn parse_labels(s: &str) -> Result<Vec<RvLabel>, ParseLabelError> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
}

impl FromStr for InfoTerm {
    type Err = ParseTermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix("I(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| ParseTermError::Shape(t.to_string()))?;
        let (sides, cond) = match inner.split_once('|') {
            Some((sides, cond)) => (sides, parse_labels(cond)?),
            None => (inner, Vec::new()),
        };
        let (left, right) =
            sides.split_once(';').ok_or_else(|| ParseTermError::Shape(t.to_string()))?;
        InfoTerm::new(parse_labels(left)?, parse_labels(right)?, cond)
            .ok_or_else(|| ParseTermError::Zero(t.to_string()))
    }
}
