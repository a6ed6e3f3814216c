//! Index sets, index pairs and schemes.
//!
//! Indices are 1-based throughout, matching the text formats. A scheme is a
//! list of index pairs plus a selector; pairs are kept in the order given
//! until [`Scheme::normalize`] sorts and deduplicates them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Strictly increasing set of indices in `1..=ambient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    ambient: usize,
    elems: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary indices; duplicates collapse.
    pub fn new(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elems: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = elems.iter().find(|&&i| i == 0 || i > ambient) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                ambient,
            });
        }
        Ok(Self {
            ambient,
            elems: elems.into_iter().collect(),
        })
    }

    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            elems: Vec::new(),
        }
    }

    /// `{1, ..., ambient}`.
    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            elems: (1..=ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elems
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ambient, other.ambient);
        let elems: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        Self {
            ambient: self.ambient,
            elems: elems.into_iter().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|i| !other.contains(i))
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .cmp(&other.elems)
            .then(self.ambient.cmp(&other.ambient))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elems.is_empty() {
            return f.write_str("-");
        }
        for (k, i) in self.elems.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Lexicographic order on index sets; a strict prefix compares less.
pub fn lex_compare_sets(a: &IndexSet, b: &IndexSet) -> Result<Ordering> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch {
            left: a.ambient,
            right: b.ambient,
        });
    }
    Ok(a.elems.cmp(&b.elems))
}

/// `(ones, zeros)`: indices of half-spaces taken as-is and complemented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    ones: IndexSet,
    zeros: IndexSet,
}

impl IndexPair {
    pub fn new(ones: IndexSet, zeros: IndexSet) -> Result<Self> {
        if ones.ambient != zeros.ambient {
            return Err(Error::AmbientMismatch {
                left: ones.ambient,
                right: zeros.ambient,
            });
        }
        Ok(Self { ones, zeros })
    }

    /// Convenience constructor from index slices.
    pub fn from_indices(ambient: usize, ones: &[usize], zeros: &[usize]) -> Result<Self> {
        Self::new(
            IndexSet::new(ambient, ones.iter().copied())?,
            IndexSet::new(ambient, zeros.iter().copied())?,
        )
    }

    /// `(∅, ∅)`.
    pub fn empty(ambient: usize) -> Self {
        Self {
            ones: IndexSet::empty(ambient),
            zeros: IndexSet::empty(ambient),
        }
    }

    /// The pair read off a binary vector: ones where the bit is set.
    pub fn from_bits(bits: &[bool]) -> Self {
        let n = bits.len();
        let ones = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1);
        let zeros = bits.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i + 1);
        Self {
            ones: IndexSet {
                ambient: n,
                elems: ones.collect(),
            },
            zeros: IndexSet {
                ambient: n,
                elems: zeros.collect(),
            },
        }
    }

    pub fn ones(&self) -> &IndexSet {
        &self.ones
    }

    pub fn zeros(&self) -> &IndexSet {
        &self.zeros
    }

    pub fn ambient(&self) -> usize {
        self.ones.ambient
    }

    pub fn is_consistent(&self) -> bool {
        self.ones.is_disjoint(&self.zeros)
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty() && self.zeros.is_empty()
    }

    /// Exchanges the two components.
    pub fn swap(&self) -> Self {
        Self {
            ones: self.zeros.clone(),
            zeros: self.ones.clone(),
        }
    }

    /// Componentwise union.
    pub fn merge(&self, other: &Self) -> Self {
        Self {
            ones: self.ones.union(&other.ones),
            zeros: self.zeros.union(&other.zeros),
        }
    }

    pub(crate) fn require_consistent(&self) -> Result<()> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::InconsistentPair(self.to_string()))
        }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ONES={} ZEROS={}", self.ones, self.zeros)
    }
}

pub fn is_consistent(g: &IndexPair) -> bool {
    g.is_consistent()
}

/// Ones compared first, zeros break ties.
pub fn lex_compare_pairs(a: &IndexPair, b: &IndexPair) -> Result<Ordering> {
    Ok(lex_compare_sets(&a.ones, &b.ones)?.then(lex_compare_sets(&a.zeros, &b.zeros)?))
}

/// Index pairs with a selector `J` over their positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme {
    ambient: usize,
    pairs: Vec<IndexPair>,
    selector: IndexSet,
}

impl Scheme {
    pub fn new(ambient: usize, pairs: Vec<IndexPair>, selector: IndexSet) -> Result<Self> {
        if let Some(p) = pairs.iter().find(|p| p.ambient() != ambient) {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: p.ambient(),
            });
        }
        if selector.ambient != pairs.len() {
            return Err(Error::AmbientMismatch {
                left: pairs.len(),
                right: selector.ambient,
            });
        }
        Ok(Self {
            ambient,
            pairs,
            selector,
        })
    }

    /// A scheme that selects every one of `pairs`.
    pub fn selecting_all(ambient: usize, pairs: Vec<IndexPair>) -> Result<Self> {
        let q = pairs.len();
        Self::new(ambient, pairs, IndexSet::full(q))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pairs(&self) -> &[IndexPair] {
        &self.pairs
    }

    pub fn selector(&self) -> &IndexSet {
        &self.selector
    }

    pub fn multiplicity(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_selected(&self, position: usize) -> bool {
        self.selector.contains(position + 1)
    }

    /// Pairs picked out by `J`, in selector order.
    pub fn selected(&self) -> impl Iterator<Item = &IndexPair> + '_ {
        self.selector.iter().map(move |j| &self.pairs[j - 1])
    }

    pub fn is_normalized(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0] < w[1])
    }

    /// Sorts pairs, merges duplicates and re-indexes the selector. A merged
    /// pair is selected if any of its copies was.
    pub fn normalize(&self) -> Self {
        let mut tagged: Vec<(IndexPair, bool)> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), self.is_selected(k)))
            .collect();
        tagged.sort_by(|a, b| a.0.cmp(&b.0));
        let mut pairs: Vec<IndexPair> = Vec::with_capacity(tagged.len());
        let mut chosen: Vec<bool> = Vec::with_capacity(tagged.len());
        for (p, sel) in tagged {
            if pairs.last() == Some(&p) {
                *chosen.last_mut().unwrap() |= sel;
            } else {
                pairs.push(p);
                chosen.push(sel);
            }
        }
        let selector = IndexSet {
            ambient: pairs.len(),
            elems: chosen
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .map(|(k, _)| k + 1)
                .collect(),
        };
        Self {
            ambient: self.ambient,
            pairs,
            selector,
        }
    }

    /// Every pair swapped, selector unchanged.
    pub fn swap_all(&self) -> Self {
        Self {
            ambient: self.ambient,
            pairs: self.pairs.iter().map(IndexPair::swap).collect(),
            selector: self.selector.clone(),
        }
    }
}

pub fn normalize_scheme(d: &Scheme) -> Scheme {
    d.normalize()
}
