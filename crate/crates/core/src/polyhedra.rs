//! Cells, cocells and DNF/CNF polyhedra presented by schemes, with the
//! Boolean operations on presentations.
//!
//! Presentations are never compared syntactically; two presentations are
//! the same polyhedron when their membership functions agree.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::geometry::HalfSpace;
use crate::schemes::{IndexPair, IndexSet, Scheme};
use crate::{Rational, Scalar};

/// Upper bound on the terms produced while distributing one normal form
/// into the other.
pub const DEFAULT_TERM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Union of cells.
    Dnf,
    /// Intersection of cocells.
    Cnf,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Dnf => "DNF",
            Mode::Cnf => "CNF",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether a half-space presentation describes `H_i` or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

fn check_pair_ambient(halfspaces_len: usize, g: &IndexPair) -> Result<()> {
    if g.ambient() == halfspaces_len {
        Ok(())
    } else {
        Err(Error::AmbientMismatch {
            left: halfspaces_len,
            right: g.ambient(),
        })
    }
}

/// `x` lies in every `H_i` (`i` in ones) and in no `H_i` (`i` in zeros).
/// Inconsistent pairs give the empty cell; `(∅, ∅)` gives the whole space.
pub fn cell_contains<S: Scalar>(halfspaces: &[HalfSpace<S>], g: &IndexPair, x: &[S]) -> Result<bool> {
    check_pair_ambient(halfspaces.len(), g)?;
    for h in halfspaces {
        check_dim(h.dim(), x.len())?;
    }
    Ok(g.ones().iter().all(|i| halfspaces[i - 1].contains_unchecked(x))
        && g.zeros().iter().all(|i| !halfspaces[i - 1].contains_unchecked(x)))
}

/// `x` lies in some `H_i` (`i` in ones) or outside some `H_i` (`i` in
/// zeros). `(∅, ∅)` gives the empty set.
pub fn cocell_contains<S: Scalar>(halfspaces: &[HalfSpace<S>], g: &IndexPair, x: &[S]) -> Result<bool> {
    check_pair_ambient(halfspaces.len(), g)?;
    for h in halfspaces {
        check_dim(h.dim(), x.len())?;
    }
    Ok(g.ones().iter().any(|i| halfspaces[i - 1].contains_unchecked(x))
        || g.zeros().iter().any(|i| !halfspaces[i - 1].contains_unchecked(x)))
}

/// Cell membership read off first-layer bits.
pub fn cell_holds(bits: &[bool], g: &IndexPair) -> bool {
    g.ones().iter().all(|i| bits[i - 1]) && g.zeros().iter().all(|i| !bits[i - 1])
}

pub fn cocell_holds(bits: &[bool], g: &IndexPair) -> bool {
    g.ones().iter().any(|i| bits[i - 1]) || g.zeros().iter().any(|i| !bits[i - 1])
}

/// A DNF or CNF polyhedron over a tuple of half-spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PresentedPolyhedron<S = Rational> {
    dim: usize,
    halfspaces: Vec<HalfSpace<S>>,
    scheme: Scheme,
    mode: Mode,
}

impl<S: Scalar> PresentedPolyhedron<S> {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace<S>>, scheme: Scheme, mode: Mode) -> Result<Self> {
        for h in &halfspaces {
            check_dim(dim, h.dim())?;
        }
        if scheme.ambient() != halfspaces.len() {
            return Err(Error::AmbientMismatch {
                left: halfspaces.len(),
                right: scheme.ambient(),
            });
        }
        for g in scheme.selected() {
            g.require_consistent()?;
        }
        Ok(Self {
            dim,
            halfspaces,
            scheme,
            mode,
        })
    }

    /// Dimension taken from the first half-space.
    pub fn over(halfspaces: Vec<HalfSpace<S>>, scheme: Scheme, mode: Mode) -> Result<Self> {
        let dim = halfspaces.first().map(HalfSpace::dim).ok_or(Error::EmptyLayer)?;
        Self::new(dim, halfspaces, scheme, mode)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace<S>] {
        &self.halfspaces
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Membership through the first-layer bit vector of `x`.
    pub fn member(&self, x: &[S]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        let bits: Vec<bool> = self.halfspaces.iter().map(|h| h.contains_unchecked(x)).collect();
        Ok(self.member_bits(&bits))
    }

    pub fn member_bits(&self, bits: &[bool]) -> bool {
        match self.mode {
            Mode::Dnf => self.scheme.selected().any(|g| cell_holds(bits, g)),
            Mode::Cnf => self.scheme.selected().all(|g| cocell_holds(bits, g)),
        }
    }

    fn with_pairs(&self, pairs: Vec<IndexPair>, mode: Mode) -> Result<Self> {
        let scheme = Scheme::selecting_all(self.halfspaces.len(), pairs)?.normalize();
        Ok(Self {
            dim: self.dim,
            halfspaces: self.halfspaces.clone(),
            scheme,
            mode,
        })
    }

    fn require_mode(&self, mode: Mode) -> Result<()> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                expected: mode.name(),
            })
        }
    }

    fn require_same_halfspaces(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim && self.halfspaces == other.halfspaces {
            Ok(())
        } else {
            Err(Error::HalfSpaceMismatch)
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.require_mode(Mode::Dnf)?;
        other.require_mode(Mode::Dnf)?;
        self.require_same_halfspaces(other)?;
        let pairs = self.scheme.selected().chain(other.scheme.selected()).cloned().collect();
        self.with_pairs(pairs, Mode::Dnf)
    }

    /// Pairwise merge of selected cells; inconsistent merges are empty cells
    /// and are dropped.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.require_mode(Mode::Dnf)?;
        other.require_mode(Mode::Dnf)?;
        self.require_same_halfspaces(other)?;
        let pairs = self
            .scheme
            .selected()
            .flat_map(|a| other.scheme.selected().map(move |b| a.merge(b)))
            .filter(IndexPair::is_consistent)
            .collect();
        self.with_pairs(pairs, Mode::Dnf)
    }

    /// DNF complement: swap every selected cell into its complementary
    /// cocell, then distribute back into DNF.
    pub fn complement(&self) -> Result<Self> {
        self.require_mode(Mode::Dnf)?;
        let clauses: Vec<IndexPair> = self.scheme.selected().map(IndexPair::swap).collect();
        let pairs = distribute(&clauses, self.halfspaces.len(), DEFAULT_TERM_CAP)?;
        self.with_pairs(pairs, Mode::Dnf)
    }

    /// Complement of a CNF presentation as a DNF presentation: every pair
    /// swapped, nothing distributed.
    pub fn complement_cnf(&self) -> Result<Self> {
        self.require_mode(Mode::Cnf)?;
        Ok(Self {
            dim: self.dim,
            halfspaces: self.halfspaces.clone(),
            scheme: self.scheme.swap_all(),
            mode: Mode::Dnf,
        })
    }

    pub fn cnf_to_dnf(&self) -> Result<Self> {
        self.require_mode(Mode::Cnf)?;
        let clauses: Vec<IndexPair> = self.scheme.selected().cloned().collect();
        let pairs = distribute(&clauses, self.halfspaces.len(), DEFAULT_TERM_CAP)?;
        self.with_pairs(pairs, Mode::Dnf)
    }

    pub fn dnf_to_cnf(&self) -> Result<Self> {
        self.require_mode(Mode::Dnf)?;
        let cells: Vec<IndexPair> = self.scheme.selected().cloned().collect();
        let pairs = distribute(&cells, self.halfspaces.len(), DEFAULT_TERM_CAP)?;
        self.with_pairs(pairs, Mode::Cnf)
    }

    /// The same polyhedron presented in `mode`.
    pub fn to_mode(&self, mode: Mode) -> Result<Self> {
        match (self.mode, mode) {
            (Mode::Dnf, Mode::Cnf) => self.dnf_to_cnf(),
            (Mode::Cnf, Mode::Dnf) => self.cnf_to_dnf(),
            _ => Ok(self.clone()),
        }
    }
}

/// Every choice of one literal per group, merged into a single pair.
///
/// Read as CNF -> DNF the groups are clauses and the results are cells; read
/// as DNF -> CNF the groups are cells and the results are clauses. In both
/// directions an inconsistent merge denotes a neutral element (empty cell,
/// tautological clause) and is dropped. Partial products are deduplicated
/// after each group, so the working set never exceeds `3^n`.
fn distribute(groups: &[IndexPair], n: usize, cap: usize) -> Result<Vec<IndexPair>> {
    let mut terms: BTreeSet<IndexPair> = BTreeSet::new();
    terms.insert(IndexPair::empty(n));
    for group in groups {
        let literals: Vec<IndexPair> = group
            .ones()
            .iter()
            .map(|i| IndexPair::new(IndexSet::new(n, [i]).unwrap(), IndexSet::empty(n)).unwrap())
            .chain(
                group
                    .zeros()
                    .iter()
                    .map(|i| IndexPair::new(IndexSet::empty(n), IndexSet::new(n, [i]).unwrap()).unwrap()),
            )
            .collect();
        let mut next = BTreeSet::new();
        for t in &terms {
            for l in &literals {
                let merged = t.merge(l);
                if merged.is_consistent() {
                    next.insert(merged);
                }
            }
            if next.len() > cap {
                return Err(Error::SizeCap {
                    what: "normal-form distribution",
                    size: next.len(),
                    cap,
                });
            }
        }
        terms = next;
        if terms.is_empty() {
            break;
        }
    }
    Ok(terms.into_iter().collect())
}

/// `({i}, ∅)` for `H_i`, `(∅, {i})` for its complement, selected alone.
/// Valid as both a DNF and a CNF presentation.
pub fn halfspace_presentation(i: usize, n: usize, side: Side) -> Result<Scheme> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, ambient: n });
    }
    let set = IndexSet::new(n, [i])?;
    let pair = match side {
        Side::Inside => IndexPair::new(set, IndexSet::empty(n))?,
        Side::Outside => IndexPair::new(IndexSet::empty(n), set)?,
    };
    Scheme::selecting_all(n, vec![pair])
}

pub fn member<S: Scalar>(k: &PresentedPolyhedron<S>, x: &[S]) -> Result<bool> {
    k.member(x)
}

pub fn union<S: Scalar>(a: &PresentedPolyhedron<S>, b: &PresentedPolyhedron<S>) -> Result<PresentedPolyhedron<S>> {
    a.union(b)
}

pub fn intersection<S: Scalar>(
    a: &PresentedPolyhedron<S>,
    b: &PresentedPolyhedron<S>,
) -> Result<PresentedPolyhedron<S>> {
    a.intersection(b)
}

pub fn complement_poly<S: Scalar>(k: &PresentedPolyhedron<S>) -> Result<PresentedPolyhedron<S>> {
    k.complement()
}

pub fn cnf_to_dnf<S: Scalar>(k: &PresentedPolyhedron<S>) -> Result<PresentedPolyhedron<S>> {
    k.cnf_to_dnf()
}

pub fn dnf_to_cnf<S: Scalar>(k: &PresentedPolyhedron<S>) -> Result<PresentedPolyhedron<S>> {
    k.dnf_to_cnf()
}
