//! Synthesis of DNF/CNF networks from schemes, extraction of a DNF scheme
//! from any single-output network, three-layer normalization and
//! equivalence checking.

use rayon::prelude::*;

use crate::error::{check_dim, Error, Result};
use crate::feasibility::{system_of_cell, Solver};
use crate::forms::{conj_unit, disj_unit, BinaryVector};
use crate::geometry::HalfSpace;
use crate::network::{PerceptronLayer, PerceptronNetwork};
use crate::polyhedra::{Mode, PresentedPolyhedron};
use crate::sampling::{random_points, DEFAULT_SEED};
use crate::schemes::{IndexPair, IndexSet, Scheme};
use crate::{Rational, Scalar};

/// Default cap on the first-layer width accepted by extraction.
pub const DEFAULT_WIDTH_CAP: usize = 20;

fn selector_pair(scheme: &Scheme) -> Result<IndexPair> {
    if scheme.selector().is_empty() {
        return Err(Error::EmptySelector);
    }
    IndexPair::new(scheme.selector().clone(), IndexSet::empty(scheme.multiplicity()))
}

fn check_scheme_over<S: Scalar>(halfspaces: &[HalfSpace<S>], scheme: &Scheme) -> Result<()> {
    if scheme.ambient() != halfspaces.len() {
        return Err(Error::AmbientMismatch {
            left: halfspaces.len(),
            right: scheme.ambient(),
        });
    }
    Ok(())
}

/// `(p[H], conjunctive layer of all pairs, disjunctive unit of J)`.
///
/// Every pair, selected or not, becomes a unit of the second layer, so all
/// pairs must be consistent and nonempty.
pub fn build_dnf_network<S: Scalar>(halfspaces: &[HalfSpace<S>], scheme: &Scheme) -> Result<PerceptronNetwork<S>> {
    build(halfspaces, scheme, Mode::Dnf)
}

/// `(p[H], disjunctive layer of all pairs, conjunctive unit of J)`.
pub fn build_cnf_network<S: Scalar>(halfspaces: &[HalfSpace<S>], scheme: &Scheme) -> Result<PerceptronNetwork<S>> {
    build(halfspaces, scheme, Mode::Cnf)
}

pub fn build_network<S: Scalar>(halfspaces: &[HalfSpace<S>], scheme: &Scheme, mode: Mode) -> Result<PerceptronNetwork<S>> {
    build(halfspaces, scheme, mode)
}

fn build<S: Scalar>(halfspaces: &[HalfSpace<S>], scheme: &Scheme, mode: Mode) -> Result<PerceptronNetwork<S>> {
    check_scheme_over(halfspaces, scheme)?;
    let top = selector_pair(scheme)?;
    let n = scheme.ambient();
    let q = scheme.multiplicity();
    let first = PerceptronLayer::new(halfspaces.to_vec())?;
    let (middle, last) = match mode {
        Mode::Dnf => (
            scheme.pairs().iter().map(|g| conj_unit(g, n)).collect::<Result<Vec<_>>>()?,
            disj_unit(&top, q)?,
        ),
        Mode::Cnf => (
            scheme.pairs().iter().map(|g| disj_unit(g, n)).collect::<Result<Vec<_>>>()?,
            conj_unit(&top, q)?,
        ),
    };
    PerceptronNetwork::new(vec![first, PerceptronLayer::new(middle)?, PerceptronLayer::new(vec![last])?])
}

/// How extraction treats a network whose tail never fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstantPolicy {
    /// Refuse with [`Error::EmptyScheme`].
    #[default]
    Strict,
    /// Return the empty scheme; normalization returns [`Normalized::Constant`].
    Permissive,
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    pub prune: bool,
    pub width_cap: usize,
    pub constants: ConstantPolicy,
    pub solver: Solver,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            prune: false,
            width_cap: DEFAULT_WIDTH_CAP,
            constants: ConstantPolicy::Strict,
            solver: Solver::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionReport {
    pub scheme: Scheme,
    /// `2^n1`.
    pub enumerated_count: u64,
    /// First-layer vectors on which the tail outputs 1.
    pub accepted_count: u64,
    /// Accepted vectors dropped because their cell is empty.
    pub pruned_count: u64,
}

impl ExtractionReport {
    /// The extracted DNF polyhedron over the network's first layer.
    pub fn polyhedron<S: Scalar>(&self, p: &PerceptronNetwork<S>) -> Result<PresentedPolyhedron<S>> {
        PresentedPolyhedron::new(
            p.input_dim(),
            p.first_layer().units().to_vec(),
            self.scheme.clone(),
            Mode::Dnf,
        )
    }
}

fn check_width(n1: usize, cap: usize) -> Result<()> {
    if n1 > cap || n1 >= 64 {
        Err(Error::SizeCap {
            what: "first-layer width",
            size: n1,
            cap: cap.min(63),
        })
    } else {
        Ok(())
    }
}

/// Enumerates every first-layer bit vector and keeps those the tail maps
/// to 1, each as the pair `({i: b_i = 1}, {i: b_i = 0})`.
pub fn extract_scheme<S: Scalar>(p: &PerceptronNetwork<S>, opts: &ExtractOptions) -> Result<ExtractionReport> {
    p.require_single_output()?;
    let n1 = p.first_layer().output_dim();
    check_width(n1, opts.width_cap)?;
    let total = 1u64 << n1;
    let accepted: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&v| p.tail(&BinaryVector::from_index(v, n1))[0])
        .collect();
    let accepted_count = accepted.len() as u64;
    let mut pairs: Vec<IndexPair> = accepted
        .into_iter()
        .map(|v| IndexPair::from_bits(&BinaryVector::from_index(v, n1)))
        .collect();
    let mut pruned_count = 0;
    if opts.prune {
        let halfspaces = p.first_layer().units();
        let dim = p.input_dim();
        let keep: Vec<bool> = pairs
            .par_iter()
            .map(|g| opts.solver.is_feasible(&system_of_cell(halfspaces, g, dim)?))
            .collect::<Result<_>>()?;
        let before = pairs.len();
        pairs = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
        pruned_count = (before - pairs.len()) as u64;
    }
    pairs.sort();
    if pairs.is_empty() && opts.constants == ConstantPolicy::Strict {
        return Err(Error::EmptyScheme);
    }
    Ok(ExtractionReport {
        scheme: Scheme::selecting_all(n1, pairs)?,
        enumerated_count: total,
        accepted_count,
        pruned_count,
    })
}

/// Drops selected pairs whose cell over `halfspaces` is empty, together
/// with their position in the pair list.
pub fn prune_empty_cells<S: Scalar>(
    halfspaces: &[HalfSpace<S>],
    dim: usize,
    scheme: &Scheme,
    solver: &Solver,
) -> Result<Scheme> {
    check_scheme_over(halfspaces, scheme)?;
    let drop: Vec<bool> = scheme
        .pairs()
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            if !scheme.is_selected(k) {
                return Ok(false);
            }
            Ok(!solver.is_feasible(&system_of_cell(halfspaces, g, dim)?)?)
        })
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    let mut selected = Vec::new();
    for (k, g) in scheme.pairs().iter().enumerate() {
        if drop[k] {
            continue;
        }
        pairs.push(g.clone());
        if scheme.is_selected(k) {
            selected.push(pairs.len());
        }
    }
    let q = pairs.len();
    Scheme::new(scheme.ambient(), pairs, IndexSet::new(q, selected)?)
}

/// Result of permissive normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized<S = Rational> {
    Network(PerceptronNetwork<S>),
    /// The network never fires; no DNF network exists for it.
    Constant { input_dim: usize, value: bool },
}

impl<S: Scalar> Normalized<S> {
    pub fn eval(&self, x: &[S]) -> Result<bool> {
        match self {
            Normalized::Network(p) => p.eval(x),
            Normalized::Constant { input_dim, value } => {
                check_dim(*input_dim, x.len())?;
                Ok(*value)
            }
        }
    }
}

/// DNF network over the first layer of `p` with the extracted scheme.
pub fn normalize_three_layers<S: Scalar>(p: &PerceptronNetwork<S>) -> Result<PerceptronNetwork<S>> {
    match normalize_three_layers_with(p, &ExtractOptions::default())? {
        Normalized::Network(n) => Ok(n),
        Normalized::Constant { .. } => Err(Error::EmptyScheme),
    }
}

pub fn normalize_three_layers_with<S: Scalar>(p: &PerceptronNetwork<S>, opts: &ExtractOptions) -> Result<Normalized<S>> {
    let report = extract_scheme(p, opts)?;
    if report.scheme.selector().is_empty() {
        return Ok(Normalized::Constant {
            input_dim: p.input_dim(),
            value: false,
        });
    }
    Ok(Normalized::Network(build_dnf_network(p.first_layer().units(), &report.scheme)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Compare forward passes on `samples` seeded random points.
    Sampled { seed: u64, samples: usize },
    /// Compare tails on every realizable first-layer vector.
    Exact,
}

impl EquivalenceMode {
    pub fn sampled_default() -> Self {
        EquivalenceMode::Sampled {
            seed: DEFAULT_SEED,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<S = Rational> {
    Equivalent,
    /// A sampled point where the networks disagree, with its first-layer
    /// bits under the first network.
    CounterexamplePoint { point: Vec<S>, bits: BinaryVector },
    /// A realizable first-layer vector where the tails disagree, with a
    /// point of its cell.
    CounterexampleBits { bits: BinaryVector, witness: Option<Vec<S>> },
}

impl<S> Verdict<S> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EquivalenceOptions {
    pub width_cap: usize,
    /// Coordinate range for sampled points.
    pub radius: i64,
    pub solver: Solver,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        Self {
            width_cap: DEFAULT_WIDTH_CAP,
            radius: 8,
            solver: Solver::default(),
        }
    }
}

pub fn check_equivalence<S: Scalar>(
    a: &PerceptronNetwork<S>,
    b: &PerceptronNetwork<S>,
    mode: EquivalenceMode,
) -> Result<Verdict<S>> {
    check_equivalence_with(a, b, mode, &EquivalenceOptions::default())
}

pub fn check_equivalence_with<S: Scalar>(
    a: &PerceptronNetwork<S>,
    b: &PerceptronNetwork<S>,
    mode: EquivalenceMode,
    opts: &EquivalenceOptions,
) -> Result<Verdict<S>> {
    a.require_single_output()?;
    b.require_single_output()?;
    check_dim(a.input_dim(), b.input_dim())?;
    match mode {
        EquivalenceMode::Sampled { seed, samples } => {
            let points: Vec<Vec<S>> = random_points(seed, samples, a.input_dim(), opts.radius);
            let hit = points
                .par_iter()
                .position_first(|x| a.forward(x).map(|v| v[0]) != b.forward(x).map(|v| v[0]));
            Ok(match hit {
                None => Verdict::Equivalent,
                Some(k) => {
                    let point = points[k].clone();
                    let bits = a.first_layer().apply(&point)?;
                    Verdict::CounterexamplePoint { point, bits }
                }
            })
        }
        EquivalenceMode::Exact => {
            if a.first_layer() != b.first_layer() {
                return Err(Error::FirstLayerMismatch);
            }
            let n1 = a.first_layer().output_dim();
            check_width(n1, opts.width_cap)?;
            let mut disagree: Vec<IndexPair> = (0..1u64 << n1)
                .into_par_iter()
                .filter_map(|v| {
                    let bits = BinaryVector::from_index(v, n1);
                    (a.tail(&bits)[0] != b.tail(&bits)[0]).then(|| IndexPair::from_bits(&bits))
                })
                .collect();
            disagree.sort();
            let halfspaces = a.first_layer().units();
            for g in disagree {
                let system = system_of_cell(halfspaces, &g, a.input_dim())?;
                if let Some(w) = opts.solver.witness(&system)? {
                    let bits = BinaryVector((1..=n1).map(|i| g.ones().contains(i)).collect());
                    return Ok(Verdict::CounterexampleBits { bits, witness: Some(w) });
                }
            }
            Ok(Verdict::Equivalent)
        }
    }
}
