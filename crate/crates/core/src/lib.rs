//! Exact polyhedra over tuples of half-spaces and the perceptron networks
//! that compute their characteristic functions.
//!
//! A polyhedron over `H = (H_1, ..., H_n)` is presented by a [`Scheme`]: a
//! list of index pairs, each naming a cell (or cocell) over `H`, plus a
//! selector saying which cells are united (DNF) or which cocells are
//! intersected (CNF). Every such presentation becomes a three-layer network
//! ([`build_dnf_network`], [`build_cnf_network`]); conversely the forward
//! pass of any single-output network is the DNF polyhedron obtained by
//! enumerating its first-layer bit vectors ([`extract_scheme`]), which also
//! yields the three-layer normal form ([`normalize_three_layers`]).
//!
//! Everything is generic over [`Scalar`]; the crate-level aliases fix the
//! scalar to the exact [`Rational`] type used by the text formats.

pub mod cli;
mod error;
pub mod feasibility;
pub mod forms;
pub mod geometry;
pub mod network;
pub mod polyhedra;
pub mod sampling;
mod scalar;
pub mod schemes;
pub mod text;
pub mod transform;

pub use error::{Error, Result};
pub use feasibility::{is_feasible, system_of_cell, witness, Constraint, InequalitySystem, Solver};
pub use forms::{adder, conj_form, conj_unit, disj_form, disj_unit, BinaryVector};
pub use geometry::{complement, eval_form, halfspace_contains, HalfSpace, InequalityKind, LinearForm};
pub use network::{architecture, forward, layer_apply, layer_of, PerceptronLayer, PerceptronNetwork};
pub use polyhedra::{
    cell_contains, cnf_to_dnf, cocell_contains, complement_poly, dnf_to_cnf, halfspace_presentation, intersection,
    member, union, Mode, PresentedPolyhedron, Side,
};
pub use scalar::Scalar;
pub use schemes::{
    is_consistent, lex_compare_pairs, lex_compare_sets, normalize_scheme, IndexPair, IndexSet, Scheme,
};
pub use transform::{
    build_cnf_network, build_dnf_network, build_network, check_equivalence, check_equivalence_with, extract_scheme,
    normalize_three_layers, normalize_three_layers_with, prune_empty_cells, ConstantPolicy, EquivalenceMode,
    EquivalenceOptions, ExtractOptions, ExtractionReport, Normalized, Verdict,
};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// A point of `R^m` with exact coordinates.
pub type Point = Vec<Rational>;

pub type HalfSpaceF64 = HalfSpace<f64>;
pub type NetworkF64 = PerceptronNetwork<f64>;
/// Fixed-width rationals; fast, but elimination can overflow on large systems.
pub type Ratio64 = num_rational::Ratio<i64>;
pub type HalfSpace64 = HalfSpace<Ratio64>;
pub type Network64 = PerceptronNetwork<Ratio64>;
