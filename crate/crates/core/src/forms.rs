//! Adder, conjunctive and disjunctive forms and their lax units.
//!
//! On binary inputs the conjunctive form of `(I1, I0)` is `1/2` exactly when
//! every `i in I1` is set and every `i in I0` is clear, and at most `-1/2`
//! otherwise; the disjunctive form is `-1/2` exactly on the dual pattern and
//! at least `1/2` otherwise. The lax units of these forms therefore compute
//! AND / OR of literals.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::geometry::{HalfSpace, LinearForm};
use crate::schemes::{IndexPair, IndexSet};
use crate::Scalar;

/// A vector of bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector(pub Vec<bool>);

impl BinaryVector {
    /// Bits of `value`, least significant bit first.
    pub fn from_index(value: u64, len: usize) -> Self {
        Self((0..len).map(|i| value >> i & 1 == 1).collect())
    }

    pub fn into_inner(self) -> Vec<bool> {
        self.0
    }

    pub fn to_point<S: Scalar>(&self) -> Vec<S> {
        self.0.iter().map(|&b| S::from_bit(b)).collect()
    }
}

impl Deref for BinaryVector {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<bool>> for BinaryVector {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, &b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

fn check_ambient(set: &IndexSet, n: usize) -> Result<()> {
    if set.ambient() == n {
        Ok(())
    } else {
        Err(Error::AmbientMismatch {
            left: n,
            right: set.ambient(),
        })
    }
}

/// Sum of the coordinates indexed by `set`; the zero form when `set` is empty.
pub fn adder<S: Scalar>(set: &IndexSet, n: usize) -> Result<LinearForm<S>> {
    check_ambient(set, n)?;
    let mut weights = vec![S::zero(); n];
    for i in set.iter() {
        weights[i - 1] = S::one();
    }
    Ok(LinearForm::new(S::zero(), weights))
}

fn check_unit_pair(g: &IndexPair, n: usize) -> Result<()> {
    check_ambient(g.ones(), n)?;
    g.require_consistent()?;
    if g.is_empty() {
        return Err(Error::EmptyPair);
    }
    Ok(())
}

/// `Add[I1] - |I1| + 1/2 - Add[I0]`.
pub fn conj_form<S: Scalar>(g: &IndexPair, n: usize) -> Result<LinearForm<S>> {
    check_unit_pair(g, n)?;
    let ones: LinearForm<S> = adder(g.ones(), n)?;
    let zeros: LinearForm<S> = adder(g.zeros(), n)?;
    let bias = S::half() - S::from_count(g.ones().len());
    let sum = ones.add(&zeros.negate());
    Ok(LinearForm::new(bias, sum.weights().to_vec()))
}

/// `Add[I1] - Add[I0] + |I0| - 1/2`.
pub fn disj_form<S: Scalar>(g: &IndexPair, n: usize) -> Result<LinearForm<S>> {
    check_unit_pair(g, n)?;
    let ones: LinearForm<S> = adder(g.ones(), n)?;
    let zeros: LinearForm<S> = adder(g.zeros(), n)?;
    let bias = S::from_count(g.zeros().len()) - S::half();
    let sum = ones.add(&zeros.negate());
    Ok(LinearForm::new(bias, sum.weights().to_vec()))
}

/// Lax unit of the conjunctive form: AND of the pair's literals on bits.
pub fn conj_unit<S: Scalar>(g: &IndexPair, n: usize) -> Result<HalfSpace<S>> {
    HalfSpace::lax(conj_form(g, n)?)
}

/// Lax unit of the disjunctive form: OR of the pair's literals on bits.
pub fn disj_unit<S: Scalar>(g: &IndexPair, n: usize) -> Result<HalfSpace<S>> {
    HalfSpace::lax(disj_form(g, n)?)
}
