//! Linear forms and lax/strict half-spaces.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::{Rational, Scalar};

/// Affine function `bias + w1*y1 + ... + wn*yn`.
///
/// Constant forms (all weights zero) are allowed here; [`HalfSpace`]
/// refuses them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm<S = Rational> {
    bias: S,
    weights: Vec<S>,
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(bias: S, weights: Vec<S>) -> Self {
        Self { bias, weights }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(S::zero(), vec![S::zero(); dim])
    }

    pub fn bias(&self) -> &S {
        &self.bias
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn is_constant(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }

    /// Evaluates the form at `y`.
    pub fn eval(&self, y: &[S]) -> Result<S> {
        check_dim(self.dim(), y.len())?;
        Ok(self.eval_unchecked(y))
    }

    pub(crate) fn eval_unchecked(&self, y: &[S]) -> S {
        self.weights
            .iter()
            .zip(y)
            .fold(self.bias.clone(), |acc, (w, v)| {
                if w.is_zero() {
                    acc
                } else {
                    acc + w.clone() * v.clone()
                }
            })
    }

    /// Evaluates on a binary vector without building a scalar point.
    pub(crate) fn eval_bits(&self, bits: &[bool]) -> S {
        self.weights
            .iter()
            .zip(bits)
            .filter(|(_, &b)| b)
            .fold(self.bias.clone(), |acc, (w, _)| acc + w.clone())
    }

    pub fn negate(&self) -> Self {
        Self::new(
            -self.bias.clone(),
            self.weights.iter().map(|w| -w.clone()).collect(),
        )
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(
            self.bias.clone() * factor.clone(),
            self.weights.iter().map(|w| w.clone() * factor.clone()).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::new(
            self.bias.clone() + other.bias.clone(),
            self.weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

/// `>=` (lax) or `>` (strict).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    Lax,
    Strict,
}

impl InequalityKind {
    pub fn flip(self) -> Self {
        match self {
            InequalityKind::Lax => InequalityKind::Strict,
            InequalityKind::Strict => InequalityKind::Lax,
        }
    }

    /// Whether `value` satisfies `value >= 0` or `value > 0`.
    pub fn holds<S: Scalar>(self, value: &S) -> bool {
        match self {
            InequalityKind::Lax => !value.lt_zero(),
            InequalityKind::Strict => value.gt_zero(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            InequalityKind::Lax => ">=",
            InequalityKind::Strict => ">",
        }
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Solution set of `f >= 0` or `f > 0` for a non-constant form `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace<S = Rational> {
    form: LinearForm<S>,
    kind: InequalityKind,
}

impl<S: Scalar> HalfSpace<S> {
    pub fn new(form: LinearForm<S>, kind: InequalityKind) -> Result<Self> {
        if form.is_constant() {
            return Err(Error::ConstantForm);
        }
        Ok(Self { form, kind })
    }

    pub fn lax(form: LinearForm<S>) -> Result<Self> {
        Self::new(form, InequalityKind::Lax)
    }

    pub fn strict(form: LinearForm<S>) -> Result<Self> {
        Self::new(form, InequalityKind::Strict)
    }

    pub fn form(&self) -> &LinearForm<S> {
        &self.form
    }

    pub fn kind(&self) -> InequalityKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn contains(&self, y: &[S]) -> Result<bool> {
        check_dim(self.dim(), y.len())?;
        Ok(self.contains_unchecked(y))
    }

    pub(crate) fn contains_unchecked(&self, y: &[S]) -> bool {
        self.kind.holds(&self.form.eval_unchecked(y))
    }

    pub(crate) fn contains_bits(&self, bits: &[bool]) -> bool {
        self.kind.holds(&self.form.eval_bits(bits))
    }

    /// `R^m - H[f; >=] = H[-f; >]` and `R^m - H[f; >] = H[-f; >=]`.
    pub fn complement(&self) -> Self {
        Self {
            form: self.form.negate(),
            kind: self.kind.flip(),
        }
    }
}

/// Free-function spelling of [`LinearForm::eval`].
pub fn eval_form<S: Scalar>(f: &LinearForm<S>, y: &[S]) -> Result<S> {
    f.eval(y)
}

pub fn halfspace_contains<S: Scalar>(h: &HalfSpace<S>, y: &[S]) -> Result<bool> {
    h.contains(y)
}

pub fn complement<S: Scalar>(h: &HalfSpace<S>) -> HalfSpace<S> {
    h.complement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rational;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn form(bias: &str, ws: &[&str]) -> LinearForm {
        LinearForm::new(q(bias), ws.iter().map(|w| q(w)).collect())
    }

    fn pt(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(form("1/2", &["1", "-1"]).eval(&pt(&["1", "0"])).unwrap(), q("3/2"));
        assert_eq!(form("0", &["1"]).eval(&pt(&["0"])).unwrap(), q("0"));
        assert_eq!(
            form("-3/2", &["1", "-1", "1"]).eval(&pt(&["1", "0", "1"])).unwrap(),
            q("1/2")
        );
    }

    #[test]
    fn eval_rejects_wrong_dimension() {
        let err = form("0", &["1", "1"]).eval(&pt(&["1"])).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 1 });
    }

    #[test]
    fn containment_examples() {
        let lax = HalfSpace::lax(form("0", &["1"])).unwrap();
        let strict = HalfSpace::strict(form("0", &["1"])).unwrap();
        assert!(lax.contains(&pt(&["0"])).unwrap());
        assert!(!strict.contains(&pt(&["0"])).unwrap());
        let h = HalfSpace::strict(form("-1", &["0", "1"])).unwrap();
        assert!(!h.contains(&pt(&["2", "1/2"])).unwrap());
    }

    #[test]
    fn complement_examples() {
        let h = HalfSpace::lax(form("0", &["1"])).unwrap();
        let c = h.complement();
        assert_eq!(c, HalfSpace::strict(form("0", &["-1"])).unwrap());
        assert_eq!(c.complement(), h);
        let g = HalfSpace::lax(form("2", &["1", "-1"])).unwrap();
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn constant_half_space_rejected() {
        assert_eq!(
            HalfSpace::lax(form("1", &["0", "0"])).unwrap_err(),
            Error::ConstantForm
        );
    }

    #[test]
    fn generic_over_float() {
        let h = HalfSpace::lax(LinearForm::new(-1.0f64, vec![1.0, 1.0])).unwrap();
        assert!(h.contains(&[0.5, 0.5]).unwrap());
        assert!(!h.complement().contains(&[0.5, 0.5]).unwrap());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn half_space(dim: usize) -> impl Strategy<Value = HalfSpace> {
        (
            small_rational(),
            proptest::collection::vec(small_rational(), dim),
            any::<bool>(),
        )
            .prop_filter_map("constant form", |(b, ws, strict)| {
                let kind = if strict { InequalityKind::Strict } else { InequalityKind::Lax };
                HalfSpace::new(LinearForm::new(b, ws), kind).ok()
            })
    }

    proptest! {
        #[test]
        fn complement_partitions_space(
            h in half_space(3),
            y in proptest::collection::vec(small_rational(), 3),
        ) {
            let inside = h.contains(&y).unwrap() as u8;
            let outside = h.complement().contains(&y).unwrap() as u8;
            prop_assert_eq!(inside + outside, 1);
            prop_assert_eq!(h.complement().complement(), h);
        }

        #[test]
        fn eval_is_affine(
            h in half_space(2),
            a in proptest::collection::vec(small_rational(), 2),
            b in proptest::collection::vec(small_rational(), 2),
            lambda in small_rational(),
        ) {
            let f = h.form();
            let one = Rational::from_integer(1.into());
            let mix: Vec<Rational> = a.iter().zip(&b)
                .map(|(x, y)| lambda.clone() * x + (one.clone() - lambda.clone()) * y)
                .collect();
            let lhs = f.eval(&mix).unwrap();
            let rhs = lambda.clone() * f.eval(&a).unwrap()
                + (one - lambda) * f.eval(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
