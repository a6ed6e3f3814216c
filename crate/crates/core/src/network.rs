//! Perceptron layers, networks and the exact forward pass.

use crate::error::{check_dim, Error, Result};
use crate::forms::BinaryVector;
use crate::geometry::HalfSpace;
use crate::{Rational, Scalar};

/// A tuple of half-spaces over a common `R^m`, read as a map `R^m -> B^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerceptronLayer<S = Rational> {
    units: Vec<HalfSpace<S>>,
}

impl<S: Scalar> PerceptronLayer<S> {
    pub fn new(units: Vec<HalfSpace<S>>) -> Result<Self> {
        let first = units.first().ok_or(Error::EmptyLayer)?;
        let expected = first.dim();
        if let Some((unit, h)) = units.iter().enumerate().find(|(_, h)| h.dim() != expected) {
            return Err(Error::MixedDimensions {
                unit: unit + 1,
                expected,
                found: h.dim(),
            });
        }
        Ok(Self { units })
    }

    pub fn units(&self) -> &[HalfSpace<S>] {
        &self.units
    }

    pub fn input_dim(&self) -> usize {
        self.units[0].dim()
    }

    pub fn output_dim(&self) -> usize {
        self.units.len()
    }

    pub fn apply(&self, x: &[S]) -> Result<BinaryVector> {
        check_dim(self.input_dim(), x.len())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[S]) -> BinaryVector {
        BinaryVector(self.units.iter().map(|h| h.contains_unchecked(x)).collect())
    }

    pub(crate) fn apply_bits(&self, bits: &[bool]) -> BinaryVector {
        BinaryVector(self.units.iter().map(|h| h.contains_bits(bits)).collect())
    }
}

pub fn layer_of<S: Scalar>(halfspaces: Vec<HalfSpace<S>>) -> Result<PerceptronLayer<S>> {
    PerceptronLayer::new(halfspaces)
}

pub fn layer_apply<S: Scalar>(layer: &PerceptronLayer<S>, x: &[S]) -> Result<BinaryVector> {
    layer.apply(x)
}

/// A composable sequence of layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerceptronNetwork<S = Rational> {
    layers: Vec<PerceptronLayer<S>>,
}

impl<S: Scalar> PerceptronNetwork<S> {
    pub fn new(layers: Vec<PerceptronLayer<S>>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::NoLayers);
        }
        for (k, w) in layers.windows(2).enumerate() {
            if w[0].output_dim() != w[1].input_dim() {
                return Err(Error::NotComposable {
                    layer: k + 1,
                    next: k + 2,
                    output: w[0].output_dim(),
                    input: w[1].input_dim(),
                });
            }
        }
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[PerceptronLayer<S>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn first_layer(&self) -> &PerceptronLayer<S> {
        &self.layers[0]
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].output_dim()
    }

    pub fn is_single_output(&self) -> bool {
        self.output_dim() == 1
    }

    /// `n0, n1, ..., nk`.
    pub fn architecture(&self) -> Vec<usize> {
        std::iter::once(self.input_dim())
            .chain(self.layers.iter().map(PerceptronLayer::output_dim))
            .collect()
    }

    /// Applies every layer in turn.
    pub fn forward(&self, x: &[S]) -> Result<BinaryVector> {
        check_dim(self.input_dim(), x.len())?;
        let first = self.layers[0].apply_unchecked(x);
        Ok(self.tail(&first))
    }

    /// Layers `2..k` applied to a first-layer output; identity when `k = 1`.
    pub fn tail(&self, bits: &[bool]) -> BinaryVector {
        self.layers[1..]
            .iter()
            .fold(BinaryVector(bits.to_vec()), |b, layer| layer.apply_bits(&b))
    }

    /// The single output bit; errors for multi-output networks.
    pub fn eval(&self, x: &[S]) -> Result<bool> {
        self.require_single_output()?;
        Ok(self.forward(x)?[0])
    }

    pub(crate) fn require_single_output(&self) -> Result<()> {
        if self.is_single_output() {
            Ok(())
        } else {
            Err(Error::MultiOutput(self.output_dim()))
        }
    }
}

pub fn architecture<S: Scalar>(p: &PerceptronNetwork<S>) -> Vec<usize> {
    p.architecture()
}

pub fn forward<S: Scalar>(p: &PerceptronNetwork<S>, x: &[S]) -> Result<BinaryVector> {
    p.forward(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LinearForm;
    use crate::text::parse_rational;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn pt(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|x| q(x)).collect()
    }

    fn lax(bias: &str, ws: &[&str]) -> HalfSpace {
        HalfSpace::lax(LinearForm::new(q(bias), ws.iter().map(|w| q(w)).collect())).unwrap()
    }

    fn strict(bias: &str, ws: &[&str]) -> HalfSpace {
        HalfSpace::strict(LinearForm::new(q(bias), ws.iter().map(|w| q(w)).collect())).unwrap()
    }

    fn example_layer() -> PerceptronLayer {
        layer_of(vec![lax("0", &["1", "0"]), strict("-1", &["0", "1"])]).unwrap()
    }

    fn and_network() -> PerceptronNetwork {
        PerceptronNetwork::new(vec![
            example_and_first(),
            layer_of(vec![lax("-3/2", &["1", "1"])]).unwrap(),
        ])
        .unwrap()
    }

    fn example_and_first() -> PerceptronLayer {
        layer_of(vec![lax("0", &["1", "0"]), lax("0", &["0", "1"])]).unwrap()
    }

    #[test]
    fn layer_construction() {
        let l = example_layer();
        assert_eq!((l.input_dim(), l.output_dim()), (2, 2));
        assert_eq!(layer_of::<Rational>(vec![]).unwrap_err(), Error::EmptyLayer);
        assert!(matches!(
            layer_of(vec![lax("0", &["1"]), lax("0", &["1", "1"])]),
            Err(Error::MixedDimensions { unit: 2, .. })
        ));
    }

    #[test]
    fn layer_apply_examples() {
        let l = example_layer();
        assert_eq!(l.apply(&pt(&["2", "1/2"])).unwrap().0, vec![true, false]);
        assert_eq!(l.apply(&pt(&["0", "5"])).unwrap().0, vec![true, true]);
        assert_eq!(l.apply(&pt(&["-1", "1"])).unwrap().0, vec![false, false]);
        assert!(l.apply(&pt(&["1"])).is_err());
    }

    #[test]
    fn architecture_examples() {
        let one = PerceptronNetwork::new(vec![layer_of(vec![
            lax("0", &["1", "0"]),
            lax("0", &["0", "1"]),
            lax("0", &["1", "1"]),
        ])
        .unwrap()])
        .unwrap();
        assert_eq!(one.architecture(), vec![2, 3]);
        assert_eq!(and_network().architecture(), vec![2, 2, 1]);
        let bad = PerceptronNetwork::new(vec![example_layer(), layer_of(vec![lax("0", &["1"])]).unwrap()]);
        assert!(matches!(bad, Err(Error::NotComposable { .. })));
    }

    #[test]
    fn and_network_forward() {
        let p = and_network();
        assert_eq!(p.forward(&pt(&["1", "1"])).unwrap().0, vec![true]);
        assert_eq!(p.forward(&pt(&["1", "-1"])).unwrap().0, vec![false]);
        // all four sign patterns against a hand truth table
        for (x, expect) in [(["1", "1"], true), (["-1", "1"], false), (["1", "-1"], false), (["-1", "-1"], false)] {
            assert_eq!(p.eval(&pt(&x)).unwrap(), expect);
        }
    }

    #[test]
    fn single_layer_forward_is_layer_apply() {
        let l = example_layer();
        let p = PerceptronNetwork::new(vec![l.clone()]).unwrap();
        for x in [pt(&["2", "1/2"]), pt(&["0", "5"])] {
            assert_eq!(p.forward(&x).unwrap(), l.apply(&x).unwrap());
        }
        assert_eq!(p.eval(&pt(&["0", "0"])), Err(Error::MultiOutput(2)));
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn layer(input: usize, output: usize) -> impl Strategy<Value = PerceptronLayer> {
        proptest::collection::vec(
            (small_q(), proptest::collection::vec(-2i64..=2, input), any::<bool>()),
            output,
        )
        .prop_map(move |units| {
            let hs = units
                .into_iter()
                .map(|(b, mut ws, s)| {
                    if ws.iter().all(|&w| w == 0) {
                        ws[0] = 1;
                    }
                    let f = LinearForm::new(b, ws.into_iter().map(|w| Rational::from_integer(w.into())).collect());
                    if s { HalfSpace::strict(f) } else { HalfSpace::lax(f) }.unwrap()
                })
                .collect();
            PerceptronLayer::new(hs).unwrap()
        })
    }

    fn network() -> impl Strategy<Value = PerceptronNetwork> {
        (1usize..=3, 1usize..=4, 1usize..=3, 1usize..=2).prop_flat_map(|(m, n1, n2, out)| {
            (layer(m, n1), layer(n1, n2), layer(n2, out)).prop_map(|(a, b, c)| {
                PerceptronNetwork::new(vec![a, b, c]).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn forward_is_nested_composition(
            p in network(),
            x in proptest::collection::vec(small_q(), 3),
            split in 1usize..3,
        ) {
            let x = &x[..p.input_dim()];
            let mut v = x.to_vec();
            for layer in p.layers() {
                v = layer.apply(&v).unwrap().to_point();
            }
            let expected: Vec<bool> = v.iter().map(|r| *r == Rational::from_integer(1.into())).collect();
            prop_assert_eq!(&p.forward(x).unwrap().0, &expected);

            let (head, tail) = p.layers().split_at(split);
            let head = PerceptronNetwork::new(head.to_vec()).unwrap();
            let tail = PerceptronNetwork::new(tail.to_vec()).unwrap();
            let mid = head.forward(x).unwrap().to_point();
            prop_assert_eq!(tail.forward(&mid).unwrap(), p.forward(x).unwrap());
        }

        #[test]
        fn forward_factors_through_first_layer(
            p in network(),
            x in proptest::collection::vec(small_q(), 3),
            y in proptest::collection::vec(small_q(), 3),
        ) {
            let (x, y) = (&x[..p.input_dim()], &y[..p.input_dim()]);
            if p.first_layer().apply(x).unwrap() == p.first_layer().apply(y).unwrap() {
                prop_assert_eq!(p.forward(x).unwrap(), p.forward(y).unwrap());
            }
        }
    }
}
