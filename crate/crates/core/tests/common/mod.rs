#![allow(dead_code)]

use num_bigint::BigInt;
use polynet::{
    HalfSpace, IndexPair, IndexSet, InequalityKind, LinearForm, PerceptronLayer, PerceptronNetwork, Rational, Scheme,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer weights in `-3..=3` (not all zero), bias a multiple of `1/2`.
pub fn random_halfspace(rng: &mut TestRng, dim: usize) -> HalfSpace {
    loop {
        let weights: Vec<Rational> = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
        let bias = frac(rng.gen_range(-6..=6), 2);
        let kind = if rng.gen_bool(0.5) { InequalityKind::Lax } else { InequalityKind::Strict };
        if let Ok(h) = HalfSpace::new(LinearForm::new(bias, weights), kind) {
            return h;
        }
    }
}

pub fn random_halfspaces(rng: &mut TestRng, count: usize, dim: usize) -> Vec<HalfSpace> {
    (0..count).map(|_| random_halfspace(rng, dim)).collect()
}

/// A consistent, nonempty pair over `n`.
pub fn random_pair(rng: &mut TestRng, n: usize) -> IndexPair {
    loop {
        let (mut ones, mut zeros) = (vec![], vec![]);
        for i in 1..=n {
            match rng.gen_range(0..3) {
                0 => ones.push(i),
                1 => zeros.push(i),
                _ => {}
            }
        }
        if !ones.is_empty() || !zeros.is_empty() {
            return IndexPair::from_indices(n, &ones, &zeros).unwrap();
        }
    }
}

/// `q` pairs, nonempty random selector.
pub fn random_scheme(rng: &mut TestRng, n: usize, q: usize) -> Scheme {
    let pairs: Vec<IndexPair> = (0..q).map(|_| random_pair(rng, n)).collect();
    let mut sel: Vec<usize> = (1..=q).filter(|_| rng.gen_bool(0.6)).collect();
    if sel.is_empty() {
        sel.push(rng.gen_range(1..=q));
    }
    Scheme::new(n, pairs, IndexSet::new(q, sel).unwrap()).unwrap()
}

/// A unit over bit vectors: integer weights, half-integer threshold.
pub fn random_bit_unit(rng: &mut TestRng, dim: usize) -> HalfSpace {
    loop {
        let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        let pos: i64 = weights.iter().filter(|&&w| w > 0).sum();
        let neg: i64 = weights.iter().filter(|&&w| w < 0).sum();
        // threshold strictly inside the reachable range keeps the unit non-constant on bits
        let t = rng.gen_range(2 * neg..=2 * pos);
        let bias = frac(-t, 2);
        let kind = if rng.gen_bool(0.5) { InequalityKind::Lax } else { InequalityKind::Strict };
        let form = LinearForm::new(bias, weights.into_iter().map(int).collect());
        if let Ok(h) = HalfSpace::new(form, kind) {
            return h;
        }
    }
}

/// Single-output network with `depth` layers over `R^m`.
pub fn random_network(rng: &mut TestRng, m: usize, depth: usize, n1: usize, max_inner: usize) -> PerceptronNetwork {
    let mut layers = vec![PerceptronLayer::new(random_halfspaces(rng, n1, m)).unwrap()];
    let mut width = n1;
    for k in 1..depth {
        let out = if k + 1 == depth { 1 } else { rng.gen_range(1..=max_inner) };
        let units = (0..out).map(|_| random_bit_unit(rng, width)).collect();
        layers.push(PerceptronLayer::new(units).unwrap());
        width = out;
    }
    PerceptronNetwork::new(layers).unwrap()
}

/// `{-2, -1, -1/2, 0, 1/2, 1, 2}^m`.
pub fn grid(m: usize) -> Vec<Vec<Rational>> {
    let vals = [int(-2), int(-1), frac(-1, 2), int(0), frac(1, 2), int(1), int(2)];
    let mut out: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

pub fn random_points(rng: &mut TestRng, count: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| (0..m).map(|_| frac(rng.gen_range(-16..=16), *[1, 2, 3, 4].choose(rng).unwrap())).collect())
        .collect()
}

/// Brute-force cell test straight from the definition.
pub fn in_cell(h: &[HalfSpace], g: &IndexPair, x: &[Rational]) -> bool {
    g.ones().iter().all(|i| h[i - 1].contains(x).unwrap()) && g.zeros().iter().all(|i| !h[i - 1].contains(x).unwrap())
}

/// Brute-force DNF / CNF membership.
pub fn dnf_oracle(h: &[HalfSpace], s: &Scheme, x: &[Rational]) -> bool {
    s.selected().any(|g| in_cell(h, g, x))
}

pub fn cnf_oracle(h: &[HalfSpace], s: &Scheme, x: &[Rational]) -> bool {
    s.selected()
        .all(|g| g.ones().iter().any(|i| h[i - 1].contains(x).unwrap()) || g.zeros().iter().any(|i| !h[i - 1].contains(x).unwrap()))
}
