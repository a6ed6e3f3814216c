//! Exact emptiness test for mixed strict/lax linear systems.
//!
//! Fourier–Motzkin elimination: each round removes one variable by pairing
//! every lower bound with every upper bound; the combination is strict when
//! either parent is. Duplicate and dominated constraints (same normalized
//! weights, looser constant) are dropped between rounds. A witness is
//! recovered by back-substitution, placing each coordinate strictly inside
//! its interval whenever the interval has room.

use crate::error::{check_dim, Error, Result};
use crate::geometry::{HalfSpace, InequalityKind, LinearForm};
use crate::schemes::IndexPair;
use crate::{Rational, Scalar};

pub const DEFAULT_CONSTRAINT_CAP: usize = 50_000;

/// `form >= 0` or `form > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint<S = Rational> {
    pub form: LinearForm<S>,
    pub kind: InequalityKind,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(form: LinearForm<S>, kind: InequalityKind) -> Self {
        Self { form, kind }
    }

    pub fn holds(&self, x: &[S]) -> Result<bool> {
        Ok(self.kind.holds(&self.form.eval(x)?))
    }
}

impl<S: Scalar> From<HalfSpace<S>> for Constraint<S> {
    fn from(h: HalfSpace<S>) -> Self {
        Self::new(h.form().clone(), h.kind())
    }
}

/// Conjunction of constraints over `R^dim`. Empty means all of `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InequalitySystem<S = Rational> {
    dim: usize,
    constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> InequalitySystem<S> {
    pub fn new(dim: usize, constraints: Vec<Constraint<S>>) -> Result<Self> {
        for c in &constraints {
            check_dim(dim, c.form.dim())?;
        }
        Ok(Self { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint<S>) -> Result<()> {
        check_dim(self.dim, c.form.dim())?;
        self.constraints.push(c);
        Ok(())
    }

    pub fn satisfied_by(&self, x: &[S]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self
            .constraints
            .iter()
            .all(|c| c.kind.holds(&c.form.eval_unchecked(x))))
    }
}

/// One constraint per half-space of the cell: `H_i` for `i` in ones and the
/// complement of `H_i` for `i` in zeros.
pub fn system_of_cell<S: Scalar>(
    halfspaces: &[HalfSpace<S>],
    g: &IndexPair,
    dim: usize,
) -> Result<InequalitySystem<S>> {
    if g.ambient() != halfspaces.len() {
        return Err(Error::AmbientMismatch {
            left: halfspaces.len(),
            right: g.ambient(),
        });
    }
    let constraints = g
        .ones()
        .iter()
        .map(|i| Constraint::from(halfspaces[i - 1].clone()))
        .chain(
            g.zeros()
                .iter()
                .map(|i| Constraint::from(halfspaces[i - 1].complement())),
        )
        .collect();
    InequalitySystem::new(dim, constraints)
}

/// Feasibility decisions with a cap on intermediate system size.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    pub constraint_cap: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            constraint_cap: DEFAULT_CONSTRAINT_CAP,
        }
    }
}

enum Reduced<S> {
    Infeasible,
    Stage(Vec<Constraint<S>>),
}

impl Solver {
    pub fn new(constraint_cap: usize) -> Self {
        Self { constraint_cap }
    }

    pub fn is_feasible<S: Scalar>(&self, s: &InequalitySystem<S>) -> Result<bool> {
        Ok(self.eliminate_all(s)?.is_some())
    }

    pub fn witness<S: Scalar>(&self, s: &InequalitySystem<S>) -> Result<Option<Vec<S>>> {
        let Some(stages) = self.eliminate_all(s)? else {
            return Ok(None);
        };
        let mut x = vec![S::zero(); s.dim];
        for (var, system) in stages.iter().rev() {
            x[*var] = choose_coordinate(system, *var, &x);
        }
        debug_assert!(s.satisfied_by(&x).unwrap_or(false));
        Ok(Some(x))
    }

    /// Returns the eliminated variable and the system it was eliminated
    /// from, for each round; `None` when infeasible.
    #[allow(clippy::type_complexity)]
    fn eliminate_all<S: Scalar>(
        &self,
        s: &InequalitySystem<S>,
    ) -> Result<Option<Vec<(usize, Vec<Constraint<S>>)>>> {
        self.check_cap(s.constraints.len())?;
        let mut current = match simplify(s.constraints.clone()) {
            Reduced::Infeasible => return Ok(None),
            Reduced::Stage(c) => c,
        };
        let mut remaining: Vec<usize> = (0..s.dim).collect();
        let mut stages = Vec::with_capacity(s.dim);
        while !remaining.is_empty() {
            let pick = cheapest_variable(&current, &remaining);
            let var = remaining.swap_remove(pick);
            let next = eliminate(&current, var);
            self.check_cap(next.len())?;
            stages.push((var, current));
            current = match simplify(next) {
                Reduced::Infeasible => return Ok(None),
                Reduced::Stage(c) => c,
            };
        }
        // every remaining constraint is constant and satisfied
        debug_assert!(current.is_empty());
        Ok(Some(stages))
    }

    fn check_cap(&self, size: usize) -> Result<()> {
        if size > self.constraint_cap {
            Err(Error::SizeCap {
                what: "inequality system",
                size,
                cap: self.constraint_cap,
            })
        } else {
            Ok(())
        }
    }
}

pub fn is_feasible<S: Scalar>(s: &InequalitySystem<S>) -> Result<bool> {
    Solver::default().is_feasible(s)
}

pub fn witness<S: Scalar>(s: &InequalitySystem<S>) -> Result<Option<Vec<S>>> {
    Solver::default().witness(s)
}

fn cheapest_variable<S: Scalar>(constraints: &[Constraint<S>], remaining: &[usize]) -> usize {
    let cost = |var: usize| {
        let (mut pos, mut neg) = (0usize, 0usize);
        for c in constraints {
            let w = &c.form.weights()[var];
            if w.gt_zero() {
                pos += 1;
            } else if w.lt_zero() {
                neg += 1;
            }
        }
        (pos * neg) as isize - (pos + neg) as isize
    };
    (0..remaining.len())
        .min_by_key(|&k| (cost(remaining[k]), remaining[k]))
        .unwrap()
}

fn eliminate<S: Scalar>(constraints: &[Constraint<S>], var: usize) -> Vec<Constraint<S>> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for c in constraints {
        let w = &c.form.weights()[var];
        if w.gt_zero() {
            lower.push(c);
        } else if w.lt_zero() {
            upper.push(c);
        } else {
            out.push(c.clone());
        }
    }
    for lo in &lower {
        let a = lo.form.weights()[var].clone();
        for up in &upper {
            let b = -up.form.weights()[var].clone();
            let mut form = lo.form.scale(&b).add(&up.form.scale(&a));
            // exact cancellation; cleared to keep the zero structural
            let mut ws = form.weights().to_vec();
            ws[var] = S::zero();
            form = LinearForm::new(form.bias().clone(), ws);
            let kind = if lo.kind == InequalityKind::Strict || up.kind == InequalityKind::Strict {
                InequalityKind::Strict
            } else {
                InequalityKind::Lax
            };
            out.push(Constraint::new(form, kind));
        }
    }
    out
}

/// Scales so the first nonzero weight has absolute value one.
fn normalized<S: Scalar>(c: &Constraint<S>) -> Constraint<S> {
    match c.form.weights().iter().find(|w| !w.is_zero()) {
        Some(w) => {
            let factor = S::one() / w.abs();
            Constraint::new(c.form.scale(&factor), c.kind)
        }
        None => c.clone(),
    }
}

/// `a` implies `b` when their weights agree.
fn implies<S: Scalar>(a: &Constraint<S>, b: &Constraint<S>) -> bool {
    let (ca, cb) = (a.form.bias(), b.form.bias());
    ca < cb || (ca == cb && (a.kind == InequalityKind::Strict || b.kind == InequalityKind::Lax))
}

fn simplify<S: Scalar>(constraints: Vec<Constraint<S>>) -> Reduced<S> {
    let mut kept: Vec<Constraint<S>> = Vec::with_capacity(constraints.len());
    'outer: for c in constraints {
        if c.form.is_constant() {
            if c.kind.holds(c.form.bias()) {
                continue;
            }
            return Reduced::Infeasible;
        }
        let c = normalized(&c);
        for k in kept.iter_mut() {
            if k.form.weights() == c.form.weights() {
                if !implies(k, &c) {
                    *k = c;
                }
                continue 'outer;
            }
        }
        kept.push(c);
    }
    Reduced::Stage(kept)
}

fn choose_coordinate<S: Scalar>(system: &[Constraint<S>], var: usize, x: &[S]) -> S {
    // bound value and strictness
    let mut lo: Option<(S, bool)> = None;
    let mut hi: Option<(S, bool)> = None;
    for c in system {
        let a = c.form.weights()[var].clone();
        if a.is_zero() {
            continue;
        }
        let rest = c
            .form
            .weights()
            .iter()
            .zip(x)
            .enumerate()
            .filter(|(i, (w, _))| *i != var && !w.is_zero())
            .fold(c.form.bias().clone(), |acc, (_, (w, v))| acc + w.clone() * v.clone());
        let bound = -rest / a.clone();
        let strict = c.kind == InequalityKind::Strict;
        if a.gt_zero() {
            if lo.as_ref().is_none_or(|(v, s)| bound > *v || (bound == *v && strict && !s)) {
                lo = Some((bound, strict));
            }
        } else if hi.as_ref().is_none_or(|(v, s)| bound < *v || (bound == *v && strict && !s)) {
            hi = Some((bound, strict));
        }
    }
    match (lo, hi) {
        (None, None) => S::zero(),
        (Some((l, _)), None) => l + S::one(),
        (None, Some((h, _))) => h - S::one(),
        (Some((l, _)), Some((h, _))) if l == h => l,
        (Some((l, _)), Some((h, _))) => (l + h) / S::two(),
    }
}
