//! Line-oriented text formats for half-spaces, schemes, networks,
//! polyhedron bundles and point lists.
//!
//! Blank lines and lines starting with `#` are skipped on input. Output is
//! canonical: rationals print as `p/q`, or as an integer when `q = 1`, and
//! every line ends with a newline.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::feasibility::{Constraint, InequalitySystem};
use crate::geometry::{HalfSpace, InequalityKind, LinearForm};
use crate::network::{PerceptronLayer, PerceptronNetwork};
use crate::polyhedra::{Mode, PresentedPolyhedron};
use crate::schemes::{IndexPair, IndexSet, Scheme};
use crate::Rational;

/// Parses `7`, `-3/2` or `0.125`.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("invalid number `{token}`");
    if let Some((p, q)) = token.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{token}`"));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty() && frac_part.is_empty() || !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(bad());
    }
    let mut numer: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let iter: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(k, l)| (k + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self {
            inner: iter.peekable(),
            last: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.inner.next();
        if let Some((k, _)) = item {
            self.last = k;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.last;
        self.next()
            .ok_or_else(|| Error::parse(last + 1, format!("unexpected end of input, expected {what}")))
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            Some((k, l)) => Err(Error::parse(k, format!("unexpected trailing line `{l}`"))),
            None => Ok(()),
        }
    }
}

fn parse_form_line(line: usize, text: &str) -> Result<(LinearForm, InequalityKind)> {
    let mut tokens: Vec<&str> = text.split_whitespace().collect();
    let op = tokens.pop().ok_or_else(|| Error::parse(line, "empty half-space line"))?;
    let kind = match op {
        ">=" => InequalityKind::Lax,
        ">" => InequalityKind::Strict,
        other => return Err(Error::parse(line, format!("expected `>=` or `>`, found `{other}`"))),
    };
    if tokens.len() < 2 {
        return Err(Error::parse(line, "need a bias and at least one weight"));
    }
    let values = tokens
        .iter()
        .map(|t| parse_rational(t).map_err(|m| Error::parse(line, m)))
        .collect::<Result<Vec<_>>>()?;
    let mut values = values.into_iter();
    let bias = values.next().unwrap();
    Ok((LinearForm::new(bias, values.collect()), kind))
}

fn parse_halfspace_at(line: usize, text: &str) -> Result<HalfSpace> {
    let (form, kind) = parse_form_line(line, text)?;
    HalfSpace::new(form, kind).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a single `w0 w1 ... wn OP` line.
pub fn parse_halfspace(text: &str) -> Result<HalfSpace> {
    parse_halfspace_at(1, text.trim())
}

pub fn format_form_line(form: &LinearForm, kind: InequalityKind) -> String {
    let mut s = format_rational(form.bias());
    for w in form.weights() {
        s.push(' ');
        s.push_str(&format_rational(w));
    }
    s.push(' ');
    s.push_str(kind.symbol());
    s
}

pub fn format_halfspace(h: &HalfSpace) -> String {
    format_form_line(h.form(), h.kind())
}

fn check_same_dim(line: usize, expected: usize, h: &HalfSpace) -> Result<()> {
    if h.dim() != expected {
        return Err(Error::parse(
            line,
            format!("half-space has dimension {}, expected {expected}", h.dim()),
        ));
    }
    Ok(())
}

/// One half-space per line, all of the same dimension; at least one.
pub fn parse_halfspaces(text: &str) -> Result<Vec<HalfSpace>> {
    let mut lines = Lines::new(text);
    let mut out: Vec<HalfSpace> = Vec::new();
    while let Some((k, l)) = lines.next() {
        let h = parse_halfspace_at(k, l)?;
        if let Some(first) = out.first() {
            check_same_dim(k, first.dim(), &h)?;
        }
        out.push(h);
    }
    if out.is_empty() {
        return Err(Error::parse(1, "no half-spaces"));
    }
    Ok(out)
}

pub fn format_halfspaces(hs: &[HalfSpace]) -> String {
    hs.iter().map(|h| format_halfspace(h) + "\n").collect()
}

/// Inequality lines as for half-spaces, constant forms allowed.
pub fn parse_system(text: &str) -> Result<InequalitySystem> {
    let mut lines = Lines::new(text);
    let mut constraints: Vec<Constraint> = Vec::new();
    while let Some((k, l)) = lines.next() {
        let (form, kind) = parse_form_line(k, l)?;
        if let Some(first) = constraints.first() {
            if first.form.dim() != form.dim() {
                return Err(Error::parse(k, "mixed dimensions"));
            }
        }
        constraints.push(Constraint::new(form, kind));
    }
    let first = constraints.first().ok_or_else(|| Error::parse(1, "no inequalities"))?;
    let dim = first.form.dim();
    InequalitySystem::new(dim, constraints)
}

fn parse_count(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("invalid count `{s}`")))
}

fn parse_index_list(line: usize, s: &str, ambient: usize) -> Result<IndexSet> {
    if s == "-" {
        return Ok(IndexSet::empty(ambient));
    }
    let idx = s
        .split(',')
        .map(|t| parse_count(line, t))
        .collect::<Result<Vec<_>>>()?;
    let set = IndexSet::new(ambient, idx.iter().copied()).map_err(|e| Error::parse(line, e.to_string()))?;
    if set.len() != idx.len() || idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(line, format!("index list `{s}` must be strictly increasing")));
    }
    Ok(set)
}

fn strip_key<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str> {
    text.strip_prefix(key)
        .ok_or_else(|| Error::parse(line, format!("expected `{key}...`, found `{text}`")))
}

fn parse_scheme_lines(lines: &mut Lines<'_>) -> Result<Scheme> {
    let (k, l) = lines.expect("`N=<n>`")?;
    let n = parse_count(k, strip_key(k, l, "N=")?)?;
    let mut pairs = Vec::new();
    while let Some(&(k, l)) = lines.peek() {
        if !l.starts_with('G') {
            break;
        }
        lines.next();
        let expected = format!("G{}:", pairs.len() + 1);
        let rest = strip_key(k, l, &expected)?;
        let mut parts = rest.split_whitespace();
        let ones = strip_key(k, parts.next().unwrap_or(""), "ONES=")?;
        let zeros = strip_key(k, parts.next().unwrap_or(""), "ZEROS=")?;
        if let Some(extra) = parts.next() {
            return Err(Error::parse(k, format!("unexpected `{extra}`")));
        }
        let pair = IndexPair::new(parse_index_list(k, ones, n)?, parse_index_list(k, zeros, n)?)
            .map_err(|e| Error::parse(k, e.to_string()))?;
        pairs.push(pair);
    }
    let (k, l) = lines.expect("`J=<list>`")?;
    let selector = parse_index_list(k, strip_key(k, l, "J=")?, pairs.len())?;
    Scheme::new(n, pairs, selector).map_err(|e| Error::parse(k, e.to_string()))
}

pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let mut lines = Lines::new(text);
    let s = parse_scheme_lines(&mut lines)?;
    lines.finish()?;
    Ok(s)
}

pub fn format_scheme(s: &Scheme) -> String {
    let mut out = format!("N={}\n", s.ambient());
    for (k, g) in s.pairs().iter().enumerate() {
        writeln!(out, "G{}: {}", k + 1, g).unwrap();
    }
    writeln!(out, "J={}", s.selector()).unwrap();
    out
}

pub fn parse_network(text: &str) -> Result<PerceptronNetwork> {
    let mut lines = Lines::new(text);
    let (k, l) = lines.expect("`LAYERS=<k>`")?;
    let depth = parse_count(k, strip_key(k, l, "LAYERS=")?)?;
    if depth == 0 {
        return Err(Error::parse(k, "a network needs at least one layer"));
    }
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        let (k, l) = lines.expect("`LAYER <in> <out>`")?;
        let dims: Vec<&str> = strip_key(k, l, "LAYER ")?.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::parse(k, "expected `LAYER <in_dim> <out_dim>`"));
        }
        let (input, output) = (parse_count(k, dims[0])?, parse_count(k, dims[1])?);
        if output == 0 {
            return Err(Error::parse(k, "empty layer"));
        }
        let mut units = Vec::with_capacity(output);
        for _ in 0..output {
            let (k, l) = lines.expect("a half-space line")?;
            let h = parse_halfspace_at(k, l)?;
            check_same_dim(k, input, &h)?;
            units.push(h);
        }
        layers.push(PerceptronLayer::new(units).map_err(|e| Error::parse(k, e.to_string()))?);
    }
    let last = lines.last;
    lines.finish()?;
    PerceptronNetwork::new(layers).map_err(|e| Error::parse(last, e.to_string()))
}

pub fn format_network(p: &PerceptronNetwork) -> String {
    let mut out = format!("LAYERS={}\n", p.depth());
    for layer in p.layers() {
        writeln!(out, "LAYER {} {}", layer.input_dim(), layer.output_dim()).unwrap();
        out.push_str(&format_halfspaces(layer.units()));
    }
    out
}

pub fn parse_bundle(text: &str) -> Result<PresentedPolyhedron> {
    let mut lines = Lines::new(text);
    let mut halfspaces: Vec<HalfSpace> = Vec::new();
    let mode = loop {
        let (k, l) = lines.expect("`MODE=DNF|CNF`")?;
        if let Some(m) = l.strip_prefix("MODE=") {
            break match m {
                "DNF" => Mode::Dnf,
                "CNF" => Mode::Cnf,
                other => return Err(Error::parse(k, format!("unknown mode `{other}`"))),
            };
        }
        let h = parse_halfspace_at(k, l)?;
        if let Some(first) = halfspaces.first() {
            check_same_dim(k, first.dim(), &h)?;
        }
        halfspaces.push(h);
    };
    if halfspaces.is_empty() {
        return Err(Error::parse(lines.last, "bundle has no half-spaces"));
    }
    let scheme = parse_scheme_lines(&mut lines)?;
    let last = lines.last;
    lines.finish()?;
    PresentedPolyhedron::over(halfspaces, scheme, mode).map_err(|e| Error::parse(last, e.to_string()))
}

pub fn format_bundle(k: &PresentedPolyhedron) -> String {
    let mut out = format_halfspaces(k.halfspaces());
    writeln!(out, "MODE={}", k.mode()).unwrap();
    out.push_str(&format_scheme(k.scheme()));
    out
}

/// One point per nonblank line; whitespace-separated coordinates.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((k, l)) = lines.next() {
        let p = l
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|m| Error::parse(k, m)))
            .collect::<Result<Vec<_>>>()?;
        out.push(p);
    }
    Ok(out)
}

pub fn format_point(p: &[Rational]) -> String {
    p.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::new(1.into(), 8.into()));
        assert_eq!(parse_rational("-.5").unwrap(), Rational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("+2").unwrap(), Rational::from_integer(2.into()));
        for bad in ["", "-", ".", "1/0", "1.2.3", "abc", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("-0.75").unwrap()), "-3/4");
    }

    #[test]
    fn halfspace_line() {
        let h = parse_halfspace("-3/2 1 -1 1 >=").unwrap();
        assert_eq!(h.kind(), InequalityKind::Lax);
        assert_eq!(h.dim(), 3);
        assert_eq!(format_halfspace(&h), "-3/2 1 -1 1 >=");
        assert_eq!(format_halfspace(&parse_halfspace("0.5 2 >").unwrap()), "1/2 2 >");
        assert!(matches!(parse_halfspace("1 0 0 >="), Err(Error::Parse { line: 1, .. })));
        assert!(parse_halfspace("1 2 =").is_err());
        assert!(parse_halfspace("1 >=").is_err());
    }

    #[test]
    fn scheme_block() {
        let text = "N=3\nG1: ONES=1,3 ZEROS=2\nG2: ONES=- ZEROS=-\nJ=1\n";
        let s = parse_scheme(text).unwrap();
        assert_eq!(s.multiplicity(), 2);
        assert_eq!(format_scheme(&s), text);
        assert_eq!(format_scheme(&parse_scheme("N=2\nJ=-\n").unwrap()), "N=2\nJ=-\n");
        assert!(matches!(parse_scheme("N=2\nG2: ONES=1 ZEROS=-\nJ=1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_scheme("N=2\nG1: ONES=3 ZEROS=-\nJ=1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_scheme("N=2\nG1: ONES=1 ZEROS=-\nJ=2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_scheme("N=2\nG1: ONES=2,1 ZEROS=-\nJ=1\n").is_err());
    }

    #[test]
    fn network_block() {
        let text = "LAYERS=2\nLAYER 2 2\n0 1 0 >=\n0 0 1 >=\nLAYER 2 1\n-3/2 1 1 >=\n";
        let p = parse_network(text).unwrap();
        assert_eq!(p.architecture(), vec![2, 2, 1]);
        assert_eq!(format_network(&p), text);
        let bad = "LAYERS=2\nLAYER 2 2\n0 1 0 >=\n0 0 1 >=\nLAYER 3 1\n-3/2 1 1 1 >=\n";
        assert!(parse_network(bad).is_err());
        let bad_line = "LAYERS=1\nLAYER 2 1\n0 1 x >=\n";
        assert!(matches!(parse_network(bad_line), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn bundle_block() {
        let text = "0 1 0 >=\n0 0 1 >\nMODE=DNF\nN=2\nG1: ONES=1 ZEROS=2\nJ=1\n";
        let k = parse_bundle(text).unwrap();
        assert_eq!(k.mode(), Mode::Dnf);
        assert_eq!(format_bundle(&k), text);
        assert!(matches!(
            parse_bundle("0 1 0 >=\nN=1\nG1: ONES=1 ZEROS=-\nJ=1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn points_and_systems() {
        let pts = parse_points("1 -1\n\n0.5 2/3\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(format_point(&pts[1]), "1/2 2/3");
        assert!(parse_points("").unwrap().is_empty());
        let s = parse_system("0 1 >=\n0 0 >=\n").unwrap();
        assert_eq!(s.constraints().len(), 2);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn arb_network() -> impl Strategy<Value = PerceptronNetwork> {
        let unit = |dim: usize| {
            (arb_rational(), proptest::collection::vec(arb_rational(), dim), any::<bool>())
                .prop_filter_map("constant", |(b, w, s)| {
                    let kind = if s { InequalityKind::Strict } else { InequalityKind::Lax };
                    HalfSpace::new(LinearForm::new(b, w), kind).ok()
                })
        };
        (1usize..4, 1usize..4).prop_flat_map(move |(m, n)| {
            (
                proptest::collection::vec(unit(m), n),
                proptest::collection::vec(unit(n), 1),
            )
                .prop_map(|(a, b)| {
                    PerceptronNetwork::new(vec![PerceptronLayer::new(a).unwrap(), PerceptronLayer::new(b).unwrap()])
                        .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn rational_round_trip(r in arb_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }

        #[test]
        fn network_round_trip(p in arb_network()) {
            let text = format_network(&p);
            let back = parse_network(&text).unwrap();
            prop_assert_eq!(format_network(&back), text);
            prop_assert_eq!(back, p);
        }
    }
}
