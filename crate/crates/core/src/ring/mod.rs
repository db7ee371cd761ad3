//! Polynomials over the jet ring of a generic matrix (`x` variables) and over
//! the ring of the two factor matrices (`a` and `b` variables).
//!
//! A variable carries a level `k`: the `k`-th jet coordinate. The derivation
//! `d` raises levels by `d x^(k) = (k+1) x^(k+1)` and `dbar(l) = d^l / l!`
//! is its normalized power, which keeps integer coefficients.

mod json;

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::int::{factorial, Int};

pub use json::{monomial_from_json, monomial_to_json, poly_from_json, poly_to_json};

/// Kind of a variable. The derived order is the canonical storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
    X,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::A => 'a',
            Kind::B => 'b',
            Kind::X => 'x',
        }
    }
}

/// One indeterminate. For `x` the indices are (row, column); for `a` they
/// are (row, factor column) and for `b` (column, factor column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub kind: Kind,
    pub level: u16,
    pub first: u8,
    pub second: u8,
}

impl Var {
    pub fn new(kind: Kind, first: u8, second: u8, level: u16) -> Self {
        debug_assert!(first >= 1 && second >= 1, "indices start at 1");
        Var {
            kind,
            level,
            first,
            second,
        }
    }

    pub fn x(i: u8, j: u8, k: u16) -> Self {
        Var::new(Kind::X, i, j, k)
    }

    pub fn a(i: u8, l: u8, k: u16) -> Self {
        Var::new(Kind::A, i, l, k)
    }

    pub fn b(j: u8, l: u8, k: u16) -> Self {
        Var::new(Kind::B, j, l, k)
    }

    pub fn with_level(self, level: u16) -> Self {
        Var { level, ..self }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^({})_{{{},{}}}",
            self.kind.letter(),
            self.level,
            self.first,
            self.second
        )
    }
}

/// Which ring a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    X,
    AB,
}

/// A monomial: variables in canonical order with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, u16); 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u16)>) -> Self {
        let mut out: SmallVec<[(Var, u16); 8]> = factors.into_iter().filter(|f| f.1 > 0).collect();
        out.sort_unstable_by_key(|f| f.0);
        out.dedup_by(|next, kept| {
            if next.0 == kept.0 {
                kept.1 += next.1;
                true
            } else {
                false
            }
        });
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1 as u32).sum()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|f| f.0.level as u32 * f.1 as u32).sum()
    }

    pub fn ring(&self) -> Option<Ring> {
        self.0.first().map(|f| match f.0.kind {
            Kind::X => Ring::X,
            _ => Ring::AB,
        })
    }

    /// Each variable repeated by its exponent, in canonical order.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (x, y) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(x[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(y[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((x[i].0, x[i].1 + y[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        Monomial(out)
    }

    /// Replaces one occurrence of the factor at `pos` by `to`.
    fn swap_one(&self, pos: usize, to: Var) -> Monomial {
        let mut f = self.0.clone();
        if f[pos].1 == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        match f.binary_search_by_key(&to, |p| p.0) {
            Ok(i) => f[i].1 += 1,
            Err(i) => f.insert(i, (to, 1)),
        }
        Monomial(f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Accumulates terms before canonicalization.
#[derive(Debug, Default)]
pub struct TermMap(FxHashMap<Monomial, Int>);

impl TermMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, m: Monomial, c: &Int) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(v) => *v += c,
            None => {
                self.0.insert(m, c.clone());
            }
        }
    }

    pub fn add_poly(&mut self, p: &Polynomial, scale: &Int) {
        for (m, c) in &p.terms {
            self.add(m.clone(), &(c * scale));
        }
    }

    pub fn into_poly(self) -> Polynomial {
        let mut terms: Vec<_> = self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }
}

/// A polynomial with integer coefficients, terms sorted by monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Int)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic that refuses to mix the two rings.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if let (Some(r), Some(s)) = (f.ring(), g.ring()) {
        if r != s {
            return Err(Error::usage("operands live in different rings"));
        }
    }
    Ok(match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
    })
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Int) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Int::ONE)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut acc = TermMap::new();
        for (m, c) in terms {
            acc.add(m, &c);
        }
        acc.into_poly()
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Int)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The ring of the first non-constant term; `None` for constants.
    pub fn ring(&self) -> Option<Ring> {
        self.terms.iter().find_map(|(m, _)| m.ring())
    }

    pub fn coefficient(&self, m: &Monomial) -> Int {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Int::ZERO)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (x, y) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Int| if negate { -c } else { c.clone() };
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((y[j].0.clone(), rhs(&y[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &x[i].1 - &y[j].1
                    } else {
                        &x[i].1 + &y[j].1
                    };
                    if !c.is_zero() {
                        out.push((x[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(x[i..].iter().cloned());
        out.extend(y[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Int) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return other.scale(&self.terms[0].1);
        }
        if other.terms.len() == 1 && other.terms[0].0.is_one() {
            return self.scale(&other.terms[0].1);
        }
        let mut acc = TermMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                acc.add(m.mul(n), &(c * d));
            }
        }
        acc.into_poly()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        factors
            .into_iter()
            .fold(Polynomial::one(), |acc, f| acc.mul(f))
    }

    /// Applies the derivation sending each variable `v` to `c * v'` when
    /// `image(v) = Some((c, v'))` and to zero otherwise.
    pub fn derive_by(&self, image: impl Fn(Var) -> Option<(i64, Var)>) -> Polynomial {
        let mut acc = TermMap::new();
        for (m, c) in &self.terms {
            for (pos, &(v, e)) in m.factors().iter().enumerate() {
                if let Some((k, w)) = image(v) {
                    let coeff = c * &Int::from(k * e as i64);
                    acc.add(m.swap_one(pos, w), &coeff);
                }
            }
        }
        acc.into_poly()
    }

    /// Normalized derivation restricted to the variables accepted by `keep`.
    fn dbar_filtered(&self, l: u32, keep: impl Fn(Var) -> bool) -> Result<Polynomial> {
        let step = |v: Var| keep(v).then(|| (v.level as i64 + 1, v.with_level(v.level + 1)));
        let mut f = self.clone();
        for _ in 0..l {
            f = f.derive_by(step);
        }
        let fact = factorial(l);
        let terms = f
            .terms
            .into_iter()
            .map(|(m, c)| {
                c.div_exact(&fact)
                    .map(|q| (m, q))
                    .ok_or_else(|| Error::invariant("normalized derivative is not integral"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { terms })
    }

    /// `dbar(l) = d^l / l!`; the division is checked to be exact.
    pub fn dbar(&self, l: u32) -> Result<Polynomial> {
        self.dbar_filtered(l, |_| true)
    }

    /// Normalized derivation acting only on `x` variables whose row
    /// (`Side::Row`) or column (`Side::Column`) index lies in `set`.
    pub fn dbar_directional(&self, l: u32, set: &[u8], side: Side) -> Result<Polynomial> {
        self.dbar_filtered(l, |v| {
            v.kind == Kind::X
                && set.contains(&match side {
                    Side::Row => v.first,
                    Side::Column => v.second,
                })
        })
    }

    /// Splits the terms by (degree, weight).
    pub fn bidegree_split(&self) -> BTreeMap<(u32, u32), Polynomial> {
        let mut out: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.degree(), m.weight()))
                .or_default()
                .terms
                .push((m.clone(), c.clone()));
        }
        out
    }

    /// Ring homomorphism fixing constants and sending `v` to `image(v)`.
    /// Images of each distinct variable power are computed once.
    pub fn substitute(&self, mut image: impl FnMut(Var) -> Polynomial) -> Polynomial {
        let mut cache: FxHashMap<Var, Vec<Polynomial>> = FxHashMap::default();
        for (m, _) in &self.terms {
            for &(v, e) in m.factors() {
                let powers = cache.entry(v).or_insert_with(|| vec![Polynomial::one(), image(v)]);
                while powers.len() <= e as usize {
                    let next = powers[powers.len() - 1].mul(&powers[1]);
                    powers.push(next);
                }
            }
        }
        // expand each term depth-first straight into the accumulator
        fn expand(factors: &[&Polynomial], m: &Monomial, c: &Int, acc: &mut TermMap) {
            match factors.split_first() {
                None => acc.add(m.clone(), c),
                Some((f, rest)) => {
                    for (n, d) in &f.terms {
                        expand(rest, &m.mul(n), &(c * d), acc);
                    }
                }
            }
        }
        let mut acc = TermMap::new();
        let mut factors: Vec<&Polynomial> = Vec::new();
        for (m, c) in &self.terms {
            factors.clear();
            factors.extend(m.factors().iter().map(|&(v, e)| &cache[&v][e as usize]));
            expand(&factors, &Monomial::one(), c, &mut acc);
        }
        acc.into_poly()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            match (a.is_one(), m.is_one()) {
                (true, false) => write!(f, "{m}")?,
                (_, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::int::binomial;
    use proptest::prelude::*;

    fn x(i: u8, j: u8, k: u16) -> Polynomial {
        Polynomial::var(Var::x(i, j, k))
    }

    #[test]
    fn arithmetic_examples() {
        let f = x(1, 1, 0).add(&x(1, 2, 0));
        assert_eq!(f.add(&Polynomial::zero()), f);
        assert_eq!(f.mul(&Polynomial::one()), f);
        let g = x(1, 1, 0).sub(&x(1, 2, 0));
        assert_eq!(f.mul(&g), x(1, 1, 0).pow(2).sub(&x(1, 2, 0).pow(2)));
        assert_eq!(f.sub(&f), Polynomial::zero());
        let ab = Polynomial::var(Var::a(1, 1, 0));
        assert!(poly_arith(&f, &ab, ArithOp::Add).is_err());
        assert!(poly_arith(&f, &Polynomial::one(), ArithOp::Mul).is_ok());
    }

    #[test]
    fn dbar_examples() {
        for k in 0..4 {
            for l in 0..4 {
                let expect = Polynomial::var(Var::x(1, 2, k + l)).scale(&binomial((k + l) as u32, l as u32));
                assert_eq!(x(1, 2, k).dbar(l as u32).unwrap(), expect);
            }
        }
        assert!(Polynomial::one().dbar(1).unwrap().is_zero());
        let p = x(1, 1, 0).mul(&x(1, 2, 0));
        let want = x(1, 1, 1).mul(&x(1, 2, 0)).add(&x(1, 1, 0).mul(&x(1, 2, 1)));
        assert_eq!(p.dbar(1).unwrap(), want);
    }

    #[test]
    fn directional_examples() {
        let p = x(1, 1, 0).mul(&x(2, 1, 0));
        assert_eq!(
            p.dbar_directional(1, &[1], Side::Row).unwrap(),
            x(1, 1, 1).mul(&x(2, 1, 0))
        );
        assert!(x(1, 1, 0).dbar_directional(2, &[2], Side::Row).unwrap().is_zero());
    }

    #[test]
    fn bidegree_examples() {
        let p = x(1, 1, 0).add(&x(1, 1, 1));
        let split = p.bidegree_split();
        assert_eq!(split.len(), 2);
        assert_eq!(split[&(1, 0)], x(1, 1, 0));
        assert_eq!(split[&(1, 1)], x(1, 1, 1));
        assert!(Polynomial::zero().bidegree_split().is_empty());
        let q = x(1, 1, 1).mul(&x(1, 2, 2));
        assert_eq!(q.bidegree_split()[&(2, 3)], q);
    }

    #[test]
    fn display_is_readable() {
        let p = x(1, 1, 0).scale(&Int::from(2)).sub(&x(1, 2, 1).pow(2));
        assert_eq!(p.to_string(), "2*x^(0)_{1,1} - x^(1)_{1,2}^2");
    }

    pub(crate) fn arb_x_poly() -> impl Strategy<Value = Polynomial> {
        let var = (1u8..3, 1u8..3, 0u16..3).prop_map(|(i, j, k)| Var::x(i, j, k));
        let mono = proptest::collection::vec((var, 1u16..3), 0..3).prop_map(Monomial::from_factors);
        proptest::collection::vec((mono, -3i64..4), 0..4)
            .prop_map(|ts| Polynomial::from_terms(ts.into_iter().map(|(m, c)| (m, Int::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_x_poly(), g in arb_x_poly(), h in arb_x_poly()) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
            prop_assert_eq!(f.sub(&g).add(&g), f.clone());
        }

        #[test]
        fn dbar_composition(f in arb_x_poly(), a in 0u32..3, b in 0u32..3) {
            let lhs = f.dbar(b).unwrap().dbar(a).unwrap();
            let rhs = f.dbar(a + b).unwrap().scale(&binomial(a + b, a));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn leibniz(f in arb_x_poly(), g in arb_x_poly(), l in 0u32..4) {
            let lhs = f.mul(&g).dbar(l).unwrap();
            let mut rhs = Polynomial::zero();
            for i in 0..=l {
                rhs = rhs.add(&f.dbar(i).unwrap().mul(&g.dbar(l - i).unwrap()));
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dbar_shifts_weight(f in arb_x_poly(), l in 0u32..4) {
            let src = f.bidegree_split();
            for ((d, w), part) in src {
                for (m, _) in part.dbar(l).unwrap().terms() {
                    prop_assert_eq!((m.degree(), m.weight()), (d, w + l));
                }
            }
        }

        #[test]
        fn directional_full_set_is_dbar(f in arb_x_poly(), l in 0u32..3) {
            let all = [1u8, 2];
            prop_assert_eq!(f.dbar_directional(l, &all, Side::Row).unwrap(), f.dbar(l).unwrap());
            prop_assert_eq!(f.dbar_directional(l, &all, Side::Column).unwrap(), f.dbar(l).unwrap());
        }

        #[test]
        fn split_sums_back(f in arb_x_poly()) {
            let sum = f.bidegree_split().values().fold(Polynomial::zero(), |acc, p| acc.add(p));
            prop_assert_eq!(sum, f);
        }
    }
}
