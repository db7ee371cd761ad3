//! Minor symbols: the normalized `n`-th derivative of an `h x h` minor,
//! recorded by its weight `n` and ascending row and column lists.

pub mod relations;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::morphism::qh;
use crate::ring::{Monomial, Polynomial, TermMap, Var};

pub type Indices = SmallVec<[u8; 4]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSymbol {
    weight: u32,
    rows: Indices,
    cols: Indices,
}

fn strictly_ascending(v: &[u8]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl MinorSymbol {
    pub fn new(weight: u32, rows: &[u8], cols: &[u8]) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::usage(format!(
                "minor needs equal, non-zero numbers of rows and columns (got {} and {})",
                rows.len(),
                cols.len()
            )));
        }
        if rows.contains(&0) || cols.contains(&0) {
            return Err(Error::usage("minor indices start at 1"));
        }
        if !strictly_ascending(rows) || !strictly_ascending(cols) {
            return Err(Error::usage("minor rows and columns must be strictly ascending"));
        }
        Ok(MinorSymbol {
            weight,
            rows: rows.into(),
            cols: cols.into(),
        })
    }

    /// Internal constructor for inputs already known to be valid.
    pub(crate) fn from_parts(weight: u32, rows: Indices, cols: Indices) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() == cols.len());
        debug_assert!(strictly_ascending(&rows) && strictly_ascending(&cols));
        MinorSymbol { weight, rows, cols }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn cols(&self) -> &[u8] {
        &self.cols
    }

    pub fn with_weight(&self, weight: u32) -> Self {
        MinorSymbol {
            weight,
            ..self.clone()
        }
    }

    pub fn max_row(&self) -> u8 {
        *self.rows.last().expect("non-empty")
    }

    pub fn max_col(&self) -> u8 {
        *self.cols.last().expect("non-empty")
    }

    pub fn to_json(&self) -> Value {
        json!({ "wt": self.weight, "rows": self.rows.to_vec(), "cols": self.cols.to_vec() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let list = |name: &str| -> Result<Vec<u8>> {
            v.get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::usage(format!("minor needs an array `{name}`")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|n| u8::try_from(n).ok())
                        .ok_or_else(|| Error::usage("minor indices must be integers in 1..=255"))
                })
                .collect()
        };
        let wt = v
            .get("wt")
            .and_then(Value::as_u64)
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| Error::usage("minor needs a non-negative integer `wt`"))?;
        MinorSymbol::new(wt, &list("rows")?, &list("cols")?)
    }
}

/// The total order in which larger minors come first, then lighter ones,
/// then the word of rows and columns read from the last index down.
impl Ord for MinorSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then(self.weight.cmp(&other.weight))
            .then_with(|| self.rows.iter().rev().cmp(other.rows.iter().rev()))
            .then_with(|| self.cols.iter().rev().cmp(other.cols.iter().rev()))
    }
}

impl PartialOrd for MinorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MinorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}:({}|{})", self.weight, join(&self.rows), join(&self.cols))
    }
}

/// Parses `wt:(r1,..,rh|c1,..,ch)` with ascending lists.
impl FromStr for MinorSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("cannot parse minor `{s}`; expected e.g. 0:(1,2|1,2)"));
        let (wt, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let wt: u32 = wt.trim().parse().map_err(|_| bad())?;
        let body = body
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (rows, cols) = body.split_once('|').ok_or_else(bad)?;
        let list = |part: &str| -> Result<Vec<u8>> {
            part.split(',')
                .map(|x| x.trim().parse::<u8>().map_err(|_| bad()))
                .collect()
        };
        MinorSymbol::new(wt, &list(rows)?, &list(cols)?)
    }
}

/// Parses a comma-separated product such as `0:(1|2),0:(2|1)`.
pub fn parse_product(s: &str) -> Result<Vec<MinorSymbol>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let end = rest
            .find(')')
            .ok_or_else(|| Error::usage(format!("unterminated minor in `{s}`")))?;
        out.push(rest[..=end].parse()?);
        rest = rest[end + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(Error::usage("trailing comma in product"));
            }
        } else if !rest.is_empty() {
            return Err(Error::usage(format!("expected `,` between minors in `{s}`")));
        }
    }
    Ok(out)
}

/// A minor written with arbitrary index order, reduced to a sign times a
/// canonical symbol. Zero when an index repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMinor {
    pub sign: i8,
    pub symbol: Option<MinorSymbol>,
}

/// Sorts `v` ascending; returns the permutation sign, or 0 on a repeat.
pub(crate) fn sort_with_sign(v: &mut [u8]) -> i8 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

/// Normalizes a minor given by row and column sequences (each read from
/// position 1 upward).
pub fn normalize_sequence(rows: &[u8], cols: &[u8], n: u32) -> Result<SignedMinor> {
    if rows.len() != cols.len() {
        return Err(Error::usage("row and column sequences differ in length"));
    }
    if rows.is_empty() {
        return Err(Error::usage("a minor needs at least one row"));
    }
    let (mut r, mut c): (Indices, Indices) = (rows.into(), cols.into());
    let sign = sort_with_sign(&mut r) * sort_with_sign(&mut c);
    if sign == 0 {
        return Ok(SignedMinor {
            sign: 0,
            symbol: None,
        });
    }
    Ok(SignedMinor {
        sign,
        symbol: Some(MinorSymbol::new(n, &r, &c)?),
    })
}

/// Heap's algorithm over `0..n`, yielding each permutation with its sign.
pub(crate) fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![(p.clone(), 1i8)];
    let mut c = vec![0usize; n];
    let mut sign = 1i8;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            out.push((p.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` non-negative integers.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=total {
            cur.push(first);
            go(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Signed sum over permutations and weight distributions:
/// the polynomial of the normalized derivative of the minor.
pub fn expand_minor(j: &MinorSymbol) -> Polynomial {
    expand_rows_cols(j.weight, &j.rows, &j.cols)
}

fn expand_rows_cols(n: u32, rows: &[u8], cols: &[u8]) -> Polynomial {
    let h = rows.len();
    let perms = permutations(h);
    let comps = compositions(n, h);
    let mut acc = TermMap::new();
    for (sigma, sign) in &perms {
        let coeff = Int::from(*sign as i64);
        for levels in &comps {
            let m = Monomial::from_factors(
                (0..h).map(|i| (Var::x(rows[i], cols[sigma[i]], levels[i] as u16), 1)),
            );
            acc.add(m, &coeff);
        }
    }
    acc.into_poly()
}

/// Level-zero determinant on index sets `rows` and `cols`; the empty
/// determinant is 1.
pub fn minor_det(rows: &[u8], cols: &[u8]) -> Result<Polynomial> {
    normalized_derivative_det(rows, cols, 0)
}

/// `dbar(n)` of the determinant on the given index sets.
pub(crate) fn normalized_derivative_det(rows: &[u8], cols: &[u8], n: u32) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(Error::usage("determinant needs as many rows as columns"));
    }
    if rows.is_empty() {
        return Ok(if n == 0 {
            Polynomial::one()
        } else {
            Polynomial::zero()
        });
    }
    let (mut r, mut c): (Indices, Indices) = (rows.into(), cols.into());
    let sign = sort_with_sign(&mut r) * sort_with_sign(&mut c);
    if sign == 0 {
        return Err(Error::usage("determinant index sets must not repeat indices"));
    }
    if sign != 1 {
        return Err(Error::usage("determinant index sets must be given ascending"));
    }
    Ok(expand_rows_cols(n, &r, &c))
}

/// Whether `f` lies in the ideal generated by all `n`-minors and their
/// derivatives, decided by the image under the factorization map of
/// rank `n - 1` being zero.
pub fn in_ideal(f: &Polynomial, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::usage("ideal index must be at least 1"));
    }
    // no n-minor fits in the rows or columns f uses
    let mut rows: Vec<u8> = f.terms().iter().flat_map(|(m, _)| m.vars().map(|v| v.first)).collect();
    let mut cols: Vec<u8> = f.terms().iter().flat_map(|(m, _)| m.vars().map(|v| v.second)).collect();
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    if n > rows.len().min(cols.len()) {
        return Ok(f.is_zero());
    }
    Ok(qh(f, n - 1).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: u8, j: u8, k: u16) -> Polynomial {
        Polynomial::var(Var::x(i, j, k))
    }

    pub(crate) fn sym(s: &str) -> MinorSymbol {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let j = sym("3:(1,3|2,4)");
        assert_eq!((j.weight(), j.rows(), j.cols()), (3, &[1u8, 3][..], &[2u8, 4][..]));
        assert_eq!(j.to_string(), "3:(1,3|2,4)");
        assert!("0:(2,1|1,2)".parse::<MinorSymbol>().is_err());
        assert!("0:(1|1,2)".parse::<MinorSymbol>().is_err());
        assert!("x:(1|1)".parse::<MinorSymbol>().is_err());
        let p = parse_product("0:(1|2), 0:(2|1)").unwrap();
        assert_eq!(p, vec![sym("0:(1|2)"), sym("0:(2|1)")]);
        assert!(parse_product("0:(1|2),").is_err());
        assert_eq!(MinorSymbol::from_json(&j.to_json()).unwrap(), j);
    }

    #[test]
    fn normalize_examples() {
        let s = normalize_sequence(&[2, 1], &[1, 2], 0).unwrap();
        assert_eq!(s, SignedMinor { sign: -1, symbol: Some(sym("0:(1,2|1,2)")) });
        let s = normalize_sequence(&[1, 1], &[1, 2], 3).unwrap();
        assert_eq!(s, SignedMinor { sign: 0, symbol: None });
        let s = normalize_sequence(&[1], &[1], 5).unwrap();
        assert_eq!(s, SignedMinor { sign: 1, symbol: Some(sym("5:(1|1)")) });
        assert!(normalize_sequence(&[1], &[1, 2], 0).is_err());
    }

    #[test]
    fn expansion_examples() {
        let want = x(1, 1, 0).mul(&x(2, 3, 0)).sub(&x(1, 3, 0).mul(&x(2, 1, 0)));
        assert_eq!(expand_minor(&sym("0:(1,2|1,3)")), want);
        assert_eq!(minor_det(&[1, 2], &[1, 3]).unwrap(), want);

        let want = x(1, 1, 1)
            .mul(&x(2, 2, 0))
            .add(&x(1, 1, 0).mul(&x(2, 2, 1)))
            .sub(&x(1, 2, 1).mul(&x(2, 1, 0)))
            .sub(&x(1, 2, 0).mul(&x(2, 1, 1)));
        assert_eq!(expand_minor(&sym("1:(1,2|1,2)")), want);
        assert_eq!(expand_minor(&sym("0:(1|1)")), x(1, 1, 0));
        assert_eq!(minor_det(&[1], &[2]).unwrap(), x(1, 2, 0));
        assert_eq!(minor_det(&[], &[]).unwrap(), Polynomial::one());
        assert!(minor_det(&[1], &[]).is_err());
    }

    #[test]
    fn membership_examples() {
        for j in ["0:(1,2|1,2)", "2:(1,3|2,3)", "1:(1,2,3|1,2,3)"] {
            let j = sym(j);
            assert!(in_ideal(&expand_minor(&j), j.size()).unwrap());
        }
        assert!(!in_ideal(&x(1, 1, 0), 2).unwrap());
        let d = expand_minor(&sym("0:(1,2|1,2)")).dbar(3).unwrap();
        assert!(in_ideal(&d, 2).unwrap());
        assert!(!in_ideal(&expand_minor(&sym("0:(1,2|1,2)")), 3).unwrap());
        assert!(in_ideal(&x(1, 1, 0), 1).unwrap());
        assert!(!in_ideal(&Polynomial::one(), 1).unwrap());
        // too few rows for the shortcut to apply, and both paths agree
        let f = x(1, 1, 0).mul(&x(2, 2, 1));
        assert!(!in_ideal(&f, 3).unwrap());
        assert_eq!(in_ideal(&f, 2).unwrap(), qh(&f, 1).is_zero());
    }

    #[test]
    fn ordering_examples() {
        assert!(sym("0:(1,2|1,2)") < sym("5:(1|1)"));
        assert!(sym("0:(1|1)") < sym("1:(1|1)"));
        // word u_h..u_1 v_h..v_1: compare last row first
        assert!(sym("0:(2,3|1,2)") < sym("0:(1,4|1,2)"));
        assert!(sym("0:(1|1)") < sym("0:(1|2)"));
        assert!(sym("0:(1|2)") < sym("0:(2|1)"));
    }

    #[test]
    fn heap_permutations_have_correct_signs() {
        for n in 0..5 {
            let perms = permutations(n);
            assert_eq!(perms.len(), (1..=n).product::<usize>().max(1));
            for (p, s) in perms {
                let mut v: Vec<u8> = p.iter().map(|&i| i as u8).collect();
                assert_eq!(sort_with_sign(&mut v), s);
            }
        }
    }

    fn index_set(max: u8, len: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::sample::subsequence((1..=max).collect::<Vec<_>>(), len)
    }

    proptest! {
        #[test]
        fn expansion_matches_iterated_derivative(
            (rows, cols) in (1usize..4).prop_flat_map(|h| (index_set(4, h), index_set(4, h))),
            n in 0u32..5,
        ) {
            let base = MinorSymbol::new(0, &rows, &cols).unwrap();
            let direct = expand_minor(&base.with_weight(n));
            prop_assert_eq!(direct, expand_minor(&base).dbar(n).unwrap());
        }

        #[test]
        fn laplace_along_any_row(
            (rows, cols) in (1usize..5).prop_flat_map(|h| (index_set(4, h), index_set(4, h))),
            pick in 0usize..4,
        ) {
            let h = rows.len();
            let r = pick % h;
            let mut sum = Polynomial::zero();
            for c in 0..h {
                let sub_rows: Vec<u8> = rows.iter().enumerate().filter(|(i, _)| *i != r).map(|(_, v)| *v).collect();
                let sub_cols: Vec<u8> = cols.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, v)| *v).collect();
                let minor = minor_det(&sub_rows, &sub_cols).unwrap();
                let term = x(rows[r], cols[c], 0).mul(&minor);
                sum = if (r + c) % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
            }
            prop_assert_eq!(sum, minor_det(&rows, &cols).unwrap());
        }
    }
}
