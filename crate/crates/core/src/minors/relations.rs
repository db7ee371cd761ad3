//! Determinant sums that lie in determinantal ideals, and the quadratic
//! relations among minor symbols built from them.
//!
//! Everything here lives in a square ambient matrix of size `s`, with row
//! and column labels `1..=s`. Index sets are ascending slices.

use rustc_hash::FxHashMap;

use super::normalized_derivative_det;
use crate::error::{Error, Result};
use crate::int::{binomial, Int};
use crate::linalg::{solve, SparseMatrix};
use crate::ring::{Polynomial, Side, Var};

use num_rational::BigRational;
use num_traits::One;

/// All subsets of `universe` of the given size, in lexicographic order.
pub fn subsets(universe: &[u8], size: usize) -> Vec<Vec<u8>> {
    fn go(u: &[u8], size: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..u.len() {
            if u.len() - i < size - cur.len() {
                break;
            }
            cur.push(u[i]);
            go(u, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(universe, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// All subsets of `universe`, by size then lexicographically.
pub fn power_set(universe: &[u8]) -> Vec<Vec<u8>> {
    (0..=universe.len())
        .flat_map(|k| subsets(universe, k))
        .collect()
}

/// `{1..=s}` minus `set`.
pub fn complement(set: &[u8], s: usize) -> Vec<u8> {
    (1..=s as u8).filter(|i| !set.contains(i)).collect()
}

fn is_subset(a: &[u8], b: &[u8]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn disjoint(a: &[u8], b: &[u8]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// `(-1)` to the sum of all indices in both sets.
pub fn epsilon(rows: &[u8], cols: &[u8]) -> Int {
    let total: u32 = rows.iter().chain(cols).map(|&x| x as u32).sum();
    if total.is_multiple_of(2) {
        Int::ONE
    } else {
        -Int::ONE
    }
}

/// Memoized `dbar(n)` of determinants on index sets.
#[derive(Default)]
struct DetCache(FxHashMap<(u32, Vec<u8>, Vec<u8>), Polynomial>);

impl DetCache {
    fn get(&mut self, n: u32, rows: &[u8], cols: &[u8]) -> Polynomial {
        self.0
            .entry((n, rows.to_vec(), cols.to_vec()))
            .or_insert_with(|| {
                normalized_derivative_det(rows, cols, n).expect("index sets are valid")
            })
            .clone()
    }
}

fn check_sets(s: usize, sets: &[&[u8]]) -> Result<()> {
    for set in sets {
        if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&x| x == 0 || x as usize > s) {
            return Err(Error::usage(format!(
                "index set {set:?} must be ascending within 1..={s}"
            )));
        }
    }
    Ok(())
}

/// Constraint sets of the complementary-minor sums: rows `N` range over
/// `row_in <= N <= complement(row_out)` and columns likewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub s: usize,
    pub row_in: Vec<u8>,
    pub row_out: Vec<u8>,
    pub col_in: Vec<u8>,
    pub col_out: Vec<u8>,
    pub n: usize,
}

impl Frame {
    /// The unconstrained frame.
    pub fn free(s: usize, n: usize) -> Self {
        Frame {
            s,
            row_in: Vec::new(),
            row_out: Vec::new(),
            col_in: Vec::new(),
            col_out: Vec::new(),
            n,
        }
    }

    /// `room` additionally requires the constraint sets to fit beside the
    /// complement, which the vanishing bounds assume.
    fn validate(&self, room: bool) -> Result<()> {
        check_sets(
            self.s,
            &[&self.row_in, &self.row_out, &self.col_in, &self.col_out],
        )?;
        if !disjoint(&self.row_in, &self.row_out) || !disjoint(&self.col_in, &self.col_out) {
            return Err(Error::usage("required and excluded index sets must be disjoint"));
        }
        if self.n > self.s {
            return Err(Error::usage("minor size exceeds the ambient size"));
        }
        let free = self.s - self.n;
        if room
            && (self.row_in.len() + self.row_out.len() > free
                || self.col_in.len() + self.col_out.len() > free)
        {
            return Err(Error::usage("constraint sets exceed the complementary size"));
        }
        Ok(())
    }

    /// The slack in the vanishing bound for sums in this frame:
    /// `2(s-n) - |constraint sets| - 1`.
    pub fn bound(&self) -> i64 {
        2 * (self.s - self.n) as i64
            - (self.row_in.len() + self.row_out.len() + self.col_in.len() + self.col_out.len())
                as i64
            - 1
    }

    fn choices(&self, inside: &[u8], outside: &[u8]) -> Vec<Vec<u8>> {
        let universe: Vec<u8> = (1..=self.s as u8).collect();
        subsets(&universe, self.n)
            .into_iter()
            .filter(|set| is_subset(inside, set) && disjoint(set, outside))
            .collect()
    }
}

/// The complementary-minor sum: over admissible `N`, `J` of size `n`,
/// `eps(N,J) dbar(l) A(N,J) * dbar(k-l) A(N^c, J^c)`.
pub fn f_sum(frame: &Frame, k: u32, l: u32) -> Result<Polynomial> {
    frame.validate(true)?;
    sum_in_frame(frame, k, l)
}

fn sum_in_frame(frame: &Frame, k: u32, l: u32) -> Result<Polynomial> {
    if l > k {
        return Err(Error::usage("derivative split exceeds the total order"));
    }
    let mut cache = DetCache::default();
    let mut acc = Polynomial::zero();
    let rows = frame.choices(&frame.row_in, &frame.row_out);
    let cols = frame.choices(&frame.col_in, &frame.col_out);
    for nset in &rows {
        let nbar = complement(nset, frame.s);
        for jset in &cols {
            let jbar = complement(jset, frame.s);
            let left = cache.get(l, nset, jset);
            let right = cache.get(k - l, &nbar, &jbar);
            acc = acc.add(&left.mul(&right).scale(&epsilon(nset, jset)));
        }
    }
    Ok(acc)
}

/// Row-directional derivative sum over `L <= N <= I` with `|N| = n`:
/// `sum_N dbar_N(l) A(I, K)`.
pub fn directional_sum(i: &[u8], k: &[u8], l_set: &[u8], n: usize, l: u32) -> Result<Polynomial> {
    let s = i.iter().chain(k).chain(l_set).copied().max().unwrap_or(0) as usize;
    check_sets(s, &[i, k, l_set])?;
    if i.len() != k.len() || !is_subset(l_set, i) || n < l_set.len() || n > i.len() {
        return Err(Error::usage("need |I| = |K|, L inside I and |L| <= n <= |I|"));
    }
    let det = normalized_derivative_det(i, k, 0)?;
    let mut acc = Polynomial::zero();
    for nset in subsets(i, n) {
        if is_subset(l_set, &nset) {
            acc = acc.add(&det.dbar_directional(l, &nset, Side::Row)?);
        }
    }
    Ok(acc)
}

/// Sum over `J <= I <= T^c` with `|I| = |K|` of
/// `eps(I,K) dbar(a) A(I,K) * dbar_T(l-a) A(I^c, K^c)` in ambient size `s`.
pub fn split_sum(s: usize, t: &[u8], j: &[u8], k: &[u8], a: u32, l: u32) -> Result<Polynomial> {
    check_sets(s, &[t, j, k])?;
    if !disjoint(j, t) || a > l {
        return Err(Error::usage("need J and T disjoint and a <= l"));
    }
    let universe: Vec<u8> = (1..=s as u8).collect();
    let mut cache = DetCache::default();
    let kbar = complement(k, s);
    let mut acc = Polynomial::zero();
    for iset in subsets(&universe, k.len()) {
        if !is_subset(j, &iset) || !disjoint(&iset, t) {
            continue;
        }
        let ibar = complement(&iset, s);
        let left = cache.get(a, &iset, k);
        let right = cache.get(0, &ibar, &kbar).dbar_directional(l - a, t, Side::Row)?;
        acc = acc.add(&left.mul(&right).scale(&epsilon(&iset, k)));
    }
    Ok(acc)
}

/// Integers `c_0..=c_m` with `c_{k0+j} = window[j]` for `j <= l0` such that
/// `sum_k c_k F^m_k` lies in the ideal, built from the derived relations
/// `dbar(m-l) F^l_0 = sum_k C(m-k, l) F^m_k`, `l <= l0`.
pub fn relation_coeffs(m: u32, k0: u32, window: &[Int]) -> Result<Vec<Int>> {
    let Some(l0) = window.len().checked_sub(1) else {
        return Err(Error::usage("coefficient window must be non-empty"));
    };
    let l0 = l0 as u32;
    if k0 + l0 > m {
        return Err(Error::usage(format!(
            "window {k0}..={} exceeds order {m}",
            k0 + l0
        )));
    }
    // beta solves sum_l beta_l C(m-k0-j, l) = window_j.
    let size = l0 as usize + 1;
    let entries = (0..size).flat_map(|j| {
        (0..size).map(move |l| {
            let c = binomial(m - k0 - j as u32, l as u32);
            (j, l, BigRational::from_integer(c.to_bigint()))
        })
    });
    let mat = SparseMatrix::from_triplets(size, size, entries)?;
    let rhs: Vec<BigRational> = window
        .iter()
        .map(|w| BigRational::from_integer(w.to_bigint()))
        .collect();
    let sol = solve(&mat, &rhs)?
        .filter(|s| s.unique)
        .ok_or_else(|| Error::invariant("binomial window matrix is singular"))?;
    let beta = sol
        .values
        .iter()
        .map(|v| {
            if v.denom().is_one() {
                Ok(Int::from(v.numer().clone()))
            } else {
                Err(Error::invariant("binomial window matrix is not unimodular"))
            }
        })
        .collect::<Result<Vec<Int>>>()?;
    Ok((0..=m)
        .map(|k| {
            beta.iter().enumerate().fold(Int::ZERO, |acc, (l, b)| {
                &acc + &(b * &binomial(m - k, l as u32))
            })
        })
        .collect())
}

/// Combination `sum_k c_k F^m_k` in a frame.
pub fn f_combination(frame: &Frame, m: u32, coeffs: &[Int]) -> Result<Polynomial> {
    frame.validate(true)?;
    combination_in_frame(frame, m, coeffs)
}

fn combination_in_frame(frame: &Frame, m: u32, coeffs: &[Int]) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&sum_in_frame(frame, m, k as u32)?.scale(c));
        }
    }
    Ok(acc)
}

/// Shape and labels of a quadratic relation between an upper minor of
/// size `h` and a lower minor of size `h_low <= h`.
///
/// The first `i1` rows and `j1` columns of the upper minor and the first
/// `i2` rows and `j2` columns of the lower one are shuffled; rows and
/// columns are listed from position 1 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub upper_rows: Vec<u8>,
    pub upper_cols: Vec<u8>,
    pub lower_rows: Vec<u8>,
    pub lower_cols: Vec<u8>,
    pub i1: usize,
    pub j1: usize,
    pub i2: usize,
    pub j2: usize,
    pub m: u32,
    pub k0: u32,
    /// Prescribed coefficients of `dbar(k)` on the lower minor for
    /// `k0 <= k <= k0 + l0`.
    pub window: Vec<Int>,
}

impl QuadraticRelation {
    /// The canonical labelling: upper minor on `1..=h`, lower on `h+1..=h+h_low`.
    pub fn canonical(h: usize, h_low: usize, shuffle: [usize; 4], m: u32, k0: u32, window: Vec<Int>) -> Self {
        let upper: Vec<u8> = (1..=h as u8).collect();
        let lower: Vec<u8> = (h as u8 + 1..=(h + h_low) as u8).collect();
        QuadraticRelation {
            upper_rows: upper.clone(),
            upper_cols: upper,
            lower_rows: lower.clone(),
            lower_cols: lower,
            i1: shuffle[0],
            j1: shuffle[1],
            i2: shuffle[2],
            j2: shuffle[3],
            m,
            k0,
            window,
        }
    }

    pub fn h(&self) -> usize {
        self.upper_rows.len()
    }

    pub fn h_low(&self) -> usize {
        self.lower_rows.len()
    }

    /// `i1 + i2 + j1 + j2 - 2h - 1`; the window has `l0 + 1` entries.
    pub fn l0(&self) -> i64 {
        (self.i1 + self.i2 + self.j1 + self.j2) as i64 - 2 * self.h() as i64 - 1
    }

    fn validate(&self) -> Result<()> {
        let (h, h2) = (self.h(), self.h_low());
        if self.upper_cols.len() != h || self.lower_cols.len() != h2 || h2 == 0 || h2 > h {
            return Err(Error::usage("need square minors with 1 <= lower size <= upper size"));
        }
        if self.i1 > h || self.j1 > h || self.i2 > h2 || self.j2 > h2 {
            return Err(Error::usage("shuffle lengths exceed the minor sizes"));
        }
        let l0 = self.l0();
        if l0 < 0 {
            return Err(Error::usage(format!("shuffle too short: l0 = {l0}")));
        }
        if self.window.len() as i64 != l0 + 1 {
            return Err(Error::usage(format!("window must have {} entries", l0 + 1)));
        }
        if self.k0 as i64 + l0 > self.m as i64 {
            return Err(Error::usage("window reaches beyond the total order m"));
        }
        let labels = [&self.upper_rows, &self.upper_cols, &self.lower_rows, &self.lower_cols];
        if labels.iter().any(|v| v.contains(&0)) {
            return Err(Error::usage("indices start at 1"));
        }
        Ok(())
    }

    /// Coefficients `a_0..=a_m`, `a_k` multiplying `dbar(m-k)` on the upper
    /// and `dbar(k)` on the lower minor.
    pub fn coefficients(&self) -> Result<Vec<Int>> {
        self.validate()?;
        let l0 = self.l0() as u32;
        // a_k = c_{m-k}; the prescribed a-window maps to a reversed c-window.
        let window: Vec<Int> = self.window.iter().rev().cloned().collect();
        let c = relation_coeffs(self.m, self.m - self.k0 - l0, &window)?;
        Ok(c.into_iter().rev().collect())
    }

    /// The relation as a polynomial in the ideal of `(h+1)`-minors.
    pub fn polynomial(&self) -> Result<Polynomial> {
        let a = self.coefficients()?;
        let (h, h2) = (self.h(), self.h_low());
        let s = h + h2;
        let frame = Frame {
            s,
            row_in: (self.i1 as u8 + 1..=h as u8).collect(),
            row_out: ((h + self.i2) as u8 + 1..=s as u8).collect(),
            col_in: (self.j1 as u8 + 1..=h as u8).collect(),
            col_out: ((h + self.j2) as u8 + 1..=s as u8).collect(),
            n: h,
        };
        let c: Vec<Int> = a.into_iter().rev().collect();
        // Short shuffles overfill the frame; the sum is still well defined
        // and still lands in the ideal, so the room condition is not imposed.
        frame.validate(false)?;
        let square = combination_in_frame(&frame, self.m, &c)?;
        let row_label: Vec<u8> = self.upper_rows.iter().chain(&self.lower_rows).copied().collect();
        let col_label: Vec<u8> = self.upper_cols.iter().chain(&self.lower_cols).copied().collect();
        Ok(square.substitute(|v| {
            Polynomial::var(Var::x(
                row_label[v.first as usize - 1],
                col_label[v.second as usize - 1],
                v.level,
            ))
        }))
    }
}

/// The shuffle form of the relation: for each `k`, the signed sum over all
/// ways to redistribute the shuffled rows and columns between the two
/// minors, with `dbar(m-k)` on the upper and `dbar(k)` on the lower minor.
/// Each distinct product is counted once.
pub fn shuffle_form(rel: &QuadraticRelation) -> Result<Polynomial> {
    let a = rel.coefficients()?;
    let (h, h2) = (rel.h(), rel.h_low());
    let mut acc = Polynomial::zero();
    // positions are 1-based labels in the square layout
    let row_pool: Vec<u8> = (1..=rel.i1 as u8).chain(h as u8 + 1..=(h + rel.i2) as u8).collect();
    let col_pool: Vec<u8> = (1..=rel.j1 as u8).chain(h as u8 + 1..=(h + rel.j2) as u8).collect();
    let mut cache = DetCache::default();
    for (k, coeff) in a.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let k = k as u32;
        for up_r in subsets(&row_pool, rel.i1) {
            let low_r: Vec<u8> = row_pool.iter().copied().filter(|x| !up_r.contains(x)).collect();
            for up_c in subsets(&col_pool, rel.j1) {
                let low_c: Vec<u8> = col_pool.iter().copied().filter(|x| !up_c.contains(x)).collect();
                // upper: shuffled part followed by fixed positions i1+1..h
                let mut ur: Vec<u8> = up_r.clone();
                ur.extend(rel.i1 as u8 + 1..=h as u8);
                let mut uc: Vec<u8> = up_c.clone();
                uc.extend(rel.j1 as u8 + 1..=h as u8);
                let mut lr: Vec<u8> = low_r.clone();
                lr.extend((h + rel.i2) as u8 + 1..=(h + h2) as u8);
                let mut lc: Vec<u8> = low_c.clone();
                lc.extend((h + rel.j2) as u8 + 1..=(h + h2) as u8);
                let sign = shuffle_sign(&row_pool, &up_r, &low_r) * shuffle_sign(&col_pool, &up_c, &low_c);
                let (su, upper) = signed_det(&mut cache, rel.m - k, &ur, &uc);
                let (sl, lower) = signed_det(&mut cache, k, &lr, &lc);
                let total = Int::from((sign * su * sl) as i64);
                acc = acc.add(&upper.mul(&lower).scale(&(&total * coeff)));
            }
        }
    }
    let row_label: Vec<u8> = rel.upper_rows.iter().chain(&rel.lower_rows).copied().collect();
    let col_label: Vec<u8> = rel.upper_cols.iter().chain(&rel.lower_cols).copied().collect();
    Ok(acc.substitute(|v| {
        Polynomial::var(Var::x(
            row_label[v.first as usize - 1],
            col_label[v.second as usize - 1],
            v.level,
        ))
    }))
}

/// Sign of the permutation taking `pool` to `first ++ second`.
fn shuffle_sign(pool: &[u8], first: &[u8], second: &[u8]) -> i8 {
    let mut seq: Vec<u8> = first.iter().chain(second).copied().collect();
    debug_assert_eq!(seq.len(), pool.len());
    super::sort_with_sign(&mut seq)
}

fn signed_det(cache: &mut DetCache, n: u32, rows: &[u8], cols: &[u8]) -> (i8, Polynomial) {
    let (mut r, mut c) = (rows.to_vec(), cols.to_vec());
    let sign = super::sort_with_sign(&mut r) * super::sort_with_sign(&mut c);
    if sign == 0 {
        return (0, Polynomial::zero());
    }
    (sign, cache.get(n, &r, &c))
}

/// Coefficient of `F^(k+m)_(l+a)` in `dbar(m) F^k_l`.
pub fn f_sum_derivative_coeff(k: u32, l: u32, m: u32, a: u32) -> Int {
    &binomial(l + a, l) * &binomial(k + m - l - a, k - l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{in_ideal, minor_det};

    fn x(i: u8, j: u8) -> Polynomial {
        Polynomial::var(Var::x(i, j, 0))
    }

    #[test]
    fn subsets_and_complements() {
        assert_eq!(subsets(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(power_set(&[1, 2]).len(), 4);
        assert_eq!(complement(&[2], 3), vec![1, 3]);
        assert_eq!(epsilon(&[1], &[2]), -Int::ONE);
    }

    #[test]
    fn f_sum_examples() {
        let f = f_sum(&Frame::free(2, 1), 0, 0).unwrap();
        let det = x(1, 1).mul(&x(2, 2)).sub(&x(1, 2).mul(&x(2, 1)));
        assert_eq!(f, det.scale(&Int::from(2)));
        let full = f_sum(&Frame::free(3, 3), 0, 0).unwrap();
        assert_eq!(full, minor_det(&[1, 2, 3], &[1, 2, 3]).unwrap());
        let mut bad = Frame::free(2, 1);
        bad.row_in = vec![1];
        bad.row_out = vec![1];
        assert!(f_sum(&bad, 0, 0).is_err());
    }

    #[test]
    fn f_sum_derivative_identity() {
        let mut frame = Frame::free(3, 1);
        frame.row_in = vec![2];
        frame.col_out = vec![3];
        for k in 0..3 {
            for l in 0..=k {
                for m in 0..3 {
                    let lhs = f_sum(&frame, k, l).unwrap().dbar(m).unwrap();
                    let mut rhs = Polynomial::zero();
                    for a in 0..=m {
                        let c = f_sum_derivative_coeff(k, l, m, a);
                        rhs = rhs.add(&f_sum(&frame, k + m, l + a).unwrap().scale(&c));
                    }
                    assert_eq!(lhs, rhs, "k={k} l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(relation_coeffs(3, 1, &[Int::ZERO, Int::ZERO]).unwrap(), vec![Int::ZERO; 4]);
        let w: Vec<Int> = [3, -1, 2].map(Int::from).to_vec();
        assert_eq!(relation_coeffs(2, 0, &w).unwrap(), w);
        let c = relation_coeffs(4, 2, &[Int::ONE]).unwrap();
        assert_eq!(c[2], Int::ONE);
        assert!(relation_coeffs(2, 2, &[Int::ONE, Int::ONE]).is_err());
        // l0 = 0: the combination is dbar(m) of F^0_0, up to the window scale
        let frame = Frame::free(2, 1);
        let c = relation_coeffs(2, 0, &[Int::ONE]).unwrap();
        let combo = f_combination(&frame, 2, &c).unwrap();
        assert_eq!(combo, f_sum(&frame, 0, 0).unwrap().dbar(2).unwrap());
        assert!(in_ideal(&combo, 2).unwrap());
    }

    #[test]
    fn quadratic_relation_examples() {
        let w = vec![Int::from(1), Int::from(-2)];
        let rel = QuadraticRelation::canonical(1, 1, [1, 1, 1, 1], 1, 0, w);
        let p = rel.polynomial().unwrap();
        assert!(!p.is_zero());
        assert!(in_ideal(&p, 2).unwrap());
        for (m, _) in p.terms() {
            assert_eq!((m.degree(), m.weight()), (2, 1));
        }
        let zero = QuadraticRelation::canonical(1, 1, [1, 1, 1, 1], 1, 0, vec![Int::ZERO; 2]);
        assert!(zero.polynomial().unwrap().is_zero());
        let short = QuadraticRelation::canonical(2, 1, [1, 1, 1, 1], 1, 0, vec![]);
        assert!(short.polynomial().is_err());
        // rows barely shuffled: the frame overfills, the relation still holds
        let lopsided = QuadraticRelation::canonical(2, 2, [0, 2, 1, 2], 2, 1, vec![Int::ONE]);
        let p = lopsided.polynomial().unwrap();
        assert!(!p.is_zero());
        assert!(in_ideal(&p, 3).unwrap());
    }

    #[test]
    fn shuffle_form_matches_up_to_sign() {
        for (h, h2, sh) in [(1, 1, [1, 1, 1, 1]), (2, 1, [2, 1, 1, 1]), (2, 2, [2, 2, 1, 1]), (2, 1, [2, 2, 1, 1])] {
            let rel = QuadraticRelation::canonical(h, h2, sh, 2, 0, vec![Int::ONE; 0]);
            let l0 = rel.l0();
            let rel = QuadraticRelation { window: vec![Int::ONE; (l0 + 1) as usize], ..rel };
            let a = rel.polynomial().unwrap();
            let b = shuffle_form(&rel).unwrap();
            assert!(a == b || a == b.neg(), "h={h} h'={h2} shuffle={sh:?}");
            assert!(in_ideal(&b, h + 1).unwrap());
        }
    }

    #[test]
    fn relabelled_relation_stays_in_ideal() {
        let rel = QuadraticRelation {
            upper_rows: vec![1, 3],
            upper_cols: vec![2, 3],
            lower_rows: vec![2],
            lower_cols: vec![1],
            i1: 2,
            j1: 2,
            i2: 1,
            j2: 0,
            m: 2,
            k0: 0,
            window: vec![Int::from(5)],
        };
        let p = rel.polynomial().unwrap();
        assert!(in_ideal(&p, 3).unwrap());
    }
}
