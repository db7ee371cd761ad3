//! Straightening and dimension counts by direct linear algebra.
//!
//! Everything here is graded by content: the multiset of row indices, the
//! multiset of column indices and the total level of an `x` monomial. Minor
//! expansions are homogeneous for this grading, so each content class is an
//! independent finite problem: the class of the input, the span of the
//! ideal generators times monomials inside it, and the standard products
//! living there.

use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{validate, StandardCombination};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{solve, Echelon, SparseMatrix, SparseVec};
use crate::minors::relations::subsets;
use crate::minors::{expand_minor, MinorSymbol};
use crate::ring::{Monomial, Polynomial, Var};
use crate::tableaux::{enumerate_standard, StandardProduct};

/// Sorted row multiset, sorted column multiset, total level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Content {
    pub rows: Vec<u8>,
    pub cols: Vec<u8>,
    pub weight: u32,
}

impl Content {
    pub fn of_product(js: &[MinorSymbol]) -> Self {
        let mut rows: Vec<u8> = js.iter().flat_map(|j| j.rows().iter().copied()).collect();
        let mut cols: Vec<u8> = js.iter().flat_map(|j| j.cols().iter().copied()).collect();
        rows.sort_unstable();
        cols.sort_unstable();
        Content {
            rows,
            cols,
            weight: js.iter().map(MinorSymbol::weight).sum(),
        }
    }

    pub fn of_monomial(m: &Monomial) -> Self {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut weight = 0;
        for &(v, e) in m.factors() {
            for _ in 0..e {
                rows.push(v.first);
                cols.push(v.second);
            }
            weight += u32::from(v.level) * u32::from(e);
        }
        rows.sort_unstable();
        cols.sort_unstable();
        Content { rows, cols, weight }
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    /// Removes one minor's indices and weight; `None` when they are not contained.
    fn minus(&self, rows: &[u8], cols: &[u8], weight: u32) -> Option<Content> {
        let take = |from: &[u8], out: &[u8]| -> Option<Vec<u8>> {
            let mut rest = from.to_vec();
            for x in out {
                let pos = rest.iter().position(|y| y == x)?;
                rest.remove(pos);
            }
            Some(rest)
        };
        Some(Content {
            rows: take(&self.rows, rows)?,
            cols: take(&self.cols, cols)?,
            weight: self.weight.checked_sub(weight)?,
        })
    }
}

fn counted(multiset: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut values: Vec<u8> = multiset.to_vec();
    values.dedup();
    let counts = values
        .iter()
        .map(|v| multiset.iter().filter(|x| *x == v).count() as u8)
        .collect();
    (values, counts)
}

/// Every `x` monomial of exactly the given content.
pub fn monomials_with_content(c: &Content) -> Vec<Monomial> {
    let (row_vals, mut row_left) = counted(&c.rows);
    let (col_vals, mut col_left) = counted(&c.cols);
    let mut vars = Vec::new();
    for ri in 0..row_vals.len() {
        for ci in 0..col_vals.len() {
            for k in 0..=c.weight {
                vars.push((ri, ci, k));
            }
        }
    }

    struct Walk<'a> {
        vars: &'a [(usize, usize, u32)],
        row_vals: &'a [u8],
        col_vals: &'a [u8],
        out: Vec<Monomial>,
    }
    fn go(
        walk: &mut Walk<'_>,
        start: usize,
        left: usize,
        row_left: &mut [u8],
        col_left: &mut [u8],
        w_left: u32,
        cur: &mut Vec<Var>,
    ) {
        if left == 0 {
            if w_left == 0 {
                walk.out.push(Monomial::from_factors(cur.iter().map(|&v| (v, 1))));
            }
            return;
        }
        for idx in start..walk.vars.len() {
            let (ri, ci, k) = walk.vars[idx];
            if row_left[ri] == 0 || col_left[ci] == 0 || k > w_left {
                continue;
            }
            row_left[ri] -= 1;
            col_left[ci] -= 1;
            cur.push(Var::x(walk.row_vals[ri], walk.col_vals[ci], k as u16));
            go(walk, idx, left - 1, row_left, col_left, w_left - k, cur);
            cur.pop();
            row_left[ri] += 1;
            col_left[ci] += 1;
        }
    }

    let mut walk = Walk {
        vars: &vars,
        row_vals: &row_vals,
        col_vals: &col_vals,
        out: Vec::new(),
    };
    go(
        &mut walk,
        0,
        c.degree(),
        &mut row_left,
        &mut col_left,
        c.weight,
        &mut Vec::new(),
    );
    walk.out
}

/// One content class: its monomial basis and the ideal's span inside it.
#[derive(Debug)]
struct Slice {
    index: FxHashMap<Monomial, usize>,
    ideal: Echelon,
}

impl Slice {
    fn vector(&self, f: &Polynomial) -> Result<SparseVec> {
        let mut v = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let col = self
                .index
                .get(m)
                .ok_or_else(|| Error::invariant(format!("{m} lies outside its content class")))?;
            v.push((*col, c.clone()));
        }
        v.sort_unstable_by_key(|e| e.0);
        Ok(v)
    }

    fn dim(&self) -> usize {
        self.index.len() - self.ideal.rank()
    }
}

/// The standard products of one class reduced modulo the ideal, as the
/// columns of a linear system.
#[derive(Debug)]
struct ClassSystem {
    basis: Vec<StandardProduct>,
    row_of: FxHashMap<usize, usize>,
    matrix: SparseMatrix,
}

/// Content-graded linear algebra in the `x` ring modulo the `(h+1)`-minors,
/// with every slice and expansion cached for reuse across calls.
#[derive(Debug)]
pub struct Oracle {
    p: usize,
    q: usize,
    h: usize,
    slices: FxHashMap<Content, Slice>,
    monomials: FxHashMap<Content, Vec<Monomial>>,
    expansions: FxHashMap<MinorSymbol, Polynomial>,
    standard: FxHashMap<(usize, u32), FxHashMap<Content, Vec<StandardProduct>>>,
    systems: FxHashMap<Content, ClassSystem>,
}

impl Oracle {
    pub fn new(p: usize, q: usize, h: usize) -> Self {
        Oracle {
            p,
            q,
            h,
            slices: FxHashMap::default(),
            monomials: FxHashMap::default(),
            expansions: FxHashMap::default(),
            standard: FxHashMap::default(),
            systems: FxHashMap::default(),
        }
    }

    fn expansion(&mut self, j: &MinorSymbol) -> &Polynomial {
        self.expansions
            .entry(j.clone())
            .or_insert_with(|| expand_minor(j))
    }

    fn product(&mut self, js: &[MinorSymbol]) -> Polynomial {
        let mut acc = Polynomial::one();
        for j in js {
            acc = acc.mul(self.expansion(j));
        }
        acc
    }

    fn monomials(&mut self, c: &Content) -> &Vec<Monomial> {
        self.monomials
            .entry(c.clone())
            .or_insert_with(|| monomials_with_content(c))
    }

    fn slice(&mut self, c: &Content) -> &Slice {
        if !self.slices.contains_key(c) {
            let slice = self.build_slice(c);
            self.slices.insert(c.clone(), slice);
        }
        &self.slices[c]
    }

    fn build_slice(&mut self, c: &Content) -> Slice {
        let index: FxHashMap<Monomial, usize> = self
            .monomials(c)
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut slice = Slice {
            index,
            ideal: Echelon::new(),
        };
        let n = self.h + 1;
        if c.degree() < n {
            return slice;
        }
        let mut row_set = c.rows.clone();
        row_set.dedup();
        let mut col_set = c.cols.clone();
        col_set.dedup();
        'fill: for rows in subsets(&row_set, n) {
            for cols in subsets(&col_set, n) {
                for k in 0..=c.weight {
                    let Some(rest) = c.minus(&rows, &cols, k) else { continue };
                    let generator = expand_minor(&MinorSymbol::new(k, &rows, &cols).expect("subsets ascend"));
                    let partners = self.monomials(&rest).clone();
                    for m in partners {
                        if slice.ideal.rank() == slice.index.len() {
                            break 'fill;
                        }
                        let f = generator.mul(&Polynomial::term(m, Int::ONE));
                        let v = slice.vector(&f).expect("generators are content-homogeneous");
                        slice.ideal.insert(v);
                    }
                }
            }
        }
        slice
    }

    /// Dimension of one content class of the quotient.
    pub fn class_dim(&mut self, c: &Content) -> usize {
        self.slice(c).dim()
    }

    /// Dimension of the quotient in degree `d` and weight `w`.
    pub fn graded_dim(&mut self, d: usize, w: u32) -> usize {
        let row_classes = multisets(self.p as u8, d);
        let col_classes = multisets(self.q as u8, d);
        let mut total = 0;
        for rows in &row_classes {
            for cols in &col_classes {
                let c = Content {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    weight: w,
                };
                total += self.class_dim(&c);
                // slices of a finished sweep are not revisited
                self.slices.remove(&c);
            }
        }
        total
    }

    fn standard_in(&mut self, c: &Content) -> Vec<StandardProduct> {
        let (p, q, h) = (self.p, self.q, self.h);
        let by_content = self.standard.entry((c.degree(), c.weight)).or_insert_with(|| {
            let mut map: FxHashMap<Content, Vec<StandardProduct>> = FxHashMap::default();
            for s in enumerate_standard(p, q, h, c.degree(), c.weight) {
                map.entry(Content::of_product(s.factors())).or_default().push(s);
            }
            map
        });
        by_content.get(c).cloned().unwrap_or_default()
    }

    fn system(&mut self, c: &Content) -> Result<&ClassSystem> {
        if !self.systems.contains_key(c) {
            let basis = self.standard_in(c);
            let images: Vec<Polynomial> = basis.iter().map(|s| self.product(s.factors())).collect();
            let slice = self.slice(c);
            // rows of the system are the monomials surviving reduction
            let mut row_of: FxHashMap<usize, usize> = FxHashMap::default();
            let mut entries = Vec::new();
            for (k, img) in images.iter().enumerate() {
                let (lambda, r) = slice.ideal.normal_form(&slice.vector(img)?);
                for (col, x) in r {
                    let next = row_of.len();
                    let row = *row_of.entry(col).or_insert(next);
                    entries.push((row, k, BigRational::from_integer(x.to_bigint()) / &lambda));
                }
            }
            let matrix = SparseMatrix::from_triplets(row_of.len(), basis.len(), entries)?;
            self.systems.insert(c.clone(), ClassSystem { basis, row_of, matrix });
        }
        Ok(&self.systems[c])
    }

    /// Coefficients of `js` in the standard basis, found by solving for
    /// the combination whose difference with the product lies in the ideal.
    pub fn straighten(&mut self, js: &[MinorSymbol]) -> Result<StandardCombination> {
        validate(js, self.p, self.q, self.h)?;
        let c = Content::of_product(js);
        let target = self.product(js);
        self.system(&c)?;
        let (slice, system) = (&self.slices[&c], &self.systems[&c]);
        let missing = || {
            Error::invariant(format!(
                "{} is not a combination of standard products",
                crate::tableaux::display_product(js)
            ))
        };

        let (lambda, r) = slice.ideal.normal_form(&slice.vector(&target)?);
        let mut rhs = vec![BigRational::zero(); system.row_of.len()];
        for (col, x) in r {
            let row = *system.row_of.get(&col).ok_or_else(missing)?;
            rhs[row] = BigRational::from_integer(x.to_bigint()) / &lambda;
        }
        let solution = solve(&system.matrix, &rhs)?.ok_or_else(missing)?;
        if !solution.unique {
            return Err(Error::invariant(format!(
                "standard products are dependent in the class of {}",
                crate::tableaux::display_product(js)
            )));
        }
        let mut out = StandardCombination::new();
        for (s, x) in system.basis.iter().zip(solution.values) {
            if !x.is_integer() {
                return Err(Error::invariant(format!("coefficient {x} of [{s}] is not an integer")));
            }
            out.add(s.clone(), &Int::from(x.to_integer()));
        }
        Ok(out)
    }
}

/// Sorted multisets of size `d` drawn from `1..=n`.
fn multisets(n: u8, d: usize) -> Vec<Vec<u8>> {
    fn go(n: u8, from: u8, d: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in from..=n {
            cur.push(x);
            go(n, x, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Dimension of the degree-`d`, weight-`w` part of the `x` ring modulo the
/// ideal of `(h+1)`-minors and their derivatives.
pub fn graded_dim(p: usize, q: usize, h: usize, d: usize, w: u32) -> usize {
    Oracle::new(p, q, h).graded_dim(d, w)
}

/// One-shot form of [`Oracle::straighten`].
pub fn straighten_oracle(js: &[MinorSymbol], p: usize, q: usize, h: usize) -> Result<StandardCombination> {
    Oracle::new(p, q, h).straighten(js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::straighten::straighten;
    use crate::tableaux::symbols;

    fn product(s: &str) -> Vec<MinorSymbol> {
        crate::minors::parse_product(s).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(graded_dim(1, 1, 1, 2, 1), 1);
        assert_eq!(graded_dim(2, 2, 1, 2, 0), 9);
        assert_eq!(graded_dim(2, 2, 1, 0, 0), 1);
        assert_eq!(graded_dim(2, 2, 1, 0, 3), 0);
        // with h at least min(p, q) nothing is killed
        assert_eq!(graded_dim(2, 2, 2, 2, 0), 10);
    }

    #[test]
    fn content_slices_partition_the_monomials() {
        let c = Content { rows: vec![1, 1, 2], cols: vec![1, 2, 3], weight: 2 };
        let ms = monomials_with_content(&c);
        assert!(ms.iter().all(|m| Content::of_monomial(m) == c));
        let mut sorted = ms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ms.len());
        assert_eq!(monomials_with_content(&Content { rows: vec![1], cols: vec![2], weight: 3 }).len(), 1);
        assert_eq!(monomials_with_content(&Content { rows: vec![], cols: vec![], weight: 0 }).len(), 1);
    }

    #[test]
    fn graded_dim_matches_an_ungraded_rank() {
        // the whole degree-2 weight-1 part for p = q = 2, h = 1, without content splitting
        let all: Vec<Monomial> = multisets(2, 2)
            .iter()
            .flat_map(|r| multisets(2, 2).into_iter().map(move |c| (r.clone(), c)))
            .flat_map(|(rows, cols)| monomials_with_content(&Content { rows, cols, weight: 1 }))
            .collect();
        let index: FxHashMap<&Monomial, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut triples = Vec::new();
        let mut r = 0;
        // the only generator of this degree and weight
        let g = expand_minor(&MinorSymbol::new(1, &[1, 2], &[1, 2]).unwrap());
        for (m, c) in g.terms() {
            triples.push((r, index[m], BigRational::from_integer(c.to_bigint())));
        }
        r += 1;
        let m = SparseMatrix::from_triplets(r, all.len(), triples).unwrap();
        assert_eq!(graded_dim(2, 2, 1, 2, 1), all.len() - rank(&m));
    }

    #[test]
    fn oracle_examples() {
        let c = straighten_oracle(&product("0:(1|2),0:(2|1)"), 2, 2, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.terms().next().unwrap().0.to_string(), "0:(1|1),0:(2|2)");
        let c = straighten_oracle(&[], 2, 2, 1).unwrap();
        assert!(c.terms().next().unwrap().0.factors().is_empty());
        let single = product("2:(1,2|2,3)");
        let c = straighten_oracle(&single, 3, 3, 2).unwrap();
        assert_eq!(c.terms().next().unwrap().0.factors(), &single[..]);
    }

    #[test]
    fn oracle_agrees_with_leading_term_elimination() {
        let mut oracle = Oracle::new(3, 3, 1);
        let pool = symbols(3, 3, 1, 2);
        for (i, a) in pool.iter().enumerate().step_by(3) {
            for b in pool.iter().skip(i).step_by(4) {
                let js = vec![a.clone(), b.clone()];
                assert_eq!(oracle.straighten(&js).unwrap(), straighten(&js, 3, 3, 1).unwrap(), "{a} {b}");
            }
        }
    }
}
