//! Exact sparse linear algebra over the rationals.
//!
//! Elimination is fraction-free: rows are integer vectors kept primitive
//! (content one, positive leading entry), and a row is reduced against a
//! pivot by cross-multiplication. Rationals only appear at the boundary of
//! [`SparseMatrix`] and in the final back substitution of [`solve`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::int::Int;

/// Sparse integer vector: strictly increasing column indices, no zero entry.
pub type SparseVec = Vec<(usize, Int)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) lies outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("right-hand side has length {got}, matrix has {rows} rows")]
    DimensionMismatch { got: usize, rows: usize },
}

/// Rational sparse matrix, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigRational::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add up.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self, LinalgError> {
        let mut acc: Vec<FxHashMap<usize, BigRational>> = vec![FxHashMap::default(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            *acc[r].entry(c).or_insert_with(BigRational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| {
                let mut row: Vec<_> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    /// Convenience constructor from small dense integer data.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, BigRational::from_integer(BigInt::from(*v))))
        });
        Self::from_triplets(rows.len(), cols, entries).expect("dense input is in bounds")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.data[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.data[row][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let entries = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone())));
        Self::from_triplets(self.cols, self.rows, entries).expect("transpose stays in bounds")
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(BigRational::zero(), |acc, (c, v)| acc + v * &x[*c])
            })
            .collect()
    }

    /// Row `r` scaled to a primitive integer vector, with `extra` appended at
    /// column `cols` (used for augmented systems).
    fn integer_row(&self, r: usize, extra: Option<&BigRational>) -> SparseVec {
        let entries: Vec<(usize, &BigRational)> = self.data[r]
            .iter()
            .map(|(c, v)| (*c, v))
            .chain(extra.filter(|v| !v.is_zero()).map(|v| (self.cols, v)))
            .collect();
        let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| {
            num_integer::Integer::lcm(&acc, v.denom())
        });
        entries
            .into_iter()
            .map(|(c, v)| (c, Int::from(v.numer() * (&lcm / v.denom()))))
            .collect()
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut ech = Echelon::new();
    for r in 0..m.rows {
        ech.insert(m.integer_row(r, None));
    }
    ech.rank()
}

/// A solution of `m x = b`. Free variables are set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<BigRational>,
    pub unique: bool,
}

/// Solves `m x = b` exactly; `Ok(None)` signals an inconsistent system.
pub fn solve(m: &SparseMatrix, b: &[BigRational]) -> Result<Option<Solution>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            got: b.len(),
            rows: m.rows,
        });
    }
    let mut ech = Echelon::new();
    for (r, rhs) in b.iter().enumerate() {
        ech.insert(m.integer_row(r, Some(rhs)));
    }
    if ech.pivot_row(m.cols).is_some() {
        return Ok(None);
    }
    let mut values = vec![BigRational::zero(); m.cols];
    let mut pivots: Vec<usize> = ech.pivots().collect();
    pivots.sort_unstable_by(|a, b| b.cmp(a));
    for &c in &pivots {
        let row = ech.pivot_row(c).expect("listed pivot");
        let mut acc = BigRational::zero();
        let mut lead = BigRational::zero();
        for (j, v) in row {
            let v = BigRational::from_integer(v.to_bigint());
            if *j == c {
                lead = v;
            } else if *j == m.cols {
                acc += v;
            } else {
                acc -= v * &values[*j];
            }
        }
        values[c] = acc / lead;
    }
    Ok(Some(Solution {
        values,
        unique: pivots.len() == m.cols,
    }))
}

/// `alpha * x + beta * y` for sparse vectors.
fn combine(alpha: &Int, x: &[(usize, Int)], beta: &Int, y: &[(usize, Int)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, alpha * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, beta * &y[j].1));
            j += 1;
        } else {
            let v = &(alpha * &x[i].1) + &(beta * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides out the content and makes the leading entry positive.
/// Returns the factor the vector was divided by.
fn make_primitive(v: &mut SparseVec) -> Int {
    let Some(first) = v.first() else {
        return Int::ONE;
    };
    let mut g = Int::ZERO;
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if first.1.signum() < 0 {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g).expect("content divides every entry");
        }
    }
    g
}

/// Incremental row echelon form over the integers.
///
/// Each stored row has a distinct leading column (its pivot). Rows are kept
/// primitive, so the structure is deterministic for a given insertion order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot: FxHashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivot.get(&col).map(|&i| &self.rows[i])
    }

    /// Eliminates the entry at `pos` of `v` using the pivot row for its column.
    /// Returns the factor `v` was multiplied by (before division by content).
    fn eliminate(&self, v: &mut SparseVec, pos: usize, prow: &[(usize, Int)]) -> (Int, Int) {
        let a = v[pos].1.clone();
        let p = &prow[0].1;
        let g = a.gcd(p);
        let scale = p.div_exact(&g).expect("gcd divides");
        let factor = -a.div_exact(&g).expect("gcd divides");
        *v = combine(&scale, v, &factor, prow);
        let content = make_primitive(v);
        (scale, content)
    }

    /// Reduces leading entries until the leading column is not a pivot.
    /// The result is zero (empty) exactly when `v` lies in the row span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        make_primitive(&mut v);
        while let Some(&(c, _)) = v.first() {
            match self.pivot.get(&c) {
                Some(&i) => {
                    self.eliminate(&mut v, 0, &self.rows[i]);
                }
                None => break,
            }
        }
        v
    }

    /// Fully reduced representative of `v` modulo the row span.
    ///
    /// Returns `(lambda, r)` with `lambda * v - r` in the span and no entry of
    /// `r` on a pivot column, so `r / lambda` is the unique such
    /// representative over the rationals.
    pub fn normal_form(&self, v: &[(usize, Int)]) -> (BigRational, SparseVec) {
        let mut v: SparseVec = v.to_vec();
        let mut lambda = BigRational::one();
        let mut pos = 0;
        while pos < v.len() {
            match self.pivot.get(&v[pos].0) {
                Some(&i) => {
                    let col = v[pos].0;
                    let (scale, content) = self.eliminate(&mut v, pos, &self.rows[i]);
                    lambda = lambda * BigRational::from_integer(scale.to_bigint())
                        / BigRational::from_integer(content.to_bigint());
                    pos = v.partition_point(|(c, _)| *c <= col);
                }
                None => pos += 1,
            }
        }
        (lambda, v)
    }

    /// Inserts `v`; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.first() {
            Some(&(c, _)) => {
                self.pivot.insert(c, self.rows.len());
                self.rows.push(v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn solve_examples() {
        let s = solve(&SparseMatrix::identity(2), &[q(3), q(5)]).unwrap().unwrap();
        assert_eq!(s.values, vec![q(3), q(5)]);
        assert!(s.unique);

        let m = SparseMatrix::from_dense(&[vec![1, 1]]);
        let s = solve(&m, &[q(2)]).unwrap().unwrap();
        assert!(!s.unique);
        assert_eq!(&s.values[0] + &s.values[1], q(2));

        let m = SparseMatrix::from_dense(&[vec![1], vec![1]]);
        assert_eq!(solve(&m, &[q(0), q(1)]).unwrap(), None);
        assert!(matches!(
            solve(&m, &[q(0)]),
            Err(LinalgError::DimensionMismatch { got: 1, rows: 2 })
        ));
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = SparseMatrix::from_triplets(1, 1, [(0, 0, half)]).unwrap();
        let s = solve(&m, &[q(3)]).unwrap().unwrap();
        assert_eq!(s.values, vec![q(6)]);
        assert!(SparseMatrix::from_triplets(1, 1, [(1, 0, q(1))]).is_err());
    }

    #[test]
    fn normal_form_is_canonical() {
        let mut e = Echelon::new();
        e.insert(vec![(0, Int::from(2)), (1, Int::from(1))]);
        e.insert(vec![(1, Int::from(3)), (2, Int::from(1))]);
        // v and v + span element must share the rational normal form.
        let v = vec![(0, Int::from(1)), (3, Int::from(1))];
        let w = vec![(0, Int::from(3)), (1, Int::from(4)), (2, Int::from(1)), (3, Int::from(1))];
        let (lv, rv) = e.normal_form(&v);
        let (lw, rw) = e.normal_form(&w);
        let scale = |l: &BigRational, r: &SparseVec| -> Vec<(usize, BigRational)> {
            r.iter()
                .map(|(c, x)| (*c, BigRational::from_integer(x.to_bigint()) / l))
                .collect()
        };
        assert_eq!(scale(&lv, &rv), scale(&lw, &rw));
        assert!(rv.iter().all(|(c, _)| *c > 1));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let m = SparseMatrix::from_dense(&rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn solutions_satisfy_system(rows in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let m = SparseMatrix::from_dense(&rows);
            // consistent by construction: b = m * x0
            let x0: Vec<BigRational> = (0..m.cols()).map(|i| q(seed[i])).collect();
            let b = m.mul_vec(&x0);
            let s = solve(&m, &b).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul_vec(&s.values), b);
            prop_assert_eq!(s.unique, rank(&m) == m.cols());
        }
    }
}
