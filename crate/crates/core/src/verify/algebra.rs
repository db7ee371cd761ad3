//! Suites that compare the standard monomial basis against independent
//! linear algebra: graded dimensions, leading tableaux, the invariant
//! kernel, and the straightening oracle.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{par_map, Suite, Tally};
use crate::error::Result;
use crate::minors::MinorSymbol;
use crate::morphism::invariant_kernel_dim;
use crate::ring::{monomial_to_json, Polynomial};
use crate::straighten::{Oracle, Straightener};
use crate::tableaux::{canonical_tagging, enumerate_standard, leading_monomial, symbols, tableau_of};

pub type Shape = (usize, usize, usize);

fn bidegrees(max_d: usize, max_w: u32) -> impl Iterator<Item = (usize, u32)> {
    (0..=max_d).flat_map(move |d| (0..=max_w).map(move |w| (d, w)))
}

/// Number of standard products equals the dimension of each graded piece
/// of the quotient by the ideal of `(h+1)`-minors.
pub fn check_basis(shapes: &[Shape], max_d: usize, max_w: u32, threads: usize) -> Result<super::Report> {
    let parts = par_map(shapes, threads, |&(p, q, h)| {
        let mut tally = Tally::new(Suite::Basis);
        let mut oracle = Oracle::new(p, q, h);
        for (d, w) in bidegrees(max_d, max_w) {
            let standard = enumerate_standard(p, q, h, d, w).len();
            let dim = oracle.graded_dim(d, w);
            let detail = || {
                json!({"p": p, "q": q, "h": h, "degree": d, "weight": w,
                       "standard_count": standard, "graded_dim": dim})
            };
            if !tally.record(standard == dim, detail) {
                break;
            }
        }
        tally
    });
    Ok(merge(Suite::Basis, parts))
}

/// The leading monomial of each standard product's image is its tableau,
/// with a unit coefficient, and leading monomials within a graded piece are
/// pairwise distinct.
pub fn check_leading(shapes: &[Shape], max_d: usize, max_w: u32, threads: usize) -> Result<super::Report> {
    let parts = par_map(shapes, threads, |&(p, q, h)| -> Result<Tally> {
        let mut tally = Tally::new(Suite::Leading);
        let mut images = Straightener::new(p, q, h);
        for (d, w) in bidegrees(max_d, max_w) {
            let mut seen = BTreeSet::new();
            for s in enumerate_standard(p, q, h, d, w) {
                let image = images.product_image(s.factors());
                let (lead, coeff) = leading_monomial(&image)?;
                let expected = tableau_of(s.chain(), h)?.monomial();
                let fresh = seen.insert(lead.clone());
                let detail = || {
                    json!({"p": p, "q": q, "h": h, "degree": d, "weight": w,
                           "product": s.to_json(),
                           "leading": monomial_to_json(&lead),
                           "coefficient": coeff.to_string(),
                           "tableau_monomial": monomial_to_json(&expected),
                           "duplicate_leading": !fresh})
                };
                if !tally.record(lead == expected && coeff.is_unit() && fresh, detail) {
                    return Ok(tally);
                }
            }
        }
        Ok(tally)
    });
    Ok(merge(Suite::Leading, parts.into_iter().collect::<Result<Vec<_>>>()?))
}

/// The joint kernel of the jet Lie algebra action has the size of the
/// standard basis in each graded piece.
pub fn check_invariants(shapes: &[Shape], max_d: usize, max_w: u32, threads: usize) -> Result<super::Report> {
    let cells: Vec<(Shape, usize, u32)> = shapes
        .iter()
        .flat_map(|&s| bidegrees(max_d, max_w).map(move |(d, w)| (s, d, w)))
        .collect();
    let parts = par_map(&cells, threads, |&((p, q, h), d, w)| {
        let mut tally = Tally::new(Suite::Invariants);
        let standard = enumerate_standard(p, q, h, d, w).len();
        let kernel = invariant_kernel_dim(p, q, h, d, w);
        tally.record(standard == kernel, || {
            json!({"p": p, "q": q, "h": h, "degree": d, "weight": w,
                   "standard_count": standard, "kernel_dim": kernel})
        });
        tally
    });
    Ok(merge(Suite::Invariants, parts))
}

/// Which products the straightening suite feeds to both algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StraightenScope {
    pub p: usize,
    pub q: usize,
    pub h: usize,
    pub max_factors: usize,
    /// Bound on the sum of factor sizes.
    pub max_degree: usize,
    /// Bound on the sum of factor weights.
    pub max_weight: u32,
}

impl StraightenScope {
    /// Every multiset of symbols within the bounds, in product order.
    pub fn products(&self) -> Vec<Vec<MinorSymbol>> {
        let pool = symbols(self.p, self.q, self.h, self.max_weight);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect(&pool, 0, 0, 0, &mut cur, &mut out);
        out
    }

    fn collect(
        &self,
        pool: &[MinorSymbol],
        start: usize,
        degree: usize,
        weight: u32,
        cur: &mut Vec<MinorSymbol>,
        out: &mut Vec<Vec<MinorSymbol>>,
    ) {
        out.push(cur.clone());
        if cur.len() == self.max_factors {
            return;
        }
        for (i, j) in pool.iter().enumerate().skip(start) {
            let (d, w) = (degree + j.size(), weight + j.weight());
            if d <= self.max_degree && w <= self.max_weight {
                cur.push(j.clone());
                self.collect(pool, i, d, w, cur, out);
                cur.pop();
            }
        }
    }
}

/// Straightening agrees with the oracle, reproduces the product's image,
/// and fixes standard products.
pub fn check_straighten(scopes: &[StraightenScope], threads: usize) -> Result<super::Report> {
    let parts = par_map(scopes, threads, |scope| -> Result<Tally> {
        let mut tally = Tally::new(Suite::Straighten);
        let (p, q, h) = (scope.p, scope.q, scope.h);
        let mut fast = Straightener::new(p, q, h);
        let mut oracle = Oracle::new(p, q, h);
        for js in scope.products() {
            let got = fast.straighten(&js)?;
            let want = oracle.straighten(&js)?;
            let mut rebuilt = Polynomial::zero();
            for (s, c) in got.terms() {
                rebuilt = rebuilt.add(&fast.product_image(s.factors()).scale(c));
            }
            let round_trip = rebuilt == fast.product_image(&js);
            let idempotent = match canonical_tagging(&js) {
                Some(_) => got.len() == 1 && got.terms().all(|(s, c)| s.factors() == js && c.is_one()),
                None => true,
            };
            let detail = || {
                let product: Vec<Value> = js.iter().map(MinorSymbol::to_json).collect();
                json!({"p": p, "q": q, "h": h, "product": product,
                       "straighten": got.to_json(), "oracle": want.to_json(),
                       "round_trip": round_trip, "idempotent": idempotent})
            };
            if !tally.record(got == want && round_trip && idempotent, detail) {
                break;
            }
        }
        Ok(tally)
    });
    Ok(merge(Suite::Straighten, parts.into_iter().collect::<Result<Vec<_>>>()?))
}

fn merge(suite: Suite, parts: Vec<Tally>) -> super::Report {
    let mut total = Tally::new(suite);
    for t in parts {
        total.merge(t);
    }
    total.finish()
}
