use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::tagged::{pair_geq, Pair, Pairs, TaggedMinor};
use crate::error::{Error, Result};
use crate::minors::MinorSymbol;

/// Smallest total tag the open slots of one side must absorb, given the
/// indices still unplaced. A slot costs its bound's tag when it receives an
/// index at least the bound's index, one more otherwise.
fn min_cost(bounds: &mut [Pair], indices: &[u8]) -> u32 {
    bounds.sort_unstable_by_key(|b| b.0);
    let mut matched = 0;
    for &x in indices {
        if matched < bounds.len() && x >= bounds[matched].0 {
            matched += 1;
        }
    }
    let tags: u32 = bounds.iter().map(|b| b.1).sum();
    tags + (bounds.len() - matched) as u32
}

/// The ≺-largest tagging of `j` dominating `prev` in the partial order, or
/// the largest tagging overall when there is no predecessor.
///
/// Slots are filled in the order the total order reads them, each with the
/// largest pair that still leaves the rest completable.
pub fn largest_tagged(prev: Option<&TaggedMinor>, j: &MinorSymbol) -> Option<TaggedMinor> {
    let h = j.size();
    if prev.is_some_and(|e| e.size() < h) {
        return None;
    }
    let bound = |side: usize, pos: usize| -> Pair {
        match prev {
            None => (0, 0),
            Some(e) if side == 0 => e.left()[pos],
            Some(e) => e.right()[pos],
        }
    };
    let slots: Vec<(usize, usize)> = (0..h)
        .rev()
        .map(|p| (0, p))
        .chain((0..h).rev().map(|p| (1, p)))
        .collect();
    // remaining indices per side, ascending
    let mut avail = [j.rows().to_vec(), j.cols().to_vec()];
    let mut out: [Pairs; 2] = [Pairs::from_elem((0, 0), h), Pairs::from_elem((0, 0), h)];
    let mut budget = j.weight();

    let feasible = |rest: &[(usize, usize)], avail: &[Vec<u8>; 2], budget: u32| -> bool {
        if rest.is_empty() {
            return budget == 0;
        }
        let mut cost = 0;
        for (side, pool) in avail.iter().enumerate() {
            let mut bounds: Vec<Pair> = rest
                .iter()
                .filter(|s| s.0 == side)
                .map(|&(s, p)| bound(s, p))
                .collect();
            cost += min_cost(&mut bounds, pool);
        }
        cost <= budget
    };

    for (n, &(side, pos)) in slots.iter().enumerate() {
        let b = bound(side, pos);
        let mut chosen = None;
        'search: for tag in (0..=budget).rev() {
            for xi in (0..avail[side].len()).rev() {
                let x = avail[side][xi];
                if !pair_geq((x, tag), b) {
                    break;
                }
                let mut trial = avail.clone();
                trial[side].remove(xi);
                if feasible(&slots[n + 1..], &trial, budget - tag) {
                    chosen = Some((xi, x, tag));
                    break 'search;
                }
            }
        }
        let (xi, x, tag) = chosen?;
        avail[side].remove(xi);
        budget -= tag;
        out[side][pos] = (x, tag);
    }
    let [left, right] = out;
    Some(TaggedMinor::from_sides(left, right))
}

/// The greedy chain of taggings of a product, present exactly when the
/// product is standard.
pub fn canonical_tagging(js: &[MinorSymbol]) -> Option<Vec<TaggedMinor>> {
    let mut chain: Vec<TaggedMinor> = Vec::with_capacity(js.len());
    for j in js {
        let next = largest_tagged(chain.last(), j)?;
        chain.push(next);
    }
    Some(chain)
}

/// A standard product together with its canonical chain of taggings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardProduct {
    factors: Vec<MinorSymbol>,
    chain: Vec<TaggedMinor>,
}

impl StandardProduct {
    /// Fails with a usage error when the product is not standard.
    pub fn new(factors: Vec<MinorSymbol>) -> Result<Self> {
        let chain = canonical_tagging(&factors).ok_or_else(|| {
            Error::usage(format!("product {} is not standard", display_product(&factors)))
        })?;
        Ok(StandardProduct { factors, chain })
    }

    pub fn factors(&self) -> &[MinorSymbol] {
        &self.factors
    }

    pub fn chain(&self) -> &[TaggedMinor] {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(MinorSymbol::size).sum()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(MinorSymbol::weight).sum()
    }

    pub fn to_json(&self) -> Value {
        json!(self.factors.iter().map(MinorSymbol::to_json).collect::<Vec<_>>())
    }
}

impl Ord for StandardProduct {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors.cmp(&other.factors)
    }
}

impl PartialOrd for StandardProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StandardProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_product(&self.factors))
    }
}

pub(crate) fn display_product(js: &[MinorSymbol]) -> String {
    if js.is_empty() {
        return "1".into();
    }
    js.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// All minor symbols with rows in `1..=p`, columns in `1..=q`, size at most
/// `max_size` and weight at most `max_weight`, sorted by ≺.
pub fn symbols(p: usize, q: usize, max_size: usize, max_weight: u32) -> Vec<MinorSymbol> {
    let row_universe: Vec<u8> = (1..=p as u8).collect();
    let col_universe: Vec<u8> = (1..=q as u8).collect();
    let mut out = Vec::new();
    for size in 1..=max_size.min(p).min(q) {
        let rows = crate::minors::relations::subsets(&row_universe, size);
        let cols = crate::minors::relations::subsets(&col_universe, size);
        for r in &rows {
            for c in &cols {
                for w in 0..=max_weight {
                    out.push(MinorSymbol::new(w, r, c).expect("subsets are ascending"));
                }
            }
        }
    }
    out.sort();
    out
}

/// Every standard product of minors of size at most `h` in a `p × q`
/// matrix with total size `d` and total weight `w`, in ascending order.
pub fn enumerate_standard(p: usize, q: usize, h: usize, d: usize, w: u32) -> Vec<StandardProduct> {
    let pool = symbols(p, q, h, w);
    let mut out = Vec::new();
    let mut factors = Vec::new();
    let mut chain = Vec::new();
    extend(&pool, 0, d, w, &mut factors, &mut chain, &mut out);
    out
}

fn extend(
    pool: &[MinorSymbol],
    start: usize,
    d: usize,
    w: u32,
    factors: &mut Vec<MinorSymbol>,
    chain: &mut Vec<TaggedMinor>,
    out: &mut Vec<StandardProduct>,
) {
    if d == 0 {
        if w == 0 {
            out.push(StandardProduct {
                factors: factors.clone(),
                chain: chain.clone(),
            });
        }
        return;
    }
    for (i, j) in pool.iter().enumerate().skip(start) {
        if j.size() > d || j.weight() > w {
            continue;
        }
        if let Some(e) = largest_tagged(chain.last(), j) {
            factors.push(j.clone());
            chain.push(e);
            extend(pool, i, d - j.size(), w - j.weight(), factors, chain, out);
            factors.pop();
            chain.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::tagged::{enum_tagged, is_greater};
    use crate::tableaux::tagged::offsets;
    use proptest::prelude::*;

    fn sym(s: &str) -> MinorSymbol {
        s.parse().unwrap()
    }

    fn tm(left_outer_first: &[Pair], right: &[Pair]) -> TaggedMinor {
        TaggedMinor::from_notation(left_outer_first, right).unwrap()
    }

    fn brute_largest(prev: Option<&TaggedMinor>, j: &MinorSymbol) -> Option<TaggedMinor> {
        enum_tagged(j)
            .into_iter()
            .filter(|e| prev.is_none_or(|p| p.leq(e)))
            .max()
    }

    #[test]
    fn largest_tagged_examples() {
        assert_eq!(
            largest_tagged(None, &sym("3:(1,2,4|2,3,5)")).unwrap(),
            tm(&[(4, 3), (2, 0), (1, 0)], &[(2, 0), (3, 0), (5, 0)])
        );
        let e = tm(&[(1, 0)], &[(1, 0)]);
        assert_eq!(largest_tagged(Some(&e), &sym("1:(1|1)")).unwrap(), tm(&[(1, 1)], &[(1, 0)]));
        let e = tm(&[(1, 1)], &[(1, 0)]);
        assert_eq!(largest_tagged(Some(&e), &sym("0:(1|1)")), None);
    }

    #[test]
    fn chains() {
        assert_eq!(
            canonical_tagging(&[sym("0:(1|1)"), sym("1:(1|1)")]).unwrap(),
            vec![tm(&[(1, 0)], &[(1, 0)]), tm(&[(1, 1)], &[(1, 0)])]
        );
        assert_eq!(canonical_tagging(&[sym("1:(1|1)"), sym("0:(1|1)")]), None);
        assert_eq!(canonical_tagging(&[]), Some(vec![]));
        assert!(StandardProduct::new(vec![sym("2:(1,3|2,3)")]).is_ok());
        assert!(StandardProduct::new(vec![sym("0:(1|2)"), sym("0:(2|1)")]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_standard(1, 1, 1, 2, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_string(), "0:(1|1),1:(1|1)");

        let pairs: Vec<String> = enumerate_standard(2, 2, 1, 2, 0)
            .iter()
            .map(ToString::to_string)
            .collect();
        let expect = [
            "0:(1|1),0:(1|1)",
            "0:(1|1),0:(1|2)",
            "0:(1|1),0:(2|1)",
            "0:(1|1),0:(2|2)",
            "0:(1|2),0:(1|2)",
            "0:(1|2),0:(2|2)",
            "0:(2|1),0:(2|1)",
            "0:(2|1),0:(2|2)",
            "0:(2|2),0:(2|2)",
        ];
        assert_eq!(pairs.len(), 9);
        for e in expect {
            assert!(pairs.contains(&e.to_string()), "{e} missing");
        }
        let empty = enumerate_standard(2, 2, 2, 0, 0);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].factors().is_empty());
        assert!(enumerate_standard(2, 2, 2, 0, 1).is_empty());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = enumerate_standard(3, 3, 2, 4, 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| s.degree() == 4 && s.weight() == 2));
    }

    #[test]
    fn greedy_matches_brute_force_on_small_sweep() {
        let pool = symbols(3, 3, 2, 2);
        assert_eq!(largest_tagged(None, &pool[0]), brute_largest(None, &pool[0]));
        for j in &pool {
            let top = largest_tagged(None, j).unwrap();
            assert_eq!(Some(top.clone()), brute_largest(None, j));
            for e in enum_tagged(j) {
                for j2 in &pool {
                    let got = largest_tagged(Some(&e), j2);
                    assert_eq!(got, brute_largest(Some(&e), j2), "{e} then {j2}");
                    assert_eq!(got.is_some(), is_greater(&e, j2), "{e} then {j2}");
                }
            }
        }
    }

    #[test]
    fn truncations_are_minimal_and_offsets_add_up() {
        // for a step E_b -> E_a, truncating E_a gives the smallest size-s
        // symbol built from E_a's indices that still dominates E_b
        let pool = symbols(3, 3, 3, 2);
        let mut checked = 0;
        for j in pool.iter().filter(|j| j.size() >= 2) {
            for eb in enum_tagged(j).into_iter().step_by(3) {
                for j2 in pool.iter().filter(|j2| j2.size() >= 2) {
                    let Some(ea) = largest_tagged(Some(&eb), j2) else { continue };
                    for s in 1..j2.size() {
                        let target = ea.truncate(s).unwrap().collapse();
                        let rows = crate::minors::relations::subsets(j2.rows(), s);
                        let cols = crate::minors::relations::subsets(j2.cols(), s);
                        let mut best: Option<MinorSymbol> = None;
                        for r in &rows {
                            for c in &cols {
                                for wt in 0..=j2.weight() {
                                    let cand = MinorSymbol::new(wt, r, c).unwrap();
                                    if is_greater(&eb, &cand) && best.as_ref().is_none_or(|b| cand < *b) {
                                        best = Some(cand);
                                    }
                                }
                            }
                        }
                        assert_eq!(best.as_ref(), Some(&target), "{eb} -> {ea} at {s}");
                        let (l, r) = offsets(&eb, &target).unwrap();
                        let gained = target.weight() - eb.truncate(s).unwrap().weight();
                        assert_eq!((l + r) as u32, gained, "{eb} -> {ea} at {s}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    proptest! {
        #[test]
        fn monotone_partial_order(
            i in 0usize..60, a in 0usize..400, k in 0usize..60, b in 0usize..400,
        ) {
            let pool = symbols(3, 3, 2, 2);
            let (j1, j2) = (&pool[i % pool.len()], &pool[k % pool.len()]);
            let (t1, t2) = (enum_tagged(j1), enum_tagged(j2));
            let (e1, e2) = (&t1[a % t1.len()], &t2[b % t2.len()]);
            if e1.leq(e2) {
                prop_assert!(e1.collapse() <= e2.collapse());
            }
        }
    }

    #[test]
    fn ordering_matches_cmp() {
        assert_eq!(sym("0:(1,2|1,2)").cmp(&sym("5:(1|1)")), Ordering::Less);
    }
}
