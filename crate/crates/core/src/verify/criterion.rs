//! The comparability criterion and the greedy largest tagging, checked
//! against search over taggings.
//!
//! Both `is_greater(e, j)` and `largest_tagged(e, j)` only read the first
//! `size(j)` positions of `e`. The sweep therefore computes the searched
//! answer once per truncation `t` and target `j`, then checks the fast
//! functions on every tagged minor that truncates to `t`.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{Suite, Tally};
use crate::error::Result;
use crate::minors::{permutations, MinorSymbol};
use crate::tableaux::{enum_tagged, is_greater, largest_tagged, symbols, Pair, TaggedMinor};

/// Bounds of the sweep. Tagged minors range over sizes `<= max_size`,
/// weights `<= max_weight`, indices `<= max_index`; targets over the same
/// indices with weights `<= max_target_weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriterionScope {
    pub max_size: usize,
    pub max_weight: u32,
    pub max_index: u8,
    pub max_target_weight: u32,
}

/// Every ordered choice of `len` distinct indices from `1..=max`, avoiding `used`.
fn arrangements(len: usize, max: u8, used: &[u8]) -> Vec<Vec<u8>> {
    fn go(len: usize, max: u8, used: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 1..=max {
            if !used.contains(&i) && !cur.contains(&i) {
                cur.push(i);
                go(len, max, used, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut used.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Tag vectors of length `len` with sum at most `budget`.
fn tag_vectors(len: usize, budget: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for t in 0..=budget {
            cur.push(t);
            go(len, budget - t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, budget, &mut Vec::new(), &mut out);
    out
}

/// All tagged minors of `size` whose first positions are `prefix` (empty
/// for none), with total weight `<= max_weight` and indices `<= max_index`.
fn extensions(prefix: Option<&TaggedMinor>, size: usize, max_weight: u32, max_index: u8) -> Vec<TaggedMinor> {
    let (left0, right0): (Vec<Pair>, Vec<Pair>) = match prefix {
        Some(t) => (t.left().to_vec(), t.right().to_vec()),
        None => (Vec::new(), Vec::new()),
    };
    let extra = size - left0.len();
    let budget = max_weight - prefix.map_or(0, |t| t.weight());
    let used_l: Vec<u8> = left0.iter().map(|p| p.0).collect();
    let used_r: Vec<u8> = right0.iter().map(|p| p.0).collect();
    let rows = arrangements(extra, max_index, &used_l);
    let cols = arrangements(extra, max_index, &used_r);
    let tags = tag_vectors(2 * extra, budget);
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            for t in &tags {
                let mut left = left0.clone();
                let mut right = right0.clone();
                left.extend(r.iter().zip(&t[..extra]).map(|(&u, &k)| (u, k)));
                right.extend(c.iter().zip(&t[extra..]).map(|(&v, &l)| (v, l)));
                out.push(TaggedMinor::new(&left, &right).expect("distinct indices by construction"));
            }
        }
    }
    out
}

/// Searched answer for `(t, j)` with `size(t) == size(j)`: whether a
/// dominating tagging exists, and the largest one.
///
/// With rows and columns placed, a position holding index `x` under bound
/// `(y, k)` needs tag `k` when `x >= y` and `k + 1` otherwise. The excess
/// weight goes to the position read first, which maximizes the word for
/// that placement; the answer is the best placement.
pub(crate) fn searched_by_placement(t: &TaggedMinor, j: &MinorSymbol) -> Option<TaggedMinor> {
    let h = j.size();
    let perms = permutations(h);
    let need = |x: u8, b: Pair| if x >= b.0 { b.1 } else { b.1 + 1 };
    let mut best: Option<TaggedMinor> = None;
    for (pr, _) in &perms {
        for (pc, _) in &perms {
            let mut left: Vec<Pair> = (0..h).map(|i| {
                let x = j.rows()[pr[i]];
                (x, need(x, t.left()[i]))
            }).collect();
            let right: Vec<Pair> = (0..h).map(|i| {
                let x = j.cols()[pc[i]];
                (x, need(x, t.right()[i]))
            }).collect();
            let cost: u32 = left.iter().chain(&right).map(|p| p.1).sum();
            if cost > j.weight() {
                continue;
            }
            left[h - 1].1 += j.weight() - cost;
            let cand = TaggedMinor::new(&left, &right).expect("placement of distinct indices");
            if best.as_ref().is_none_or(|b| cand > *b) {
                best = Some(cand);
            }
        }
    }
    best
}

/// Searched answer by listing every tagging of `j`.
pub(crate) fn searched_by_listing(all: &[TaggedMinor], t: &TaggedMinor) -> Option<TaggedMinor> {
    all.iter().filter(|e| t.leq(e)).max().cloned()
}

fn detail(e: &TaggedMinor, j: &MinorSymbol, fast: (bool, &Option<TaggedMinor>), want: &Option<TaggedMinor>) -> Value {
    json!({
        "tagged": e.to_json(),
        "symbol": j.to_json(),
        "is_greater": fast.0,
        "witness_exists": want.is_some(),
        "largest": fast.1.as_ref().map(TaggedMinor::to_json),
        "searched_largest": want.as_ref().map(TaggedMinor::to_json),
    })
}

/// Targets up to this size are checked against the full list of their
/// taggings; larger ones by placement.
const LISTING_MAX_SIZE: usize = 2;

pub fn check_criterion(scope: CriterionScope) -> Result<super::Report> {
    let mut tally = Tally::new(Suite::Criterion);
    let CriterionScope { max_size, max_weight, max_index, max_target_weight } = scope;
    let max_index_usize = max_index as usize;
    let targets = symbols(max_index_usize, max_index_usize, max_size, max_target_weight);
    let mut listings: HashMap<MinorSymbol, Vec<TaggedMinor>> = HashMap::new();

    for s in 1..=max_size {
        let same: Vec<&MinorSymbol> = targets.iter().filter(|j| j.size() == s).collect();
        let larger: Vec<&MinorSymbol> = targets.iter().filter(|j| j.size() > s).collect();
        for t in extensions(None, s, max_weight, max_index) {
            // every sweep element truncating to t
            let mut family = vec![t.clone()];
            for size in s + 1..=max_size {
                family.extend(extensions(Some(&t), size, max_weight, max_index));
            }
            for j in &same {
                let want = if s <= LISTING_MAX_SIZE {
                    let all = listings.entry((*j).clone()).or_insert_with(|| enum_tagged(j));
                    searched_by_listing(all, &t)
                } else {
                    searched_by_placement(&t, j)
                };
                for e in &family {
                    let fast = (is_greater(e, j), largest_tagged(Some(e), j));
                    let ok = fast.0 == want.is_some() && fast.1 == want;
                    if !tally.record(ok, || detail(e, j, (fast.0, &fast.1), &want)) {
                        return Ok(tally.finish());
                    }
                }
            }
            // targets larger than t are never comparable
            for j in &larger {
                let fast = (is_greater(&t, j), largest_tagged(Some(&t), j));
                let ok = !fast.0 && fast.1.is_none();
                if !tally.record(ok, || detail(&t, j, (fast.0, &fast.1), &None)) {
                    return Ok(tally.finish());
                }
            }
        }
    }
    Ok(tally.finish())
}
