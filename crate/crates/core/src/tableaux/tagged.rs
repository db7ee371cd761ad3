use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::minors::{Indices, MinorSymbol};

/// An index with a tag. Pairs are ordered by tag first, then index.
pub type Pair = (u8, u32);

pub(crate) fn pair_key(p: Pair) -> (u32, u8) {
    (p.1, p.0)
}

pub(crate) fn pair_geq(p: Pair, bound: Pair) -> bool {
    pair_key(p) >= pair_key(bound)
}

pub type Pairs = SmallVec<[Pair; 4]>;

/// A minor symbol whose weight is split into tags on individual rows and
/// columns. Position `i` (from 1) of each side is stored at slot `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedMinor {
    left: Pairs,
    right: Pairs,
}

impl TaggedMinor {
    /// Builds from sides listed by position `1..=h`.
    pub fn new(left: &[Pair], right: &[Pair]) -> Result<Self> {
        if left.is_empty() || left.len() != right.len() {
            return Err(Error::usage("tagged minor needs equal, non-zero side lengths"));
        }
        let distinct = |side: &[Pair]| {
            let mut idx: Vec<u8> = side.iter().map(|p| p.0).collect();
            idx.sort_unstable();
            idx.windows(2).all(|w| w[0] != w[1]) && idx[0] >= 1
        };
        if !distinct(left) || !distinct(right) {
            return Err(Error::usage("tagged minor indices must be distinct and at least 1"));
        }
        Ok(TaggedMinor {
            left: left.into(),
            right: right.into(),
        })
    }

    pub(crate) fn from_sides(left: Pairs, right: Pairs) -> Self {
        debug_assert!(!left.is_empty() && left.len() == right.len());
        TaggedMinor { left, right }
    }

    /// Sides in the conventional reading `((u_h,k_h),..,(u_1,k_1)|(v_1,l_1),..,(v_h,l_h))`.
    pub fn from_notation(left_outer_first: &[Pair], right: &[Pair]) -> Result<Self> {
        let left: Vec<Pair> = left_outer_first.iter().rev().copied().collect();
        Self::new(&left, right)
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn weight(&self) -> u32 {
        self.left.iter().chain(&self.right).map(|p| p.1).sum()
    }

    /// Left side by position `1..=h`.
    pub fn left(&self) -> &[Pair] {
        &self.left
    }

    /// Right side by position `1..=h`.
    pub fn right(&self) -> &[Pair] {
        &self.right
    }

    /// The underlying minor symbol: sorted indices, total tag as weight.
    pub fn collapse(&self) -> MinorSymbol {
        let mut rows: Indices = self.left.iter().map(|p| p.0).collect();
        let mut cols: Indices = self.right.iter().map(|p| p.0).collect();
        rows.sort_unstable();
        cols.sort_unstable();
        MinorSymbol::from_parts(self.weight(), rows, cols)
    }

    /// Keeps positions `1..=s` on both sides.
    pub fn truncate(&self, s: usize) -> Result<Self> {
        if s == 0 || s > self.size() {
            return Err(Error::usage(format!(
                "cannot truncate a size-{} tagged minor to {s}",
                self.size()
            )));
        }
        Ok(TaggedMinor {
            left: self.left[..s].into(),
            right: self.right[..s].into(),
        })
    }

    /// The partial order: `other` is no larger and dominates position-wise.
    pub fn leq(&self, other: &TaggedMinor) -> bool {
        let h = other.size();
        h <= self.size()
            && (0..h).all(|i| {
                pair_geq(other.left[i], self.left[i]) && pair_geq(other.right[i], self.right[i])
            })
    }

    fn word(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.left
            .iter()
            .rev()
            .chain(self.right.iter().rev())
            .map(|&p| pair_key(p))
    }

    pub fn to_json(&self) -> Value {
        let side = |it: &mut dyn Iterator<Item = &Pair>| -> Vec<Value> {
            it.map(|p| json!([p.0, p.1])).collect()
        };
        json!({
            "left": side(&mut self.left.iter().rev()),
            "right": side(&mut self.right.iter()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let side = |name: &str| -> Result<Vec<Pair>> {
            let arr = v
                .get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::usage(format!("tagged minor needs an array `{name}`")))?;
            arr.iter()
                .map(|p| {
                    let idx = p.get(0).and_then(Value::as_u64).and_then(|x| u8::try_from(x).ok());
                    let tag = p.get(1).and_then(Value::as_u64).and_then(|x| u32::try_from(x).ok());
                    match (idx, tag, p.as_array().map(Vec::len)) {
                        (Some(i), Some(t), Some(2)) => Ok((i, t)),
                        _ => Err(Error::usage("tagged entries are [index, tag] pairs")),
                    }
                })
                .collect()
        };
        Self::from_notation(&side("left")?, &side("right")?)
    }
}

/// Larger size first, then smaller total tag, then the word of pairs read
/// from the outermost left position inward, then the right side likewise.
impl Ord for TaggedMinor {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then(self.weight().cmp(&other.weight()))
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for TaggedMinor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TaggedMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_side = |it: &mut dyn Iterator<Item = &Pair>| {
            it.map(|p| format!("({},{})", p.0, p.1))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "({}|{})",
            fmt_side(&mut self.left.iter().rev()),
            fmt_side(&mut self.right.iter())
        )
    }
}

/// Every tagging of `j`: all orderings of rows and columns over positions
/// and all tag vectors with the right total. Sorted by the total order.
pub fn enum_tagged(j: &MinorSymbol) -> Vec<TaggedMinor> {
    let h = j.size();
    let perms = crate::minors::permutations(h);
    let tags = crate::minors::compositions(j.weight(), 2 * h);
    let mut out = Vec::with_capacity(perms.len() * perms.len() * tags.len());
    for (pr, _) in &perms {
        for (pc, _) in &perms {
            for t in &tags {
                let left = (0..h).map(|i| (j.rows()[pr[i]], t[i])).collect();
                let right = (0..h).map(|i| (j.cols()[pc[i]], t[h + i])).collect();
                out.push(TaggedMinor::from_sides(left, right));
            }
        }
    }
    out.sort();
    out
}

/// Smallest shift `i0` such that the `i`-th smallest of `target` dominates
/// the `(i - i0)`-th smallest of `base` for every `i > i0`.
fn shift(base: &[u8], target: &[u8]) -> usize {
    let mut sorted: SmallVec<[u8; 4]> = base.into();
    sorted.sort_unstable();
    let h = target.len();
    (0..=h)
        .find(|&i0| (i0..h).all(|i| target[i] >= sorted[i - i0]))
        .expect("the full shift is vacuous")
}

/// The row and column offsets of `j` against the first `size(j)` positions of `e`.
pub fn offsets(e: &TaggedMinor, j: &MinorSymbol) -> Result<(usize, usize)> {
    let h = j.size();
    if h > e.size() {
        return Err(Error::usage("offsets need size(J') <= size(E)"));
    }
    let rows: SmallVec<[u8; 4]> = e.left[..h].iter().map(|p| p.0).collect();
    let cols: SmallVec<[u8; 4]> = e.right[..h].iter().map(|p| p.0).collect();
    Ok((shift(&rows, j.rows()), shift(&cols, j.cols())))
}

/// Whether some tagging of `j` dominates `e`: the weight gained over the
/// truncation of `e` must pay for both offsets.
pub fn is_greater(e: &TaggedMinor, j: &MinorSymbol) -> bool {
    let h = j.size();
    if h > e.size() {
        return false;
    }
    let (l, r) = offsets(e, j).expect("size checked");
    let base: u32 = e.left[..h].iter().chain(&e.right[..h]).map(|p| p.1).sum();
    j.weight() as i64 - base as i64 >= (l + r) as i64
}
