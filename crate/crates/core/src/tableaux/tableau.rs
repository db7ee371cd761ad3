use std::fmt;

use smallvec::SmallVec;

use super::standard::canonical_tagging;
use super::tagged::{Pairs, TaggedMinor};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{Kind, Monomial, Polynomial, Var};

/// One cell of a double tableau; `None` is the pad, which sorts above
/// every variable.
pub type Cell = Option<Var>;

const PAD_KEY: u64 = u64::MAX;

/// Sort key realizing the cell order: `a` above `b`, then higher level,
/// then larger first index, then larger column.
pub(crate) fn cell_key(c: Cell) -> u64 {
    match c {
        None => PAD_KEY,
        Some(v) => {
            let kind = u64::from(v.kind == Kind::A);
            (kind << 40) | (u64::from(v.level) << 16) | (u64::from(v.first) << 8) | u64::from(v.second)
        }
    }
}

/// The word of the tableau of `m` at the given width, computed without
/// materializing the tableau.
pub(crate) fn monomial_word(m: &Monomial, width: usize) -> Result<Vec<u64>> {
    let mut cells: SmallVec<[(u8, u8, u64); 16]> = SmallVec::new();
    for &(v, e) in m.factors() {
        let side = match v.kind {
            Kind::A => 0,
            Kind::B => 1,
            Kind::X => return Err(Error::usage("tableaux hold only a and b variables")),
        };
        if v.second == 0 || v.second as usize > width {
            return Err(Error::usage(format!("column {} outside 1..={width}", v.second)));
        }
        for _ in 0..e {
            cells.push((side, v.second, cell_key(Some(v))));
        }
    }
    cells.sort_unstable();
    let mut height = 0;
    let mut run = 0;
    for (i, c) in cells.iter().enumerate() {
        run = if i > 0 && cells[i - 1].0 == c.0 && cells[i - 1].1 == c.1 { run + 1 } else { 1 };
        height = height.max(run);
    }
    let stride = 2 * width;
    let mut word = vec![PAD_KEY; stride * height];
    let mut row = 0;
    for (i, &(side, col, key)) in cells.iter().enumerate() {
        row = if i > 0 && cells[i - 1].0 == side && cells[i - 1].1 == col { row + 1 } else { 0 };
        word[row * stride + side as usize * width + (width - col as usize)] = key;
    }
    Ok(word)
}

/// A double tableau: each row has a left half indexed by column `1..=width`
/// holding `a` variables and a right half holding `b` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    width: usize,
    left: Vec<Vec<Cell>>,
    right: Vec<Vec<Cell>>,
}

impl Tableau {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.left.len()
    }

    /// Cell in `row` (from 0) and column `col` (from 1) of the left half.
    pub fn left_cell(&self, row: usize, col: usize) -> Cell {
        self.left[row][col - 1]
    }

    pub fn right_cell(&self, row: usize, col: usize) -> Cell {
        self.right[row][col - 1]
    }

    /// The unique tableau of an `a`/`b` monomial: each column sorted
    /// ascending, top-aligned, pads below. `width` defaults to the largest
    /// column present.
    pub fn from_monomial(m: &Monomial, width: Option<usize>) -> Result<Self> {
        let used = m.vars().map(|v| v.second as usize).max().unwrap_or(0);
        let width = width.unwrap_or(used);
        if used > width {
            return Err(Error::usage(format!("monomial uses column {used} beyond width {width}")));
        }
        let mut cols: [Vec<Vec<Var>>; 2] = [vec![Vec::new(); width], vec![Vec::new(); width]];
        for &(v, e) in m.factors() {
            let side = match v.kind {
                Kind::A => 0,
                Kind::B => 1,
                Kind::X => return Err(Error::usage("tableaux hold only a and b variables")),
            };
            if v.second == 0 {
                return Err(Error::usage("columns are numbered from 1"));
            }
            for _ in 0..e {
                cols[side][v.second as usize - 1].push(v);
            }
        }
        let height = cols.iter().flatten().map(Vec::len).max().unwrap_or(0);
        let build = |side: &mut Vec<Vec<Var>>| -> Vec<Vec<Cell>> {
            for c in side.iter_mut() {
                c.sort_by_key(|&v| cell_key(Some(v)));
            }
            (0..height)
                .map(|r| side.iter().map(|c| c.get(r).copied()).collect())
                .collect()
        };
        let [mut l, mut r] = cols;
        Ok(Tableau {
            width,
            left: build(&mut l),
            right: build(&mut r),
        })
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_factors(
            self.left
                .iter()
                .chain(&self.right)
                .flatten()
                .flatten()
                .map(|&v| (v, 1)),
        )
    }

    /// Row by row, the left half from the outermost column inward, then the
    /// right half the same way, as comparable keys.
    pub fn word(&self) -> Vec<u64> {
        let mut w = Vec::with_capacity(2 * self.width * self.rows());
        for (l, r) in self.left.iter().zip(&self.right) {
            w.extend(l.iter().rev().map(|&c| cell_key(c)));
            w.extend(r.iter().rev().map(|&c| cell_key(c)));
        }
        w
    }

    /// Reads each row as a tagged minor occupying columns `1..=size`.
    /// Present only when the rows have this shape and form a canonical chain.
    pub fn chain(&self) -> Option<Vec<TaggedMinor>> {
        let mut chain = Vec::with_capacity(self.rows());
        for (l, r) in self.left.iter().zip(&self.right) {
            let read = |row: &[Cell], kind: Kind| -> Option<Pairs> {
                let size = row.iter().take_while(|c| c.is_some()).count();
                if row[size..].iter().any(Option::is_some) {
                    return None;
                }
                row[..size]
                    .iter()
                    .map(|c| c.filter(|v| v.kind == kind).map(|v| (v.first, u32::from(v.level))))
                    .collect()
            };
            let (left, right) = (read(l, Kind::A)?, read(r, Kind::B)?);
            if left.is_empty() || left.len() != right.len() {
                return None;
            }
            let e = TaggedMinor::new(&left, &right).ok()?;
            chain.push(e);
        }
        let collapsed: Vec<_> = chain.iter().map(TaggedMinor::collapse).collect();
        (canonical_tagging(&collapsed)? == chain).then_some(chain)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |c: &Cell| match c {
            None => "*".to_string(),
            Some(v) => format!("{}{}{}^{}", v.kind.letter(), v.first, v.second, v.level),
        };
        for (n, (l, r)) in self.left.iter().zip(&self.right).enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            let ls: Vec<_> = l.iter().rev().map(cell).collect();
            let rs: Vec<_> = r.iter().map(cell).collect();
            write!(f, "{} | {}", ls.join(" "), rs.join(" "))?;
        }
        Ok(())
    }
}

/// The tableau whose row `a` places the `i`-th left pair of the `a`-th
/// tagged minor in left column `i`, and likewise on the right.
pub fn tableau_of(chain: &[TaggedMinor], width: usize) -> Result<Tableau> {
    let collapsed: Vec<_> = chain.iter().map(TaggedMinor::collapse).collect();
    if canonical_tagging(&collapsed).as_deref() != Some(chain) {
        return Err(Error::usage("tableau_of needs a canonical chain"));
    }
    if chain.iter().any(|e| e.size() > width) {
        return Err(Error::usage(format!("a tagged minor is wider than {width}")));
    }
    let row = |side: &[(u8, u32)], kind: Kind| -> Result<Vec<Cell>> {
        let mut cells = vec![None; width];
        for (i, &(idx, tag)) in side.iter().enumerate() {
            let level = u16::try_from(tag).map_err(|_| Error::usage("tag too large"))?;
            cells[i] = Some(Var::new(kind, idx, (i + 1) as u8, level));
        }
        Ok(cells)
    };
    let mut left = Vec::with_capacity(chain.len());
    let mut right = Vec::with_capacity(chain.len());
    for e in chain {
        left.push(row(e.left(), Kind::A)?);
        right.push(row(e.right(), Kind::B)?);
    }
    Ok(Tableau { width, left, right })
}

/// The term whose tableau word is largest, with its coefficient.
pub fn leading_monomial(f: &Polynomial) -> Result<(Monomial, Int)> {
    let width = f
        .terms()
        .iter()
        .flat_map(|(m, _)| m.vars())
        .map(|v| v.second as usize)
        .max()
        .unwrap_or(0);
    let mut best: Option<(Vec<u64>, &Monomial, &Int)> = None;
    for (m, c) in f.terms() {
        let w = monomial_word(m, width)?;
        if best.as_ref().is_none_or(|b| w > b.0) {
            best = Some((w, m, c));
        }
    }
    let (_, m, c) = best.ok_or_else(|| Error::usage("zero polynomial has no leading monomial"))?;
    Ok((m.clone(), c.clone()))
}
