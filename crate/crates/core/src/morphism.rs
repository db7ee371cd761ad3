//! The factorization map `x = a b^T` on jets, its invariant generators, and
//! the infinitesimal action of the jet Lie algebra of `gl_h` on `a` and `b`.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::Echelon;
use crate::ring::{Kind, Monomial, Polynomial, TermMap, Var};

/// `X^(k)_{ij} = dbar(k) sum_l a_{il} b_{jl}`: the sum over `l <= h` and
/// `s + t = k` of `a^(s)_{il} b^(t)_{jl}`.
pub fn x_generator(i: u8, j: u8, k: u16, h: usize) -> Polynomial {
    let mut acc = TermMap::new();
    for l in 1..=h as u8 {
        for s in 0..=k {
            let m = Monomial::from_factors([(Var::a(i, l, s), 1), (Var::b(j, l, k - s), 1)]);
            acc.add(m, &Int::ONE);
        }
    }
    acc.into_poly()
}

/// Ring homomorphism from the `x` ring to the `a`/`b` ring sending each
/// `x^(k)_{ij}` to [`x_generator`]. With `h = 0` only constants survive.
pub fn qh(f: &Polynomial, h: usize) -> Polynomial {
    f.substitute(|v| {
        debug_assert_eq!(v.kind, Kind::X, "qh expects a polynomial in x");
        x_generator(v.first, v.second, v.level, h)
    })
}

/// The element `e_{rs} t^m` of the jet Lie algebra acting on size-`h` jets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetLieElement {
    pub r: u8,
    pub s: u8,
    pub m: u16,
}

impl JetLieElement {
    pub fn new(r: u8, s: u8, m: u16, h: usize) -> Result<Self> {
        if r == 0 || s == 0 || r as usize > h || s as usize > h {
            return Err(Error::usage(format!("matrix unit ({r},{s}) outside 1..={h}")));
        }
        Ok(JetLieElement { r, s, m })
    }

    /// All elements with `m <= max_level`, in a fixed order.
    pub fn all(h: usize, max_level: u16) -> Vec<JetLieElement> {
        let mut out = Vec::new();
        for m in 0..=max_level {
            for r in 1..=h as u8 {
                for s in 1..=h as u8 {
                    out.push(JetLieElement { r, s, m });
                }
            }
        }
        out
    }

    fn image(&self, v: Var) -> Option<(i64, Var)> {
        if v.level < self.m {
            return None;
        }
        let level = v.level - self.m;
        match v.kind {
            Kind::A if v.second == self.s => Some((1, Var::a(v.first, self.r, level))),
            Kind::B if v.second == self.r => Some((-1, Var::b(v.first, self.s, level))),
            _ => None,
        }
    }
}

/// Applies the derivation `D_{r,s,m}`: `a^(k)_{il} -> [l = s] a^(k-m)_{ir}`
/// and `b^(k)_{jl} -> -[l = r] b^(k-m)_{js}`.
pub fn lie_derive(f: &Polynomial, g: JetLieElement) -> Polynomial {
    f.derive_by(|v| g.image(v))
}

/// Monomials in one factor matrix: `deg` variables with rows `<= rows`,
/// columns `<= h`, levels summing to at most `max_weight`; returned as
/// sorted variable lists.
fn factor_monomials(kind: Kind, rows: u8, h: u8, deg: usize, max_weight: u16) -> Vec<Vec<Var>> {
    let mut vars = Vec::new();
    for k in 0..=max_weight {
        for i in 1..=rows {
            for l in 1..=h {
                vars.push(Var::new(kind, i, l, k));
            }
        }
    }
    vars.sort();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(deg);
    fn go(vars: &[Var], start: usize, deg: usize, budget: u16, cur: &mut Vec<Var>, out: &mut Vec<Vec<Var>>) {
        if cur.len() == deg {
            out.push(cur.clone());
            return;
        }
        for idx in start..vars.len() {
            let v = vars[idx];
            if v.level <= budget {
                cur.push(v);
                go(vars, idx, deg, budget - v.level, cur, out);
                cur.pop();
            }
        }
    }
    go(&vars, 0, deg, max_weight, &mut cur, &mut out);
    out
}

/// Grading data of a factor monomial preserved (rows) or constrained
/// (columns) by the action.
fn profile(vars: &[Var], h: usize) -> (Vec<u8>, Vec<u16>, u32) {
    let mut rows: Vec<u8> = vars.iter().map(|v| v.first).collect();
    rows.sort_unstable();
    let mut cols = vec![0u16; h];
    for v in vars {
        cols[v.second as usize - 1] += 1;
    }
    (rows, cols, vars.iter().map(|v| v.level as u32).sum())
}

/// Dimension of the common kernel of all `D_{r,s,m}` on the part of the
/// `a`/`b` ring with `d` factors of each kind and total weight `w`.
///
/// The diagonal elements `D_{r,r,0}` act on a monomial by the scalar
/// (number of `a` in column `r`) minus (number of `b` in column `r`), so
/// the kernel lives on column-balanced monomials; the remaining elements
/// preserve the row indices, so the computation splits into blocks by the
/// multisets of `a` rows and `b` rows.
pub fn invariant_kernel_dim(p: usize, q: usize, h: usize, d: usize, w: u32) -> usize {
    if h == 0 {
        return usize::from(d == 0 && w == 0);
    }
    let w16 = w as u16;
    let a_side = factor_monomials(Kind::A, p as u8, h as u8, d, w16);
    let b_side = factor_monomials(Kind::B, q as u8, h as u8, d, w16);

    // (a rows, b rows) -> domain monomials
    let mut blocks: BTreeMap<(Vec<u8>, Vec<u8>), Vec<Monomial>> = BTreeMap::new();
    // (column profile, weight) -> (b rows, monomial)
    type Partners<'a> = Vec<(Vec<u8>, &'a Vec<Var>)>;
    let mut b_by_cols: FxHashMap<(Vec<u16>, u32), Partners> = FxHashMap::default();
    for bv in &b_side {
        let (rows, cols, wt) = profile(bv, h);
        b_by_cols.entry((cols, wt)).or_default().push((rows, bv));
    }
    for av in &a_side {
        let (arows, cols, wt) = profile(av, h);
        let Some(partners) = b_by_cols.get(&(cols, w - wt)) else {
            continue;
        };
        for (brows, bv) in partners {
            let m = Monomial::from_factors(av.iter().chain(bv.iter()).map(|&v| (v, 1)));
            blocks.entry((arows.clone(), brows.clone())).or_default().push(m);
        }
    }

    let actions: Vec<JetLieElement> = JetLieElement::all(h, w16)
        .into_iter()
        .filter(|g| !(g.r == g.s && g.m == 0))
        .collect();
    let mut kernel = 0;
    for domain in blocks.values() {
        let mut codomain: FxHashMap<(usize, Monomial), usize> = FxHashMap::default();
        let mut ech = Echelon::new();
        for m in domain {
            let single = Polynomial::term(m.clone(), Int::ONE);
            let mut row = Vec::new();
            for (gi, g) in actions.iter().enumerate() {
                for (img, c) in lie_derive(&single, *g).into_terms() {
                    let next = codomain.len();
                    let col = *codomain.entry((gi, img)).or_insert(next);
                    row.push((col, c));
                }
            }
            row.sort_unstable_by_key(|e| e.0);
            ech.insert(row);
        }
        kernel += domain.len() - ech.rank();
    }
    kernel
}
