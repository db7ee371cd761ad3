//! Rewriting products of minors in the standard monomial basis.
//!
//! The production path works in the image of the factorization map, where
//! each standard product has a distinct leading tableau with a unit
//! coefficient: peel off the leading tableau of the residual, recover the
//! standard product it belongs to, subtract, repeat. [`oracle`] solves the
//! same problem by plain linear algebra in the `x` ring.

pub mod oracle;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::minors::{expand_minor, MinorSymbol};
use crate::morphism::qh;
use crate::ring::{Monomial, Polynomial};
use crate::tableaux::{monomial_word, StandardProduct, Tableau};

pub use oracle::{graded_dim, straighten_oracle, Oracle};

/// An integer combination of standard products with no zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StandardCombination {
    terms: BTreeMap<StandardProduct, Int>,
}

impl StandardCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(s: StandardProduct) -> Self {
        let mut c = Self::new();
        c.add(s, &Int::ONE);
        c
    }

    pub fn add(&mut self, s: StandardProduct, c: &Int) {
        add_term(&mut self.terms, s, c);
    }

    /// Terms in ascending product order.
    pub fn terms(&self) -> impl Iterator<Item = (&StandardProduct, &Int)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &StandardProduct) -> Int {
        self.terms.get(s).cloned().unwrap_or(Int::ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(s, c)| json!({"coeff": c.to_string(), "product": s.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::usage("a standard combination is a JSON array"))?;
        let mut out = Self::new();
        for t in arr {
            let coeff: Int = t
                .get("coeff")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::usage("each term needs a decimal string `coeff`"))?;
            let factors = t
                .get("product")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::usage("each term needs a `product` array"))?
                .iter()
                .map(MinorSymbol::from_json)
                .collect::<Result<Vec<_>>>()?;
            out.add(StandardProduct::new(factors)?, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for StandardCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * [{s}]")?;
        }
        Ok(())
    }
}

fn add_term(terms: &mut BTreeMap<StandardProduct, Int>, s: StandardProduct, c: &Int) {
    if c.is_zero() {
        return;
    }
    match terms.entry(s) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Checks that every factor fits a `p × q` matrix and has size at most `h`.
pub(crate) fn validate(js: &[MinorSymbol], p: usize, q: usize, h: usize) -> Result<()> {
    for j in js {
        if j.size() > h {
            return Err(Error::usage(format!("{j} has size {} above {h}", j.size())));
        }
        if j.max_row() as usize > p || j.max_col() as usize > q {
            return Err(Error::usage(format!("{j} does not fit a {p}x{q} matrix")));
        }
    }
    Ok(())
}

/// Straightening in the image of the factorization map, with the images of
/// individual minors cached across calls.
#[derive(Debug)]
pub struct Straightener {
    p: usize,
    q: usize,
    h: usize,
    images: FxHashMap<MinorSymbol, Polynomial>,
}

impl Straightener {
    pub fn new(p: usize, q: usize, h: usize) -> Self {
        Straightener {
            p,
            q,
            h,
            images: FxHashMap::default(),
        }
    }

    fn image(&mut self, j: &MinorSymbol) -> &Polynomial {
        let h = self.h;
        self.images
            .entry(j.clone())
            .or_insert_with(|| qh(&expand_minor(j), h))
    }

    /// Image of a product under the factorization map.
    pub fn product_image(&mut self, js: &[MinorSymbol]) -> Polynomial {
        let mut acc = Polynomial::one();
        for j in js {
            acc = acc.mul(self.image(j));
        }
        acc
    }

    pub fn straighten(&mut self, js: &[MinorSymbol]) -> Result<StandardCombination> {
        validate(js, self.p, self.q, self.h)?;
        let width = self.h;
        let word = |m: &Monomial| monomial_word(m, width);
        // residual keyed by tableau word, so the leading term is the last key
        let mut residual: BTreeMap<Vec<u64>, (Monomial, Int)> = BTreeMap::new();
        for (m, c) in self.product_image(js).into_terms() {
            residual.insert(word(&m)?, (m, c));
        }

        let mut out = StandardCombination::new();
        while let Some((key, (m, c))) = residual.last_key_value() {
            let tableau = Tableau::from_monomial(m, Some(width))?;
            let chain = tableau.chain().ok_or_else(|| {
                Error::invariant(format!("leading tableau of the residual is not standard:\n{tableau}"))
            })?;
            let (key, c) = (key.clone(), c.clone());
            let factors: Vec<MinorSymbol> = chain.iter().map(|e| e.collapse()).collect();
            let s = StandardProduct::new(factors)?;
            let image = self.product_image(s.factors());

            let keyed: Vec<(Vec<u64>, &Monomial, &Int)> = image
                .terms()
                .iter()
                .map(|(lm, lc)| word(lm).map(|w| (w, lm, lc)))
                .collect::<Result<_>>()?;
            let lead = keyed.iter().max_by(|a, b| a.0.cmp(&b.0));
            match lead {
                Some((w, _, unit)) if *w == key && unit.is_unit() => {
                    let coeff = c.div_exact(unit).expect("units divide");
                    for (k, lm, lc) in keyed {
                        let delta = -(lc * &coeff);
                        match residual.entry(k) {
                            Entry::Vacant(v) => {
                                v.insert((lm.clone(), delta));
                            }
                            Entry::Occupied(mut o) => {
                                o.get_mut().1 += &delta;
                                if o.get().1.is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                    out.add(s, &coeff);
                }
                _ => {
                    return Err(Error::invariant(format!(
                        "[{s}] does not lead with its own tableau and a unit coefficient"
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// Rewrites `js` as an integer combination of standard products of minors
/// of size at most `h` in a `p × q` matrix, modulo the `(h+1)`-minors.
pub fn straighten(js: &[MinorSymbol], p: usize, q: usize, h: usize) -> Result<StandardCombination> {
    Straightener::new(p, q, h).straighten(js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{enumerate_standard, symbols};

    fn product(s: &str) -> Vec<MinorSymbol> {
        crate::minors::parse_product(s).unwrap()
    }

    fn sp(s: &str) -> StandardProduct {
        StandardProduct::new(product(s)).unwrap()
    }

    #[test]
    fn examples() {
        let c = straighten(&product("0:(1|2),0:(2|1)"), 2, 2, 1).unwrap();
        assert_eq!(c, StandardCombination::single(sp("0:(1|1),0:(2|2)")));
        let c = straighten(&product("1:(1|1),0:(1|1)"), 1, 1, 1).unwrap();
        assert_eq!(c, StandardCombination::single(sp("0:(1|1),1:(1|1)")));
        let empty = straighten(&[], 2, 2, 1).unwrap();
        assert_eq!(empty, StandardCombination::single(StandardProduct::new(vec![]).unwrap()));
        assert!(straighten(&product("0:(1,2|1,2)"), 2, 2, 1).is_err());
        assert!(straighten(&product("0:(3|1)"), 2, 2, 1).is_err());
    }

    #[test]
    fn standard_products_are_fixed() {
        let mut st = Straightener::new(3, 3, 2);
        for s in enumerate_standard(3, 3, 2, 3, 2) {
            assert_eq!(st.straighten(s.factors()).unwrap(), StandardCombination::single(s));
        }
    }

    #[test]
    fn images_match_after_straightening() {
        let mut st = Straightener::new(3, 3, 2);
        let pool = symbols(3, 3, 2, 1);
        for (i, a) in pool.iter().enumerate().step_by(5) {
            for b in pool.iter().skip(i).step_by(7) {
                let js = vec![a.clone(), b.clone()];
                let c = st.straighten(&js).unwrap();
                let mut rebuilt = Polynomial::zero();
                for (s, k) in c.terms() {
                    rebuilt = rebuilt.add(&st.product_image(s.factors()).scale(k));
                }
                assert_eq!(rebuilt, st.product_image(&js), "{a} {b}");
            }
        }
    }

    #[test]
    fn non_standard_pairs_reduce_below_their_first_factor() {
        let pool = symbols(3, 3, 2, 2);
        let mut st = Straightener::new(3, 3, 2);
        for (i, a) in pool.iter().enumerate() {
            for b in &pool[i..] {
                let js = vec![a.clone(), b.clone()];
                if crate::tableaux::canonical_tagging(&js).is_some() {
                    continue;
                }
                for (s, _) in st.straighten(&js).unwrap().terms() {
                    assert!(s.factors()[..1] < js[..1], "{a} {b} -> {s}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = straighten(&product("0:(1|2),0:(2|1),1:(1|1)"), 2, 2, 1).unwrap();
        let v = c.to_json();
        assert_eq!(StandardCombination::from_json(&v).unwrap(), c);
        assert!(v.to_string().starts_with(r#"[{"coeff":"#));
    }
}
