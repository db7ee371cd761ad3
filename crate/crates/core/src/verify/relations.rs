//! Determinantal relations: the vanishing of derived `(h+1)`-minors under
//! the factorization map, and the determinant-sum families that land in
//! determinantal ideals.

use serde_json::{json, Value};

use super::{Suite, Tally};
use crate::error::Result;
use crate::int::Int;
use crate::minors::relations::{
    complement, directional_sum, f_combination, f_sum, power_set, relation_coeffs, split_sum, subsets, Frame,
    QuadraticRelation,
};
use crate::minors::{expand_minor, in_ideal, minor_det, MinorSymbol};
use crate::morphism::qh;
use crate::ring::poly_to_json;

/// For `p = q = h + 2`, every `k`-th derivative of every `(h+1)`-minor maps
/// to zero, both as a symbol and as the derived determinant of the
/// invariant generators.
pub fn check_sft(hs: &[usize], max_order: u32) -> Result<super::Report> {
    let mut tally = Tally::new(Suite::Sft);
    for &h in hs {
        let s = h + 2;
        let universe: Vec<u8> = (1..=s as u8).collect();
        let sets = subsets(&universe, h + 1);
        for rows in &sets {
            for cols in &sets {
                let generators_det = qh(&minor_det(rows, cols)?, h);
                for k in 0..=max_order {
                    let j = MinorSymbol::new(k, rows, cols)?;
                    let by_symbol = qh(&expand_minor(&j), h);
                    let by_generators = generators_det.dbar(k)?;
                    let ok = by_symbol.is_zero() && by_generators.is_zero();
                    let detail = || {
                        json!({"h": h, "symbol": j.to_json(),
                               "symbol_image": poly_to_json(&by_symbol),
                               "generator_image": poly_to_json(&by_generators)})
                    };
                    if !tally.record(ok, detail) {
                        return Ok(tally.finish());
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

struct Sweep {
    tally: Tally,
}

impl Sweep {
    /// Records one membership; returns false to stop the sweep.
    fn member(&mut self, family: &str, params: Value, f: Result<crate::ring::Polynomial>, n: usize) -> Result<bool> {
        let f = f?;
        let ok = in_ideal(&f, n)?;
        Ok(self.tally.record(ok, || json!({"family": family, "ideal": n, "params": params})))
    }
}

/// Frames in ambient size `s` with minor size `n`: every choice of
/// disjoint required/excluded sets that leaves room for the complement.
fn frames(s: usize, n: usize) -> Vec<Frame> {
    let universe: Vec<u8> = (1..=s as u8).collect();
    let room = s - n;
    let mut sides = Vec::new();
    for inside in power_set(&universe) {
        for outside in power_set(&complement(&inside, s)) {
            if inside.len() + outside.len() <= room {
                sides.push((inside.clone(), outside));
            }
        }
    }
    let mut out = Vec::new();
    for (row_in, row_out) in &sides {
        for (col_in, col_out) in &sides {
            out.push(Frame {
                s,
                row_in: row_in.clone(),
                row_out: row_out.clone(),
                col_in: col_in.clone(),
                col_out: col_out.clone(),
                n,
            });
        }
    }
    out
}

fn frame_json(f: &Frame) -> Value {
    json!({"s": f.s, "n": f.n, "row_in": f.row_in, "row_out": f.row_out,
           "col_in": f.col_in, "col_out": f.col_out})
}

fn unit_windows(len: usize) -> impl Iterator<Item = Vec<Int>> {
    (0..len).map(move |i| (0..len).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
}

/// Every relation family over ambient sizes `<= max_s` and derivative
/// orders `<= max_order`. Coefficient windows are linear inputs, so the
/// unit windows cover every window.
pub fn check_relations(max_s: usize, max_order: u32) -> Result<super::Report> {
    let mut sweep = Sweep { tally: Tally::new(Suite::Relations) };
    // each family returns false once a failure is held
    let _ = directional(&mut sweep, max_s, max_order)?
        && split(&mut sweep, max_s, max_order)?
        && complementary(&mut sweep, max_s, max_order)?
        && quadratic(&mut sweep, max_s, max_order)?;
    Ok(sweep.tally.finish())
}

/// Directional sums over `L <= N <= I` of a derived minor on `(I, K)` lie
/// in the ideal of `(|I| - n + 1)`-minors when `l < 2n - |L|`.
fn directional(sweep: &mut Sweep, max_s: usize, max_order: u32) -> Result<bool> {
    let universe: Vec<u8> = (1..=max_s as u8).collect();
    for k in 1..=max_s {
        for i in subsets(&universe, k) {
            for kk in subsets(&universe, k) {
                for l_set in power_set(&i) {
                    for n in l_set.len().max(1)..=k {
                        let top = (2 * n - l_set.len()) as u32;
                        for l in 0..top.min(max_order + 1) {
                            let params = json!({"rows": i, "cols": kk, "fixed": l_set, "n": n, "order": l});
                            let f = directional_sum(&i, &kk, &l_set, n, l);
                            if !sweep.member("directional", params, f, k - n + 1)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Split sums over `J <= I <= complement(T)` lie in the ideal of
/// `(s - |J| - |T| - a)`-minors; sums whose index is below 1 are skipped
/// since that ideal is the whole ring.
fn split(sweep: &mut Sweep, max_s: usize, max_order: u32) -> Result<bool> {
    for s in 1..=max_s {
        let universe: Vec<u8> = (1..=s as u8).collect();
        for t in power_set(&universe) {
            for j in power_set(&complement(&t, s)) {
                for k in power_set(&universe) {
                    for l in 0..=max_order {
                        for a in 0..=l {
                            let index = s as i64 - j.len() as i64 - t.len() as i64 - a as i64;
                            if index < 1 {
                                continue;
                            }
                            let params = json!({"s": s, "t": t, "j": j, "k": k, "a": a, "order": l});
                            let f = split_sum(s, &t, &j, &k, a, l);
                            if !sweep.member("split", params, f, index as usize)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Complementary-minor sums with all derivatives on the complement lie in
/// the ideal of `(n+1)`-minors up to the frame's slack; combinations with
/// solved coefficients do at every order.
fn complementary(sweep: &mut Sweep, max_s: usize, max_order: u32) -> Result<bool> {
    for s in 2..=max_s {
        for n in 1..s {
            for frame in frames(s, n) {
                let slack = frame.bound();
                if slack < 0 {
                    continue;
                }
                for l in 0..=(slack as u32).min(max_order) {
                    let params = json!({"frame": frame_json(&frame), "order": l});
                    if !sweep.member("complementary", params, f_sum(&frame, l, 0), n + 1)? {
                        return Ok(false);
                    }
                }
                let l0 = slack as u32;
                for m in l0..=max_order {
                    for k0 in 0..=m - l0 {
                        for window in unit_windows(l0 as usize + 1) {
                            let params = json!({"frame": frame_json(&frame), "order": m, "start": k0,
                                                "window": window.iter().map(Int::to_string).collect::<Vec<_>>()});
                            let f = relation_coeffs(m, k0, &window).and_then(|c| f_combination(&frame, m, &c));
                            if !sweep.member("combination", params, f, n + 1)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Quadratic relations between an upper minor of size `h` and a lower one
/// of size `h' <= h` lie in the ideal of `(h+1)`-minors.
fn quadratic(sweep: &mut Sweep, max_s: usize, max_order: u32) -> Result<bool> {
    for h in 1..max_s {
        for h_low in 1..=h.min(max_s - h) {
            for i1 in 0..=h {
                for j1 in 0..=h {
                    for i2 in 0..=h_low {
                        for j2 in 0..=h_low {
                            let l0 = (i1 + j1 + i2 + j2) as i64 - 2 * h as i64 - 1;
                            if l0 < 0 {
                                continue;
                            }
                            let l0 = l0 as u32;
                            for m in l0..=max_order {
                                for k0 in 0..=m - l0 {
                                    for window in unit_windows(l0 as usize + 1) {
                                        let rel = QuadraticRelation::canonical(h, h_low, [i1, j1, i2, j2], m, k0, window);
                                        let params = json!({"h": h, "h_low": h_low, "shuffle": [i1, j1, i2, j2],
                                                            "order": m, "start": k0,
                                                            "window": rel.window.iter().map(Int::to_string).collect::<Vec<_>>()});
                                        if !sweep.member("quadratic", params, rel.polynomial(), h + 1)? {
                                            return Ok(false);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts() {
        // s = 2, n = 1: per side (∅,∅), ({1},∅), ({2},∅), (∅,{1}), (∅,{2})
        assert_eq!(frames(2, 1).len(), 25);
        assert_eq!(frames(2, 2).len(), 1);
    }

    #[test]
    fn small_sweeps_pass() {
        let r = check_sft(&[1], 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 9 * 3);
        let r = check_relations(3, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
    }
}
