//! Pair-partition sums for the orthogonal and symplectic groups.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::slots::{add_into, convolve, count_constraints, is_zero_hist, vars_of, Slot};
use super::unitary::{hist_poly, range_poly};
use crate::algebra::{ExactScalar, RationalFunction};
use crate::combinatorics::{double_factorial_odd, loop_lengths, partner_arrays, PairPartition, Partition};
use crate::error::Result;
use crate::weingarten::{orthogonal_table, symplectic_table, DimMode};

/// Perfect matchings (partner arrays) of `slots` that never pair clashing slots.
pub(crate) fn compatible_matchings<F: Fn(usize, usize) -> bool>(n: usize, ok: F) -> Vec<Vec<usize>> {
    fn rec<F: Fn(usize, usize) -> bool>(partner: &mut Vec<usize>, ok: &F, out: &mut Vec<Vec<usize>>) {
        let Some(a) = partner.iter().position(|&x| x == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] != usize::MAX || !ok(a, b) {
                continue;
            }
            partner[a] = b;
            partner[b] = a;
            rec(partner, ok, out);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut alloc::vec![usize::MAX; n], &ok, &mut out);
    }
    out
}

/// Sign of the matching permutation `[a1, b1, a2, b2, ..]` (pairs sorted by first element).
pub(crate) fn partner_sign(partner: &[usize]) -> i32 {
    let word: Vec<usize> = (0..partner.len()).filter(|&i| i < partner[i]).flat_map(|i| [i, partner[i]]).collect();
    let mut inv = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn loop_type_counts(k: usize) -> BTreeMap<Partition, i128> {
    let q0 = PairPartition::standard(k).partner();
    let mut out = BTreeMap::new();
    for r in partner_arrays(2 * k) {
        *out.entry(Partition::new(loop_lengths(&q0, &r))).or_insert(0) += 1;
    }
    out
}

/// `Σ_{p,q} δ_p(rows) δ_q(cols) Wg^O(p, q, d)`.
pub(crate) fn evaluate_orthogonal(
    coeff: &ExactScalar,
    rows: &[Slot],
    cols: &[Slot],
    n_base: usize,
    mode: DimMode,
) -> Result<RationalFunction> {
    let n = rows.len();
    if n % 2 == 1 || coeff.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let k = n / 2;
    let mut acc: BTreeMap<Partition, Vec<i128>> = BTreeMap::new();
    let uniform = |s: &[Slot]| s.iter().all(|x| x.base_var().is_none() && *x == s[0]);
    if k > 0 && uniform(rows) && uniform(cols) {
        let df = i128::try_from(double_factorial_odd(k)).expect("count fits");
        for (t, c) in loop_type_counts(k) {
            acc.insert(t, alloc::vec![df * c]);
        }
    } else {
        let (rb, _) = vars_of(rows);
        let (cb, _) = vars_of(cols);
        let side = |slots: &[Slot], bases: &[u32]| {
            compatible_matchings(n, |a, b| !slots[a].clashes(&slots[b]))
                .into_iter()
                .filter_map(|p| {
                    let cons: Vec<(Slot, Slot)> =
                        (0..n).filter(|&a| a < p[a]).map(|a| (slots[a], slots[p[a]])).collect();
                    let h = count_constraints(&cons, n_base, bases, &[], &[], 0);
                    (!is_zero_hist(&h)).then_some((p, h))
                })
                .collect::<Vec<_>>()
        };
        let shared = rb.iter().any(|v| cb.contains(v));
        if shared {
            let mut bases = rb.clone();
            bases.extend(cb.iter().filter(|v| !rb.contains(v)));
            let ps = compatible_matchings(n, |a, b| !rows[a].clashes(&rows[b]));
            let qs = compatible_matchings(n, |a, b| !cols[a].clashes(&cols[b]));
            for p in &ps {
                for q in &qs {
                    let mut cons: Vec<(Slot, Slot)> =
                        (0..n).filter(|&a| a < p[a]).map(|a| (rows[a], rows[p[a]])).collect();
                    cons.extend((0..n).filter(|&a| a < q[a]).map(|a| (cols[a], cols[q[a]])));
                    let h = count_constraints(&cons, n_base, &bases, &[], &[], 0);
                    if !is_zero_hist(&h) {
                        add_into(acc.entry(Partition::new(loop_lengths(p, q))).or_default(), &h);
                    }
                }
            }
        } else {
            let rw = side(rows, &rb);
            let cw = side(cols, &cb);
            for (p, hr) in &rw {
                for (q, hc) in &cw {
                    add_into(acc.entry(Partition::new(loop_lengths(p, q))).or_default(), &convolve(hr, hc));
                }
            }
        }
    }
    let table = orthogonal_table(k, mode)?;
    let range = range_poly(false, mode);
    let mut total = RationalFunction::zero();
    for (t, h) in &acc {
        if is_zero_hist(h) {
            continue;
        }
        total = &total + &table[t].mul_poly(&hist_poly(h, &range));
    }
    Ok(total.scale(coeff))
}

/// Symplectic index: base position and half (`true` = high) under `J = [[0, I], [-I, 0]]`.
pub(crate) type SpIndex = (u32, bool);

/// `J_{xy}`: `+1` from low to high, `-1` from high to low, zero unless the bases agree.
pub(crate) fn j_entry(x: SpIndex, y: SpIndex) -> i32 {
    if x.0 != y.0 || x.1 == y.1 {
        0
    } else if x.1 {
        -1
    } else {
        1
    }
}

/// `Σ_{p,q} Δ^J_p(rows) Δ^J_q(cols) W(p, q)` for unconjugated `S` entries.
///
/// With `Δ^J_p(i) = ∏_{(a<b) ∈ p} J_{i_a i_b}` the weight that inverts the
/// Gram matrix of these invariants is `(-1)^k ε(p) ε(q) Wg^O(p, q, -d)`, i.e.
/// the symplectic value `(-1)^{loops} Wg^O(-d)` times the orientation sign
/// `ε(p) ε(q) (-1)^{k - loops}`, where `ε` is the sign of the matching read
/// as a permutation.
pub(crate) fn evaluate_symplectic(
    coeff: &ExactScalar,
    rows: &[SpIndex],
    cols: &[SpIndex],
    mode: DimMode,
) -> Result<RationalFunction> {
    let n = rows.len();
    if n % 2 == 1 || coeff.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let k = n / 2;
    let weights = |idx: &[SpIndex]| {
        compatible_matchings(n, |a, b| j_entry(idx[a], idx[b]) != 0)
            .into_iter()
            .map(|p| {
                let w: i32 = (0..n).filter(|&a| a < p[a]).map(|a| j_entry(idx[a], idx[p[a]])).product();
                let w = w * partner_sign(&p);
                (p, w as i128)
            })
            .collect::<Vec<_>>()
    };
    let rw = weights(rows);
    let cw = weights(cols);
    let mut acc: BTreeMap<(Partition, usize), i128> = BTreeMap::new();
    for (p, a) in &rw {
        for (q, b) in &cw {
            let lens = loop_lengths(p, q);
            let l = lens.len();
            *acc.entry((Partition::new(lens), l)).or_insert(0) += a * b;
        }
    }
    let table = symplectic_table(k, mode)?;
    let mut total = RationalFunction::zero();
    for ((t, loops), c) in acc {
        if c == 0 {
            continue;
        }
        let sign = if (k + loops).is_multiple_of(2) { 1 } else { -1 };
        total = &total + &table[&t].scale(&ExactScalar::from_int(BigInt::from(c * sign)));
    }
    Ok(total.scale(coeff))
}
