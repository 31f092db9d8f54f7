//! Σ_{σ,τ} δ_σ(rows) δ_τ(cols) Wg^U(στ⁻¹) over slot-indexed monomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::slots::{add_into, convolve, count_constraints, is_zero_hist, vars_of, Slot};
use crate::algebra::{DimPoly, ExactScalar, RationalFunction};
use crate::combinatorics::{class_size, factorial, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::weingarten::{wg_unitary_mode, DimMode};

/// A balanced or unbalanced product of `U` and `Ū` entries with slot indices.
#[derive(Clone, Debug)]
pub(crate) struct UContraction {
    pub coeff: ExactScalar,
    /// `(row, col)` of each unconjugated factor.
    pub u: Vec<(Slot, Slot)>,
    /// `(row, col)` of each conjugated factor.
    pub ubar: Vec<(Slot, Slot)>,
    /// Half bits whose sign `s(bit)` multiplies the term.
    pub signs: Vec<u32>,
    pub n_base: usize,
    pub n_half: usize,
    /// Base indices range over `d/2` instead of `d`.
    pub split: bool,
}

impl UContraction {
    pub(crate) fn new(coeff: ExactScalar) -> Self {
        UContraction { coeff, u: Vec::new(), ubar: Vec::new(), signs: Vec::new(), n_base: 0, n_half: 0, split: false }
    }

    pub(crate) fn fresh_base(&mut self) -> u32 {
        self.n_base += 1;
        (self.n_base - 1) as u32
    }

    pub(crate) fn fresh_half(&mut self) -> u32 {
        self.n_half += 1;
        (self.n_half - 1) as u32
    }
}

/// All bijections `a ↦ π(a)` with `left[a]` not clashing with `right[π(a)]`.
pub(crate) fn compatible_perms(left: &[Slot], right: &[Slot]) -> Vec<Vec<usize>> {
    fn rec(a: usize, left: &[Slot], right: &[Slot], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == left.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..right.len() {
            if used[b] || left[a].clashes(&right[b]) {
                continue;
            }
            used[b] = true;
            cur.push(b);
            rec(a + 1, left, right, used, cur, out);
            cur.pop();
            used[b] = false;
        }
    }
    let mut out = Vec::new();
    rec(0, left, right, &mut alloc::vec![false; right.len()], &mut Vec::new(), &mut out);
    out
}

/// Packed, sorted cycle type of `σ ∘ τ⁻¹` (four bits per cycle length).
fn cycle_key(sigma: &[usize], tau_inv: &[usize]) -> u64 {
    let k = sigma.len();
    let mut seen = [false; 16];
    let mut lens = [0u8; 16];
    let mut n = 0;
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut len = 0u8;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = sigma[tau_inv[i]];
            len += 1;
        }
        lens[n] = len;
        n += 1;
    }
    lens[..n].sort_unstable_by(|a, b| b.cmp(a));
    lens[..n].iter().fold(0u64, |acc, &l| (acc << 4) | l as u64)
}

fn partition_key(p: &Partition) -> u64 {
    p.parts().iter().fold(0u64, |acc, &l| (acc << 4) | l as u64)
}

pub(crate) fn range_poly(split: bool, mode: DimMode) -> DimPoly {
    let d = mode.power(1);
    if split {
        d.scale(&ExactScalar::ratio(1, 2))
    } else {
        d
    }
}

pub(crate) fn hist_poly(h: &[i128], range: &DimPoly) -> DimPoly {
    let mut out = DimPoly::zero();
    let mut pw = DimPoly::one();
    for &c in h {
        if c != 0 {
            out = &out + &pw.scale(&ExactScalar::from_int(BigInt::from(c)));
        }
        pw = &pw * range;
    }
    out
}

pub(crate) fn evaluate_unitary(c: &UContraction, mode: DimMode) -> Result<RationalFunction> {
    let k = c.u.len();
    if k != c.ubar.len() || c.coeff.is_zero() {
        return Ok(RationalFunction::zero());
    }
    if k > 15 {
        return Err(Error::Unsupported("unitary moments above degree 30".into()));
    }
    let types = partitions_of(k);
    let index: BTreeMap<u64, usize> = types.iter().enumerate().map(|(i, t)| (partition_key(t), i)).collect();
    let mut acc: Vec<Vec<i128>> = alloc::vec![Vec::new(); types.len()];

    let rows_u: Vec<Slot> = c.u.iter().map(|x| x.0).collect();
    let rows_b: Vec<Slot> = c.ubar.iter().map(|x| x.0).collect();
    let cols_u: Vec<Slot> = c.u.iter().map(|x| x.1).collect();
    let cols_b: Vec<Slot> = c.ubar.iter().map(|x| x.1).collect();
    let (rb, rh) = vars_of(rows_u.iter().chain(&rows_b));
    let (cb, ch) = vars_of(cols_u.iter().chain(&cols_b));

    let uniform = |s: &[Slot], t: &[Slot]| {
        s.iter().chain(t).all(|x| x.base_var().is_none() && x.half_var().is_none() && *x == s[0])
    };
    if k > 0 && c.signs.is_empty() && uniform(&rows_u, &rows_b) && uniform(&cols_u, &cols_b) {
        // |M_{11}|^{2k}: every (σ, τ) survives with weight one.
        let kf = factorial(k);
        for (i, t) in types.iter().enumerate() {
            let n: BigInt = &kf * class_size(t);
            acc[i] = alloc::vec![i128::try_from(n).expect("count fits")];
        }
        return combine(c, &types, &acc, mode);
    }

    let sigmas = compatible_perms(&rows_u, &rows_b);
    let taus = compatible_perms(&cols_u, &cols_b);
    let separable = !rb.iter().any(|v| cb.contains(v)) && !rh.iter().any(|h| ch.contains(h));
    if separable {
        // Sign bits go with the side that mentions them.
        let mut row_halves = rh.clone();
        let mut row_signs = Vec::new();
        let mut col_signs = Vec::new();
        for &s in &c.signs {
            if ch.contains(&s) {
                col_signs.push(s);
            } else {
                if !row_halves.contains(&s) {
                    row_halves.push(s);
                }
                row_signs.push(s);
            }
        }
        let side = |perms: &[Vec<usize>], l: &[Slot], r: &[Slot], bases: &[u32], halves: &[u32], signs: &[u32]| {
            perms
                .iter()
                .filter_map(|p| {
                    let cons: Vec<(Slot, Slot)> = p.iter().enumerate().map(|(a, &b)| (l[a], r[b])).collect();
                    let h = count_constraints(&cons, c.n_base, bases, halves, signs, c.n_half);
                    (!is_zero_hist(&h)).then(|| (p.clone(), h))
                })
                .collect::<Vec<_>>()
        };
        let row_w = side(&sigmas, &rows_u, &rows_b, &rb, &row_halves, &row_signs);
        let col_w = side(&taus, &cols_u, &cols_b, &cb, &ch, &col_signs);
        let col_inv: Vec<(Vec<usize>, &Vec<i128>)> = col_w
            .iter()
            .map(|(t, h)| {
                let mut inv = alloc::vec![0; k];
                for (i, &x) in t.iter().enumerate() {
                    inv[x] = i;
                }
                (inv, h)
            })
            .collect();
        for (s, hr) in &row_w {
            for (tinv, hc) in &col_inv {
                let t = index[&cycle_key(s, tinv)];
                add_into(&mut acc[t], &convolve(hr, hc));
            }
        }
    } else {
        let mut bases = rb.clone();
        bases.extend(cb.iter().filter(|v| !rb.contains(v)));
        let mut halves = rh.clone();
        halves.extend(ch.iter().filter(|h| !rh.contains(h)));
        halves.extend(c.signs.iter().filter(|h| !rh.contains(h) && !ch.contains(h)));
        for s in &sigmas {
            for t in &taus {
                let mut cons: Vec<(Slot, Slot)> = s.iter().enumerate().map(|(a, &b)| (rows_u[a], rows_b[b])).collect();
                cons.extend(t.iter().enumerate().map(|(a, &b)| (cols_u[a], cols_b[b])));
                let h = count_constraints(&cons, c.n_base, &bases, &halves, &c.signs, c.n_half);
                if is_zero_hist(&h) {
                    continue;
                }
                let mut tinv = alloc::vec![0; k];
                for (i, &x) in t.iter().enumerate() {
                    tinv[x] = i;
                }
                add_into(&mut acc[index[&cycle_key(s, &tinv)]], &h);
            }
        }
    }
    combine(c, &types, &acc, mode)
}

fn combine(c: &UContraction, types: &[Partition], acc: &[Vec<i128>], mode: DimMode) -> Result<RationalFunction> {
    let range = range_poly(c.split, mode);
    let mut total = RationalFunction::zero();
    for (t, h) in types.iter().zip(acc) {
        if is_zero_hist(h) {
            continue;
        }
        let w = wg_unitary_mode(t, mode)?;
        total = &total + &w.mul_poly(&hist_poly(h, &range));
    }
    Ok(total.scale(&c.coeff))
}
