//! Permutation matrices, centered permutations and diagonal unitaries.

use alloc::vec::Vec;

use crate::algebra::{DimPoly, RationalFunction};
use crate::weingarten::DimMode;

/// `E[∏ P_{r c}]` over uniform permutation matrices.
///
/// Repeated pairs collapse (entries are 0/1); a row sent to two columns, or
/// two rows to one column, is impossible. Otherwise `1/(d)_m` for `m`
/// distinct pairs.
pub(crate) fn permutation_moment(pairs: &[(usize, usize)], mode: DimMode) -> RationalFunction {
    let mut distinct: Vec<(usize, usize)> = pairs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            if (a.0 == b.0) != (a.1 == b.1) {
                return RationalFunction::zero();
            }
        }
    }
    let mut falling = DimPoly::one();
    for j in 0..distinct.len() {
        falling = &falling * &DimPoly::linear(-(j as i64));
    }
    let r = RationalFunction::normalize_nonzero(DimPoly::one(), falling);
    mode.reduce_rf(&r).unwrap_or_else(|_| RationalFunction::zero())
}

/// `E[∏ (P_{r c} - 1/d)]`, expanded over subsets of the factors.
pub(crate) fn centered_permutation_moment(pairs: &[(usize, usize)], mode: DimMode) -> RationalFunction {
    let m = pairs.len();
    let minus_inv_d = RationalFunction::normalize_nonzero(DimPoly::from_ints(&[-1]), DimPoly::var());
    let minus_inv_d = mode.reduce_rf(&minus_inv_d).expect("dimension is positive");
    let mut total = RationalFunction::zero();
    for mask in 0u64..(1u64 << m) {
        let chosen: Vec<(usize, usize)> = (0..m).filter(|&i| (mask >> i) & 1 == 1).map(|i| pairs[i]).collect();
        let rest = (m - chosen.len()) as u32;
        let term = &permutation_moment(&chosen, mode) * &minus_inv_d.pow(rest);
        total = &total + &term;
    }
    total
}

/// `E[∏ D ∏ D̄]` for a diagonal matrix of independent uniform phases.
pub(crate) fn diagonal_unitary_moment(unconj: &[(usize, usize)], conj: &[(usize, usize)]) -> RationalFunction {
    if unconj.iter().chain(conj).any(|(r, c)| r != c) {
        return RationalFunction::zero();
    }
    let mut a: Vec<usize> = unconj.iter().map(|x| x.0).collect();
    let mut b: Vec<usize> = conj.iter().map(|x| x.0).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a == b {
        RationalFunction::one()
    } else {
        RationalFunction::zero()
    }
}

