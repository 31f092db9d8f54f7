//! Wick contractions for Gaussian and Ginibre ensembles.

use alloc::vec::Vec;

use super::pairs::compatible_matchings;
use super::slots::{add_into, count_constraints, vars_of, Slot};
use super::unitary::{hist_poly, range_poly};
use crate::algebra::{ExactScalar, RationalFunction};
use crate::weingarten::DimMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WickRule {
    /// `⟨H_ij H_kl⟩ = δ_il δ_jk`, Hermitian.
    Gue,
    /// `⟨H_ij H_kl⟩ = δ_ik δ_jl + δ_il δ_jk`, real symmetric.
    Goe,
    /// `⟨G_ij Ḡ_kl⟩ = δ_ik δ_jl`, other pairings vanish.
    GinUe,
    /// `⟨G_ij G_kl⟩ = δ_ik δ_jl`, real.
    GinOe,
}

/// One Gaussian factor: row slot, column slot, conjugation flag.
pub(crate) type WickFactor = (Slot, Slot, bool);

/// Sum over all admissible pairings of the factors.
pub(crate) fn evaluate_wick(
    coeff: &ExactScalar,
    factors: &[WickFactor],
    n_base: usize,
    rule: WickRule,
    mode: DimMode,
) -> RationalFunction {
    let n = factors.len();
    if n % 2 == 1 || coeff.is_zero() {
        return RationalFunction::zero();
    }
    // Hermitian: conj(H_ij) = H_ji.
    let fs: Vec<(Slot, Slot, bool)> = factors
        .iter()
        .map(|&(r, c, conj)| if rule == WickRule::Gue && conj { (c, r, false) } else { (r, c, conj) })
        .collect();
    let allowed = |a: usize, b: usize| match rule {
        WickRule::GinUe => fs[a].2 != fs[b].2,
        _ => true,
    };
    let (bases, _) = vars_of(fs.iter().flat_map(|f| [&f.0, &f.1]));
    let mut hist: Vec<i128> = Vec::new();
    for m in compatible_matchings(n, allowed) {
        let pairs: Vec<(usize, usize)> = (0..n).filter(|&a| a < m[a]).map(|a| (a, m[a])).collect();
        let choices = if rule == WickRule::Goe { 1u64 << pairs.len() } else { 1 };
        for mask in 0..choices {
            let mut cons = Vec::with_capacity(2 * pairs.len());
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let (fa, fb) = (&fs[a], &fs[b]);
                let crossed = match rule {
                    WickRule::Gue => true,
                    WickRule::Goe => (mask >> i) & 1 == 1,
                    WickRule::GinUe | WickRule::GinOe => false,
                };
                if crossed {
                    cons.push((fa.0, fb.1));
                    cons.push((fa.1, fb.0));
                } else {
                    cons.push((fa.0, fb.0));
                    cons.push((fa.1, fb.1));
                }
            }
            add_into(&mut hist, &count_constraints(&cons, n_base, &bases, &[], &[], 0));
        }
    }
    RationalFunction::from_poly(hist_poly(&hist, &range_poly(false, mode))).scale(coeff)
}
