//! Weingarten functions of the unitary, orthogonal and symplectic groups.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{bareiss_solve, bareiss_solve_scalar, DimPoly, ExactScalar, RationalFunction};
use crate::cache::Memo;
use crate::combinatorics::{
    factorial, irrep_dimension, loop_lengths, loop_type_representative, mn_character, partitions_of, partner_arrays,
    schur_at_ones, PairPartition, Partition,
};
use crate::error::{Error, Result};

/// Whether the dimension is the formal symbol `d` or a fixed integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DimMode {
    Symbolic,
    Concrete(i64),
}

impl DimMode {
    /// `d^e` in this mode, as a polynomial (constant when concrete).
    pub fn power(self, e: usize) -> DimPoly {
        match self {
            DimMode::Symbolic => DimPoly::monomial(ExactScalar::one(), e),
            DimMode::Concrete(n) => DimPoly::constant(ExactScalar::from_int(n).pow(e as u32)),
        }
    }

    /// Reduce a polynomial in `d` to this mode.
    pub fn reduce(self, p: &DimPoly) -> DimPoly {
        match self {
            DimMode::Symbolic => p.clone(),
            DimMode::Concrete(n) => DimPoly::constant(p.eval_int(n)),
        }
    }

    pub fn reduce_rf(self, r: &RationalFunction) -> Result<RationalFunction> {
        match self {
            DimMode::Symbolic => Ok(r.clone()),
            DimMode::Concrete(n) => Ok(RationalFunction::from_scalar(r.eval(n)?)),
        }
    }

    pub fn concrete(self) -> Option<i64> {
        match self {
            DimMode::Symbolic => None,
            DimMode::Concrete(n) => Some(n),
        }
    }
}

/// The three Weingarten families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Unitary,
    Orthogonal,
    Symplectic,
}

static UNITARY: Memo<(Partition, DimMode), RationalFunction> = Memo::new();
static ORTHOGONAL: Memo<(usize, DimMode), Arc<BTreeMap<Partition, RationalFunction>>> = Memo::new();

pub(crate) fn clear_caches() {
    UNITARY.clear();
    ORTHOGONAL.clear();
}

/// `Wg^U(μ, d)` by the character formula
/// `(1/k!²) Σ_λ (f^λ)² χ_λ(μ) / s_λ(1^d)`.
pub fn wg_unitary(mu: &Partition) -> RationalFunction {
    UNITARY.get_or_insert_with((mu.clone(), DimMode::Symbolic), || unitary_sum(mu, None))
}

/// `Wg^U(μ, n)` at a concrete dimension.
///
/// The sum is restricted to `ℓ(λ) ≤ n`, which is exact for every `n ≥ 1`
/// (below the stable range this is the pseudo-inverse of the Gram matrix,
/// the one that reproduces Haar integrals).
pub fn wg_unitary_at(mu: &Partition, n: i64) -> Result<ExactScalar> {
    if n < 1 {
        return Err(Error::InvalidDimension(alloc::format!("unitary dimension must be positive, got {}", n)));
    }
    let r = UNITARY.get_or_insert_with((mu.clone(), DimMode::Concrete(n)), || {
        RationalFunction::from_scalar(unitary_sum(mu, Some(n)).eval(n).expect("restricted sum has no pole"))
    });
    Ok(r.as_constant().unwrap_or_default())
}

pub fn wg_unitary_mode(mu: &Partition, mode: DimMode) -> Result<RationalFunction> {
    match mode {
        DimMode::Symbolic => Ok(wg_unitary(mu)),
        DimMode::Concrete(n) => Ok(RationalFunction::from_scalar(wg_unitary_at(mu, n)?)),
    }
}

fn unitary_sum(mu: &Partition, max_rows: Option<i64>) -> RationalFunction {
    let k = mu.size();
    let mut acc = RationalFunction::zero();
    for lambda in partitions_of(k) {
        if let Some(n) = max_rows {
            if lambda.len() as i64 > n {
                continue;
            }
        }
        let chi = mn_character(&lambda, mu).expect("sizes match");
        if chi == 0 {
            continue;
        }
        let f = irrep_dimension(&lambda);
        let c = ExactScalar::from_int(f.clone() * f * BigInt::from(chi));
        let term = RationalFunction::normalize_nonzero(DimPoly::constant(c), schur_at_ones(&lambda));
        acc = &acc + &term;
    }
    let kf = factorial(k);
    acc.scale(&ExactScalar::ratio(BigInt::one(), kf.clone() * kf))
}

/// Orthogonal Weingarten values for degree `2k`, keyed by loop type.
///
/// Fix `q0 = {(1,2),(3,4),..}` and one representative `p_ν` per loop type.
/// Since `Wg^O(p, q)` depends only on the loop type of `(p, q)`, the row of
/// `G · Wg = I` at `(p_ν, q0)` reads
/// `Σ_ρ (Σ_{r: type(r,q0)=ρ} d^{loops(p_ν, r)}) · w_ρ = [ν = 1^k]`,
/// a `p(k) × p(k)` system solved by fraction-free elimination.
pub fn orthogonal_table(k: usize, mode: DimMode) -> Result<Arc<BTreeMap<Partition, RationalFunction>>> {
    if mode == DimMode::Concrete(0) {
        return Err(Error::InvalidDimension("dimension must be nonzero".into()));
    }
    ORTHOGONAL.get_or_try_insert_with((k, mode), || orthogonal_system(k, mode).map(Arc::new))
}

fn orthogonal_system(k: usize, mode: DimMode) -> Result<BTreeMap<Partition, RationalFunction>> {
    let types = partitions_of(k);
    let index: BTreeMap<&Partition, usize> = types.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let q0 = PairPartition::standard(k).partner();
    let all = partner_arrays(2 * k);
    let type_of: Vec<usize> = all.iter().map(|r| index[&Partition::new(loop_lengths(r, &q0))]).collect();
    let n = types.len();
    let identity_type = index[&Partition::ones(k)];
    let mut counts = alloc::vec![alloc::vec![alloc::vec![0u64; k + 1]; n]; n];
    for (row, nu) in types.iter().enumerate() {
        let p = loop_type_representative(nu).partner();
        for (r, &t) in all.iter().zip(&type_of) {
            counts[row][t][loop_lengths(&p, r).len()] += 1;
        }
    }
    let solution: Vec<RationalFunction> = match mode {
        DimMode::Symbolic => {
            let a: Vec<Vec<DimPoly>> = counts
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| DimPoly::new(c.iter().map(|&x| ExactScalar::from_int(x)).collect()))
                        .collect()
                })
                .collect();
            let b: Vec<DimPoly> =
                (0..n).map(|i| if i == identity_type { DimPoly::one() } else { DimPoly::zero() }).collect();
            bareiss_solve(&a, &b)?
        }
        DimMode::Concrete(d) => {
            let dv = ExactScalar::from_int(d);
            let a: Vec<Vec<ExactScalar>> = counts
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            c.iter().enumerate().rev().fold(ExactScalar::zero(), |acc, (_, &x)| {
                                &(&acc * &dv) + &ExactScalar::from_int(x)
                            })
                        })
                        .collect()
                })
                .collect();
            let b: Vec<ExactScalar> =
                (0..n).map(|i| if i == identity_type { ExactScalar::one() } else { ExactScalar::zero() }).collect();
            bareiss_solve_scalar(&a, &b)
                .map_err(|_| Error::SingularDimension { d })?
                .into_iter()
                .map(RationalFunction::from_scalar)
                .collect()
        }
    };
    Ok(types.into_iter().zip(solution).collect())
}

/// `Wg^O(p, q, d)`.
pub fn wg_orthogonal(p: &PairPartition, q: &PairPartition, mode: DimMode) -> Result<RationalFunction> {
    if let DimMode::Concrete(n) = mode {
        if n < 1 {
            return Err(Error::InvalidDimension(alloc::format!("orthogonal dimension must be positive, got {}", n)));
        }
    }
    let t = crate::combinatorics::loop_type(p, q)?;
    Ok(orthogonal_table(p.len(), mode)?[&t].clone())
}

/// `Wg^Sp(p, q, d) = (-1)^{loops(p,q)} Wg^O(p, q, -d)`.
pub fn wg_symplectic(p: &PairPartition, q: &PairPartition, mode: DimMode) -> Result<RationalFunction> {
    let t = crate::combinatorics::loop_type(p, q)?;
    Ok(symplectic_table(p.len(), mode)?[&t].clone())
}

/// Symplectic values keyed by loop type, from the orthogonal table at `-d`.
pub fn symplectic_table(k: usize, mode: DimMode) -> Result<BTreeMap<Partition, RationalFunction>> {
    let dual = match mode {
        DimMode::Symbolic => DimMode::Symbolic,
        DimMode::Concrete(n) if n >= 2 && n % 2 == 0 => DimMode::Concrete(-n),
        DimMode::Concrete(n) => {
            return Err(Error::InvalidDimension(alloc::format!(
                "symplectic dimension must be even and positive, got {}",
                n
            )))
        }
    };
    let table = orthogonal_table(k, dual).map_err(|e| match (e, mode) {
        (Error::SingularDimension { .. }, DimMode::Concrete(n)) => Error::SingularDimension { d: n },
        (e, _) => e,
    })?;
    Ok(table
        .iter()
        .map(|(t, w)| {
            let w = if mode == DimMode::Symbolic { w.negate_var() } else { w.clone() };
            let w = if t.len() % 2 == 1 { -w } else { w };
            (t.clone(), w)
        })
        .collect())
}

/// Unitary values for every cycle type of `S_k`, in partition order.
pub fn unitary_table(k: usize, mode: DimMode) -> Result<Vec<(Partition, RationalFunction)>> {
    partitions_of(k).into_iter().map(|mu| wg_unitary_mode(&mu, mode).map(|w| (mu, w))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_permutations, pair_partitions};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::normalize(DimPoly::from_ints(n), DimPoly::from_ints(d)).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::from_sorted(p.to_vec()).unwrap()
    }

    #[test]
    fn unitary_small_degrees() {
        assert_eq!(wg_unitary(&part(&[1])), rf(&[1], &[0, 1]));
        assert_eq!(wg_unitary(&part(&[1, 1])), rf(&[1], &[-1, 0, 1]));
        assert_eq!(wg_unitary(&part(&[2])), rf(&[-1], &[0, -1, 0, 1]));
    }

    #[test]
    fn unitary_concrete_matches_symbolic_in_stable_range() {
        for mu in partitions_of(3) {
            assert_eq!(wg_unitary_at(&mu, 5).unwrap(), wg_unitary(&mu).eval(5).unwrap());
        }
        // |tr U|^4 at d = 1 is 1: Σ_{σ,τ ∈ S_2} Wg(στ⁻¹) = 2·Wg([1,1]) + 2·Wg([2]).
        let s = &wg_unitary_at(&part(&[1, 1]), 1).unwrap() + &wg_unitary_at(&part(&[2]), 1).unwrap();
        assert_eq!(&s * &ExactScalar::from_int(2), ExactScalar::one());
    }

    #[test]
    fn orthogonal_degree_four() {
        let p = PairPartition::standard(2);
        let q = PairPartition::new(alloc::vec![(1, 3), (2, 4)]).unwrap();
        assert_eq!(wg_orthogonal(&p, &p, DimMode::Symbolic).unwrap(), rf(&[1, 1], &[0, -2, 1, 1]));
        assert_eq!(wg_orthogonal(&p, &q, DimMode::Symbolic).unwrap(), rf(&[-1], &[0, -2, 1, 1]));
        let at3 = RationalFunction::from_scalar(rf(&[1, 1], &[0, -2, 1, 1]).eval(3).unwrap());
        assert_eq!(wg_orthogonal(&p, &p, DimMode::Concrete(3)).unwrap(), at3);
    }

    #[test]
    fn symplectic_small_degrees() {
        let p1 = PairPartition::standard(1);
        assert_eq!(wg_symplectic(&p1, &p1, DimMode::Symbolic).unwrap(), rf(&[1], &[0, 1]));
        let p = PairPartition::standard(2);
        assert_eq!(wg_symplectic(&p, &p, DimMode::Symbolic).unwrap(), rf(&[-1, 1], &[0, -2, -1, 1]));
        assert!(matches!(wg_symplectic(&p, &p, DimMode::Concrete(3)), Err(Error::InvalidDimension(_))));
        assert_eq!(wg_symplectic(&p, &p, DimMode::Concrete(2)), Err(Error::SingularDimension { d: 2 }));
    }

    #[test]
    fn class_function() {
        let perms = all_permutations(4);
        for s in &perms {
            for g in &perms {
                let conj = g.compose(s).compose(&g.inverse());
                assert_eq!(wg_unitary(&s.cycle_type()), wg_unitary(&conj.cycle_type()));
            }
        }
    }

    #[test]
    fn orthogonal_values_depend_on_loop_type_only() {
        let all = pair_partitions(6).unwrap();
        for p in &all {
            for q in &all {
                let a = wg_orthogonal(p, q, DimMode::Symbolic).unwrap();
                let t = crate::combinatorics::loop_type(p, q).unwrap();
                let rep = loop_type_representative(&t);
                assert_eq!(a, wg_orthogonal(&rep, &PairPartition::standard(3), DimMode::Symbolic).unwrap());
            }
        }
    }

    #[test]
    fn cache_coherent_after_clear() {
        let before = wg_unitary(&part(&[2, 1, 1]));
        let o_before = orthogonal_table(3, DimMode::Symbolic).unwrap();
        crate::cache::clear_caches();
        assert_eq!(wg_unitary(&part(&[2, 1, 1])), before);
        assert_eq!(orthogonal_table(3, DimMode::Symbolic).unwrap(), o_before);
    }
}
