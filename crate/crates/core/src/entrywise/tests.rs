use super::*;
use crate::algebra::DimPoly;

fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
    RationalFunction::normalize(DimPoly::from_ints(n), DimPoly::from_ints(d)).unwrap()
}

fn mono(fs: &[(usize, usize, bool)]) -> Monomial {
    Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c, b)| MonomialFactor::new("U", r, c, b)).collect())
}

fn abs_pow(r: usize, c: usize, m: usize) -> Monomial {
    let mut fs = alloc::vec![(r, c, false); m];
    fs.extend(alloc::vec![(r, c, true); m]);
    mono(&fs)
}

const S: DimMode = DimMode::Symbolic;

#[test]
fn unitary_goldens() {
    assert_eq!(integrate_unitary(&abs_pow(1, 1, 1), S).unwrap(), rf(&[1], &[0, 1]));
    let mixed = mono(&[(1, 1, false), (1, 2, true), (2, 2, false), (2, 1, true)]);
    assert_eq!(integrate_unitary(&mixed, S).unwrap(), rf(&[-1], &[0, -1, 0, 1]));
    assert_eq!(integrate_unitary(&abs_pow(1, 1, 2), S).unwrap(), rf(&[2], &[0, 1, 1]));
    assert!(integrate_unitary(&mono(&[(1, 1, false)]), S).unwrap().is_zero());
}

#[test]
fn diagonal_fast_path_matches_general_engine() {
    // |U_11|^6 via the fast path versus |U_11|^4 |U_12|^2 style general sums.
    let fast = integrate_unitary(&abs_pow(1, 1, 3), S).unwrap();
    // Known value 6/(d(d+1)(d+2)).
    assert_eq!(fast, rf(&[6], &[0, 2, 3, 1]));
    let general = integrate_unitary(&mono(&[(1, 1, false), (1, 1, false), (1, 1, true), (1, 1, true)]), S).unwrap();
    assert_eq!(general, rf(&[2], &[0, 1, 1]));
}

#[test]
fn row_normalization() {
    for n in 2..=5i64 {
        let mut total = ExactScalar::zero();
        for j in 1..=n as usize {
            let r = integrate_unitary(&abs_pow(1, j, 1), DimMode::Concrete(n)).unwrap();
            total += &r.as_constant().unwrap();
        }
        assert_eq!(total, ExactScalar::one());
    }
}

#[test]
fn su_and_design_rules() {
    assert_eq!(integrate_su(&abs_pow(1, 1, 1), S).unwrap(), rf(&[1], &[0, 1]));
    assert!(integrate_su(&mono(&[(1, 1, false), (2, 2, false)]), S).unwrap().is_zero());
    assert_eq!(integrate_design(&abs_pow(1, 1, 1), S, 2).unwrap(), rf(&[1], &[0, 1]));
    assert_eq!(
        integrate_design(&abs_pow(1, 1, 3), S, 2),
        Err(Error::BeyondDesignOrder { degree: 3, order: 2 })
    );
    assert!(integrate_design(&mono(&[(1, 1, false)]), S, 1).unwrap().is_zero());
}

fn o_mono(fs: &[(usize, usize)]) -> Monomial {
    Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c)| MonomialFactor::new("O", r, c, false)).collect())
}

#[test]
fn orthogonal_goldens() {
    assert_eq!(integrate_orthogonal(&o_mono(&[(1, 1); 2]), S).unwrap(), rf(&[1], &[0, 1]));
    assert_eq!(integrate_orthogonal(&o_mono(&[(1, 1); 4]), S).unwrap(), rf(&[3], &[0, 2, 1]));
    assert!(integrate_orthogonal(&o_mono(&[(1, 1); 3]), S).unwrap().is_zero());
    // O_11^2 O_12^2 = 1/(d(d+2)) (general engine path).
    let m = o_mono(&[(1, 1), (1, 1), (1, 2), (1, 2)]);
    assert_eq!(integrate_orthogonal(&m, S).unwrap(), rf(&[1], &[0, 2, 1]));
}

fn sp_mono(fs: &[(usize, usize, bool)]) -> Monomial {
    Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c, b)| MonomialFactor::new("Sp", r, c, b)).collect())
}

#[test]
fn symplectic_goldens() {
    assert_eq!(integrate_symplectic(&sp_mono(&[(1, 1, false), (1, 1, true)]), S).unwrap(), rf(&[1], &[0, 1]));
    let m = sp_mono(&[(1, 1, false), (1, 1, true), (1, 2, false), (1, 2, true)]);
    assert_eq!(integrate_symplectic(&m, S).unwrap(), rf(&[1], &[0, 1, 1]));
    assert!(integrate_symplectic(&sp_mono(&[(1, 1, false)]), S).unwrap().is_zero());
    assert!(matches!(integrate_symplectic(&sp_mono(&[(1, 1, false)]), DimMode::Concrete(3)), Err(Error::InvalidDimension(_))));
}

fn s_mono(fs: &[(usize, usize, bool)]) -> Monomial {
    Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c, b)| MonomialFactor::new("S", r, c, b)).collect())
}

#[test]
fn circular_goldens() {
    let m = s_mono(&[(1, 1, false), (1, 1, true)]);
    assert_eq!(integrate_coe(&m, S).unwrap(), rf(&[2], &[1, 1]));
    assert_eq!(integrate_cse(&m, S).unwrap(), rf(&[1], &[-1, 1]));
    assert!(integrate_coe(&s_mono(&[(1, 1, false)]), S).unwrap().is_zero());
    // Concrete values agree with the symbolic ones.
    assert_eq!(integrate_coe(&m, DimMode::Concrete(4)).unwrap(), RationalFunction::from_scalar(ExactScalar::ratio(2, 5)));
    assert_eq!(integrate_cse(&m, DimMode::Concrete(4)).unwrap(), RationalFunction::from_scalar(ExactScalar::ratio(1, 3)));
}

fn p_mono(sym: &str, fs: &[(usize, usize)]) -> Monomial {
    Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c)| MonomialFactor::new(sym, r, c, false)).collect())
}

#[test]
fn discrete_goldens() {
    assert_eq!(integrate_permutation(&p_mono("P", &[(1, 1), (2, 2)]), S).unwrap(), rf(&[1], &[0, -1, 1]));
    assert_eq!(integrate_permutation(&p_mono("P", &[(1, 1); 3]), S).unwrap(), rf(&[1], &[0, 1]));
    assert!(integrate_permutation(&p_mono("P", &[(1, 1), (1, 2)]), S).unwrap().is_zero());
    assert_eq!(integrate_centered_permutation(&p_mono("Y", &[(1, 1); 2]), S).unwrap(), rf(&[-1, 1], &[0, 0, 1]));
    assert!(integrate_centered_permutation(&p_mono("Y", &[(1, 1)]), S).unwrap().is_zero());
    // E[(P_11 - 1/10)^4] with E[P_11^m] = 1/10: Σ_j C(4,j) (1/10) (-1/10)^{4-j} for j ≥ 1 plus (1/10)^4.
    let y4 = integrate_centered_permutation(&p_mono("Y", &[(1, 1); 4]), DimMode::Concrete(10)).unwrap();
    let p = ExactScalar::ratio(1, 10);
    let q = ExactScalar::ratio(-1, 10);
    let binom = [1, 4, 6, 4, 1];
    let mut expect = q.pow(4);
    for j in 1..=4 {
        expect += &(&(&ExactScalar::from_int(binom[j]) * &p) * &q.pow(4 - j as u32));
    }
    assert_eq!(y4.as_constant().unwrap(), expect);
    let d = |fs: &[(usize, usize, bool)]| {
        Monomial::new(ExactScalar::one(), fs.iter().map(|&(r, c, b)| MonomialFactor::new("D", r, c, b)).collect())
    };
    assert_eq!(integrate_diag_unitary(&d(&[(1, 1, false), (1, 1, true)])).unwrap(), RationalFunction::one());
    assert!(integrate_diag_unitary(&d(&[(1, 1, false), (2, 2, true)])).unwrap().is_zero());
    assert!(integrate_diag_unitary(&d(&[(1, 2, false)])).unwrap().is_zero());
}

#[test]
fn stiefel_and_pure_state() {
    let v = Monomial::new(
        ExactScalar::one(),
        alloc::vec![MonomialFactor::new("V", 1, 1, false), MonomialFactor::new("V", 1, 1, true)],
    );
    assert_eq!(integrate_stiefel(&v, S, 2).unwrap(), rf(&[1], &[0, 1]));
    let bad = Monomial::new(ExactScalar::one(), alloc::vec![MonomialFactor::new("V", 1, 3, false)]);
    assert!(matches!(integrate_stiefel(&bad, S, 2), Err(Error::InvalidIndex(_))));
    assert!(integrate_stiefel(&v, DimMode::Concrete(1), 2).is_err());
    let psi = Monomial::new(
        ExactScalar::one(),
        alloc::vec![
            MonomialFactor::new("psi", 1, 1, false),
            MonomialFactor::new("psi", 1, 1, false),
            MonomialFactor::new("psi", 1, 1, true),
            MonomialFactor::new("psi", 1, 1, true)
        ],
    );
    assert_eq!(integrate_pure_state(&psi, S).unwrap(), rf(&[2], &[0, 1, 1]));
}

#[test]
fn wick_traces_with_summed_indices() {
    // tr H^k = Σ H_{a1 a2} H_{a2 a3} .. H_{ak a1}.
    let trace = |sym: &str, k: u32| {
        Monomial::new(
            ExactScalar::one(),
            (0..k)
                .map(|i| MonomialFactor {
                    symbol: sym.into(),
                    row: Index::Sum(i),
                    col: Index::Sum((i + 1) % k),
                    conjugated: false,
                })
                .collect(),
        )
    };
    assert_eq!(integrate_gaussian(&trace("H", 2), S, WickRule::Gue), rf(&[0, 0, 1], &[1]));
    assert_eq!(integrate_gaussian(&trace("H", 4), S, WickRule::Gue), rf(&[0, 1, 0, 2], &[1]));
    assert_eq!(integrate_gaussian(&trace("H", 6), S, WickRule::Gue), rf(&[0, 0, 10, 0, 5], &[1]));
    assert_eq!(integrate_gaussian(&trace("H", 2), S, WickRule::Goe), rf(&[0, 1, 1], &[1]));
    assert!(integrate_gaussian(&trace("H", 3), S, WickRule::Gue).is_zero());
}

#[test]
fn degree_guard() {
    let spec = MeasureSpec::symbolic(Family::U);
    let r = integrate_monomial(&abs_pow(1, 1, 7), &spec, &Options::default());
    assert_eq!(r, Err(Error::DegreeTooLarge { degree: 14, limit: 12 }));
    let relaxed = Options { degree_limit: 14 };
    assert!(integrate_monomial(&abs_pow(1, 1, 7), &spec, &relaxed).is_ok());
}

#[test]
fn concrete_index_bounds() {
    let spec = MeasureSpec::concrete(Family::U, 2).unwrap();
    assert!(matches!(
        integrate_monomial(&abs_pow(3, 1, 1), &spec, &Options::default()),
        Err(Error::InvalidIndex(_))
    ));
}

/// Independent check of the symplectic weight: invert the Gram matrix of the
/// J-contractions by brute force at a concrete even dimension.
fn sp_gram_oracle(k: usize, d: usize) {
    use crate::algebra::bareiss_solve_scalar;
    use crate::combinatorics::{loop_lengths, partner_arrays, Partition};
    use crate::weingarten::symplectic_table;
    let n = d / 2;
    let j = |x: usize, y: usize| -> i64 {
        if x < n && y == x + n {
            1
        } else if x >= n && y + n == x {
            -1
        } else {
            0
        }
    };
    let ps = partner_arrays(2 * k);
    let delta = |p: &[usize], idx: &[usize]| -> i64 {
        (0..2 * k).filter(|&a| a < p[a]).map(|a| j(idx[a], idx[p[a]])).product()
    };
    let m = ps.len();
    let mut gram = alloc::vec![alloc::vec![0i64; m]; m];
    let mut idx = alloc::vec![0usize; 2 * k];
    loop {
        let ds: Vec<i64> = ps.iter().map(|p| delta(p, &idx)).collect();
        for a in 0..m {
            if ds[a] != 0 {
                for b in 0..m {
                    gram[a][b] += ds[a] * ds[b];
                }
            }
        }
        let mut pos = 0;
        while pos < 2 * k && idx[pos] == d - 1 {
            idx[pos] = 0;
            pos += 1;
        }
        if pos == 2 * k {
            break;
        }
        idx[pos] += 1;
    }
    let g: Vec<Vec<ExactScalar>> = gram.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect();
    let table = symplectic_table(k, DimMode::Concrete(d as i64)).unwrap();
    for col in 0..m {
        let e: Vec<ExactScalar> = (0..m).map(|r| if r == col { ExactScalar::one() } else { ExactScalar::zero() }).collect();
        let w = bareiss_solve_scalar(&g, &e).unwrap();
        for row in 0..m {
            let lens = loop_lengths(&ps[row], &ps[col]);
            let loops = lens.len();
            let sign = partner_sign(&ps[row]) * partner_sign(&ps[col]) * if (k + loops).is_multiple_of(2) { 1 } else { -1 };
            let expect = table[&Partition::new(lens)].as_constant().unwrap();
            let expect = if sign < 0 { -expect } else { expect };
            assert_eq!(w[row], expect, "k={} d={} p={:?} q={:?}", k, d, ps[row], ps[col]);
        }
    }
}

#[test]
fn symplectic_weight_inverts_gram_matrix() {
    sp_gram_oracle(1, 2);
    sp_gram_oracle(2, 4);
    sp_gram_oracle(3, 6);
}

#[test]
fn permutation_matches_exhaustive_average() {
    use crate::combinatorics::all_permutations;
    for d in 3..=5usize {
        let perms = all_permutations(d);
        let total = perms.len() as i64;
        let mut cases: Vec<Vec<(usize, usize)>> = Vec::new();
        // All degree ≤ 2 monomials plus a deterministic spread of degree 3 and 4 ones.
        let cells: Vec<(usize, usize)> = (1..=d).flat_map(|r| (1..=d).map(move |c| (r, c))).collect();
        for a in &cells {
            cases.push(alloc::vec![*a]);
            for b in &cells {
                cases.push(alloc::vec![*a, *b]);
            }
        }
        for (i, a) in cells.iter().enumerate() {
            let b = cells[(i * 7 + 3) % cells.len()];
            let c = cells[(i * 5 + 1) % cells.len()];
            let e = cells[(i * 11 + 2) % cells.len()];
            cases.push(alloc::vec![*a, b, c]);
            cases.push(alloc::vec![*a, b, c, e]);
            cases.push(alloc::vec![*a, *a, b, b]);
        }
        for case in cases {
            let hits = perms
                .iter()
                .filter(|p| case.iter().all(|&(r, c)| p.images()[r - 1] == c - 1))
                .count() as i64;
            let expect = ExactScalar::ratio(hits, total);
            let got = integrate_permutation(&p_mono("P", &case), DimMode::Concrete(d as i64)).unwrap();
            assert_eq!(got.as_constant().unwrap(), expect, "d={} {:?}", d, case);
            let sym = integrate_permutation(&p_mono("P", &case), S).unwrap();
            assert_eq!(sym.eval(d as i64).unwrap(), expect);
        }
    }
}
