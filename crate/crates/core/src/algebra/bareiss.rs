use alloc::vec::Vec;

use super::poly::DimPoly;
use super::ratfunc::RationalFunction;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// An integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self / other`, where the caller guarantees the quotient is exact.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactRing for DimPoly {
    fn zero() -> Self {
        DimPoly::zero()
    }
    fn is_zero(&self) -> bool {
        DimPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        self.exact_div(other)
    }
}

impl ExactRing for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Fraction-free elimination of `[A | b]`.
///
/// Returns `(D, y)` with `A · y = D · b`, where `D` is (up to sign) the
/// determinant of `A` and every `y_i` lies in the ring. All divisions are
/// exact divisions by earlier pivots.
pub fn bareiss_eliminate<R: ExactRing>(a: &[Vec<R>], b: &[R]) -> Result<(R, Vec<R>)> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("bareiss: system is not square".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("bareiss: empty system".into()));
    }
    let mut m: Vec<Vec<R>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut prev: Option<R> = None;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Err(Error::SingularSystem);
            };
            m.swap(k, p);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    Some(p) => t.div_exact(p),
                    None => t,
                };
            }
            m[i][k] = R::zero();
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    let mut y: Vec<R> = (0..n).map(|_| R::zero()).collect();
    for i in (0..n).rev() {
        let mut acc = det.mul(&m[i][n]);
        for j in i + 1..n {
            acc = acc.sub(&m[i][j].mul(&y[j]));
        }
        y[i] = acc.div_exact(&m[i][i]);
    }
    Ok((det, y))
}

/// Solve `A · x = b` exactly over rational functions of `d`.
pub fn bareiss_solve(a: &[Vec<DimPoly>], b: &[DimPoly]) -> Result<Vec<RationalFunction>> {
    let (det, y) = bareiss_eliminate(a, b)?;
    Ok(y.into_iter().map(|yi| RationalFunction::normalize_nonzero(yi, det.clone())).collect())
}

/// Solve `A · x = b` exactly over Gaussian rationals.
pub fn bareiss_solve_scalar(a: &[Vec<ExactScalar>], b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    let (det, y) = bareiss_eliminate(a, b)?;
    Ok(y.iter().map(|yi| yi / &det).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DimPoly {
        DimPoly::from_ints(c)
    }

    #[test]
    fn one_by_one() {
        let x = bareiss_solve(&[alloc::vec![DimPoly::var()]], &[DimPoly::one()]).unwrap();
        assert_eq!(x[0], RationalFunction::normalize(p(&[1]), p(&[0, 1])).unwrap());
    }

    #[test]
    fn unitary_degree_two_gram() {
        let a = alloc::vec![alloc::vec![p(&[0, 0, 1]), p(&[0, 1])], alloc::vec![p(&[0, 1]), p(&[0, 0, 1])]];
        let x = bareiss_solve(&a, &[DimPoly::one(), DimPoly::zero()]).unwrap();
        assert_eq!(x[0], RationalFunction::normalize(p(&[1]), p(&[-1, 0, 1])).unwrap());
        assert_eq!(x[1], RationalFunction::normalize(p(&[-1]), p(&[0, -1, 0, 1])).unwrap());
    }

    #[test]
    fn identity_returns_rhs() {
        let n = 3;
        let a: Vec<Vec<DimPoly>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { DimPoly::one() } else { DimPoly::zero() }).collect()).collect();
        let b = alloc::vec![p(&[1, 2]), p(&[0, 0, 3]), p(&[-5])];
        let x = bareiss_solve(&a, &b).unwrap();
        for (xi, bi) in x.iter().zip(&b) {
            assert_eq!(xi, &RationalFunction::from_poly(bi.clone()));
        }
    }

    #[test]
    fn needs_row_swap() {
        let a = alloc::vec![alloc::vec![DimPoly::zero(), DimPoly::one()], alloc::vec![DimPoly::one(), DimPoly::zero()]];
        let x = bareiss_solve(&a, &[p(&[7]), p(&[0, 1])]).unwrap();
        assert_eq!(x[0], RationalFunction::var());
        assert_eq!(x[1], RationalFunction::from_int(7));
    }

    #[test]
    fn singular_detected() {
        let a = alloc::vec![alloc::vec![p(&[0, 1]), p(&[0, 1])], alloc::vec![p(&[0, 2]), p(&[0, 2])]];
        assert_eq!(bareiss_solve(&a, &[DimPoly::one(), DimPoly::one()]), Err(Error::SingularSystem));
    }

    #[test]
    fn scalar_solve() {
        let a = alloc::vec![
            alloc::vec![ExactScalar::from_int(2), ExactScalar::from_int(1)],
            alloc::vec![ExactScalar::from_int(1), ExactScalar::from_int(3)]
        ];
        let x = bareiss_solve_scalar(&a, &[ExactScalar::one(), ExactScalar::zero()]).unwrap();
        assert_eq!(x, alloc::vec![ExactScalar::ratio(3, 5), ExactScalar::ratio(-1, 5)]);
    }
}
