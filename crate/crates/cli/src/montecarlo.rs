//! Haar sampling for statistical cross-checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// A Haar-random unitary: QR of a complex Ginibre matrix, with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Sample mean of `f(U)` over `samples` Haar unitaries.
pub fn mean<R, F>(n: usize, samples: usize, rng: &mut R, f: F) -> Complex64
where
    R: Rng + ?Sized,
    F: Fn(&DMatrix<Complex64>) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..samples {
        acc += f(&haar_unitary(n, rng));
    }
    acc / samples as f64
}

/// Sampled `E exp(tr(A U B U†))` for diagonal `A`, `B`.
pub fn hciz_estimate<R: Rng + ?Sized>(a: &[f64], b: &[f64], samples: usize, rng: &mut R) -> f64 {
    let n = a.len();
    mean(n, samples, rng, |u| {
        // tr(A U B U†) = Σ_{ij} a_i b_j |U_ij|²
        let mut t = 0.0;
        for i in 0..n {
            for j in 0..n {
                t += a[i] * b[j] * u[(i, j)].norm_sqr();
            }
        }
        Complex64::new(t.exp(), 0.0)
    })
    .re
}
