use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::ExactScalar;

/// Univariate polynomial in the dimension symbol `d`.
///
/// `coeffs[k]` is the coefficient of `d^k`; trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimPoly {
    coeffs: Vec<ExactScalar>,
}

impl DimPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DimPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        DimPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `d`.
    pub fn var() -> Self {
        Self::monomial(ExactScalar::one(), 1)
    }

    pub fn monomial(c: ExactScalar, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); power + 1];
        coeffs[power] = c;
        DimPoly { coeffs }
    }

    /// `d + c` for an integer shift `c`.
    pub fn linear(shift: i64) -> Self {
        Self::new(vec![ExactScalar::from_int(shift), ExactScalar::one()])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> ExactScalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_real)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DimPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `d^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        DimPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> ExactScalar {
        self.eval(&ExactScalar::from_int(n))
    }

    /// `p(d) ↦ p(-d)`.
    pub fn negate_var(&self) -> Self {
        DimPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        DimPoly::new(self.coeffs.iter().map(ExactScalar::conj).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    /// Euclidean division over the Gaussian-rational field.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = divisor.lead().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactScalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        (DimPoly::new(quot), DimPoly::new(rem))
    }

    /// Division that is known to leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()))
    }

    /// Gcd of the integer parts of all coefficients; only meaningful when
    /// every coefficient is a Gaussian integer.
    pub(crate) fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c.re.numer());
            g = g.gcd(c.im.numer());
        }
        g
    }

    /// Scale so every coefficient is a Gaussian integer.
    fn to_gaussian_integer(&self) -> Self {
        let l = self.denom_lcm();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&ExactScalar::from_int(l))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    ///
    /// Uses the subresultant polynomial remainder sequence on Gaussian-integer
    /// images of the inputs, so intermediate coefficients stay bounded by the
    /// subresultant determinants instead of growing exponentially.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let (mut a, mut b) = (self.to_gaussian_integer(), other.to_gaussian_integer());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        // Strip integer content before starting; it never divides the gcd's monic form.
        a = strip_content(&a);
        b = strip_content(&b);
        let mut g = ExactScalar::one();
        let mut h = ExactScalar::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = pseudo_rem(&a, &b);
            if r.is_zero() {
                return b.monic();
            }
            if r.is_constant() {
                return Self::one();
            }
            let denom = &g * &h.pow(delta as u32);
            a = b;
            b = r.scale(&denom.inv().unwrap());
            g = a.lead();
            // h <- g^delta / h^(delta-1)
            h = if delta == 0 {
                h
            } else {
                &g.pow(delta as u32) / &h.pow(delta as u32 - 1)
            };
        }
    }

    /// Render with integer coefficients in the variable `var`,
    /// e.g. `2*d^3 - d + 1`. Coefficients are printed as-is; callers
    /// clear denominators first when they need integer output.
    pub fn render(&self, var: &str) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() && c.re.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let complex = !mag.is_real() && !mag.re.is_zero();
            if k == 0 {
                if complex {
                    let _ = write!(out, "({})", mag);
                } else {
                    let _ = write!(out, "{}", mag);
                }
                continue;
            }
            if !mag.is_one() {
                if complex || (!mag.re.is_integer()) {
                    let _ = write!(out, "({})*", mag);
                } else {
                    let _ = write!(out, "{}*", mag);
                }
            }
            out.push_str(var);
            if k > 1 {
                let _ = write!(out, "^{}", k);
            }
        }
        out
    }
}

fn strip_content(p: &DimPoly) -> DimPoly {
    let g = p.integer_content();
    if g.is_zero() || g.is_one() {
        return p.clone();
    }
    p.scale(&ExactScalar::real(BigRational::new(BigInt::one(), g)))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`, computed without division.
fn pseudo_rem(a: &DimPoly, b: &DimPoly) -> DimPoly {
    let db = b.degree().unwrap();
    let lb = b.lead();
    let mut r = a.coeffs.clone();
    let mut deg = a.degree().unwrap();
    let mut steps = deg - db + 1;
    while !r.is_empty() && deg >= db {
        let c = r[deg].clone();
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (j, bc) in b.coeffs.iter().enumerate() {
            let t = &c * bc;
            r[deg - db + j] -= &t;
        }
        steps -= 1;
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
        deg = r.len() - 1;
    }
    let mut out = DimPoly::new(r);
    if steps > 0 {
        out = out.scale(&lb.pow(steps as u32));
    }
    out
}

impl<'a> Add<&'a DimPoly> for &'a DimPoly {
    type Output = DimPoly;
    fn add(self, rhs: &DimPoly) -> DimPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        DimPoly::new(out)
    }
}

impl<'a> Sub<&'a DimPoly> for &'a DimPoly {
    type Output = DimPoly;
    fn sub(self, rhs: &DimPoly) -> DimPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a DimPoly> for &'a DimPoly {
    type Output = DimPoly;
    fn mul(self, rhs: &DimPoly) -> DimPoly {
        if self.is_zero() || rhs.is_zero() {
            return DimPoly::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                out[i + j] += &t;
            }
        }
        DimPoly::new(out)
    }
}

impl Neg for &DimPoly {
    type Output = DimPoly;
    fn neg(self) -> DimPoly {
        DimPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for DimPoly {
    type Output = DimPoly;
    fn neg(self) -> DimPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<DimPoly> for DimPoly {
            type Output = DimPoly;
            fn $m(self, rhs: DimPoly) -> DimPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a DimPoly> for DimPoly {
            type Output = DimPoly;
            fn $m(self, rhs: &DimPoly) -> DimPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for DimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("d"))
    }
}

impl fmt::Debug for DimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DimPoly({})", self)
    }
}
