use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::DimPoly;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Exact rational function `numerator / denominator` in the dimension symbol.
///
/// Always canonical: numerator and denominator are coprime and the
/// denominator is monic (a zero value is stored as `0 / 1`). Structural
/// equality therefore coincides with equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: DimPoly,
    den: DimPoly,
}

impl RationalFunction {
    /// Canonicalize `n / d`.
    pub fn normalize(n: DimPoly, d: DimPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(Self::normalize_nonzero(n, d))
    }

    pub(crate) fn normalize_nonzero(n: DimPoly, d: DimPoly) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        let (n, d) = if g.is_one() { (n, d) } else { (n.exact_div(&g), d.exact_div(&g)) };
        let lead_inv = d.lead().inv().expect("nonzero denominator");
        RationalFunction { num: n.scale(&lead_inv), den: d.scale(&lead_inv) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: DimPoly::zero(), den: DimPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(DimPoly::one())
    }

    pub fn from_poly(p: DimPoly) -> Self {
        RationalFunction { num: p, den: DimPoly::one() }
    }

    pub fn from_scalar(c: ExactScalar) -> Self {
        Self::from_poly(DimPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(ExactScalar::from_int(n))
    }

    /// The rational function `d`.
    pub fn var() -> Self {
        Self::from_poly(DimPoly::var())
    }

    pub fn numerator(&self) -> &DimPoly {
        &self.num
    }

    pub fn denominator(&self) -> &DimPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, when the function does not depend on `d`.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    /// Exact value at `d = n`; fails if `n` is a genuine pole.
    pub fn eval(&self, n: i64) -> Result<ExactScalar> {
        let den = self.den.eval_int(n);
        if den.is_zero() {
            return Err(Error::Pole { at: n });
        }
        Ok(&self.num.eval_int(n) / &den)
    }

    pub fn eval_scalar(&self, x: &ExactScalar) -> Option<ExactScalar> {
        let den = self.den.eval(x);
        if den.is_zero() {
            None
        } else {
            Some(&self.num.eval(x) / &den)
        }
    }

    /// `r(d) ↦ r(-d)`.
    pub fn negate_var(&self) -> Self {
        Self::normalize_nonzero(self.num.negate_var(), self.den.negate_var())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &DimPoly) -> Self {
        Self::normalize_nonzero(&self.num * p, self.den.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_nonzero(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn conj(&self) -> Self {
        RationalFunction { num: self.num.conj(), den: self.den.conj() }
    }

    /// Numerator and denominator scaled by a common factor so every
    /// coefficient is an integer and the integer content is one.
    pub fn integer_form(&self) -> (DimPoly, DimPoly) {
        let l: BigInt = self.num.denom_lcm().lcm(&self.den.denom_lcm());
        let n = self.num.scale(&ExactScalar::from_int(l.clone()));
        let d = self.den.scale(&ExactScalar::from_int(l));
        let g = n.integer_content().gcd(&d.integer_content());
        if g.is_zero() || g.is_one() {
            return (n, d);
        }
        let s = ExactScalar::real(BigRational::new(BigInt::one(), g));
        (n.scale(&s), d.scale(&s))
    }

    /// Canonical text form `num // den` in the variable `var`, with integer
    /// coefficients on both sides (`2 // d^2 + d`). Polynomials print
    /// without the separator.
    pub fn render(&self, var: &str) -> String {
        let (n, d) = self.integer_form();
        if d.is_one() {
            return n.render(var);
        }
        let mut s = n.render(var);
        s.push_str(" // ");
        s.push_str(&d.render(var));
        s
    }

    /// Infix form `num/den`, parenthesizing multi-term sides.
    pub fn render_infix(&self, var: &str) -> String {
        let (n, d) = self.integer_form();
        let ns = n.render(var);
        if d.is_one() {
            return ns;
        }
        let single = |p: &DimPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        let ns = if single(&n) { ns } else { alloc::format!("({})", ns) };
        let ds = d.render(var);
        let ds = if single(&d) && !ds.contains('*') { ds } else { alloc::format!("({})", ds) };
        alloc::format!("{}/{}", ns, ds)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<DimPoly> for RationalFunction {
    fn from(p: DimPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<ExactScalar> for RationalFunction {
    fn from(c: ExactScalar) -> Self {
        Self::from_scalar(c)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalize_nonzero(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g);
        let b = rhs.den.exact_div(&g);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::normalize_nonzero(num, &a * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel first to keep the products small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lead_inv = d.lead().inv().unwrap();
        RationalFunction { num: n.scale(&lead_inv), den: d.scale(&lead_inv) }
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("d"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.render_infix("d"))
    }
}

/// Parses the canonical `num // den` text form (integer coefficients,
/// variable `d`). Used to round-trip CLI output in tests and tools.
impl core::str::FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = match s.split_once("//") {
            Some((n, d)) => (parse_poly(n)?, parse_poly(d)?),
            None => (parse_poly(s)?, DimPoly::one()),
        };
        Self::normalize(n, d)
    }
}

fn parse_poly(s: &str) -> Result<DimPoly> {
    let bad = || Error::InvalidInput(alloc::format!("cannot parse polynomial `{}`", s.trim()));
    let mut terms: alloc::vec::Vec<(bool, String)> = alloc::vec::Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with('^') && !cur.ends_with('*') => {
                terms.push((neg, core::mem::take(&mut cur)));
                neg = ch == '-';
            }
            '-' if depth == 0 && cur.is_empty() => neg = !neg,
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    terms.push((neg, cur));
    let mut out = DimPoly::zero();
    for (neg, t) in terms {
        let (coeff, power) = if let Some(pos) = t.find('d') {
            let c = t[..pos].trim_end_matches('*');
            let c = c.trim_start_matches('(').trim_end_matches(')');
            let coeff: ExactScalar = if c.is_empty() { ExactScalar::one() } else { c.parse().map_err(|_| bad())? };
            let rest = &t[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
            };
            (coeff, power)
        } else {
            let c = t.trim_start_matches('(').trim_end_matches(')');
            (c.parse().map_err(|_| bad())?, 0)
        };
        let coeff = if neg { -coeff } else { coeff };
        out = &out + &DimPoly::monomial(coeff, power);
    }
    Ok(out)
}
