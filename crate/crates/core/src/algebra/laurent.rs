use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ratfunc::RationalFunction;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Truncated expansion `Σ c_m · x^{-m}` of a rational function for large `x`.
///
/// Keys are inverse powers `m`; negative keys are positive powers of the
/// variable. Every stored key is `<= order` and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    order: i64,
    terms: BTreeMap<i64, ExactScalar>,
}

impl LaurentSeries {
    pub fn new(order: i64, terms: BTreeMap<i64, ExactScalar>) -> Self {
        let terms = terms.into_iter().filter(|(m, c)| *m <= order && !c.is_zero()).collect();
        LaurentSeries { order, terms }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i64, ExactScalar> {
        &self.terms
    }

    /// Coefficient of `x^{-m}`.
    pub fn coeff(&self, m: i64) -> ExactScalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drop everything beyond `x^{-order}`.
    pub fn truncate(&self, order: i64) -> Self {
        Self::new(order.min(self.order), self.terms.clone())
    }

    /// Leading (least) inverse power present.
    pub fn leading_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// The series as a rational function (exact, since it is finite).
    pub fn to_rational(&self) -> RationalFunction {
        use super::poly::DimPoly;
        let mut acc = RationalFunction::zero();
        for (&m, c) in &self.terms {
            let term = if m <= 0 {
                RationalFunction::from_poly(DimPoly::monomial(c.clone(), (-m) as usize))
            } else {
                RationalFunction::normalize_nonzero(DimPoly::constant(c.clone()), DimPoly::monomial(ExactScalar::one(), m as usize))
            };
            acc = &acc + &term;
        }
        acc
    }

    /// Human-readable form such as `2/d^2 - 2/d^3 + 2/d^4`.
    pub fn render(&self, var: &str) -> String {
        render_terms(self.terms.iter().map(|(m, c)| (*m, c.clone())), var, |_| None)
    }
}

/// Shared renderer for series-like sums `Σ c_m · var^{-m} · extra_m`.
fn render_terms<I, F>(terms: I, var: &str, mut extra: F) -> String
where
    I: Iterator<Item = (i64, ExactScalar)>,
    F: FnMut(i64) -> Option<String>,
{
    use core::fmt::Write;
    use num_traits::Signed;
    let mut out = String::new();
    for (m, c) in terms {
        let neg = c.is_real() && c.re.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag_s = if mag.is_real() { alloc::format!("{}", mag) } else { alloc::format!("({})", mag) };
        let body = match extra(m) {
            Some(e) if mag.is_one() => e,
            Some(e) => alloc::format!("{}*{}", mag_s, e),
            None => mag_s,
        };
        match m {
            0 => out.push_str(&body),
            m if m > 0 => {
                let _ = write!(out, "{}/{}", body, power(var, m));
            }
            m => {
                if mag.is_one() && body == "1" {
                    out.push_str(&power(var, -m));
                } else {
                    let _ = write!(out, "{}*{}", body, power(var, -m));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn power(var: &str, k: i64) -> String {
    if k == 1 {
        String::from(var)
    } else {
        alloc::format!("{}^{}", var, k)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("d"))
    }
}

/// Expand `r` in inverse powers of its variable, keeping terms through `x^{-order}`.
///
/// Substitutes `d = 1/x`, so `r = x^{deg D - deg N} · Ñ(x)/D̃(x)` with the
/// reversed coefficient lists, and divides the power series exactly.
pub fn laurent_expand(r: &RationalFunction, order: i64) -> Result<LaurentSeries> {
    if order < 0 {
        return Err(Error::InvalidInput("expansion order must be non-negative".into()));
    }
    let mut terms = BTreeMap::new();
    let (num, den) = (r.numerator(), r.denominator());
    let Some(nd) = num.degree() else {
        return Ok(LaurentSeries::new(order, terms));
    };
    let dd = den.degree().expect("canonical denominator is nonzero");
    // Term x^j of Ñ/D̃ is d^{-(j + offset)}.
    let offset = dd as i64 - nd as i64;
    if order < offset {
        return Ok(LaurentSeries::new(order, terms));
    }
    let count = (order - offset + 1) as usize;
    let rev_num: Vec<ExactScalar> = num.coeffs().iter().rev().cloned().collect();
    let rev_den: Vec<ExactScalar> = den.coeffs().iter().rev().cloned().collect();
    let d0_inv = rev_den[0].inv().expect("leading coefficient is nonzero");
    let mut c: Vec<ExactScalar> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = rev_num.get(j).cloned().unwrap_or_default();
        for i in 1..=j.min(rev_den.len() - 1) {
            let t = &rev_den[i] * &c[j - i];
            acc -= &t;
        }
        c.push(&acc * &d0_inv);
    }
    for (j, cj) in c.into_iter().enumerate() {
        if !cj.is_zero() {
            terms.insert(j as i64 + offset, cj);
        }
    }
    Ok(LaurentSeries::new(order, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DimPoly;
    use alloc::string::ToString;

    #[test]
    fn entry_fourth_moment_series() {
        let r = RationalFunction::normalize(DimPoly::from_ints(&[2]), DimPoly::from_ints(&[0, 1, 1])).unwrap();
        let s = laurent_expand(&r, 4).unwrap();
        assert_eq!(s.to_string(), "2/d^2 - 2/d^3 + 2/d^4");
    }

    #[test]
    fn page_purity_series() {
        let r = RationalFunction::normalize(DimPoly::from_ints(&[0, 2]), DimPoly::from_ints(&[1, 0, 1])).unwrap();
        let s = laurent_expand(&r, 5).unwrap();
        assert_eq!(s.render("n"), "2/n - 2/n^3 + 2/n^5");
    }

    #[test]
    fn polynomial_reproduces_itself() {
        let s = laurent_expand(&RationalFunction::var(), 2).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.coeff(-1), ExactScalar::one());
        assert_eq!(s.to_string(), "d");
    }

    #[test]
    fn negative_order_rejected() {
        assert!(laurent_expand(&RationalFunction::one(), -1).is_err());
    }

    /// `deg num - deg den` of a nonzero rational function.
    fn growth(r: &RationalFunction) -> i64 {
        r.numerator().degree().unwrap() as i64 - r.denominator().degree().unwrap() as i64
    }

    proptest::proptest! {
        // `r - S` over `den(r)·d^N` has numerator degree at most `deg den(r) - 1`,
        // i.e. `(r - S)·d^(N+1)` stays bounded.
        #[test]
        fn residual_is_beyond_the_order(
            num in proptest::collection::vec(-9i64..9, 1..5),
            den in proptest::collection::vec(-9i64..9, 1..5),
            order in 0i64..6,
        ) {
            proptest::prop_assume!(den.iter().any(|&c| c != 0));
            let r = RationalFunction::normalize(DimPoly::from_ints(&num), DimPoly::from_ints(&den)).unwrap();
            let s = laurent_expand(&r, order).unwrap();
            let diff = &r - &s.to_rational();
            if !diff.is_zero() {
                let scaled = diff.mul_poly(&DimPoly::monomial(ExactScalar::one(), order as usize + 1));
                proptest::prop_assert!(growth(&scaled) <= 0, "{} at order {}: residual {}", r, order, diff);
            }
        }
    }
}
