//! Harish-Chandra–Itzykson–Zuber integrals `∫ exp(tr(A U B U†)) dU` over `U(d)`:
//!
//! `∏_{p<d} p! · det[exp(a_i b_j)] / (Δ(a) Δ(b))`, `Δ(x) = ∏_{i<j} (x_j − x_i)`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::algebra::ExactScalar;
use crate::combinatorics::{all_permutations, Permutation};
use crate::error::{Error, Result};
use crate::measure::Dim;

/// Polynomial in named commuting symbols with exact coefficients. Keys are
/// sorted lists of symbol names (with repetition).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MPoly {
    terms: BTreeMap<Vec<String>, ExactScalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn symbol(s: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(alloc::vec![s.to_string()], ExactScalar::one());
        p
    }

    fn add_term(&mut self, key: Vec<String>, c: ExactScalar) {
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                k.sort();
                out.add_term(k, va * vb);
            }
        }
        out
    }

    fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn render(&self) -> String {
        use num_traits::Signed;
        let mut out = String::new();
        for (k, c) in &self.terms {
            let neg = c.is_real() && c.re.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let body = render_key(k);
            let coeff = if mag.is_real() { mag.to_string() } else { alloc::format!("({})", mag) };
            out.push_str(&match (body.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => body,
                (false, false) => alloc::format!("{}*{}", coeff, body),
            });
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn eval(&self, values: &BTreeMap<String, Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut t = Complex64::new(re, im);
            for s in k {
                t *= values.get(s)?;
            }
            acc += t;
        }
        Some(acc)
    }
}

fn render_key(k: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < k.len() {
        let mut j = i;
        while j < k.len() && k[j] == k[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { k[i].clone() } else { alloc::format!("{}^{}", k[i], j - i) });
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One eigenvalue: exact, floating point, or a formal symbol.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigen {
    Exact(ExactScalar),
    Float(Complex64),
    Symbol(String),
}

impl Eigen {
    /// `3`, `-1/2`, `0.25` or an identifier.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(x) = t.parse::<ExactScalar>() {
            return Ok(Eigen::Exact(x));
        }
        if let Ok(x) = t.parse::<f64>() {
            return Ok(Eigen::Float(Complex64::new(x, 0.0)));
        }
        let mut chars = t.chars();
        if chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Ok(Eigen::Symbol(t.into()));
        }
        Err(Error::InvalidInput(alloc::format!("cannot read eigenvalue `{}`", t)))
    }

    fn to_complex(&self) -> Option<Complex64> {
        match self {
            Eigen::Exact(x) => {
                let (re, im) = x.to_f64_pair();
                Some(Complex64::new(re, im))
            }
            Eigen::Float(z) => Some(*z),
            Eigen::Symbol(_) => None,
        }
    }
}

/// Eigenvalues of one source matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum(pub Vec<Eigen>);

impl Spectrum {
    /// Comma-separated values, e.g. `0, 1/2, s`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',').map(Eigen::parse).collect::<Result<Vec<_>>>().map(Spectrum)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_float(&self) -> bool {
        self.0.iter().any(|e| matches!(e, Eigen::Float(_)))
    }

    fn numeric(&self) -> Option<Vec<Complex64>> {
        self.0.iter().map(Eigen::to_complex).collect()
    }
}

/// Exact form `coeff · Σ_k s_k exp(E_k) / ∏_j (hi_j − lo_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcizExact {
    pub coeff: ExactScalar,
    /// Exponentials in first-seen order, equal exponents merged.
    pub terms: Vec<(ExactScalar, MPoly)>,
    /// Nonconstant Vandermonde factors.
    pub denominator: Vec<(MPoly, MPoly)>,
}

impl HcizExact {
    /// Numerator and denominator as polynomials in the symbols and the
    /// exponentials, for comparing two formulas.
    fn cross(&self) -> (BTreeMap<MPoly, MPoly>, MPoly) {
        let mut num: BTreeMap<MPoly, MPoly> = BTreeMap::new();
        for (c, e) in &self.terms {
            let slot = num.entry(e.clone()).or_default();
            *slot = slot.add(&MPoly::constant(c * &self.coeff));
        }
        let den = self.denominator.iter().fold(MPoly::constant(ExactScalar::one()), |acc, (hi, lo)| acc.mul(&hi.sub(lo)));
        (num, den)
    }

    /// Equal as functions of the symbols.
    pub fn equivalent(&self, other: &Self) -> bool {
        let (n1, d1) = self.cross();
        let (n2, d2) = other.cross();
        let scale = |n: &BTreeMap<MPoly, MPoly>, d: &MPoly| -> BTreeMap<MPoly, MPoly> {
            n.iter().map(|(e, c)| (e.clone(), c.mul(d))).filter(|(_, c)| !c.is_zero()).collect()
        };
        scale(&n1, &d2) == scale(&n2, &d1)
    }

    /// Numerical value when no symbols remain.
    pub fn to_complex(&self) -> Option<Complex64> {
        let none = BTreeMap::new();
        let mut num = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let (re, im) = c.to_f64_pair();
            num += Complex64::new(re, im) * e.eval(&none)?.exp();
        }
        let mut den = Complex64::new(1.0, 0.0);
        for (hi, lo) in &self.denominator {
            den *= hi.sub(lo).eval(&none)?;
        }
        let (re, im) = self.coeff.to_f64_pair();
        Some(Complex64::new(re, im) * num / den)
    }

    pub fn render(&self) -> String {
        let mut num = String::new();
        for (c, e) in &self.terms {
            let c = c * &self.coeff;
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::from_integer(0.into()) {
                (true, -c)
            } else {
                (false, c)
            };
            num.push_str(match (num.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let ex = if e.is_zero() { None } else { Some(alloc::format!("exp({})", e)) };
            let mag_s = if mag.is_real() { mag.to_string() } else { alloc::format!("({})", mag) };
            num.push_str(&match (ex, mag.is_one()) {
                (None, _) => mag_s,
                (Some(x), true) => x,
                (Some(x), false) => alloc::format!("{}*{}", mag_s, x),
            });
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.denominator.is_empty() {
            return num;
        }
        let side = |p: &MPoly| if p.term_count() > 1 { alloc::format!("({})", p) } else { p.to_string() };
        let factors: Vec<String> = self
            .denominator
            .iter()
            .map(|(hi, lo)| if lo.is_zero() { side(hi) } else { alloc::format!("({} - {})", hi, side(lo)) })
            .collect();
        let den = if factors.len() == 1 {
            factors[0].clone()
        } else {
            alloc::format!("({})", factors.join("*"))
        };
        let num = if self.terms.len() > 1 { alloc::format!("({})", num) } else { num };
        alloc::format!("{}/{}", num, den)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HcizValue {
    Exact(HcizExact),
    Numeric(Complex64),
}

impl HcizValue {
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            HcizValue::Exact(e) => e.to_complex(),
            HcizValue::Numeric(z) => Some(*z),
        }
    }

    pub fn render(&self) -> String {
        match self {
            HcizValue::Exact(e) => e.render(),
            HcizValue::Numeric(z) if z.im == 0.0 => alloc::format!("{}", z.re),
            HcizValue::Numeric(z) => alloc::format!("{}{:+}i", z.re, z.im),
        }
    }
}

impl fmt::Display for HcizValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `∏_{p=1}^{d-1} p!`.
pub fn superfactorial(d: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut fact = BigInt::from(1);
    for p in 1..d {
        fact *= p;
        acc *= &fact;
    }
    acc
}

/// Sort by `(re, im)`; if any value repeats, shift entry `i` (1-based) by
/// `i·ε` along the imaginary axis, `ε = max(‖a‖∞, 1)·10⁻¹²`.
pub fn perturb_degenerate(a: &[Complex64]) -> Vec<Complex64> {
    let mut v = a.to_vec();
    v.sort_by(spectral_order);
    if v.windows(2).all(|w| w[0] != w[1]) {
        return v;
    }
    let norm = v.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let eps = norm * 1e-12;
    v.iter().enumerate().map(|(i, z)| z + Complex64::new(0.0, (i + 1) as f64 * eps)).collect()
}

fn to_mpoly(e: &Eigen) -> MPoly {
    match e {
        Eigen::Exact(x) => MPoly::constant(x.clone()),
        Eigen::Symbol(s) => MPoly::symbol(s),
        Eigen::Float(_) => unreachable!("float spectra take the numeric path"),
    }
}

/// The integral for given eigenvalues.
pub fn hciz_eigen(a: &Spectrum, b: &Spectrum) -> Result<HcizValue> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidInput(alloc::format!(
            "spectra must be nonempty and of equal length, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_float() || b.is_float() {
        let (Some(x), Some(y)) = (a.numeric(), b.numeric()) else {
            return Err(Error::Unsupported("floating-point and symbolic eigenvalues cannot be mixed".into()));
        };
        return hciz_numeric(&x, &y).map(HcizValue::Numeric);
    }
    let x: Vec<MPoly> = a.0.iter().map(to_mpoly).collect();
    let y: Vec<MPoly> = b.0.iter().map(to_mpoly).collect();
    hciz_exact(&x, &y).map(HcizValue::Exact)
}

fn hciz_exact(a: &[MPoly], b: &[MPoly]) -> Result<HcizExact> {
    let n = a.len();
    let mut coeff = ExactScalar::from_int(superfactorial(n));
    let mut denominator = Vec::new();
    for (name, x) in [("a", a), ("b", b)] {
        for j in 0..n {
            for i in 0..j {
                let diff = x[j].sub(&x[i]);
                if diff.is_zero() {
                    return Err(Error::DegenerateSpectrum(alloc::format!(
                        "{}_{} and {}_{} coincide; the formula needs distinct eigenvalues, take the limit analytically",
                        name,
                        i + 1,
                        name,
                        j + 1
                    )));
                }
                match diff.as_constant() {
                    Some(c) => coeff = &coeff * &c.inv().expect("nonzero"),
                    None => denominator.push((x[j].clone(), x[i].clone())),
                }
            }
        }
    }
    let mut terms: Vec<(ExactScalar, MPoly)> = Vec::new();
    for p in all_permutations(n) {
        let sign = ExactScalar::from_int(sign_of(&p));
        let e = (0..n).fold(MPoly::zero(), |acc, i| acc.add(&a[i].mul(&b[p.apply(i)])));
        match terms.iter_mut().find(|(_, f)| *f == e) {
            Some(slot) => slot.0 = &slot.0 + &sign,
            None => terms.push((sign, e)),
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    Ok(HcizExact { coeff, terms, denominator })
}

fn sign_of(p: &Permutation) -> i64 {
    if p.length().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn min_gap(x: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for j in 0..x.len() {
        for i in 0..j {
            gap = gap.min((x[j] - x[i]).norm());
        }
    }
    gap
}

fn sup(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Double-precision evaluation. Repeated eigenvalues are perturbed first;
/// nearly confluent spectra are summed through the Schur expansion, which
/// does not divide by the small Vandermonde products.
pub fn hciz_numeric(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidInput("spectra must be nonempty and of equal length".into()));
    }
    let a = perturb_degenerate(a);
    let b = perturb_degenerate(b);
    let close = |x: &[Complex64]| min_gap(x) < 1e-4 * sup(x).max(1.0);
    if close(&a) || close(&b) {
        if let Some(v) = schur_series(&a, &b) {
            return Ok(v);
        }
    }
    Ok(direct(&a, &b))
}

fn direct(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| (a[i] * b[j]).exp());
    let mut den = Complex64::new(1.0, 0.0);
    for j in 0..n {
        for i in 0..j {
            den *= (a[j] - a[i]) * (b[j] - b[i]);
        }
    }
    let pre: f64 = (1..n).map(|p| libm::tgamma(p as f64 + 1.0)).product();
    m.determinant() * pre / den
}

/// Largest number of partitions the Schur expansion may visit.
const SERIES_BUDGET: usize = 200_000;

/// `Σ_λ s_λ(a) s_λ(b) ∏_{p<n} p! / ∏_m (λ_m + n − m)!`, over `ℓ(λ) ≤ n`.
/// Terms of size `k` are bounded by `(n·|a|·|b|)^k / k!`.
fn schur_series(a: &[Complex64], b: &[Complex64]) -> Option<Complex64> {
    let n = a.len();
    let rate = n as f64 * sup(a) * sup(b);
    let mut kmax = 0usize;
    let mut bound = 1.0f64;
    while kmax < 10 || kmax as f64 <= rate || bound > 1e-18 {
        kmax += 1;
        bound *= rate / kmax as f64;
        if kmax > 120 {
            return None;
        }
    }
    let parts = bounded_partitions(kmax, n, SERIES_BUDGET)?;
    let ha = complete_homogeneous(a, kmax + n);
    let hb = complete_homogeneous(b, kmax + n);
    let ln_pre: f64 = (1..n).map(|p| libm::lgamma(p as f64 + 1.0)).sum();
    let mut total = Complex64::new(0.0, 0.0);
    for lambda in parts {
        let ln_den: f64 = (0..n).map(|m| libm::lgamma((lambda[m] + n - m) as f64)).sum();
        let c = libm::exp(ln_pre - ln_den);
        total += jacobi_trudi(&lambda, &ha) * jacobi_trudi(&lambda, &hb) * c;
    }
    Some(total)
}

/// `h_0..=h_m` of the given variables.
fn complete_homogeneous(x: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut h = alloc::vec![Complex64::new(0.0, 0.0); m + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &xi in x {
        for k in 1..=m {
            let prev = h[k - 1];
            h[k] += xi * prev;
        }
    }
    h
}

fn jacobi_trudi(lambda: &[usize], h: &[Complex64]) -> Complex64 {
    let n = lambda.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let idx = lambda[i] as i64 - i as i64 + j as i64;
        if idx < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            h[idx as usize]
        }
    });
    m.determinant()
}

/// Weakly decreasing `n`-tuples of total at most `kmax`, or `None` beyond `budget`.
fn bounded_partitions(kmax: usize, n: usize, budget: usize) -> Option<Vec<Vec<usize>>> {
    fn go(prefix: &mut Vec<usize>, left: usize, cap: usize, n: usize, out: &mut Vec<Vec<usize>>, budget: usize) -> bool {
        if prefix.len() == n {
            out.push(prefix.clone());
            return out.len() <= budget;
        }
        for v in (0..=cap.min(left)).rev() {
            prefix.push(v);
            let ok = go(prefix, left - v, v, n, out, budget);
            prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    if go(&mut Vec::new(), kmax, kmax, n, &mut out, budget) {
        Some(out)
    } else {
        None
    }
}

/// The integral with fresh formal eigenvalues `a1..ad`, `b1..bd`.
pub fn hciz_formal(d: &Dim) -> Result<HcizExact> {
    let Dim::Concrete(n) = d else {
        return Err(Error::SymbolicDimension(
            "symbolic dimensions are not supported here; give a concrete d to get formal eigenvalues".into(),
        ));
    };
    if *n < 1 {
        return Err(Error::InvalidDimension(alloc::format!("dimension must be positive, got {}", n)));
    }
    let names = |p: &str| (1..=*n).map(|i| MPoly::symbol(&alloc::format!("{}{}", p, i))).collect::<Vec<_>>();
    hciz_exact(&names("a"), &names("b"))
}

/// Eigenvalues of a source matrix given entrywise.
fn eigenvalues(m: &[Vec<Eigen>]) -> Result<Spectrum> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("source matrices must be square and nonempty".into()));
    }
    let is_zero = |e: &Eigen| match e {
        Eigen::Exact(x) => x.is_zero(),
        Eigen::Float(z) => *z == Complex64::new(0.0, 0.0),
        Eigen::Symbol(_) => false,
    };
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || is_zero(&m[i][j])));
    let floats = m.iter().flatten().any(|e| matches!(e, Eigen::Float(_)));
    if diagonal && !floats {
        return Ok(Spectrum((0..n).map(|i| m[i][i].clone()).collect()));
    }
    let numeric: Option<Vec<Complex64>> = m.iter().flatten().map(Eigen::to_complex).collect();
    if let Some(v) = numeric {
        let a = DMatrix::from_row_slice(n, n, &v);
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if (&a - a.adjoint()).iter().any(|z| z.norm() > 1e-12 * scale) {
            return Err(Error::InvalidInput("numeric source matrices must be Hermitian".into()));
        }
        let eig = a.symmetric_eigenvalues();
        return Ok(Spectrum(eig.iter().map(|&x| Eigen::Float(Complex64::new(x, 0.0))).collect()));
    }
    Err(Error::Unsupported(alloc::format!(
        "symbolic {0}x{0} matrices that are not diagonal; supply the eigenvalues directly",
        n
    )))
}

/// `(t ± √D)/2` for a symbolic 2×2 matrix, with `√D` kept as a named atom.
fn quadratic_eigenvalues(m: &[Vec<Eigen>]) -> Option<[MPoly; 2]> {
    if m.len() != 2 || m.iter().any(|r| r.len() != 2) || m.iter().flatten().any(|e| matches!(e, Eigen::Float(_))) {
        return None;
    }
    let e = |i: usize, j: usize| to_mpoly(&m[i][j]);
    let tr = e(0, 0).add(&e(1, 1));
    let gap = e(0, 0).sub(&e(1, 1));
    let disc = gap.mul(&gap).add(&e(0, 1).mul(&e(1, 0)).scale(&ExactScalar::from_int(4)));
    let root = MPoly::symbol(&alloc::format!("sqrt({})", disc));
    let half = ExactScalar::ratio(1, 2);
    Some([tr.sub(&root).scale(&half), tr.add(&root).scale(&half)])
}

/// The integral for source matrices given entrywise. Numeric matrices must
/// be Hermitian; symbolic ones diagonal, or general 2×2.
pub fn hciz_matrices(a: &[Vec<Eigen>], b: &[Vec<Eigen>]) -> Result<HcizValue> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput("source matrices must have equal sizes".into()));
    }
    let side = |m: &[Vec<Eigen>]| -> Result<Vec<MPoly>> {
        match eigenvalues(m) {
            Ok(s) if !s.is_float() => Ok(s.0.iter().map(to_mpoly).collect()),
            Ok(_) => Err(Error::Unsupported("floating-point and symbolic matrices cannot be mixed".into())),
            Err(Error::Unsupported(msg)) => quadratic_eigenvalues(m).map(Vec::from).ok_or(Error::Unsupported(msg)),
            Err(e) => Err(e),
        }
    };
    let numeric = |m: &[Vec<Eigen>]| m.iter().flatten().all(|e| !matches!(e, Eigen::Symbol(_)));
    if numeric(a) && numeric(b) {
        let (sa, sb) = (eigenvalues(a)?, eigenvalues(b)?);
        if sa.is_float() || sb.is_float() {
            let (x, y) = (sa.numeric().expect("numeric"), sb.numeric().expect("numeric"));
            return hciz_numeric(&x, &y).map(HcizValue::Numeric);
        }
        return hciz_eigen(&sa, &sb);
    }
    hciz_exact(&side(a)?, &side(b)?).map(HcizValue::Exact)
}

/// Total order used to sort numeric spectra: real part, then imaginary.
pub fn spectral_order(x: &Complex64, y: &Complex64) -> Ordering {
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}
