//! Large-`d` expansions of integrals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{laurent_expand, ExactScalar, LaurentSeries, RationalFunction};
use crate::entrywise::Options;
use crate::error::{Error, Result};
use crate::expression::{integrate, Expr, IntegrationResult};
use crate::measure::MeasureSpec;
use crate::trace::TraceExpr;

/// Expansion of a trace polynomial: for each inverse power `m`, a trace
/// polynomial with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSeries {
    pub order: i64,
    pub groups: BTreeMap<i64, TraceExpr>,
}

impl TraceSeries {
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        TraceSeries { order, groups: self.groups.iter().filter(|(m, _)| **m <= order).map(|(m, t)| (*m, t.clone())).collect() }
    }

    /// E.g. `(tr(A)*tr(B) + tr(C))/d^2 - tr(A)/d^3`; a group whose
    /// coefficients are all negative is written with a leading minus.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (&m, t) in &self.groups {
            let negative = t.terms().all(|(_, c)| c.as_constant().is_some_and(|k| is_negative(&k)));
            let t = if negative { -t } else { t.clone() };
            let body = t.render(var);
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = if t.len() > 1 && m != 0 { alloc::format!("({})", body) } else { body };
            let _ = match m {
                0 => write!(out, "{}", body),
                1 => write!(out, "{}/{}", body, var),
                m if m > 0 => write!(out, "{}/{}^{}", body, var, m),
                -1 => write!(out, "{}*{}", body, var),
                m => write!(out, "{}*{}^{}", body, var, -m),
            };
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn is_negative(k: &ExactScalar) -> bool {
    use num_traits::Signed;
    k.is_real() && k.re.is_negative()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Series(LaurentSeries),
    Trace(TraceSeries),
}

/// An expansion together with the name of its large variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asymptotic {
    pub var: String,
    pub expansion: Expansion,
}

impl Asymptotic {
    pub fn render(&self) -> String {
        match &self.expansion {
            Expansion::Series(s) => s.render(&self.var),
            Expansion::Trace(t) => t.render(&self.var),
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        let expansion = match &self.expansion {
            Expansion::Series(s) => Expansion::Series(s.truncate(order)),
            Expansion::Trace(t) => Expansion::Trace(t.truncate(order)),
        };
        Asymptotic { var: self.var.clone(), expansion }
    }
}

/// Expand a rational function through `x^{-order}`.
pub fn asymptotic_rational(r: &RationalFunction, var: &str, order: i64) -> Result<Asymptotic> {
    Ok(Asymptotic { var: var.into(), expansion: Expansion::Series(laurent_expand(r, order)?) })
}

/// Expand each coefficient of `t`, regrouping by inverse power. Traces count
/// as order one.
pub fn expand_trace(t: &TraceExpr, order: i64) -> Result<TraceSeries> {
    let mut groups: BTreeMap<i64, TraceExpr> = BTreeMap::new();
    for (atoms, c) in t.terms() {
        let s = laurent_expand(c, order)?;
        for (&m, k) in s.terms() {
            let g = groups.entry(m).or_insert_with(TraceExpr::zero);
            g.add_term(RationalFunction::from_scalar(k.clone()), atoms.clone());
        }
    }
    groups.retain(|_, g| !g.is_zero());
    Ok(TraceSeries { order, groups })
}

/// Integrate `e` against `spec` at a symbolic dimension and expand the
/// result. A concrete dimension is replaced by a fresh symbol.
pub fn asymptotic(e: &Expr, spec: &MeasureSpec, order: i64, opts: &Options) -> Result<Asymptotic> {
    if order < 0 {
        return Err(Error::InvalidInput("expansion order must be non-negative".into()));
    }
    let var: String = if spec.is_symbolic() { spec.dim_symbol().into() } else { fresh_symbol(e) };
    let sym = spec.with_symbolic_dim(&var);
    let r = integrate(e, &sym, opts).map_err(|err| match err {
        Error::SymbolicDimension(m) => Error::NotRational(m),
        other => other,
    })?;
    let expansion = match r {
        IntegrationResult::Rational(r) => Expansion::Series(laurent_expand(&r, order)?),
        IntegrationResult::Scalar(c) => Expansion::Series(laurent_expand(&RationalFunction::from_scalar(c), order)?),
        IntegrationResult::Trace(t) => Expansion::Trace(expand_trace(&t, order)?),
        IntegrationResult::Matrix(_) => {
            return Err(Error::Unsupported("asymptotic expansion of a matrix-valued result; take a trace or an entry".into()))
        }
    };
    Ok(Asymptotic { var, expansion })
}

/// `d`, or `d1`, `d2`, ... if the expression already uses that name.
fn fresh_symbol(e: &Expr) -> String {
    let mut used = Vec::new();
    collect_symbols(e, &mut used);
    if !used.iter().any(|s| s == "d") {
        return "d".into();
    }
    (1..).map(|k| alloc::format!("d{}", k)).find(|s| !used.contains(s)).expect("unbounded supply")
}

fn collect_symbols(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Symbol(s) | Expr::Entry { symbol: s, .. } => out.push(s.clone()),
        Expr::Conj(x) | Expr::Abs(x) | Expr::Re(x) | Expr::Im(x) | Expr::Tr(x) | Expr::Adjoint(x) | Expr::Neg(x) => {
            collect_symbols(x, out)
        }
        Expr::Power(x, _) | Expr::Quotient(x, _) => collect_symbols(x, out),
        Expr::Sum(xs) | Expr::Product(xs) => xs.iter().for_each(|x| collect_symbols(x, out)),
        Expr::Int(_) | Expr::Scalar(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expression::{parse, parse_rational};
    use crate::measure::Family;

    fn run(s: &str, spec: &str, order: i64) -> Result<Asymptotic> {
        asymptotic(&parse(s).unwrap(), &MeasureSpec::parse(spec).unwrap(), order, &Options::default())
    }

    #[test]
    fn published_expansions() {
        assert_eq!(run("abs(U[1,1])^4", "U(d)", 4).unwrap().render(), "2/d^2 - 2/d^3 + 2/d^4");
        let page = parse_rational("2n/(n^2+1)", "n").unwrap();
        assert_eq!(asymptotic_rational(&page, "n", 5).unwrap().render(), "2/n - 2/n^3 + 2/n^5");
        assert_eq!(
            run("tr(U*A*U'*B*U*C*U'*D)", "U(d)", 3).unwrap().render(),
            "(tr(A)*tr(B*D)*tr(C) + tr(A*C)*tr(B)*tr(D))/d^2 - (tr(A)*tr(B)*tr(C)*tr(D) + tr(A*C)*tr(B*D))/d^3"
        );
    }

    #[test]
    fn concrete_dimension_gets_a_fresh_symbol() {
        let a = run("abs(U[1,1])^2", "U(7)", 2).unwrap();
        assert_eq!(a.var, "d");
        assert_eq!(a.render(), "1/d");
        let b = run("abs(U[1,1])^2 + tr(d)", "U(7)", 2);
        // `d` is taken by a constant matrix, so the expansion uses `d1`.
        assert_eq!(b.unwrap().render(), "tr(d) + 1/d1");
    }

    #[test]
    fn trace_moments_are_not_rational() {
        assert!(matches!(run("abs(tr(U))^4", "U(10)", 3), Err(Error::NotRational(_))));
    }

    #[test]
    fn truncation_nests() {
        for (e, m) in [("abs(U[1,1])^6", "U(d)"), ("abs(S[1,1])^4", "COE(d)"), ("tr(U*A*U'*B*U*C*U'*D)", "U(d)")] {
            let full = run(e, m, 6).unwrap();
            for k in 0..6 {
                assert_eq!(full.truncate(k), run(e, m, k).unwrap(), "{} at {}", e, k);
            }
        }
    }

    #[test]
    fn series_tracks_the_exact_value() {
        let spec = MeasureSpec::symbolic(Family::U);
        for e in ["abs(U[1,1])^4", "abs(U[1,1])^6", "U[1,1]*U[2,2]*conj(U[1,2])*conj(U[2,1])"] {
            let IntegrationResult::Rational(r) = integrate(&parse(e).unwrap(), &spec, &Options::default()).unwrap() else {
                panic!()
            };
            let exact = crate::algebra::rational_to_f64(&r.eval(1000).unwrap().re);
            for n in 3..8 {
                let Expansion::Series(s) = run(e, "U(d)", n).unwrap().expansion else { panic!() };
                let approx = crate::algebra::rational_to_f64(&s.to_rational().eval(1000).unwrap().re);
                let rel = ((approx - exact) / exact).abs();
                assert!(rel < libm::pow(10.0, -(n as f64 - 1.0)), "{} order {}: {}", e, n, rel);
            }
        }
    }
}
