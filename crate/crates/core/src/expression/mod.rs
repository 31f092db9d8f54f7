//! The integrand language: parse, normalize, expand, dispatch.

mod ast;
mod expand;
mod normalize;
mod parser;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use ast::Expr;
pub use normalize::normalize;
pub use parser::{parse, parse_rational};

use crate::algebra::{ExactScalar, RationalFunction};
use crate::entrywise::{integrate_monomial, Index, Monomial, MonomialFactor, Options};
use crate::error::{Error, Result};
use crate::measure::MeasureSpec;
use crate::trace::{matrix_integrate, trace_integrate, LetterKind, TraceAtom, TraceExpr};
use expand::{Expander, Key, Terms};

/// Value of an integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrationResult {
    /// Exact function of a symbolic dimension.
    Rational(RationalFunction),
    /// Exact value at a concrete dimension.
    Scalar(ExactScalar),
    /// Polynomial in traces and entries of constant matrices.
    Trace(TraceExpr),
    Matrix(Vec<Vec<IntegrationResult>>),
}

impl IntegrationResult {
    /// Text form with the dimension written as `var`.
    pub fn render(&self, var: &str) -> String {
        match self {
            IntegrationResult::Rational(r) => r.render(var),
            IntegrationResult::Scalar(s) => alloc::format!("{}", s),
            IntegrationResult::Trace(t) => t.render(var),
            IntegrationResult::Matrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|c| c.render(var)).collect();
                        alloc::format!("[{}]", cells.join(", "))
                    })
                    .collect();
                alloc::format!("[{}]", rows.join(", "))
            }
        }
    }

    fn from_trace(t: TraceExpr, spec: &MeasureSpec) -> Result<Self> {
        match t.as_scalar() {
            Some(r) => Self::from_rational(r, spec),
            None => Ok(IntegrationResult::Trace(t)),
        }
    }

    fn from_rational(r: RationalFunction, spec: &MeasureSpec) -> Result<Self> {
        let mode = spec.mode();
        if mode.concrete().is_some() {
            let r = mode.reduce_rf(&r)?;
            if let Some(c) = r.as_constant() {
                return Ok(IntegrationResult::Scalar(c));
            }
        }
        Ok(IntegrationResult::Rational(r))
    }
}

impl fmt::Display for IntegrationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("d"))
    }
}

/// Expand an entrywise expression (no traces, no bare matrices) into
/// monomials with merged coefficients.
pub fn expand(e: &Expr) -> Result<Vec<Monomial>> {
    let n = normalize(e)?;
    let terms = Expander { haar: "", reserved: &[] }.expand(&n)?;
    terms
        .into_iter()
        .map(|(k, c)| {
            if k.matrix {
                return Err(Error::Unsupported("matrix-valued expression; take an entry or a trace".into()));
            }
            let factors = k.atoms.iter().map(monomial_factor).collect::<Option<Vec<_>>>().ok_or_else(|| {
                Error::Unsupported("trace in an entrywise expression; integrate it through the trace path".into())
            })?;
            Ok(Monomial::new(c, factors))
        })
        .collect()
}

fn monomial_factor(a: &TraceAtom) -> Option<MonomialFactor> {
    match a {
        TraceAtom::Entry { word, row, col } if word.len() == 1 && !word[0].transposed => Some(MonomialFactor {
            symbol: word[0].name.clone(),
            row: Index::Fixed(*row),
            col: Index::Fixed(*col),
            conjugated: word[0].conj,
        }),
        _ => None,
    }
}

fn is_haar_entry(a: &TraceAtom) -> bool {
    matches!(a, TraceAtom::Entry { word, .. } if word.len() == 1 && word[0].kind == LetterKind::Haar)
}

fn expand_for(e: &Expr, spec: &MeasureSpec) -> Result<Terms> {
    let n = normalize(e)?;
    let haar = spec.family.default_symbol();
    let dim = spec.dim_symbol();
    let reserved = [dim];
    if dim == haar {
        return Err(Error::Dispatch(alloc::format!("dimension symbol `{}` clashes with the random matrix", dim)));
    }
    Expander { haar, reserved: &reserved }.expand(&n)
}

/// Integrate `e` against `spec`.
///
/// Terms that are products of entries of the random matrix go to the
/// entrywise engines; terms with traces or constant entries go to the trace
/// engine. A matrix-valued `e` is integrated entry by entry (concrete
/// dimension only).
pub fn integrate(e: &Expr, spec: &MeasureSpec, opts: &Options) -> Result<IntegrationResult> {
    spec.validate()?;
    let terms = expand_for(e, spec)?;
    if terms.keys().any(|k| k.matrix) {
        return integrate_matrix(&terms, spec, opts);
    }
    let mut total = RationalFunction::zero();
    let mut traces = TraceExpr::zero();
    for (Key { atoms, .. }, c) in &terms {
        if atoms.iter().all(is_haar_entry) {
            let factors = atoms.iter().map(|a| monomial_factor(a).expect("haar entry")).collect();
            let r = integrate_monomial(&Monomial::new(c.clone(), factors), spec, opts)?;
            total = &total + &r;
        } else {
            traces.add_term(RationalFunction::from_scalar(c.clone()), atoms.clone());
        }
    }
    if traces.is_zero() {
        return IntegrationResult::from_rational(total, spec);
    }
    let t = &trace_integrate(&traces, spec, opts)? + &TraceExpr::scalar(total);
    IntegrationResult::from_trace(t, spec)
}

fn integrate_matrix(terms: &Terms, spec: &MeasureSpec, opts: &Options) -> Result<IntegrationResult> {
    let mut m = Vec::new();
    for (k, c) in terms {
        if !k.atoms.is_empty() {
            return Err(Error::Unsupported(
                "matrix expressions with entry or trace coefficients; scalarize the expression first".into(),
            ));
        }
        // Scalar terms of a matrix expression are multiples of the identity.
        m.push((c.clone(), k.word.clone()));
    }
    let rows = matrix_integrate(&m, spec, opts)?;
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|t| IntegrationResult::from_trace(t, spec)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegrationResult::Matrix(rows))
}

/// Value of a result at `d = n`; removable singularities cancel first.
pub fn evaluate(r: &IntegrationResult, n: i64) -> Result<IntegrationResult> {
    Ok(match r {
        IntegrationResult::Rational(f) => IntegrationResult::Scalar(f.eval(n)?),
        IntegrationResult::Scalar(_) => r.clone(),
        IntegrationResult::Trace(t) => {
            let t = t.try_map_coeffs(|c| c.eval(n).map(RationalFunction::from_scalar))?;
            match t.as_scalar() {
                Some(c) => IntegrationResult::Scalar(c.as_constant().expect("evaluated")),
                None => IntegrationResult::Trace(t),
            }
        }
        IntegrationResult::Matrix(rows) => IntegrationResult::Matrix(
            rows.iter().map(|row| row.iter().map(|c| evaluate(c, n)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
        ),
    })
}
