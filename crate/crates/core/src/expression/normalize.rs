//! Rewrite rules: `abs(z)^{2m} → (z·conj z)^m`, `re`, `im` through `conj`,
//! `conj` and `'` pushed to the leaves, nested sums and products flattened.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::ast::Expr;
use crate::algebra::ExactScalar;
use crate::error::{Error, Result};

/// Normalize a parsed expression. The result has no `abs`, `re` or `im`
/// nodes, `conj` only wraps symbols and entries, and `'` only wraps symbols
/// or conjugated symbols.
pub fn normalize(e: &Expr) -> Result<Expr> {
    Ok(match e {
        Expr::Int(_) | Expr::Scalar(_) | Expr::Symbol(_) | Expr::Entry { .. } => e.clone(),
        Expr::Abs(_) => return Err(abs_error()),
        Expr::Power(b, k) => match &**b {
            Expr::Abs(z) if k % 2 == 0 => {
                let z = normalize(z)?;
                power(product(alloc::vec![z.clone(), conj(&z)]), k / 2)
            }
            Expr::Abs(_) => return Err(abs_error()),
            _ => power(normalize(b)?, *k),
        },
        Expr::Re(z) => {
            let z = normalize(z)?;
            quotient(sum(alloc::vec![z.clone(), conj(&z)]), ExactScalar::from_int(2))
        }
        Expr::Im(z) => {
            let z = normalize(z)?;
            let two_i = &ExactScalar::i() * &ExactScalar::from_int(2);
            quotient(sum(alloc::vec![z.clone(), negate(conj(&z))]), two_i)
        }
        Expr::Conj(x) => conj(&normalize(x)?),
        Expr::Adjoint(x) => adjoint(&normalize(x)?),
        Expr::Tr(x) => Expr::Tr(Box::new(normalize(x)?)),
        Expr::Sum(xs) => sum(xs.iter().map(normalize).collect::<Result<_>>()?),
        Expr::Product(xs) => product(xs.iter().map(normalize).collect::<Result<_>>()?),
        Expr::Neg(x) => negate(normalize(x)?),
        Expr::Quotient(x, s) => quotient(normalize(x)?, s.clone()),
    })
}

fn abs_error() -> Error {
    Error::Unsupported("abs(z) is only supported under an even power, e.g. abs(z)^2".into())
}

fn sum(xs: Vec<Expr>) -> Expr {
    let mut out = Vec::new();
    for x in xs {
        match x {
            Expr::Sum(inner) => out.extend(inner),
            x => out.push(x),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Expr::Sum(out)
    }
}

fn product(xs: Vec<Expr>) -> Expr {
    let mut out = Vec::new();
    for x in xs {
        match x {
            Expr::Product(inner) => out.extend(inner),
            x => out.push(x),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Expr::Product(out)
    }
}

fn power(b: Expr, k: u32) -> Expr {
    match k {
        0 => Expr::int(1),
        1 => b,
        _ => Expr::Power(Box::new(b), k),
    }
}

fn negate(x: Expr) -> Expr {
    match x {
        Expr::Neg(inner) => *inner,
        x => Expr::Neg(Box::new(x)),
    }
}

fn quotient(x: Expr, s: ExactScalar) -> Expr {
    match x {
        Expr::Quotient(inner, t) => Expr::Quotient(inner, &s * &t),
        x => Expr::Quotient(Box::new(x), s),
    }
}

fn is_unit(s: &str) -> bool {
    s == "i"
}

/// Complex conjugate of a normalized expression.
fn conj(e: &Expr) -> Expr {
    match e {
        Expr::Int(_) => e.clone(),
        Expr::Scalar(s) => Expr::Scalar(s.conj()),
        Expr::Symbol(s) if is_unit(s) => negate(e.clone()),
        Expr::Symbol(_) | Expr::Entry { .. } => Expr::Conj(Box::new(e.clone())),
        Expr::Conj(x) => (**x).clone(),
        Expr::Adjoint(x) => adjoint(&conj(x)),
        Expr::Tr(x) => Expr::Tr(Box::new(conj(x))),
        Expr::Sum(xs) => sum(xs.iter().map(conj).collect()),
        Expr::Product(xs) => product(xs.iter().map(conj).collect()),
        Expr::Power(b, k) => power(conj(b), *k),
        Expr::Neg(x) => negate(conj(x)),
        Expr::Quotient(x, s) => quotient(conj(x), s.conj()),
        Expr::Abs(_) | Expr::Re(_) | Expr::Im(_) => unreachable!("normalized input"),
    }
}

/// Conjugate transpose of a normalized expression. Scalars (numbers,
/// entries, traces) are conjugated.
fn adjoint(e: &Expr) -> Expr {
    match e {
        Expr::Symbol(s) if !is_unit(s) => Expr::Adjoint(Box::new(e.clone())),
        Expr::Conj(x) if matches!(**x, Expr::Symbol(_)) => Expr::Adjoint(Box::new(e.clone())),
        Expr::Adjoint(x) => (**x).clone(),
        Expr::Sum(xs) => sum(xs.iter().map(adjoint).collect()),
        Expr::Product(xs) => product(xs.iter().rev().map(adjoint).collect()),
        Expr::Power(b, k) => power(adjoint(b), *k),
        Expr::Neg(x) => negate(adjoint(x)),
        Expr::Quotient(x, s) => quotient(adjoint(x), s.conj()),
        _ => conj(e),
    }
}
