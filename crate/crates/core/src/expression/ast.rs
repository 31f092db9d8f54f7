//! Expression trees and their text form.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::algebra::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Scalar(ExactScalar),
    Symbol(String),
    /// `M[row,col]`, 1-based.
    Entry { symbol: String, row: usize, col: usize },
    Conj(Box<Expr>),
    Abs(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
    Tr(Box<Expr>),
    Adjoint(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Neg(Box<Expr>),
    /// Division by a nonzero exact scalar.
    Quotient(Box<Expr>, ExactScalar),
}

impl Expr {
    pub fn entry(symbol: &str, row: usize, col: usize) -> Expr {
        Expr::Entry { symbol: symbol.into(), row, col }
    }

    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    pub fn conj(self) -> Expr {
        Expr::Conj(Box::new(self))
    }

    pub fn pow(self, e: u32) -> Expr {
        Expr::Power(Box::new(self), e)
    }

    pub fn negated(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    /// Numeric value when the tree contains only numbers and `i`.
    pub fn numeric_value(&self) -> Option<ExactScalar> {
        match self {
            Expr::Int(n) => Some(ExactScalar::from_int(n.clone())),
            Expr::Scalar(s) => Some(s.clone()),
            Expr::Symbol(s) if s == "i" => Some(ExactScalar::i()),
            Expr::Neg(x) => x.numeric_value().map(|v| -v),
            Expr::Conj(x) => x.numeric_value().map(|v| v.conj()),
            Expr::Sum(xs) => xs.iter().try_fold(ExactScalar::zero(), |acc, x| Some(&acc + &x.numeric_value()?)),
            Expr::Product(xs) => xs.iter().try_fold(ExactScalar::one(), |acc, x| Some(&acc * &x.numeric_value()?)),
            Expr::Power(b, e) => b.numeric_value().map(|v| v.pow(*e)),
            Expr::Quotient(x, s) => Some(&x.numeric_value()? * &s.inv()?),
            _ => None,
        }
    }

    /// Precedence level of the outermost node: 0 sum, 1 product, 2 unary
    /// minus, 3 power, 4 atom.
    fn level(&self) -> u8 {
        match self {
            Expr::Sum(xs) if xs.len() != 1 => 0,
            Expr::Product(xs) if xs.len() != 1 => 1,
            Expr::Quotient(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Power(..) => 3,
            Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => 2,
            Expr::Scalar(s) if !is_plain_scalar(s) => 0,
            _ => 4,
        }
    }
}

fn is_plain_scalar(s: &ExactScalar) -> bool {
    use num_traits::Signed;
    s.is_real() && s.re.is_integer() && !s.re.is_negative()
}

fn render_scalar(s: &ExactScalar) -> String {
    alloc::format!("{}", s)
}

fn wrap(e: &Expr, min: u8) -> String {
    if e.level() < min {
        alloc::format!("({})", e)
    } else {
        alloc::format!("{}", e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{}", n),
            Expr::Scalar(s) => f.write_str(&render_scalar(s)),
            Expr::Symbol(s) => f.write_str(s),
            Expr::Entry { symbol, row, col } => write!(f, "{}[{},{}]", symbol, row, col),
            Expr::Conj(x) => write!(f, "conj({})", x),
            Expr::Abs(x) => write!(f, "abs({})", x),
            Expr::Re(x) => write!(f, "re({})", x),
            Expr::Im(x) => write!(f, "im({})", x),
            Expr::Tr(x) => write!(f, "tr({})", x),
            Expr::Adjoint(x) => write!(f, "{}'", wrap(x, 4)),
            Expr::Sum(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    match (i, x) {
                        (0, _) => f.write_str(&wrap(x, 1))?,
                        (_, Expr::Neg(inner)) => write!(f, " - {}", wrap(inner, 2))?,
                        _ => write!(f, " + {}", wrap(x, 1))?,
                    }
                }
                Ok(())
            }
            Expr::Product(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    // A leading unary minus would swallow only the first factor.
                    let min = if i == 0 { 2 } else { 3 };
                    f.write_str(&wrap(x, min))?;
                }
                Ok(())
            }
            Expr::Power(b, e) => write!(f, "{}^{}", wrap(b, 4), e),
            Expr::Neg(x) => {
                let min = if matches!(**x, Expr::Product(_) | Expr::Quotient(..)) { 4 } else { 2 };
                write!(f, "-{}", wrap(x, min))
            }
            Expr::Quotient(x, s) => {
                let d = Expr::Scalar(s.clone());
                write!(f, "{}/{}", wrap(x, 1), wrap(&d, 4))
            }
        }
    }
}
