//! Distribution of a normalized expression into a sum of terms.
//!
//! A term is `coeff · atoms · word`: a product of scalar atoms (entries and
//! traces of matrix words) times a matrix word. Scalar terms have an empty
//! word; numbers inside a matrix expression are multiples of the identity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ast::Expr;
use crate::algebra::ExactScalar;
use crate::error::{Error, Result};
use crate::trace::{conj_word, Letter, TraceAtom};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Key {
    /// Sorted: scalar atoms commute.
    pub atoms: Vec<TraceAtom>,
    pub word: Vec<Letter>,
    /// The term is a matrix (possibly the identity, with an empty word).
    pub matrix: bool,
}

pub(crate) type Terms = BTreeMap<Key, ExactScalar>;

pub(crate) struct Expander<'a> {
    /// Name of the random matrix; other matrix names are constants.
    pub haar: &'a str,
    /// Names that denote the dimension and may not be used as symbols.
    pub reserved: &'a [&'a str],
}

fn one() -> Terms {
    let mut t = Terms::new();
    t.insert(Key { atoms: Vec::new(), word: Vec::new(), matrix: false }, ExactScalar::one());
    t
}

fn constant(c: ExactScalar) -> Terms {
    scale(&one(), &c)
}

fn single(atoms: Vec<TraceAtom>, word: Vec<Letter>, matrix: bool) -> Terms {
    let mut t = Terms::new();
    t.insert(Key { atoms, word, matrix }, ExactScalar::one());
    t
}

fn add_into(acc: &mut Terms, key: Key, c: ExactScalar) {
    let slot = acc.entry(key.clone()).or_insert_with(ExactScalar::zero);
    *slot = &*slot + &c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

fn scale(t: &Terms, c: &ExactScalar) -> Terms {
    if c.is_zero() {
        return Terms::new();
    }
    t.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

fn multiply(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let mut atoms = ka.atoms.clone();
            atoms.extend(kb.atoms.iter().cloned());
            atoms.sort();
            let mut word = ka.word.clone();
            word.extend(kb.word.iter().cloned());
            add_into(&mut out, Key { atoms, word, matrix: ka.matrix || kb.matrix }, ca * cb);
        }
    }
    out
}

impl Expander<'_> {
    fn letter(&self, name: &str) -> Result<Letter> {
        if self.reserved.contains(&name) {
            return Err(Error::Dispatch(alloc::format!(
                "`{}` names the dimension and cannot be used as a matrix or entry symbol",
                name
            )));
        }
        Ok(if name == self.haar { Letter::haar(name) } else { Letter::constant(name) })
    }

    /// A matrix symbol with its marks, as it may appear after normalization.
    fn matrix_letter(&self, e: &Expr) -> Result<Option<Letter>> {
        Ok(match e {
            Expr::Symbol(s) => Some(self.letter(s)?),
            Expr::Conj(x) => match &**x {
                Expr::Symbol(s) => Some(conj_word(&[self.letter(s)?]).pop().unwrap()),
                _ => None,
            },
            Expr::Adjoint(x) => self.matrix_letter(x)?.map(|l| l.adjoint()),
            _ => None,
        })
    }

    fn entry(&self, e: &Expr) -> Result<Option<TraceAtom>> {
        let (inner, conj) = match e {
            Expr::Conj(x) => (&**x, true),
            x => (x, false),
        };
        let Expr::Entry { symbol, row, col } = inner else {
            return Ok(None);
        };
        let mut word = alloc::vec![self.letter(symbol)?];
        if conj {
            word = conj_word(&word);
        }
        Ok(Some(TraceAtom::Entry { word, row: *row, col: *col }))
    }

    pub fn expand(&self, e: &Expr) -> Result<Terms> {
        if let Some(a) = self.entry(e)? {
            return Ok(single(alloc::vec![a], Vec::new(), false));
        }
        if let Expr::Symbol(s) = e {
            if s == "i" {
                return Ok(constant(ExactScalar::i()));
            }
        }
        if let Some(l) = self.matrix_letter(e)? {
            return Ok(single(Vec::new(), alloc::vec![l], true));
        }
        Ok(match e {
            Expr::Int(n) => constant(ExactScalar::from_int(n.clone())),
            Expr::Scalar(s) => constant(s.clone()),
            Expr::Tr(x) => {
                let mut out = Terms::new();
                for (k, c) in self.expand(x)? {
                    let mut atoms = k.atoms;
                    atoms.push(TraceAtom::Trace(k.word));
                    atoms.sort();
                    add_into(&mut out, Key { atoms, word: Vec::new(), matrix: false }, c);
                }
                out
            }
            Expr::Sum(xs) => {
                let mut out = Terms::new();
                for x in xs {
                    for (k, c) in self.expand(x)? {
                        add_into(&mut out, k, c);
                    }
                }
                out
            }
            Expr::Product(xs) => {
                let mut acc = one();
                for x in xs {
                    acc = multiply(&acc, &self.expand(x)?);
                }
                acc
            }
            Expr::Power(b, k) => {
                let base = self.expand(b)?;
                let mut acc = one();
                for _ in 0..*k {
                    acc = multiply(&acc, &base);
                }
                acc
            }
            Expr::Neg(x) => scale(&self.expand(x)?, &-ExactScalar::one()),
            Expr::Quotient(x, s) => {
                let inv = s.inv().ok_or_else(|| Error::InvalidInput("division by zero".into()))?;
                scale(&self.expand(x)?, &inv)
            }
            Expr::Abs(_) | Expr::Re(_) | Expr::Im(_) => {
                return Err(Error::Unsupported("expression must be normalized before expansion".into()))
            }
            other => return Err(Error::Unsupported(alloc::format!("cannot expand `{}`", other))),
        })
    }
}
