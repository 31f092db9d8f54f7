//! Recursive-descent parser for the integrand language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' int)?
//! atom   := primary '\''*
//! primary:= number | ident | ident '[' int (',' int)? ']' | ident '\'' '[' int ',' int ']'
//!         | func '(' expr ')' | '(' expr ')'
//! ```
//! Division is only by numeric expressions. `M[i]` is shorthand for `M[i,1]`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::ast::Expr;
use crate::algebra::{ExactScalar, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^()[],'".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos, message: alloc::format!("unexpected character `{}`", c) });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

const FUNCS: [&str; 5] = ["abs", "conj", "re", "im", "tr"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            Tok::Num(n) => alloc::format!("`{}`", n),
            Tok::Ident(s) => alloc::format!("`{}`", s),
            Tok::Sym(c) => alloc::format!("`{}`", c),
            Tok::End => "end of input".into(),
        };
        Err(Error::Parse { pos: self.pos(), message: alloc::format!("expected {}, found {}", expected, found) })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&alloc::format!("`{}`", c))
        }
    }

    fn uint(&mut self, what: &str) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(what),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let pos = self.pos();
        let n = self.uint("an integer index")?;
        usize::try_from(&n).ok().filter(|&i| i >= 1).ok_or(Error::Parse {
            pos,
            message: "indices are positive integers".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = alloc::vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(self.term()?.negated());
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let collapse = |mut fs: Vec<Expr>| if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Product(fs) };
        let mut factors = alloc::vec![self.factor()?];
        loop {
            if self.eat('*') {
                factors.push(self.factor()?);
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.factor()?;
                let v = d.numeric_value().ok_or(Error::Parse {
                    pos,
                    message: "division is only by numbers".into(),
                })?;
                if v.is_zero() {
                    return Err(Error::Parse { pos, message: "division by zero".into() });
                }
                let lhs = collapse(core::mem::take(&mut factors));
                factors.push(Expr::Quotient(Box::new(lhs), v));
            } else {
                break;
            }
        }
        Ok(collapse(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(self.factor()?.negated());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let e = self.uint("an integer exponent")?;
            let e = u32::try_from(&e).map_err(|_| Error::Parse { pos, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while self.eat('\'') {
            e = Expr::Adjoint(Box::new(e));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if FUNCS.contains(&name.as_str()) && *self.peek() == Tok::Sym('(') {
                    self.bump();
                    let arg = Box::new(self.expr()?);
                    self.expect(')')?;
                    return Ok(match name.as_str() {
                        "abs" => Expr::Abs(arg),
                        "conj" => Expr::Conj(arg),
                        "re" => Expr::Re(arg),
                        "im" => Expr::Im(arg),
                        _ => Expr::Tr(arg),
                    });
                }
                // (M')[i,j] = conj(M[j,i])
                if *self.peek() == Tok::Sym('\'') && self.toks[self.at + 1].1 == Tok::Sym('[') {
                    self.bump();
                    let (i, j) = self.indices()?;
                    return Ok(Expr::entry(&name, j, i).conj());
                }
                if *self.peek() == Tok::Sym('[') {
                    let (i, j) = self.indices()?;
                    return Ok(Expr::entry(&name, i, j));
                }
                Ok(Expr::Symbol(name))
            }
            _ => self.fail("a number, symbol, function call or `(`"),
        }
    }

    fn indices(&mut self) -> Result<(usize, usize)> {
        self.expect('[')?;
        let i = self.index()?;
        let j = if self.eat(',') { self.index()? } else { 1 };
        self.expect(']')?;
        Ok((i, j))
    }
}

/// Parse an integrand.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

/// Parse a rational function of the single variable `var`, e.g.
/// `2n/(n^2 + 1)`. Juxtaposition multiplies.
pub fn parse_rational(text: &str, var: &str) -> Result<RationalFunction> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let r = rational_expr(&mut p, var)?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(r)
}

fn rational_expr(p: &mut Parser, var: &str) -> Result<RationalFunction> {
    let mut acc = rational_term(p, var)?;
    loop {
        if p.eat('+') {
            acc = &acc + &rational_term(p, var)?;
        } else if p.eat('-') {
            acc = &acc - &rational_term(p, var)?;
        } else {
            return Ok(acc);
        }
    }
}

fn rational_term(p: &mut Parser, var: &str) -> Result<RationalFunction> {
    let mut acc = rational_factor(p, var)?;
    loop {
        if p.eat('*') {
            acc = &acc * &rational_factor(p, var)?;
        } else if *p.peek() == Tok::Sym('/') {
            let pos = p.pos();
            p.bump();
            let d = rational_factor(p, var)?;
            let inv = d.inv().ok_or(Error::Parse { pos, message: "division by zero".into() })?;
            acc = &acc * &inv;
        } else if matches!(p.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(')) {
            acc = &acc * &rational_factor(p, var)?;
        } else {
            return Ok(acc);
        }
    }
}

fn rational_factor(p: &mut Parser, var: &str) -> Result<RationalFunction> {
    if p.eat('-') {
        return Ok(-&rational_factor(p, var)?);
    }
    let pos = p.pos();
    let base = match p.peek().clone() {
        Tok::Num(n) => {
            p.bump();
            RationalFunction::from_scalar(ExactScalar::from_int(n))
        }
        Tok::Ident(s) if s == var => {
            p.bump();
            RationalFunction::var()
        }
        Tok::Ident(s) => {
            return Err(Error::Parse {
                pos,
                message: alloc::format!("unknown symbol `{}`; the variable is `{}`", s, var),
            })
        }
        Tok::Sym('(') => {
            p.bump();
            let r = rational_expr(p, var)?;
            p.expect(')')?;
            r
        }
        _ => return p.fail("a number, the variable or `(`"),
    };
    if p.eat('^') {
        let pos = p.pos();
        let e = p.uint("an integer exponent")?;
        let e = u32::try_from(&e).map_err(|_| Error::Parse { pos, message: "exponent too large".into() })?;
        return Ok(base.pow(e));
    }
    Ok(base)
}
