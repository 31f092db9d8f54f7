//! Sums of products of traces (and entries) of matrix words.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::word::{canonical_cycle, canonical_open, reduce_forms, render_word, Letter, LetterKind};
use crate::algebra::{DimPoly, ExactScalar, RationalFunction};

/// `tr(W)` for a cyclic word, or the entry `W[row, col]` of an open one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceAtom {
    Trace(Vec<Letter>),
    Entry { word: Vec<Letter>, row: usize, col: usize },
}

impl TraceAtom {
    pub fn letters(&self) -> &[Letter] {
        match self {
            TraceAtom::Trace(w) => w,
            TraceAtom::Entry { word, .. } => word,
        }
    }
}

impl fmt::Display for TraceAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceAtom::Trace(w) => write!(f, "tr({})", render_word(w)),
            TraceAtom::Entry { word, row, col } if word.len() == 1 && !word[0].conj && !word[0].transposed => {
                write!(f, "{}[{},{}]", render_word(word), row, col)
            }
            TraceAtom::Entry { word, row, col } => write!(f, "({})[{},{}]", render_word(word), row, col),
        }
    }
}

/// What a raw atom simplifies to.
pub(crate) enum Reduced {
    Zero,
    /// `sign · d^free · atom`.
    Atom { sign: i32, free: usize, atom: Option<TraceAtom> },
}

/// Canonicalize an atom: cancel `J J`, fold empty traces to `d`, empty
/// entries to Kronecker deltas, and pick the canonical orientation.
pub(crate) fn reduce_atom(atom: TraceAtom) -> Reduced {
    match atom {
        TraceAtom::Trace(mut w) => {
            let sign = reduce_forms(&mut w, true);
            if w.is_empty() {
                return Reduced::Atom { sign, free: 1, atom: None };
            }
            if w.len() == 1 && w[0].kind == LetterKind::Form {
                return Reduced::Zero;
            }
            let (s, w) = canonical_cycle(&w);
            Reduced::Atom { sign: sign * s, free: 0, atom: Some(TraceAtom::Trace(w)) }
        }
        TraceAtom::Entry { mut word, row, col } => {
            let sign = reduce_forms(&mut word, false);
            if word.is_empty() {
                return if row == col { Reduced::Atom { sign, free: 0, atom: None } } else { Reduced::Zero };
            }
            let (s, word, row, col) = canonical_open(&word, row, col);
            Reduced::Atom { sign: sign * s, free: 0, atom: Some(TraceAtom::Entry { word, row, col }) }
        }
    }
}

/// `Σ c_t · Π atoms_t`, each `c_t` a rational function of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TraceExpr {
    terms: BTreeMap<Vec<TraceAtom>, RationalFunction>,
}

impl TraceExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: RationalFunction) -> Self {
        let mut t = Self::zero();
        t.add_term(c, Vec::new());
        t
    }

    /// A single term; atoms are canonicalized.
    pub fn term(c: RationalFunction, atoms: Vec<TraceAtom>) -> Self {
        let mut t = Self::zero();
        t.add_term(c, atoms);
        t
    }

    pub fn trace(word: Vec<Letter>) -> Self {
        Self::term(RationalFunction::one(), alloc::vec![TraceAtom::Trace(word)])
    }

    pub fn add_term(&mut self, c: RationalFunction, atoms: Vec<TraceAtom>) {
        let mut c = c;
        let mut key = Vec::with_capacity(atoms.len());
        let mut free = 0usize;
        for a in atoms {
            match reduce_atom(a) {
                Reduced::Zero => return,
                Reduced::Atom { sign, free: f, atom } => {
                    if sign < 0 {
                        c = -c;
                    }
                    free += f;
                    key.extend(atom);
                }
            }
        }
        if free > 0 {
            c = c.mul_poly(&DimPoly::monomial(ExactScalar::one(), free));
        }
        self.add_canonical(c, key);
    }

    /// Add a term whose atoms are already canonical.
    pub(crate) fn add_canonical(&mut self, c: RationalFunction, mut key: Vec<TraceAtom>) {
        if c.is_zero() {
            return;
        }
        key.sort();
        let slot = self.terms.entry(key).or_insert_with(RationalFunction::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<TraceAtom>, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no atoms remain.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// True when some atom contains a letter of the given kind.
    pub fn mentions(&self, kind: LetterKind) -> bool {
        self.terms.keys().flatten().any(|a| a.letters().iter().any(|l| l.kind == kind))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_canonical(v * c, k.clone());
        }
        out
    }

    /// Apply `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coeffs<E, F: FnMut(&RationalFunction) -> Result<RationalFunction, E>>(
        &self,
        mut f: F,
    ) -> Result<Self, E> {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_canonical(f(v)?, k.clone());
        }
        Ok(out)
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (atoms, c) in &self.terms {
            let t = render_term(c, atoms, var);
            if out.is_empty() {
                out = t;
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn render_atoms(atoms: &[TraceAtom]) -> String {
    let parts: Vec<String> = atoms.iter().map(|a| alloc::format!("{}", a)).collect();
    parts.join("*")
}

fn wrap(s: String) -> String {
    if s.contains(' ') {
        alloc::format!("({})", s)
    } else {
        s
    }
}

/// `c · atoms` with the coefficient folded in as naturally as possible.
pub(crate) fn render_term(c: &RationalFunction, atoms: &[TraceAtom], var: &str) -> String {
    if atoms.is_empty() {
        return c.render_infix(var);
    }
    let body = render_atoms(atoms);
    let num = c.numerator();
    let den = c.denominator();
    if num.is_constant() {
        let k = num.coeff(0);
        let lead = if k.is_one() {
            String::new()
        } else if (-k.clone()).is_one() {
            String::from("-")
        } else if k.is_real() {
            alloc::format!("{}*", k)
        } else {
            alloc::format!("({})*", k)
        };
        if den.is_one() {
            return alloc::format!("{}{}", lead, body);
        }
        return alloc::format!("{}{}/{}", lead, body, wrap(den.render(var)));
    }
    alloc::format!("{}*{}", wrap(c.render_infix(var)), body)
}

impl fmt::Display for TraceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("d"))
    }
}

impl core::ops::Add for &TraceExpr {
    type Output = TraceExpr;
    fn add(self, rhs: &TraceExpr) -> TraceExpr {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_canonical(v.clone(), k.clone());
        }
        out
    }
}

impl core::ops::Mul for &TraceExpr {
    type Output = TraceExpr;
    fn mul(self, rhs: &TraceExpr) -> TraceExpr {
        let mut out = TraceExpr::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                out.add_canonical(va * vb, k);
            }
        }
        out
    }
}

impl core::ops::Neg for &TraceExpr {
    type Output = TraceExpr;
    fn neg(self) -> TraceExpr {
        self.scale(&RationalFunction::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn c(n: &str) -> Letter {
        Letter::constant(n)
    }

    #[test]
    fn empty_trace_is_d_and_forms_vanish() {
        let t = TraceExpr::trace(Vec::new());
        assert_eq!(t.as_scalar().unwrap(), RationalFunction::var());
        assert!(TraceExpr::trace(vec![Letter::form()]).is_zero());
        // tr(J A J) = -tr(A) after J J = -I across the seam.
        let t = TraceExpr::trace(vec![Letter::form(), c("A"), Letter::form()]);
        assert_eq!(t.render("d"), "-tr(A)");
    }

    #[test]
    fn term_rendering() {
        let inv_d = RationalFunction::var().inv().unwrap();
        let t = TraceExpr::term(inv_d, vec![TraceAtom::Trace(vec![c("B")]), TraceAtom::Trace(vec![c("A")])]);
        assert_eq!(t.to_string(), "tr(A)*tr(B)/d");
        let e = TraceExpr::term(RationalFunction::from_int(2), vec![TraceAtom::Entry { word: vec![c("A")], row: 1, col: 2 }]);
        assert_eq!(e.to_string(), "2*A[1,2]");
        assert!(TraceExpr::term(RationalFunction::one(), vec![TraceAtom::Entry { word: vec![], row: 1, col: 2 }]).is_zero());
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let a = TraceExpr::trace(vec![c("A"), c("B")]);
        let b = TraceExpr::trace(vec![c("B"), c("A")]);
        let s = &a + &b;
        assert_eq!(s.len(), 1);
        assert!((&a + &(-&b)).is_zero());
    }
}
