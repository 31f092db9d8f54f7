//! Matrix letters and words, with the canonical forms used for trace atoms.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    Constant,
    Haar,
    /// The symplectic form `J = [[0, I], [-I, 0]]`.
    Form,
    /// The first standard basis vector `e1` (a column; transposed, a row).
    Basis,
}

/// A matrix symbol with conjugation and transposition marks. The adjoint
/// carries both.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub kind: LetterKind,
    pub conj: bool,
    pub transposed: bool,
}

impl Letter {
    pub fn constant(name: &str) -> Self {
        Letter { name: name.into(), kind: LetterKind::Constant, conj: false, transposed: false }
    }

    pub fn haar(name: &str) -> Self {
        Letter { name: name.into(), kind: LetterKind::Haar, conj: false, transposed: false }
    }

    pub fn form() -> Self {
        Letter { name: "J".into(), kind: LetterKind::Form, conj: false, transposed: false }
    }

    pub fn basis() -> Self {
        Letter { name: "e1".into(), kind: LetterKind::Basis, conj: false, transposed: false }
    }

    pub fn adjoint(&self) -> Self {
        let real = matches!(self.kind, LetterKind::Form | LetterKind::Basis);
        Letter { conj: self.conj ^ !real, transposed: !self.transposed, ..self.clone() }
    }

    pub fn is_haar(&self) -> bool {
        self.kind == LetterKind::Haar
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.conj, self.transposed) {
            (false, false) => f.write_str(&self.name),
            (true, true) => write!(f, "{}'", self.name),
            (false, true) => write!(f, "{}^T", self.name),
            (true, false) => write!(f, "conj({})", self.name),
        }
    }
}

/// Transpose of a word: reversed, each letter transposed. `Jᵀ = -J`, so the
/// form keeps its plain mark and contributes a sign instead.
pub fn transpose_word(w: &[Letter]) -> (i32, Vec<Letter>) {
    let mut sign = 1;
    let out = w
        .iter()
        .rev()
        .map(|l| {
            if l.kind == LetterKind::Form {
                sign = -sign;
                l.clone()
            } else {
                Letter { transposed: !l.transposed, ..l.clone() }
            }
        })
        .collect();
    (sign, out)
}

/// Entrywise conjugate of a word; the form and the basis vector are real.
pub fn conj_word(w: &[Letter]) -> Vec<Letter> {
    w.iter()
        .map(|l| match l.kind {
            LetterKind::Form | LetterKind::Basis => l.clone(),
            _ => Letter { conj: !l.conj, ..l.clone() },
        })
        .collect()
}

pub fn adjoint_word(w: &[Letter]) -> (i32, Vec<Letter>) {
    transpose_word(&conj_word(w))
}

/// Cancel adjacent `J J = -I` pairs; `cyclic` also cancels across the seam.
pub fn reduce_forms(w: &mut Vec<Letter>, cyclic: bool) -> i32 {
    let mut sign = 1;
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w.drain(..) {
        if l.kind == LetterKind::Form && out.last().is_some_and(|p| p.kind == LetterKind::Form) {
            out.pop();
            sign = -sign;
        } else {
            out.push(l);
        }
    }
    if cyclic {
        while out.len() >= 2 && out[0].kind == LetterKind::Form && out[out.len() - 1].kind == LetterKind::Form {
            out.pop();
            out.remove(0);
            sign = -sign;
        }
    }
    *w = out;
    sign
}

fn key(w: &[Letter]) -> (usize, &[Letter]) {
    (w.iter().filter(|l| l.transposed).count(), w)
}

/// Least rotation of `w` and of its transpose, preferring fewer transposes.
/// Returns the sign picked up from transposing forms.
pub fn canonical_cycle(w: &[Letter]) -> (i32, Vec<Letter>) {
    let (tsign, tw) = transpose_word(w);
    let mut best: Option<(i32, Vec<Letter>)> = None;
    for (sign, base) in [(1, w), (tsign, &tw[..])] {
        for r in 0..base.len().max(1) {
            let mut cand: Vec<Letter> = base[r..].to_vec();
            cand.extend_from_slice(&base[..r]);
            let better = match &best {
                None => true,
                Some((_, b)) => key(&cand) < key(b),
            };
            if better {
                best = Some((sign, cand));
            }
        }
    }
    best.unwrap_or((1, Vec::new()))
}

/// Canonical orientation of an open word `W[i,j] = Wᵀ[j,i]`.
pub fn canonical_open(w: &[Letter], i: usize, j: usize) -> (i32, Vec<Letter>, usize, usize) {
    let (tsign, tw) = transpose_word(w);
    if (key(&tw), j, i) < (key(w), i, j) {
        (tsign, tw, j, i)
    } else {
        (1, w.to_vec(), i, j)
    }
}

pub fn render_word(w: &[Letter]) -> String {
    let mut s = String::new();
    for (i, l) in w.iter().enumerate() {
        if i > 0 {
            s.push('*');
        }
        s.push_str(&alloc::format!("{}", l));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(n: &str) -> Letter {
        Letter::constant(n)
    }

    #[test]
    fn rotation_and_reversal() {
        let (s, w) = canonical_cycle(&[c("C"), c("A"), c("B")]);
        assert_eq!((s, render_word(&w)), (1, "A*B*C".into()));
        // tr(Bᵀ Aᵀ) = tr(A B).
        let bt = Letter { transposed: true, ..c("B") };
        let at = Letter { transposed: true, ..c("A") };
        assert_eq!(render_word(&canonical_cycle(&[bt, at]).1), "A*B");
    }

    #[test]
    fn forms_cancel_with_sign() {
        let mut w = vec![Letter::form(), Letter::form(), c("A")];
        assert_eq!(reduce_forms(&mut w, true), -1);
        assert_eq!(render_word(&w), "A");
        let mut w = vec![Letter::form(), c("A"), Letter::form()];
        assert_eq!(reduce_forms(&mut w, true), -1);
        let mut w = vec![Letter::form(), c("A"), Letter::form()];
        assert_eq!(reduce_forms(&mut w, false), 1);
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn adjoint_marks() {
        let u = Letter::haar("U");
        assert_eq!(alloc::format!("{}", u.adjoint()), "U'");
        let (s, w) = adjoint_word(&[u.clone(), c("A")]);
        assert_eq!(s, 1);
        assert_eq!(render_word(&w), "A'*U'");
    }
}
