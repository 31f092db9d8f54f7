//! Coordinate-free integration of trace polynomials in a Haar matrix and
//! constant matrices.

mod expr;
mod graph;
mod word;

use alloc::vec::Vec;

use num_bigint::BigInt;

pub use expr::{TraceAtom, TraceExpr};
pub use word::{adjoint_word, conj_word, transpose_word, Letter, LetterKind};

use crate::algebra::{DimPoly, ExactScalar, RationalFunction};
use crate::combinatorics::{irrep_dimension, partitions_of};
use crate::entrywise::{integrate_gaussian_monomial, Index, Monomial, MonomialFactor, Options};
use crate::error::{Error, Result};
use crate::measure::{Family, MeasureSpec};
use crate::weingarten::DimMode;
use graph::{integrate_product, Wiring};

/// `E|tr U|^{2k}` over `U(n)`: `Σ_{λ ⊢ k, ℓ(λ) ≤ n} (f^λ)²`.
///
/// The value is a step function of `n`, so a symbolic dimension is refused.
pub fn pure_trace_moment(k: usize, mode: DimMode) -> Result<BigInt> {
    let DimMode::Concrete(n) = mode else {
        return Err(Error::SymbolicDimension(
            "trace moments of a Haar unitary alone depend on d as a step function; give a concrete dimension".into(),
        ));
    };
    if n < 1 {
        return Err(Error::InvalidDimension(alloc::format!("dimension must be positive, got {}", n)));
    }
    Ok(partitions_of(k)
        .into_iter()
        .filter(|l| l.len() as i64 <= n)
        .map(|l| {
            let f = irrep_dimension(&l);
            &f * &f
        })
        .sum())
}

/// Integrate every term of `t` against `spec`. Letters of kind `Haar` are
/// the random matrix; everything else is constant.
pub fn trace_integrate(t: &TraceExpr, spec: &MeasureSpec, opts: &Options) -> Result<TraceExpr> {
    spec.validate()?;
    let mut out = TraceExpr::zero();
    for (atoms, c) in t.terms() {
        let r = integrate_term(c, atoms, spec, opts)?;
        out = &out + &r;
    }
    reduce_mode(&out, spec.mode())
}

/// At a concrete dimension every `d` left in a coefficient means that number.
fn reduce_mode(t: &TraceExpr, mode: DimMode) -> Result<TraceExpr> {
    t.try_map_coeffs(|c| mode.reduce_rf(c))
}

/// Closed forms for small patterns, tried before the generic engine:
/// `tr(U W1 U' W2) = tr(W1) tr(W2) / d` (either word may be empty) and
/// `E|tr U|^{2k}` at a concrete dimension.
pub fn library_lookup(t: &TraceExpr, spec: &MeasureSpec) -> Option<TraceExpr> {
    if !unitary_like(spec.family) {
        return None;
    }
    let mut out = TraceExpr::zero();
    for (atoms, c) in t.terms() {
        let (consts, haar): (Vec<TraceAtom>, Vec<TraceAtom>) = atoms.iter().cloned().partition(|a| !has_haar(a));
        let r = lookup_haar_part(&haar, spec.mode())?;
        let r = r.scale(c);
        out = &out + &(&r * &TraceExpr::term(RationalFunction::one(), consts));
    }
    reduce_mode(&out, spec.mode()).ok()
}

fn unitary_like(f: Family) -> bool {
    matches!(f, Family::U | Family::SU | Family::CUE | Family::Design)
}

fn has_haar(a: &TraceAtom) -> bool {
    a.letters().iter().any(Letter::is_haar)
}

fn is_plain(l: &Letter) -> bool {
    l.is_haar() && !l.conj && !l.transposed
}

fn is_dagger(l: &Letter) -> bool {
    l.is_haar() && l.conj && l.transposed
}

fn lookup_haar_part(haar: &[TraceAtom], mode: DimMode) -> Option<TraceExpr> {
    // |tr U|^{2k}
    if haar.iter().all(|a| matches!(a, TraceAtom::Trace(w) if w.len() == 1)) && !haar.is_empty() {
        let plain = haar.iter().filter(|a| is_plain(&a.letters()[0])).count();
        let dagger = haar.iter().filter(|a| is_dagger(&a.letters()[0])).count();
        if plain + dagger == haar.len() {
            if plain != dagger {
                return Some(TraceExpr::zero());
            }
            if let Ok(v) = pure_trace_moment(plain, mode) {
                return Some(TraceExpr::scalar(RationalFunction::from_scalar(ExactScalar::from_int(v))));
            }
        }
        return None;
    }
    let [TraceAtom::Trace(w)] = haar else {
        return None;
    };
    let haar_pos: Vec<usize> = (0..w.len()).filter(|&i| w[i].is_haar()).collect();
    let [i, j] = haar_pos[..] else {
        return None;
    };
    let (u, ud) = if is_plain(&w[i]) && is_dagger(&w[j]) {
        (i, j)
    } else if is_dagger(&w[i]) && is_plain(&w[j]) {
        (j, i)
    } else {
        return None;
    };
    let n = w.len();
    let between = |a: usize, b: usize| -> Vec<Letter> {
        let mut out = Vec::new();
        let mut x = (a + 1) % n;
        while x != b {
            out.push(w[x].clone());
            x = (x + 1) % n;
        }
        out
    };
    let w1 = between(u, ud);
    let w2 = between(ud, u);
    let inv_d = RationalFunction::normalize_nonzero(DimPoly::one(), mode.power(1));
    Some(TraceExpr::term(inv_d, alloc::vec![TraceAtom::Trace(w1), TraceAtom::Trace(w2)]))
}

/// Remove adjacent `X X⁻¹` pairs of Haar letters.
fn cancel_inverses(w: &mut Vec<Letter>, cyclic: bool, inverse: &dyn Fn(&Letter) -> Letter) {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w.drain(..) {
        if l.is_haar() && out.last().is_some_and(|p| p.is_haar() && inverse(p) == l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    if cyclic {
        while out.len() >= 2 && out[0].is_haar() && inverse(&out[out.len() - 1]) == out[0] {
            out.pop();
            out.remove(0);
        }
    }
    *w = out;
}

fn map_words(atoms: &[TraceAtom], mut f: impl FnMut(&mut Vec<Letter>, bool)) -> Vec<TraceAtom> {
    atoms
        .iter()
        .map(|a| match a {
            TraceAtom::Trace(w) => {
                let mut w = w.clone();
                f(&mut w, true);
                TraceAtom::Trace(w)
            }
            TraceAtom::Entry { word, row, col } => {
                let mut w = word.clone();
                f(&mut w, false);
                TraceAtom::Entry { word: w, row: *row, col: *col }
            }
        })
        .collect()
}

/// Replace each Haar letter by a word in a new Haar letter; returns the sign.
fn substitute(atoms: &[TraceAtom], expand: &dyn Fn(&Letter) -> (i32, Vec<Letter>)) -> (i32, Vec<TraceAtom>) {
    let mut sign = 1;
    let out = map_words(atoms, |w, _| {
        let mut nw = Vec::with_capacity(w.len());
        for l in w.iter() {
            if l.is_haar() {
                let (s, sub) = expand(l);
                sign *= s;
                nw.extend(sub);
            } else {
                nw.push(l.clone());
            }
        }
        *w = nw;
    });
    (sign, out)
}

/// Apply the conjugation/transposition marks of `l` to a base word.
fn dress(l: &Letter, base: Vec<Letter>, base_sign: i32) -> (i32, Vec<Letter>) {
    let w = if l.conj { conj_word(&base) } else { base };
    if l.transposed {
        let (s, w) = transpose_word(&w);
        (base_sign * s, w)
    } else {
        (base_sign, w)
    }
}

fn haar_count(atoms: &[TraceAtom]) -> (usize, usize) {
    let mut plain = 0;
    let mut conj = 0;
    for l in atoms.iter().flat_map(|a| a.letters()) {
        if l.is_haar() {
            if l.conj {
                conj += 1;
            } else {
                plain += 1;
            }
        }
    }
    (plain, conj)
}

fn integrate_term(c: &RationalFunction, atoms: &[TraceAtom], spec: &MeasureSpec, opts: &Options) -> Result<TraceExpr> {
    let (consts, haar): (Vec<TraceAtom>, Vec<TraceAtom>) = atoms.iter().cloned().partition(|a| !has_haar(a));
    let names: Vec<&str> = haar.iter().flat_map(|a| a.letters()).filter(|l| l.is_haar()).map(|l| l.name.as_str()).collect();
    if names.windows(2).any(|p| p[0] != p[1]) {
        return Err(Error::Dispatch("one random matrix per integral".into()));
    }
    let r = integrate_haar_part(&haar, spec, opts)?;
    Ok(&r.scale(c) * &TraceExpr::term(RationalFunction::one(), consts))
}

fn integrate_haar_part(haar: &[TraceAtom], spec: &MeasureSpec, opts: &Options) -> Result<TraceExpr> {
    let mode = spec.mode();
    let family = spec.family;
    if haar.is_empty() {
        return Ok(TraceExpr::scalar(RationalFunction::one()));
    }
    let adjoint = |l: &Letter| l.adjoint();
    let one = RationalFunction::one();
    match family {
        Family::U | Family::SU | Family::CUE | Family::Design | Family::Psi => {
            let atoms = if family == Family::Psi {
                // ψ = U e1
                substitute(haar, &|l| dress(l, alloc::vec![Letter::haar("U"), Letter::basis()], 1)).1
            } else {
                map_words(haar, |w, cyc| cancel_inverses(w, cyc, &adjoint))
            };
            let (p, q) = haar_count(&atoms);
            if p != q {
                return Ok(TraceExpr::zero());
            }
            if let Family::Design = family {
                let t = spec.extra.unwrap_or(1);
                if p > t {
                    return Err(Error::BeyondDesignOrder { degree: p, order: t });
                }
            }
            opts.check_degree(2 * p)?;
            let e = TraceExpr::term(one.clone(), atoms.clone());
            if family != Family::Psi {
                if let Some(hit) = library_lookup(&e, spec) {
                    return Ok(hit);
                }
                refuse_step_function(&atoms, p, mode)?;
            }
            integrate_canonical(&e, Wiring::Unitary, mode)
        }
        Family::O => {
            let real: Vec<TraceAtom> = map_words(haar, |w, cyc| {
                for l in w.iter_mut().filter(|l| l.is_haar()) {
                    l.conj = false;
                }
                cancel_inverses(w, cyc, &|l: &Letter| Letter { transposed: !l.transposed, ..l.clone() });
            });
            let (p, _) = haar_count(&real);
            opts.check_degree(p)?;
            refuse_step_function(&real, p / 2, mode)?;
            integrate_canonical(&TraceExpr::term(one, real), Wiring::Orthogonal, mode)
        }
        Family::Sp => {
            let atoms = map_words(haar, |w, cyc| cancel_inverses(w, cyc, &adjoint));
            // conj(U) = J U Jᵀ = -J U J
            let (sign, atoms) = substitute(&atoms, &|l| {
                if l.conj {
                    let base = alloc::vec![Letter::form(), Letter::haar(&l.name), Letter::form()];
                    dress(&Letter { conj: false, ..l.clone() }, base, -1)
                } else {
                    (1, alloc::vec![l.clone()])
                }
            });
            let (p, _) = haar_count(&atoms);
            opts.check_degree(p)?;
            refuse_step_function(&atoms, p / 2, mode)?;
            integrate_canonical(&TraceExpr::term(RationalFunction::from_int(sign as i64), atoms), Wiring::Symplectic, mode)
        }
        Family::COE | Family::CSE => {
            let atoms = map_words(haar, |w, cyc| cancel_inverses(w, cyc, &adjoint));
            let cse = family == Family::CSE;
            let (sign, atoms) = substitute(&atoms, &|l| {
                let u = Letter::haar("U");
                let ut = Letter { transposed: true, ..u.clone() };
                if cse {
                    // S = U J Uᵀ Jᵀ = -U J Uᵀ J
                    dress(l, alloc::vec![u, Letter::form(), ut, Letter::form()], -1)
                } else {
                    dress(l, alloc::vec![u, ut], 1)
                }
            });
            let (p, q) = haar_count(&atoms);
            if p != q {
                return Ok(TraceExpr::zero());
            }
            opts.check_degree(2 * p)?;
            refuse_step_function(&atoms, p, mode)?;
            integrate_canonical(&TraceExpr::term(RationalFunction::from_int(sign as i64), atoms), Wiring::Unitary, mode)
        }
        Family::GUE | Family::GOE | Family::GinUE | Family::GinOE => gaussian(haar, family, mode, opts),
        Family::GSE | Family::GinSE => {
            let [TraceAtom::Trace(w)] = haar else {
                return Err(Error::Unsupported(alloc::format!(
                    "{} is defined through single trace moments tr(H^k) only",
                    family
                )));
            };
            let k = w.len();
            if k % 2 == 1 {
                return Ok(TraceExpr::zero());
            }
            let real = if family == Family::GSE { Family::GOE } else { Family::GinOE };
            let r = gaussian(haar, real, DimMode::Symbolic, opts)?;
            let r = r.as_scalar().expect("pure Gaussian traces are scalars");
            // ⟨tr H^k⟩(d) = (-1)^{k/2+1} ⟨tr H^k⟩_real(-d)
            let r = r.negate_var();
            let r = if (k / 2 + 1) % 2 == 0 { r } else { -r };
            Ok(TraceExpr::scalar(mode.reduce_rf(&r)?))
        }
        Family::Perm | Family::CPerm | Family::DiagU | Family::Stiefel => Err(Error::Unsupported(alloc::format!(
            "trace inputs are not available for {}; write the entries explicitly",
            family
        ))),
    }
}

/// Words made of the Haar letter alone are step functions of `d` beyond
/// first order.
fn refuse_step_function(atoms: &[TraceAtom], k: usize, mode: DimMode) -> Result<()> {
    let pure = atoms.iter().all(|a| matches!(a, TraceAtom::Trace(_)) && a.letters().iter().all(Letter::is_haar));
    if pure && k >= 2 && mode == DimMode::Symbolic {
        return Err(Error::SymbolicDimension(
            "trace moments of a Haar matrix alone depend on d as a step function; give a concrete dimension".into(),
        ));
    }
    Ok(())
}

fn integrate_canonical(e: &TraceExpr, wiring: Wiring, mode: DimMode) -> Result<TraceExpr> {
    let mut out = TraceExpr::zero();
    for (atoms, c) in e.terms() {
        out = &out + &integrate_product(c, atoms, wiring, mode)?;
    }
    Ok(out)
}

/// Gaussian words: write out the index sums and apply Wick's rule.
fn gaussian(haar: &[TraceAtom], family: Family, mode: DimMode, opts: &Options) -> Result<TraceExpr> {
    let mut factors = Vec::new();
    let mut next = 0u32;
    for a in haar {
        let w = a.letters();
        if w.iter().any(|l| !l.is_haar()) {
            return Err(Error::Unsupported(alloc::format!(
                "{}: constant matrices inside traces are not supported; use the Haar families",
                family
            )));
        }
        let n = w.len();
        let first = next;
        next += n as u32;
        let idx = |i: usize| -> Index {
            match a {
                TraceAtom::Trace(_) => Index::Sum(first + (i % n) as u32),
                TraceAtom::Entry { row, col, .. } => {
                    if i == 0 {
                        Index::Fixed(*row)
                    } else if i == n {
                        Index::Fixed(*col)
                    } else {
                        Index::Sum(first + i as u32)
                    }
                }
            }
        };
        for (i, l) in w.iter().enumerate() {
            let (r, c) = (idx(i), idx(i + 1));
            let (row, col) = if l.transposed { (c, r) } else { (r, c) };
            factors.push(MonomialFactor { symbol: l.name.clone(), row, col, conjugated: l.conj });
        }
    }
    let m = Monomial::new(ExactScalar::one(), factors);
    opts.check_degree(m.degree())?;
    Ok(TraceExpr::scalar(integrate_gaussian_monomial(&m, family, mode)?))
}

/// `E[M]` entry by entry, for a matrix expression `Σ c · W` at a concrete dimension.
pub fn matrix_integrate(
    m: &[(ExactScalar, Vec<Letter>)],
    spec: &MeasureSpec,
    opts: &Options,
) -> Result<Vec<Vec<TraceExpr>>> {
    spec.validate()?;
    let DimMode::Concrete(n) = spec.mode() else {
        return Err(Error::SymbolicDimension(
            "matrix-valued results need a concrete dimension; scalarize the expression first (take a trace or an entry)"
                .into(),
        ));
    };
    let n = n as usize;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let mut t = TraceExpr::zero();
            for (c, w) in m {
                t.add_term(RationalFunction::from_scalar(c.clone()), alloc::vec![TraceAtom::Entry { word: w.clone(), row: i, col: j }]);
            }
            row.push(trace_integrate(&t, spec, opts)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Partial trace of a `(dA·dB) × (dA·dB)` matrix over subsystem 1 or 2,
/// with `(a, b) ↦ a·dB + b`.
pub fn partial_trace<T: Clone>(
    m: &[Vec<T>],
    dims: (usize, usize),
    subsystem: usize,
    add: impl Fn(&T, &T) -> T,
) -> Result<Vec<Vec<T>>> {
    let (da, db) = dims;
    let n = da * db;
    if da == 0 || db == 0 || m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(alloc::format!(
            "partial trace: expected a {}x{} matrix for dims ({}, {})",
            n,
            n,
            da,
            db
        )));
    }
    let sum = |cells: &mut dyn Iterator<Item = &T>| -> T {
        let first = cells.next().expect("nonempty subsystem").clone();
        cells.fold(first, |acc, x| add(&acc, x))
    };
    match subsystem {
        1 => Ok((0..db)
            .map(|b| (0..db).map(|b2| sum(&mut (0..da).map(|a| &m[a * db + b][a * db + b2]))).collect())
            .collect()),
        2 => Ok((0..da)
            .map(|a| (0..da).map(|a2| sum(&mut (0..db).map(|b| &m[a * db + b][a2 * db + b]))).collect())
            .collect()),
        s => Err(Error::InvalidInput(alloc::format!("partial trace: subsystem must be 1 or 2, got {}", s))),
    }
}
