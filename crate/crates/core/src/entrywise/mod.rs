//! Integration of single monomials in matrix entries, one engine per measure family.

mod discrete;
mod pairs;
pub(crate) mod slots;
pub(crate) mod unitary;
pub(crate) mod wick;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{ExactScalar, RationalFunction};
use crate::error::{Error, Result};
use crate::measure::{Family, MeasureSpec};
use crate::weingarten::DimMode;
use slots::{Base, Half, Slot};
use unitary::{evaluate_unitary, UContraction};
use wick::{evaluate_wick, WickRule};

pub(crate) use pairs::partner_sign;

/// Default bound on the total degree `2k` of a moment.
pub const DEFAULT_DEGREE_LIMIT: usize = 12;

/// Engine configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest total degree `2k` accepted; larger moments fail fast.
    pub degree_limit: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_limit: DEFAULT_DEGREE_LIMIT }
    }
}

impl Options {
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_limit {
            Err(Error::DegreeTooLarge { degree, limit: self.degree_limit })
        } else {
            Ok(())
        }
    }
}

/// An entry index: a number, or a summation variable ranging over `1..=d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Fixed(usize),
    Sum(u32),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Fixed(i) => write!(f, "{}", i),
            Index::Sum(v) => write!(f, "_{}", v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialFactor {
    pub symbol: String,
    pub row: Index,
    pub col: Index,
    pub conjugated: bool,
}

impl MonomialFactor {
    pub fn new(symbol: &str, row: usize, col: usize, conjugated: bool) -> Self {
        MonomialFactor { symbol: symbol.into(), row: Index::Fixed(row), col: Index::Fixed(col), conjugated }
    }
}

impl fmt::Display for MonomialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugated {
            write!(f, "conj({}[{},{}])", self.symbol, self.row, self.col)
        } else {
            write!(f, "{}[{},{}]", self.symbol, self.row, self.col)
        }
    }
}

/// Coefficient times an ordered product of entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: ExactScalar,
    pub factors: Vec<MonomialFactor>,
}

impl Monomial {
    pub fn new(coeff: ExactScalar, factors: Vec<MonomialFactor>) -> Self {
        Monomial { coeff, factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    fn split_conj(&self) -> (Vec<&MonomialFactor>, Vec<&MonomialFactor>) {
        self.factors.iter().partition(|f| !f.conjugated)
    }

    fn max_var(&self) -> usize {
        self.factors
            .iter()
            .flat_map(|f| [f.row, f.col])
            .filter_map(|i| match i {
                Index::Sum(v) => Some(v as usize + 1),
                Index::Fixed(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn has_sums(&self) -> bool {
        self.max_var() > 0
    }

    fn fixed_pairs(&self, family: Family) -> Result<Vec<(usize, usize)>> {
        self.factors
            .iter()
            .map(|f| match (f.row, f.col) {
                (Index::Fixed(r), Index::Fixed(c)) => Ok((r, c)),
                _ => Err(Error::Unsupported(alloc::format!(
                    "{} moments need explicit indices; use a concrete dimension",
                    family
                ))),
            })
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for x in &self.factors {
            write!(f, "*{}", x)?;
        }
        Ok(())
    }
}

fn slot(i: Index) -> Slot {
    match i {
        Index::Fixed(x) => Slot::fixed(x as u32),
        Index::Sum(v) => Slot::var(v),
    }
}

fn check_indices(m: &Monomial, spec: &MeasureSpec) -> Result<()> {
    let n = spec.mode().concrete();
    for f in &m.factors {
        for (what, idx) in [("row", f.row), ("column", f.col)] {
            if let Index::Fixed(i) = idx {
                if i == 0 {
                    return Err(Error::InvalidIndex(alloc::format!("{} index of {} must be at least 1", what, f)));
                }
                if let Some(n) = n {
                    if i as i64 > n {
                        return Err(Error::InvalidIndex(alloc::format!(
                            "{} index {} of {} exceeds the dimension {}",
                            what,
                            i,
                            f,
                            n
                        )));
                    }
                }
            }
        }
        let width = match spec.family {
            Family::Stiefel => spec.extra,
            Family::Psi => Some(1),
            _ => None,
        };
        if let Some(k) = width {
            match f.col {
                Index::Fixed(c) if c > k => {
                    return Err(Error::InvalidIndex(alloc::format!(
                        "column index {} of {} exceeds the frame width {}",
                        c,
                        f,
                        k
                    )))
                }
                Index::Sum(_) => {
                    return Err(Error::Unsupported(alloc::format!("summed column index in {}", f)))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Total degree `2k` the engine for `family` works at.
fn engine_degree(m: &Monomial, family: Family) -> Option<usize> {
    match family {
        Family::Perm | Family::CPerm | Family::DiagU => None,
        Family::COE | Family::CSE => Some(2 * m.degree()),
        _ => Some(m.degree()),
    }
}

/// Integrate one monomial against `spec`. All factors are taken to be
/// entries of the measure's random matrix.
pub fn integrate_monomial(m: &Monomial, spec: &MeasureSpec, opts: &Options) -> Result<RationalFunction> {
    spec.validate()?;
    check_indices(m, spec)?;
    if let Some(deg) = engine_degree(m, spec.family) {
        opts.check_degree(deg)?;
    }
    let mode = spec.mode();
    match spec.family {
        Family::U | Family::CUE | Family::Stiefel | Family::Psi => integrate_unitary(m, mode),
        Family::SU => integrate_su(m, mode),
        Family::Design => integrate_design(m, mode, spec.extra.unwrap_or(1)),
        Family::O => integrate_orthogonal(m, mode),
        Family::Sp => integrate_symplectic(m, mode),
        Family::COE => integrate_coe(m, mode),
        Family::CSE => integrate_cse(m, mode),
        Family::Perm => integrate_permutation(m, mode),
        Family::CPerm => integrate_centered_permutation(m, mode),
        Family::DiagU => integrate_diag_unitary(m),
        Family::GUE => Ok(integrate_gaussian(m, mode, WickRule::Gue)),
        Family::GOE => Ok(integrate_gaussian(m, mode, WickRule::Goe)),
        Family::GinUE => Ok(integrate_gaussian(m, mode, WickRule::GinUe)),
        Family::GinOE => Ok(integrate_gaussian(m, mode, WickRule::GinOe)),
        Family::GSE | Family::GinSE => Err(Error::Unsupported(alloc::format!(
            "{} is defined through trace moments only; integrate a single trace such as tr(H^4)",
            spec.family
        ))),
    }
}

/// Haar unitary: `Σ_{σ,τ} δ_σ(rows) δ_τ(cols) Wg^U(στ⁻¹, d)`.
pub fn integrate_unitary(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    let mut c = UContraction::new(m.coeff.clone());
    c.n_base = m.max_var();
    for f in &m.factors {
        let e = (slot(f.row), slot(f.col));
        if f.conjugated {
            c.ubar.push(e);
        } else {
            c.u.push(e);
        }
    }
    evaluate_unitary(&c, mode)
}

/// Special unitary group: the unitary value on balanced monomials, zero otherwise.
///
/// Unbalanced `SU(d)` moments that survive through the determinant
/// constraint (e.g. `U_11 U_22` at `d = 2`) are outside this rule and come
/// back as zero.
pub fn integrate_su(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    integrate_unitary(m, mode)
}

/// Unitary `t`-design: Haar value up to balanced degree `t`, an error beyond.
pub fn integrate_design(m: &Monomial, mode: DimMode, t: usize) -> Result<RationalFunction> {
    let (u, ub) = m.split_conj();
    if u.len() != ub.len() {
        return Ok(RationalFunction::zero());
    }
    if u.len() > t {
        return Err(Error::BeyondDesignOrder { degree: u.len(), order: t });
    }
    integrate_unitary(m, mode)
}

/// Haar orthogonal: `Σ_{p,q} δ_p(rows) δ_q(cols) Wg^O(p, q, d)`; conjugation is ignored.
pub fn integrate_orthogonal(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    let rows: Vec<Slot> = m.factors.iter().map(|f| slot(f.row)).collect();
    let cols: Vec<Slot> = m.factors.iter().map(|f| slot(f.col)).collect();
    pairs::evaluate_orthogonal(&m.coeff, &rows, &cols, m.max_var(), mode)
}

/// Position of a user index in `C^{d/2} ⊗ C^2`. With symbolic `d` every
/// index is taken to lie in the first half.
fn sp_index(i: usize, mode: DimMode) -> pairs::SpIndex {
    match mode {
        DimMode::Concrete(n) if i as i64 > n / 2 => ((i as i64 - n / 2) as u32, true),
        _ => (i as u32, false),
    }
}

/// Haar symplectic `Sp(d)` (`d` even, `J = [[0, I], [-I, 0]]`).
///
/// Conjugated entries are rewritten with `conj(S)_{ij} = s(i) s(j) S_{i'j'}`,
/// where `i'` is the partner index in the other half and `s` is `+1` on the
/// first half, `-1` on the second.
pub fn integrate_symplectic(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    if let DimMode::Concrete(n) = mode {
        if n % 2 != 0 {
            return Err(Error::InvalidDimension(alloc::format!("Sp: dimensions must be even, got {}", n)));
        }
    }
    let pairs = m.fixed_pairs(Family::Sp)?;
    let mut coeff = m.coeff.clone();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for (f, &(r, c)) in m.factors.iter().zip(&pairs) {
        let (mut ri, mut ci) = (sp_index(r, mode), sp_index(c, mode));
        if f.conjugated {
            if ri.1 != ci.1 {
                coeff = -coeff;
            }
            ri.1 = !ri.1;
            ci.1 = !ci.1;
        }
        rows.push(ri);
        cols.push(ci);
    }
    pairs::evaluate_symplectic(&coeff, &rows, &cols, mode)
}

/// Circular orthogonal ensemble `S = U Uᵀ`: `S_ij = Σ_a U_ia U_ja`.
pub fn integrate_coe(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    let mut c = UContraction::new(m.coeff.clone());
    c.n_base = m.max_var();
    for f in &m.factors {
        let a = Slot::var(c.fresh_base());
        let (x, y) = ((slot(f.row), a), (slot(f.col), a));
        let side = if f.conjugated { &mut c.ubar } else { &mut c.u };
        side.push(x);
        side.push(y);
    }
    evaluate_unitary(&c, mode)
}

/// Circular symplectic ensemble `S = U J Uᵀ Jᵀ`:
/// `S_ij = s(j) Σ_b s(b) U_{ib} U_{j' b'}`, with indices in `C^{d/2} ⊗ C^2`.
pub fn integrate_cse(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    if let DimMode::Concrete(n) = mode {
        if n % 2 != 0 {
            return Err(Error::InvalidDimension(alloc::format!("CSE: dimensions must be even, got {}", n)));
        }
    }
    let mut c = UContraction::new(m.coeff.clone());
    c.split = true;
    let mut base_of: Vec<Option<(u32, u32)>> = alloc::vec![None; m.max_var()];
    let mut to_slot = |c: &mut UContraction, i: Index| -> Slot {
        match i {
            Index::Fixed(x) => {
                let (b, high) = sp_index(x, mode);
                Slot { base: Base::Fixed(b), half: if high { Half::High } else { Half::Low } }
            }
            Index::Sum(v) => {
                let (b, h) = *base_of[v as usize].get_or_insert_with(|| (c.fresh_base(), c.fresh_half()));
                Slot { base: Base::Var(b), half: Half::Var(h, false) }
            }
        }
    };
    for f in &m.factors {
        let i = to_slot(&mut c, f.row);
        let j = to_slot(&mut c, f.col);
        match j.half {
            Half::High => c.coeff = -c.coeff.clone(),
            Half::Var(h, _) => c.signs.push(h),
            _ => {}
        }
        let b = c.fresh_base();
        let h = c.fresh_half();
        c.signs.push(h);
        let inner = Slot { base: Base::Var(b), half: Half::Var(h, false) };
        let partner = Slot { base: Base::Var(b), half: Half::Var(h, true) };
        let jp = Slot { base: j.base, half: j.half.flip() };
        let side = if f.conjugated { &mut c.ubar } else { &mut c.u };
        side.push((i, inner));
        side.push((jp, partner));
    }
    evaluate_unitary(&c, mode)
}

/// Uniform permutation matrices.
pub fn integrate_permutation(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    Ok(discrete::permutation_moment(&m.fixed_pairs(Family::Perm)?, mode).scale(&m.coeff))
}

/// Centered permutations `Y = P - 1/d`.
pub fn integrate_centered_permutation(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    Ok(discrete::centered_permutation_moment(&m.fixed_pairs(Family::CPerm)?, mode).scale(&m.coeff))
}

/// Diagonal matrices of independent Haar phases.
pub fn integrate_diag_unitary(m: &Monomial) -> Result<RationalFunction> {
    let pairs = m.fixed_pairs(Family::DiagU)?;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (f, p) in m.factors.iter().zip(pairs) {
        if f.conjugated {
            b.push(p);
        } else {
            a.push(p);
        }
    }
    Ok(discrete::diagonal_unitary_moment(&a, &b).scale(&m.coeff))
}

/// Stiefel frames: the first `k` columns of a Haar unitary.
pub fn integrate_stiefel(m: &Monomial, mode: DimMode, width: usize) -> Result<RationalFunction> {
    let dim = match mode {
        DimMode::Symbolic => crate::measure::Dim::Symbolic("d".into()),
        DimMode::Concrete(n) => crate::measure::Dim::Concrete(n),
    };
    let spec = MeasureSpec::new(Family::Stiefel, dim, Some(width))?;
    check_indices(m, &spec)?;
    integrate_unitary(m, mode)
}

/// Haar-random pure state `ψ`, the first column of a Haar unitary.
pub fn integrate_pure_state(m: &Monomial, mode: DimMode) -> Result<RationalFunction> {
    integrate_stiefel(m, mode, 1)
}

pub(crate) fn integrate_gaussian(m: &Monomial, mode: DimMode, rule: WickRule) -> RationalFunction {
    let factors: Vec<wick::WickFactor> = m.factors.iter().map(|f| (slot(f.row), slot(f.col), f.conjugated)).collect();
    evaluate_wick(&m.coeff, &factors, m.max_var(), rule, mode)
}

/// Wick integration of a monomial (indices may be summed) for the
/// Gaussian and real/complex Ginibre families.
pub fn integrate_gaussian_monomial(m: &Monomial, family: Family, mode: DimMode) -> Result<RationalFunction> {
    let rule = match family {
        Family::GUE => WickRule::Gue,
        Family::GOE => WickRule::Goe,
        Family::GinUE => WickRule::GinUe,
        Family::GinOE => WickRule::GinOe,
        f => return Err(Error::Dispatch(alloc::format!("{} is not a Wick family", f))),
    };
    Ok(integrate_gaussian(m, mode, rule))
}

impl Monomial {
    /// True when some index is a summation variable.
    pub fn has_summed_indices(&self) -> bool {
        self.has_sums()
    }
}

#[cfg(test)]
mod tests;
