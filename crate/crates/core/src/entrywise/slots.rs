//! Index slots and δ-constraint counting.
//!
//! An index slot is a base index (fixed, or a summed variable) plus, in a
//! space split as `C^{d/2} ⊗ C^2`, a half (low, high, or a summed bit).
//! A set of equality constraints between slots is counted by union-find:
//! a component pinned to two different fixed values kills the term, and
//! every free component contributes one factor of the base range.

use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Base {
    Fixed(u32),
    Var(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Half {
    /// Unsplit space.
    Plain,
    Low,
    High,
    /// Summed bit `h`, flipped when the flag is set.
    Var(u32, bool),
}

impl Half {
    pub(crate) fn flip(self) -> Half {
        match self {
            Half::Plain => Half::Plain,
            Half::Low => Half::High,
            Half::High => Half::Low,
            Half::Var(h, f) => Half::Var(h, !f),
        }
    }

    /// Concrete half under an assignment of the summed bits (`true` = high).
    fn resolve(self, bits: &[bool]) -> Option<bool> {
        match self {
            Half::Plain => None,
            Half::Low => Some(false),
            Half::High => Some(true),
            Half::Var(h, f) => Some(bits[h as usize] ^ f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Slot {
    pub base: Base,
    pub half: Half,
}

impl Slot {
    pub(crate) fn fixed(i: u32) -> Slot {
        Slot { base: Base::Fixed(i), half: Half::Plain }
    }

    pub(crate) fn var(v: u32) -> Slot {
        Slot { base: Base::Var(v), half: Half::Plain }
    }

    /// Two slots that can never be equal, whatever the summed variables do.
    pub(crate) fn clashes(&self, other: &Slot) -> bool {
        let base = matches!((self.base, other.base), (Base::Fixed(a), Base::Fixed(b)) if a != b);
        let half = matches!(
            (self.half, other.half),
            (Half::Low, Half::High) | (Half::High, Half::Low)
        ) || matches!((self.half, other.half), (Half::Var(a, f), Half::Var(b, g)) if a == b && f != g);
        base || half
    }

    pub(crate) fn base_var(&self) -> Option<u32> {
        match self.base {
            Base::Var(v) => Some(v),
            Base::Fixed(_) => None,
        }
    }

    pub(crate) fn half_var(&self) -> Option<u32> {
        match self.half {
            Half::Var(h, _) => Some(h),
            _ => None,
        }
    }
}

/// Variables (base and half) referenced by a list of slots.
pub(crate) fn vars_of<'a, I: IntoIterator<Item = &'a Slot>>(slots: I) -> (Vec<u32>, Vec<u32>) {
    let mut bases = Vec::new();
    let mut halves = Vec::new();
    for s in slots {
        if let Some(v) = s.base_var() {
            if !bases.contains(&v) {
                bases.push(v);
            }
        }
        if let Some(h) = s.half_var() {
            if !halves.contains(&h) {
                halves.push(h);
            }
        }
    }
    (bases, halves)
}

/// Union-find over base variables `0..n`.
pub(crate) struct Counter {
    parent: Vec<u32>,
    fixed: Vec<Option<u32>>,
}

impl Counter {
    pub(crate) fn new(n: usize) -> Self {
        Counter { parent: (0..n as u32).collect(), fixed: alloc::vec![None; n] }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn pin(&mut self, v: u32, value: u32) -> bool {
        let r = self.find(v) as usize;
        match self.fixed[r] {
            Some(x) => x == value,
            None => {
                self.fixed[r] = Some(value);
                true
            }
        }
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        self.parent[ra as usize] = rb;
        match (self.fixed[ra as usize], self.fixed[rb as usize]) {
            (Some(x), Some(y)) => x == y,
            (Some(x), None) => {
                self.fixed[rb as usize] = Some(x);
                true
            }
            _ => true,
        }
    }

    /// Impose `a == b`; returns false on a contradiction.
    pub(crate) fn equate(&mut self, a: &Slot, b: &Slot, bits: &[bool]) -> bool {
        if a.half.resolve(bits) != b.half.resolve(bits) {
            return false;
        }
        match (a.base, b.base) {
            (Base::Fixed(x), Base::Fixed(y)) => x == y,
            (Base::Var(v), Base::Fixed(x)) | (Base::Fixed(x), Base::Var(v)) => self.pin(v, x),
            (Base::Var(v), Base::Var(w)) => self.union(v, w),
        }
    }

    /// Free components among `vars`.
    pub(crate) fn free_components(&mut self, vars: &[u32]) -> usize {
        let mut roots: Vec<u32> = Vec::new();
        for &v in vars {
            let r = self.find(v);
            if self.fixed[r as usize].is_none() && !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.len()
    }
}

/// Signed histogram `Σ_e h[e] · range^e` of the assignments satisfying all
/// `constraints`, summed over the listed half bits with sign `∏ s(bit)` for
/// the bits in `signs` (`s(low) = 1`, `s(high) = -1`).
pub(crate) fn count_constraints(
    constraints: &[(Slot, Slot)],
    n_base: usize,
    bases: &[u32],
    halves: &[u32],
    signs: &[u32],
    n_half: usize,
) -> Vec<i128> {
    let mut hist: Vec<i128> = Vec::new();
    let mut bits = alloc::vec![false; n_half];
    let combos = 1u64 << halves.len();
    for mask in 0..combos {
        for (i, &h) in halves.iter().enumerate() {
            bits[h as usize] = (mask >> i) & 1 == 1;
        }
        let mut c = Counter::new(n_base);
        if !constraints.iter().all(|(a, b)| c.equate(a, b, &bits)) {
            continue;
        }
        let free = c.free_components(bases);
        let negative = signs.iter().filter(|&&h| bits[h as usize]).count() % 2 == 1;
        if hist.len() <= free {
            hist.resize(free + 1, 0);
        }
        hist[free] += if negative { -1 } else { 1 };
    }
    hist
}

/// `a ⊛ b` as histograms (convolution).
pub(crate) fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn add_into(acc: &mut Vec<i128>, h: &[i128]) {
    if acc.len() < h.len() {
        acc.resize(h.len(), 0);
    }
    for (a, x) in acc.iter_mut().zip(h) {
        *a += x;
    }
}

pub(crate) fn is_zero_hist(h: &[i128]) -> bool {
    h.iter().all(|&x| x == 0)
}
