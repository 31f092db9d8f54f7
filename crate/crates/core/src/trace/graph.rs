//! Haar averages of products of trace atoms by re-wiring letter slots.
//!
//! Every letter occupies two slots (its left and right index). Adjacent
//! letters tie their slots together. Integrating out the Haar letters joins
//! their row and column slots in pairs; what remains is a union of closed
//! cycles (traces of constant words, or a factor `d` when empty) and open
//! paths between fixed endpoints (entries of constant words).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::expr::{reduce_atom, Reduced, TraceAtom, TraceExpr};
use super::word::{Letter, LetterKind};
use crate::algebra::{ExactScalar, RationalFunction};
use crate::combinatorics::{all_permutations, cycle_lengths, loop_lengths, partner_arrays, Partition};
use crate::entrywise::partner_sign;
use crate::error::Result;
use crate::weingarten::{orthogonal_table, symplectic_table, unitary_table, DimMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Wiring {
    /// `U` entries pair with conjugated entries, rows by `σ`, columns by `τ`.
    Unitary,
    /// All occurrences pair among themselves, rows by `p`, columns by `q`.
    Orthogonal,
    /// As orthogonal, with a `J` inserted along every pair.
    Symplectic,
}

const NONE: usize = usize::MAX;

struct Layout {
    letters: Vec<Letter>,
    tie: Vec<usize>,
    /// Fixed index of each endpoint node, which follow the letter slots.
    endpoints: Vec<usize>,
    /// `(row slot, col slot)` of unconjugated and conjugated Haar letters.
    plain: Vec<(usize, usize)>,
    conj: Vec<(usize, usize)>,
    /// Closed words with no letters at all.
    empty_cycles: usize,
}

impl Layout {
    fn new(atoms: &[TraceAtom], real: bool) -> Layout {
        let mut l = Layout {
            letters: Vec::new(),
            tie: Vec::new(),
            endpoints: Vec::new(),
            plain: Vec::new(),
            conj: Vec::new(),
            empty_cycles: 0,
        };
        let n_letters: usize = atoms.iter().map(|a| a.letters().len()).sum();
        let n_ends = 2 * atoms.iter().filter(|a| matches!(a, TraceAtom::Entry { .. })).count();
        l.tie = alloc::vec![NONE; 2 * n_letters + n_ends];
        let mut next_end = 2 * n_letters;
        for a in atoms {
            let base = l.letters.len();
            let w = a.letters();
            l.letters.extend(w.iter().cloned());
            let n = w.len();
            for i in 0..n.saturating_sub(1) {
                l.link(2 * (base + i) + 1, 2 * (base + i + 1));
            }
            match a {
                TraceAtom::Trace(_) if n == 0 => l.empty_cycles += 1,
                TraceAtom::Trace(_) => l.link(2 * (base + n - 1) + 1, 2 * base),
                TraceAtom::Entry { row, col, .. } => {
                    let (s, e) = (next_end, next_end + 1);
                    next_end += 2;
                    l.endpoints.push(*row);
                    l.endpoints.push(*col);
                    if n == 0 {
                        l.link(s, e);
                    } else {
                        l.link(s, 2 * base);
                        l.link(2 * (base + n - 1) + 1, e);
                    }
                }
            }
        }
        for (t, letter) in l.letters.iter().enumerate() {
            if letter.is_haar() {
                let slots = if letter.transposed { (2 * t + 1, 2 * t) } else { (2 * t, 2 * t + 1) };
                if letter.conj && !real {
                    l.conj.push(slots);
                } else {
                    l.plain.push(slots);
                }
            }
        }
        l
    }

    fn link(&mut self, a: usize, b: usize) {
        self.tie[a] = b;
        self.tie[b] = a;
    }

    fn n_slots(&self) -> usize {
        2 * self.letters.len()
    }

    /// Cross the non-tie edge at `x`, emitting a letter into `word`.
    fn cross(&self, x: usize, join: &[usize], form: &[i8], word: &mut Vec<Letter>, sign: &mut i32) -> usize {
        let t = x / 2;
        let letter = &self.letters[t];
        if letter.is_haar() {
            match form[x] {
                1 => word.push(Letter::form()),
                -1 => {
                    word.push(Letter::form());
                    *sign = -*sign;
                }
                _ => {}
            }
            return join[x];
        }
        if x.is_multiple_of(2) {
            word.push(letter.clone());
        } else if letter.kind == LetterKind::Form {
            word.push(letter.clone());
            *sign = -*sign;
        } else {
            word.push(Letter { transposed: !letter.transposed, ..letter.clone() });
        }
        x ^ 1
    }

    /// Follow every cycle and path. `None` when some atom vanishes.
    fn close(&self, join: &[usize], form: &[i8], seen: &mut [bool]) -> Option<(i32, usize, Vec<TraceAtom>)> {
        seen.iter_mut().for_each(|s| *s = false);
        let ns = self.n_slots();
        let mut sign = 1;
        let mut free = self.empty_cycles;
        let mut atoms = Vec::new();
        let mut word = Vec::new();
        for e in 0..self.endpoints.len() {
            let start = ns + e;
            if seen[start] {
                continue;
            }
            seen[start] = true;
            word.clear();
            let mut cur = self.tie[start];
            while cur < ns {
                seen[cur] = true;
                let nxt = self.cross(cur, join, form, &mut word, &mut sign);
                seen[nxt] = true;
                cur = self.tie[nxt];
            }
            seen[cur] = true;
            let (i, j) = (self.endpoints[e], self.endpoints[cur - ns]);
            push_segments(&word, Some((i, j)), &mut sign, &mut free, &mut atoms)?;
        }
        for x in 0..ns {
            if seen[x] {
                continue;
            }
            word.clear();
            let mut cur = x;
            loop {
                seen[cur] = true;
                let nxt = self.cross(cur, join, form, &mut word, &mut sign);
                seen[nxt] = true;
                cur = self.tie[nxt];
                if cur == x {
                    break;
                }
            }
            push_segments(&word, None, &mut sign, &mut free, &mut atoms)?;
        }
        atoms.sort();
        Some((sign, free, atoms))
    }
}

/// Turn a traversed word into canonical atoms, splitting at basis vectors:
/// `e1ᵀ W e1 = W[1,1]`, `W e1 = W[·,1]` and `e1ᵀ W = W[1,·]`.
fn push_segments(
    word: &[Letter],
    ends: Option<(usize, usize)>,
    sign: &mut i32,
    free: &mut usize,
    atoms: &mut Vec<TraceAtom>,
) -> Option<()> {
    let mut push = |a: TraceAtom| -> Option<()> {
        match reduce_atom(a) {
            Reduced::Zero => None,
            Reduced::Atom { sign: s, free: f, atom } => {
                *sign *= s;
                *free += f;
                atoms.extend(atom);
                Some(())
            }
        }
    };
    let is_basis = |l: &Letter| l.kind == LetterKind::Basis;
    if !word.iter().any(is_basis) {
        return push(match ends {
            None => TraceAtom::Trace(word.to_vec()),
            Some((row, col)) => TraceAtom::Entry { word: word.to_vec(), row, col },
        });
    }
    let rotated: Vec<Letter> = match ends {
        Some(_) => word.to_vec(),
        None => {
            let r = word.iter().position(|l| is_basis(l) && l.transposed).unwrap_or(0);
            let mut w = word[r..].to_vec();
            w.extend_from_slice(&word[..r]);
            w
        }
    };
    let mut row = ends.map(|e| e.0);
    let mut seg = Vec::new();
    for l in rotated {
        if !is_basis(&l) {
            seg.push(l);
            continue;
        }
        if l.transposed {
            row = Some(1);
        } else if let Some(r) = row.take() {
            push(TraceAtom::Entry { word: core::mem::take(&mut seg), row: r, col: 1 })?;
        }
        seg.clear();
    }
    if let (Some(r), Some((_, col))) = (row, ends) {
        push(TraceAtom::Entry { word: seg, row: r, col })?;
    }
    Some(())
}

/// Accumulated `count · w(class) · d^free · atoms`.
type Tally = BTreeMap<(Vec<TraceAtom>, usize, usize), i64>;

fn record(tally: &mut Tally, r: Option<(i32, usize, Vec<TraceAtom>)>, class: usize, weight: i64) {
    if let Some((sign, free, atoms)) = r {
        *tally.entry((atoms, class, free)).or_insert(0) += weight * sign as i64;
    }
}

fn assemble(tally: Tally, values: &[RationalFunction], mode: DimMode, coeff: &RationalFunction) -> TraceExpr {
    let mut grouped: BTreeMap<Vec<TraceAtom>, RationalFunction> = BTreeMap::new();
    for ((atoms, class, free), c) in tally {
        if c == 0 {
            continue;
        }
        let term = values[class].mul_poly(&mode.power(free)).scale(&ExactScalar::from_int(BigInt::from(c)));
        let slot = grouped.entry(atoms).or_insert_with(RationalFunction::zero);
        *slot = &*slot + &term;
    }
    let mut out = TraceExpr::zero();
    for (atoms, c) in grouped {
        out.add_canonical(&c * coeff, atoms);
    }
    out
}

/// Haar average of `coeff · Π atoms`, where the atoms may contain Haar letters.
pub(crate) fn integrate_product(
    coeff: &RationalFunction,
    atoms: &[TraceAtom],
    wiring: Wiring,
    mode: DimMode,
) -> Result<TraceExpr> {
    let layout = Layout::new(atoms, wiring != Wiring::Unitary);
    let nodes = layout.tie.len();
    let mut join = alloc::vec![NONE; nodes];
    let mut form = alloc::vec![0i8; nodes];
    let mut seen = alloc::vec![false; nodes];
    let mut tally = Tally::new();
    match wiring {
        Wiring::Unitary => {
            let (a, b) = (&layout.plain, &layout.conj);
            if a.len() != b.len() {
                return Ok(TraceExpr::zero());
            }
            let k = a.len();
            let table = unitary_table(k, mode)?;
            let index: BTreeMap<Partition, usize> = table.iter().enumerate().map(|(i, (p, _))| (p.clone(), i)).collect();
            let values: Vec<RationalFunction> = table.into_iter().map(|(_, w)| w).collect();
            let perms = all_permutations(k);
            let mut st = alloc::vec![0usize; k];
            for s in &perms {
                for i in 0..k {
                    let (x, y) = (a[i].0, b[s.images()[i]].0);
                    join[x] = y;
                    join[y] = x;
                }
                for t in &perms {
                    for i in 0..k {
                        let (x, y) = (a[i].1, b[t.images()[i]].1);
                        join[x] = y;
                        join[y] = x;
                        // σ τ⁻¹
                        st[t.images()[i]] = s.images()[i];
                    }
                    let class = index[&Partition::new(cycle_lengths(&st))];
                    record(&mut tally, layout.close(&join, &form, &mut seen), class, 1);
                }
            }
            Ok(assemble(tally, &values, mode, coeff))
        }
        Wiring::Orthogonal | Wiring::Symplectic => {
            let occ = &layout.plain;
            let n = occ.len();
            if n % 2 == 1 {
                return Ok(TraceExpr::zero());
            }
            let k = n / 2;
            let sp = wiring == Wiring::Symplectic;
            let table: BTreeMap<Partition, RationalFunction> = if sp {
                symplectic_table(k, mode)?
            } else {
                orthogonal_table(k, mode)?.as_ref().clone()
            };
            let index: BTreeMap<Partition, usize> = table.keys().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            let values: Vec<RationalFunction> = table.into_values().collect();
            let pairs = partner_arrays(n);
            let wire = |p: &[usize], side: fn(&(usize, usize)) -> usize, join: &mut [usize], form: &mut [i8]| {
                for a in 0..n {
                    let (x, y) = (side(&occ[a]), side(&occ[p[a]]));
                    join[x] = y;
                    if sp {
                        form[x] = if a < p[a] { 1 } else { -1 };
                    }
                }
            };
            for p in &pairs {
                wire(p, |o| o.0, &mut join, &mut form);
                for q in &pairs {
                    wire(q, |o| o.1, &mut join, &mut form);
                    let lens = loop_lengths(p, q);
                    let loops = lens.len();
                    let class = index[&Partition::new(lens)];
                    let weight = if sp {
                        let s = partner_sign(p) * partner_sign(q);
                        if (k + loops).is_multiple_of(2) {
                            s as i64
                        } else {
                            -s as i64
                        }
                    } else {
                        1
                    };
                    record(&mut tally, layout.close(&join, &form, &mut seen), class, weight);
                }
            }
            Ok(assemble(tally, &values, mode, coeff))
        }
    }
}
