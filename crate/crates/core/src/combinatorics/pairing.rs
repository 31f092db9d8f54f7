use alloc::vec::Vec;
use core::fmt;

use super::partition::Partition;
use crate::error::{Error, Result};

/// Perfect matching of `{1, .., 2k}`, stored canonically: each pair `(a, b)`
/// has `a < b` and pairs are sorted by first element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    /// Canonicalize an arbitrary list of one-based pairs covering `{1, .., 2k}`.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = 2 * pairs.len();
        let mut seen = alloc::vec![false; n + 1];
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            for x in [a, b] {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidInput(alloc::format!("element {} breaks the pair partition", x)));
                }
                seen[x] = true;
            }
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(PairPartition { pairs: canon })
    }

    /// From a zero-based partner array (`partner[partner[i]] == i`).
    pub(crate) fn from_partner(partner: &[usize]) -> Self {
        let pairs = (0..partner.len()).filter(|&i| i < partner[i]).map(|i| (i + 1, partner[i] + 1)).collect();
        PairPartition { pairs }
    }

    /// `{(1,2), (3,4), ..}`.
    pub fn standard(k: usize) -> Self {
        PairPartition { pairs: (0..k).map(|i| (2 * i + 1, 2 * i + 2)).collect() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs `k`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Zero-based partner array.
    pub fn partner(&self) -> Vec<usize> {
        let mut p = alloc::vec![0; 2 * self.pairs.len()];
        for &(a, b) in &self.pairs {
            p[a - 1] = b - 1;
            p[b - 1] = a - 1;
        }
        p
    }

    /// Sign of the permutation `[a1, b1, a2, b2, ..]` read off the canonical pairs.
    pub fn sign(&self) -> i32 {
        let word: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut inversions = 0usize;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if word[i] > word[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", a, b)?;
        }
        f.write_str("}")
    }
}

/// All `(2k-1)!!` pair partitions of `{1, .., two_k}`; the smallest free
/// element is always paired first, partners in increasing order.
pub fn pair_partitions(two_k: usize) -> Result<Vec<PairPartition>> {
    if !two_k.is_multiple_of(2) {
        return Err(Error::InvalidInput(alloc::format!("pair partitions need an even ground set, got {}", two_k)));
    }
    Ok(partner_arrays(two_k).iter().map(|p| PairPartition::from_partner(p)).collect())
}

/// All perfect matchings of `{0, .., n-1}` as partner arrays, same order as [`pair_partitions`].
pub(crate) fn partner_arrays(n: usize) -> Vec<Vec<usize>> {
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = partner.iter().position(|&x| x == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] != usize::MAX {
                continue;
            }
            partner[a] = b;
            partner[b] = a;
            rec(partner, out);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
    let mut out = Vec::new();
    rec(&mut alloc::vec![usize::MAX; n], &mut out);
    out
}

/// Half-lengths of the cycles of `p ∪ q` given as partner arrays.
pub(crate) fn loop_lengths(p: &[usize], q: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        loop {
            seen[i] = true;
            let j = p[i];
            seen[j] = true;
            len += 1;
            i = q[j];
            if i == start {
                break;
            }
        }
        out.push(len);
    }
    out
}

fn check_same_ground(p: &PairPartition, q: &PairPartition) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::InvalidInput(alloc::format!(
            "pair partitions over different ground sets ({} vs {} points)",
            2 * p.len(),
            2 * q.len()
        )));
    }
    Ok(())
}

/// Number of connected components of the multigraph `p ∪ q`.
pub fn loops(p: &PairPartition, q: &PairPartition) -> Result<usize> {
    check_same_ground(p, q)?;
    Ok(loop_lengths(&p.partner(), &q.partner()).len())
}

/// Loop type of `(p, q)`: the partition of `k` formed by the half-lengths of the loops.
pub fn loop_type(p: &PairPartition, q: &PairPartition) -> Result<Partition> {
    check_same_ground(p, q)?;
    Ok(Partition::new(loop_lengths(&p.partner(), &q.partner())))
}

/// A pair partition whose loop type against [`PairPartition::standard`] is `ν`.
pub fn loop_type_representative(nu: &Partition) -> PairPartition {
    let k = nu.size();
    let mut partner = alloc::vec![0; 2 * k];
    let mut start = 0;
    for &m in nu.parts() {
        // Elements start .. start + 2m; standard pairs (s, s+1); chain the
        // odd slots to the next block: (s+1, s+2), .., (s+2m-1, s).
        for j in 0..m {
            let a = start + 2 * j + 1;
            let b = if j + 1 == m { start } else { start + 2 * j + 2 };
            partner[a] = b;
            partner[b] = a;
        }
        start += 2 * m;
    }
    PairPartition::from_partner(&partner)
}
