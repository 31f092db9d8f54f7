use alloc::vec::Vec;
use core::fmt;

use super::partition::Partition;
use crate::error::{Error, Result};

/// Permutation of `{0, .., k-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From zero-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidInput(alloc::format!("{:?} is not a permutation", images)));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From one-line notation on `{1, .., k}`.
    pub fn from_one_line(line: &[usize]) -> Result<Self> {
        if line.contains(&0) {
            return Err(Error::InvalidInput("one-line notation is one-based".into()));
        }
        Self::new(line.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(cycle_lengths(&self.images))
    }

    pub fn cycle_count(&self) -> usize {
        cycle_lengths(&self.images).len()
    }

    /// Minimal number of transpositions, `k - c(σ)`.
    pub fn length(&self) -> usize {
        self.len() - self.cycle_count()
    }
}

pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let mut seen = alloc::vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// All `k!` permutations in lexicographic order of their images.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next_permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_types() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(id.cycle_count(), 4);
        let dbl = Permutation::from_one_line(&[2, 1, 4, 3]).unwrap();
        assert_eq!(dbl.cycle_type().parts(), &[2, 2]);
        assert_eq!(dbl.cycle_count(), 2);
        let three = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(three.cycle_type().parts(), &[3]);
        assert_eq!(three.length(), 2);
    }

    #[test]
    fn enumeration() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let p = all_permutations(3);
        assert_eq!(p[0].images(), &[0, 1, 2]);
        assert_eq!(p[5].images(), &[2, 1, 0]);
    }

    #[test]
    fn composition_and_inverse() {
        for s in all_permutations(4) {
            assert_eq!(s.compose(&s.inverse()), Permutation::identity(4));
        }
        assert!(Permutation::new(alloc::vec![0, 0]).is_err());
    }
}
