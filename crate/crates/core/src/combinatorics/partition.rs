use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{DimPoly, ExactScalar};
use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Build from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Build from parts that must already be weakly decreasing and positive.
    pub fn from_sorted(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(alloc::format!("{:?} is not a partition", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(1^k)`.
    pub fn ones(k: usize) -> Self {
        Partition(alloc::vec![1; k])
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Hook length of every cell, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1) + (conj.0[j] - i - 1) + 1);
            }
        }
        out
    }

    /// Content `j - i` of every cell, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(j as i64 - i as i64);
            }
        }
        out
    }

    /// Multiplicity of each part size; index `j` holds the count of parts equal to `j`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = alloc::vec![0; self.0.first().map_or(1, |&p| p + 1)];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        f.write_str("]")
    }
}

/// All partitions of `k` in reverse lexicographic order (`[k]` first, `[1^k]` last).
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Number of standard Young tableaux of shape `λ`: `k! / ∏ hooks`.
pub fn irrep_dimension(lambda: &Partition) -> BigInt {
    let hooks: BigInt = lambda.hooks().into_iter().fold(BigInt::one(), |acc, h| acc * BigInt::from(h));
    factorial(lambda.size()) / hooks
}

/// `s_λ(1^d) = ∏ (d + c) / h` over the cells of `λ`.
pub fn schur_at_ones(lambda: &Partition) -> DimPoly {
    let mut p = DimPoly::one();
    for c in lambda.contents() {
        p = &p * &DimPoly::linear(c);
    }
    let hooks: BigInt = lambda.hooks().into_iter().fold(BigInt::one(), |acc, h| acc * BigInt::from(h));
    p.scale(&ExactScalar::ratio(BigInt::one(), hooks))
}

/// Size of the conjugacy class of cycle type `μ` in `S_k`: `k! / ∏ m_j! j^{m_j}`.
pub fn class_size(mu: &Partition) -> BigInt {
    let mut denom = BigInt::one();
    for (j, &m) in mu.multiplicities().iter().enumerate() {
        if m > 0 {
            denom *= factorial(m) * BigInt::from(j).pow(m as u32);
        }
    }
    factorial(mu.size()) / denom
}

/// `(2k - 1)!!`, the number of pair partitions of `2k` points.
pub fn double_factorial_odd(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}
