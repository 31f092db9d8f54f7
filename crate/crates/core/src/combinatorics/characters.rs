use alloc::vec::Vec;

use super::partition::Partition;
use crate::cache::Memo;
use crate::error::{Error, Result};

static CHARACTERS: Memo<(Partition, Partition), i64> = Memo::new();

pub(crate) fn clear_cache() {
    CHARACTERS.clear();
}

/// Irreducible character `χ_λ(μ)` of the symmetric group, by the
/// Murnaghan–Nakayama rule.
///
/// Border strips are removed on the beta-set (abacus) of `λ`: a strip of
/// length `r` is a bead moved from `b` to a free position `b - r`, with sign
/// `(-1)^(beads strictly between)`. The largest part of `μ` is consumed
/// first, and every intermediate `(λ, μ)` pair is memoized.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidInput(alloc::format!(
            "character needs partitions of equal size, got {} and {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(character(lambda, mu.parts()))
}

fn character(lambda: &Partition, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    if lambda.len() <= 1 {
        // Trivial character.
        return 1;
    }
    let key = (lambda.clone(), Partition::new(mu.to_vec()));
    if let Some(v) = CHARACTERS.get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + (len - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = next.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
        let sub = character(&Partition::new(parts), rest);
        if between % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    CHARACTERS.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{class_size, factorial, irrep_dimension, partitions_of};
    use num_bigint::BigInt;

    fn part(p: &[usize]) -> Partition {
        Partition::from_sorted(p.to_vec()).unwrap()
    }

    #[test]
    fn small_table_entries() {
        for mu in partitions_of(4) {
            assert_eq!(mn_character(&part(&[4]), &mu).unwrap(), 1);
        }
        assert_eq!(mn_character(&part(&[1, 1]), &part(&[2])).unwrap(), -1);
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert_eq!(mn_character(&part(&[2, 2]), &part(&[2, 2])).unwrap(), 2);
        assert_eq!(mn_character(&part(&[3, 1, 1]), &part(&[5])).unwrap(), 1);
    }

    #[test]
    fn size_mismatch_rejected() {
        assert!(mn_character(&part(&[2]), &part(&[1])).is_err());
    }

    #[test]
    fn identity_class_gives_dimension() {
        for k in 1..=7 {
            for l in partitions_of(k) {
                assert_eq!(BigInt::from(mn_character(&l, &Partition::ones(k)).unwrap()), irrep_dimension(&l));
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for k in 1..=6 {
            let ps = partitions_of(k);
            for l in &ps {
                for n in &ps {
                    let s: BigInt = ps
                        .iter()
                        .map(|mu| {
                            class_size(mu) * mn_character(l, mu).unwrap() * mn_character(n, mu).unwrap()
                        })
                        .sum();
                    let expect = if l == n { factorial(k) } else { BigInt::from(0) };
                    assert_eq!(s, expect, "{:?} {:?}", l, n);
                }
            }
        }
    }
}
