use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{factorial, from_biguint, int};
use crate::symgroup::{character_value, content_eigenvalue, irrep_dimension, partitions_of, z_order};
use crate::{Partition, Rational};

/// Possibly disconnected count `(1/k!) #{r-tuples of transpositions with
/// product of cycle type mu}`, via the eigenvalues of the transposition class
/// sum:
///
/// `(1/z_mu) sum_lambda (dim lambda / k!) chi^lambda(mu) content(lambda)^r`.
pub fn frobenius_disconnected(mu: &Partition, r: usize) -> Rational {
    let k = mu.size();
    let mut sum = BigInt::zero();
    for lambda in partitions_of(k) {
        let content = content_eigenvalue(&lambda);
        if content == 0 && r > 0 {
            continue;
        }
        let chi = character_value(&lambda, mu).expect("same size");
        sum += BigInt::from(irrep_dimension(&lambda)) * chi * num_traits::pow(BigInt::from(content), r);
    }
    int(sum) / (from_biguint(&factorial(k)) * from_biguint(&z_order(mu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::brute::{cycle_type, transpositions};

    /// `(1/k!)` times the number of all transposition tuples whose product
    /// has type `mu`, connected or not, by walking permutations.
    fn walk_count(mu: &Partition, r: usize) -> Rational {
        use std::collections::HashMap;
        let k = mu.size();
        let mut states: HashMap<Vec<u8>, u128> = HashMap::new();
        states.insert((0..k as u8).collect(), 1);
        for _ in 0..r {
            let mut next = HashMap::new();
            for (perm, count) in &states {
                for (a, b) in transpositions(k) {
                    let moved: Vec<u8> = perm
                        .iter()
                        .map(|&x| if x as usize == a { b as u8 } else if x as usize == b { a as u8 } else { x })
                        .collect();
                    *next.entry(moved).or_insert(0) += count;
                }
            }
            states = next;
        }
        let total: u128 = states
            .into_iter()
            .filter(|(perm, _)| cycle_type(perm) == mu.parts())
            .map(|(_, c)| c)
            .sum();
        int(total) / from_biguint(&factorial(k))
    }

    #[test]
    fn matches_permutation_walk() {
        for k in 1..=5 {
            for mu in partitions_of(k) {
                for r in 0..=7 {
                    assert_eq!(frobenius_disconnected(&mu, r), walk_count(&mu, r), "{mu} r={r}");
                }
            }
        }
    }
}
