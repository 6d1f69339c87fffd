//! Counting transposition tuples directly on permutations.
//!
//! Tuples are built one transposition at a time. Prefixes that reach the same
//! product permutation and the same orbit partition of the sheets have
//! identical futures, so they are merged and counted with a multiplicity.
//! This is still an exact enumeration of tuples: no character theory enters.

use std::collections::HashMap;

use crate::{Error, Partition, Result};

type Perm = Vec<u8>;
/// Orbit label per sheet, normalized to first-occurrence order.
type Orbits = Vec<u8>;

pub(super) fn transpositions(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| ((a + 1)..k).map(move |b| (a, b))).collect()
}

fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Upper bound on steps: `d * #transpositions * k! * Bell(k)`.
pub(super) fn work_estimate(k: usize, d: usize) -> u128 {
    let perms: u128 = (1..=k as u128).product();
    let pairs = (k * k.saturating_sub(1) / 2) as u128;
    (d as u128)
        .saturating_mul(pairs.max(1))
        .saturating_mul(perms)
        .saturating_mul(bell(k))
}

pub(super) fn cycle_type(perm: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

fn merge_orbits(orbits: &[u8], a: usize, b: usize) -> Orbits {
    let (keep, drop) = (orbits[a], orbits[b]);
    let mut relabel = [u8::MAX; 256];
    let mut next = 0u8;
    orbits
        .iter()
        .map(|&o| {
            let o = if o == drop { keep } else { o };
            if relabel[o as usize] == u8::MAX {
                relabel[o as usize] = next;
                next += 1;
            }
            relabel[o as usize]
        })
        .collect()
}

/// Number of `d`-tuples of transpositions on `|mu|` sheets that generate a
/// transitive group and whose product `t_d ... t_1` has cycle type `mu`.
pub fn count_transitive_tuples(mu: &Partition, d: usize) -> Result<u128> {
    let k = mu.size();
    if k > 255 {
        return Err(Error::infeasible("brute-force sheets", 255u32, k as u128));
    }
    let pairs = transpositions(k);
    let identity: Perm = (0..k as u8).collect();
    let mut states: HashMap<(Perm, Orbits), u128> = HashMap::new();
    states.insert((identity.clone(), identity), 1);

    for _ in 0..d {
        let mut next: HashMap<(Perm, Orbits), u128> = HashMap::with_capacity(states.len());
        for ((perm, orbits), count) in &states {
            for &(a, b) in &pairs {
                // Apply the new transposition after the current product.
                let moved: Perm = perm
                    .iter()
                    .map(|&x| match x as usize {
                        x if x == a => b as u8,
                        x if x == b => a as u8,
                        x => x as u8,
                    })
                    .collect();
                let slot = next.entry((moved, merge_orbits(orbits, a, b))).or_insert(0);
                *slot = slot
                    .checked_add(*count)
                    .ok_or_else(|| Error::Consistency("tuple count overflowed u128".into()))?;
            }
        }
        states = next;
    }

    let target = mu.parts();
    let mut total: u128 = 0;
    for ((perm, orbits), count) in states {
        let transitive = orbits.iter().all(|&o| o == 0);
        if transitive && cycle_type(&perm) == target {
            total += count;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal enumeration of every tuple, with transitivity by breadth-first
    /// orbit search of the generated group.
    fn literal_count(mu: &Partition, d: usize) -> u128 {
        let k = mu.size();
        let pairs = transpositions(k);
        if pairs.is_empty() {
            return u128::from(d == 0 && mu.parts() == [1]);
        }
        let mut total = 0;
        let mut index = vec![0usize; d];
        loop {
            let mut perm: Vec<u8> = (0..k as u8).collect();
            for &i in &index {
                let (a, b) = pairs[i];
                for x in perm.iter_mut() {
                    if *x as usize == a {
                        *x = b as u8;
                    } else if *x as usize == b {
                        *x = a as u8;
                    }
                }
            }
            let mut reached = vec![false; k];
            reached[0] = true;
            let mut frontier = vec![0usize];
            while let Some(x) = frontier.pop() {
                for &i in &index {
                    let (a, b) = pairs[i];
                    let y = if x == a { b } else if x == b { a } else { continue };
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
            if reached.iter().all(|&r| r) && cycle_type(&perm) == mu.parts() {
                total += 1;
            }
            // Odometer increment.
            let mut pos = 0;
            loop {
                if pos == d {
                    return total;
                }
                index[pos] += 1;
                if index[pos] < pairs.len() {
                    break;
                }
                index[pos] = 0;
                pos += 1;
            }
        }
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn merged_states_match_literal_enumeration() {
        let cases: &[(&[usize], usize)] = &[
            (&[1, 1, 1], 4),
            (&[2, 1], 3),
            (&[3], 2),
            (&[3], 6),
            (&[2, 2], 4),
            (&[4], 3),
            (&[1, 1, 1, 1], 6),
            (&[2, 1, 1], 5),
            (&[2], 5),
        ];
        for &(mu, d) in cases {
            assert_eq!(count_transitive_tuples(&p(mu), d).unwrap(), literal_count(&p(mu), d), "{mu:?} d={d}");
        }
    }

    #[test]
    fn hand_counts() {
        // 27 identity-product 4-tuples on 3 sheets, 3 of them non-transitive.
        assert_eq!(count_transitive_tuples(&p(&[1, 1, 1]), 4).unwrap(), 24);
        assert_eq!(count_transitive_tuples(&p(&[2]), 3).unwrap(), 1);
        assert_eq!(count_transitive_tuples(&p(&[2, 1]), 3).unwrap(), 24);
        assert_eq!(count_transitive_tuples(&p(&[1]), 0).unwrap(), 1);
        assert_eq!(count_transitive_tuples(&p(&[1]), 2).unwrap(), 0);
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u128> = (0..7).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[1, 0, 2]), vec![2, 1]);
        assert_eq!(cycle_type(&[1, 2, 3, 0]), vec![4]);
    }
}
