//! Partitions, pole profiles and symmetric-group character data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::factorial;
use crate::{Error, Result};

/// Weakly decreasing list of positive integers.
///
/// Labels a conjugacy class of the symmetric group on `size()` letters and,
/// equally, an unordered multiset of pole orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Parts must already be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `k`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `n`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each part value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Ordered pole orders `(k_1, .., k_n)`. Position `i` is the label of pole `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PoleProfile {
    orders: Vec<usize>,
}

impl PoleProfile {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::invalid("a pole profile needs at least one pole"));
        }
        if orders.contains(&0) {
            return Err(Error::invalid("pole orders must be positive"));
        }
        Ok(PoleProfile { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Total sheet count `k`.
    pub fn size(&self) -> usize {
        self.orders.iter().sum()
    }

    /// Number of poles `n`.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = self.orders.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

impl TryFrom<Vec<usize>> for PoleProfile {
    type Error = Error;

    fn try_from(orders: Vec<usize>) -> Result<Self> {
        PoleProfile::new(orders)
    }
}

impl From<PoleProfile> for Vec<usize> {
    fn from(p: PoleProfile) -> Self {
        p.orders
    }
}

impl From<&Partition> for PoleProfile {
    fn from(p: &Partition) -> Self {
        PoleProfile {
            orders: p.parts.clone(),
        }
    }
}

impl fmt::Display for PoleProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.orders.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

/// All partitions of `k` in lexicographically descending order:
/// `3 -> (3), (2,1), (1,1,1)`. `k = 0` yields the single empty partition.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(k, k, &mut current, &mut out);
    out
}

fn fill_partitions(rest: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

/// `#Aut(k_1..k_n)`: product of factorials of value multiplicities.
pub fn aut_count(profile: &PoleProfile) -> BigUint {
    profile
        .to_partition()
        .multiplicities()
        .values()
        .map(|&m| factorial(m))
        .product()
}

/// Centralizer order `z_mu = prod_i i^{m_i} m_i!`.
pub fn z_order(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .into_iter()
        .map(|(part, m)| num_traits::pow(BigUint::from(part), m) * factorial(m))
        .product()
}

/// Number of standard Young tableaux of shape `lambda`, by the hook-length formula.
pub fn irrep_dimension(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j - 1) + (conj.parts[j] - i - 1) + 1;
            hooks *= BigUint::from(hook);
        }
    }
    factorial(lambda.size()) / hooks
}

/// Sum of cell contents `j - i`. This is the eigenvalue of the sum of all
/// transpositions acting on the irreducible representation `lambda`.
pub fn content_eigenvalue(lambda: &Partition) -> i64 {
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &row)| (0..row).map(|j| j as i64 - i as i64).sum::<i64>())
        .sum()
}

type CharKey = (Vec<usize>, Vec<usize>);

fn character_memo() -> &'static RwLock<HashMap<CharKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<CharKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Irreducible character `chi^lambda` on the class `mu`, by the
/// Murnaghan–Nakayama rule.
///
/// Rim hooks are removed on the beta-set (first-column hook lengths) of
/// `lambda`: removing an `m`-hook moves one bead from `b` to `b - m`, with
/// sign `(-1)^(beads strictly between)`. Results are memoized process-wide.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::invalid(format!(
            "character of {lambda} (size {}) on class {mu} (size {})",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mn_recurse(&lambda.parts, &mu.parts))
}

fn mn_recurse(lambda: &[usize], mu: &[usize]) -> BigInt {
    let Some((&hook, rest)) = mu.split_first() else {
        return BigInt::one();
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = character_memo().read().unwrap().get(&key) {
        return v.clone();
    }

    let len = lambda.len();
    // Strictly decreasing beads.
    let beads: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for &bead in &beads {
        if bead < hook {
            continue;
        }
        let target = bead - hook;
        if beads.contains(&target) {
            continue;
        }
        let between = beads.iter().filter(|&&b| b > target && b < bead).count();
        let mut moved: Vec<usize> = beads.iter().map(|&b| if b == bead { target } else { b }).collect();
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let term = mn_recurse(&smaller, rest);
        if between % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }

    character_memo().write().unwrap().insert(key, total.clone());
    total
}
