//! Connected Hurwitz numbers by three independent methods.
//!
//! Normalization: `h_{g;mu} = (1/k!) * #{(t_1, .., t_d)}` where each `t_i` is
//! a transposition of the `k` sheets, the tuple generates a transitive group,
//! and the product `t_d ... t_1` (right-to-left application) has cycle type
//! `mu`. Here `d = k + n + 2g - 2`. Coverings with automorphisms therefore
//! contribute fractionally, e.g. `h_{1;2} = 1/2`.

mod brute;
mod cutjoin;
mod frobenius;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, factorial, from_biguint, int};
use crate::symgroup::aut_count;
use crate::{Error, Partition, PoleProfile, Rational, Result};

pub use brute::count_transitive_tuples;
pub use cutjoin::{cut_and_join_layer, PSeriesLayer};
pub use frobenius::frobenius_disconnected;

/// Number of simple branch points `d = k + n + 2g - 2`.
pub fn ramification_count(genus: usize, profile: &PoleProfile) -> Result<usize> {
    let total = profile.size() + profile.len() + 2 * genus;
    total
        .checked_sub(2)
        .ok_or_else(|| Error::invalid(format!("negative ramification count for g={genus}, profile {profile}")))
}

/// Genus implied by `r` transpositions on a connected covering with poles `mu`,
/// or `None` when `r - k - n + 2` is odd or negative.
pub fn implied_genus(mu: &Partition, transpositions: usize) -> Option<usize> {
    let doubled = transpositions as i64 - mu.size() as i64 - mu.len() as i64 + 2;
    (doubled >= 0 && doubled % 2 == 0).then_some((doubled / 2) as usize)
}

/// `d! k^{n-3} prod(k_i^{k_i}/k_i!) / #Aut`, the genus-zero specialization.
pub fn genus_zero_closed_form(profile: &PoleProfile) -> Result<Rational> {
    let d = ramification_count(0, profile)?;
    let k = profile.size();
    let n = profile.len() as i64;
    let mut value = from_biguint(&factorial(d)) * rational::pow(&int(k), n - 3);
    for &ki in profile.orders() {
        value *= int(num_traits::pow(BigInt::from(ki), ki)) / from_biguint(&factorial(ki));
    }
    Ok(value / from_biguint(&aut_count(profile)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Frobenius,
    #[serde(rename = "cutjoin")]
    CutJoin,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Brute, Engine::Frobenius, Engine::CutJoin];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Frobenius => "frobenius",
            Engine::CutJoin => "cutjoin",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown engine {s:?}")))
    }
}

/// Work limits. Exceeding any of them is an [`Error::Infeasible`], never a
/// silent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub brute_max_sheets: usize,
    /// Limit on `d * #transpositions * #states` for the brute-force engine.
    pub brute_max_work: u128,
    pub frobenius_max_sheets: usize,
    pub max_transpositions: usize,
    pub cut_join_max_weight: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            brute_max_sheets: 5,
            brute_max_work: 100_000_000,
            frobenius_max_sheets: 10,
            max_transpositions: 40,
            cut_join_max_weight: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HurwitzKey {
    pub g: usize,
    pub mu: Partition,
}

impl HurwitzKey {
    pub fn new(g: usize, mu: Partition) -> Self {
        HurwitzKey { g, mu }
    }

    pub fn transpositions(&self) -> usize {
        self.mu.size() + self.mu.len() + 2 * self.g - 2
    }
}

impl fmt::Display for HurwitzKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} mu={}", self.g, self.mu)
    }
}

/// Computed Hurwitz numbers with the engine that produced each one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HurwitzTable {
    entries: BTreeMap<HurwitzKey, (Rational, Engine)>,
}

impl HurwitzTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects values that are not a tuple count divided by `k!`.
    pub fn insert(&mut self, key: HurwitzKey, value: Rational, engine: Engine) -> Result<()> {
        check_normalization(&key.mu, &value)?;
        self.entries.insert(key, (value, engine));
        Ok(())
    }

    pub fn get(&self, key: &HurwitzKey) -> Option<&(Rational, Engine)> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HurwitzKey, &(Rational, Engine))> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `h * k!` must be a nonnegative integer.
pub fn check_normalization(mu: &Partition, value: &Rational) -> Result<()> {
    let scaled = value * from_biguint(&factorial(mu.size()));
    if scaled.is_integer() && !scaled.is_negative() {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "h for {mu} is {value}, which is not a tuple count over {}!",
            mu.size()
        )))
    }
}

/// The three engines behind shared work bounds and memo tables.
///
/// Memo tables sit behind locks, so one instance can serve concurrent callers;
/// values never depend on evaluation order.
#[derive(Debug, Default)]
pub struct HurwitzEngines {
    bounds: Bounds,
    disconnected: RwLock<HashMap<(Partition, usize), Rational>>,
    labeled: RwLock<HashMap<(Partition, usize), Rational>>,
    layers: Mutex<Vec<PSeriesLayer>>,
}

impl HurwitzEngines {
    pub fn new(bounds: Bounds) -> Self {
        HurwitzEngines {
            bounds,
            ..Default::default()
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn compute(&self, engine: Engine, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        match engine {
            Engine::Brute => self.brute_force_hurwitz(genus, profile),
            Engine::Frobenius => self.connected_hurwitz(genus, profile),
            Engine::CutJoin => self.cut_and_join_hurwitz(genus, &profile.to_partition()),
        }
    }

    /// Frobenius value, cross-checked against brute force whenever brute force
    /// is within its bounds.
    pub fn compute_auto(&self, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        let value = self.connected_hurwitz(genus, profile)?;
        match self.brute_force_hurwitz(genus, profile) {
            Ok(check) if check != value => Err(Error::Consistency(format!(
                "engines disagree at g={genus}, profile {profile}: frobenius {value}, brute {check}"
            ))),
            Ok(_) | Err(Error::Infeasible { .. }) => Ok(value),
            Err(e) => Err(e),
        }
    }

    pub fn brute_force_hurwitz(&self, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        let d = ramification_count(genus, profile)?;
        let k = profile.size();
        if k > self.bounds.brute_max_sheets {
            return Err(Error::infeasible("brute-force sheets", self.bounds.brute_max_sheets as u128, k as u128));
        }
        let work = brute::work_estimate(k, d);
        if work > self.bounds.brute_max_work {
            return Err(Error::infeasible("brute-force work", self.bounds.brute_max_work, work));
        }
        let count = count_transitive_tuples(&profile.to_partition(), d)?;
        Ok(int(count) / from_biguint(&factorial(k)))
    }

    fn check_frobenius_bounds(&self, k: usize, r: usize) -> Result<()> {
        if k > self.bounds.frobenius_max_sheets {
            return Err(Error::infeasible("frobenius sheets", self.bounds.frobenius_max_sheets as u128, k as u128));
        }
        if r > self.bounds.max_transpositions {
            return Err(Error::infeasible("transpositions", self.bounds.max_transpositions as u128, r as u128));
        }
        Ok(())
    }

    /// Memoized [`frobenius_disconnected`], subject to the bounds.
    pub fn disconnected(&self, mu: &Partition, r: usize) -> Result<Rational> {
        self.check_frobenius_bounds(mu.size(), r)?;
        Ok(self.disconnected_unchecked(mu, r))
    }

    fn disconnected_unchecked(&self, mu: &Partition, r: usize) -> Rational {
        let key = (mu.clone(), r);
        if let Some(v) = self.disconnected.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = frobenius_disconnected(mu, r);
        self.disconnected.write().unwrap().insert(key, value.clone());
        value
    }

    /// Connected `h_{g;profile}` from class-algebra counts.
    ///
    /// Labeled counts multiply by `#Aut`. Every component of a covering carries
    /// a pole, so splitting off the component through pole 0 gives
    ///
    /// `H_lab(P, r) = sum_{S contains 0} sum_{r_S} C(r, r_S) h_lab(P|S, r_S) H_lab(P|S^c, r - r_S)`
    ///
    /// which is solved for `h_lab(P, r)` (the `S = P` term).
    pub fn connected_hurwitz(&self, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        let r = ramification_count(genus, profile)?;
        self.check_frobenius_bounds(profile.size(), r)?;
        let labeled = self.labeled_connected(&profile.to_partition(), r);
        Ok(labeled / from_biguint(&aut_count(profile)))
    }

    /// Connected count for `r` transpositions with unordered poles `mu`; zero
    /// when `r` does not correspond to an integral genus.
    pub fn connected_at(&self, mu: &Partition, r: usize) -> Result<Rational> {
        self.check_frobenius_bounds(mu.size(), r)?;
        let aut = aut_count(&PoleProfile::from(mu));
        Ok(self.labeled_connected(mu, r) / from_biguint(&aut))
    }

    fn labeled_disconnected(&self, block: &[usize], r: usize) -> Rational {
        if block.is_empty() {
            return if r == 0 { int(1) } else { Rational::zero() };
        }
        let mu = Partition::from_parts(block.to_vec()).expect("positive parts");
        let aut = aut_count(&PoleProfile::from(&mu));
        from_biguint(&aut) * self.disconnected_unchecked(&mu, r)
    }

    fn labeled_connected(&self, mu: &Partition, r: usize) -> Rational {
        if implied_genus(mu, r).is_none() {
            return Rational::zero();
        }
        let key = (mu.clone(), r);
        if let Some(v) = self.labeled.read().unwrap().get(&key) {
            return v.clone();
        }

        let parts = mu.parts();
        let n = parts.len();
        let mut value = self.labeled_disconnected(parts, r);
        // Proper subsets S containing pole 0, as bitmasks over poles 1..n.
        let full = (1usize << (n - 1)) - 1;
        for rest_mask in 0..full {
            let (inside, outside): (Vec<usize>, Vec<usize>) = {
                let mut inside = vec![parts[0]];
                let mut outside = Vec::new();
                for (i, &p) in parts.iter().enumerate().skip(1) {
                    if rest_mask & (1 << (i - 1)) != 0 {
                        inside.push(p);
                    } else {
                        outside.push(p);
                    }
                }
                (inside, outside)
            };
            let inside = Partition::from_parts(inside).expect("positive parts");
            for r_inside in 0..=r {
                if implied_genus(&inside, r_inside).is_none() {
                    continue;
                }
                let rest = self.labeled_disconnected(&outside, r - r_inside);
                if rest.is_zero() {
                    continue;
                }
                let connected = self.labeled_connected(&inside, r_inside);
                value -= from_biguint(&rational::binomial(r, r_inside)) * connected * rest;
            }
        }

        self.labeled.write().unwrap().insert(key, value.clone());
        value
    }

    /// Coefficient of `p_mu` in the cut-and-join layer `F_r`.
    pub fn cut_and_join_hurwitz(&self, genus: usize, mu: &Partition) -> Result<Rational> {
        let max_weight = self.bounds.cut_join_max_weight;
        if mu.size() > max_weight {
            return Err(Error::infeasible("cut-and-join K_max", max_weight as u128, mu.size() as u128));
        }
        let r = ramification_count(genus, &PoleProfile::from(mu))?;
        Ok(self.cut_and_join_layer_at(r)?.coefficient(mu))
    }

    /// The layer `F_r`, truncated at the configured weight.
    pub fn cut_and_join_layer_at(&self, r: usize) -> Result<PSeriesLayer> {
        if r > self.bounds.max_transpositions {
            return Err(Error::infeasible("transpositions", self.bounds.max_transpositions as u128, r as u128));
        }
        let mut layers = self.layers.lock().unwrap();
        if layers.is_empty() {
            layers.push(PSeriesLayer::unbranched(self.bounds.cut_join_max_weight));
        }
        while layers.len() <= r {
            let next = cut_and_join_layer(&layers);
            layers.push(next);
        }
        Ok(layers[r].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::symgroup::partitions_of;
    use proptest::prelude::*;

    fn pp(orders: &[usize]) -> PoleProfile {
        PoleProfile::new(orders.to_vec()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn ramification_counts() {
        assert_eq!(ramification_count(0, &pp(&[1, 1, 1])).unwrap(), 4);
        assert_eq!(ramification_count(1, &pp(&[2])).unwrap(), 3);
        assert_eq!(ramification_count(2, &pp(&[3])).unwrap(), 6);
        assert_eq!(ramification_count(0, &pp(&[1])).unwrap(), 0);
    }

    #[test]
    fn brute_force_examples() {
        let e = HurwitzEngines::default();
        assert_eq!(e.brute_force_hurwitz(0, &pp(&[1, 1, 1])).unwrap(), int(4));
        assert_eq!(e.brute_force_hurwitz(1, &pp(&[1])).unwrap(), int(0));
        assert_eq!(e.brute_force_hurwitz(1, &pp(&[2])).unwrap(), ratio(1, 2));
        assert_eq!(e.brute_force_hurwitz(0, &pp(&[2, 1])).unwrap(), int(4));
        assert_eq!(e.brute_force_hurwitz(0, &pp(&[1, 2])).unwrap(), int(4));
    }

    #[test]
    fn brute_force_bounds_are_named() {
        let e = HurwitzEngines::default();
        match e.brute_force_hurwitz(0, &pp(&[6])) {
            Err(Error::Infeasible { bound, .. }) => assert_eq!(bound, "brute-force sheets"),
            other => panic!("expected infeasible, got {other:?}"),
        }
        let tight = HurwitzEngines::new(Bounds {
            brute_max_work: 10,
            ..Bounds::default()
        });
        match tight.brute_force_hurwitz(0, &pp(&[1, 1, 1])) {
            Err(Error::Infeasible { bound, .. }) => assert_eq!(bound, "brute-force work"),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_examples() {
        assert_eq!(frobenius_disconnected(&p(&[1, 1, 1]), 4), ratio(9, 2));
        assert_eq!(frobenius_disconnected(&p(&[2]), 3), ratio(1, 2));
        assert_eq!(frobenius_disconnected(&p(&[2, 2]), 4), int(13));
    }

    #[test]
    fn connected_examples() {
        let e = HurwitzEngines::default();
        let h = |g, o: &[usize]| e.connected_hurwitz(g, &pp(o)).unwrap();
        assert_eq!(h(0, &[1, 1, 1]), int(4));
        assert_eq!(h(0, &[2, 2]), int(12));
        assert_eq!(h(1, &[1, 1, 1]), int(40));
        assert_eq!(h(0, &[1, 1, 1, 1]), int(120));
        assert_eq!(h(2, &[3]), int(81));
        assert_eq!(h(1, &[1]), int(0));
        assert_eq!(h(0, &[1]), int(1));
    }

    #[test]
    fn frobenius_bounds() {
        let e = HurwitzEngines::default();
        assert!(matches!(
            e.connected_hurwitz(0, &pp(&[11])),
            Err(Error::Infeasible { bound: "frobenius sheets", .. })
        ));
        assert!(matches!(
            e.connected_hurwitz(20, &pp(&[2])),
            Err(Error::Infeasible { bound: "transpositions", .. })
        ));
    }

    #[test]
    fn cut_and_join_examples() {
        let e = HurwitzEngines::default();
        assert_eq!(e.cut_and_join_hurwitz(0, &p(&[2])).unwrap(), ratio(1, 2));
        assert_eq!(e.cut_and_join_hurwitz(0, &p(&[1, 1])).unwrap(), ratio(1, 2));
        assert_eq!(e.cut_and_join_hurwitz(0, &p(&[4])).unwrap(), int(4));
        assert!(matches!(
            e.cut_and_join_hurwitz(0, &p(&[11])),
            Err(Error::Infeasible { bound: "cut-and-join K_max", .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(genus_zero_closed_form(&pp(&[1, 1, 1])).unwrap(), int(4));
        assert_eq!(genus_zero_closed_form(&pp(&[3])).unwrap(), int(1));
        assert_eq!(genus_zero_closed_form(&pp(&[2, 2])).unwrap(), int(12));
    }

    #[test]
    fn auto_cross_checks() {
        let e = HurwitzEngines::default();
        assert_eq!(e.compute_auto(0, &pp(&[2, 1])).unwrap(), int(4));
        // Outside brute-force bounds the frobenius value stands alone.
        assert_eq!(e.compute_auto(0, &pp(&[7])).unwrap(), genus_zero_closed_form(&pp(&[7])).unwrap());
    }

    #[test]
    fn disconnected_dominates_connected() {
        let e = HurwitzEngines::default();
        for k in 1..=5 {
            for mu in partitions_of(k) {
                for g in 0..=2 {
                    let profile = PoleProfile::from(&mu);
                    let r = ramification_count(g, &profile).unwrap();
                    let connected = e.connected_hurwitz(g, &profile).unwrap();
                    let all = frobenius_disconnected(&mu, r);
                    assert!(all >= connected);
                    if mu.len() == 1 {
                        assert_eq!(all, connected, "{mu} at g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn parity_vanishing() {
        let e = HurwitzEngines::default();
        for k in 1..=5 {
            for mu in partitions_of(k) {
                for r in 0..=8 {
                    if implied_genus(&mu, r).is_none() {
                        assert!(e.labeled_connected(&mu, r).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn table_rejects_bad_normalization() {
        let mut table = HurwitzTable::new();
        table.insert(HurwitzKey::new(1, p(&[2])), ratio(1, 2), Engine::Brute).unwrap();
        assert!(table.insert(HurwitzKey::new(1, p(&[2])), ratio(1, 3), Engine::Brute).is_err());
        assert!(table.insert(HurwitzKey::new(0, p(&[1])), int(-1), Engine::Brute).is_err());
        assert_eq!(table.len(), 1);
    }

    #[test]
    fn engine_names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.as_str().parse::<Engine>().unwrap(), e);
        }
        assert!("auto".parse::<Engine>().is_err());
    }

    proptest! {
        #[test]
        fn profile_permutation_invariance(orders in proptest::collection::vec(1usize..4, 1..4), g in 0usize..2, seed in 0usize..24) {
            let e = HurwitzEngines::default();
            let mut shuffled = orders.clone();
            let len = shuffled.len();
            for i in 0..len {
                shuffled.swap(i, (seed + i * 7) % len);
            }
            let a = e.connected_hurwitz(g, &PoleProfile::new(orders).unwrap()).unwrap();
            let b = e.connected_hurwitz(g, &PoleProfile::new(shuffled).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
