//! Cut-and-join recursion on the connected generating series.
//!
//! `F_r` collects `h_{g;mu} p_mu` over all connected coverings with `r`
//! simple branch points. Adding one transposition either cuts a cycle or
//! joins two cycles of the same component (the linear operator), or joins two
//! components into one (the quadratic term, a binomial convolution over how
//! the earlier `r - 1` branch points are shared between the two pieces).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::{binomial, from_biguint, int, ratio};
use crate::{Partition, Rational};

/// Polynomial in `p_1, p_2, ..` with monomials of weight at most `max_weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSeriesLayer {
    max_weight: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl PSeriesLayer {
    pub fn zero(max_weight: usize) -> Self {
        PSeriesLayer {
            max_weight,
            terms: BTreeMap::new(),
        }
    }

    /// `F_0 = p_1`: the single one-sheeted covering.
    pub fn unbranched(max_weight: usize) -> Self {
        let mut layer = Self::zero(max_weight);
        if max_weight >= 1 {
            layer.add(Partition::new(vec![1]).unwrap(), int(1));
        }
        layer
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn coefficient(&self, mu: &Partition) -> Rational {
        self.terms.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * p_mu`, dropping monomials above the weight bound.
    pub fn add(&mut self, mu: Partition, coeff: Rational) {
        if coeff.is_zero() || mu.size() > self.max_weight {
            return;
        }
        let slot = self.terms.entry(mu.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }
}

/// `mu` with one copy of `part` removed and `extra` parts appended.
fn replace(mu: &Partition, remove: &[usize], extra: &[usize]) -> Partition {
    let mut parts = mu.parts().to_vec();
    for r in remove {
        let pos = parts.iter().position(|p| p == r).expect("part present");
        parts.remove(pos);
    }
    parts.extend_from_slice(extra);
    Partition::from_parts(parts).expect("positive parts")
}

/// Computes `F_r` from `F_0 .. F_{r-1}`:
///
/// `F_r = CJ(F_{r-1}) + 1/2 sum_{i,j} i j p_{i+j} sum_a C(r-1, a) dF_a/dp_i dF_{r-1-a}/dp_j`
///
/// with `CJ = 1/2 sum_{i,j} [(i+j) p_i p_j d/dp_{i+j} + i j p_{i+j} d^2/dp_i dp_j]`.
pub fn cut_and_join_layer(previous: &[PSeriesLayer]) -> PSeriesLayer {
    let last = previous.last().expect("F_0 must be supplied");
    let max_weight = last.max_weight;
    let half = ratio(1, 2);
    let mut out = PSeriesLayer::zero(max_weight);

    for (mu, coeff) in last.terms() {
        let mult = mu.multiplicities();
        for (&s, &m) in &mult {
            // Cut a cycle of length s into (i, s - i).
            for i in 1..s {
                let c = coeff * int(m * s) * &half;
                out.add(replace(mu, &[s], &[i, s - i]), c);
            }
        }
        for (&i, &mi) in &mult {
            for (&j, &mj) in &mult {
                let pairs = if i == j { mi * (mi - 1) } else { mi * mj };
                if pairs == 0 {
                    continue;
                }
                let c = coeff * int(pairs * i * j) * &half;
                out.add(replace(mu, &[i, j], &[i + j]), c);
            }
        }
    }

    let steps = previous.len() - 1;
    for a in 0..=steps {
        let weight = from_biguint(&binomial(steps, a));
        let (left, right) = (&previous[a], &previous[steps - a]);
        for (mu, c1) in left.terms() {
            for (&i, &m1) in &mu.multiplicities() {
                for (nu, c2) in right.terms() {
                    if mu.size() + nu.size() > max_weight {
                        continue;
                    }
                    for (&j, &m2) in &nu.multiplicities() {
                        let mut parts = replace(mu, &[i], &[]).parts().to_vec();
                        parts.extend_from_slice(replace(nu, &[j], &[i + j]).parts());
                        let c = &weight * c1 * c2 * int(m1 * m2 * i * j) * &half;
                        out.add(Partition::from_parts(parts).expect("positive parts"), c);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn layer(max_weight: usize, terms: &[(&[usize], Rational)]) -> PSeriesLayer {
        let mut out = PSeriesLayer::zero(max_weight);
        for (mu, c) in terms {
            out.add(p(mu), c.clone());
        }
        out
    }

    #[test]
    fn first_layers_match_hand_computation() {
        let mut layers = vec![PSeriesLayer::unbranched(4)];
        for _ in 0..3 {
            let next = cut_and_join_layer(&layers);
            layers.push(next);
        }
        assert_eq!(layers[1], layer(4, &[(&[2], ratio(1, 2))]));
        assert_eq!(layers[2], layer(4, &[(&[1, 1], ratio(1, 2)), (&[3], int(1))]));
        assert_eq!(
            layers[3],
            layer(4, &[(&[2], ratio(1, 2)), (&[2, 1], int(4)), (&[4], int(4))])
        );
    }

    #[test]
    fn weight_bound_is_respected() {
        let mut layers = vec![PSeriesLayer::unbranched(3)];
        for _ in 0..6 {
            let next = cut_and_join_layer(&layers);
            assert!(next.terms().all(|(mu, _)| mu.size() <= 3));
            layers.push(next);
        }
    }

    #[test]
    fn truncation_does_not_disturb_lower_weights() {
        let build = |w| {
            let mut layers = vec![PSeriesLayer::unbranched(w)];
            for _ in 0..7 {
                let next = cut_and_join_layer(&layers);
                layers.push(next);
            }
            layers
        };
        let small = build(4);
        let large = build(7);
        for (s, l) in small.iter().zip(&large) {
            for (mu, c) in s.terms() {
                assert_eq!(&l.coefficient(mu), c);
            }
        }
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut l = PSeriesLayer::zero(3);
        l.add(p(&[2]), int(1));
        l.add(p(&[2]), int(-1));
        assert!(l.is_empty());
    }
}
