//! Truncated power series in `t` over exact rationals, and the one-point
//! Hodge-integral identity against `((t/2)/sin(t/2))^{k+1}`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::elsv::{extract_hodge_integrals_auto, HodgeKey, HodgeTable, HurwitzProvider};
use crate::rational::{factorial, int};
use crate::report::{CheckRecord, Report};
use crate::{Error, Rational, Result};

/// `c_0 + c_1 t + .. + c_N t^N`, everything above `t^N` discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Pads or truncates `coeffs` to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Series) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    /// Solves `self * inv = 1` term by term.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let mut inv = vec![Rational::zero(); order + 1];
        inv[0] = c0.recip();
        for m in 1..=order {
            let acc: Rational = (1..=m).map(|i| &self.coeffs[i] * &inv[m - i]).sum();
            inv[m] = -acc / c0;
        }
        Ok(Series { coeffs: inv })
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut exp: usize) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        result
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        self.check_order(rhs);
        Series {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        self.check_order(rhs);
        let order = self.order();
        let coeffs = (0..=order)
            .map(|m| (0..=m).map(|i| &self.coeffs[i] * &rhs.coeffs[m - i]).sum())
            .collect();
        Series { coeffs }
    }
}

/// `((t/2)/sin(t/2))^{k+1}` to order `order` (even, at least 2).
pub fn sine_kernel(k: usize, order: usize) -> Result<Series> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::invalid(format!("sine kernel order must be even and >= 2, got {order}")));
    }
    // sin(t/2)/(t/2) = sum_m (-1)^m t^{2m} / (4^m (2m+1)!)
    let mut coeffs = vec![Rational::zero(); order + 1];
    for m in 0..=order / 2 {
        let den = num_traits::pow(BigInt::from(4), m) * BigInt::from(factorial(2 * m + 1));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        coeffs[2 * m] = Rational::new(BigInt::from(sign), den);
    }
    Ok(Series { coeffs }.reciprocal()?.pow(k + 1))
}

/// `t^{2g}` coefficient of the Hodge side at `k`:
/// `sum_j k^{g-j} <psi_1^{3g-2-j} lambda_j>_{g,1}`.
pub fn hodge_side_coefficient(g: usize, k: usize, table: &HodgeTable) -> Result<Rational> {
    if g == 0 {
        return Ok(Rational::one());
    }
    let mut total = Rational::zero();
    let mut missing = Vec::new();
    for j in 0..=g {
        let key = HodgeKey::new(g, vec![3 * g - 2 - j], j)?;
        match table.get(&key) {
            Some(v) => total += int(num_traits::pow(BigInt::from(k), g - j)) * v,
            None => missing.push(key.to_string()),
        }
    }
    if missing.is_empty() {
        Ok(total)
    } else {
        Err(Error::MissingKeys(missing))
    }
}

pub const FP_SUITE: &str = "fp-identity";

/// Compares the Hodge side against the sine kernel for each `g` in
/// `1..=g_max` and each `k`, using one-point tables already in `table`.
pub fn verify_with_table(g_max: usize, ks: &[usize], table: &HodgeTable) -> Report {
    let order = 2 * g_max + 2;
    let mut report = Report::default();
    for &k in ks {
        let kernel = match sine_kernel(k, order) {
            Ok(s) => s,
            Err(e) => {
                report.push(CheckRecord::failed(FP_SUITE, format!("k={k}"), "series", e));
                continue;
            }
        };
        for g in 1..=g_max {
            let key = format!("g={g} k={k}");
            let expected = kernel.coeff(2 * g);
            match hodge_side_coefficient(g, k, table) {
                Ok(actual) => report.push(CheckRecord::compare(FP_SUITE, key, expected, actual)),
                Err(e) => report.push(CheckRecord::failed(FP_SUITE, key, expected, e)),
            }
        }
    }
    report
}

/// Extracts the `(g, 1)` tables for `g <= g_max` from the provider, then
/// runs [`verify_with_table`].
pub fn verify_faber_pandharipande(
    g_max: usize,
    ks: &[usize],
    provider: &impl HurwitzProvider,
    max_grid_bound: usize,
) -> Report {
    let mut table = HodgeTable::new();
    let mut report = Report::default();
    for g in 1..=g_max {
        match extract_hodge_integrals_auto(g, 1, max_grid_bound, provider) {
            Ok(t) => table.merge(t),
            Err(e) => report.push(CheckRecord::failed(FP_SUITE, format!("extract g={g} n=1"), "table", e)),
        }
    }
    report.extend(verify_with_table(g_max, ks, &table));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn s(coeffs: &[i64], order: usize) -> Series {
        Series::from_coeffs(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&s(&[1, 1], 2) * &s(&[1, -1], 2), s(&[1, 0, -1], 2));
        assert_eq!(s(&[1, -1], 3).reciprocal().unwrap(), s(&[1, 1, 1, 1], 3));
        assert_eq!(s(&[1, 1], 2).pow(2), s(&[1, 2, 1], 2));
        assert_eq!(s(&[0, 1], 2).reciprocal(), Err(Error::NotInvertible));
        assert_eq!(s(&[3, 1], 4).pow(0), Series::one(4));
    }

    #[test]
    fn kernel_coefficients() {
        let one = sine_kernel(1, 4).unwrap();
        assert_eq!(one.coeff(0), int(1));
        assert_eq!(one.coeff(2), ratio(1, 12));
        assert_eq!(one.coeff(4), ratio(1, 240));
        for k in 0..8 {
            let kernel = sine_kernel(k, 4).unwrap();
            let k = k as i64;
            assert_eq!(kernel.coeff(2), ratio(k + 1, 24));
            assert_eq!(kernel.coeff(4), ratio((k + 1) * (5 * k + 7), 5760));
        }
        assert!(sine_kernel(1, 3).is_err());
        assert!(sine_kernel(1, 0).is_err());
    }

    #[test]
    fn kernel_reciprocal_of_sine() {
        // (t/2)/sin(t/2) at k = 0: known t^2/24 + 7 t^4/5760 + 31 t^6/967680.
        let kernel = sine_kernel(0, 6).unwrap();
        assert_eq!(kernel.coeffs(), &[int(1), int(0), ratio(1, 24), int(0), ratio(7, 5760), int(0), ratio(31, 967680)]);
    }

    #[test]
    fn kernel_parity_and_multiplicativity() {
        for k in 0..6 {
            let kernel = sine_kernel(k, 10).unwrap();
            for odd in (1..=10).step_by(2) {
                assert!(kernel.coeff(odd).is_zero());
            }
        }
        for k1 in 0..4 {
            for k2 in 0..4 {
                let lhs = sine_kernel(k1 + k2 + 1, 10).unwrap();
                let rhs = &sine_kernel(k1, 10).unwrap() * &sine_kernel(k2, 10).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hodge_side_examples() {
        let mut t = HodgeTable::new();
        t.insert(HodgeKey::new(1, vec![1], 0).unwrap(), ratio(1, 24));
        t.insert(HodgeKey::new(1, vec![0], 1).unwrap(), ratio(1, 24));
        t.insert(HodgeKey::new(2, vec![4], 0).unwrap(), ratio(1, 1152));
        t.insert(HodgeKey::new(2, vec![3], 1).unwrap(), ratio(1, 480));
        t.insert(HodgeKey::new(2, vec![2], 2).unwrap(), ratio(7, 5760));
        assert_eq!(hodge_side_coefficient(1, 1, &t).unwrap(), ratio(1, 12));
        assert_eq!(hodge_side_coefficient(1, 3, &t).unwrap(), ratio(1, 6));
        assert_eq!(hodge_side_coefficient(2, 1, &t).unwrap(), ratio(1, 240));
        assert!(matches!(hodge_side_coefficient(3, 1, &t), Err(Error::MissingKeys(k)) if k.len() == 4));

        let report = verify_with_table(2, &[1, 2, 3, 4, 5], &t);
        assert_eq!(report.checks.len(), 10);
        assert!(report.all_passed());
    }

    #[test]
    fn mismatch_is_reported() {
        let mut t = HodgeTable::new();
        t.insert(HodgeKey::new(1, vec![1], 0).unwrap(), ratio(1, 24));
        t.insert(HodgeKey::new(1, vec![0], 1).unwrap(), ratio(1, 12));
        let report = verify_with_table(1, &[1], &t);
        assert!(!report.all_passed());
        assert_eq!(report.failures().count(), 1);
    }

    fn small_series() -> impl Strategy<Value = Series> {
        proptest::collection::vec((-5i64..6, 1i64..4), 5).prop_map(|v| {
            Series::from_coeffs(v.into_iter().map(|(n, d)| ratio(n, d)).collect(), 4)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn reciprocal_inverts(a in small_series()) {
            if let Ok(inv) = a.reciprocal() {
                prop_assert_eq!(&a * &inv, Series::one(4));
            } else {
                prop_assert!(a.coeff(0).is_zero());
            }
        }
    }
}
