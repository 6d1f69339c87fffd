//! Hurwitz numbers and Hodge integrals through the ELSV-type formula
//!
//! `h = d!/#Aut prod(k_i^{k_i}/k_i!) * P(k_1..k_n)`,
//! `P = sum_j s_j sum_b <psi^b lambda_j> prod k_i^{b_i}`,
//!
//! where `b` ranges over compositions with `|b| + j = 3g - 3 + n` (all other
//! integrals vanish by degree) and `s_j` is the sign attached to `lambda_j`.
//! The alternating choice `s_j = (-1)^j` is the default; the all-plus choice is
//! kept only to demonstrate that it fails `h_{1;1} = 0`.
//!
//! Running the formula forward needs a Hodge table. Running it backward treats
//! the integrals as unknowns and solves an exact linear system whose right-hand
//! sides are engine-computed Hurwitz numbers on a grid of pole profiles.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::engines::{ramification_count, HurwitzEngines};
use crate::linalg::{solve_exact, Solve};
use crate::rational::{self, factorial, from_biguint, int};
use crate::symgroup::aut_count;
use crate::{Error, PoleProfile, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `lambda_j` enters with `(-1)^j`.
    #[default]
    Alternating,
    /// `lambda_j` enters with `+1`, as the total Chern class is usually written.
    Plus,
}

impl SignConvention {
    fn sign(self, j: usize) -> Rational {
        match self {
            SignConvention::Alternating if j % 2 == 1 => int(-1),
            _ => int(1),
        }
    }
}

/// `<psi_1^{b_1} .. psi_n^{b_n} lambda_j>` over the genus-`g`, `n`-pointed
/// moduli space. `b` is stored ascending, since the integral is symmetric
/// under permuting the points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HodgeKey {
    pub g: usize,
    pub n: usize,
    pub j: usize,
    pub b: Vec<usize>,
}

impl HodgeKey {
    pub fn new(g: usize, mut b: Vec<usize>, j: usize) -> Result<Self> {
        let n = b.len();
        check_stable(g, n)?;
        if j > g {
            return Err(Error::invalid(format!("lambda index {j} exceeds genus {g}")));
        }
        let total: usize = b.iter().sum::<usize>() + j;
        if total != moduli_dimension(g, n) {
            return Err(Error::invalid(format!(
                "degree {total} differs from the dimension {} for g={g}, n={n}",
                moduli_dimension(g, n)
            )));
        }
        b.sort_unstable();
        Ok(HodgeKey { g, n, j, b })
    }
}

impl fmt::Display for HodgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "g={} n={} b=[{}] j={}", self.g, self.n, b.join(","), self.j)
    }
}

/// `3g - 3 + n`.
pub fn moduli_dimension(g: usize, n: usize) -> usize {
    3 * g + n - 3
}

pub fn check_stable(g: usize, n: usize) -> Result<()> {
    if 2 * g + n > 2 {
        Ok(())
    } else {
        Err(Error::invalid(format!("unstable moduli space g={g}, n={n}")))
    }
}

/// Every key allowed by the degree rule for `(g, n)`, in table order.
pub fn hodge_keys(g: usize, n: usize) -> Result<Vec<HodgeKey>> {
    check_stable(g, n)?;
    let dim = moduli_dimension(g, n);
    let mut keys = Vec::new();
    for j in 0..=g.min(dim) {
        for b in sorted_exponents(dim - j, n) {
            keys.push(HodgeKey { g, n, j, b });
        }
    }
    keys.sort();
    Ok(keys)
}

/// Ascending `n`-tuples of nonnegative integers summing to `total`.
fn sorted_exponents(total: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(current.clone());
            }
            return;
        }
        for v in min..=rest {
            if v * slots > rest {
                break;
            }
            current.push(v);
            go(rest - v, slots - 1, v, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(total, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a multiset.
fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in items {
        *counts.entry(x).or_insert(0) += 1;
    }
    fn go(counts: &mut BTreeMap<usize, usize>, len: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let values: Vec<usize> = counts.iter().filter(|(_, &c)| c > 0).map(|(&v, _)| v).collect();
        for v in values {
            *counts.get_mut(&v).unwrap() -= 1;
            current.push(v);
            go(counts, len, current, out);
            current.pop();
            *counts.get_mut(&v).unwrap() += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut counts, items.len(), &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial `m_b(k) = sum over distinct rearrangements`.
fn monomial_symmetric(b: &[usize], k: &[usize]) -> Rational {
    let sum: BigInt = distinct_permutations(b)
        .iter()
        .map(|perm| {
            perm.iter()
                .zip(k)
                .map(|(&e, &ki)| num_traits::pow(BigInt::from(ki), e))
                .product::<BigInt>()
        })
        .sum();
    int(sum)
}

/// Hodge integrals keyed by [`HodgeKey`], plus how they were obtained.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HodgeTable {
    entries: BTreeMap<HodgeKey, Rational>,
    /// Grid bound used for extraction, if extracted.
    pub grid_bound: Option<usize>,
    /// Equations beyond the unknown count that were checked to vanish exactly.
    pub surplus_rows: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct HodgeRecord {
    g: usize,
    n: usize,
    b: Vec<usize>,
    j: usize,
    value: String,
}

impl HodgeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: HodgeKey, value: Rational) {
        self.entries.insert(key, value);
    }

    pub fn get(&self, key: &HodgeKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    /// Looks up by unsorted exponents.
    pub fn integral(&self, g: usize, b: &[usize], j: usize) -> Option<&Rational> {
        HodgeKey::new(g, b.to_vec(), j).ok().and_then(|k| self.entries.get(&k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HodgeKey, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn merge(&mut self, other: HodgeTable) {
        self.entries.extend(other.entries);
    }

    /// One JSON object per line: `{"g","n","b","j","value"}` in key order.
    pub fn write_records<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (key, value) in &self.entries {
            let record = HodgeRecord {
                g: key.g,
                n: key.n,
                b: key.b.clone(),
                j: key.j,
                value: rational::render(value),
            };
            serde_json::to_writer(&mut out, &record)?;
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn read_records<R: BufRead>(input: R) -> Result<Self> {
        let mut table = HodgeTable::new();
        for line in input.lines() {
            let line = line.map_err(|e| Error::invalid(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: HodgeRecord = serde_json::from_str(&line).map_err(|e| Error::invalid(e.to_string()))?;
            if record.b.len() != record.n {
                return Err(Error::invalid(format!("record has n={} but {} exponents", record.n, record.b.len())));
            }
            let key = HodgeKey::new(record.g, record.b, record.j)?;
            table.insert(key, rational::parse(&record.value)?);
        }
        Ok(table)
    }
}

/// Source of connected Hurwitz numbers for the inverse direction.
pub trait HurwitzProvider {
    fn hurwitz(&self, genus: usize, profile: &PoleProfile) -> Result<Rational>;
}

impl HurwitzProvider for HurwitzEngines {
    fn hurwitz(&self, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        self.connected_hurwitz(genus, profile)
    }
}

impl<F> HurwitzProvider for F
where
    F: Fn(usize, &PoleProfile) -> Result<Rational>,
{
    fn hurwitz(&self, genus: usize, profile: &PoleProfile) -> Result<Rational> {
        self(genus, profile)
    }
}

/// `d!/#Aut * prod k_i^{k_i}/k_i!`.
pub fn prefactor(genus: usize, profile: &PoleProfile) -> Result<Rational> {
    let d = ramification_count(genus, profile)?;
    let mut value = from_biguint(&factorial(d)) / from_biguint(&aut_count(profile));
    for &k in profile.orders() {
        value *= int(num_traits::pow(BigInt::from(k), k)) / from_biguint(&factorial(k));
    }
    Ok(value)
}

/// Quasihomogeneity factor `prod k_i^{k_i}/(k_i - 1)!`.
pub fn weight_w(profile: &PoleProfile) -> Rational {
    profile
        .orders()
        .iter()
        .map(|&k| int(num_traits::pow(BigInt::from(k), k)) / from_biguint(&factorial(k - 1)))
        .fold(Rational::one(), |acc, x| acc * x)
}

/// Degree of the Lyashko–Looijenga map, `h * #Aut * prod k_i`. Must be a
/// nonnegative integer; anything else means `h` is wrong.
pub fn degree_ll(genus: usize, profile: &PoleProfile, h: &Rational) -> Result<Rational> {
    let product: usize = profile.orders().iter().product();
    let degree = h * from_biguint(&aut_count(profile)) * int(product);
    if rational::is_nonnegative_integer(&degree) {
        Ok(degree)
    } else {
        Err(Error::Consistency(format!(
            "deg LL = {degree} is not a nonnegative integer for g={genus}, profile {profile}, h = {h}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElsvNormalizedValue {
    pub g: usize,
    pub profile: PoleProfile,
    /// `h / prefactor`, the value of the Hodge-integral generating function.
    pub value: Rational,
}

pub fn normalized_value(
    genus: usize,
    profile: &PoleProfile,
    provider: &impl HurwitzProvider,
) -> Result<ElsvNormalizedValue> {
    check_stable(genus, profile.len())?;
    let h = provider.hurwitz(genus, profile)?;
    Ok(ElsvNormalizedValue {
        g: genus,
        profile: profile.clone(),
        value: h / prefactor(genus, profile)?,
    })
}

/// Nondecreasing `n`-tuples with entries in `1..=bound`, lexicographic.
pub fn grid_points(n: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, min: usize, bound: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in min..=bound {
            current.push(v);
            go(n, v, bound, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, bound, &mut Vec::new(), &mut out);
    out
}

/// Smallest bound whose grid has at least `#unknowns + n` points.
pub fn minimal_grid_bound(g: usize, n: usize) -> Result<usize> {
    let needed = hodge_keys(g, n)?.len() + n;
    let mut bound = 1;
    while grid_points(n, bound).len() < needed {
        bound += 1;
    }
    Ok(bound)
}

fn design_row(keys: &[HodgeKey], k: &[usize], signs: SignConvention) -> Vec<Rational> {
    keys.iter()
        .map(|key| signs.sign(key.j) * monomial_symmetric(&key.b, k))
        .collect()
}

/// Solves for every `<psi^b lambda_j>` of `(g, n)` from Hurwitz numbers on the
/// grid `{1..bound}^n` (sorted tuples), with the alternating sign convention.
/// The grid must have more points than unknowns; the surplus equations must
/// hold exactly.
pub fn extract_hodge_integrals(
    g: usize,
    n: usize,
    bound: usize,
    provider: &impl HurwitzProvider,
) -> Result<HodgeTable> {
    let keys = hodge_keys(g, n)?;
    let points = grid_points(n, bound);
    if points.len() <= keys.len() {
        return Err(Error::GridTooSmall {
            points: points.len(),
            unknowns: keys.len(),
            rank: 0,
        });
    }

    let mut matrix = Vec::with_capacity(points.len());
    let mut rhs = Vec::with_capacity(points.len());
    for k in &points {
        let profile = PoleProfile::new(k.clone())?;
        matrix.push(design_row(&keys, k, SignConvention::Alternating));
        rhs.push(normalized_value(g, &profile, provider)?.value);
    }

    match solve_exact(&matrix, &rhs) {
        Solve::Unique(values) => Ok(HodgeTable {
            entries: keys.into_iter().zip(values).collect(),
            grid_bound: Some(bound),
            surplus_rows: points.len() - matrix[0].len(),
        }),
        Solve::RankDeficient { rank } => Err(Error::GridTooSmall {
            points: points.len(),
            unknowns: keys.len(),
            rank,
        }),
        Solve::Inconsistent { row, residual } => Err(Error::Consistency(format!(
            "Hodge extraction for g={g}, n={n}: residual {residual} at grid point {:?}",
            points[row]
        ))),
    }
}

/// [`extract_hodge_integrals`] at [`minimal_grid_bound`], widening the grid
/// while the system is rank deficient, up to `max_bound`.
pub fn extract_hodge_integrals_auto(
    g: usize,
    n: usize,
    max_bound: usize,
    provider: &impl HurwitzProvider,
) -> Result<HodgeTable> {
    let mut bound = minimal_grid_bound(g, n)?;
    loop {
        match extract_hodge_integrals(g, n, bound, provider) {
            Err(Error::GridTooSmall { .. }) if bound < max_bound => bound += 1,
            other => return other,
        }
    }
}

/// `P(k)` from a table, under a sign convention.
pub fn generating_value(
    g: usize,
    orders: &[usize],
    table: &HodgeTable,
    signs: SignConvention,
) -> Result<Rational> {
    let keys = hodge_keys(g, orders.len())?;
    let missing: Vec<String> = keys
        .iter()
        .filter(|k| table.get(k).is_none())
        .map(|k| k.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingKeys(missing));
    }
    let row = design_row(&keys, orders, signs);
    Ok(keys.iter().zip(row).map(|(key, c)| c * table.get(key).unwrap()).sum())
}

/// Forward direction: `prefactor * P(k)` with alternating signs.
pub fn hurwitz_via_elsv(g: usize, profile: &PoleProfile, table: &HodgeTable) -> Result<Rational> {
    hurwitz_via_elsv_with(g, profile, table, SignConvention::Alternating)
}

pub fn hurwitz_via_elsv_with(
    g: usize,
    profile: &PoleProfile,
    table: &HodgeTable,
    signs: SignConvention,
) -> Result<Rational> {
    Ok(prefactor(g, profile)? * generating_value(g, profile.orders(), table, signs)?)
}
