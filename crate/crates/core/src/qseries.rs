//! Truncated integer q-expansions of cusp forms.
//!
//! Two independent ways to produce coefficients live here: Dedekind eta
//! products (expanded through Euler's pentagonal number theorem) and Hecke
//! multiplicativity from prime coefficients. Comparing the two is how the
//! printed expansions are checked.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{legendre, primes_up_to};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 200;

/// Coefficients `c_1 .. c_N` of a cusp form's expansion in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSeries {
    #[serde(with = "crate::arith::decimal::vec")]
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(precision: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); precision] }
    }

    /// Build from `c_1, c_2, ...`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`, `1 <= n <= precision`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        assert!(n >= 1 && n <= self.coeffs.len(), "q^{n} outside 1..={}", self.coeffs.len());
        &self.coeffs[n - 1]
    }

    pub fn set(&mut self, n: usize, value: BigInt) {
        self.coeffs[n - 1] = value;
    }

    /// `(n, c_n)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    /// The nonzero terms, `(n, c_n)`.
    pub fn support(&self) -> Vec<(usize, BigInt)> {
        self.iter().filter(|(_, c)| !c.is_zero()).map(|(n, c)| (n, c.clone())).collect()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self { coeffs: self.coeffs[..precision.min(self.coeffs.len())].to_vec() }
    }
}

/// First disagreement between two series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    #[serde(with = "crate::arith::decimal")]
    pub left: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub right: BigInt,
}

/// Compare `a` and `b` at every `q^n` with `n <= upto`.
///
/// Panics if `upto` exceeds either precision.
pub fn series_match(a: &QSeries, b: &QSeries, upto: usize) -> std::result::Result<(), Mismatch> {
    assert!(upto <= a.precision() && upto <= b.precision(), "comparison beyond precision");
    for n in 1..=upto {
        if a.coeff(n) != b.coeff(n) {
            return Err(Mismatch { index: n, left: a.coeff(n).clone(), right: b.coeff(n).clone() });
        }
    }
    Ok(())
}

// Power series in q starting at q^0, truncated to `len` terms.
fn truncated_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn truncated_pow(base: &[BigInt], mut e: u64, len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = BigInt::one();
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = truncated_mul(&acc, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = truncated_mul(&b, &b, len);
        }
    }
    acc
}

/// `prod_{n>=1} (1 - q^{scale n})` through `q^{len-1}` via the pentagonal
/// number theorem: `sum_k (-1)^k q^{scale k(3k-1)/2}` over all integers k.
fn euler_product(scale: u64, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = BigInt::one();
    let scale = scale as usize;
    for k in 1.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e_neg = scale * k * (3 * k - 1) / 2;
        let e_pos = scale * k * (3 * k + 1) / 2;
        if e_neg >= len {
            break;
        }
        out[e_neg] += sign;
        if e_pos < len {
            out[e_pos] += sign;
        }
    }
    out
}

/// A product `prod eta(q^m)^k` of Dedekind eta functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaProduct {
    factors: Vec<(u64, u64)>,
}

impl EtaProduct {
    /// `factors` are `(scale m, exponent k)` pairs; `sum m k` must be a
    /// multiple of 24 so the leading `q` power is integral.
    pub fn new(factors: &[(u64, u64)]) -> Result<Self> {
        for &(scale, exponent) in factors {
            if scale == 0 || exponent == 0 {
                return Err(Error::InvalidEtaFactor { scale, exponent });
            }
        }
        let weight_sum: u64 = factors.iter().map(|(m, k)| m * k).sum();
        if weight_sum == 0 || weight_sum % 24 != 0 {
            return Err(Error::NonIntegralEtaExponent(weight_sum));
        }
        Ok(Self { factors: factors.to_vec() })
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    /// Exponent of the leading `q` power, `sum m k / 24`.
    pub fn leading_exponent(&self) -> usize {
        (self.factors.iter().map(|(m, k)| m * k).sum::<u64>() / 24) as usize
    }

    /// Weight of the form, `sum k / 2` (integral for every product used here).
    pub fn weight_times_two(&self) -> u64 {
        self.factors.iter().map(|(_, k)| k).sum()
    }

    /// Coefficients `c_1 .. c_N`.
    pub fn expand(&self, precision: usize) -> QSeries {
        let lead = self.leading_exponent();
        let mut out = QSeries::zero(precision);
        if lead > precision {
            return out;
        }
        // terms q^lead .. q^precision of the product
        let len = precision - lead + 1;
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = BigInt::one();
        for &(scale, exponent) in &self.factors {
            let base = euler_product(scale, len);
            let powered = truncated_pow(&base, exponent, len);
            acc = truncated_mul(&acc, &powered, len);
        }
        for (i, c) in acc.into_iter().enumerate() {
            out.set(lead + i, c);
        }
        out
    }
}

pub fn eta_product_expand(eta: &EtaProduct, precision: usize) -> QSeries {
    eta.expand(precision)
}

/// Dirichlet character attached to a form: trivial, or the Kronecker
/// symbol of a negative fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Character {
    Trivial,
    Kronecker(i64),
}

impl Character {
    pub fn at_prime(self, p: u64) -> i64 {
        match self {
            Character::Trivial => 1,
            Character::Kronecker(disc) => kronecker(disc, p),
        }
    }
}

/// Kronecker symbol `(disc / p)` for a prime `p`.
pub fn kronecker(disc: i64, p: u64) -> i64 {
    if p == 2 {
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    legendre(disc, p).map(i64::from).expect("odd prime")
}

/// Everything needed to rebuild a Hecke eigenform from prime coefficients.
#[derive(Debug, Clone)]
pub struct HeckeCoefficientSpec {
    pub weight: u32,
    pub character: Character,
    /// Primes dividing the level; the character is zero there.
    pub bad_primes: BTreeSet<u64>,
    pub prime_coeffs: BTreeMap<u64, BigInt>,
    /// Missing bad-prime coefficients default to zero instead of erroring.
    pub zero_missing_bad: bool,
}

impl HeckeCoefficientSpec {
    pub fn new(weight: u32, character: Character) -> Self {
        Self {
            weight,
            character,
            bad_primes: BTreeSet::new(),
            prime_coeffs: BTreeMap::new(),
            zero_missing_bad: false,
        }
    }

    pub fn with_bad_primes(mut self, primes: &[u64]) -> Self {
        self.bad_primes.extend(primes.iter().copied());
        self
    }

    pub fn zero_at_bad_primes(mut self) -> Self {
        self.zero_missing_bad = true;
        self
    }

    pub fn set(&mut self, p: u64, a_p: impl Into<BigInt>) {
        self.prime_coeffs.insert(p, a_p.into());
    }

    /// Value of the character in the Hecke recurrence: zero at bad primes.
    pub fn chi(&self, p: u64) -> i64 {
        if self.bad_primes.contains(&p) {
            0
        } else {
            self.character.at_prime(p)
        }
    }
}

/// `a_p^2 <= 4 p^{k-1}`.
pub fn within_ramanujan_bound(a_p: &BigInt, p: u64, weight: u32) -> bool {
    a_p * a_p <= BigInt::from(4) * BigInt::from(p).pow(weight - 1)
}

/// Full expansion `a_1 .. a_N` from prime coefficients, using
/// `a_{mn} = a_m a_n` for coprime `m, n` and
/// `a_{p^{r+1}} = a_p a_{p^r} - chi(p) p^{k-1} a_{p^{r-1}}`.
pub fn hecke_expand(spec: &HeckeCoefficientSpec, precision: usize) -> Result<QSeries> {
    let mut a = vec![BigInt::zero(); precision + 1];
    if precision == 0 {
        return Ok(QSeries::zero(0));
    }
    a[1] = BigInt::one();
    let primes = primes_up_to(precision as u64);
    let mut smallest = vec![0u64; precision + 1];
    for &p in primes.iter().rev() {
        for m in (p as usize..=precision).step_by(p as usize) {
            smallest[m] = p;
        }
    }
    for &p in &primes {
        let bad = spec.bad_primes.contains(&p);
        let a_p = match spec.prime_coeffs.get(&p) {
            Some(v) => v.clone(),
            None if bad && spec.zero_missing_bad => BigInt::zero(),
            None => return Err(Error::MissingPrimeCoefficient(p)),
        };
        if !bad && !within_ramanujan_bound(&a_p, p, spec.weight) {
            return Err(Error::RamanujanBound { p, value: a_p.to_string(), weight: spec.weight });
        }
        let chi_term = BigInt::from(spec.chi(p)) * BigInt::from(p).pow(spec.weight - 1);
        let p = p as usize;
        a[p] = a_p.clone();
        let (mut prev, mut cur) = (BigInt::one(), a_p.clone());
        let mut q = p;
        while let Some(next) = q.checked_mul(p).filter(|&n| n <= precision) {
            let value = &a_p * &cur - &chi_term * &prev;
            a[next] = value.clone();
            prev = std::mem::replace(&mut cur, value);
            q = next;
        }
    }
    for n in 2..=precision {
        let p = smallest[n] as usize;
        let mut pe = 1;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        if m > 1 {
            a[n] = &a[pe] * &a[m];
        }
    }
    a.remove(0);
    Ok(QSeries::from_coeffs(a))
}

/// `true` when every good prime coefficient of `series` satisfies `a_p^2 <= 4 p^{k-1}`.
pub fn satisfies_ramanujan(series: &QSeries, weight: u32, bad_primes: &[u64]) -> bool {
    primes_up_to(series.precision() as u64)
        .into_iter()
        .filter(|p| !bad_primes.contains(p))
        .all(|p| within_ramanujan_bound(series.coeff(p as usize), p, weight))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: multiply out (1 - q^{mn})^k factor by factor.
    fn direct_product(factors: &[(u64, u64)], precision: usize) -> QSeries {
        let lead = (factors.iter().map(|(m, k)| m * k).sum::<u64>() / 24) as usize;
        let len = precision + 1;
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = BigInt::one();
        for &(m, k) in factors {
            let m = m as usize;
            for n in (1..).map(|n| n * m).take_while(|&d| d < len) {
                for _ in 0..k {
                    for i in (n..len).rev() {
                        let t = acc[i - n].clone();
                        acc[i] -= t;
                    }
                }
            }
        }
        let mut out = QSeries::zero(precision);
        for n in lead..=precision {
            out.set(n, acc[n - lead].clone());
        }
        out
    }

    fn printed(terms: &[(usize, i64)], precision: usize) -> QSeries {
        let mut s = QSeries::zero(precision);
        for &(n, c) in terms {
            s.set(n, BigInt::from(c));
        }
        s
    }

    #[test]
    fn printed_level_16_and_32_expansions() {
        let g3 = EtaProduct::new(&[(4, 6)]).unwrap().expand(17);
        assert_eq!(g3, printed(&[(1, 1), (5, -6), (9, 9), (13, 10), (17, -30)], 17));
        let g2 = EtaProduct::new(&[(8, 2), (4, 2)]).unwrap().expand(17);
        assert_eq!(g2, printed(&[(1, 1), (5, -2), (9, -3), (13, 6), (17, 2)], 17));
    }

    #[test]
    fn printed_level_27_and_9_expansions() {
        let g4 = EtaProduct::new(&[(3, 8)]).unwrap().expand(19);
        assert_eq!(g4, printed(&[(1, 1), (4, -8), (7, 20), (13, -70), (16, 64), (19, 56)], 19));
        let g2 = EtaProduct::new(&[(9, 2), (3, 2)]).unwrap().expand(19);
        assert_eq!(g2, printed(&[(1, 1), (4, -2), (7, -1), (13, 5), (16, 4), (19, -7)], 19));
    }

    #[test]
    fn rejects_fractional_leading_power() {
        assert_eq!(EtaProduct::new(&[(1, 1)]), Err(Error::NonIntegralEtaExponent(1)));
        assert_eq!(EtaProduct::new(&[(2, 11)]), Err(Error::NonIntegralEtaExponent(22)));
        assert!(matches!(EtaProduct::new(&[(0, 24)]), Err(Error::InvalidEtaFactor { .. })));
    }

    #[test]
    fn pentagonal_matches_direct_product() {
        for factors in [vec![(1, 24)], vec![(2, 12)], vec![(4, 6)], vec![(8, 2), (4, 2)], vec![(1, 8), (2, 8)]] {
            let eta = EtaProduct::new(&factors).unwrap();
            assert_eq!(eta.expand(50), direct_product(&factors, 50), "{factors:?}");
        }
        let delta = EtaProduct::new(&[(1, 24)]).unwrap().expand(50);
        assert_eq!(delta.coeff(1), &BigInt::one());
        assert_eq!(delta.coeff(2), &BigInt::from(-24));
        assert_eq!(delta.coeff(3), &BigInt::from(252));
    }

    #[test]
    fn level_4_weight_6_prime_coefficients() {
        // Derived by the direct-product oracle above; frozen here.
        let f = EtaProduct::new(&[(2, 12)]).unwrap().expand(31);
        let expect = [(3, -12), (5, 54), (7, -88), (11, 540), (13, -418), (17, 594), (19, 836), (23, -4104), (29, -594), (31, 4256)];
        for (p, c) in expect {
            assert_eq!(f.coeff(p), &BigInt::from(c), "a_{p}");
        }
        assert_eq!(f, direct_product(&[(2, 12)], 31));
    }

    #[test]
    fn hecke_inert_prime_squares() {
        // weight 6, trivial character: a_9 = a_3^2 - 3^5
        let mut s = HeckeCoefficientSpec::new(6, Character::Trivial).with_bad_primes(&[2]).zero_at_bad_primes();
        for p in [3, 5, 7] {
            s.set(p, 0);
        }
        s.set(5, -82);
        let f = hecke_expand(&s, 9).unwrap();
        assert_eq!(f.coeff(9), &BigInt::from(-243));

        let mut s = HeckeCoefficientSpec::new(3, Character::Kronecker(-4)).with_bad_primes(&[2]).zero_at_bad_primes();
        for p in [3, 5, 7] {
            s.set(p, 0);
        }
        assert_eq!(hecke_expand(&s, 9).unwrap().coeff(9), &BigInt::from(9));

        let mut s = HeckeCoefficientSpec::new(2, Character::Trivial).with_bad_primes(&[3]).zero_at_bad_primes();
        s.set(2, 0);
        assert_eq!(hecke_expand(&s, 4).unwrap().coeff(4), &BigInt::from(-2));
    }

    #[test]
    fn hecke_multiplicativity() {
        let mut s = HeckeCoefficientSpec::new(2, Character::Trivial);
        for (p, a) in [(2, -1), (3, 2), (5, 1), (7, -2), (11, 3), (13, 0)] {
            s.set(p, a);
        }
        let f = hecke_expand(&s, 15).unwrap();
        assert_eq!(f.coeff(6), &(f.coeff(2) * f.coeff(3)));
        assert_eq!(f.coeff(15), &(f.coeff(3) * f.coeff(5)));
        assert_eq!(f.coeff(1), &BigInt::one());
        // a_4 = a_2^2 - 2, a_8 = a_2 a_4 - 2 a_2
        assert_eq!(f.coeff(4), &BigInt::from(-1));
        assert_eq!(f.coeff(8), &BigInt::from(3));
    }

    #[test]
    fn hecke_errors() {
        let s = HeckeCoefficientSpec::new(2, Character::Trivial);
        assert_eq!(hecke_expand(&s, 10), Err(Error::MissingPrimeCoefficient(2)));
        let mut s = HeckeCoefficientSpec::new(2, Character::Trivial);
        s.set(2, 3);
        assert!(matches!(hecke_expand(&s, 2), Err(Error::RamanujanBound { p: 2, .. })));
        let s = HeckeCoefficientSpec::new(2, Character::Trivial).with_bad_primes(&[2]);
        assert_eq!(hecke_expand(&s, 2), Err(Error::MissingPrimeCoefficient(2)));
    }

    #[test]
    fn series_match_reports_first_difference() {
        let a = printed(&[(1, 1), (5, -2)], 10);
        assert_eq!(series_match(&a, &a, 10), Ok(()));
        let b = printed(&[(1, 1), (5, 3)], 10);
        let m = series_match(&a, &b, 10).unwrap_err();
        assert_eq!(m.index, 5);
        assert_eq!((m.left, m.right), (BigInt::from(-2), BigInt::from(3)));
        assert_eq!(series_match(&a, &b, 4), Ok(()));
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-3, 3), 0);
        assert_eq!(kronecker(-3, 7), 1);
    }
}
