use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poset::intersection_poset;
use super::Arrangement;
use crate::arith::{determinant, is_prime, PrimeField, RationalField};
use crate::error::{Error, Result};

/// Distinct values of all `k×k` minors, `1 ≤ k ≤ n+1`, of the `N×(n+1)`
/// coefficient matrix.
pub fn minors(arr: &Arrangement) -> BTreeSet<BigInt> {
    let rows: Vec<&[i64]> = arr.hyperplanes().iter().map(|h| h.coeffs()).collect();
    let cols = arr.dim() + 1;
    let mut out = BTreeSet::new();
    for k in 1..=cols.min(rows.len()) {
        for rs in (0..rows.len()).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let m: Vec<Vec<BigRational>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigRational::from_integer(rows[r][c].into())).collect())
                    .collect();
                out.insert(determinant(&RationalField, &m).to_integer());
            }
        }
    }
    out
}

fn prime_divisors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Strata present over one field but not the other, keyed by
/// `(dimension, containing hyperplanes)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetDiff {
    pub p: u64,
    pub equal: bool,
    pub only_rational: Vec<(usize, Vec<usize>)>,
    pub only_mod_p: Vec<(usize, Vec<usize>)>,
}

/// Recompute the poset with ranks over `𝔽_p` and compare with the rational one.
pub fn poset_diff(arr: &Arrangement, p: u64) -> Result<PosetDiff> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let q = intersection_poset(&RationalField, arr).hyperplane_sets();
    let fp = intersection_poset(&PrimeField::new(p), arr).hyperplane_sets();
    let only_rational: Vec<_> = q.difference(&fp).cloned().collect();
    let only_mod_p: Vec<_> = fp.difference(&q).cloned().collect();
    Ok(PosetDiff { p, equal: only_rational.is_empty() && only_mod_p.is_empty(), only_rational, only_mod_p })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodReductionReport {
    /// Every minor lies in `{0, ±1}`.
    pub unimodular: bool,
    #[serde(with = "crate::arith::decimal")]
    pub max_abs_minor: BigInt,
    /// Primes dividing some nonzero minor.
    pub exceptional_primes: Vec<u64>,
    /// The odd ones among them; empty means every odd prime is good.
    pub odd_exceptional_primes: Vec<u64>,
    pub diffs: Vec<PosetDiff>,
}

impl GoodReductionReport {
    pub fn all_odd_primes_good(&self) -> bool {
        self.odd_exceptional_primes.is_empty()
    }

    pub fn summary(&self) -> String {
        let primes = |ps: &[u64]| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        if self.unimodular {
            "all minors in {0, ±1}; all odd primes good".to_string()
        } else if self.all_odd_primes_good() {
            format!("minors divisible only by {}; all odd primes good", primes(&self.exceptional_primes))
        } else {
            format!("exceptional odd primes: {}", primes(&self.odd_exceptional_primes))
        }
    }
}

/// Minor analysis plus an `𝔽_p` recomputation of the poset for each prime in `check`.
pub fn good_reduction_report(arr: &Arrangement, check: &[u64]) -> Result<GoodReductionReport> {
    let values = minors(arr);
    let max_abs_minor = values.iter().map(|v| v.abs()).max().unwrap_or_else(BigInt::zero);
    let unimodular = max_abs_minor <= BigInt::one();
    let mut primes = BTreeSet::new();
    for v in values.iter().filter(|v| !v.is_zero()) {
        let v = v.abs().to_u64().ok_or(Error::Overflow("minor exceeds u64"))?;
        primes.extend(prime_divisors(v));
    }
    let exceptional_primes: Vec<u64> = primes.into_iter().collect();
    let odd_exceptional_primes = exceptional_primes.iter().copied().filter(|&p| p != 2).collect();
    let diffs = check.iter().map(|&p| poset_diff(arr, p)).collect::<Result<_>>()?;
    Ok(GoodReductionReport { unimodular, max_abs_minor, exceptional_primes, odd_exceptional_primes, diffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::bundled;

    #[test]
    fn ahlgren_is_unimodular() {
        let r = good_reduction_report(&bundled::ahlgren(), &[5]).unwrap();
        assert!(r.unimodular);
        assert!(r.all_odd_primes_good());
        assert_eq!(r.summary(), "all minors in {0, ±1}; all odd primes good");
        assert!(r.diffs[0].equal);
    }

    #[test]
    fn minor_two_is_exceptional_only_at_two() {
        let arr = Arrangement::new(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 2, 0]]).unwrap();
        let r = good_reduction_report(&arr, &[]).unwrap();
        assert!(!r.unimodular);
        assert_eq!(r.exceptional_primes, vec![2]);
        assert!(r.all_odd_primes_good());
        // x + 2y collapses onto x over F_2
        let d = poset_diff(&arr, 2).unwrap();
        assert!(!d.equal);
    }

    #[test]
    fn odd_exceptional_prime_changes_the_poset() {
        // x, y and x + y + 3z meet at (0:0:1) only mod 3
        let arr = Arrangement::new(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 3]]).unwrap();
        let r = good_reduction_report(&arr, &[3, 5]).unwrap();
        assert_eq!(r.odd_exceptional_primes, vec![3]);
        assert!(!r.diffs[0].equal);
        assert!(r.diffs[1].equal);
        assert_eq!(r.summary(), "exceptional odd primes: 3");
    }

    #[test]
    fn divisors() {
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(97), vec![97]);
    }

    #[test]
    fn minor_census() {
        let m = minors(&bundled::sextic());
        assert!(m.contains(&BigInt::from(-2)) || m.contains(&BigInt::from(2)));
    }
}
