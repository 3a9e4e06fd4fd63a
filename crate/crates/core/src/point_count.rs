//! Point counts over prime fields.
//!
//! Elliptic curve traces come straight from the character sum
//! `a_p = -Σ_x χ(f(x))`. The affine fivefold
//! `w² = Π_{s ∈ {x,y,z,t}} s(s-1)(s-v)` is counted twice: by enumerating
//! 𝔽_p⁵, and by factoring the character sum over each fibre `v`, where
//! multiplicativity of χ (with χ(0) = 0) turns the inner fourfold sum into
//! `S(v)⁴`, `S(v) = Σ_s χ(s(s-1)(s-v))`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{odd_primes_up_to, PrimeModulus, SquareTable};
use crate::error::{Error, Result};
use crate::qseries::EtaProduct;

/// `y² = x³ + a2 x² + a4 x + a6` over ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EllipticCurve {
    pub a2: i64,
    pub a4: i64,
    pub a6: i64,
}

impl EllipticCurve {
    /// Short Weierstrass form `y² = x³ + A x + B`.
    pub fn short(a: i64, b: i64) -> Self {
        Self { a2: 0, a4: a, a6: b }
    }

    /// Legendre form `y² = x(x-1)(x-λ)`.
    pub fn legendre(lambda: i64) -> Self {
        Self { a2: -(1 + lambda), a4: lambda, a6: 0 }
    }

    /// `16 · disc(x³ + a2 x² + a4 x + a6)`; equals `-16(4A³ + 27B²)` in short form.
    pub fn discriminant(&self) -> i128 {
        let (b, c, d) = (self.a2 as i128, self.a4 as i128, self.a6 as i128);
        16 * (b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d)
    }

    pub fn is_good_prime(&self, p: u64) -> bool {
        p != 2 && PrimeModulus::new(p).is_ok() && self.discriminant() % p as i128 != 0
    }

    fn rhs_mod(&self, x: u64, p: u64) -> u64 {
        let m = p as i128;
        let x = x as i128;
        let v = ((x + self.a2 as i128) * x % m + self.a4 as i128) % m * x % m + self.a6 as i128;
        v.rem_euclid(m) as u64
    }
}

impl std::fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = x^3")?;
        for (c, mono) in [(self.a2, "x^2"), (self.a4, "x"), (self.a6, "")] {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { '-' } else { '+' };
            match (c.unsigned_abs(), mono) {
                (1, m) if !m.is_empty() => write!(f, " {sign} {m}")?,
                (a, m) => write!(f, " {sign} {a}{m}")?,
            }
        }
        Ok(())
    }
}

/// `a_p = p + 1 - #E(𝔽_p) = -Σ_x χ(x³ + a2 x² + a4 x + a6)`.
pub fn elliptic_ap(curve: &EllipticCurve, p: u64) -> Result<i64> {
    if !curve.is_good_prime(p) {
        return Err(Error::BadPrime { p, what: format!("{curve:?}") });
    }
    let table = SquareTable::new(PrimeModulus::new(p)?);
    Ok(elliptic_ap_with(curve, &table))
}

fn elliptic_ap_with(curve: &EllipticCurve, table: &SquareTable) -> i64 {
    let p = table.modulus().get();
    let s: i64 = (0..p).map(|x| table.chi(curve.rhs_mod(x, p)) as i64).sum();
    assert!(s * s <= 4 * p as i64, "Hasse bound violated at p = {p}");
    -s
}

/// `S(v) = Σ_{s ∈ 𝔽_p} χ(s(s-1)(s-v))`.
pub fn legendre_fibre_sum(table: &SquareTable, v: u64) -> i64 {
    let p = table.modulus().get();
    (0..p)
        .map(|s| {
            let f = s * ((s + p - 1) % p) % p * ((s + p - v % p) % p) % p;
            table.chi(f) as i64
        })
        .sum()
}

/// Affine points of `w² = Π s(s-1)(s-v)` over 𝔽_p by full enumeration of
/// `(x, y, z, t, v) ∈ 𝔽_p⁵`. Intended for small `p` (oracle use).
pub fn ahlgren_count_bruteforce(p: u64) -> Result<u128> {
    let table = SquareTable::new(PrimeModulus::new(p)?);
    let mut total: u128 = 0;
    for v in 0..p {
        let g: Vec<u64> = (0..p).map(|s| s * ((s + p - 1) % p) % p * ((s + p - v) % p) % p).collect();
        for &gx in &g {
            for &gy in &g {
                let gxy = gx * gy % p;
                for &gz in &g {
                    let gxyz = gxy * gz % p;
                    for &gt in &g {
                        let f = gxyz * gt % p;
                        // w² = f has 1 + χ(f) solutions
                        total += (1 + table.chi(f) as i64) as u128;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Same count as [`ahlgren_count_bruteforce`] in `O(p²)`:
/// `N(p) = Σ_v (p⁴ + S(v)⁴)`.
pub fn ahlgren_count_fast(p: u64) -> Result<u128> {
    let table = SquareTable::new(PrimeModulus::new(p)?);
    let p4 = (p as u128).pow(4);
    Ok((0..p)
        .into_par_iter()
        .map(|v| {
            let s = legendre_fibre_sum(&table, v) as i128;
            p4 + s.pow(4) as u128
        })
        .sum())
}

/// `p⁵ + 2p³ - 4p² - 9p - 1 - a_p`.
pub fn ahlgren_prediction(p: u64, a_p: i128) -> i128 {
    let p = p as i128;
    p.pow(5) + 2 * p.pow(3) - 4 * p * p - 9 * p - 1 - a_p
}

/// Coefficients of `η(q²)¹²`, the weight-6 level-4 newform.
pub fn level4_weight6_coefficients(precision: usize) -> Vec<i128> {
    let eta = EtaProduct::new(&[(2, 12)]).expect("valid eta product");
    eta.expand(precision).iter().map(|(_, c)| c.to_i128().expect("fits")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AhlgrenRow {
    pub p: u64,
    pub a_p: i128,
    pub count: u128,
    pub brute: Option<u128>,
    pub predicted: i128,
    pub matches: bool,
}

/// One row per odd prime `p <= pmax`: the fast count, the brute-force count
/// for `p <= brute_max`, and the prediction from the level-4 form.
pub fn verify_ahlgren(pmax: u64, brute_max: u64) -> Result<Vec<AhlgrenRow>> {
    if pmax < 3 {
        return Err(Error::InvalidArgument(format!("pmax = {pmax} must be at least 3")));
    }
    let coeffs = level4_weight6_coefficients(pmax as usize);
    odd_primes_up_to(pmax)
        .into_par_iter()
        .map(|p| {
            let a_p = coeffs[p as usize - 1];
            let count = ahlgren_count_fast(p)?;
            let brute = if p <= brute_max { Some(ahlgren_count_bruteforce(p)?) } else { None };
            let predicted = ahlgren_prediction(p, a_p);
            let matches = count as i128 == predicted && brute.is_none_or(|b| b == count);
            Ok(AhlgrenRow { p, a_p, count, brute, predicted, matches })
        })
        .collect()
}

/// Convenience for reports: `a_p` as `BigInt`.
pub fn elliptic_ap_big(curve: &EllipticCurve, p: u64) -> Result<BigInt> {
    elliptic_ap(curve, p).map(BigInt::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::legendre;

    #[test]
    fn display() {
        assert_eq!(EllipticCurve::short(-1, 0).to_string(), "y^2 = x^3 - x");
        assert_eq!(EllipticCurve::short(0, -16).to_string(), "y^2 = x^3 - 16");
        assert_eq!(EllipticCurve::legendre(2).to_string(), "y^2 = x^3 - 3x^2 + 2x");
    }

    #[test]
    fn elliptic_examples() {
        let e = EllipticCurve::short(-1, 0);
        assert_eq!(e.discriminant(), 64);
        assert_eq!(elliptic_ap(&e, 5).unwrap(), -2);
        assert_eq!(elliptic_ap(&e, 3).unwrap(), 0);
        assert_eq!(elliptic_ap(&e, 13).unwrap(), 6);
        // Enumerating x ∈ 𝔽_7: χ(x³ - 16) sums to -1, so a_7 = +1.
        assert_eq!(elliptic_ap(&EllipticCurve::short(0, -16), 7).unwrap(), 1);
        assert_eq!(elliptic_ap(&EllipticCurve::short(0, 16), 7).unwrap(), -1);
    }

    #[test]
    fn bad_primes_rejected() {
        let e = EllipticCurve::short(-1, 0);
        assert!(elliptic_ap(&e, 2).is_err());
        assert!(elliptic_ap(&EllipticCurve::short(0, -16), 3).is_err());
        assert!(elliptic_ap(&e, 9).is_err());
    }

    #[test]
    fn hasse_bound_on_reference_curves() {
        for curve in [EllipticCurve::short(-1, 0), EllipticCurve::short(0, -16), EllipticCurve::short(0, 16)] {
            for p in odd_primes_up_to(500).into_iter().filter(|&p| curve.is_good_prime(p)) {
                let a = elliptic_ap(&curve, p).unwrap();
                assert!(a * a <= 4 * p as i64);
            }
        }
    }

    #[test]
    fn small_counts_frozen() {
        // Frozen from an independent enumeration; formula side
        // 3⁵+2·27-36-27-1+12 = 245 and 3125+250-100-45-1-54 = 3175.
        assert_eq!(ahlgren_count_bruteforce(3).unwrap(), 245);
        assert_eq!(ahlgren_count_bruteforce(5).unwrap(), 3175);
        assert_eq!(ahlgren_count_bruteforce(7).unwrap(), 17321);
        assert_eq!(ahlgren_count_fast(3).unwrap(), 245);
        assert_eq!(ahlgren_count_fast(5).unwrap(), 3175);
        assert_eq!(ahlgren_prediction(3, -12), 245);
        assert_eq!(ahlgren_prediction(5, 54), 3175);
    }

    #[test]
    fn fast_equals_brute() {
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(ahlgren_count_fast(p).unwrap(), ahlgren_count_bruteforce(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn fibre_sums_are_legendre_family_traces() {
        for p in odd_primes_up_to(31) {
            let table = SquareTable::new(PrimeModulus::new(p).unwrap());
            for v in 2..p {
                let curve = EllipticCurve::legendre(v as i64);
                assert_eq!(-legendre_fibre_sum(&table, v), elliptic_ap(&curve, p).unwrap(), "p={p} v={v}");
            }
        }
    }

    #[test]
    fn count_is_at_least_p5() {
        for p in odd_primes_up_to(60) {
            assert!(ahlgren_count_fast(p).unwrap() >= (p as u128).pow(5));
        }
    }

    #[test]
    fn verify_table_shape() {
        let rows = verify_ahlgren(31, 7).unwrap();
        assert_eq!(rows.iter().map(|r| r.p).collect::<Vec<_>>(), vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert!(rows.iter().all(|r| r.matches));
        assert_eq!(rows[2].brute, Some(17321));
        assert_eq!(rows[3].brute, None);
        assert!(verify_ahlgren(2, 0).is_err());
    }

    #[test]
    fn legendre_reference_for_tables() {
        let table = SquareTable::new(PrimeModulus::new(11).unwrap());
        for a in 0..11 {
            assert_eq!(table.chi(a), legendre(a as i64, 11).unwrap());
        }
    }
}
