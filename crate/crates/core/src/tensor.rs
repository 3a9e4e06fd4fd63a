//! Local L-factors of tensor products of 2-dimensional Frobenius data.
//!
//! A tensor product's Frobenius traces are products of the factors' traces.
//! Its characteristic polynomial is recovered from those power sums with
//! Newton's identities, so every factor identity is checked as an equality
//! of integer polynomials, not only of first traces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{odd_primes_up_to, IntPolynomial};
use crate::cm::{power_trace, CmField, FrobeniusData};
use crate::error::{Error, Result};
use crate::qseries::EtaProduct;

/// Tensor products up to this many factors (degree 16) are allowed by default.
pub const DEFAULT_MAX_FACTORS: usize = 4;

/// 2-dimensional Frobenius action given by its trace and determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalRep {
    #[serde(with = "crate::arith::decimal")]
    pub trace: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub det: BigInt,
}

impl LocalRep {
    pub fn new(trace: impl Into<BigInt>, det: impl Into<BigInt>) -> Self {
        Self { trace: trace.into(), det: det.into() }
    }

    /// Weight-`k` CM form at `p`, from the base curve's Frobenius data.
    /// Split: eigenvalues `α^{k-1}, ᾱ^{k-1}`. Inert: `±p^{(k-1)/2}` for odd
    /// `k`, `±i p^{(k-1)/2}` for even `k`.
    pub fn cm(frob: &FrobeniusData, weight: u32) -> Self {
        let p = BigInt::from(frob.p);
        let pk = p.pow(weight - 1);
        if frob.split {
            Self { trace: power_trace(&frob.a_p, &p, weight - 1), det: pk }
        } else if weight % 2 == 1 {
            Self { trace: BigInt::zero(), det: -pk }
        } else {
            Self { trace: BigInt::zero(), det: pk }
        }
    }

    /// Eigenvalues multiplied by `p^shift` (the factor of `L(g, s - shift)`).
    pub fn shifted(&self, p: u64, shift: u32) -> Self {
        let s = BigInt::from(p).pow(shift);
        Self { trace: &self.trace * &s, det: &self.det * &s * &s }
    }

    /// `tr(Frob^m)` by the Lucas recurrence.
    pub fn trace_of_power(&self, m: u32) -> BigInt {
        power_trace(&self.trace, &self.det, m)
    }

    /// `1 - tr T + det T²`.
    pub fn euler_factor(&self) -> IntPolynomial {
        IntPolynomial::new(vec![BigInt::one(), -&self.trace, self.det.clone()])
    }
}

/// `tr(Frob^m)` on the tensor product.
pub fn tensor_trace(reps: &[LocalRep], m: u32) -> BigInt {
    reps.iter().map(|r| r.trace_of_power(m)).product()
}

/// Characteristic polynomial `det(1 - F T)` from power sums
/// `P_m = tr(F^m)`, `m = 1..=degree`, via Newton's identities
/// `j e_j = Σ_{i=1}^{j} (-1)^{i-1} e_{j-i} P_i`.
pub fn newton_char_poly(power_sums: &[BigInt]) -> Result<IntPolynomial> {
    let degree = power_sums.len();
    let mut e = vec![BigInt::one()];
    for j in 1..=degree {
        let mut acc = BigInt::zero();
        for i in 1..=j {
            let term = &e[j - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(j));
        if !r.is_zero() {
            return Err(Error::NonIntegralNewtonStep { step: j });
        }
        e.push(q);
    }
    Ok(IntPolynomial::new(
        e.into_iter().enumerate().map(|(j, v)| if j % 2 == 1 { -v } else { v }).collect(),
    ))
}

/// Power sums `P_1..P_count` of the inverse roots of `f = det(1 - F T)`,
/// from `f · Σ P_m T^m = -T f'`.
pub fn power_sums(f: &IntPolynomial, count: usize) -> Vec<BigInt> {
    let c = |i: usize| f.coeff(i);
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut v = -BigInt::from(m) * c(m);
        for i in 1..m {
            v -= c(i) * &out[m - i - 1];
        }
        out.push(v);
    }
    out
}

/// Local factor of the tensor product, degree `2^n`, for at most
/// [`DEFAULT_MAX_FACTORS`] factors.
pub fn tensor_euler_factor(reps: &[LocalRep]) -> Result<IntPolynomial> {
    if reps.len() > DEFAULT_MAX_FACTORS {
        return Err(Error::TensorTooLarge(reps.len()));
    }
    tensor_euler_factor_unbounded(reps)
}

/// [`tensor_euler_factor`] without the size limit.
pub fn tensor_euler_factor_unbounded(reps: &[LocalRep]) -> Result<IntPolynomial> {
    let degree = 1usize << reps.len();
    let sums: Vec<BigInt> = (1..=degree as u32).map(|m| tensor_trace(reps, m)).collect();
    newton_char_poly(&sums)
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub p: u64,
    pub n: u32,
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    pub equal: bool,
    /// `a^n = Σ_j C(n,j) p^j s_{n-2j} + [n even] C(n,n/2) p^{n/2}`; only
    /// meaningful at split primes.
    pub trace_identity: Option<bool>,
}

/// Compare `det(1 - Frob T)` on `H¹(E)^{⊗n}` with the binomial product of
/// CM factors `Π_j L(g_{n-2j+1}, s-j)^{C(n,j)}`, times for even `n` the
/// Dirichlet factors `(1 - p^{n/2} T)^{h} (1 - χ(p) p^{n/2} T)^{h}`,
/// `h = C(n, n/2)/2`.
pub fn verify_power_factorization(curve_ap: &BigInt, p: u64, field: CmField, n: u32) -> Result<FactorizationCheck> {
    assert!(n >= 1, "n must be positive");
    let frob = FrobeniusData::new(field, p, curve_ap.clone())?;
    let base = LocalRep::cm(&frob, 2);
    let lhs = tensor_euler_factor_unbounded(&vec![base; n as usize])?;

    let mut rhs = IntPolynomial::one();
    for j in 0..=(n - 1) / 2 {
        let g = LocalRep::cm(&frob, n - 2 * j + 1).shifted(p, j);
        rhs = &rhs * &g.euler_factor().pow(binomial(n, j) as u32);
    }
    if n % 2 == 0 {
        let c = binomial(n, n / 2);
        if c % 2 == 1 {
            return Err(Error::OddBinomialExponent { n, k: n / 2 });
        }
        let h = (c / 2) as u32;
        let pn = BigInt::from(p).pow(n / 2);
        let chi = BigInt::from(field.chi(p));
        rhs = &rhs * &IntPolynomial::linear_factor(pn.clone()).pow(h);
        rhs = &rhs * &IntPolynomial::linear_factor(chi * pn).pow(h);
    }

    let trace_identity = frob.split.then(|| {
        let pb = BigInt::from(p);
        let mut sum: BigInt = (0..=(n - 1) / 2)
            .map(|j| BigInt::from(binomial(n, j)) * pb.pow(j) * power_trace(curve_ap, &pb, n - 2 * j))
            .sum();
        if n % 2 == 0 {
            sum += BigInt::from(binomial(n, n / 2)) * pb.pow(n / 2);
        }
        curve_ap.pow(n) == sum
    });

    let equal = lhs == rhs;
    Ok(FactorizationCheck { p, n, lhs, rhs, equal, trace_identity })
}

/// Local factor of `L(g_{k1} ⊗ g_{k2})` and of its CM decomposition
/// `L(g_{k1+k2-1}, s) · L(g_{|k1-k2|+1}, s - min(k1,k2) + 1)`; for
/// `k1 = k2 = k` the second factor is `(1 - p^{k-1}T)(1 - χ(p) p^{k-1}T)`.
pub fn two_form_factors(frob: &FrobeniusData, field: CmField, k1: u32, k2: u32) -> (IntPolynomial, IntPolynomial) {
    let lhs = tensor_euler_factor(&[LocalRep::cm(frob, k1), LocalRep::cm(frob, k2)]).expect("degree 4");
    let top = LocalRep::cm(frob, k1 + k2 - 1).euler_factor();
    let low = k1.min(k2);
    let rest = if k1 == k2 {
        let pk = BigInt::from(frob.p).pow(low - 1);
        &IntPolynomial::linear_factor(pk.clone())
            * &IntPolynomial::linear_factor(BigInt::from(field.chi(frob.p)) * pk)
    } else {
        LocalRep::cm(frob, k1.abs_diff(k2) + 1).shifted(frob.p, low - 1).euler_factor()
    };
    (lhs, &top * &rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G4G3Row {
    pub p: u64,
    #[serde(with = "crate::arith::decimal")]
    pub a_g2: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub a_g3: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub a_g4: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub a_g6: BigInt,
    /// `a_p(g4) a_p(g3) == a_p(g6) + p² a_p(g2)`
    pub trace_equal: bool,
    pub lhs_poly: IntPolynomial,
    pub rhs_poly: IntPolynomial,
    pub equal: bool,
}

/// `L(g4 ⊗ g3, s)` against `L(g6, s) L(g2, s-2)` for the ℚ(i) family at
/// every odd prime `p <= pmax`; base traces from `η(q⁸)²η(q⁴)²`.
pub fn verify_g4xg3(pmax: u64) -> Result<Vec<G4G3Row>> {
    if pmax < 3 {
        return Err(Error::InvalidArgument(format!("pmax = {pmax} must be at least 3")));
    }
    let g2 = EtaProduct::new(&[(8, 2), (4, 2)])?.expand(pmax as usize);
    odd_primes_up_to(pmax)
        .into_par_iter()
        .map(|p| {
            let a = g2.coeff(p as usize).clone();
            let frob = FrobeniusData::new(CmField::Gaussian, p, a.clone())?;
            let coeff = |k: u32| LocalRep::cm(&frob, k).trace;
            let (a3, a4, a6) = (coeff(3), coeff(4), coeff(6));
            let trace_equal = &a4 * &a3 == &a6 + BigInt::from(p * p) * &a;
            let (lhs_poly, rhs_poly) = two_form_factors(&frob, CmField::Gaussian, 4, 3);
            let equal = lhs_poly == rhs_poly;
            Ok(G4G3Row { p, a_g2: a, a_g3: a3, a_g4: a4, a_g6: a6, trace_equal, lhs_poly, rhs_poly, equal })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rep(field: CmField, p: u64, a: i64, k: u32) -> LocalRep {
        LocalRep::cm(&FrobeniusData::new(field, p, a).unwrap(), k)
    }

    #[test]
    fn tensor_traces() {
        let g4 = rep(CmField::Gaussian, 5, -2, 4);
        let g3 = rep(CmField::Gaussian, 5, -2, 3);
        assert_eq!(tensor_trace(&[g4.clone(), g3.clone()], 1), b(-132));
        assert_eq!(tensor_trace(&[g4.clone()], 1), b(22));
        assert_eq!(tensor_trace(&[g4], 0), b(2));
        let g2 = rep(CmField::Gaussian, 5, -2, 2);
        assert_eq!(tensor_trace(&[g2.clone(), g2.clone(), g2], 1), b(-8));
    }

    #[test]
    fn single_rep_reproduces_its_factor() {
        let g2 = rep(CmField::Gaussian, 5, -2, 2);
        assert_eq!(tensor_euler_factor(&[g2]).unwrap(), IntPolynomial::from_i64(&[1, 2, 5]));
        for field in [CmField::Gaussian, CmField::Eisenstein] {
            for p in crate::arith::primes_up_to(100).into_iter().filter(|&p| p != field.ramified_prime()) {
                let a = if field.is_split(p) { crate::cm::normalize_prime_element(p, field).unwrap().trace() } else { b(0) };
                for k in 2..=6 {
                    let r = LocalRep::cm(&FrobeniusData::new(field, p, a.clone()).unwrap(), k);
                    assert_eq!(tensor_euler_factor(&[r.clone()]).unwrap(), r.euler_factor());
                }
            }
        }
    }

    #[test]
    fn g4_times_g3_at_five() {
        let g4 = rep(CmField::Gaussian, 5, -2, 4);
        let g3 = rep(CmField::Gaussian, 5, -2, 3);
        let lhs = tensor_euler_factor(&[g4, g3]).unwrap();
        let expected = &IntPolynomial::from_i64(&[1, 82, 3125]) * &IntPolynomial::from_i64(&[1, 50, 3125]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn g4_times_g3_inert() {
        let frob = FrobeniusData::new(CmField::Gaussian, 3, 0).unwrap();
        let (lhs, rhs) = two_form_factors(&frob, CmField::Gaussian, 4, 3);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, IntPolynomial::from_i64(&[1, 0, 243]).pow(2));
    }

    #[test]
    fn power_factorization_examples() {
        let c = verify_power_factorization(&b(-2), 5, CmField::Gaussian, 2).unwrap();
        assert!(c.equal);
        assert_eq!(c.trace_identity, Some(true));
        let c = verify_power_factorization(&b(-2), 5, CmField::Gaussian, 3).unwrap();
        assert!(c.equal && c.trace_identity == Some(true));
        let c = verify_power_factorization(&b(0), 3, CmField::Gaussian, 4).unwrap();
        assert!(c.equal);
        assert_eq!(c.trace_identity, None);
        assert_eq!(c.lhs.degree(), Some(16));
    }

    #[test]
    fn newton_round_trip() {
        let g4 = rep(CmField::Gaussian, 13, 6, 4);
        let g3 = rep(CmField::Gaussian, 13, 6, 3);
        let g2 = rep(CmField::Gaussian, 13, 6, 2);
        let reps = [g4, g3, g2];
        let f = tensor_euler_factor(&reps).unwrap();
        let sums: Vec<BigInt> = (1..=8).map(|m| tensor_trace(&reps, m)).collect();
        assert_eq!(power_sums(&f, 8), sums);
    }

    #[test]
    fn inconsistent_power_sums_rejected() {
        // P_1 = 1, P_2 = 0 gives e_2 = 1/2
        assert_eq!(newton_char_poly(&[b(1), b(0)]), Err(Error::NonIntegralNewtonStep { step: 2 }));
    }

    #[test]
    fn size_limit() {
        let g2 = rep(CmField::Gaussian, 5, -2, 2);
        assert_eq!(tensor_euler_factor(&vec![g2.clone(); 5]), Err(Error::TensorTooLarge(5)));
        assert_eq!(tensor_euler_factor_unbounded(&vec![g2; 5]).unwrap().degree(), Some(32));
    }

    #[test]
    fn functional_equation_symmetry() {
        let g2 = EtaProduct::new(&[(8, 2), (4, 2)]).unwrap().expand(50);
        for p in odd_primes_up_to(50) {
            let frob = FrobeniusData::new(CmField::Gaussian, p, g2.coeff(p as usize).clone()).unwrap();
            let f = tensor_euler_factor(&[LocalRep::cm(&frob, 4), LocalRep::cm(&frob, 3)]).unwrap();
            let w = 3 + 2;
            let pw = BigInt::from(p).pow(w);
            assert_eq!(f.coeff(4), &pw * &pw * f.coeff(0), "p={p}");
            assert_eq!(f.coeff(3), &pw * f.coeff(1), "p={p}");
        }
    }

    #[test]
    fn printed_g4xg3_rows() {
        let rows = verify_g4xg3(17).unwrap();
        let row = |p| rows.iter().find(|r| r.p == p).unwrap();
        assert_eq!((row(5).a_g4.clone(), row(5).a_g3.clone(), row(5).a_g6.clone()), (b(22), b(-6), b(-82)));
        assert_eq!((row(13).a_g4.clone(), row(13).a_g3.clone(), row(13).a_g6.clone()), (b(-18), b(10), b(-1194)));
        assert_eq!((row(17).a_g4.clone(), row(17).a_g3.clone(), row(17).a_g6.clone()), (b(-94), b(-30), b(2242)));
        assert!(rows.iter().all(|r| r.trace_equal && r.equal));
    }
}
