//! Complex-multiplication eigenvalue systems for ℚ(i) and ℚ(√-3).
//!
//! For a CM elliptic curve with trace `a_p` at a split prime the Frobenius
//! eigenvalues are `α, ᾱ` with `α ᾱ = p`, and the weight-`k` form attached to
//! the `(k-1)`-st power of the Grössencharakter has `a_p = α^{k-1} + ᾱ^{k-1}`.
//! At inert primes the coefficient vanishes and the local factor is
//! `1 ∓ p^{k-1} T²` depending on the parity of `k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to, IntPolynomial};
use crate::error::{Error, Result};
use crate::qseries::{hecke_expand, kronecker, Character, HeckeCoefficientSpec, QSeries};

/// Imaginary quadratic field of class number one with extra units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CmField {
    /// ℚ(i), ring of integers ℤ[i].
    Gaussian,
    /// ℚ(√-3), ring of integers ℤ[ω] with ω = (1 + √-3)/2.
    Eisenstein,
}

impl CmField {
    pub fn name(self) -> &'static str {
        match self {
            CmField::Gaussian => "Q(i)",
            CmField::Eisenstein => "Q(sqrt-3)",
        }
    }

    /// `d` in ℚ(√-d).
    pub fn d(self) -> i64 {
        match self {
            CmField::Gaussian => 4,
            CmField::Eisenstein => 3,
        }
    }

    pub fn character(self) -> Character {
        Character::Kronecker(-self.d())
    }

    /// χ_{-d}(p) for any prime `p`.
    pub fn chi(self, p: u64) -> i64 {
        kronecker(-self.d(), p)
    }

    /// The ramified prime, bad for every form in the family.
    pub fn ramified_prime(self) -> u64 {
        match self {
            CmField::Gaussian => 2,
            CmField::Eisenstein => 3,
        }
    }

    pub fn is_split(self, p: u64) -> bool {
        self.chi(p) == 1
    }

    pub fn units(self) -> Vec<QuadOrderElem> {
        let pairs: &[(i64, i64)] = match self {
            CmField::Gaussian => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            CmField::Eisenstein => &[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)],
        };
        pairs.iter().map(|&(x, y)| QuadOrderElem::new(self, x, y)).collect()
    }
}

impl fmt::Display for CmField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `x + y i` in ℤ[i] or `x + y ω` in ℤ[ω].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadOrderElem {
    pub field: CmField,
    #[serde(with = "crate::arith::decimal")]
    pub x: BigInt,
    #[serde(with = "crate::arith::decimal")]
    pub y: BigInt,
}

impl QuadOrderElem {
    pub fn new(field: CmField, x: i64, y: i64) -> Self {
        Self { field, x: x.into(), y: y.into() }
    }

    pub fn one(field: CmField) -> Self {
        Self::new(field, 1, 0)
    }

    pub fn norm(&self) -> BigInt {
        match self.field {
            CmField::Gaussian => &self.x * &self.x + &self.y * &self.y,
            CmField::Eisenstein => &self.x * &self.x + &self.x * &self.y + &self.y * &self.y,
        }
    }

    pub fn trace(&self) -> BigInt {
        match self.field {
            CmField::Gaussian => BigInt::from(2) * &self.x,
            CmField::Eisenstein => BigInt::from(2) * &self.x + &self.y,
        }
    }

    pub fn conj(&self) -> Self {
        match self.field {
            CmField::Gaussian => Self { field: self.field, x: self.x.clone(), y: -&self.y },
            // conj(ω) = 1 - ω
            CmField::Eisenstein => Self { field: self.field, x: &self.x + &self.y, y: -&self.y },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let (a, b, c, d) = (&self.x, &self.y, &other.x, &other.y);
        match self.field {
            CmField::Gaussian => Self { field: self.field, x: a * c - b * d, y: a * d + b * c },
            // ω² = ω - 1
            CmField::Eisenstein => {
                Self { field: self.field, x: a * c - b * d, y: a * d + b * c + b * d }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `α ≡ 1 mod 2+2i` in ℤ[i], `α ≡ 1 mod 3` in ℤ[ω].
    pub fn is_primary(&self) -> bool {
        let m = |v: BigInt, n: i64| (v % n).is_zero();
        match self.field {
            // (α - 1)(2 - 2i) ≡ 0 mod 8
            CmField::Gaussian => {
                let a1 = &self.x - 1;
                m(&a1 + &self.y, 4) && m(&self.y - &a1, 4)
            }
            CmField::Eisenstein => m(&self.x - 1, 3) && m(self.y.clone(), 3),
        }
    }
}

impl fmt::Display for QuadOrderElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = match self.field {
            CmField::Gaussian => "i",
            CmField::Eisenstein => "w",
        };
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else if self.y < BigInt::zero() {
            write!(f, "{}-{}{}", self.x, -&self.y, unit)
        } else {
            write!(f, "{}+{}{}", self.x, self.y, unit)
        }
    }
}

/// `α^m + ᾱ^m` from `a = α + ᾱ` and `p = α ᾱ` by the Lucas recurrence
/// `s_m = a s_{m-1} - p s_{m-2}`, `s_0 = 2`, `s_1 = a`.
pub fn power_trace(a_p: &BigInt, p: &BigInt, m: u32) -> BigInt {
    let mut prev = BigInt::from(2);
    if m == 0 {
        return prev;
    }
    let mut cur = a_p.clone();
    for _ in 1..m {
        let next = a_p * &cur - p * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn check_good(field: CmField, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == field.ramified_prime() {
        return Err(Error::BadPrime { p, what: format!("CM forms over {field}") });
    }
    Ok(())
}

/// Local factor `det(1 - Frob_p T)` of the weight-`k` form whose base curve
/// has trace `curve_ap` at `p`.
pub fn euler_factor(weight: u32, field: CmField, curve_ap: &BigInt, p: u64) -> Result<IntPolynomial> {
    check_good(field, p)?;
    let pk = BigInt::from(p).pow(weight - 1);
    Ok(if field.is_split(p) {
        let s = power_trace(curve_ap, &BigInt::from(p), weight - 1);
        IntPolynomial::new(vec![BigInt::one(), -s, pk])
    } else if weight % 2 == 1 {
        // eigenvalues ±p^{(k-1)/2}
        IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), -pk])
    } else {
        // eigenvalues ±i p^{(k-1)/2}
        IntPolynomial::new(vec![BigInt::one(), BigInt::zero(), pk])
    })
}

/// Frobenius trace of the base curve at a good prime, checked against the
/// splitting behaviour in the CM field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub p: u64,
    #[serde(with = "crate::arith::decimal")]
    pub a_p: BigInt,
    pub split: bool,
}

impl FrobeniusData {
    pub fn new(field: CmField, p: u64, a_p: impl Into<BigInt>) -> Result<Self> {
        check_good(field, p)?;
        let a_p = a_p.into();
        let split = field.is_split(p);
        let ok = if split {
            &a_p * &a_p < BigInt::from(4 * p) && !a_p.is_zero()
        } else {
            a_p.is_zero()
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "a_{p} = {a_p} is inconsistent with {} at p = {p}",
                if split { "a split prime" } else { "an inert prime" }
            )));
        }
        Ok(Self { p, a_p, split })
    }
}

/// All elements of norm `p` (there are `2·#units` when `p` splits).
fn elements_of_norm(field: CmField, p: u64) -> Vec<QuadOrderElem> {
    let bound = (4 * p).sqrt() as i64 + 1;
    let target = BigInt::from(p);
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let e = QuadOrderElem::new(field, x, y);
            if e.norm() == target {
                out.push(e);
            }
        }
    }
    out
}

/// Associates `u·π` satisfying the normalizing congruence.
pub fn primary_associates(pi: &QuadOrderElem) -> Vec<QuadOrderElem> {
    pi.field.units().iter().map(|u| u.mul(pi)).filter(QuadOrderElem::is_primary).collect()
}

/// The primary generator of a prime above a split `p`, taking the one with
/// positive imaginary part (`y > 0`) of the conjugate pair.
pub fn normalize_prime_element(p: u64, field: CmField) -> Result<QuadOrderElem> {
    if !is_prime(p) || !field.is_split(p) {
        return Err(Error::NotSplit { p, field: field.name() });
    }
    let Some(pi) = elements_of_norm(field, p).into_iter().find(|e| e.y > BigInt::zero()) else {
        return Err(Error::NoNormalizedAssociate(p));
    };
    let primary = primary_associates(&pi);
    let [alpha] = primary.as_slice() else {
        return Err(Error::NoNormalizedAssociate(p));
    };
    Ok(if alpha.y > BigInt::zero() { alpha.clone() } else { alpha.conj() })
}

/// Weight-`k` CM newform attached to `ψ^{k-1}` for the reference
/// Grössencharakter `ψ((α)) = α`, `α` primary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmForm {
    pub weight: u32,
    pub field: CmField,
}

impl CmForm {
    pub fn new(weight: u32, field: CmField) -> Self {
        assert!(weight >= 2, "weight must be at least 2");
        Self { weight, field }
    }

    /// Trivial for even weight, χ_{-d} for odd weight.
    pub fn nebentypus(&self) -> Character {
        if self.weight % 2 == 0 {
            Character::Trivial
        } else {
            self.field.character()
        }
    }

    /// `a_p` as the sum of `ψ^{k-1}` over the ideals of norm `p`.
    pub fn prime_coefficient(&self, p: u64) -> Result<BigInt> {
        check_good(self.field, p)?;
        if !self.field.is_split(p) {
            return Ok(BigInt::zero());
        }
        let alpha = normalize_prime_element(p, self.field)?;
        Ok(alpha.pow(self.weight - 1).trace())
    }

    pub fn euler_factor(&self, p: u64) -> Result<IntPolynomial> {
        let a = if self.field.is_split(p) {
            normalize_prime_element(p, self.field)?.trace()
        } else {
            BigInt::zero()
        };
        euler_factor(self.weight, self.field, &a, p)
    }

    pub fn hecke_spec(&self, precision: usize) -> Result<HeckeCoefficientSpec> {
        let bad = self.field.ramified_prime();
        let mut spec = HeckeCoefficientSpec::new(self.weight, self.nebentypus())
            .with_bad_primes(&[bad])
            .zero_at_bad_primes();
        for p in primes_up_to(precision as u64) {
            if p != bad {
                spec.set(p, self.prime_coefficient(p)?);
            }
        }
        Ok(spec)
    }

    pub fn expand(&self, precision: usize) -> Result<QSeries> {
        hecke_expand(&self.hecke_spec(precision)?, precision)
    }
}

/// Group acting on `H¹(E)^{⊗n}`: the sum-zero subgroup of `ℤ_r^n`, each
/// factor's generator acting on `H¹(E)` with eigenvalues `ζ_r^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TensorGroup {
    Z2Diagonal,
    Z3,
    Z4,
}

impl TensorGroup {
    pub fn order(self) -> i64 {
        match self {
            TensorGroup::Z2Diagonal => 2,
            TensorGroup::Z3 => 3,
            TensorGroup::Z4 => 4,
        }
    }
}

/// Number of basis tensors `e_{ε_1} ⊗ … ⊗ e_{ε_n}` fixed by the group.
///
/// Brute force over all `2^n` sign vectors against the generators
/// `e_j - e_n` (`j < n`) of the sum-zero subgroup; `a` acts on `e_ε` by
/// `ζ^{Σ a_j ε_j}`.
pub fn invariant_tensor_dimension(group: TensorGroup, n: u32) -> u64 {
    assert!((1..=24).contains(&n), "n out of range");
    let r = group.order();
    let generators: Vec<Vec<i64>> = (0..n as usize - 1)
        .map(|j| {
            let mut a = vec![0; n as usize];
            a[j] = 1;
            a[n as usize - 1] = r - 1;
            a
        })
        .collect();
    (0u64..1 << n)
        .filter(|&mask| {
            let eps: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            generators
                .iter()
                .all(|a| a.iter().zip(&eps).map(|(x, e)| x * e).sum::<i64>().rem_euclid(r) == 0)
        })
        .count() as u64
}

/// Trace of Frobenius on the 2-dimensional invariant part of
/// `H¹(E)^{⊗n}` for the ℤ_3/ℤ_4 quotient constructions.
///
/// Split: eigenvalues `α^n, ᾱ^n`. Inert: Frobenius swaps the two eigenlines,
/// so the matrix is antidiagonal and the trace is zero.
pub fn quotient_frobenius_trace(curve_ap: &BigInt, p: u64, field: CmField, n: u32) -> Result<BigInt> {
    check_good(field, p)?;
    Ok(if field.is_split(p) { power_trace(curve_ap, &BigInt::from(p), n) } else { BigInt::zero() })
}
