use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    primes_up_to(bound).into_iter().filter(|&p| p != 2).collect()
}

/// A validated odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 3 && is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Least non-negative residue of `a`.
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }
}

/// Legendre symbol (a/p) by Euler's criterion, with (0/p) = 0.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    let p = PrimeModulus::new(p)?;
    let r = p.reduce(a);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p.get() - 1) / 2, p.get()) == 1 { 1 } else { -1 })
}

/// The quadratic character of 𝔽_p as a lookup table indexed by residue.
#[derive(Debug, Clone)]
pub struct SquareTable {
    p: PrimeModulus,
    chi: Vec<i8>,
}

impl SquareTable {
    pub fn new(p: PrimeModulus) -> Self {
        let n = p.get() as usize;
        let mut chi = vec![-1i8; n];
        chi[0] = 0;
        for x in 1..n {
            chi[(x * x) % n] = 1;
        }
        Self { p, chi }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    /// χ(r) for a reduced residue `0 <= r < p`.
    #[inline]
    pub fn chi(&self, r: u64) -> i8 {
        self.chi[r as usize]
    }

    pub fn chi_of(&self, a: i64) -> i8 {
        self.chi[self.p.reduce(a) as usize]
    }
}
