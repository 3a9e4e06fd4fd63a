use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scalar arithmetic for the elimination routines below.
pub trait Field {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// 𝔽_p with elements stored as reduced `u64` residues.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` is assumed prime; callers validate through [`super::PrimeModulus`].
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
}

/// Reduced row-echelon form, zero rows dropped. Pivots are 1 and pivot
/// columns strictly increase, so equal row spaces give identical output.
pub fn echelon<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = field.inv(&m[pivot_row][col]);
        for x in m[pivot_row].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot) {
                *x = field.sub(x, &field.mul(&factor, pv));
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    echelon(field, rows).len()
}

/// Remainder of `v` after clearing every pivot column of an echelon basis.
/// Zero exactly when `v` lies in the row space.
pub fn reduce_against<F: Field>(field: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = v.to_vec();
    for row in basis {
        let Some(pc) = row.iter().position(|x| !field.is_zero(x)) else {
            continue;
        };
        if field.is_zero(&out[pc]) {
            continue;
        }
        let factor = out[pc].clone();
        for (x, r) in out.iter_mut().zip(row) {
            *x = field.sub(x, &field.mul(&factor, r));
        }
    }
    out
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant<F: Field>(field: &F, square: &[Vec<F::Elem>]) -> F::Elem {
    let n = square.len();
    let mut m = square.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if found != col {
            m.swap(found, col);
            det = field.sub(&field.zero(), &det);
        }
        det = field.mul(&det, &m[col][col]);
        let inv = field.inv(&m[col][col]);
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &inv);
            for c in col..n {
                let t = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &t);
            }
        }
    }
    det
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
    cols: usize,
}

impl RationalMatrix {
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| RationalField.from_int(v)).collect())
            .collect();
        Self { rows, cols }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols }
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn echelon(&self) -> RationalMatrix {
        Self { rows: echelon(&RationalField, &self.rows), cols: self.cols }
    }

    pub fn rank(&self) -> usize {
        rank(&RationalField, &self.rows)
    }
}
