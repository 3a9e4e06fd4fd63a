//! Published reference values, used as expected data by the suites and
//! the acceptance tests.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cm::{CmField, CmForm};
use crate::point_count::EllipticCurve;
use crate::qseries::{EtaProduct, QSeries};

/// A printed q-expansion and the form it is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrintedSeries {
    pub id: &'static str,
    pub level: u32,
    pub form: CmForm,
    /// Eta-quotient `Π η(q^m)^k` as `(m, k)`, when one is known.
    pub eta: Option<&'static [(u64, u64)]>,
    /// Nonzero printed terms `(n, a_n)`.
    pub terms: &'static [(usize, i64)],
    /// Largest printed exponent; coefficients up to here are all determined.
    pub through: usize,
}

impl PrintedSeries {
    pub fn series(&self) -> QSeries {
        let mut s = QSeries::zero(self.through);
        for &(n, c) in self.terms {
            s.set(n, BigInt::from(c));
        }
        s
    }

    pub fn eta_product(&self) -> Option<EtaProduct> {
        self.eta.map(|f| EtaProduct::new(f).expect("printed eta products are valid"))
    }
}

const fn form(weight: u32, field: CmField) -> CmForm {
    CmForm { weight, field }
}

pub const G2_LEVEL32: PrintedSeries = PrintedSeries {
    id: "g2-level32",
    level: 32,
    form: form(2, CmField::Gaussian),
    eta: Some(&[(8, 2), (4, 2)]),
    terms: &[(1, 1), (5, -2), (9, -3), (13, 6), (17, 2)],
    through: 17,
};

pub const G3_LEVEL16: PrintedSeries = PrintedSeries {
    id: "g3-level16",
    level: 16,
    form: form(3, CmField::Gaussian),
    eta: Some(&[(4, 6)]),
    terms: &[(1, 1), (5, -6), (9, 9), (13, 10), (17, -30)],
    through: 17,
};

pub const G4_LEVEL32: PrintedSeries = PrintedSeries {
    id: "g4-level32",
    level: 32,
    form: form(4, CmField::Gaussian),
    eta: None,
    terms: &[(1, 1), (5, 22), (9, -27), (13, -18), (17, -94), (25, 359)],
    through: 25,
};

pub const G6_LEVEL32: PrintedSeries = PrintedSeries {
    id: "g6-level32",
    level: 32,
    form: form(6, CmField::Gaussian),
    eta: None,
    terms: &[(1, 1), (5, -82), (9, -243), (13, -1194), (17, 2242), (25, 3599)],
    through: 25,
};

pub const G2_LEVEL27: PrintedSeries = PrintedSeries {
    id: "g2-level27",
    level: 27,
    form: form(2, CmField::Eisenstein),
    eta: Some(&[(9, 2), (3, 2)]),
    terms: &[(1, 1), (4, -2), (7, -1), (13, 5), (16, 4), (19, -7)],
    through: 19,
};

pub const G3_LEVEL27: PrintedSeries = PrintedSeries {
    id: "g3-level27",
    level: 27,
    form: form(3, CmField::Eisenstein),
    eta: None,
    terms: &[(1, 1), (4, 4), (7, -13), (13, -1), (16, 16), (19, 11), (25, 25)],
    through: 25,
};

pub const G4_LEVEL9: PrintedSeries = PrintedSeries {
    id: "g4-level9",
    level: 9,
    form: form(4, CmField::Eisenstein),
    eta: Some(&[(3, 8)]),
    terms: &[(1, 1), (4, -8), (7, 20), (13, -70), (16, 64), (19, 56)],
    through: 19,
};

pub const PRINTED_SERIES: [PrintedSeries; 7] =
    [G2_LEVEL32, G3_LEVEL16, G4_LEVEL32, G6_LEVEL32, G2_LEVEL27, G3_LEVEL27, G4_LEVEL9];

/// `η(q²)¹²`, the weight-6 level-4 form in the point-count identity.
pub const LEVEL4_WEIGHT6_ETA: &[(u64, u64)] = &[(2, 12)];

/// `y² = x³ - x`, CM by `ℤ[i]`, attached to [`G2_LEVEL32`].
pub fn curve_level32() -> EllipticCurve {
    EllipticCurve::short(-1, 0)
}

/// `y² = x³ + 16` (isomorphic to `y² + y = x³`), CM by `ℤ[ω]`, the curve
/// whose traces are the coefficients of [`G2_LEVEL27`].
pub fn curve_level27() -> EllipticCurve {
    EllipticCurve::short(0, 16)
}

/// `y² = x³ - 16`, isomorphic over ℚ to the printed model `y² = x³ - 1/4`.
/// It is the twist of [`curve_level27`] by `χ₋₄`.
pub fn curve_level27_printed_model() -> EllipticCurve {
    EllipticCurve::short(0, -16)
}

/// One row of the printed singularity table for the 12-plane arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: &'static str,
    pub dim: usize,
    pub mult: usize,
    pub count: usize,
    pub incidence: [usize; 6],
}

const fn row(label: &'static str, dim: usize, mult: usize, count: usize, incidence: [usize; 6]) -> TableRow {
    TableRow { label, dim, mult, count, incidence }
}

pub const AHLGREN_TABLE: [TableRow; 11] = [
    row("T1", 3, 2, 66, [0, 0, 0, 0, 0, 0]),
    row("T2", 2, 3, 148, [3, 0, 0, 0, 0, 0]),
    row("T3", 2, 4, 18, [6, 0, 0, 0, 0, 0]),
    row("T4", 1, 4, 117, [6, 4, 0, 0, 0, 0]),
    row("T5", 1, 5, 36, [10, 6, 1, 0, 0, 0]),
    row("T6", 1, 6, 18, [15, 8, 3, 0, 0, 0]),
    row("T7", 0, 5, 12, [10, 10, 0, 5, 0, 0]),
    row("T8", 0, 6, 18, [15, 16, 1, 6, 2, 0]),
    row("T9", 0, 7, 12, [21, 23, 3, 8, 3, 1]),
    row("T10", 0, 8, 3, [28, 32, 6, 16, 0, 4]),
    row("T11", 0, 9, 4, [36, 21, 9, 9, 9, 6]),
];

pub const AHLGREN_NEAR_PENCIL: [&str; 6] = ["T2", "T4", "T5", "T7", "T8", "T9"];
pub const AHLGREN_ADMISSIBLE: [&str; 5] = ["T1", "T3", "T6", "T10", "T11"];

/// Euler numbers of the K3 × elliptic curve quotients, as printed.
pub const BORCEA_VOISIN: [i64; 20] =
    [-108, -96, -84, -72, -60, -48, -36, -24, -12, 0, 12, 24, 36, 48, 60, 72, 84, 96, 108, 120];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_series_shape() {
        for s in PRINTED_SERIES {
            assert_eq!(s.series().coeff(1), &BigInt::from(1), "{}", s.id);
            assert_eq!(s.terms.last().unwrap().0, s.through, "{}", s.id);
            if let Some(eta) = s.eta_product() {
                assert_eq!(eta.weight_times_two(), 2 * s.form.weight as u64, "{}", s.id);
            }
        }
    }

    #[test]
    fn table_counts_sum() {
        assert_eq!(AHLGREN_TABLE.iter().map(|r| r.count).sum::<usize>(), 452);
    }
}
