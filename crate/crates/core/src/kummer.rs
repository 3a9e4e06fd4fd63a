//! Euler characteristics of iterated double-cover (Kummer) constructions.

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler characteristics of a Calabi-Yau `X` with involution and of the
/// fixed divisor `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KummerData {
    pub e_x: i64,
    pub e_d: i64,
}

/// An elliptic curve with `x ↦ -x`, a double cover of `P¹` branched in 4 points.
pub const ELLIPTIC: KummerData = KummerData { e_x: 0, e_d: 4 };

impl KummerData {
    pub const fn new(e_x: i64, e_d: i64) -> Self {
        Self { e_x, e_d }
    }
}

fn overflow() -> Error {
    Error::Overflow("Euler characteristic exceeds i64")
}

fn half(numerator: i64, what: &str) -> Result<i64> {
    if numerator % 2 != 0 {
        return Err(Error::NonIntegralHalf(format!("{what} = {numerator}/2")));
    }
    Ok(numerator / 2)
}

/// `e(X) = ½e(X₁)e(X₂) + (3/2)e(D₁)e(D₂)` and
/// `e(D) = ½e(X₁)e(D₂) + ½e(D₁)e(X₂) + e(D₁)e(D₂)`.
pub fn double_cover_euler(a: KummerData, b: KummerData) -> Result<KummerData> {
    let xx = a.e_x.checked_mul(b.e_x).ok_or_else(overflow)?;
    let dd = a.e_d.checked_mul(b.e_d).ok_or_else(overflow)?;
    let xd = a.e_x.checked_mul(b.e_d).ok_or_else(overflow)?;
    let dx = a.e_d.checked_mul(b.e_x).ok_or_else(overflow)?;
    let x_num = dd.checked_mul(3).and_then(|t| t.checked_add(xx)).ok_or_else(overflow)?;
    let d_num = xd.checked_add(dx).ok_or_else(overflow)?;
    let e_x = half(x_num, "e(X)")?;
    let e_d = half(d_num, "e(D) half-terms")?.checked_add(dd).ok_or_else(overflow)?;
    Ok(KummerData { e_x, e_d })
}

/// `double_cover_euler` folded over `n` copies of [`ELLIPTIC`].
pub fn fold_elliptic(n: u32) -> Result<KummerData> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one factor".into()));
    }
    (1..n).try_fold(ELLIPTIC, |acc, _| double_cover_euler(acc, ELLIPTIC))
}

/// `e(Xⁿ) = ½(6ⁿ + 3(-2)ⁿ)`.
pub fn iterated_elliptic_euler(n: u32) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one factor".into()));
    }
    let six = 6i64.checked_pow(n).ok_or_else(overflow)?;
    let two = (-2i64).checked_pow(n).and_then(|t| t.checked_mul(3)).ok_or_else(overflow)?;
    half(six.checked_add(two).ok_or_else(overflow)?, "e(X^n)")
}

/// A K3 surface with involution (`e = 24`, fixed curve `e(D₁)`) times an
/// elliptic curve.
pub fn borcea_voisin_euler(e_d1: i64) -> Result<i64> {
    Ok(double_cover_euler(KummerData::new(24, e_d1), ELLIPTIC)?.e_x)
}

/// Euler numbers for the fixed-curve Euler characteristics `e(D₁)`, even,
/// from -18 to 20.
pub fn borcea_voisin_table() -> Vec<i64> {
    (-18..=20)
        .step_by(2)
        .map(|e| borcea_voisin_euler(e).expect("small values"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(double_cover_euler(ELLIPTIC, ELLIPTIC).unwrap(), KummerData::new(24, 16));
        assert_eq!(double_cover_euler(KummerData::new(24, -18), ELLIPTIC).unwrap().e_x, -108);
        assert_eq!(iterated_elliptic_euler(1).unwrap(), 0);
        assert_eq!(iterated_elliptic_euler(2).unwrap(), 24);
        assert_eq!(iterated_elliptic_euler(5).unwrap(), 3840);
        assert_eq!(fold_elliptic(3).unwrap().e_x, 96);
    }

    #[test]
    fn fold_matches_closed_form() {
        for n in 1..=10 {
            assert_eq!(fold_elliptic(n).unwrap().e_x, iterated_elliptic_euler(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn table() {
        let t = borcea_voisin_table();
        let expected: Vec<i64> = vec![
            -108, -96, -84, -72, -60, -48, -36, -24, -12, 0, 12, 24, 36, 48, 60, 72, 84, 96, 108, 120,
        ];
        assert_eq!(t, expected);
        assert!(t.iter().all(|e| e % 12 == 0));
    }

    #[test]
    fn errors() {
        assert!(matches!(double_cover_euler(KummerData::new(1, 0), KummerData::new(1, 0)), Err(Error::NonIntegralHalf(_))));
        assert!(matches!(double_cover_euler(KummerData::new(2, 1), KummerData::new(0, 1)), Err(Error::NonIntegralHalf(_))));
        assert!(matches!(double_cover_euler(KummerData::new(i64::MAX, 0), KummerData::new(2, 0)), Err(Error::Overflow(_))));
        assert!(iterated_elliptic_euler(0).is_err());
        assert!(matches!(iterated_elliptic_euler(40), Err(Error::Overflow(_))));
    }

    proptest! {
        #[test]
        fn elliptic_special_case(ex in -1000i64..1000, ed in -1000i64..1000) {
            let r = double_cover_euler(KummerData::new(ex, ed), ELLIPTIC).unwrap();
            prop_assert_eq!(r, KummerData::new(6 * ed, 2 * ex + 4 * ed));
        }

        #[test]
        fn symmetric(a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500) {
            let x = KummerData::new(a, b);
            let y = KummerData::new(c, d);
            prop_assert_eq!(double_cover_euler(x, y), double_cover_euler(y, x));
        }
    }
}
