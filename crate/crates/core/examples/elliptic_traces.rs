//! Frobenius traces of CM elliptic curves against the weight-2 eta products.

use cmcheck::arith::odd_primes_up_to;
use cmcheck::catalog;
use cmcheck::point_count::elliptic_ap;

fn main() {
    let cases = [
        (catalog::curve_level32(), catalog::G2_LEVEL32),
        (catalog::curve_level27(), catalog::G2_LEVEL27),
        (catalog::curve_level27_printed_model(), catalog::G2_LEVEL27),
    ];
    for (curve, form) in cases {
        let series = form.eta_product().unwrap().expand(100);
        let mut mismatches = Vec::new();
        for p in odd_primes_up_to(100).into_iter().filter(|&p| curve.is_good_prime(p)) {
            let a = elliptic_ap(&curve, p).unwrap();
            if series.coeff(p as usize) != &a.into() {
                mismatches.push(p);
            }
        }
        if mismatches.is_empty() {
            println!("{curve}: traces equal the coefficients of {} for p < 100", form.id);
        } else {
            println!("{curve}: differs from {} at p = {mismatches:?} (a twist)", form.id);
        }
    }
}
