//! Local factors of tensor products of CM forms and their decompositions.

use cmcheck::catalog;
use cmcheck::cm::CmField;
use cmcheck::tensor::{verify_g4xg3, verify_power_factorization};

fn main() {
    println!("L(g4 ⊗ g3, s) vs L(g6, s) L(g2, s-2):");
    for r in verify_g4xg3(30).unwrap() {
        println!("  p = {:>2}: {}  [{}]", r.p, r.lhs_poly, if r.equal { "equal" } else { "differ" });
    }

    let curve = catalog::G2_LEVEL32.eta_product().unwrap().expand(20);
    println!("H¹(E)^⊗n at p = 13 for y² = x³ - x:");
    for n in 1..=6 {
        let c = verify_power_factorization(curve.coeff(13), 13, CmField::Gaussian, n).unwrap();
        println!("  n = {n}: degree {:?}, binomial factorization {}", c.lhs.degree().unwrap(), if c.equal { "holds" } else { "fails" });
    }
}
