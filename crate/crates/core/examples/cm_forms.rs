//! Coefficients and local L-factors of the weight-k CM forms over ℚ(i) and ℚ(√-3).

use cmcheck::cm::{CmField, CmForm};

fn main() {
    for field in [CmField::Gaussian, CmField::Eisenstein] {
        println!("{field}:");
        for k in 2..=6 {
            let form = CmForm::new(k, field);
            let series = form.expand(25).unwrap();
            let terms: Vec<String> = series.support().iter().map(|(n, c)| format!("{c}q^{n}")).collect();
            println!("  g{k} ({:?} nebentypus) = {} + ...", form.nebentypus(), terms.join(" + "));
        }
        for p in [5u64, 7, 11, 13] {
            if p == field.ramified_prime() {
                continue;
            }
            let f = CmForm::new(4, field).euler_factor(p).unwrap();
            println!("  L_{p}(g4, T)^-1 = {f}");
        }
    }
}
