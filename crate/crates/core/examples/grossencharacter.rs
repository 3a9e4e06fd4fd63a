//! Primary generators of split primes and the traces of their powers.

use cmcheck::cm::{normalize_prime_element, power_trace, CmField};
use num_bigint::BigInt;

fn main() {
    for field in [CmField::Gaussian, CmField::Eisenstein] {
        println!("{field}:");
        for p in [5u64, 7, 13, 17, 19, 29, 31, 37] {
            if !field.is_split(p) {
                continue;
            }
            let alpha = normalize_prime_element(p, field).unwrap();
            let a = alpha.trace();
            let pb = BigInt::from(p);
            let traces: Vec<String> = (1..=5).map(|m| power_trace(&a, &pb, m).to_string()).collect();
            println!("  p = {p:>2}: α = {alpha:<8} tr(α^m), m = 1..5: {}", traces.join(", "));
        }
    }
}
