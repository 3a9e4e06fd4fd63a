//! Count points on w² = Π s(s-1)(s-v) over 𝔽_p and compare with the level-4 weight-6 form.

use cmcheck::point_count::verify_ahlgren;

fn main() {
    let pmax = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(60);
    for row in verify_ahlgren(pmax, 11).unwrap() {
        let brute = row.brute.map(|b| format!(" (brute force {b})")).unwrap_or_default();
        println!(
            "p = {:>3}  a_p = {:>10}  N(p) = {:>13}{brute}  {}",
            row.p,
            row.a_p,
            row.count,
            if row.matches { "= p^5 + 2p^3 - 4p^2 - 9p - 1 - a_p" } else { "MISMATCH" }
        );
    }
}
