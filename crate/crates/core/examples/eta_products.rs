//! Expand the eta products of the CM forms and compare with their printed expansions.

use cmcheck::catalog::PRINTED_SERIES;
use cmcheck::qseries::{series_match, EtaProduct};

fn main() {
    for s in PRINTED_SERIES.iter().filter(|s| s.eta.is_some()) {
        let eta = s.eta_product().unwrap();
        let expansion = eta.expand(s.through);
        let terms: Vec<String> = expansion.support().iter().map(|(n, c)| format!("{c}q^{n}")).collect();
        let verdict = match series_match(&expansion, &s.series(), s.through) {
            Ok(()) => "matches the printed series".to_string(),
            Err(m) => format!("differs at q^{}", m.index),
        };
        println!("{:<11} weight {} level {:>2}: {} ... {verdict}", s.id, s.form.weight, s.level, terms.join(" + "));
    }

    let delta = EtaProduct::new(&[(1, 24)]).unwrap().expand(10);
    let tau: Vec<String> = delta.iter().map(|(_, c)| c.to_string()).collect();
    println!("Ramanujan tau(1..10): {}", tau.join(", "));
}
