//! Stratify a hyperplane arrangement (the bundled 12 planes in P⁵ by default).

use cmcheck::arith::RationalField;
use cmcheck::arrangement::{bundled, classify, good_reduction_report, intersection_poset, resolution_schedule, Arrangement};

fn main() {
    let arr = match std::env::args().nth(1) {
        Some(path) => Arrangement::from_file(path).unwrap(),
        None => bundled::ahlgren(),
    };
    let poset = intersection_poset(&RationalField, &arr);
    let c = classify(&poset);
    println!("{} strata in P^{}", c.total(), arr.dim());
    println!("type dim mult count  NP   adm  incidence {:?}", c.columns);
    for t in &c.types {
        println!(
            "{:<4} {:>3} {:>4} {:>5} {:>4} {:>5}  {:?}",
            t.label, t.dim, t.mult, t.count, t.near_pencil, t.admissible, t.incidence
        );
    }
    println!("crepant resolution exists: {}", c.resolvable);
    if let Ok(schedule) = resolution_schedule(&poset) {
        let odd = schedule.iter().filter(|b| b.adds_exceptional).count();
        println!("{} blow-ups, {odd} of them add the exceptional divisor to the branch locus", schedule.len());
    }
    let r = good_reduction_report(&arr, &[3, 5, 7]).unwrap();
    println!("good reduction: {}", r.summary());
}
