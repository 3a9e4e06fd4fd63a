//! Euler characteristics of iterated double covers of products.

use cmcheck::kummer::{borcea_voisin_table, double_cover_euler, fold_elliptic, iterated_elliptic_euler, KummerData, ELLIPTIC};

fn main() {
    for n in 1..=8 {
        let folded = fold_elliptic(n).unwrap();
        println!("E^{n}: e(X) = {:>7} (closed form {:>7}), e(D) = {}", folded.e_x, iterated_elliptic_euler(n).unwrap(), folded.e_d);
    }
    println!("K3 × E: {:?}", borcea_voisin_table());
    let k3 = KummerData::new(24, -18);
    println!("K3 branched along a smooth sextic, times E: {:?}", double_cover_euler(k3, ELLIPTIC).unwrap());
}
