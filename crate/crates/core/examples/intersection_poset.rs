//! Intersection poset of the braid arrangement with its Möbius function,
//! and the two combinatorial Betti oracles.
//!
//! cargo run --example intersection_poset

use arrcohom::{
    build_intersection_poset, oracle_betti_mobius, oracle_betti_whitney, Arrangement, DEFAULT_CAP,
};

fn main() -> arrcohom::Result<()> {
    let a = Arrangement::braid(4);
    let poset = build_intersection_poset(&a, DEFAULT_CAP)?;
    println!("{} flats", poset.len());
    for (i, e) in poset.elements.iter().enumerate() {
        let hs: Vec<String> = e
            .hyperplanes
            .iter()
            .map(|h| a.hyperplanes()[*h].to_string())
            .collect();
        println!(
            "{i:>3}  codim {}  mu {:>3}  [{}]",
            e.codim,
            e.mobius,
            hs.join(", ")
        );
    }
    println!("mobius oracle:  {:?}", oracle_betti_mobius(&poset));
    println!(
        "whitney oracle: {:?}",
        oracle_betti_whitney(&a, DEFAULT_CAP)?
    );
    Ok(())
}
