//! A projective arrangement is deconed at each of its hyperplanes in turn;
//! every choice gives the same affine complement.
//!
//! cargo run --example projective_decone

use arrcohom::mvbetti::betti_for_every_infinity;
use arrcohom::{decone, parse_arrangement, BettiOptions};

fn main() -> arrcohom::Result<()> {
    let a = parse_arrangement(include_str!("data/five_lines_p2.txt"))?;
    println!("{a}");
    for i in 0..a.len() {
        let affine = decone(&a, i)?;
        println!("hyperplane {} at infinity:", i + 1);
        for h in affine.hyperplanes() {
            println!("  {h}");
        }
    }
    let all = betti_for_every_infinity(&a, &BettiOptions::default())?;
    println!("betti for each choice: {all:?}");
    Ok(())
}
