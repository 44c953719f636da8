//! The d-table and the first two pages of the Mayer-Vietoris spectral
//! sequence for three lines through a point plus one more line.
//!
//! cargo run --example spectral_pages

use arrcohom::mvbetti::{
    betti_from_e2, degeneration_check, e1_page, e2_page, row_structure_violations,
};
use arrcohom::{enumerate_d_table, parse_arrangement, DEFAULT_CAP};

fn main() -> arrcohom::Result<()> {
    let a = parse_arrangement("affine 2\n1 0 0\n0 1 0\n1 1 0\n1 -1 3\n")?;
    let d = enumerate_d_table(&a, DEFAULT_CAP)?;
    println!("nonempty flats by (p, q): {:?}", d.counts);
    println!("empty intersections by size: {:?}", d.empty_counts);

    let e1 = e1_page(&d)?;
    println!("E1: {:?}", e1.dims);
    println!(
        "row structure violations: {:?}",
        row_structure_violations(&e1)
    );

    let e2 = e2_page(&e1)?;
    println!("E2: {:?}", e2.dims);
    println!("degenerates: {}", degeneration_check(&e2));

    let h = betti_from_e2(&e2)?;
    println!("pushforward cohomology: {h}");
    println!("betti: {:?}", h.to_betti(a.ambient_dim())?);
    Ok(())
}
