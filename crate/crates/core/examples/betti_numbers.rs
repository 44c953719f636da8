//! Betti numbers of a few classical arrangement complements.
//!
//! cargo run --example betti_numbers

use arrcohom::{compute_betti, parse_arrangement, Arrangement, BettiOptions};

fn main() -> arrcohom::Result<()> {
    let options = BettiOptions::default();
    let named = [
        ("boolean arrangement in A^3", Arrangement::boolean(3)),
        ("braid arrangement in A^3", Arrangement::braid(3)),
        ("braid arrangement in A^4", Arrangement::braid(4)),
        (
            "two parallel lines in A^2",
            parse_arrangement("affine 2\n1 0 0\n1 0 1\n")?,
        ),
    ];
    for (name, a) in &named {
        let report = compute_betti(a, &options)?;
        println!("{name}");
        println!("  betti        {:?}", report.betti);
        println!(
            "  poincare     {}",
            arrcohom::cli::poincare_string(&report.poincare)
        );
        println!("  rank/shift   {}/{}", report.essential_rank, report.shift);
        println!("  oracles agree: {:?}", report.agreement);
    }
    Ok(())
}
