//! r generic hyperplanes in A^n: the Betti numbers are binomial(r, k).
//!
//! cargo run --example general_position

use arrcohom::flats::binomial;
use arrcohom::ratlin::ratio;
use arrcohom::{compute_betti, Arrangement, BettiOptions, Hyperplane};

fn main() -> arrcohom::Result<()> {
    let n = 3;
    for r in 4..=7 {
        // Points on the moment curve give hyperplanes in general position.
        let hs = (1..=r as i64)
            .map(|t| {
                let normal = (1..=n as u32).map(|k| ratio(t.pow(k), 1)).collect();
                Hyperplane::new(normal, ratio(t.pow(n as u32 + 1) + 1, 2))
            })
            .collect::<arrcohom::Result<Vec<_>>>()?;
        let a = Arrangement::affine(n, hs)?;
        let report = compute_betti(&a, &BettiOptions::default())?;
        let expected: Vec<u64> = (0..=n as u64).map(|k| binomial(r as u64, k)).collect();
        println!(
            "r = {r}: betti {:?}, expected {expected:?}, general position: {}",
            report.betti, report.general_position
        );
    }
    Ok(())
}
