//! Exact rational row reduction, kernels and linear solves.
//!
//! cargo run --example exact_linear_algebra

use arrcohom::ratlin::{ratio, Solution};
use arrcohom::QMatrix;

fn main() -> arrcohom::Result<()> {
    let m = QMatrix::from_ints(&[[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]);
    let rref = m.rref();
    println!("rref:\n{}", rref.reduced);
    println!("rank {}, pivots {:?}", rref.rank, rref.pivot_columns);
    println!("kernel basis:\n{}", m.kernel_basis());

    let b = vec![ratio(1, 2), ratio(1, 1), ratio(1, 3)];
    match m.solve(&b)? {
        Solution::Consistent { particular, kernel } => {
            let shown: Vec<String> = particular.iter().map(ToString::to_string).collect();
            println!(
                "particular solution [{}], {} free directions",
                shown.join(", "),
                kernel.cols()
            );
        }
        Solution::Inconsistent => println!("no solution"),
    }
    Ok(())
}
