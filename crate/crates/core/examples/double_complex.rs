//! Page dimensions of both spectral sequences of a double complex: a tensor
//! product of two small complexes, and a staircase read from a file.
//!
//! cargo run --example double_complex

use arrcohom::ratlin::QMatrix;
use arrcohom::ss::{
    cohomology_dims, pages, parse_double_complex, tensor_double_complex, total_complex,
    verify_convergence,
};
use arrcohom::{Complex, DoubleComplex, Filtration};

fn report(name: &str, c: &DoubleComplex) -> arrcohom::Result<()> {
    let h = cohomology_dims(&total_complex(c)?);
    println!("{name}: total cohomology {h:?}");
    for f in [Filtration::Horizontal, Filtration::Vertical] {
        let t = pages(c, f, 4)?;
        println!("  {f}: stable at r = {}", t.stable_at);
        for r in 0..=t.stable_at.min(t.r_max) {
            println!("    E{r} {:?}", t.page(r));
        }
        println!("    converges: {}", verify_convergence(&t, &h));
    }
    Ok(())
}

fn main() -> arrcohom::Result<()> {
    // Q -> Q^2 has cohomology Q in degree 1, Q^2 -> Q has Q in degree 0.
    let a = Complex::from_sequence(0, &[1, 2], vec![QMatrix::from_ints(&[[1], [1]])])?;
    let b = Complex::from_sequence(0, &[2, 1], vec![QMatrix::from_ints(&[[1, 0]])])?;
    report("tensor product", &tensor_double_complex(&a, &b))?;
    report(
        "staircase",
        &parse_double_complex(include_str!("data/staircase.dc"))?,
    )?;
    Ok(())
}
