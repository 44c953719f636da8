//! Betti numbers of hyperplane arrangement complements.
//!
//! An affine or projective arrangement over the rationals is reduced to an
//! essential affine arrangement, the subsets of its hyperplanes are bucketed
//! by the dimension of their intersection, and the first two pages of the
//! relative Mayer-Vietoris spectral sequence are assembled from those counts.
//! The sequence degenerates at the second page, which gives the de Rham Betti
//! numbers of the complement. Two independent combinatorial oracles (Möbius
//! function of the intersection poset, signed subset sums) cross-check the
//! result.
//!
//! [`ss`] is a separate, generic calculator for the page dimensions of the
//! two spectral sequences of a bounded double complex.
//!
//! ```
//! use arrcohom::{compute_betti, Arrangement, BettiOptions};
//!
//! let report = compute_betti(&Arrangement::braid(3), &BettiOptions::default()).unwrap();
//! assert_eq!(report.betti, vec![1, 3, 2, 0]);
//! assert_eq!(report.agreement, Some(true));
//! ```

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod flats;
pub mod mvbetti;
pub mod ratlin;
pub mod ss;

pub use arrangement::{
    decone, essentialize, parse_arrangement, Arrangement, EssentialReduction, Hyperplane, Kind,
};
pub use error::{Error, Result};
pub use flats::{
    build_intersection_poset, enumerate_d_table, flat_of_subset, oracle_betti_mobius,
    oracle_betti_whitney, DTable, Flat, IntersectionPoset, DEFAULT_CAP,
};
pub use mvbetti::{compute_betti, BettiOptions, BettiReport, EPage, GradedDims};
pub use ratlin::{QMatrix, Rational};
pub use ss::{Complex, DoubleComplex, Filtration, PageTable, TotalComplex};
