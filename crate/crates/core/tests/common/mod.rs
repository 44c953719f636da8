//! Random inputs shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashSet;

use arrcohom::ratlin::{rat, ratio};
use arrcohom::{flat_of_subset, Arrangement, Complex, Hyperplane, QMatrix, Rational};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng(seed: u64) -> StdRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn small_rational(rng: &mut StdRng, span: i64) -> Rational {
    ratio(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

/// Affine arrangement mixing generic, central (through the origin),
/// parallel and coordinate hyperplanes.
pub fn random_arrangement(rng: &mut StdRng, max_n: usize, max_r: usize) -> Arrangement {
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=max_r);
    let mut hs: Vec<Hyperplane> = Vec::new();
    let mut seen = HashSet::new();
    let mut attempts = 0;
    while hs.len() < r && attempts < 200 {
        attempts += 1;
        let h = match rng.gen_range(0..4) {
            0 => {
                let normal: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect();
                Hyperplane::new(normal, rat(rng.gen_range(-2..=2)))
            }
            1 => {
                let normal: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-1..=1))).collect();
                Hyperplane::new(normal, rat(0))
            }
            2 if !hs.is_empty() => {
                let base = hs.choose(rng).unwrap();
                Hyperplane::new(
                    base.normal().to_vec(),
                    base.constant() + rat(rng.gen_range(1..=3)),
                )
            }
            _ => {
                let mut normal = vec![rat(0); n];
                normal[rng.gen_range(0..n)] = rat(1);
                Hyperplane::new(normal, rat(rng.gen_range(-1..=1)))
            }
        };
        if let Ok(h) = h {
            if seen.insert(h.clone()) {
                hs.push(h);
            }
        }
    }
    Arrangement::affine(n, hs).unwrap()
}

/// Brute-force general-position test straight from the definition.
pub fn is_general_position(a: &Arrangement) -> bool {
    let n = a.ambient_dim();
    let r = a.len();
    (1u32..(1 << r)).all(|mask| {
        let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let flat = flat_of_subset(a, &subset).unwrap();
        match subset.len() {
            k if k <= n => flat.codim() == Some(k),
            k if k == n + 1 => flat.is_empty(),
            _ => true,
        }
    })
}

/// Random rational arrangement that passes [`is_general_position`].
pub fn random_general_position(rng: &mut StdRng, n: usize, r: usize) -> Arrangement {
    loop {
        let hs: Result<Vec<Hyperplane>, _> = (0..r)
            .map(|_| {
                let normal = (0..n).map(|_| small_rational(rng, 7)).collect();
                Hyperplane::new(normal, small_rational(rng, 7))
            })
            .collect();
        let Ok(hs) = hs else { continue };
        let Ok(a) = Arrangement::affine(n, hs) else {
            continue;
        };
        if is_general_position(&a) {
            return a;
        }
    }
}

/// Random projective arrangement with `1..=max_r` distinct hyperplanes.
pub fn random_projective(rng: &mut StdRng, max_n: usize, max_r: usize) -> Arrangement {
    loop {
        let n = rng.gen_range(1..=max_n);
        let r = rng.gen_range(1..=max_r);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..=n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(a) = Arrangement::projective_from_ints(n, &rows) {
            return a;
        }
    }
}

fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::new(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| rat(rng.gen_range(-2..=2)))
            .collect(),
    )
}

/// Random bounded complex with at most `max_len` terms of dimension at most
/// `max_dim`. Each differential is a random map vanishing on the image of
/// the previous one.
pub fn random_complex(rng: &mut StdRng, max_len: usize, max_dim: usize) -> Complex {
    let len = rng.gen_range(1..=max_len);
    let start = rng.gen_range(-2..=1);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut maps: Vec<QMatrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let m = match maps.last() {
            None => random_matrix(rng, dims[i + 1], dims[i]),
            Some(prev) => {
                // Rows of the next map live in the left kernel of `prev`.
                let left = prev.transpose().kernel_basis();
                if rng.gen_bool(0.2) {
                    QMatrix::zeros(dims[i + 1], dims[i])
                } else {
                    &random_matrix(rng, dims[i + 1], left.cols()) * &left.transpose()
                }
            }
        };
        maps.push(m);
    }
    Complex::from_sequence(start, &dims, maps).unwrap()
}
