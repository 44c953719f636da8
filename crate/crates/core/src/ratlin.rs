//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`, so ranks and kernels are exact.
//! Elimination is plain Gauss-Jordan with a deterministic pivot rule: the
//! leftmost column that still has a nonzero entry, and within it the topmost
//! candidate row.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix over the rationals.
///
/// `0 x k` and `k x 0` shapes are legal and behave as rank-zero maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Output of [`QMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: QMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Output of [`QMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `particular` solves the system; the columns of `kernel` span the
    /// homogeneous solutions.
    Consistent {
        particular: Vec<Rational>,
        kernel: QMatrix,
    },
    Inconsistent,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        QMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the `0 x cols` case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        QMatrix::new(r, cols, entries)
    }

    /// Integer matrix from nested slices. Handy in tests and examples.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        QMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        QMatrix::from_rows(cols, rows)
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        QMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_rows(
            self.cols,
            idx.iter().map(|&i| self.row(i).to_vec()).collect(),
        )
    }

    pub fn select_columns(&self, idx: &[usize]) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product; row `(i, k)` of the result is `i * other.rows() + k`.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> QMatrix {
        QMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|v| v * factor).collect(),
        )
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m[(lead, col)].recip();
            if !inv.is_one() {
                for j in col..m.cols {
                    let v = &m[(lead, j)] * &inv;
                    m[(lead, j)] = v;
                }
            }
            let pivot_row = m.row(lead)[col..].to_vec();
            for i in 0..m.rows {
                if i == lead || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let v = &m[(i, col + k)] - &f * pv;
                        m[(i, col + k)] = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivot_columns: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of `{x : self * x = 0}`, one per free column, in
    /// increasing free-column order. Each basis vector has a 1 in its free
    /// column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> QMatrix {
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !pivot_columns.contains(c))
            .collect();
        let mut k = QMatrix::zeros(self.cols, free.len());
        for (slot, &f) in free.iter().enumerate() {
            k[(f, slot)] = Rational::one();
            for (row, &pc) in pivot_columns.iter().enumerate() {
                k[(pc, slot)] = -reduced[(row, f)].clone();
            }
        }
        k
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = QMatrix::from_columns(self.rows, &[b.to_vec()]);
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = self.hstack(&rhs).rref();
        if pivot_columns.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivot_columns.iter().enumerate() {
            x[pc] = reduced[(row, self.cols)].clone();
        }
        Ok(Solution::Consistent {
            particular: x,
            kernel: self.kernel_basis(),
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + a * b;
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
