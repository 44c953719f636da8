//! The two usual spectral sequences of a bounded double complex of
//! finite-dimensional rational vector spaces.
//!
//! Pages are reported by the bigraded position `(p, q)` of the double
//! complex, for both filtrations:
//!
//! * [`Filtration::Horizontal`] filters by rows, so page 0 carries the
//!   horizontal differential and `E_1^{p,q} = H^p(C^{*,q})`.
//! * [`Filtration::Vertical`] filters by columns, so page 0 carries the
//!   vertical differential and `E_1^{p,q} = H^q(C^{p,*})`.
//!
//! Only dimensions are computed. With `f` the filtration index of `(p, q)`,
//! `n = p + q` and `T` the total complex,
//!
//! ```text
//! Z_r^f = { x in F^f T^n : d x in F^{f+r} T^{n+1} }
//! E_r   = (Z_r^f + F^{f+1}) / (d Z_{r-1}^{f-r+1} + F^{f+1})
//! ```
//!
//! and both numerator and denominator are measured by projecting onto the
//! block `C^{p,q}`, which is `F^f / F^{f+1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::arrangement::parse_rational;
use crate::error::{Error, Result};
use crate::ratlin::{QMatrix, Rational};

pub type Bidegree = (i64, i64);

/// A bounded cochain complex; `d[i]` maps degree `i` to degree `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    dims: BTreeMap<i64, usize>,
    d: BTreeMap<i64, QMatrix>,
}

impl Complex {
    pub fn new(dims: BTreeMap<i64, usize>, d: BTreeMap<i64, QMatrix>) -> Result<Self> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, v)| v > 0).collect();
        let c = Complex { dims, d };
        for (&i, m) in &c.d {
            if (m.rows(), m.cols()) != (c.dim(i + 1), c.dim(i)) {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    c.dim(i + 1),
                    c.dim(i)
                )));
            }
        }
        for &i in c.d.keys() {
            if !(&c.differential(i + 1) * &c.differential(i)).is_zero() {
                return Err(Error::Invalid(format!("d^2 != 0 starting in degree {i}")));
            }
        }
        Ok(c)
    }

    /// Complex concentrated in degrees `start, start + 1, ...` with the
    /// given maps between consecutive terms.
    pub fn from_sequence(start: i64, dims: &[usize], maps: Vec<QMatrix>) -> Result<Self> {
        let dmap = dims
            .iter()
            .enumerate()
            .map(|(i, &v)| (start + i as i64, v))
            .collect();
        let d = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| (start + i as i64, m))
            .collect();
        Complex::new(dmap, d)
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn differential(&self, i: i64) -> QMatrix {
        self.d
            .get(&i)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(i + 1), self.dim(i)))
    }

    /// `dim H^i` for every degree in the support.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = self.d.iter().map(|(&i, m)| (i, m.rank())).collect();
        let rank = |i: i64| ranks.get(&i).copied().unwrap_or(0);
        self.dims
            .iter()
            .map(|(&i, &v)| (i, v - rank(i) - rank(i - 1)))
            .collect()
    }
}

/// Bigraded vector spaces with a horizontal differential `(p,q) -> (p+1,q)`
/// and a vertical one `(p,q) -> (p,q+1)` that square to zero and
/// anticommute.
///
/// Missing differentials are zero maps. [`DoubleComplex::new`] checks
/// shapes only; the identities are checked by [`DoubleComplex::validate`],
/// which [`total_complex`] runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: BTreeMap<Bidegree, usize>,
    d_horiz: BTreeMap<Bidegree, QMatrix>,
    d_vert: BTreeMap<Bidegree, QMatrix>,
}

impl DoubleComplex {
    pub fn new(
        dims: BTreeMap<Bidegree, usize>,
        d_horiz: BTreeMap<Bidegree, QMatrix>,
        d_vert: BTreeMap<Bidegree, QMatrix>,
    ) -> Result<Self> {
        let dims = dims.into_iter().filter(|&(_, v)| v > 0).collect();
        let c = DoubleComplex {
            dims,
            d_horiz,
            d_vert,
        };
        for (&(p, q), m) in &c.d_horiz {
            c.check_shape(p, q, m, (p + 1, q), "horizontal")?;
        }
        for (&(p, q), m) in &c.d_vert {
            c.check_shape(p, q, m, (p, q + 1), "vertical")?;
        }
        Ok(c)
    }

    fn check_shape(
        &self,
        p: i64,
        q: i64,
        m: &QMatrix,
        target: Bidegree,
        which: &str,
    ) -> Result<()> {
        let expected = (self.dim(target.0, target.1), self.dim(p, q));
        if (m.rows(), m.cols()) != expected {
            return Err(Error::DoubleComplex {
                p,
                q,
                what: format!(
                    "{which} differential is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                ),
            });
        }
        Ok(())
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn d_horiz(&self, p: i64, q: i64) -> QMatrix {
        self.d_horiz
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(p + 1, q), self.dim(p, q)))
    }

    pub fn d_vert(&self, p: i64, q: i64) -> QMatrix {
        self.d_vert
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// Checks `dh^2 = 0`, `dv^2 = 0` and `dh dv + dv dh = 0` everywhere.
    pub fn validate(&self) -> Result<()> {
        for &(p, q) in self.dims.keys() {
            let fail = |what: &str| {
                Err(Error::DoubleComplex {
                    p,
                    q,
                    what: what.into(),
                })
            };
            if !(&self.d_horiz(p + 1, q) * &self.d_horiz(p, q)).is_zero() {
                return fail("horizontal differential does not square to zero");
            }
            if !(&self.d_vert(p, q + 1) * &self.d_vert(p, q)).is_zero() {
                return fail("vertical differential does not square to zero");
            }
            let hv = &self.d_horiz(p, q + 1) * &self.d_vert(p, q);
            let vh = &self.d_vert(p + 1, q) * &self.d_horiz(p, q);
            let sum = QMatrix::new(
                hv.rows(),
                hv.cols(),
                hv.entries()
                    .iter()
                    .zip(vh.entries())
                    .map(|(a, b)| a + b)
                    .collect(),
            );
            if !sum.is_zero() {
                return fail("differentials do not anticommute");
            }
        }
        Ok(())
    }

    /// Row `q` as a complex in `p` with the horizontal differential.
    pub fn row(&self, q: i64) -> Complex {
        let dims = self
            .dims
            .iter()
            .filter(|((_, b), _)| *b == q)
            .map(|(&(a, _), &v)| (a, v))
            .collect();
        let d = self
            .d_horiz
            .iter()
            .filter(|((_, b), _)| *b == q)
            .map(|(&(a, _), m)| (a, m.clone()))
            .collect();
        Complex { dims, d }
    }

    /// Column `p` as a complex in `q` with the vertical differential.
    pub fn column(&self, p: i64) -> Complex {
        let dims = self
            .dims
            .iter()
            .filter(|((a, _), _)| *a == p)
            .map(|(&(_, b), &v)| (b, v))
            .collect();
        let d = self
            .d_vert
            .iter()
            .filter(|((a, _), _)| *a == p)
            .map(|(&(_, b), m)| (b, m.clone()))
            .collect();
        Complex { dims, d }
    }

    /// Direct sum of two double complexes.
    pub fn direct_sum(&self, other: &DoubleComplex) -> DoubleComplex {
        let keys: BTreeSet<Bidegree> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        let block = |a: QMatrix, b: QMatrix| {
            let mut m = QMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m[(i, j)] = a[(i, j)].clone();
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
                }
            }
            m
        };
        let dims = keys
            .iter()
            .map(|&(p, q)| ((p, q), self.dim(p, q) + other.dim(p, q)))
            .collect();
        let dh = keys
            .iter()
            .map(|&(p, q)| ((p, q), block(self.d_horiz(p, q), other.d_horiz(p, q))))
            .collect();
        let dv = keys
            .iter()
            .map(|&(p, q)| ((p, q), block(self.d_vert(p, q), other.d_vert(p, q))))
            .collect();
        DoubleComplex::new(dims, dh, dv).expect("direct sum of valid shapes")
    }
}

/// Block of `C^{p,q}` inside `Tot^{p+q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub position: Bidegree,
    pub offset: usize,
    pub len: usize,
}

/// `Tot^n = sum_{p+q=n} C^{p,q}` with `d_T = d_h + d_v`. Within each degree
/// the blocks are ordered by increasing `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalComplex {
    pub dims: BTreeMap<i64, usize>,
    pub differential: BTreeMap<i64, QMatrix>,
    pub blocks: BTreeMap<i64, Vec<Block>>,
}

impl TotalComplex {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Differential out of degree `n` (a zero map outside the stored range).
    pub fn d(&self, n: i64) -> QMatrix {
        self.differential
            .get(&n)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    fn block_of(&self, n: i64, position: Bidegree) -> Option<Block> {
        self.blocks
            .get(&n)?
            .iter()
            .find(|b| b.position == position)
            .copied()
    }
}

pub fn total_complex(c: &DoubleComplex) -> Result<TotalComplex> {
    c.validate()?;
    let mut blocks: BTreeMap<i64, Vec<Block>> = BTreeMap::new();
    for (&(p, q), &len) in &c.dims {
        let list = blocks.entry(p + q).or_default();
        let offset = list.iter().map(|b| b.len).sum();
        list.push(Block {
            position: (p, q),
            offset,
            len,
        });
    }
    let dims: BTreeMap<i64, usize> = blocks
        .iter()
        .map(|(&n, bs)| (n, bs.iter().map(|b| b.len).sum()))
        .collect();

    let mut t = TotalComplex {
        dims,
        differential: BTreeMap::new(),
        blocks,
    };
    let degrees: Vec<i64> = t.dims.keys().copied().collect();
    for &n in &degrees {
        let mut m = QMatrix::zeros(t.dim(n + 1), t.dim(n));
        for src in t.blocks[&n].clone() {
            let (p, q) = src.position;
            for (target, map) in [((p + 1, q), c.d_horiz(p, q)), ((p, q + 1), c.d_vert(p, q))] {
                let Some(dst) = t.block_of(n + 1, target) else {
                    continue;
                };
                for i in 0..dst.len {
                    for j in 0..src.len {
                        m[(dst.offset + i, src.offset + j)] = map[(i, j)].clone();
                    }
                }
            }
        }
        t.differential.insert(n, m);
    }
    for &n in &degrees {
        if !(&t.d(n + 1) * &t.d(n)).is_zero() {
            let (p, q) = t.blocks[&n][0].position;
            return Err(Error::DoubleComplex {
                p,
                q,
                what: format!("total differential does not square to zero in degree {n}"),
            });
        }
    }
    Ok(t)
}

/// `dim H^n(Tot)` for every degree of the total complex.
pub fn cohomology_dims(t: &TotalComplex) -> BTreeMap<i64, usize> {
    let ranks: BTreeMap<i64, usize> = t.differential.iter().map(|(&n, m)| (n, m.rank())).collect();
    let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
    t.dims
        .iter()
        .map(|(&n, &v)| (n, v - rank(n) - rank(n - 1)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filtration {
    /// Filtration by rows; `E_1` is horizontal cohomology.
    Horizontal,
    /// Filtration by columns; `E_1` is vertical cohomology.
    Vertical,
}

impl Filtration {
    fn index(self, (p, q): Bidegree) -> i64 {
        match self {
            Filtration::Horizontal => q,
            Filtration::Vertical => p,
        }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filtration::Horizontal => "horizontal",
            Filtration::Vertical => "vertical",
        })
    }
}

/// Page dimensions `dim E_r^{p,q}` for `r = 0..=r_max`, plus the limit
/// page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageTable {
    pub filtration: Filtration,
    pub r_max: usize,
    /// Least `r` from which every computed page equals the limit;
    /// `r_max + 1` when the computed range never reaches it.
    pub stable_at: usize,
    pages: BTreeMap<(usize, i64, i64), usize>,
    limit: BTreeMap<Bidegree, usize>,
    support: Vec<Bidegree>,
}

impl PageTable {
    pub fn get(&self, r: usize, p: i64, q: i64) -> usize {
        self.pages.get(&(r, p, q)).copied().unwrap_or(0)
    }

    /// Nonzero entries of page `r`.
    pub fn page(&self, r: usize) -> BTreeMap<Bidegree, usize> {
        self.support
            .iter()
            .map(|&(p, q)| ((p, q), self.get(r, p, q)))
            .filter(|&(_, v)| v > 0)
            .collect()
    }

    /// Nonzero entries of `E_infinity`.
    pub fn limit(&self) -> &BTreeMap<Bidegree, usize> {
        &self.limit
    }

    /// Positions of the source double complex.
    pub fn support(&self) -> &[Bidegree] {
        &self.support
    }
}

struct PageCalculator<'a> {
    t: &'a TotalComplex,
    filtration: Filtration,
}

impl PageCalculator<'_> {
    /// Coordinates of `Tot^n` whose block satisfies `keep(filtration index)`.
    fn coords(&self, n: i64, keep: impl Fn(i64) -> bool) -> Vec<usize> {
        self.t
            .blocks
            .get(&n)
            .into_iter()
            .flatten()
            .filter(|b| keep(self.filtration.index(b.position)))
            .flat_map(|b| b.offset..b.offset + b.len)
            .collect()
    }

    /// Basis (as columns, in full `Tot^n` coordinates) of `Z_r^{f}` in
    /// degree `n`.
    fn cycles(&self, r: i64, f: i64, n: i64) -> QMatrix {
        let source = self.coords(n, |g| g >= f);
        let low = self.coords(n + 1, |g| g < f + r);
        let restricted = self.t.d(n).select_rows(&low).select_columns(&source);
        let kernel = restricted.kernel_basis();
        let mut full = QMatrix::zeros(self.t.dim(n), kernel.cols());
        for (k, &row) in source.iter().enumerate() {
            for j in 0..kernel.cols() {
                full[(row, j)] = kernel[(k, j)].clone();
            }
        }
        full
    }

    fn dim(&self, r: usize, position: Bidegree) -> usize {
        let (p, q) = position;
        let n = p + q;
        let f = self.filtration.index(position);
        let r = r as i64;
        let block = self.t.block_of(n, position).expect("position in support");
        let rows: Vec<usize> = (block.offset..block.offset + block.len).collect();

        let numerator = self.cycles(r, f, n).select_rows(&rows).rank();
        let sources = self.cycles(r - 1, f - r + 1, n - 1);
        let boundaries = &self.t.d(n - 1) * &sources;
        let denominator = boundaries.select_rows(&rows).rank();
        numerator - denominator
    }
}

/// Page dimensions of the spectral sequence of `filtration`, for pages
/// `0..=r_max`.
///
/// A finitely supported double complex is always bounded, so every page
/// eventually stabilizes; the limit page is computed once the page index
/// exceeds the filtration span.
pub fn pages(c: &DoubleComplex, filtration: Filtration, r_max: usize) -> Result<PageTable> {
    if r_max < 2 {
        return Err(Error::Invalid(format!(
            "r_max must be at least 2, got {r_max}"
        )));
    }
    let t = total_complex(c)?;
    let calc = PageCalculator { t: &t, filtration };
    let support: Vec<Bidegree> = c.dims.keys().copied().collect();

    let indices: Vec<i64> = support.iter().map(|&pos| filtration.index(pos)).collect();
    let span = match (indices.iter().min(), indices.iter().max()) {
        (Some(lo), Some(hi)) => (hi - lo) as usize,
        _ => 0,
    };
    let r_inf = span + 2;

    let mut table = BTreeMap::new();
    for r in 0..=r_max {
        for &pos in &support {
            table.insert((r, pos.0, pos.1), calc.dim(r, pos));
        }
    }
    let limit: BTreeMap<Bidegree, usize> = support
        .iter()
        .map(|&pos| {
            let v = if r_inf <= r_max {
                table[&(r_inf, pos.0, pos.1)]
            } else {
                calc.dim(r_inf, pos)
            };
            (pos, v)
        })
        .filter(|&(_, v)| v > 0)
        .collect();

    let equals_limit = |r: usize| {
        support
            .iter()
            .all(|&(p, q)| table[&(r, p, q)] == limit.get(&(p, q)).copied().unwrap_or(0))
    };
    let mut stable_at = r_max + 1;
    for r in (0..=r_max).rev() {
        if equals_limit(r) {
            stable_at = r;
        } else {
            break;
        }
    }

    Ok(PageTable {
        filtration,
        r_max,
        stable_at,
        pages: table,
        limit,
        support,
    })
}

/// Whether `sum_p dim E_inf^{p, n-p} = dim H^n(Tot)` in every degree.
pub fn verify_convergence(pt: &PageTable, h: &BTreeMap<i64, usize>) -> bool {
    let mut graded: BTreeMap<i64, usize> = BTreeMap::new();
    for (&(p, q), &v) in pt.limit() {
        *graded.entry(p + q).or_default() += v;
    }
    let degrees: BTreeSet<i64> = graded.keys().chain(h.keys()).copied().collect();
    degrees
        .into_iter()
        .all(|n| graded.get(&n).copied().unwrap_or(0) == h.get(&n).copied().unwrap_or(0))
}

/// `a (x) b` with `d_h = d_a (x) id` and `d_v = (-1)^p id (x) d_b`.
pub fn tensor_double_complex(a: &Complex, b: &Complex) -> DoubleComplex {
    let mut dims = BTreeMap::new();
    let mut dh = BTreeMap::new();
    let mut dv = BTreeMap::new();
    for (&p, &da) in a.dims() {
        for (&q, &db) in b.dims() {
            dims.insert((p, q), da * db);
            dh.insert((p, q), a.differential(p).kron(&QMatrix::identity(db)));
            let sign = if p.rem_euclid(2) == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            dv.insert(
                (p, q),
                QMatrix::identity(da).kron(&b.differential(q)).scaled(&sign),
            );
        }
    }
    DoubleComplex::new(dims, dh, dv).expect("tensor product shapes are consistent")
}

/// Parses the double-complex text format:
///
/// ```text
/// dims
/// 0 0 1        # p q dim
/// 1 0 1
/// dh 0 0       # horizontal map out of (0,0), then dim(1,0) rows
/// 1
/// dv 1 0       # vertical map out of (1,0), then dim(1,1) rows
/// -1
/// ```
///
/// Matrices have one row per line and `dim(source)` entries per row; maps
/// with a zero-dimensional source or target take no lines. Omitted maps are
/// zero.
pub fn parse_double_complex(text: &str) -> Result<DoubleComplex> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let syntax = |line: usize, message: String| Error::Syntax {
        line,
        column: 1,
        message,
    };
    let int = |line: usize, tok: &str| {
        tok.parse::<i64>()
            .map_err(|_| syntax(line, format!("expected an integer, found `{tok}`")))
    };

    let mut it = lines.into_iter().peekable();
    match it.next() {
        Some((_, t)) if t == ["dims"] => {}
        Some((line, _)) => return Err(syntax(line, "expected `dims` header".into())),
        None => return Err(syntax(1, "empty input".into())),
    }
    let mut dims = BTreeMap::new();
    while let Some((line, t)) = it.peek() {
        if t[0] == "dh" || t[0] == "dv" {
            break;
        }
        if t.len() != 3 {
            return Err(syntax(*line, "expected `p q dim`".into()));
        }
        let p = int(*line, t[0])?;
        let q = int(*line, t[1])?;
        let d = usize::try_from(int(*line, t[2])?)
            .map_err(|_| syntax(*line, "negative dimension".into()))?;
        if dims.insert((p, q), d).is_some() {
            return Err(syntax(
                *line,
                format!("duplicate dims entry for ({p}, {q})"),
            ));
        }
        it.next();
    }

    let dim = |p: i64, q: i64| dims.get(&(p, q)).copied().unwrap_or(0);
    let mut dh = BTreeMap::new();
    let mut dv = BTreeMap::new();
    while let Some((line, t)) = it.next() {
        if t.len() != 3 || (t[0] != "dh" && t[0] != "dv") {
            return Err(syntax(line, "expected `dh p q` or `dv p q`".into()));
        }
        let p = int(line, t[1])?;
        let q = int(line, t[2])?;
        let horizontal = t[0] == "dh";
        let (rows, cols) = if horizontal {
            (dim(p + 1, q), dim(p, q))
        } else {
            (dim(p, q + 1), dim(p, q))
        };
        let mut entries = Vec::with_capacity(rows * cols);
        if rows > 0 && cols > 0 {
            for _ in 0..rows {
                let (l, toks) = it
                    .next()
                    .ok_or_else(|| syntax(line, "matrix ended early".into()))?;
                if toks.len() != cols {
                    return Err(syntax(
                        l,
                        format!("expected {cols} entries, found {}", toks.len()),
                    ));
                }
                for tok in toks {
                    entries.push(
                        parse_rational(tok)
                            .ok_or_else(|| syntax(l, format!("not a rational number: `{tok}`")))?,
                    );
                }
            }
        }
        let m = QMatrix::new(rows, cols, entries);
        let slot = if horizontal { &mut dh } else { &mut dv };
        if slot.insert((p, q), m).is_some() {
            return Err(syntax(line, format!("map {} {p} {q} given twice", t[0])));
        }
    }
    DoubleComplex::new(dims, dh, dv)
}

/// Inverse of [`parse_double_complex`]; zero maps are omitted.
pub fn write_double_complex(c: &DoubleComplex) -> String {
    let mut out = String::from("dims\n");
    for (&(p, q), &d) in &c.dims {
        out.push_str(&format!("{p} {q} {d}\n"));
    }
    for (tag, maps) in [("dh", &c.d_horiz), ("dv", &c.d_vert)] {
        for (&(p, q), m) in maps {
            if m.rows() == 0 || m.cols() == 0 || m.entries().iter().all(Zero::is_zero) {
                continue;
            }
            out.push_str(&format!("{tag} {p} {q}\n{m}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn point() -> Complex {
        Complex::from_sequence(0, &[1], vec![]).unwrap()
    }

    fn interval() -> Complex {
        Complex::from_sequence(0, &[1, 1], vec![QMatrix::identity(1)]).unwrap()
    }

    /// Identity square with the vertical map at p = 1 negated.
    fn exact_square() -> DoubleComplex {
        let one = QMatrix::identity(1);
        let minus = one.scaled(&rat(-1));
        DoubleComplex::new(
            BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]),
            BTreeMap::from([((0, 0), one.clone()), ((0, 1), one.clone())]),
            BTreeMap::from([((0, 0), one), ((1, 0), minus)]),
        )
        .unwrap()
    }

    #[test]
    fn total_complex_examples() {
        let single = tensor_double_complex(&point(), &point());
        let t = total_complex(&single).unwrap();
        assert_eq!(t.dims, BTreeMap::from([(0, 1)]));
        assert!(t.d(0).is_zero());
        assert_eq!(cohomology_dims(&t), BTreeMap::from([(0, 1)]));

        let sq = exact_square();
        let t = total_complex(&sq).unwrap();
        assert_eq!(t.dims, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(t.d(0).rank(), 1);
        assert_eq!(t.d(1).rank(), 1);
        assert!(cohomology_dims(&t).values().all(|&v| v == 0));

        let empty = DoubleComplex::new(BTreeMap::new(), BTreeMap::new(), BTreeMap::new()).unwrap();
        let t = total_complex(&empty).unwrap();
        assert!(t.dims.is_empty());
    }

    #[test]
    fn tensor_of_intervals_is_the_exact_square() {
        let t = tensor_double_complex(&interval(), &interval());
        let sq = exact_square();
        assert_eq!(t.dims(), sq.dims());
        for &(p, q) in sq.dims().keys() {
            assert_eq!(t.d_horiz(p, q), sq.d_horiz(p, q));
            assert_eq!(t.d_vert(p, q), sq.d_vert(p, q));
        }
        assert_eq!(
            tensor_double_complex(&point(), &point()).dims(),
            &BTreeMap::from([((0, 0), 1)])
        );
    }

    #[test]
    fn commuting_square_is_rejected() {
        let one = QMatrix::identity(1);
        let c = DoubleComplex::new(
            BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]),
            BTreeMap::from([((0, 0), one.clone()), ((0, 1), one.clone())]),
            BTreeMap::from([((0, 0), one.clone()), ((1, 0), one)]),
        )
        .unwrap();
        assert_eq!(
            total_complex(&c).unwrap_err(),
            Error::DoubleComplex {
                p: 0,
                q: 0,
                what: "differentials do not anticommute".into()
            }
        );
    }

    #[test]
    fn shape_errors() {
        let bad = DoubleComplex::new(
            BTreeMap::from([((0, 0), 1), ((1, 0), 2)]),
            BTreeMap::from([((0, 0), QMatrix::identity(1))]),
            BTreeMap::new(),
        );
        assert!(matches!(bad, Err(Error::DoubleComplex { p: 0, q: 0, .. })));
        assert!(Complex::from_sequence(
            0,
            &[1, 1, 1],
            vec![QMatrix::identity(1), QMatrix::identity(1)]
        )
        .is_err());
    }

    #[test]
    fn pages_of_single_object() {
        let c = tensor_double_complex(&point(), &point());
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let pt = pages(&c, f, 4).unwrap();
            for r in 0..=4 {
                assert_eq!(pt.get(r, 0, 0), 1);
            }
            assert_eq!(pt.stable_at, 0);
        }
    }

    #[test]
    fn pages_of_exact_square() {
        let c = exact_square();
        let h = cohomology_dims(&total_complex(&c).unwrap());
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let pt = pages(&c, f, 3).unwrap();
            assert_eq!(pt.page(0).len(), 4);
            assert!(pt.page(1).is_empty());
            assert!(pt.page(2).is_empty());
            assert_eq!(pt.stable_at, 1);
            assert!(verify_convergence(&pt, &h));
        }
    }

    #[test]
    fn zero_differentials_degenerate_at_page_one() {
        let a = Complex::from_sequence(0, &[2, 1], vec![]).unwrap();
        let b = Complex::from_sequence(-1, &[1, 3], vec![]).unwrap();
        let c = tensor_double_complex(&a, &b);
        let h = cohomology_dims(&total_complex(&c).unwrap());
        for f in [Filtration::Horizontal, Filtration::Vertical] {
            let pt = pages(&c, f, 3).unwrap();
            assert_eq!(&pt.page(1), c.dims());
            assert_eq!(pt.limit(), c.dims());
            assert_eq!(pt.stable_at, 0);
            assert!(verify_convergence(&pt, &h));
        }
    }

    #[test]
    fn zig_zag_pages() {
        //   (0,1) --dh--> (1,1) <--dv-- (1,0)    (2,0)
        let one = QMatrix::identity(1);
        let dims = BTreeMap::from([((0, 1), 1), ((1, 1), 1), ((1, 0), 1), ((2, 0), 1)]);
        let c = DoubleComplex::new(
            dims,
            BTreeMap::from([((0, 1), one.clone())]),
            BTreeMap::from([((1, 0), one)]),
        )
        .unwrap();
        let h = cohomology_dims(&total_complex(&c).unwrap());
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 1)]));

        let v = pages(&c, Filtration::Vertical, 4).unwrap();
        assert_eq!(v.page(1), BTreeMap::from([((0, 1), 1), ((2, 0), 1)]));
        assert_eq!(v.page(2), BTreeMap::from([((0, 1), 1), ((2, 0), 1)]));
        assert!(verify_convergence(&v, &h));

        let hz = pages(&c, Filtration::Horizontal, 4).unwrap();
        assert_eq!(hz.page(1), BTreeMap::from([((1, 0), 1), ((2, 0), 1)]));
        assert!(verify_convergence(&hz, &h));
    }

    #[test]
    fn r_max_must_reach_page_two() {
        assert!(pages(&exact_square(), Filtration::Vertical, 1).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let c = exact_square();
        let text = write_double_complex(&c);
        let back = parse_double_complex(&text).unwrap();
        assert_eq!(back.dims(), c.dims());
        assert_eq!(
            total_complex(&back).unwrap().differential,
            total_complex(&c).unwrap().differential
        );
        let parsed = parse_double_complex(
            "# square\ndims\n0 0 1\n1 0 1\n0 1 1\n1 1 1\ndh 0 0\n1\ndh 0 1\n1\ndv 0 0\n1\ndv 1 0\n-1\n",
        )
        .unwrap();
        assert_eq!(
            total_complex(&parsed).unwrap().differential,
            total_complex(&c).unwrap().differential
        );
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            parse_double_complex(""),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_double_complex("dims\n0 0 1\n1 0 1\ndh 0 0\n1 2\n"),
            Err(Error::Syntax { line: 5, .. })
        ));
        assert!(matches!(
            parse_double_complex("dims\n0 0 1\n1 0 1\ndh 0 0\n"),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_double_complex("dims\n0 0 -1\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }
}
