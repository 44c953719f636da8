//! Betti numbers of an arrangement complement from the relative
//! Mayer-Vietoris spectral sequence.
//!
//! Degrees follow the pushforward-to-a-point grading: the de Rham cohomology
//! `H^k` of the complement in affine `n`-space sits in degree `k - n`, so
//! everything lives in degrees `-n..=0`. The shift `[m]` moves degree `i` to
//! `i - m`.
//!
//! For a subset `I` of hyperplanes with non-empty flat of dimension `d`, the
//! localized term is `k[n] + k[-n + 2d + 1]`; with empty flat it is `k[n]`.
//! Summing over subsets of size `1 - p` gives the first page, whose rows are
//! exact except at their right end, so each row reduces to one alternating
//! sum on the second page, and the sequence stops there.

use std::collections::BTreeMap;
use std::fmt;

use crate::arrangement::{decone, essentialize, Arrangement, Kind};
use crate::error::{Error, Result};
use crate::flats::{
    binomial, build_intersection_poset, enumerate_d_table, oracle_betti_mobius,
    oracle_betti_whitney, DTable, DEFAULT_CAP,
};

/// Finitely supported graded dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut g = GradedDims::default();
        for (i, v) in pairs {
            g.add(i, v);
        }
        g
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: i64, value: u64) {
        if value > 0 {
            *self.0.entry(degree).or_default() += value;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&i, &v)| (i, v))
    }

    pub fn as_map(&self) -> &BTreeMap<i64, u64> {
        &self.0
    }

    /// Apply `[m]`: degree `i` moves to `i - m`.
    pub fn shifted(&self, m: i64) -> GradedDims {
        GradedDims(self.0.iter().map(|(&i, &v)| (i - m, v)).collect())
    }

    /// Graded tensor product over the base field.
    pub fn tensor(&self, other: &GradedDims) -> GradedDims {
        let mut out = GradedDims::default();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add(i + j, a * b);
            }
        }
        out
    }

    /// `b_k = dim` in degree `k - n`, for `k = 0..=n`.
    pub fn to_betti(&self, n: usize) -> Result<Vec<u64>> {
        let n = n as i64;
        if let Some((i, _)) = self.iter().find(|&(i, _)| i < -n || i > 0) {
            return Err(Error::Inconsistency(format!(
                "cohomology in degree {i}, outside -{n}..=0"
            )));
        }
        Ok((0..=n).map(|k| self.get(k - n)).collect())
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Affine `m`-space: `k[m]`.
pub fn affine_space_cohomology(m: usize) -> GradedDims {
    GradedDims::from_pairs([(-(m as i64), 1)])
}

/// Affine `m`-space minus a point: `k[m] + k[-m + 1]`.
pub fn punctured_space_cohomology(m: usize) -> Result<GradedDims> {
    if m < 1 {
        return Err(Error::Invalid(
            "punctured space needs dimension at least 1".into(),
        ));
    }
    let m = m as i64;
    Ok(GradedDims::from_pairs([(-m, 1), (m - 1, 1)]))
}

/// Dimension of a flat `Y_I`, or its emptiness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatDim {
    NonEmpty(usize),
    Empty,
}

/// Affine `n`-space localized along a flat: `(A^{n-d} - 0) x A^d`, or all
/// of `A^n` when the flat is empty.
pub fn localized_flat_cohomology(n: usize, flat: FlatDim) -> Result<GradedDims> {
    match flat {
        FlatDim::Empty => Ok(affine_space_cohomology(n)),
        FlatDim::NonEmpty(d) if d < n => {
            Ok(punctured_space_cohomology(n - d)?.tensor(&affine_space_cohomology(d)))
        }
        FlatDim::NonEmpty(d) => Err(Error::Invalid(format!(
            "flat dimension {d} out of range for ambient dimension {n}"
        ))),
    }
}

/// A page of dimensions `dim E^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPage {
    pub dims: BTreeMap<(i64, i64), u64>,
    pub page_index: u8,
    pub n: usize,
    pub r: usize,
}

impl EPage {
    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Rows with at least one nonzero entry.
    pub fn rows(&self) -> Vec<i64> {
        let mut qs: Vec<i64> = self.dims.keys().map(|&(_, q)| q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    /// Least and greatest `p` with a nonzero entry in row `q`.
    pub fn row_extent(&self, q: i64) -> Option<(i64, i64)> {
        let mut ps = self
            .dims
            .iter()
            .filter(|(&(_, b), &v)| b == q && v > 0)
            .map(|(&(p, _), _)| p);
        let first = ps.next()?;
        let (lo, hi) = ps.fold((first, first), |(lo, hi), p| (lo.min(p), hi.max(p)));
        Some((lo, hi))
    }

    fn add(&mut self, p: i64, q: i64, v: u64) {
        if v > 0 {
            *self.dims.entry((p, q)).or_default() += v;
        }
    }
}

/// First page, assembled subset by subset from the localized flat terms.
pub fn e1_page(d: &DTable) -> Result<EPage> {
    let n = d.n;
    let mut page = EPage {
        dims: BTreeMap::new(),
        page_index: 1,
        n,
        r: d.r,
    };
    for (&(p, q), &count) in &d.counts {
        let dim = (n as i64 - q - 1) / 2;
        let term = localized_flat_cohomology(n, FlatDim::NonEmpty(dim as usize))?;
        for (degree, v) in term.iter() {
            page.add(p, degree, v * count);
        }
    }
    for (&size, &count) in &d.empty_counts {
        let term = localized_flat_cohomology(n, FlatDim::Empty)?;
        for (degree, v) in term.iter() {
            page.add(1 - size as i64, degree, v * count);
        }
    }
    Ok(page)
}

/// Dimension of the last cohomology of `0 -> V_0 -> ... -> V_s` when the
/// sequence is exact everywhere else: `(-1)^s sum (-1)^i dim V_i`.
pub fn last_cohomology_dim(row: &[u64]) -> Result<u64> {
    let Some(s) = row.len().checked_sub(1) else {
        return Ok(0);
    };
    let alternating: i128 = row
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { v as i128 } else { -(v as i128) })
        .sum();
    let value = if s % 2 == 0 {
        alternating
    } else {
        -alternating
    };
    u64::try_from(value).map_err(|_| {
        Error::Inconsistency(format!(
            "row {row:?} has negative alternating sum {value}; it cannot be exact below its last term"
        ))
    })
}

/// Second page: each row of `e1` collapses to its last cohomology, placed
/// at the row's greatest nonzero `p`.
pub fn e2_page(e1: &EPage) -> Result<EPage> {
    let mut page = EPage {
        dims: BTreeMap::new(),
        page_index: 2,
        n: e1.n,
        r: e1.r,
    };
    for q in e1.rows() {
        let (lo, hi) = e1.row_extent(q).expect("row is non-empty");
        let row: Vec<u64> = (lo..=hi).map(|p| e1.get(p, q)).collect();
        page.add(hi, q, last_cohomology_dim(&row)?);
    }
    Ok(page)
}

/// Rows `q != -n` of `e1` whose greatest `p` is not `(1 - q - n) / 2`.
pub fn row_structure_violations(e1: &EPage) -> Vec<i64> {
    let n = e1.n as i64;
    e1.rows()
        .into_iter()
        .filter(|&q| q != -n)
        .filter(|&q| {
            let (_, hi) = e1.row_extent(q).unwrap();
            (1 - q - n).rem_euclid(2) != 0 || hi != (1 - q - n) / 2
        })
        .collect()
}

/// True iff no differential `d_r`, `r >= 2`, connects two nonzero entries.
pub fn degeneration_check(e2: &EPage) -> bool {
    let nonzero: Vec<(i64, i64)> = e2
        .dims
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(&k, _)| k)
        .collect();
    let Some(span) = nonzero
        .iter()
        .map(|&(p, _)| p)
        .max()
        .zip(nonzero.iter().map(|&(p, _)| p).min())
        .map(|(hi, lo)| hi - lo)
    else {
        return true;
    };
    nonzero.iter().all(|&(p, q)| {
        (2..=span + 1).all(|r| e2.get(p + r, q - r + 1) == 0 && e2.get(p - r, q + r - 1) == 0)
    })
}

/// Reads `H^i` off a degenerate second page: `H^{-n}` from `(0, -n)` and
/// every other entry `(p, q)` in degree `p + q`.
pub fn betti_from_e2(e2: &EPage) -> Result<GradedDims> {
    let n = e2.n as i64;
    let bottom = e2.get(0, -n);
    if bottom != 1 {
        return Err(Error::Inconsistency(format!(
            "E_2^(0,-{n}) has dimension {bottom}, expected 1"
        )));
    }
    let mut out = GradedDims::from_pairs([(-n, 1)]);
    let mut source_row: BTreeMap<i64, i64> = BTreeMap::new();
    for (&(p, q), &v) in &e2.dims {
        if q == -n {
            if p != 0 {
                return Err(Error::Inconsistency(format!(
                    "E_2 row q = -{n} has an entry at p = {p}"
                )));
            }
            continue;
        }
        if (1 - q - n).rem_euclid(2) != 0 || p != (1 - q - n) / 2 {
            return Err(Error::Inconsistency(format!(
                "E_2 entry at ({p}, {q}) is not at p = (1 - q - n) / 2"
            )));
        }
        let degree = p + q;
        if let Some(other) = source_row.insert(degree, q) {
            return Err(Error::Inconsistency(format!(
                "rows {other} and {q} both contribute to degree {degree}"
            )));
        }
        out.add(degree, v);
    }
    Ok(out)
}

/// Apply the product-with-affine-space shift `[shift]`.
pub fn kunneth_shift(g: &GradedDims, shift: usize) -> GradedDims {
    g.shifted(shift as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub cap: usize,
    /// Hyperplane sent to infinity for projective input; defaults to the
    /// last one.
    pub infinity_index: Option<usize>,
    pub mobius_oracle: bool,
    pub whitney_oracle: bool,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            cap: DEFAULT_CAP,
            infinity_index: None,
            mobius_oracle: true,
            whitney_oracle: true,
        }
    }
}

impl BettiOptions {
    pub fn without_oracles() -> Self {
        BettiOptions {
            mobius_oracle: false,
            whitney_oracle: false,
            ..BettiOptions::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleBetti {
    pub mobius: Option<Vec<u64>>,
    pub whitney: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub kind: Kind,
    pub n: usize,
    pub r: usize,
    pub betti: Vec<u64>,
    /// Coefficients of `sum b_k t^k`.
    pub poincare: Vec<u64>,
    /// `dim H^i` in the pushforward grading, degrees `-n..=0`.
    pub graded: GradedDims,
    pub d_table: DTable,
    pub e1: EPage,
    pub e2: EPage,
    pub shift: usize,
    pub essential_rank: usize,
    pub general_position: bool,
    pub oracle: Option<OracleBetti>,
    pub agreement: Option<bool>,
    pub checks: Vec<Check>,
}

impl BettiReport {
    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Every `k`-subset with `k <= n` meets in codimension `k` and every
/// `(n+1)`-subset is empty.
fn general_position(r: usize, n: usize, essential_rank: usize, table: &DTable) -> bool {
    if essential_rank < n {
        // A subset of size rank + 1 <= n would need codimension above the rank.
        return r == essential_rank;
    }
    let r64 = r as u64;
    let sized_ok = (1..=r.min(n)).all(|k| {
        table.get(1 - k as i64, n as i64 - 2 * (n - k) as i64 - 1) == binomial(r64, k as u64)
    });
    let empty_ok = r <= n || table.empty_count(n + 1) == binomial(r64, n as u64 + 1);
    sized_ok && empty_ok
}

/// Full pipeline: decone if projective, essentialize, count subsets, build
/// the first two pages, read off the Betti numbers and undo the
/// essentialization shift. Optionally cross-checks against both
/// combinatorial oracles.
pub fn compute_betti(a: &Arrangement, options: &BettiOptions) -> Result<BettiReport> {
    let affine = match a.kind() {
        Kind::Projective => {
            if a.is_empty() {
                return Err(Error::Invalid(
                    "a projective arrangement needs at least one hyperplane".into(),
                ));
            }
            decone(a, options.infinity_index.unwrap_or(a.len() - 1))?
        }
        Kind::Affine => {
            if options.infinity_index.is_some() {
                return Err(Error::Invalid(
                    "an infinity hyperplane only applies to projective input".into(),
                ));
            }
            a.clone()
        }
    };
    if affine.len() > options.cap {
        return Err(Error::CapExceeded {
            r: affine.len(),
            cap: options.cap,
        });
    }
    let n = affine.ambient_dim();
    let reduction = essentialize(&affine)?;
    let s = reduction.essential.ambient_dim();
    let table = enumerate_d_table(&reduction.essential, options.cap)?;
    let e1 = e1_page(&table)?;
    let e2 = e2_page(&e1)?;
    let mut checks = vec![Check::new(
        "subset-count conservation",
        table.is_conserved(),
        "bucketed plus empty subsets equal binomial(r, s) for every size",
    )];

    let graded = if affine.is_empty() {
        affine_space_cohomology(n)
    } else {
        let violations = row_structure_violations(&e1);
        if !violations.is_empty() {
            return Err(Error::Inconsistency(format!(
                "first-page rows {violations:?} do not end at p = (1 - q - n) / 2"
            )));
        }
        if !degeneration_check(&e2) {
            return Err(Error::Inconsistency(
                "second page admits a nonzero differential".into(),
            ));
        }
        checks.push(Check::new(
            "row structure",
            true,
            "every row ends at p = (1 - q - n) / 2",
        ));
        checks.push(Check::new(
            "degeneration",
            true,
            "no d_r, r >= 2, between nonzero entries",
        ));
        kunneth_shift(&betti_from_e2(&e2)?, reduction.shift)
    };
    let betti = graded.to_betti(n)?;

    let gp = general_position(affine.len(), n, s, &table);
    if gp {
        let expected: Vec<u64> = (0..=n as u64)
            .map(|k| binomial(affine.len() as u64, k))
            .collect();
        checks.push(Check::new(
            "general-position binomials",
            betti == expected,
            format!("expected {expected:?}"),
        ));
    }

    let mut oracle = None;
    let mut agreement = None;
    if options.mobius_oracle || options.whitney_oracle {
        let mut o = OracleBetti::default();
        if options.mobius_oracle {
            let poset = build_intersection_poset(&affine, options.cap)?;
            let signs_ok = poset
                .elements
                .iter()
                .all(|e| e.mobius != 0 && (e.mobius > 0) == (e.codim % 2 == 0));
            checks.push(Check::new(
                "mobius sign alternation",
                signs_ok,
                "sign of mu equals (-1)^codim",
            ));
            let m = oracle_betti_mobius(&poset);
            checks.push(Check::new("mobius oracle", m == betti, format!("{m:?}")));
            o.mobius = Some(m);
        }
        if options.whitney_oracle {
            let w = oracle_betti_whitney(&affine, options.cap)?;
            checks.push(Check::new("whitney oracle", w == betti, format!("{w:?}")));
            o.whitney = Some(w);
        }
        agreement = Some(o.mobius.iter().chain(o.whitney.iter()).all(|b| *b == betti));
        oracle = Some(o);
    }

    Ok(BettiReport {
        kind: a.kind(),
        n,
        r: a.len(),
        poincare: betti.clone(),
        betti,
        graded,
        d_table: table,
        e1,
        e2,
        shift: reduction.shift,
        essential_rank: s,
        general_position: gp,
        oracle,
        agreement,
        checks,
    })
}

/// Betti numbers of a projective arrangement for every choice of the
/// hyperplane at infinity.
pub fn betti_for_every_infinity(a: &Arrangement, options: &BettiOptions) -> Result<Vec<Vec<u64>>> {
    if a.kind() != Kind::Projective {
        return Err(Error::Invalid("expected a projective arrangement".into()));
    }
    (0..a.len())
        .map(|i| {
            let opts = BettiOptions {
                infinity_index: Some(i),
                ..options.clone()
            };
            compute_betti(a, &opts).map(|r| r.betti)
        })
        .collect()
}
