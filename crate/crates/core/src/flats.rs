//! Flats (intersections of hyperplanes), the subset-count table that feeds
//! the first page, and two combinatorial Betti oracles.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::arrangement::{Arrangement, Hyperplane, Kind};
use crate::error::{Error, Result};
use crate::ratlin::{rat, QMatrix};

/// Default limit on the number of hyperplanes for exhaustive subset
/// enumeration.
pub const DEFAULT_CAP: usize = 24;

/// An affine subspace given by its augmented system `[A | b]` in reduced row
/// echelon form with zero rows removed, so equal subspaces have identical
/// systems. The empty set is represented by the single row `[0 ... 0 | 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    system: QMatrix,
    ambient_dim: usize,
    empty: bool,
}

impl Flat {
    pub fn ambient(n: usize) -> Flat {
        Flat {
            system: QMatrix::zeros(0, n + 1),
            ambient_dim: n,
            empty: false,
        }
    }

    fn from_system(n: usize, augmented: &QMatrix) -> Flat {
        let rref = augmented.rref();
        if rref.pivot_columns.last() == Some(&n) {
            let mut row = vec![rat(0); n + 1];
            row[n] = rat(1);
            return Flat {
                system: QMatrix::from_rows(n + 1, vec![row]),
                ambient_dim: n,
                empty: true,
            };
        }
        let keep: Vec<usize> = (0..rref.rank).collect();
        Flat {
            system: rref.reduced.select_rows(&keep),
            ambient_dim: n,
            empty: false,
        }
    }

    /// `self` intersected with `h`.
    pub fn meet(&self, h: &Hyperplane) -> Flat {
        if self.empty {
            return self.clone();
        }
        let mut row = h.normal().to_vec();
        row.push(h.constant().clone());
        let stacked = self
            .system
            .vstack(&QMatrix::from_rows(self.ambient_dim + 1, vec![row]));
        Flat::from_system(self.ambient_dim, &stacked)
    }

    /// Whether this flat lies inside `h`.
    pub fn lies_in(&self, h: &Hyperplane) -> bool {
        self.meet(h) == *self
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dimension(&self) -> Option<usize> {
        (!self.empty).then(|| self.ambient_dim - self.system.rows())
    }

    pub fn codim(&self) -> Option<usize> {
        (!self.empty).then(|| self.system.rows())
    }

    pub fn system(&self) -> &QMatrix {
        &self.system
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dimension() {
            None => write!(f, "Flat(empty)"),
            Some(d) => write!(f, "Flat(dim {d}, {:?})", self.system),
        }
    }
}

fn require_affine(a: &Arrangement) -> Result<()> {
    if a.kind() != Kind::Affine {
        return Err(Error::Invalid("expected an affine arrangement".into()));
    }
    Ok(())
}

fn require_cap(a: &Arrangement, cap: usize) -> Result<()> {
    if a.len() > cap {
        return Err(Error::CapExceeded { r: a.len(), cap });
    }
    Ok(())
}

/// The flat `Y_I` cut out by the hyperplanes with indices in `subset`
/// (0-based). The empty subset gives the ambient space.
pub fn flat_of_subset(a: &Arrangement, subset: &[usize]) -> Result<Flat> {
    require_affine(a)?;
    let mut flat = Flat::ambient(a.ambient_dim());
    for &i in subset {
        let h = a.hyperplanes().get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: a.len(),
        })?;
        flat = flat.meet(h);
    }
    Ok(flat)
}

/// Counts `d_{p,q}` of non-empty subsets `I` with `|I| = 1 - p` and
/// `dim Y_I = (n - q - 1) / 2`, plus the subsets with empty intersection
/// tallied by size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DTable {
    pub n: usize,
    pub r: usize,
    pub counts: BTreeMap<(i64, i64), u64>,
    pub empty_counts: BTreeMap<usize, u64>,
}

impl DTable {
    /// `(p, q)` position of a subset of the given size whose flat has
    /// dimension `dim`.
    pub fn position(n: usize, size: usize, dim: usize) -> (i64, i64) {
        (1 - size as i64, n as i64 - 2 * dim as i64 - 1)
    }

    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.counts.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn empty_count(&self, size: usize) -> u64 {
        self.empty_counts.get(&size).copied().unwrap_or(0)
    }

    /// Checks that for every subset size `s` the bucketed counts plus the
    /// empty count add up to `binomial(r, s)`.
    pub fn is_conserved(&self) -> bool {
        (1..=self.r).all(|s| {
            let bucketed: u64 = self
                .counts
                .iter()
                .filter(|((p, _), _)| *p == 1 - s as i64)
                .map(|(_, c)| c)
                .sum();
            bucketed + self.empty_count(s) == binomial(self.r as u64, s as u64)
        })
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Interned flats with a memoized `flat x hyperplane -> flat` table.
struct FlatCache<'a> {
    hyperplanes: &'a [Hyperplane],
    flats: Vec<Flat>,
    ids: HashMap<Flat, usize>,
    steps: HashMap<(usize, usize), usize>,
}

impl<'a> FlatCache<'a> {
    fn new(a: &'a Arrangement) -> Self {
        let ambient = Flat::ambient(a.ambient_dim());
        FlatCache {
            hyperplanes: a.hyperplanes(),
            ids: HashMap::from([(ambient.clone(), 0)]),
            flats: vec![ambient],
            steps: HashMap::new(),
        }
    }

    fn meet(&mut self, id: usize, h: usize) -> usize {
        if let Some(&next) = self.steps.get(&(id, h)) {
            return next;
        }
        let flat = self.flats[id].meet(&self.hyperplanes[h]);
        let next = match self.ids.get(&flat) {
            Some(&existing) => existing,
            None => {
                let new_id = self.flats.len();
                self.ids.insert(flat.clone(), new_id);
                self.flats.push(flat);
                new_id
            }
        };
        self.steps.insert((id, h), next);
        next
    }
}

/// Enumerates every non-empty subset of hyperplanes and buckets it by size
/// and flat dimension.
///
/// Subsets are visited lexicographically, each extended only by larger
/// indices. Once a prefix has empty intersection, all of its extensions are
/// counted in closed form.
pub fn enumerate_d_table(a: &Arrangement, cap: usize) -> Result<DTable> {
    require_affine(a)?;
    require_cap(a, cap)?;
    let n = a.ambient_dim();
    let r = a.len();
    let mut table = DTable {
        n,
        r,
        ..DTable::default()
    };
    let mut cache = FlatCache::new(a);

    fn visit(cache: &mut FlatCache, table: &mut DTable, prefix: usize, size: usize, start: usize) {
        let r = table.r;
        for j in start..r {
            let child = cache.meet(prefix, j);
            match cache.flats[child].dimension() {
                None => {
                    let rest = (r - j - 1) as u64;
                    for extra in 0..=rest {
                        *table
                            .empty_counts
                            .entry(size + 1 + extra as usize)
                            .or_default() += binomial(rest, extra);
                    }
                }
                Some(dim) => {
                    *table
                        .counts
                        .entry(DTable::position(table.n, size + 1, dim))
                        .or_default() += 1;
                    visit(cache, table, child, size + 1, j + 1);
                }
            }
        }
    }
    visit(&mut cache, &mut table, 0, 0, 0);
    Ok(table)
}

/// One element of the intersection poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetElement {
    pub flat: Flat,
    pub codim: usize,
    /// Indices of the hyperplanes containing this flat, increasing.
    pub hyperplanes: Vec<usize>,
    /// `mu(ambient, self)`.
    pub mobius: i64,
}

/// Non-empty flats ordered by reverse inclusion, ambient space first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoset {
    pub n: usize,
    pub elements: Vec<PosetElement>,
    /// `below[j]` lists every `i` with `elements[i] < elements[j]`, i.e.
    /// flats strictly containing flat `j`.
    pub below: Vec<Vec<usize>>,
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `elements[i] < elements[j]` in the poset.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(&i)
    }
}

fn is_proper_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() < big.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Closes `{ambient} + hyperplanes` under non-empty intersection and computes
/// the Möbius function from the ambient space.
///
/// The closure never enumerates subsets, so `cap` bounds the number of flats
/// (`2^cap`) rather than the number of hyperplanes.
pub fn build_intersection_poset(a: &Arrangement, cap: usize) -> Result<IntersectionPoset> {
    require_affine(a)?;
    let limit = 1usize.checked_shl(cap as u32).unwrap_or(usize::MAX);
    let n = a.ambient_dim();
    let hs = a.hyperplanes();

    let ambient = Flat::ambient(n);
    let mut seen: HashSet<Flat> = HashSet::from([ambient.clone()]);
    let mut queue = VecDeque::from([ambient]);
    let mut found = Vec::new();
    while let Some(flat) = queue.pop_front() {
        let mut containing = Vec::new();
        for (i, h) in hs.iter().enumerate() {
            let next = flat.meet(h);
            if next == flat {
                containing.push(i);
            } else if !next.is_empty() && !seen.contains(&next) {
                if seen.len() >= limit {
                    return Err(Error::CapExceeded { r: a.len(), cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        found.push((flat, containing));
    }

    found.sort_by(|(fa, ha), (fb, hb)| fa.codim().cmp(&fb.codim()).then_with(|| ha.cmp(hb)));

    let below: Vec<Vec<usize>> = (0..found.len())
        .map(|j| {
            (0..found.len())
                .filter(|&i| is_proper_subset(&found[i].1, &found[j].1))
                .collect()
        })
        .collect();

    let mut mobius = vec![0i64; found.len()];
    for j in 0..found.len() {
        mobius[j] = if below[j].is_empty() {
            1
        } else {
            -below[j].iter().map(|&i| mobius[i]).sum::<i64>()
        };
    }

    let elements = found
        .into_iter()
        .zip(mobius)
        .map(|((flat, hyperplanes), mobius)| PosetElement {
            codim: flat.codim().unwrap(),
            flat,
            hyperplanes,
            mobius,
        })
        .collect();
    Ok(IntersectionPoset { n, elements, below })
}

/// `b_k = sum over flats of codimension k of |mu(ambient, flat)|`.
pub fn oracle_betti_mobius(poset: &IntersectionPoset) -> Vec<u64> {
    let mut betti = vec![0u64; poset.n + 1];
    for e in &poset.elements {
        betti[e.codim] += e.mobius.unsigned_abs();
    }
    betti
}

/// `b_k = (-1)^k sum (-1)^{|I|}` over all subsets `I` (the empty one
/// included) whose intersection is non-empty of codimension `k`.
///
/// Walks every subset with a running prefix intersection; no memoization.
pub fn oracle_betti_whitney(a: &Arrangement, cap: usize) -> Result<Vec<u64>> {
    require_affine(a)?;
    require_cap(a, cap)?;
    let n = a.ambient_dim();
    let mut signed = vec![0i64; n + 1];

    fn walk(hs: &[Hyperplane], flat: &Flat, size: usize, start: usize, signed: &mut [i64]) {
        let codim = flat.codim().unwrap();
        signed[codim] += if size.is_multiple_of(2) { 1 } else { -1 };
        for j in start..hs.len() {
            let next = flat.meet(&hs[j]);
            if !next.is_empty() {
                walk(hs, &next, size + 1, j + 1, signed);
            }
        }
    }
    walk(a.hyperplanes(), &Flat::ambient(n), 0, 0, &mut signed);

    signed
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let b = if k % 2 == 0 { s } else { -s };
            u64::try_from(b)
                .map_err(|_| Error::Inconsistency(format!("signed subset sum gives b_{k} = {b}")))
        })
        .collect()
}
