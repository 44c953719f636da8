//! Hyperplane arrangements: canonical hyperplanes, the text format, deconing
//! of projective arrangements and reduction to an essential arrangement.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{rat, QMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Affine,
    Projective,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Affine => "affine",
            Kind::Projective => "projective",
        })
    }
}

/// The zero set of `normal . x = constant`, stored in canonical form:
/// coprime integer coefficients with the first nonzero normal entry positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    constant: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, constant: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("hyperplane has an all-zero normal".into()));
        }
        let mut coeffs = normal;
        coeffs.push(constant);
        canonicalize(&mut coeffs);
        let constant = coeffs.pop().unwrap();
        Ok(Hyperplane {
            normal: coeffs,
            constant,
        })
    }

    /// `[a1, ..., an, c]` for `a1 x1 + ... + an xn = c`.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        let (c, a) = coeffs
            .split_last()
            .ok_or_else(|| Error::Invalid("empty coefficient list".into()))?;
        Hyperplane::new(a.iter().map(|&v| rat(v)).collect(), rat(*c))
    }

    /// Linear hyperplane through the origin (used for projective input).
    pub fn linear(normal: Vec<Rational>) -> Result<Self> {
        Hyperplane::new(normal, Rational::zero())
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }
}

/// Scales `coeffs` to coprime integers with the first nonzero entry positive.
fn canonicalize(coeffs: &mut [Rational]) {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    if ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative)
    {
        g = -g;
    }
    for (slot, v) in coeffs.iter_mut().zip(ints) {
        *slot = Rational::from_integer(v / &g);
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.normal.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        write!(f, " = {}", self.constant)
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane({self})")
    }
}

/// A finite set of pairwise distinct canonical hyperplanes.
///
/// For [`Kind::Projective`] arrangements `ambient_dim` is the projective
/// dimension `n`; normals then have `n + 1` homogeneous entries and every
/// constant is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    kind: Kind,
}

impl Arrangement {
    pub fn new(kind: Kind, ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let width = match kind {
            Kind::Affine => ambient_dim,
            Kind::Projective => ambient_dim + 1,
        };
        let mut seen = HashMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != width {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane {i} has {} coefficients, expected {width}",
                    h.dim()
                )));
            }
            if kind == Kind::Projective && !h.constant.is_zero() {
                return Err(Error::Invalid(format!(
                    "projective hyperplane {i} has a nonzero constant"
                )));
            }
            if let Some(j) = seen.insert(h, i) {
                return Err(Error::Invalid(format!("hyperplanes {j} and {i} coincide")));
            }
        }
        Ok(Arrangement {
            ambient_dim,
            hyperplanes,
            kind,
        })
    }

    pub fn affine(ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        Arrangement::new(Kind::Affine, ambient_dim, hyperplanes)
    }

    /// Affine arrangement from integer rows `[a1, ..., an, c]`.
    pub fn affine_from_ints<R: AsRef<[i64]>>(ambient_dim: usize, rows: &[R]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|r| Hyperplane::from_ints(r.as_ref()))
            .collect::<Result<_>>()?;
        Arrangement::affine(ambient_dim, hs)
    }

    /// Projective arrangement from integer homogeneous normals.
    pub fn projective_from_ints<R: AsRef<[i64]>>(dim: usize, rows: &[R]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|r| Hyperplane::linear(r.as_ref().iter().map(|&v| rat(v)).collect()))
            .collect::<Result<_>>()?;
        Arrangement::new(Kind::Projective, dim, hs)
    }

    /// The coordinate hyperplanes `x_i = 0` of affine `n`-space.
    pub fn boolean(n: usize) -> Self {
        let hs = (0..n)
            .map(|i| {
                let mut a = vec![rat(0); n];
                a[i] = rat(1);
                Hyperplane::new(a, rat(0)).unwrap()
            })
            .collect();
        Arrangement::affine(n, hs).unwrap()
    }

    /// The braid arrangement `x_i = x_j`, `i < j`, in affine `n`-space.
    pub fn braid(n: usize) -> Self {
        let mut hs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut a = vec![rat(0); n];
                a[i] = rat(1);
                a[j] = rat(-1);
                hs.push(Hyperplane::new(a, rat(0)).unwrap());
            }
        }
        Arrangement::affine(n, hs).unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Normals stacked as an `r x width` matrix.
    pub fn normal_matrix(&self) -> QMatrix {
        let width = match self.kind {
            Kind::Affine => self.ambient_dim,
            Kind::Projective => self.ambient_dim + 1,
        };
        QMatrix::from_rows(
            width,
            self.hyperplanes.iter().map(|h| h.normal.clone()).collect(),
        )
    }

    /// Dimension of the span of the normals.
    pub fn rank(&self) -> usize {
        self.normal_matrix().rank()
    }

    pub fn is_essential(&self) -> bool {
        self.kind == Kind::Affine && self.rank() == self.ambient_dim
    }
}

/// Writes the text format read by [`parse_arrangement`].
impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.kind, self.ambient_dim)?;
        for h in &self.hyperplanes {
            let mut fields: Vec<String> = h.normal.iter().map(ToString::to_string).collect();
            if self.kind == Kind::Affine {
                fields.push(h.constant.to_string());
            }
            writeln!(f, "{}", fields.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_arrangement(s)
    }
}

/// Parses the arrangement text format.
///
/// ```text
/// # comment
/// affine 2          # or: projective n
/// 1 0 0             # x = 0        (a1 .. an c)
/// 1/2 -1 3          # x/2 - y = 3
/// ```
///
/// Projective lines carry `n + 1` homogeneous coefficients, optionally
/// followed by an explicit constant that must be zero.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut header: Option<(Kind, usize)> = None;
    let mut hyperplanes = Vec::new();
    let mut first_line: HashMap<Hyperplane, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        let Some((kind, n)) = header else {
            header = Some(parse_header(line_no, &tokens)?);
            continue;
        };

        let values = tokens
            .iter()
            .map(|&(col, tok)| {
                parse_rational(tok)
                    .ok_or_else(|| syntax(line_no, col, format!("not a rational number: `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;

        let h = match kind {
            Kind::Affine => {
                if values.len() != n + 1 {
                    return Err(field_count(line_no, &tokens, n + 1, values.len()));
                }
                let mut values = values;
                let c = values.pop().unwrap();
                if values.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroNormal { line: line_no });
                }
                Hyperplane::new(values, c)?
            }
            Kind::Projective => {
                let mut values = values;
                if values.len() == n + 2 {
                    if !values.pop().unwrap().is_zero() {
                        return Err(Error::ProjectiveConstant { line: line_no });
                    }
                } else if values.len() != n + 1 {
                    return Err(field_count(line_no, &tokens, n + 1, values.len()));
                }
                if values.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroNormal { line: line_no });
                }
                Hyperplane::linear(values)?
            }
        };
        if let Some(&first) = first_line.get(&h) {
            return Err(Error::DuplicateHyperplane {
                line: line_no,
                first,
            });
        }
        first_line.insert(h.clone(), line_no);
        hyperplanes.push(h);
    }

    let (kind, n) =
        header.ok_or_else(|| syntax(1, 1, "missing `affine n` or `projective n` header".into()))?;
    Arrangement::new(kind, n, hyperplanes)
}

fn tokenize(content: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in content.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c0, b0)) = start.take() {
                out.push((c0 + 1, &content[b0..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c0, b0)) = start {
        out.push((c0 + 1, &content[b0..]));
    }
    out
}

fn parse_header(line: usize, tokens: &[(usize, &str)]) -> Result<(Kind, usize)> {
    let kind = match tokens[0].1 {
        "affine" => Kind::Affine,
        "projective" => Kind::Projective,
        other => {
            return Err(syntax(
                line,
                tokens[0].0,
                format!("expected `affine` or `projective`, found `{other}`"),
            ))
        }
    };
    let Some(&(col, tok)) = tokens.get(1) else {
        return Err(syntax(line, tokens[0].0, "missing dimension".into()));
    };
    let n: usize = tok
        .parse()
        .map_err(|_| syntax(line, col, format!("invalid dimension `{tok}`")))?;
    if n == 0 {
        return Err(syntax(line, col, "dimension must be positive".into()));
    }
    if let Some(&(col, tok)) = tokens.get(2) {
        return Err(syntax(
            line,
            col,
            format!("unexpected token `{tok}` after header"),
        ));
    }
    Ok((kind, n))
}

pub(crate) fn parse_rational(tok: &str) -> Option<Rational> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn syntax(line: usize, column: usize, message: String) -> Error {
    Error::Syntax {
        line,
        column,
        message,
    }
}

fn field_count(line: usize, tokens: &[(usize, &str)], expected: usize, found: usize) -> Error {
    let column = tokens.get(expected).map_or(tokens[0].0, |t| t.0);
    syntax(
        line,
        column,
        format!("expected {expected} coefficients, found {found}"),
    )
}

/// Turns a projective arrangement into an affine one by sending hyperplane
/// `infinity_index` to infinity.
///
/// The eliminated homogeneous coordinate is the largest index `j` with a
/// nonzero coefficient in the hyperplane at infinity `h`; on the chart
/// `h(x) = 1` the remaining coordinates are affine coordinates and each other
/// hyperplane `g(x) = 0` becomes
/// `sum_{i != j} (g_i - g_j h_i / h_j) x_i = -g_j / h_j`.
pub fn decone(a: &Arrangement, infinity_index: usize) -> Result<Arrangement> {
    if a.kind != Kind::Projective {
        return Err(Error::Invalid(
            "decone expects a projective arrangement".into(),
        ));
    }
    let inf = a
        .hyperplanes
        .get(infinity_index)
        .ok_or(Error::IndexOutOfRange {
            index: infinity_index,
            len: a.len(),
        })?;
    let h = &inf.normal;
    let j = (0..h.len()).rev().find(|&i| !h[i].is_zero()).unwrap();
    let hj = &h[j];

    let mut out = Vec::with_capacity(a.len() - 1);
    for (k, g) in a.hyperplanes.iter().enumerate() {
        if k == infinity_index {
            continue;
        }
        let g = &g.normal;
        let scale = &g[j] / hj;
        let normal: Vec<Rational> = (0..h.len())
            .filter(|&i| i != j)
            .map(|i| &g[i] - &scale * &h[i])
            .collect();
        out.push(Hyperplane::new(normal, -scale)?);
    }
    Arrangement::affine(a.ambient_dim, out)
}

/// An arrangement written as (essential part) x (trivial affine factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialReduction {
    /// Rank-`s` arrangement in affine `s`-space.
    pub essential: Arrangement,
    /// `n - s`.
    pub shift: usize,
    /// Invertible `n x n` matrix `P` with `x = P y`; its last `n - s`
    /// columns span the common kernel of the normals.
    pub change_of_coordinates: QMatrix,
}

/// Splits off the directions along which every hyperplane is invariant.
pub fn essentialize(a: &Arrangement) -> Result<EssentialReduction> {
    if a.kind != Kind::Affine {
        return Err(Error::Invalid(
            "essentialize expects an affine arrangement".into(),
        ));
    }
    let n = a.ambient_dim;
    let normals = a.normal_matrix();
    let rref = normals.rref();
    let s = rref.rank;
    if s == n {
        return Ok(EssentialReduction {
            essential: a.clone(),
            shift: 0,
            change_of_coordinates: QMatrix::identity(n),
        });
    }

    let mut columns: Vec<Vec<Rational>> = rref
        .pivot_columns
        .iter()
        .map(|&pc| {
            let mut e = vec![rat(0); n];
            e[pc] = rat(1);
            e
        })
        .collect();
    columns.extend(normals.kernel_basis().columns());
    let p = QMatrix::from_columns(n, &columns);

    let transformed = &normals * &p;
    let hs = a
        .hyperplanes
        .iter()
        .enumerate()
        .map(|(i, h)| Hyperplane::new(transformed.row(i)[..s].to_vec(), h.constant.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(EssentialReduction {
        essential: Arrangement::affine(s, hs)?,
        shift: n - s,
        change_of_coordinates: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::ratio;

    #[test]
    fn parse_boolean_plane() {
        let a = parse_arrangement("affine 2\n1 0 0\n0 1 0\n").unwrap();
        assert_eq!(a, Arrangement::boolean(2));
    }

    #[test]
    fn parse_canonicalizes_scaling() {
        let a = parse_arrangement("affine 2\n2 4 6\n").unwrap();
        assert_eq!(
            a.hyperplanes(),
            &[Hyperplane::from_ints(&[1, 2, 3]).unwrap()]
        );
        let b = parse_arrangement("affine 2\n-1/2 -1 -3/2 # scaled\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_duplicate_after_canonicalization() {
        let err = parse_arrangement("affine 2\n1 0 0\n-1 0 0\n").unwrap_err();
        assert_eq!(err, Error::DuplicateHyperplane { line: 3, first: 2 });
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_arrangement("affine 2\n0 0 1\n").unwrap_err(),
            Error::ZeroNormal { line: 2 }
        );
        assert_eq!(
            parse_arrangement("projective 2\n1 0 0 3\n").unwrap_err(),
            Error::ProjectiveConstant { line: 2 }
        );
        let a = parse_arrangement("projective 2\n1 0 0 0\n0 1 0\n").unwrap();
        assert_eq!(a.len(), 2);
        match parse_arrangement("# header next\n\naffine 2\n1 x 0\n").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (4, 3)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_arrangement("affine 2\n1 0\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_arrangement("affine 2\n1 1/0 0\n"),
            Err(Error::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_arrangement("planar 2\n"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_arrangement("# nothing\n"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let h = Hyperplane::new(vec![ratio(-3, 4), ratio(9, 2)], ratio(3, 8)).unwrap();
        assert_eq!(h.normal(), &[rat(2), rat(-12)]);
        assert_eq!(h.constant(), &rat(-1));
        let again = Hyperplane::new(h.normal().to_vec(), h.constant().clone()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Arrangement::boolean(4).rank(), 4);
        assert_eq!(Arrangement::braid(3).rank(), 2);
        assert_eq!(
            Arrangement::affine_from_ints(3, &[[0, 2, 0, 1]])
                .unwrap()
                .rank(),
            1
        );
    }

    #[test]
    fn decone_coordinate_simplex() {
        let p = Arrangement::projective_from_ints(2, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let a = decone(&p, 0).unwrap();
        assert_eq!(a, Arrangement::boolean(2));
        assert!(matches!(
            decone(&p, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
        assert!(decone(&a, 0).is_err());
    }

    #[test]
    fn decone_generic_lines() {
        let p = Arrangement::projective_from_ints(2, &[[1, 1, 1], [1, -1, 2], [3, 1, -1]]).unwrap();
        let a = decone(&p, 2).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn essentialize_braid() {
        let red = essentialize(&Arrangement::braid(3)).unwrap();
        assert_eq!(red.shift, 1);
        assert_eq!(red.essential.ambient_dim(), 2);
        assert_eq!(red.essential.len(), 3);
        assert_eq!(red.essential.rank(), 2);
        let p = &red.change_of_coordinates;
        assert_eq!(p.rank(), 3);
        assert_eq!(p.column(2), vec![rat(1), rat(1), rat(1)]);
        // Idempotent on the output.
        let again = essentialize(&red.essential).unwrap();
        assert_eq!(again.essential, red.essential);
        assert_eq!(again.shift, 0);
    }

    #[test]
    fn essentialize_trivial_cases() {
        let b = Arrangement::boolean(3);
        let red = essentialize(&b).unwrap();
        assert_eq!(red.essential, b);
        assert_eq!(red.shift, 0);
        assert_eq!(red.change_of_coordinates, QMatrix::identity(3));

        let single = Arrangement::affine_from_ints(3, &[[1, 0, 0, 5]]).unwrap();
        let red = essentialize(&single).unwrap();
        assert_eq!(red.shift, 2);
        assert_eq!(
            red.essential,
            Arrangement::affine_from_ints(1, &[[1, 5]]).unwrap()
        );
    }

    #[test]
    fn display_round_trips() {
        let a = parse_arrangement("affine 2\n1/2 -1 3\n0 1 0\n").unwrap();
        assert_eq!(a.to_string(), "affine 2\n1 -2 6\n0 1 0\n");
        assert_eq!(a.to_string().parse::<Arrangement>().unwrap(), a);
        let p = Arrangement::projective_from_ints(2, &[[1, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(p.to_string().parse::<Arrangement>().unwrap(), p);
    }
}
