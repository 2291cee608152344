//! Labeled square matrices over GF(2), GF(p) and Q.
//!
//! Matrices are immutable values. Every operation returns a new matrix and
//! never touches the receiver, so a matrix can be shared read-only across the
//! workers of a subset sweep. GF(2) rows are bit-packed; the other fields use
//! dense row-major storage.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dense;
use crate::error::{Error, Result};
use crate::field::{Arith, Field, ModArith, RatArith, Scalar};
use crate::gf2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Data {
    /// GF(2): row `i` lives in `rows[i * words..(i + 1) * words]`, bit `j` of
    /// the row is entry `(i, j)`.
    Bits { words: usize, rows: Vec<u64> },
    /// GF(p), row-major canonical residues.
    Residues(Vec<u32>),
    Rationals(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    labels: Arc<[String]>,
    data: Data,
}

/// A subset of a matrix's label set, stored as a bitmask in label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: Arc<[String]>,
    words: Vec<u64>,
}

fn default_labels(n: usize) -> Arc<[String]> {
    (0..n).map(|i| i.to_string()).collect()
}

fn same_universe(a: &Arc<[String]>, b: &Arc<[String]>) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Subset {
    pub fn empty(universe: Arc<[String]>) -> Self {
        let words = vec![0; gf2::words_for(universe.len())];
        Subset { universe, words }
    }

    pub fn full(universe: Arc<[String]>) -> Self {
        Subset::empty(universe).complement()
    }

    pub fn from_indices(universe: Arc<[String]>, indices: &[usize]) -> Result<Self> {
        let mut s = Subset::empty(universe);
        for &i in indices {
            if i >= s.universe.len() {
                return Err(Error::UnknownLabel(i.to_string()));
            }
            s.words[i / 64] |= 1 << (i % 64);
        }
        Ok(s)
    }

    pub fn from_labels<S: AsRef<str>>(universe: Arc<[String]>, labels: &[S]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                universe
                    .iter()
                    .position(|u| u == l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::from_indices(universe, &idx)
    }

    /// Subset whose members are the set bits of `mask`; bits beyond the
    /// universe are ignored.
    pub fn from_mask(universe: Arc<[String]>, mask: u64) -> Self {
        let mut s = Subset::empty(universe);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        let n = self.universe.len();
        if n % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
    }

    pub fn universe(&self) -> &Arc<[String]> {
        &self.universe
    }

    pub fn universe_len(&self) -> usize {
        self.universe.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe.len() && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.universe.len()).filter(|&i| self.contains(i)).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices()
            .into_iter()
            .map(|i| self.universe[i].as_str())
            .collect()
    }

    /// The bitmask, when the universe has at most 64 members.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn complement(&self) -> Self {
        let mut s = Subset {
            universe: self.universe.clone(),
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    fn zip_with(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if !same_universe(&self.universe, &other.universe) {
            return Err(Error::UniverseMismatch);
        }
        Ok(Subset {
            universe: self.universe.clone(),
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Result<Self> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union(&self, other: &Subset) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Subset) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

/// Parses a comma-separated list of label indices; `-` is the empty list.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("`{t}` is not a label index")))
        })
        .collect()
}

impl Matrix {
    /// Builds a matrix from rows of field scalars with labels `0..n-1`.
    pub fn new(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let labels = default_labels(rows.len());
        Matrix::with_labels(field, labels, rows)
    }

    pub fn with_labels(field: Field, labels: Arc<[String]>, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if labels.len() != n {
            return Err(Error::Invalid(format!(
                "{} labels for a {n}x{n} matrix",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate label `{l}`")));
            }
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Invalid(format!(
                "row {r} has {} entries, expected {n}",
                rows[r].len()
            )));
        }
        for s in rows.iter().flatten() {
            field.check_scalar(s)?;
        }
        let data = match field {
            Field::Gf2 => {
                let words = gf2::words_for(n);
                let mut bits = vec![0u64; n * words];
                for (i, row) in rows.iter().enumerate() {
                    for (j, s) in row.iter().enumerate() {
                        if !s.is_zero() {
                            bits[i * words + j / 64] |= 1 << (j % 64);
                        }
                    }
                }
                Data::Bits { words, rows: bits }
            }
            Field::Gfp(_) => Data::Residues(
                rows.into_iter()
                    .flatten()
                    .map(|s| match s {
                        Scalar::Residue(v) => v,
                        Scalar::Rational(_) => unreachable!("checked above"),
                    })
                    .collect(),
            ),
            Field::Rational => Data::Rationals(
                rows.into_iter()
                    .flatten()
                    .map(|s| match s {
                        Scalar::Rational(q) => q,
                        Scalar::Residue(_) => unreachable!("checked above"),
                    })
                    .collect(),
            ),
        };
        Ok(Matrix { field, labels, data })
    }

    /// Convenience constructor: integer entries mapped into `field`.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::new(field, rows)
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Matrix::from_i64(field, &vec![vec![0; n]; n]).expect("square")
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        Matrix::from_i64(field, &rows).expect("square")
    }

    /// Same entries under new labels.
    pub fn relabeled(&self, labels: Arc<[String]>) -> Result<Self> {
        Matrix::with_labels(self.field, labels, self.rows())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        let n = self.n();
        assert!(i < n && j < n, "entry ({i}, {j}) out of range for n = {n}");
        match &self.data {
            Data::Bits { words, rows } => Scalar::Residue((rows[i * words + j / 64] >> (j % 64) & 1) as u32),
            Data::Residues(v) => Scalar::Residue(v[i * n + j]),
            Data::Rationals(v) => Scalar::Rational(v[i * n + j].clone()),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub(crate) fn data(&self) -> &Data {
        &self.data
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.labels.clone())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.labels.clone())
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Subset> {
        Subset::from_indices(self.labels.clone(), indices)
    }

    pub fn subset_from_mask(&self, mask: u64) -> Subset {
        Subset::from_mask(self.labels.clone(), mask)
    }

    fn check_universe(&self, a: &Subset) -> Result<()> {
        if same_universe(&self.labels, &a.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Residues of a finite-field matrix, row-major.
    fn residues(&self) -> Vec<u32> {
        let n = self.n();
        match &self.data {
            Data::Bits { .. } | Data::Residues(_) => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| match self.entry(i, j) {
                    Scalar::Residue(v) => v,
                    Scalar::Rational(_) => unreachable!(),
                })
                .collect(),
            Data::Rationals(_) => panic!("residues() on a rational matrix"),
        }
    }

    fn from_residues(field: Field, labels: Arc<[String]>, v: Vec<u32>) -> Self {
        let n = labels.len();
        let data = match field {
            Field::Gf2 => {
                let words = gf2::words_for(n);
                let mut bits = vec![0u64; n * words];
                for i in 0..n {
                    for j in 0..n {
                        if v[i * n + j] != 0 {
                            bits[i * words + j / 64] |= 1 << (j % 64);
                        }
                    }
                }
                Data::Bits { words, rows: bits }
            }
            Field::Gfp(_) => Data::Residues(v),
            Field::Rational => unreachable!(),
        };
        Matrix { field, labels, data }
    }

    /// Applies `f` entrywise to produce a matrix on new labels.
    fn build(&self, labels: Arc<[String]>, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let n = labels.len();
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Matrix::with_labels(self.field, labels, rows).expect("entries come from the same field")
    }

    /// `M[A]`: rows and columns restricted to `a`, label order preserved.
    pub fn principal_submatrix(&self, a: &Subset) -> Result<Self> {
        self.check_universe(a)?;
        let idx = a.indices();
        let labels: Arc<[String]> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(self.build(labels, |i, j| self.entry(idx[i], idx[j])))
    }

    /// `M + I_A`: adds one to each diagonal entry indexed by `a`.
    pub fn add_diagonal_indicator(&self, a: &Subset) -> Result<Self> {
        self.check_universe(a)?;
        let mut out = self.clone();
        let n = self.n();
        match &mut out.data {
            Data::Bits { words, rows } => {
                for i in a.indices() {
                    rows[i * *words + i / 64] ^= 1 << (i % 64);
                }
            }
            Data::Residues(v) => {
                let ar = ModArith::new(self.field.modulus().unwrap());
                for i in a.indices() {
                    v[i * n + i] = ar.add(&v[i * n + i], &1);
                }
            }
            Data::Rationals(v) => {
                for i in a.indices() {
                    v[i * n + i] = RatArith.add(&v[i * n + i], &RatArith.one());
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let n = self.n();
        match &self.data {
            Data::Bits { words, rows } => gf2::rank_multiword(*words, &mut rows.clone()),
            Data::Residues(v) => dense::rank(&ModArith::new(self.field.modulus().unwrap()), n, n, v.clone()),
            Data::Rationals(v) => dense::rank(&RatArith, n, n, v.clone()),
        }
    }

    pub fn corank(&self) -> usize {
        self.n() - self.rank()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rank() == self.n()
    }

    /// Principal pivot transform `M * X`. `M * {}` is `M`.
    pub fn pivot(&self, x: &Subset) -> Result<Self> {
        self.check_universe(x)?;
        let n = self.n();
        let in_x: Vec<bool> = (0..n).map(|i| x.contains(i)).collect();
        match &self.data {
            Data::Rationals(v) => {
                let out = dense::pivot(&RatArith, n, v, &in_x).ok_or(Error::SingularPrincipalMinor)?;
                Ok(Matrix {
                    field: self.field,
                    labels: self.labels.clone(),
                    data: Data::Rationals(out),
                })
            }
            _ => {
                let ar = ModArith::new(self.field.modulus().unwrap());
                let out = dense::pivot(&ar, n, &self.residues(), &in_x).ok_or(Error::SingularPrincipalMinor)?;
                Ok(Matrix::from_residues(self.field, self.labels.clone(), out))
            }
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pivot(&self.full_subset()).map_err(|e| match e {
            Error::SingularPrincipalMinor => Error::SingularMatrix,
            e => e,
        })
    }

    pub fn transpose(&self) -> Self {
        self.build(self.labels.clone(), |i, j| self.entry(j, i))
    }

    /// Matrix product; both operands must share field and labels.
    pub fn mul(&self, other: &Matrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if !same_universe(&self.labels, &other.labels) {
            return Err(Error::UniverseMismatch);
        }
        let n = self.n();
        match (&self.data, &other.data) {
            (Data::Rationals(a), Data::Rationals(b)) => {
                let mut out = vec![RatArith.zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        for j in 0..n {
                            out[i * n + j] = RatArith.add(&out[i * n + j], &RatArith.mul(&a[i * n + k], &b[k * n + j]));
                        }
                    }
                }
                Ok(Matrix {
                    field: self.field,
                    labels: self.labels.clone(),
                    data: Data::Rationals(out),
                })
            }
            _ => {
                let ar = ModArith::new(self.field.modulus().unwrap());
                let (a, b) = (self.residues(), other.residues());
                let mut out = vec![0u32; n * n];
                for i in 0..n {
                    for k in 0..n {
                        for j in 0..n {
                            out[i * n + j] = ar.add(&out[i * n + j], &ar.mul(&a[i * n + k], &b[k * n + j]));
                        }
                    }
                }
                Ok(Matrix::from_residues(self.field, self.labels.clone(), out))
            }
        }
    }

    /// Block-diagonal direct sum, labels `0..n1+n2-1`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (n1, n2) = (self.n(), other.n());
        let zero = self.field.zero();
        let rows = (0..n1 + n2)
            .map(|i| {
                (0..n1 + n2)
                    .map(|j| match (i < n1, j < n1) {
                        (true, true) => self.entry(i, j),
                        (false, false) => other.entry(i - n1, j - n1),
                        _ => zero.clone(),
                    })
                    .collect()
            })
            .collect();
        Matrix::new(self.field, rows)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (i + 1..n).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n()).all(|i| self.entry(i, i).is_zero())
    }

    /// Whether every entry between `v1` and `v2` vanishes. The two sets must
    /// partition the labels.
    pub fn is_block_diagonal(&self, v1: &Subset, v2: &Subset) -> Result<bool> {
        self.check_universe(v1)?;
        self.check_universe(v2)?;
        if !v1.intersection(v2)?.is_empty() || v1.union(v2)?.len() != self.n() {
            return Err(Error::InvalidPartition(format!(
                "{v1} and {v2} do not partition the labels"
            )));
        }
        let (a, b) = (v1.indices(), v2.indices());
        Ok(a.iter().all(|&i| {
            b.iter()
                .all(|&j| self.entry(i, j).is_zero() && self.entry(j, i).is_zero())
        }))
    }

    /// Whether `v` has no nonzero off-diagonal entries in its row and column.
    pub fn is_isolated(&self, v: usize) -> bool {
        (0..self.n())
            .filter(|&u| u != v)
            .all(|u| self.entry(u, v).is_zero() && self.entry(v, u).is_zero())
    }

    /// Serializes to the matrix text format.
    pub fn to_text(&self) -> String {
        let mut s = match self.field {
            Field::Gf2 => "field gf2\n".to_string(),
            Field::Gfp(p) => format!("field gfp {p}\n"),
            Field::Rational => "field q\n".to_string(),
        };
        s.push_str(&format!("n {}\n", self.n()));
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format. `field_override` reinterprets the
    /// entries in another field, ignoring the header's field.
    pub fn parse(text: &str, field_override: Option<Field>) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());

        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `field` line"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let declared = match toks.as_slice() {
            ["field", "gf2"] => Field::Gf2,
            ["field", "q"] => Field::Rational,
            ["field", "gfp", p] => {
                let col = column_of(header, p);
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::parse(ln, col, format!("`{p}` is not an integer modulus")))?;
                Field::gfp(p).map_err(|e| Error::parse(ln, col, e.to_string()))?
            }
            _ => {
                return Err(Error::parse(
                    ln,
                    1,
                    "expected `field gf2`, `field gfp <p>` or `field q`",
                ))
            }
        };
        let field = field_override.unwrap_or(declared);

        let (ln, size) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 1, 1, "missing `n <size>` line"))?;
        let n = match size.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", v] => v
                .parse::<usize>()
                .map_err(|_| Error::parse(ln, column_of(size, v), format!("`{v}` is not a size")))?,
            _ => return Err(Error::parse(ln, 1, "expected `n <size>`")),
        };

        let mut rows = Vec::with_capacity(n);
        let mut last = ln;
        for r in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(last + 1, 1, format!("expected {n} rows, found {r}")))?;
            last = ln;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != n {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("expected {n} entries, found {}", toks.len()),
                ));
            }
            let row = toks
                .iter()
                .map(|t| {
                    field
                        .parse_scalar(t)
                        .map_err(|e| Error::parse(ln, column_of(line, t), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, 1, "trailing content after the last row"));
        }
        Matrix::new(field, rows)
    }
}

/// 1-based column of `tok` inside `line`; `tok` must be a subslice of it.
fn column_of(line: &str, tok: &str) -> usize {
    (tok.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Builds a rational scalar `num/den`.
pub fn rational(num: i64, den: i64) -> Scalar {
    Field::Rational
        .from_fraction(&BigInt::from(num), &BigInt::from(den))
        .expect("nonzero denominator")
}
