//! Grafts: simple graphs with a distinguished vertex subset `L`.
//!
//! The GF(2) adjacency matrix of a graft carries the graph adjacency off the
//! diagonal and the indicator of `L` on it. Toggling `L` by `A` is the same as
//! adding `I_A` to the matrix.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::IntPolynomial;
use crate::twuality::{self, Operator, PolynomialSet, SweepConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graft {
    vertices: Vec<String>,
    /// Index pairs `(u, v)` with `u < v`.
    edges: BTreeSet<(usize, usize)>,
    marked: Vec<bool>,
}

fn check_label(l: &str) -> Result<()> {
    if l.is_empty() || l.contains('-') || l.chars().any(char::is_whitespace) {
        return Err(Error::Invalid(format!(
            "vertex label `{l}` must be nonempty without whitespace or `-`"
        )));
    }
    Ok(())
}

impl Graft {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)], marked: &[S]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            check_label(v)?;
            if vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let find = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            idx_edges.push((find(u.as_ref())?, find(v.as_ref())?));
        }
        let mut idx_marked = Vec::with_capacity(marked.len());
        for m in marked {
            idx_marked.push(find(m.as_ref())?);
        }
        Graft::from_parts(vertices, &idx_edges, &idx_marked)
    }

    /// Graft on labels `0..n-1`.
    pub fn from_indices(n: usize, edges: &[(usize, usize)], marked: &[usize]) -> Result<Self> {
        Graft::from_parts((0..n).map(|i| i.to_string()).collect(), edges, marked)
    }

    fn from_parts(vertices: Vec<String>, edges: &[(usize, usize)], marked: &[usize]) -> Result<Self> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownLabel(u.max(v).to_string()));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at `{}`", vertices[u])));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid(format!(
                    "duplicate edge `{}-{}`",
                    vertices[u], vertices[v]
                )));
            }
        }
        let mut mk = vec![false; n];
        for &m in marked {
            if m >= n {
                return Err(Error::UnknownLabel(m.to_string()));
            }
            mk[m] = true;
        }
        Ok(Graft {
            vertices,
            edges: set,
            marked: mk,
        })
    }

    /// Reads a graft off a symmetric GF(2) matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.field() != Field::Gf2 || !m.is_symmetric() {
            return Err(Error::Precondition("graft matrices are symmetric over GF(2)".into()));
        }
        let n = m.n();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.entry(i, j).is_zero())
            .collect();
        let marked: Vec<usize> = (0..n).filter(|&i| !m.entry(i, i).is_zero()).collect();
        Graft::from_parts(m.labels().to_vec(), &edges, &marked)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.marked[v]).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Same graph, marked set replaced.
    pub fn with_marked(&self, marked: &[usize]) -> Result<Self> {
        let edges: Vec<_> = self.edges().collect();
        Graft::from_parts(self.vertices.clone(), &edges, marked)
    }

    /// Deletes vertices (and their marks and incident edges).
    pub fn remove_vertices(&self, remove: &[usize]) -> Graft {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !remove.contains(v)).collect();
        let pos = |v: usize| keep.iter().position(|&k| k == v);
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(a, b)| Some((pos(a)?, pos(b)?)))
            .collect();
        let marked: Vec<usize> = self.marked().into_iter().filter_map(pos).collect();
        Graft::from_parts(
            keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            &edges,
            &marked,
        )
        .expect("induced subgraft is valid")
    }

    /// Symmetric GF(2) matrix: off-diagonal adjacency, diagonal = marking.
    pub fn adjacency_matrix(&self) -> Matrix {
        let n = self.n();
        let rows: Vec<Vec<_>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let bit = if i == j { self.marked[i] } else { self.has_edge(i, j) };
                        Field::Gf2.from_i64(bit as i64)
                    })
                    .collect()
            })
            .collect();
        Matrix::with_labels(Field::Gf2, self.vertices.iter().cloned().collect(), rows)
            .expect("square GF(2) matrix")
    }

    pub fn polynomial(&self, op: Operator, cfg: &SweepConfig) -> Result<IntPolynomial> {
        twuality::polynomial(op, &self.adjacency_matrix(), cfg)
    }

    pub fn all_polynomials(&self, cfg: &SweepConfig) -> Result<PolynomialSet> {
        twuality::all_polynomials(&self.adjacency_matrix(), cfg)
    }

    /// The polynomial written graft-side: every `M + I_A` is the adjacency
    /// matrix of `(G, L Δ A)`, built afresh for each subset.
    pub fn expanded_polynomial(&self, op: Operator, cfg: &SweepConfig) -> Result<IntPolynomial> {
        let n = self.n();
        if n > cfg.max_n.min(20) {
            return Err(Error::SizeCapExceeded {
                n,
                cap: cfg.max_n.min(20),
            });
        }
        let base = self.adjacency_matrix();
        let rank_m = base.rank() as i64;
        let mut terms = Vec::with_capacity(1 << n);
        for mask in 0..1u64 << n {
            let a = base.subset_from_mask(mask);
            let ac = a.complement();
            let toggled: Vec<usize> = (0..n)
                .filter(|&v| self.marked[v] != a.contains(v))
                .collect();
            let twisted = self.with_marked(&toggled)?.adjacency_matrix();
            let r = |m: &Matrix| m.rank() as i64;
            let co = |m: &Matrix| m.corank() as i64;
            let e = match op {
                Operator::Delta => r(&base.principal_submatrix(&a)?) + r(&base.principal_submatrix(&ac)?),
                Operator::Tau => r(&twisted),
                Operator::DeltaTau => r(&twisted.principal_submatrix(&a)?) + r(&base.principal_submatrix(&ac)?),
                Operator::TauDelta => r(&twisted) - co(&base.principal_submatrix(&a)?),
                Operator::TauDeltaTau => rank_m - co(&twisted.principal_submatrix(&a)?),
            };
            let e = usize::try_from(e).map_err(|_| Error::internal(format!("negative exponent {e}")))?;
            terms.push((1, e));
        }
        Ok(IntPolynomial::from_terms(&terms))
    }

    /// Disjoint union; colliding labels of `other` get `#2` appended until
    /// unique.
    pub fn disjoint_union(&self, other: &Graft) -> Graft {
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            let mut l = v.clone();
            while vertices.contains(&l) {
                l.push_str("#2");
            }
            vertices.push(l);
        }
        let off = self.n();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .chain(other.edges().map(|(a, b)| (a + off, b + off)))
            .collect();
        let marked: Vec<usize> = self
            .marked()
            .into_iter()
            .chain(other.marked().into_iter().map(|v| v + off))
            .collect();
        Graft::from_parts(vertices, &edges, &marked).expect("union of valid grafts")
    }

    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b)| format!("{}-{}", self.vertices[a], self.vertices[b]))
            .collect();
        let marked: Vec<&str> = self.marked().into_iter().map(|v| self.vertices[v].as_str()).collect();
        format!(
            "vertices: {}\nedges: {}\nloops: {}\n",
            self.vertices.join(" "),
            edges.join(" "),
            marked.join(" ")
        )
    }

    /// Parses `vertices:`, `edges:` and `loops:` lines. The last two may be
    /// empty or absent.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<Vec<String>> = None;
        let mut edge_toks: Vec<(usize, usize, String)> = Vec::new();
        let mut loop_toks: Vec<(usize, usize, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                return Err(Error::parse(ln, 1, "expected `key: values`"));
            };
            let offset = key.len() + 1;
            let toks = tokens(rest).map(|(c, t)| (ln, offset + c, t.to_string()));
            match key.trim() {
                "vertices" => vertices = Some(toks.map(|t| t.2).collect()),
                "edges" => edge_toks.extend(toks),
                "loops" => loop_toks.extend(toks),
                k => return Err(Error::parse(ln, 1, format!("unknown key `{k}`"))),
            }
        }
        let vertices = vertices.ok_or_else(|| Error::parse(1, 1, "missing `vertices:` line"))?;
        for v in &vertices {
            check_label(v).map_err(|e| Error::parse(1, 1, e.to_string()))?;
        }
        let find = |ln: usize, col: usize, l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::parse(ln, col, format!("unknown vertex `{l}`")))
        };
        let mut edges = Vec::new();
        for (ln, col, t) in &edge_toks {
            let (u, v) = t
                .split_once('-')
                .ok_or_else(|| Error::parse(*ln, *col, format!("edge `{t}` is not `u-v`")))?;
            edges.push((find(*ln, *col, u)?, find(*ln, *col, v)?));
        }
        let mut marked = Vec::new();
        for (ln, col, t) in &loop_toks {
            marked.push(find(*ln, *col, t)?);
        }
        let at = edge_toks.first().map(|t| (t.0, t.1)).unwrap_or((1, 1));
        Graft::from_parts(vertices, &edges, &marked).map_err(|e| Error::parse(at.0, at.1, e.to_string()))
    }
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize + 1, t))
}

impl fmt::Display for Graft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `(K_n, {})` on labels `0..n-1`.
pub fn kn_graft(n: usize) -> Graft {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graft::from_indices(n, &edges, &[]).expect("complete graph")
}

/// Signed polynomial used only while expanding closed forms.
#[derive(Clone)]
struct BigPoly(Vec<BigInt>);

impl BigPoly {
    fn binomial_power(n: usize, sign: i64) -> BigPoly {
        // (1 + sign z)^n
        let mut c = vec![BigInt::from(1)];
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k] += a;
                next[k + 1] += a * sign;
            }
            c = next;
        }
        BigPoly(c)
    }

    fn monomial(k: usize) -> BigPoly {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::from(1);
        BigPoly(c)
    }

    fn combine(&self, other: &BigPoly, sign: i64) -> BigPoly {
        let len = self.0.len().max(other.0.len());
        BigPoly(
            (0..len)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_default();
                    let b = other.0.get(k).cloned().unwrap_or_default();
                    a + b * sign
                })
                .collect(),
        )
    }

    fn shift(&self, k: usize) -> BigPoly {
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        BigPoly(c)
    }

    fn halve(&self) -> Result<BigPoly> {
        let two = BigInt::from(2);
        self.0
            .iter()
            .map(|c| {
                if (c % &two).is_zero() {
                    Ok(c / &two)
                } else {
                    Err(Error::internal("odd coefficient halved"))
                }
            })
            .collect::<Result<_>>()
            .map(BigPoly)
    }

    fn into_nonnegative(self) -> Result<IntPolynomial> {
        self.0
            .iter()
            .map(|c| {
                if c.is_negative() {
                    return Err(Error::internal(format!("negative coefficient {c}")));
                }
                c.to_u64()
                    .ok_or_else(|| Error::internal(format!("coefficient {c} overflows u64")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

/// Closed form of `P_op(K_n, {})` for `op ∈ {τδτ, δτ, τδ}`.
pub fn kn_closed_form(op: Operator, n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Precondition("K_n closed forms need n >= 1".into()));
    }
    let even = n % 2 == 0;
    let z = BigPoly::monomial;
    // ((1+z)^(n+1) -/+ (1-z)^(n+1)) / 2
    let half = |sign: i64| BigPoly::binomial_power(n + 1, 1).combine(&BigPoly::binomial_power(n + 1, -1), sign).halve();
    let p = match (op, even) {
        (Operator::TauDeltaTau, true) => BigPoly::binomial_power(n, 1).shift(1).combine(&z(n), 1).combine(&z(n + 1), -1),
        (Operator::TauDeltaTau, false) => BigPoly::binomial_power(n, 1).combine(&z(n - 1), 1).combine(&z(n), -1),
        (Operator::DeltaTau | Operator::TauDelta, true) => z(n).combine(&half(-1)?, 1).combine(&z(n + 1), -1),
        (Operator::DeltaTau, false) => z(n - 1).combine(&half(-1)?, 1).combine(&z(n), -1),
        (Operator::TauDelta, false) => z(n - 1).combine(&half(1)?, 1).combine(&z(n + 1), -1),
        (Operator::Delta | Operator::Tau, _) => return Err(Error::UnsupportedOperator(op.name().to_string())),
    };
    p.into_nonnegative()
}

/// Checks the δ leaf recursion at leaf `x` with neighbour `y`, `x ∉ L`:
/// `P_δ(G, L) = P_δ(G - x, L) + 2z^2 P_δ(G - x - y, L - y)`.
pub fn leaf_reduce_check_delta(g: &Graft, x: &str, y: &str, cfg: &SweepConfig) -> Result<bool> {
    let (xi, yi) = leaf_pair(g, x, y)?;
    if g.is_marked(xi) {
        return Err(Error::Precondition(format!("leaf `{x}` is marked")));
    }
    let lhs = g.polynomial(Operator::Delta, cfg)?;
    let a = g.remove_vertices(&[xi]).polynomial(Operator::Delta, cfg)?;
    let b = g.remove_vertices(&[xi, yi]).polynomial(Operator::Delta, cfg)?;
    Ok(lhs == &a + &(&IntPolynomial::monomial(2, 2) * &b))
}

/// Checks the τ leaf recursion at leaf `x` with neighbour `y`:
/// `P_τ(G, L) = z P_τ(G - x, L - x) + 2z^2 P_τ(G - x - y, L - x - y)`.
pub fn leaf_reduce_check_tau(g: &Graft, x: &str, y: &str, cfg: &SweepConfig) -> Result<bool> {
    let (xi, yi) = leaf_pair(g, x, y)?;
    let lhs = g.polynomial(Operator::Tau, cfg)?;
    let a = g.remove_vertices(&[xi]).polynomial(Operator::Tau, cfg)?;
    let b = g.remove_vertices(&[xi, yi]).polynomial(Operator::Tau, cfg)?;
    Ok(lhs == &(&IntPolynomial::monomial(1, 1) * &a) + &(&IntPolynomial::monomial(2, 2) * &b))
}

fn leaf_pair(g: &Graft, x: &str, y: &str) -> Result<(usize, usize)> {
    let (xi, yi) = (g.index_of(x)?, g.index_of(y)?);
    if g.neighbors(xi) != [yi] {
        return Err(Error::Precondition(format!("`{x}` is not a leaf hanging off `{y}`")));
    }
    Ok((xi, yi))
}
