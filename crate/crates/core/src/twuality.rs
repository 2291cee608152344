//! The five partial-twuality exponent functions and their generating
//! polynomials, plus the interlace polynomial and the identity checks that
//! relate them.
//!
//! For a square matrix `M` on labels `V` and `A ⊆ V` the exponents are
//!
//! | operator | exponent |
//! |---|---|
//! | `delta` | `rank M[A] + rank M[A^c]` |
//! | `tau` | `rank (M + I_A)` |
//! | `deltatau` | `rank (M + I_A)[A] + rank M[A^c]` |
//! | `taudelta` | `rank (M + I_A) - corank M[A]` |
//! | `taudeltatau` | `rank M - corank (M + I_A)[A]` |
//!
//! and each polynomial sums `z^exponent` over all `2^|V|` subsets. Sweeps
//! run in ascending bitmask order and may be split into contiguous chunks
//! across worker threads; per-chunk coefficient vectors are merged by
//! addition, so the result does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subset};
use crate::poly::IntPolynomial;
use crate::rank::{RankEngine, MAX_MASK_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Delta,
    Tau,
    DeltaTau,
    TauDelta,
    TauDeltaTau,
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Delta,
        Operator::Tau,
        Operator::DeltaTau,
        Operator::TauDelta,
        Operator::TauDeltaTau,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Operator::Delta => "delta",
            Operator::Tau => "tau",
            Operator::DeltaTau => "deltatau",
            Operator::TauDelta => "taudelta",
            Operator::TauDeltaTau => "taudeltatau",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown operator `{s}`")))
    }
}

/// Parses a comma-separated operator list such as `tau,taudeltatau`.
pub fn parse_operator_list(s: &str) -> Result<Vec<Operator>> {
    let ops = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<Vec<Operator>>>()?;
    if ops.is_empty() {
        return Err(Error::Invalid("empty operator list".into()));
    }
    Ok(ops)
}

pub const DEFAULT_SIZE_CAP: usize = 24;

/// Limits for subset sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest `|V|` a sweep accepts.
    pub max_n: usize,
    /// Worker cap; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: DEFAULT_SIZE_CAP,
            threads: None,
        }
    }
}

impl SweepConfig {
    pub fn with_max_n(max_n: usize) -> Self {
        SweepConfig {
            max_n,
            ..Default::default()
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let cap = self.max_n.min(MAX_MASK_BITS);
        if n > cap {
            return Err(Error::SizeCapExceeded { n, cap });
        }
        Ok(())
    }
}

/// Exponent of a single subset, computed on materialized submatrices.
pub fn exponent(op: Operator, m: &Matrix, a: &Subset) -> Result<usize> {
    let ac = a.complement();
    let size = a.len() as i64;
    let rank_of = |x: &Matrix| x.rank() as i64;
    let plus = m.add_diagonal_indicator(a)?;
    let r = match op {
        Operator::Delta => rank_of(&m.principal_submatrix(a)?) + rank_of(&m.principal_submatrix(&ac)?),
        Operator::Tau => rank_of(&plus),
        Operator::DeltaTau => rank_of(&plus.principal_submatrix(a)?) + rank_of(&m.principal_submatrix(&ac)?),
        Operator::TauDelta => rank_of(&plus) - (size - rank_of(&m.principal_submatrix(a)?)),
        Operator::TauDeltaTau => rank_of(m) - (size - rank_of(&plus.principal_submatrix(a)?)),
    };
    usize::try_from(r).map_err(|_| Error::internal(format!("negative {op} exponent {r} at {a}")))
}

/// The four ranks one subset needs across all operators.
struct SubsetRanks {
    size: i64,
    sub: Option<i64>,
    co: Option<i64>,
    plus: Option<i64>,
    plus_sub: Option<i64>,
}

struct Sweeper<'a> {
    engine: &'a RankEngine,
    n: usize,
    full: u64,
    rank_m: i64,
}

impl Sweeper<'_> {
    fn ranks(&self, mask: u64, ops: &[Operator]) -> SubsetRanks {
        let need = |set: &[Operator]| ops.iter().any(|o| set.contains(o));
        use Operator::*;
        let e = self.engine;
        SubsetRanks {
            size: mask.count_ones() as i64,
            sub: need(&[Delta, TauDelta]).then(|| e.rank(mask, 0) as i64),
            co: need(&[Delta, DeltaTau]).then(|| e.rank(self.full & !mask, 0) as i64),
            plus: need(&[Tau, TauDelta]).then(|| e.rank(self.full, mask) as i64),
            plus_sub: need(&[DeltaTau, TauDeltaTau]).then(|| e.rank(mask, mask) as i64),
        }
    }

    fn exponent(&self, op: Operator, r: &SubsetRanks, mask: u64) -> Result<usize> {
        let g = |x: Option<i64>| x.expect("rank requested for this operator");
        let e = match op {
            Operator::Delta => g(r.sub) + g(r.co),
            Operator::Tau => g(r.plus),
            Operator::DeltaTau => g(r.plus_sub) + g(r.co),
            Operator::TauDelta => g(r.plus) - (r.size - g(r.sub)),
            Operator::TauDeltaTau => self.rank_m - (r.size - g(r.plus_sub)),
        };
        if e < 0 || e as usize > self.n {
            return Err(Error::internal(format!(
                "{op} exponent {e} out of [0, {}] at mask {mask:#b}",
                self.n
            )));
        }
        Ok(e as usize)
    }
}

/// Runs `f` over every mask in `[0, 2^n)` and sums the `width` coefficient
/// vectors of length `n + 1` it fills.
fn sweep<F>(n: usize, width: usize, cfg: &SweepConfig, f: F) -> Result<Vec<Vec<u64>>>
where
    F: Fn(u64, &mut [Vec<u64>]) -> Result<()> + Sync,
{
    let total: u64 = 1 << n;
    let run_range = |lo: u64, hi: u64| -> Result<Vec<Vec<u64>>> {
        let mut acc = vec![vec![0u64; n + 1]; width];
        for mask in lo..hi {
            f(mask, &mut acc)?;
        }
        Ok(acc)
    };
    // small sweeps are not worth a fork
    if n < 12 || cfg.threads == Some(1) {
        return run_range(0, total);
    }
    let chunk: u64 = 1 << (n - 8).min(14);
    let chunks = total.div_ceil(chunk);
    let parallel = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_range(c * chunk, ((c + 1) * chunk).min(total)))
            .try_reduce(
                || vec![vec![0u64; n + 1]; width],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        for (u, v) in x.iter_mut().zip(y) {
                            *u += v;
                        }
                    }
                    Ok(a)
                },
            )
    };
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(parallel),
        None => parallel(),
    }
}

fn sweep_ops(m: &Matrix, ops: &[Operator], cfg: &SweepConfig) -> Result<Vec<IntPolynomial>> {
    let n = m.n();
    cfg.check(n)?;
    if n == 0 {
        return Ok(vec![IntPolynomial::one(); ops.len()]);
    }
    let engine = RankEngine::new(m)?;
    let full = (1u64 << n) - 1;
    let sweeper = Sweeper {
        engine: &engine,
        n,
        full,
        rank_m: engine.rank(full, 0) as i64,
    };
    let acc = sweep(n, ops.len(), cfg, |mask, acc| {
        let r = sweeper.ranks(mask, ops);
        for (k, &op) in ops.iter().enumerate() {
            acc[k][sweeper.exponent(op, &r, mask)?] += 1;
        }
        Ok(())
    })?;
    Ok(acc.into_iter().map(IntPolynomial::new).collect())
}

/// `P_op(M, z)`. The 0x0 matrix gives the constant 1.
pub fn polynomial(op: Operator, m: &Matrix, cfg: &SweepConfig) -> Result<IntPolynomial> {
    Ok(sweep_ops(m, &[op], cfg)?.pop().expect("one operator"))
}

/// `exponent(op, M, A)` for every mask `A`, indexed by mask.
pub fn subset_exponents(op: Operator, m: &Matrix, cfg: &SweepConfig) -> Result<Vec<usize>> {
    let n = m.n();
    cfg.check(n)?;
    if n == 0 {
        return Ok(vec![exponent(op, m, &m.empty_subset())?]);
    }
    let engine = RankEngine::new(m)?;
    let full = (1u64 << n) - 1;
    let sweeper = Sweeper {
        engine: &engine,
        n,
        full,
        rank_m: engine.rank(full, 0) as i64,
    };
    (0..=full)
        .map(|mask| sweeper.exponent(op, &sweeper.ranks(mask, &[op]), mask))
        .collect()
}

/// All five polynomials of one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSet {
    polys: [IntPolynomial; 5],
}

impl PolynomialSet {
    pub fn get(&self, op: Operator) -> &IntPolynomial {
        &self.polys[op.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Operator, &IntPolynomial)> {
        Operator::ALL.into_iter().zip(self.polys.iter())
    }

    /// Coefficient-wise product, operator by operator.
    pub fn product(&self, other: &PolynomialSet) -> PolynomialSet {
        PolynomialSet {
            polys: std::array::from_fn(|k| &self.polys[k] * &other.polys[k]),
        }
    }
}

/// One sweep computing the exponents of all five operators per subset.
pub fn all_polynomials(m: &Matrix, cfg: &SweepConfig) -> Result<PolynomialSet> {
    let v = sweep_ops(m, &Operator::ALL, cfg)?;
    Ok(PolynomialSet {
        polys: v.try_into().expect("five operators"),
    })
}

/// Number of subsets `A` with `corank M[A] = c`, indexed by `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankDistribution {
    counts: Vec<u64>,
}

impl CorankDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, corank: usize) -> u64 {
        self.counts.get(corank).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }
}

/// The interlace polynomial `q(M, x) = Σ (x-1)^corank M[A]` as a corank
/// distribution.
pub fn interlace_polynomial(m: &Matrix, cfg: &SweepConfig) -> Result<CorankDistribution> {
    let n = m.n();
    cfg.check(n)?;
    if n == 0 {
        return Ok(CorankDistribution { counts: vec![1] });
    }
    let engine = RankEngine::new(m)?;
    let mut acc = sweep(n, 1, cfg, |mask, acc| {
        let corank = mask.count_ones() - engine.rank(mask, 0);
        acc[0][corank as usize] += 1;
        Ok(())
    })?;
    let mut counts = acc.pop().expect("one vector");
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(CorankDistribution { counts })
}

/// Checks `P_τδτ(M, z) = z^rank(M) q(M + I, 1 + 1/z)` coefficient-wise: the
/// coefficient of `z^(rank M - c)` must equal the number of subsets with
/// `corank (M + I)[A] = c`.
pub fn check_tdt_interlace_identity(m: &Matrix, cfg: &SweepConfig) -> Result<bool> {
    let p = polynomial(Operator::TauDeltaTau, m, cfg)?;
    let shifted = m.add_diagonal_indicator(&m.full_subset())?;
    let q = interlace_polynomial(&shifted, cfg)?;
    let r = m.rank();
    let mut terms = Vec::new();
    for (c, &count) in q.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        if c > r {
            return Ok(false);
        }
        terms.push((count, r - c));
    }
    Ok(IntPolynomial::from_terms(&terms) == p)
}

/// First `A` in ascending mask order with `M + I_A` non-singular.
pub fn find_nonsingular_diagonal(m: &Matrix) -> Result<Subset> {
    let n = m.n();
    let engine = RankEngine::new(m)?;
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    for mask in 0..=full {
        if engine.rank(full, mask) as usize == n {
            return Ok(m.subset_from_mask(mask));
        }
    }
    Err(Error::internal(
        "no diagonal completion is non-singular; rank arithmetic is broken",
    ))
}

/// Product formula for a block-diagonal matrix, all five operators.
pub fn verify_product_formula(m: &Matrix, v1: &Subset, v2: &Subset, cfg: &SweepConfig) -> Result<bool> {
    if !m.is_block_diagonal(v1, v2)? {
        return Err(Error::NotBlockDiagonal);
    }
    let whole = all_polynomials(m, cfg)?;
    let a = all_polynomials(&m.principal_submatrix(v1)?, cfg)?;
    let b = all_polynomials(&m.principal_submatrix(v2)?, cfg)?;
    Ok(whole == a.product(&b))
}

/// Factor an isolated vertex with diagonal entry `diag_one` contributes
/// over GF(2).
pub fn isolated_vertex_factor(op: Operator, diag_one: bool) -> IntPolynomial {
    let two = IntPolynomial::new(vec![2]);
    let one_plus_z = IntPolynomial::new(vec![1, 1]);
    match (op, diag_one) {
        (Operator::Delta, false) => two,
        (Operator::Delta, true) => IntPolynomial::new(vec![0, 2]),
        (Operator::Tau | Operator::DeltaTau, _) => one_plus_z,
        (Operator::TauDelta | Operator::TauDeltaTau, false) => two,
        (Operator::TauDelta | Operator::TauDeltaTau, true) => one_plus_z,
    }
}

/// `P(M) = c(M_vv) P(M - v)` for an isolated vertex `v` of a GF(2) matrix.
pub fn verify_isolated_vertex(m: &Matrix, v: usize, cfg: &SweepConfig) -> Result<bool> {
    if m.field() != Field::Gf2 {
        return Err(Error::Precondition("isolated-vertex factors are tabulated over GF(2)".into()));
    }
    if v >= m.n() || !m.is_isolated(v) {
        return Err(Error::Precondition(format!("vertex {v} is not isolated")));
    }
    let diag_one = !m.entry(v, v).is_zero();
    let rest = m.principal_submatrix(&m.subset(&[v])?.complement())?;
    let whole = all_polynomials(m, cfg)?;
    let reduced = all_polynomials(&rest, cfg)?;
    Ok(Operator::ALL
        .into_iter()
        .all(|op| *whole.get(op) == &isolated_vertex_factor(op, diag_one) * reduced.get(op)))
}

/// `P_δ(M) = P_δ(M * X)`.
pub fn verify_pivot_invariance(m: &Matrix, x: &Subset, cfg: &SweepConfig) -> Result<bool> {
    let pivoted = m.pivot(x)?;
    Ok(polynomial(Operator::Delta, m, cfg)? == polynomial(Operator::Delta, &pivoted, cfg)?)
}

/// `corank M[A] = corank (M * X)[A Δ X]` for every `A`.
pub fn verify_pivot_corank_identity(m: &Matrix, x: &Subset) -> Result<bool> {
    let pivoted = m.pivot(x)?;
    let n = m.n();
    if n > MAX_MASK_BITS {
        return Err(Error::SizeCapExceeded { n, cap: MAX_MASK_BITS });
    }
    let (e, f) = (RankEngine::new(m)?, RankEngine::new(&pivoted)?);
    let xm = x.mask().expect("checked size");
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    Ok((0..=full).all(|a| {
        let b = a ^ xm;
        a.count_ones() - e.rank(a, 0) == b.count_ones() - f.rank(b, 0)
    }))
}

/// `P_τδτ(M) = P_τ(M^-1)` and `P_δτ(M) = P_τδ(M^-1)` for non-singular `M`.
pub fn verify_inverse_duality(m: &Matrix, cfg: &SweepConfig) -> Result<bool> {
    let inv = m.inverse()?;
    let a = all_polynomials(m, cfg)?;
    let b = all_polynomials(&inv, cfg)?;
    Ok(a.get(Operator::TauDeltaTau) == b.get(Operator::Tau) && a.get(Operator::DeltaTau) == b.get(Operator::TauDelta))
}

/// JSON form of one computed polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub operator: String,
    pub field: String,
    pub n: usize,
    pub coefficients: Vec<u64>,
}

impl PolynomialRecord {
    pub fn new(op: Operator, field: Field, n: usize, p: &IntPolynomial) -> Self {
        PolynomialRecord {
            operator: op.name().to_string(),
            field: field.tag(),
            n,
            coefficients: p.coefficients().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("polynomial JSON: {e}")))
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.clone())
    }
}
