//! Property suites: exhaustive small cases plus seeded random samples.
//!
//! Every suite returns one [`PropertyResult`] per property. A failing
//! property carries a textual dump of its first counterexample. Suites also
//! audit the degree laws on every polynomial they compute.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::bouquet::{all_words, Bouquet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::generate;
use crate::graft::{kn_closed_form, kn_graft, leaf_reduce_check_delta, leaf_reduce_check_tau, Graft};
use crate::matrix::Matrix;
use crate::poly::IntPolynomial;
use crate::twuality::{self, all_polynomials, Operator, PolynomialSet, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Degrees,
    Interpolation,
    Product,
    Isolated,
    Leaf,
    Pivot,
    Duality,
    Equivalence,
    Interlace,
    Kn,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Degrees,
        Suite::Interpolation,
        Suite::Product,
        Suite::Isolated,
        Suite::Leaf,
        Suite::Pivot,
        Suite::Duality,
        Suite::Equivalence,
        Suite::Interlace,
        Suite::Kn,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Degrees => "degrees",
            Suite::Interpolation => "interpolation",
            Suite::Product => "product",
            Suite::Isolated => "isolated",
            Suite::Leaf => "leaf",
            Suite::Pivot => "pivot",
            Suite::Duality => "duality",
            Suite::Equivalence => "equivalence",
            Suite::Interlace => "interlace",
            Suite::Kn => "kn",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub sweep: SweepConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: generate::DEFAULT_SEED,
            sweep: SweepConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases)", self.name, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample:\n")?;
            for line in c.lines() {
                writeln!(f, "    {line}")?;
            }
        }
        Ok(())
    }
}

/// Accumulates cases for one property and keeps the first failure.
struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(dump());
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            counterexample: self.failure,
        }
    }
}

/// First violated degree law for `P_op` of a matrix on `n` indices:
/// nonzero, coefficient sum `2^n`, `deg P_τ = n`, other degrees `<= n`.
pub fn degree_law_violation(op: Operator, n: usize, p: &IntPolynomial) -> Option<String> {
    let deg = match p.degree() {
        None => return Some(format!("{op} polynomial is zero")),
        Some(d) => d,
    };
    if p.coefficient_sum() != 1u128 << n {
        return Some(format!("{op}: coefficient sum {} != 2^{n}", p.coefficient_sum()));
    }
    if op == Operator::Tau && deg != n {
        return Some(format!("tau: degree {deg} != {n}"));
    }
    if deg > n {
        return Some(format!("{op}: degree {deg} > {n}"));
    }
    None
}

/// Degree-law audit fed with every polynomial a suite computes.
struct DegreeAudit(Tally);

impl DegreeAudit {
    fn new() -> Self {
        DegreeAudit(Tally::new("degree laws on every computed polynomial"))
    }

    fn one(&mut self, op: Operator, n: usize, p: &IntPolynomial, context: impl Fn() -> String) {
        let v = degree_law_violation(op, n, p);
        self.0.record(v.is_none(), || format!("{}\n{}", v.unwrap_or_default(), context()));
    }

    fn set(&mut self, n: usize, set: &PolynomialSet, context: impl Fn() -> String) {
        for (op, p) in set.iter() {
            self.one(op, n, p, &context);
        }
    }
}

fn dump_matrix(m: &Matrix) -> String {
    m.to_text()
}

fn dump_polys(set: &PolynomialSet) -> String {
    set.iter().map(|(op, p)| format!("{op}: {}\n", p.to_text())).collect()
}

const FIELDS: [Field; 3] = [Field::Gf2, Field::Gfp(3), Field::Rational];

/// Every GF(2) matrix of order `n` (`2^(n*n)` of them).
fn all_gf2_matrices(n: usize) -> impl Iterator<Item = Matrix> {
    (0u64..1 << (n * n)).map(move |bits| {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (bits >> (i * n + j) & 1) as i64).collect())
            .collect();
        Matrix::from_i64(Field::Gf2, &rows).expect("square")
    })
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(s, cfg)?);
            }
            Ok(out)
        }
        Suite::Degrees => degrees(cfg),
        Suite::Interpolation => interpolation(cfg),
        Suite::Product => product(cfg),
        Suite::Isolated => isolated(cfg),
        Suite::Leaf => leaf(cfg),
        Suite::Pivot => pivot(cfg),
        Suite::Duality => duality(cfg),
        Suite::Equivalence => equivalence(cfg),
        Suite::Interlace => interlace(cfg),
        Suite::Kn => kn(cfg),
    }
}

/// Degree laws and per-step exponent bounds: all GF(2) matrices with
/// `n <= 3`, then 100 random matrices per field with `n <= 8`.
pub fn degrees(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut steps = Tally::new("adjacent-subset exponent steps (tau, taudeltatau <= 1; others <= 2)");
    let check = |m: &Matrix, audit: &mut DegreeAudit, steps: &mut Tally| -> Result<()> {
        let n = m.n();
        audit.set(n, &all_polynomials(m, &cfg.sweep)?, || dump_matrix(m));
        for op in Operator::ALL {
            let r = twuality::subset_exponents(op, m, &cfg.sweep)?;
            let bound = if matches!(op, Operator::Tau | Operator::TauDeltaTau) { 1 } else { 2 };
            let bad = (0..r.len()).find_map(|a| {
                (0..n)
                    .filter(|v| a >> v & 1 == 0)
                    .map(|v| (v, a | 1 << v))
                    .find(|&(_, b)| r[a].abs_diff(r[b]) > bound)
                    .map(|(v, b)| (a, v, r[a], r[b]))
            });
            steps.record(bad.is_none(), || {
                let (a, v, ra, rb) = bad.unwrap();
                format!("{op}: A = mask {a:#b}, v = {v}, r(A) = {ra}, r(A+v) = {rb}\n{}", dump_matrix(m))
            });
        }
        Ok(())
    };
    for n in 0..=3 {
        for m in all_gf2_matrices(n) {
            check(&m, &mut audit, &mut steps)?;
        }
    }
    let mut rng = generate::rng(cfg.seed);
    for field in FIELDS {
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let m = generate::random_matrix(field, n, &mut rng);
            check(&m, &mut audit, &mut steps)?;
        }
    }
    Ok(vec![audit.0.finish(), steps.finish()])
}

/// Gap structure of the five polynomials.
///
/// Samples: all 512 GF(2) matrices of order 3, 500 random matrices per
/// field with `n <= 9`, and 500 random symmetric zero-diagonal matrices per
/// field so the even-interpolation property is exercised.
pub fn interpolation(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut interp = Tally::new("tau and taudeltatau are interpolating");
    let mut small_gaps = Tally::new("delta, deltatau, taudelta have no gap of size >= 2");
    let mut parity = Tally::new("even (odd) delta, deltatau, taudelta are even- (odd-) interpolating");
    let mut alternating = Tally::new("GF(2) symmetric zero-diagonal => delta even-interpolating");
    let mut char_free = Tally::new("symmetric zero-diagonal => delta even-interpolating (GF(3), Q)");

    let mut check = |m: &Matrix| -> Result<()> {
        let set = all_polynomials(m, &cfg.sweep)?;
        audit.set(m.n(), &set, || dump_matrix(m));
        let dump = || format!("{}{}", dump_matrix(m), dump_polys(&set));
        for op in [Operator::Tau, Operator::TauDeltaTau] {
            interp.record(set.get(op).gap_report()?.is_interpolating, dump);
        }
        for op in [Operator::Delta, Operator::DeltaTau, Operator::TauDelta] {
            let g = set.get(op).gap_report()?;
            small_gaps.record(g.max_gap() < 2, dump);
            if g.is_even_polynomial {
                parity.record(g.is_even_interpolating, dump);
            }
            if g.is_odd_polynomial {
                parity.record(g.is_odd_interpolating, dump);
            }
        }
        if m.is_symmetric() && m.has_zero_diagonal() {
            let ok = set.get(Operator::Delta).gap_report()?.is_even_interpolating;
            if m.field() == Field::Gf2 {
                alternating.record(ok, dump);
            } else {
                char_free.record(ok, dump);
            }
        }
        Ok(())
    };
    for m in all_gf2_matrices(3) {
        check(&m)?;
    }
    let mut rng = generate::rng(cfg.seed);
    for field in FIELDS {
        for _ in 0..500 {
            let n = rng.gen_range(1..=9);
            check(&generate::random_matrix(field, n, &mut rng))?;
        }
        for _ in 0..500 {
            let n = rng.gen_range(1..=9);
            check(&generate::random_symmetric(field, n, true, &mut rng))?;
        }
    }
    Ok(vec![
        interp.finish(),
        small_gaps.finish(),
        parity.finish(),
        alternating.finish(),
        char_free.finish(),
        audit.0.finish(),
    ])
}

/// Product formula on 100 random GF(2) block-diagonal matrices.
pub fn product(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut t = Tally::new("block-diagonal product formula, all five operators");
    let mut rng = generate::rng(cfg.seed);
    for _ in 0..100 {
        let n = rng.gen_range(2..=10);
        let (m, v1, v2) = generate::random_block_diagonal_gf2(n, &mut rng);
        let whole = all_polynomials(&m, &cfg.sweep)?;
        let a = all_polynomials(&m.principal_submatrix(&v1)?, &cfg.sweep)?;
        let b = all_polynomials(&m.principal_submatrix(&v2)?, &cfg.sweep)?;
        audit.set(n, &whole, || dump_matrix(&m));
        audit.set(v1.len(), &a, || dump_matrix(&m));
        audit.set(v2.len(), &b, || dump_matrix(&m));
        t.record(whole == a.product(&b), || {
            format!("V1 = {v1}, V2 = {v2}\n{}{}", dump_matrix(&m), dump_polys(&whole))
        });
    }
    Ok(vec![t.finish(), audit.0.finish()])
}

/// Isolated-vertex factors on 100 random GF(2) matrices with a planted
/// isolated vertex.
pub fn isolated(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut t = Tally::new("isolated-vertex factorization with the c(M_vv) table");
    let mut rng = generate::rng(cfg.seed);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let (m, v) = generate::random_with_isolated_vertex(n, &mut rng);
        let whole = all_polynomials(&m, &cfg.sweep)?;
        let rest = all_polynomials(&m.principal_submatrix(&m.subset(&[v])?.complement())?, &cfg.sweep)?;
        audit.set(n, &whole, || dump_matrix(&m));
        audit.set(n - 1, &rest, || dump_matrix(&m));
        let diag_one = !m.entry(v, v).is_zero();
        let ok = Operator::ALL
            .into_iter()
            .all(|op| *whole.get(op) == &twuality::isolated_vertex_factor(op, diag_one) * rest.get(op));
        t.record(ok, || format!("v = {v}\n{}{}", dump_matrix(&m), dump_polys(&whole)));
    }
    Ok(vec![t.finish(), audit.0.finish()])
}

/// Leaf recursions on 100 random grafts with a planted unmarked leaf.
pub fn leaf(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut delta = Tally::new("delta leaf recursion (x unmarked)");
    let mut tau = Tally::new("tau leaf recursion");
    let mut audit = DegreeAudit::new();
    let mut rng = generate::rng(cfg.seed);
    for _ in 0..100 {
        let n = rng.gen_range(2..=10);
        let (g, x, y) = generate::random_graft_with_leaf(n, true, &mut rng);
        let dump = || format!("x = {x}, y = {y}\n{}", g.to_text());
        delta.record(leaf_reduce_check_delta(&g, &x, &y, &cfg.sweep)?, dump);
        tau.record(leaf_reduce_check_tau(&g, &x, &y, &cfg.sweep)?, dump);
        for op in [Operator::Delta, Operator::Tau] {
            audit.one(op, n, &g.polynomial(op, &cfg.sweep)?, dump);
        }
    }
    Ok(vec![delta.finish(), tau.finish(), audit.0.finish()])
}

/// The W_5 wheel graft: hub 0, rim cycle 1-2-3-4-5, nothing marked.
pub fn wheel_graft() -> Graft {
    let mut edges: Vec<(usize, usize)> = (1..=5).map(|i| (0, i)).collect();
    edges.extend((1..=5).map(|i| (i, i % 5 + 1)));
    Graft::from_indices(6, &edges, &[]).expect("valid wheel")
}

/// Pivot invariance of `P_δ` on 500 random symmetric GF(2) matrices, the
/// pivot corank identity on the same pivots, and the W_5 negative control.
pub fn pivot(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut inv = Tally::new("P_delta(M) = P_delta(M * X)");
    let mut corank = Tally::new("corank M[A] = corank (M * X)[A xor X]");
    let mut symmetric = Tally::new("GF(2) pivots preserve symmetry");
    let mut skipped = 0usize;
    let mut audit = DegreeAudit::new();
    let mut rng = generate::rng(cfg.seed);
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let m = generate::random_symmetric(Field::Gf2, n, false, &mut rng);
        let Some(x) = generate::random_pivot_set(&m, 50, &mut rng) else {
            skipped += 1;
            continue;
        };
        let p = m.pivot(&x)?;
        let (a, b) = (
            twuality::polynomial(Operator::Delta, &m, &cfg.sweep)?,
            twuality::polynomial(Operator::Delta, &p, &cfg.sweep)?,
        );
        audit.one(Operator::Delta, n, &a, || dump_matrix(&m));
        audit.one(Operator::Delta, n, &b, || dump_matrix(&p));
        let dump = || format!("X = {x}\n{}", dump_matrix(&m));
        inv.record(a == b, dump);
        corank.record(twuality::verify_pivot_corank_identity(&m, &x)?, dump);
        symmetric.record(p.is_symmetric(), dump);
    }
    let mut results = vec![inv.finish(), corank.finish(), symmetric.finish()];
    if skipped > 0 {
        results[0].name.push_str(&format!(" ({skipped} samples skipped: no admissible X)"));
    }
    results.push(negative_control(cfg, &mut audit)?);
    results.push(audit.0.finish());
    Ok(results)
}

/// W_5 pivoted on {1, 2}: `P_τδτ(M) != P_τ(M * X)` and `P_δτ(M) != P_τδ(M * X)`
/// although `X` is admissible. Inverse duality does not extend to proper
/// pivots.
fn negative_control(cfg: &SuiteConfig, audit: &mut DegreeAudit) -> Result<PropertyResult> {
    let mut t = Tally::new("negative control: W_5 pivot on {1,2} separates taudeltatau/tau and deltatau/taudelta");
    let m = wheel_graft().adjacency_matrix();
    let x = m.subset(&[1, 2])?;
    let p = m.pivot(&x)?;
    let a = all_polynomials(&m, &cfg.sweep)?;
    let b = all_polynomials(&p, &cfg.sweep)?;
    audit.set(6, &a, || dump_matrix(&m));
    audit.set(6, &b, || dump_matrix(&p));
    let ok = a.get(Operator::TauDeltaTau) != b.get(Operator::Tau) && a.get(Operator::DeltaTau) != b.get(Operator::TauDelta);
    t.record(ok, || format!("M:\n{}{}M * X:\n{}", dump_polys(&a), dump_matrix(&p), dump_polys(&b)));
    Ok(t.finish())
}

/// Inverse duality on 300 random non-singular matrices per field, `n <= 8`.
pub fn duality(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut results = Vec::new();
    let mut rng = generate::rng(cfg.seed);
    for field in FIELDS {
        let mut t = Tally::new(format!("P_taudeltatau(M) = P_tau(M^-1), P_deltatau(M) = P_taudelta(M^-1) over {field}"));
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let m = generate::random_nonsingular(field, n, &mut rng);
            let inv = m.inverse()?;
            let a = all_polynomials(&m, &cfg.sweep)?;
            let b = all_polynomials(&inv, &cfg.sweep)?;
            audit.set(n, &a, || dump_matrix(&m));
            audit.set(n, &b, || dump_matrix(&inv));
            let ok = a.get(Operator::TauDeltaTau) == b.get(Operator::Tau) && a.get(Operator::DeltaTau) == b.get(Operator::TauDelta);
            t.record(ok, || format!("{}{}M^-1:\n{}", dump_matrix(&m), dump_polys(&a), dump_polys(&b)));
        }
        results.push(t.finish());
    }
    results.push(audit.0.finish());
    Ok(results)
}

/// Topological versus matrix polynomials, and face count versus corank.
///
/// Exhaustive over every double-occurrence word with at most 4 edges and
/// every twist pattern, then 200 random bouquets with at most 8 edges.
pub fn equivalence(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut equiv = Tally::new("topological polynomial = matrix polynomial, all five operators");
    let mut per_subset = Tally::new("traced Euler genus = matrix exponent for every F (exhaustive part)");
    let mut faces = Tally::new("f(B) = corank of the intersection matrix + 1");
    let mut audit = DegreeAudit::new();
    let mut check = |b: &Bouquet, exhaustive: bool| -> Result<()> {
        let dump = || b.to_text();
        let n = b.n();
        let matrix_side = b.intersection_graft().all_polynomials(&cfg.sweep)?;
        audit.set(n, &matrix_side, dump);
        let mut same = true;
        for op in Operator::ALL {
            let topo = b.topological_polynomial(op, &cfg.sweep)?;
            audit.one(op, n, &topo, dump);
            same &= topo == *matrix_side.get(op);
        }
        equiv.record(same, dump);
        if exhaustive {
            let mismatch = b.subset_genus_mismatch(&cfg.sweep)?;
            per_subset.record(mismatch.is_none(), || {
                let (op, f, g, e) = mismatch.unwrap();
                format!("{op}, F = mask {f:#b}: genus {g}, exponent {e}\n{}", b.to_text())
            });
        }
        let corank = b.intersection_graft().adjacency_matrix().corank();
        let f = b.boundary_components()?;
        faces.record(f == corank + 1, || format!("f = {f}, corank = {corank}\n{}", b.to_text()));
        Ok(())
    };
    for n in 0..=4 {
        for word in all_words(n) {
            for twist in 0..1u64 << n {
                check(&Bouquet::from_ids(&word, twist)?, true)?;
            }
        }
    }
    let mut rng = generate::rng(cfg.seed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        check(&generate::random_bouquet(n, &mut rng), false)?;
    }
    Ok(vec![equiv.finish(), per_subset.finish(), faces.finish(), audit.0.finish()])
}

/// The τδτ/interlace identity on 200 random matrices (fields in rotation)
/// and its graft form on 100 random grafts.
pub fn interlace(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut matrices = Tally::new("P_taudeltatau(M) = z^rank(M) q(M + I, 1 + 1/z)");
    let mut grafts = Tally::new("P_taudeltatau(G, L) = z^rank q((G, V - L), 1 + 1/z)");
    let mut audit = DegreeAudit::new();
    let mut rng = generate::rng(cfg.seed);
    for k in 0..200 {
        let n = rng.gen_range(0..=9);
        let m = generate::random_matrix(FIELDS[k % 3], n, &mut rng);
        audit.one(Operator::TauDeltaTau, n, &twuality::polynomial(Operator::TauDeltaTau, &m, &cfg.sweep)?, || dump_matrix(&m));
        matrices.record(twuality::check_tdt_interlace_identity(&m, &cfg.sweep)?, || dump_matrix(&m));
    }
    for _ in 0..100 {
        let n = rng.gen_range(0..=9);
        let g = generate::random_graft(n, &mut rng);
        let p = g.polynomial(Operator::TauDeltaTau, &cfg.sweep)?;
        audit.one(Operator::TauDeltaTau, n, &p, || g.to_text());
        let unmarked: Vec<usize> = (0..n).filter(|&v| !g.is_marked(v)).collect();
        let flipped = g.with_marked(&unmarked)?;
        let q = twuality::interlace_polynomial(&flipped.adjacency_matrix(), &cfg.sweep)?;
        let r = g.adjacency_matrix().rank();
        let ok = q.counts().iter().enumerate().all(|(c, &count)| {
            count == 0 || (c <= r && p.coefficient(r - c) == count)
        }) && q.total() == p.coefficient_sum();
        grafts.record(ok, || g.to_text());
    }
    Ok(vec![matrices.finish(), grafts.finish(), audit.0.finish()])
}

/// `K_n` closed forms against brute force for `n = 1..=10`.
pub fn kn(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let mut audit = DegreeAudit::new();
    let mut results = Vec::new();
    for op in [Operator::TauDeltaTau, Operator::DeltaTau, Operator::TauDelta] {
        let mut t = Tally::new(format!("K_n closed form for {op}, n = 1..10"));
        for n in 1..=10 {
            let brute = kn_graft(n).polynomial(op, &cfg.sweep)?;
            audit.one(op, n, &brute, || format!("K_{n}"));
            let closed = kn_closed_form(op, n)?;
            t.record(brute == closed, || {
                format!("n = {n}\nbrute force: {}\nclosed form: {}", brute.to_text(), closed.to_text())
            });
        }
        results.push(t.finish());
    }
    results.push(audit.0.finish());
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn degree_laws_flag_bad_polynomials() {
        assert!(degree_law_violation(Operator::Tau, 1, &IntPolynomial::new(vec![1, 1])).is_none());
        assert!(degree_law_violation(Operator::Tau, 1, &IntPolynomial::new(vec![2])).is_some());
        assert!(degree_law_violation(Operator::Delta, 1, &IntPolynomial::new(vec![1])).is_some());
        assert!(degree_law_violation(Operator::Delta, 0, &IntPolynomial::zero()).is_some());
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::new("x");
        t.record(true, || "a".into());
        t.record(false, || "b".into());
        t.record(false, || "c".into());
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!(r.cases, 3);
        assert_eq!(r.counterexample.as_deref(), Some("b"));
    }

    #[test]
    fn wheel_has_ten_edges() {
        assert_eq!(wheel_graft().edges().count(), 10);
    }
}
