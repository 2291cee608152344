//! Acceptance criteria, one printed PASS/FAIL line each. Runs without the
//! libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use twuality::graft::{kn_closed_form, kn_graft};
use twuality::twuality::all_polynomials;
use twuality::verify::{self, wheel_graft, PropertyResult, SuiteConfig};
use twuality::{IntPolynomial, Matrix, Operator};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_results(results: &[PropertyResult], pick: impl Fn(&PropertyResult) -> bool) -> Self {
        let picked: Vec<&PropertyResult> = results.iter().filter(|r| pick(r)).collect();
        let failed: Vec<String> = picked
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{r}"))
            .collect();
        let cases: usize = picked.iter().map(|r| r.cases).sum();
        Outcome {
            passed: !picked.is_empty() && failed.is_empty(),
            detail: if failed.is_empty() {
                format!("{cases} cases")
            } else {
                failed.join("; ")
            },
        }
    }
}

fn poly(terms: &[(u64, usize)]) -> IntPolynomial {
    IntPolynomial::from_terms(terms)
}

fn not_degree_audit(r: &PropertyResult) -> bool {
    !r.name.starts_with("degree laws")
}

fn w5_exactness() -> Outcome {
    let cfg = SuiteConfig::default().sweep;
    let m = wheel_graft().adjacency_matrix();
    let a = all_polynomials(&m, &cfg).unwrap();
    let p = all_polynomials(&m.pivot(&m.subset(&[1, 2]).unwrap()).unwrap(), &cfg).unwrap();
    let checks = [
        (a.get(Operator::TauDeltaTau), poly(&[(5, 4), (26, 5), (33, 6)])),
        (a.get(Operator::DeltaTau), poly(&[(15, 3), (5, 4), (33, 5), (11, 6)])),
        (p.get(Operator::Tau), poly(&[(4, 4), (25, 5), (35, 6)])),
        (p.get(Operator::TauDelta), poly(&[(1, 3), (31, 4), (20, 5), (12, 6)])),
    ];
    let bad: Vec<String> = checks
        .iter()
        .filter(|(got, want)| *got != want)
        .map(|(got, want)| format!("got {} want {}", got.to_text(), want.to_text()))
        .collect();
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "4 polynomials exact".into() } else { bad.join("; ") },
    }
}

/// Rank over GF(2) of a tiny 0/1 matrix by textbook elimination.
fn naive_gf2_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                for k in 0..cols {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Brute force for `(K_n, {})` straight from the exponent definitions,
/// sharing no code with the library.
fn naive_kn(op: Operator, n: usize) -> IntPolynomial {
    let entry = |i: usize, j: usize, a: u32, plus_ia: bool| -> u8 {
        if i != j {
            1
        } else {
            (plus_ia && a >> i & 1 == 1) as u8
        }
    };
    let rank_on = |sel: &[usize], a: u32, plus_ia: bool| {
        naive_gf2_rank(sel.iter().map(|&i| sel.iter().map(|&j| entry(i, j, a, plus_ia)).collect()).collect())
    };
    let all: Vec<usize> = (0..n).collect();
    let mut coeffs = vec![0u64; n + 2];
    for a in 0..1u32 << n {
        let inside: Vec<usize> = all.iter().copied().filter(|&i| a >> i & 1 == 1).collect();
        let outside: Vec<usize> = all.iter().copied().filter(|&i| a >> i & 1 == 0).collect();
        let corank_a = inside.len() - rank_on(&inside, a, false);
        let r = match op {
            Operator::TauDeltaTau => rank_on(&all, a, false) - (inside.len() - rank_on(&inside, a, true)),
            Operator::DeltaTau => rank_on(&inside, a, true) + rank_on(&outside, a, false),
            Operator::TauDelta => rank_on(&all, a, true) - corank_a,
            _ => unreachable!(),
        };
        coeffs[r] += 1;
    }
    IntPolynomial::new(coeffs)
}

fn kn_closed_forms() -> Outcome {
    let cfg = SuiteConfig::default().sweep;
    let ops = [Operator::TauDeltaTau, Operator::DeltaTau, Operator::TauDelta];
    // Hand-checked anchors: K_2 has rank 2, every 1x1 block is [0] or [1].
    let hand = [
        (Operator::TauDeltaTau, 2, poly(&[(1, 1), (3, 2)])),
        (Operator::DeltaTau, 2, poly(&[(3, 1), (1, 2)])),
        (Operator::TauDelta, 2, poly(&[(3, 1), (1, 2)])),
        (Operator::TauDeltaTau, 3, poly(&[(1, 0), (3, 1), (4, 2)])),
        (Operator::DeltaTau, 3, poly(&[(4, 1), (1, 2), (3, 3)])),
        (Operator::TauDelta, 3, poly(&[(1, 0), (7, 2)])),
    ];
    let mut bad = Vec::new();
    for (op, n, want) in &hand {
        let naive = naive_kn(*op, *n);
        if naive != *want {
            bad.push(format!("independent brute force {op} K_{n}: {} vs hand {}", naive.to_text(), want.to_text()));
        }
    }
    for op in ops {
        for n in 1..=10 {
            let brute = kn_graft(n).polynomial(op, &cfg).unwrap();
            let closed = kn_closed_form(op, n).unwrap();
            if n <= 6 && naive_kn(op, n) != brute {
                bad.push(format!("library brute force disagrees with naive oracle: {op} K_{n}"));
            }
            if brute != closed {
                bad.push(format!("{op} K_{n}: brute {} closed {}", brute.to_text(), closed.to_text()));
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "30 closed forms + 6 hand anchors".into() } else { bad.join("; ") },
    }
}

fn negative_control() -> Outcome {
    let cfg = SuiteConfig::default().sweep;
    let m = wheel_graft().adjacency_matrix();
    let x = m.subset(&[1, 2]).unwrap();
    let tdt = twuality::twuality::polynomial(Operator::TauDeltaTau, &m, &cfg).unwrap();
    let tau_pivot = twuality::twuality::polynomial(Operator::Tau, &m.pivot(&x).unwrap(), &cfg).unwrap();
    let proper = !x.is_empty() && x.len() < m.n();
    let admissible = m.principal_submatrix(&x).unwrap().is_nonsingular();
    // duality does hold for the full pivot, which is the inverse
    let inv: Matrix = m.pivot(&m.full_subset()).unwrap();
    let tau_inv = twuality::twuality::polynomial(Operator::Tau, &inv, &cfg).unwrap();
    Outcome {
        passed: proper && admissible && tdt != tau_pivot && tdt == tau_inv,
        detail: format!(
            "P_taudeltatau(M) = {} vs P_tau(M * {{1,2}}) = {}; P_tau(M * V) = {}",
            tdt.to_text(),
            tau_pivot.to_text(),
            tau_inv.to_text()
        ),
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut audits: Vec<PropertyResult> = Vec::new();
    let mut all_ok = true;
    let mut report = |id: &str, title: &str, limit: Duration, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = out.passed && in_time;
        all_ok &= ok;
        let line = format!(
            "criterion {id:>2} {}: {title} [{:.2}s / limit {}] {}{}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if limit == Duration::MAX { "none".to_string() } else { format!("{}s", limit.as_secs()) },
            out.detail,
            if in_time { "" } else { " (over time limit)" }
        );
        println!("{line}");
    };
    let secs = Duration::from_secs;
    let suite = |s: verify::Suite, audits: &mut Vec<PropertyResult>| -> Vec<PropertyResult> {
        let results = verify::run(s, &cfg).unwrap();
        audits.extend(results.iter().filter(|r| !not_degree_audit(r)).cloned());
        results
    };

    report("1", "W_5 exact polynomials", secs(1), &mut w5_exactness);
    report("2", "K_n closed forms, n = 1..10", secs(5), &mut kn_closed_forms);
    let mut equivalence = Vec::new();
    report("3", "bouquet/matrix equivalence", secs(120), &mut || {
        equivalence = suite(verify::Suite::Equivalence, &mut audits);
        Outcome::from_results(&equivalence, |r| not_degree_audit(r) && !r.name.starts_with("f(B)"))
    });
    report("4", "face count = corank + 1 (inside criterion 3 sweep)", secs(120), &mut || {
        Outcome::from_results(&equivalence, |r| r.name.starts_with("f(B)"))
    });
    report("5", "pivot invariance of P_delta", secs(30), &mut || {
        let r = suite(verify::Suite::Pivot, &mut audits);
        Outcome::from_results(&r, |r| r.name.starts_with("P_delta(M) = P_delta"))
    });
    report("6", "inverse duality over GF(2), GF(3), Q", secs(60), &mut || {
        Outcome::from_results(&suite(verify::Suite::Duality, &mut audits), not_degree_audit)
    });
    report("7", "interpolation laws", secs(60), &mut || {
        Outcome::from_results(&suite(verify::Suite::Interpolation, &mut audits), not_degree_audit)
    });
    report("9", "product and isolated-vertex factorization", secs(20), &mut || {
        let mut r = suite(verify::Suite::Product, &mut audits);
        r.extend(suite(verify::Suite::Isolated, &mut audits));
        Outcome::from_results(&r, not_degree_audit)
    });
    report("10", "leaf recursions", secs(20), &mut || {
        Outcome::from_results(&suite(verify::Suite::Leaf, &mut audits), not_degree_audit)
    });
    report("11", "interlace identities", secs(30), &mut || {
        Outcome::from_results(&suite(verify::Suite::Interlace, &mut audits), not_degree_audit)
    });
    report("12", "negative control on W_5 pivot", secs(1), &mut negative_control);
    report("8", "degree laws on every polynomial computed above", Duration::MAX, &mut || {
        let mut r = suite(verify::Suite::Degrees, &mut audits);
        r.extend(suite(verify::Suite::Kn, &mut audits));
        r.extend(audits.iter().cloned());
        Outcome::from_results(&r, |r| r.name.starts_with("degree laws") || r.name.starts_with("adjacent"))
    });

    if all_ok {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
