use proptest::prelude::*;

use twuality::generate;
use twuality::graft::Graft;
use twuality::twuality::{self as tw, exponent, subset_exponents, PolynomialRecord};
use twuality::{Bouquet, Field, IntPolynomial, Matrix, Operator, Scalar, SweepConfig};

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Gf2), Just(Field::Gfp(3)), Just(Field::Gfp(7)), Just(Field::Rational)]
}

fn scalar(field: Field, num: i64, den: i64) -> Scalar {
    match field {
        Field::Rational => twuality::matrix::rational(num, den),
        _ => field.from_i64(num),
    }
}

fn matrix_strategy(max_n: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0..=max_n).prop_flat_map(|(field, n)| {
        prop::collection::vec((-2i64..=2, 1i64..=3), n * n).prop_map(move |cells| {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| scalar(field, cells[i * n + j].0, cells[i * n + j].1)).collect())
                .collect();
            Matrix::new(field, rows).unwrap()
        })
    })
}

fn symmetric_gf2(max_n: usize, zero_diagonal: bool) -> impl Strategy<Value = Matrix> {
    (0..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0i64..=1, n * n).prop_map(move |bits| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (i.cmp(&j), zero_diagonal) {
                            (std::cmp::Ordering::Equal, true) => 0,
                            (std::cmp::Ordering::Greater, _) => bits[j * n + i],
                            _ => bits[i * n + j],
                        })
                        .collect()
                })
                .collect();
            Matrix::from_i64(Field::Gf2, &rows).unwrap()
        })
    })
}

fn graft_strategy(max_n: usize) -> impl Strategy<Value = Graft> {
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| generate::random_graft(n, &mut generate::rng(seed)))
}

fn bouquet_strategy(max_n: usize) -> impl Strategy<Value = Bouquet> {
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| generate::random_bouquet(n, &mut generate::rng(seed)))
}

/// Determinant by permutation expansion, for tiny GF(2) matrices.
fn gf2_det(rows: &[Vec<u8>]) -> u8 {
    fn go(rows: &[Vec<u8>], r: usize, used: &mut Vec<bool>) -> u8 {
        if r == rows.len() {
            return 1;
        }
        let mut acc = 0;
        for c in 0..rows.len() {
            if !used[c] && rows[r][c] == 1 {
                used[c] = true;
                acc ^= go(rows, r + 1, used);
                used[c] = false;
            }
        }
        acc
    }
    go(rows, 0, &mut vec![false; rows.len()])
}

/// Rank as the largest non-vanishing minor.
fn gf2_rank_by_minors(m: &[Vec<u8>]) -> usize {
    let n = m.len();
    (1..=n)
        .rev()
        .find(|&k| {
            (0u32..1 << n).filter(|r| r.count_ones() as usize == k).any(|rs| {
                (0u32..1 << n).filter(|c| c.count_ones() as usize == k).any(|cs| {
                    let ri: Vec<usize> = (0..n).filter(|i| rs >> i & 1 == 1).collect();
                    let ci: Vec<usize> = (0..n).filter(|j| cs >> j & 1 == 1).collect();
                    let sub: Vec<Vec<u8>> = ri.iter().map(|&i| ci.iter().map(|&j| m[i][j]).collect()).collect();
                    gf2_det(&sub) == 1
                })
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pivot_is_an_involution(m in matrix_strategy(6), seed in any::<u64>()) {
        if let Some(x) = generate::random_pivot_set(&m, 20, &mut generate::rng(seed)) {
            let p = m.pivot(&x).unwrap();
            prop_assert_eq!(p.pivot(&x).unwrap(), m);
        }
    }

    #[test]
    fn pivot_on_everything_inverts(m in matrix_strategy(6)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.pivot(&m.full_subset()).unwrap(), inv.clone());
                prop_assert_eq!(m.mul(&inv).unwrap().rows(), Matrix::identity(m.field(), m.n()).rows());
            }
            Err(_) => prop_assert!(!m.is_nonsingular()),
        }
    }

    #[test]
    fn pivots_preserve_principal_coranks(m in matrix_strategy(6), seed in any::<u64>()) {
        if let Some(x) = generate::random_pivot_set(&m, 20, &mut generate::rng(seed)) {
            prop_assert!(tw::verify_pivot_corank_identity(&m, &x).unwrap());
        }
    }

    #[test]
    fn rank_matches_largest_nonvanishing_minor(bits in prop::collection::vec(0u8..=1, 16), n in 0usize..=4) {
        let rows: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| bits[i * 4 + j]).collect()).collect();
        let m = Matrix::from_i64(Field::Gf2, &rows.iter().map(|r| r.iter().map(|&b| b as i64).collect()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(m.rank(), gf2_rank_by_minors(&rows));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn alternating_gf2_matrices_have_even_rank(m in symmetric_gf2(9, true)) {
        prop_assert_eq!(m.rank() % 2, 0);
    }

    #[test]
    fn gf2_pivots_keep_symmetry(m in symmetric_gf2(8, false), seed in any::<u64>()) {
        if let Some(x) = generate::random_pivot_set(&m, 20, &mut generate::rng(seed)) {
            prop_assert!(m.pivot(&x).unwrap().is_symmetric());
        }
    }

    #[test]
    fn sweep_agrees_with_materialized_exponents(m in matrix_strategy(5)) {
        for op in Operator::ALL {
            let table = subset_exponents(op, &m, &cfg()).unwrap();
            for (mask, &e) in table.iter().enumerate() {
                prop_assert_eq!(exponent(op, &m, &m.subset_from_mask(mask as u64)).unwrap(), e);
            }
        }
    }

    #[test]
    fn degree_and_gap_laws(m in matrix_strategy(7)) {
        let n = m.n();
        let set = tw::all_polynomials(&m, &cfg()).unwrap();
        for (op, p) in set.iter() {
            prop_assert!(twuality::verify::degree_law_violation(op, n, p).is_none());
            let g = p.gap_report().unwrap();
            match op {
                Operator::Tau | Operator::TauDeltaTau => prop_assert!(g.is_interpolating),
                _ => prop_assert!(g.max_gap() < 2),
            }
        }
    }

    #[test]
    fn tau_ignores_the_marked_set(g in graft_strategy(8), seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let other = generate::random_graft(g.n(), &mut rng).marked();
        let h = g.with_marked(&other).unwrap();
        prop_assert_eq!(g.polynomial(Operator::Tau, &cfg()).unwrap(), h.polynomial(Operator::Tau, &cfg()).unwrap());
    }

    #[test]
    fn graft_expansion_matches_matrix_route(g in graft_strategy(6)) {
        for op in Operator::ALL {
            prop_assert_eq!(g.expanded_polynomial(op, &cfg()).unwrap(), g.polynomial(op, &cfg()).unwrap());
        }
    }

    #[test]
    fn graft_product_over_disjoint_union(a in graft_strategy(4), b in graft_strategy(4)) {
        let u = a.disjoint_union(&b);
        let lhs = u.all_polynomials(&cfg()).unwrap();
        let rhs = a.all_polynomials(&cfg()).unwrap().product(&b.all_polynomials(&cfg()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bouquet_polynomials_survive_rotation_and_relabeling(b in bouquet_strategy(6), k in 0usize..12) {
        let names: Vec<String> = (0..b.n()).map(|i| format!("loop{i}")).collect();
        let r = b.rotated(k).relabeled(&names).unwrap();
        for op in Operator::ALL {
            prop_assert_eq!(b.topological_polynomial(op, &cfg()).unwrap(), r.topological_polynomial(op, &cfg()).unwrap());
        }
        prop_assert!(r.check_equivalence(&cfg()).unwrap());
    }

    #[test]
    fn face_count_is_corank_plus_one(b in bouquet_strategy(10)) {
        let corank = b.intersection_graft().adjacency_matrix().corank();
        prop_assert_eq!(b.boundary_components().unwrap(), corank + 1);
    }

    #[test]
    fn text_forms_round_trip(m in matrix_strategy(5), g in graft_strategy(6), b in bouquet_strategy(5)) {
        prop_assert_eq!(Matrix::parse(&m.to_text(), None).unwrap(), m.clone());
        prop_assert_eq!(Graft::parse(&g.to_text()).unwrap(), g);
        prop_assert_eq!(Bouquet::parse(&b.to_text()).unwrap(), b);
        let p = tw::polynomial(Operator::DeltaTau, &m, &cfg()).unwrap();
        prop_assert_eq!(IntPolynomial::parse_text(&p.to_text()).unwrap(), p.clone());
        let rec = PolynomialRecord::new(Operator::DeltaTau, m.field(), m.n(), &p);
        prop_assert_eq!(PolynomialRecord::from_json(&rec.to_json()).unwrap().polynomial(), p);
    }
}

#[test]
fn parallel_sweeps_match_sequential_ones() {
    let mut rng = generate::rng(11);
    for (field, n) in [(Field::Gf2, 13), (Field::Gfp(3), 12), (Field::Rational, 12)] {
        let m = generate::random_matrix(field, n, &mut rng);
        let one = SweepConfig { threads: Some(1), ..cfg() };
        let four = SweepConfig { threads: Some(4), ..cfg() };
        assert_eq!(tw::all_polynomials(&m, &one).unwrap(), tw::all_polynomials(&m, &four).unwrap());
        assert_eq!(tw::interlace_polynomial(&m, &one).unwrap(), tw::interlace_polynomial(&m, &four).unwrap());
    }
}

#[test]
fn nonsingular_diagonal_always_exists() {
    let mut rng = generate::rng(3);
    for field in [Field::Gf2, Field::Gfp(3), Field::Rational] {
        for n in 0..7 {
            let m = generate::random_matrix(field, n, &mut rng);
            let a = tw::find_nonsingular_diagonal(&m).unwrap();
            assert!(m.add_diagonal_indicator(&a).unwrap().is_nonsingular());
        }
    }
}
