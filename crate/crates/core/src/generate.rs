//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bouquet::Bouquet;
use crate::field::{Field, Scalar};
use crate::graft::Graft;
use crate::matrix::{rational, Matrix, Subset};

pub const DEFAULT_SEED: u64 = 0x5EED;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over GF(2) and GF(p); small fractions `a/b`, `|a| <= 3`,
/// `1 <= b <= 3`, over Q, zero with probability about 1/3.
pub fn random_scalar(field: Field, rng: &mut SuiteRng) -> Scalar {
    match field {
        Field::Gf2 | Field::Gfp(_) => field.from_i64(rng.gen_range(0..field.modulus().unwrap() as i64)),
        Field::Rational => {
            if rng.gen_bool(1.0 / 3.0) {
                rational(0, 1)
            } else {
                rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
            }
        }
    }
}

pub fn random_matrix(field: Field, n: usize, rng: &mut SuiteRng) -> Matrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_scalar(field, rng)).collect())
        .collect();
    Matrix::new(field, rows).expect("square")
}

pub fn random_symmetric(field: Field, n: usize, zero_diagonal: bool, rng: &mut SuiteRng) -> Matrix {
    let mut rows = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            if i == j && zero_diagonal {
                continue;
            }
            let s = random_scalar(field, rng);
            rows[i][j] = s.clone();
            rows[j][i] = s;
        }
    }
    Matrix::new(field, rows).expect("square")
}

/// Rejection-samples a non-singular matrix.
pub fn random_nonsingular(field: Field, n: usize, rng: &mut SuiteRng) -> Matrix {
    loop {
        let m = random_matrix(field, n, rng);
        if m.is_nonsingular() {
            return m;
        }
    }
}

/// A random `X` with `M[X]` non-singular, or `None` after `tries` misses.
/// `X = {}` is never proposed.
pub fn random_pivot_set(m: &Matrix, tries: usize, rng: &mut SuiteRng) -> Option<Subset> {
    let n = m.n();
    if n == 0 {
        return None;
    }
    for _ in 0..tries {
        let mask = loop {
            let k: u64 = rng.gen_range(1..1u64 << n);
            if k != 0 {
                break k;
            }
        };
        let x = m.subset_from_mask(mask);
        if m.principal_submatrix(&x).ok()?.is_nonsingular() {
            return Some(x);
        }
    }
    None
}

/// GF(2) matrix that is block-diagonal with respect to a random partition
/// of its labels into two nonempty parts.
pub fn random_block_diagonal_gf2(n: usize, rng: &mut SuiteRng) -> (Matrix, Subset, Subset) {
    assert!(n >= 2, "need two blocks");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let k = rng.gen_range(1..n);
    let side: Vec<bool> = {
        let mut s = vec![false; n];
        for &i in &order[..k] {
            s[i] = true;
        }
        s
    };
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if side[i] == side[j] {
                        random_scalar(Field::Gf2, rng)
                    } else {
                        Field::Gf2.zero()
                    }
                })
                .collect()
        })
        .collect();
    let m = Matrix::new(Field::Gf2, rows).expect("square");
    let v1 = m.subset(&(0..n).filter(|&i| side[i]).collect::<Vec<_>>()).unwrap();
    let v2 = v1.complement();
    (m, v1, v2)
}

/// GF(2) matrix with vertex `v` isolated (its off-diagonal row and column
/// vanish).
pub fn random_with_isolated_vertex(n: usize, rng: &mut SuiteRng) -> (Matrix, usize) {
    assert!(n >= 1);
    let v = rng.gen_range(0..n);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if (i == v || j == v) && i != j {
                        Field::Gf2.zero()
                    } else {
                        random_scalar(Field::Gf2, rng)
                    }
                })
                .collect()
        })
        .collect();
    (Matrix::new(Field::Gf2, rows).expect("square"), v)
}

/// Erdős–Rényi graph with edge probability 1/2 and a uniformly random
/// marked set.
pub fn random_graft(n: usize, rng: &mut SuiteRng) -> Graft {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let marked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Graft::from_indices(n, &edges, &marked).expect("valid graft")
}

/// Random graft with a planted leaf `x` hanging off `y`; `x` is unmarked
/// when `unmarked_leaf` is set. Returns `(graft, x, y)` as labels.
pub fn random_graft_with_leaf(n: usize, unmarked_leaf: bool, rng: &mut SuiteRng) -> (Graft, String, String) {
    assert!(n >= 2);
    let base = random_graft(n - 1, rng);
    let y = rng.gen_range(0..n - 1);
    let x = n - 1;
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    edges.push((y, x));
    let mut marked = base.marked();
    if !unmarked_leaf && rng.gen_bool(0.5) {
        marked.push(x);
    }
    let g = Graft::from_indices(n, &edges, &marked).expect("valid graft");
    (g, x.to_string(), y.to_string())
}

pub fn random_bouquet(n: usize, rng: &mut SuiteRng) -> Bouquet {
    let mut word: Vec<usize> = (0..n).flat_map(|e| [e, e]).collect();
    word.shuffle(rng);
    let twist: u64 = if n == 0 { 0 } else { rng.gen_range(0..1u64 << n) };
    // relabel so ids follow first occurrence
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    let mut mask = 0u64;
    for e in word.iter_mut() {
        if ids[*e] == usize::MAX {
            ids[*e] = next;
            if twist >> *e & 1 == 1 {
                mask |= 1 << next;
            }
            next += 1;
        }
        *e = ids[*e];
    }
    Bouquet::from_ids(&word, mask).expect("double occurrence word")
}
