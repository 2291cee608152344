//! Masked rank queries used by the subset sweeps.
//!
//! Every exponent is built from ranks of `(M + I_D)[S]` for two masks `D`
//! and `S`. The engine answers exactly that query without materializing a
//! new [`Matrix`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::field::ModArith;
use crate::gf2;
use crate::matrix::{Data, Matrix};

/// Largest matrix a sweep can address with a single-word mask.
pub const MAX_MASK_BITS: usize = 63;

#[derive(Debug, Clone)]
pub(crate) enum RankEngine {
    Gf2 {
        rows: Vec<u64>,
    },
    Mod {
        n: usize,
        arith: ModArith,
        data: Vec<u32>,
    },
    /// Rows scaled to integers; `scale[i]` is the factor row `i` was
    /// multiplied by, so adding one on the diagonal adds `scale[i]`.
    Int {
        n: usize,
        data: Vec<BigInt>,
        scale: Vec<BigInt>,
        small: Option<(Vec<i64>, Vec<i64>)>,
    },
}

impl RankEngine {
    pub(crate) fn new(m: &Matrix) -> Result<Self> {
        let n = m.n();
        if n > MAX_MASK_BITS {
            return Err(Error::SizeCapExceeded {
                n,
                cap: MAX_MASK_BITS,
            });
        }
        Ok(match m.data() {
            Data::Bits { words, rows } => RankEngine::Gf2 {
                rows: (0..n).map(|i| rows[i * words]).collect(),
            },
            Data::Residues(v) => RankEngine::Mod {
                n,
                arith: ModArith::new(m.field().modulus().unwrap()),
                data: v.clone(),
            },
            Data::Rationals(v) => {
                let mut data = Vec::with_capacity(n * n);
                let mut scale = Vec::with_capacity(n);
                for i in 0..n {
                    let row = &v[i * n..(i + 1) * n];
                    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    data.extend(row.iter().map(|q| q.numer() * (&l / q.denom())));
                    scale.push(l);
                }
                let small = data
                    .iter()
                    .chain(&scale)
                    .all(|x| x.abs() < BigInt::from(1i64 << 40))
                    .then(|| {
                        (
                            data.iter().map(|x| x.to_i64().unwrap()).collect(),
                            scale.iter().map(|x| x.to_i64().unwrap()).collect(),
                        )
                    });
                RankEngine::Int {
                    n,
                    data,
                    scale,
                    small,
                }
            }
        })
    }

    /// `rank((M + I_diag)[sel])`.
    pub(crate) fn rank(&self, sel: u64, diag: u64) -> u32 {
        match self {
            RankEngine::Gf2 { rows } => {
                let mut buf = [0u64; 64];
                let mut k = 0;
                let mut s = sel;
                while s != 0 {
                    let i = s.trailing_zeros() as usize;
                    s &= s - 1;
                    buf[k] = (rows[i] ^ (diag & (1 << i))) & sel;
                    k += 1;
                }
                gf2::rank_words(&mut buf[..k])
            }
            RankEngine::Mod { n, arith, data } => {
                let idx = bits(sel);
                let k = idx.len();
                let mut buf = Vec::with_capacity(k * k);
                for &i in &idx {
                    for &j in &idx {
                        let mut v = data[i * n + j];
                        if i == j && diag >> i & 1 == 1 {
                            v = crate::field::Arith::add(arith, &v, &1);
                        }
                        buf.push(v);
                    }
                }
                dense::rank(arith, k, k, buf) as u32
            }
            RankEngine::Int {
                n,
                data,
                scale,
                small,
            } => {
                let idx = bits(sel);
                if let Some((d, s)) = small {
                    let buf = gather(&idx, *n, diag, |i| d[i] as i128, |i| s[i] as i128);
                    if let Some(r) = bareiss_rank_i128(idx.len(), buf) {
                        return r;
                    }
                }
                let buf = gather(&idx, *n, diag, |i| data[i].clone(), |i| scale[i].clone());
                bareiss_rank_big(idx.len(), buf)
            }
        }
    }
}

fn bits(mut s: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

fn gather<T: std::ops::AddAssign>(
    idx: &[usize],
    n: usize,
    diag: u64,
    entry: impl Fn(usize) -> T,
    scale: impl Fn(usize) -> T,
) -> Vec<T> {
    let mut buf = Vec::with_capacity(idx.len() * idx.len());
    for &i in idx {
        for &j in idx {
            let mut v = entry(i * n + j);
            if i == j && diag >> i & 1 == 1 {
                v += scale(i);
            }
            buf.push(v);
        }
    }
    buf
}

/// Fraction-free elimination with checked arithmetic; `None` on overflow.
fn bareiss_rank_i128(k: usize, mut a: Vec<i128>) -> Option<u32> {
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..k {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| a[i * k + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..k {
                a.swap(p * k + j, r * k + j);
            }
        }
        let piv = a[r * k + c];
        for i in r + 1..k {
            let f = a[i * k + c];
            for j in c + 1..k {
                let x = piv.checked_mul(a[i * k + j])?.checked_sub(f.checked_mul(a[r * k + j])?)?;
                a[i * k + j] = x / prev;
            }
            a[i * k + c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r as u32)
}

fn bareiss_rank_big(k: usize, mut a: Vec<BigInt>) -> u32 {
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..k {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| !a[i * k + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..k {
                a.swap(p * k + j, r * k + j);
            }
        }
        let piv = a[r * k + c].clone();
        for i in r + 1..k {
            let f = a[i * k + c].clone();
            for j in c + 1..k {
                let x = &piv * &a[i * k + j] - &f * &a[r * k + j];
                a[i * k + j] = x / &prev;
            }
            a[i * k + c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r as u32
}
