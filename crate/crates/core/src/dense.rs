//! Dense row-major elimination over an [`Arith`] field.

use crate::field::Arith;

/// Rank of a `rows x cols` row-major matrix. Consumes the buffer.
pub(crate) fn rank<A: Arith>(ar: &A, rows: usize, cols: usize, mut m: Vec<A::E>) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                m.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = ar.inv(&m[r * cols + c]);
        for i in r + 1..rows {
            if ar.is_zero(&m[i * cols + c]) {
                continue;
            }
            let f = ar.mul(&m[i * cols + c], &inv);
            for k in c..cols {
                let t = ar.mul(&f, &m[r * cols + k]);
                m[i * cols + k] = ar.sub(&m[i * cols + k], &t);
            }
        }
        r += 1;
    }
    r
}

/// Gauss-Jordan inverse of an `n x n` matrix, `None` when singular.
pub(crate) fn inverse<A: Arith>(ar: &A, n: usize, mut m: Vec<A::E>) -> Option<Vec<A::E>> {
    let mut inv = vec![ar.zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = ar.one();
    }
    for c in 0..n {
        let p = (c..n).find(|&i| !ar.is_zero(&m[i * n + c]))?;
        if p != c {
            for k in 0..n {
                m.swap(p * n + k, c * n + k);
                inv.swap(p * n + k, c * n + k);
            }
        }
        let s = ar.inv(&m[c * n + c]);
        for k in 0..n {
            m[c * n + k] = ar.mul(&m[c * n + k], &s);
            inv[c * n + k] = ar.mul(&inv[c * n + k], &s);
        }
        for i in 0..n {
            if i == c || ar.is_zero(&m[i * n + c]) {
                continue;
            }
            let f = m[i * n + c].clone();
            for k in 0..n {
                let t = ar.mul(&f, &m[c * n + k]);
                m[i * n + k] = ar.sub(&m[i * n + k], &t);
                let t = ar.mul(&f, &inv[c * n + k]);
                inv[i * n + k] = ar.sub(&inv[i * n + k], &t);
            }
        }
    }
    Some(inv)
}

/// Principal pivot transform on the positions flagged in `in_x`.
///
/// With `P = M[X]`, `Q = M[X, Y]`, `R = M[Y, X]`, `S = M[Y]` the result has
/// blocks `P^-1`, `-P^-1 Q`, `R P^-1`, `S - R P^-1 Q` placed back at the
/// original positions. `None` when `P` is singular.
pub(crate) fn pivot<A: Arith>(ar: &A, n: usize, m: &[A::E], in_x: &[bool]) -> Option<Vec<A::E>> {
    let xs: Vec<usize> = (0..n).filter(|&i| in_x[i]).collect();
    let ys: Vec<usize> = (0..n).filter(|&i| !in_x[i]).collect();
    let (k, l) = (xs.len(), ys.len());
    let at = |i: usize, j: usize| &m[i * n + j];

    let p: Vec<A::E> = xs
        .iter()
        .flat_map(|&i| xs.iter().map(move |&j| at(i, j).clone()))
        .collect();
    let pinv = inverse(ar, k, p)?;

    // P^-1 Q  (k x l)
    let mut pinv_q = vec![ar.zero(); k * l];
    for a in 0..k {
        for b in 0..l {
            let mut acc = ar.zero();
            for c in 0..k {
                acc = ar.add(&acc, &ar.mul(&pinv[a * k + c], at(xs[c], ys[b])));
            }
            pinv_q[a * l + b] = acc;
        }
    }
    // R P^-1  (l x k)
    let mut r_pinv = vec![ar.zero(); l * k];
    for a in 0..l {
        for b in 0..k {
            let mut acc = ar.zero();
            for c in 0..k {
                acc = ar.add(&acc, &ar.mul(at(ys[a], xs[c]), &pinv[c * k + b]));
            }
            r_pinv[a * k + b] = acc;
        }
    }

    let mut out = vec![ar.zero(); n * n];
    for a in 0..k {
        for b in 0..k {
            out[xs[a] * n + xs[b]] = pinv[a * k + b].clone();
        }
        for b in 0..l {
            out[xs[a] * n + ys[b]] = ar.neg(&pinv_q[a * l + b]);
        }
    }
    for a in 0..l {
        for b in 0..k {
            out[ys[a] * n + xs[b]] = r_pinv[a * k + b].clone();
        }
        for b in 0..l {
            let mut acc = at(ys[a], ys[b]).clone();
            for c in 0..k {
                acc = ar.sub(&acc, &ar.mul(&r_pinv[a * k + c], at(xs[c], ys[b])));
            }
            out[ys[a] * n + ys[b]] = acc;
        }
    }
    Some(out)
}
