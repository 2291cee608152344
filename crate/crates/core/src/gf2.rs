//! Word-parallel elimination over GF(2).

/// Rank of up to 64 rows, each packed into one word. Clobbers `rows`.
#[inline]
pub(crate) fn rank_words(rows: &mut [u64]) -> u32 {
    let mut rank = 0;
    for i in 0..rows.len() {
        let x = rows[i];
        if x == 0 {
            continue;
        }
        rank += 1;
        let low = x & x.wrapping_neg();
        for r in &mut rows[i + 1..] {
            if *r & low != 0 {
                *r ^= x;
            }
        }
    }
    rank
}

/// Rank of `rows.len() / words` rows stored with `words` words per row.
pub(crate) fn rank_multiword(words: usize, rows: &mut [u64]) -> usize {
    if words == 0 {
        return 0;
    }
    let nrows = rows.len() / words;
    let mut rank = 0;
    for i in 0..nrows {
        let (head, tail) = rows.split_at_mut((i + 1) * words);
        let row = &head[i * words..];
        let Some(w) = row.iter().position(|&x| x != 0) else {
            continue;
        };
        rank += 1;
        let low = row[w] & row[w].wrapping_neg();
        for other in tail.chunks_exact_mut(words) {
            if other[w] & low != 0 {
                for (o, r) in other.iter_mut().zip(row) {
                    *o ^= r;
                }
            }
        }
    }
    rank
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}
