//! Bouquets (one-vertex ribbon graphs) as signed double-occurrence words.
//!
//! The cyclic word lists the loop ends met while walking once around the
//! vertex boundary; `twisted` holds the non-orientable loops. Boundary
//! components are counted by tracing darts, and the Euler genus of every
//! partial twuality is obtained from boundary counts of smaller bouquets:
//! the faces of `B^σ(F)` and of its dual each match those of a bouquet made
//! from `B` by deleting edges and twisting `F`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graft::{tokens, Graft};
use crate::poly::IntPolynomial;
use crate::rank::MAX_MASK_BITS;
use crate::twuality::{self, Operator, SweepConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bouquet {
    /// Edge labels, indexed by edge id.
    labels: Vec<String>,
    /// Edge id at each position around the vertex.
    word: Vec<usize>,
    twisted: Vec<bool>,
}

impl Bouquet {
    /// Builds a bouquet from a word of labels. Edge ids follow the order of
    /// first occurrence.
    pub fn new<S: AsRef<str>>(word: &[S], twisted: &[S]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut ids = Vec::with_capacity(word.len());
        for t in word {
            let t = t.as_ref();
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad edge label `{t}`")));
            }
            let id = match labels.iter().position(|l| l == t) {
                Some(i) => i,
                None => {
                    labels.push(t.to_string());
                    labels.len() - 1
                }
            };
            ids.push(id);
        }
        let mut tw = vec![false; labels.len()];
        for t in twisted {
            let t = t.as_ref();
            let i = labels
                .iter()
                .position(|l| l == t)
                .ok_or_else(|| Error::UnknownLabel(t.to_string()))?;
            tw[i] = true;
        }
        Bouquet::from_parts(labels, ids, tw)
    }

    /// Bouquet on edge ids `0..n-1` labelled `a, b, c, ...` (or `e<i>` past
    /// 26 edges); bit `i` of `twisted_mask` twists edge `i`.
    pub fn from_ids(word: &[usize], twisted_mask: u64) -> Result<Self> {
        let n = word.iter().map(|&e| e + 1).max().unwrap_or(0);
        let labels = (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("e{i}")
                }
            })
            .collect();
        let twisted = (0..n).map(|i| i < 64 && twisted_mask >> i & 1 == 1).collect();
        Bouquet::from_parts(labels, word.to_vec(), twisted)
    }

    fn from_parts(labels: Vec<String>, word: Vec<usize>, twisted: Vec<bool>) -> Result<Self> {
        let mut count = vec![0usize; labels.len()];
        for &e in &word {
            if e >= labels.len() {
                return Err(Error::Invalid(format!("edge id {e} without a label")));
            }
            count[e] += 1;
        }
        if let Some(e) = count.iter().position(|&c| c != 2) {
            return Err(Error::Invalid(format!(
                "edge `{}` occurs {} times, expected 2",
                labels[e], count[e]
            )));
        }
        Ok(Bouquet {
            labels,
            word,
            twisted,
        })
    }

    /// Number of edges (loops).
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn word(&self) -> Vec<&str> {
        self.word.iter().map(|&e| self.labels[e].as_str()).collect()
    }

    pub fn twisted(&self) -> Vec<&str> {
        (0..self.n())
            .filter(|&e| self.twisted[e])
            .map(|e| self.labels[e].as_str())
            .collect()
    }

    pub fn twisted_mask(&self) -> u64 {
        (0..self.n().min(64))
            .filter(|&e| self.twisted[e])
            .fold(0, |m, e| m | 1 << e)
    }

    fn ids_of<S: AsRef<str>>(&self, edges: &[S]) -> Result<Vec<usize>> {
        edges
            .iter()
            .map(|l| {
                let l = l.as_ref();
                self.labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    /// Mask of the named edges (at most 64 edges).
    pub fn edge_mask<S: AsRef<str>>(&self, edges: &[S]) -> Result<u64> {
        self.check_mask_size()?;
        Ok(self.ids_of(edges)?.into_iter().fold(0, |m, e| m | 1 << e))
    }

    fn check_mask_size(&self) -> Result<()> {
        if self.n() > MAX_MASK_BITS {
            return Err(Error::SizeCapExceeded {
                n: self.n(),
                cap: MAX_MASK_BITS,
            });
        }
        Ok(())
    }

    /// Removes both ends of every named edge; the remaining labels keep
    /// their relative order.
    pub fn delete_edges<S: AsRef<str>>(&self, edges: &[S]) -> Result<Bouquet> {
        let gone = self.ids_of(edges)?;
        let keep: Vec<usize> = (0..self.n()).filter(|e| !gone.contains(e)).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Bouquet::from_parts(
            keep.iter().map(|&e| self.labels[e].clone()).collect(),
            self.word.iter().filter_map(|e| remap.get(e).copied()).collect(),
            keep.iter().map(|&e| self.twisted[e]).collect(),
        )
    }

    /// Partial Petrial: toggles the twist of every named edge.
    pub fn partial_petrial<S: AsRef<str>>(&self, edges: &[S]) -> Result<Bouquet> {
        let ids = self.ids_of(edges)?;
        let mut out = self.clone();
        for e in ids {
            out.twisted[e] = !out.twisted[e];
        }
        Ok(out)
    }

    /// Rotates the cyclic word so that position `k` comes first.
    pub fn rotated(&self, k: usize) -> Bouquet {
        let mut out = self.clone();
        if !out.word.is_empty() {
            let k = k % out.word.len();
            out.word.rotate_left(k);
        }
        out
    }

    /// Same bouquet with edge `i` renamed to `names[i]`.
    pub fn relabeled(&self, names: &[String]) -> Result<Bouquet> {
        if names.len() != self.n() {
            return Err(Error::Invalid("one name per edge required".into()));
        }
        Bouquet::from_parts(names.to_vec(), self.word.clone(), self.twisted.clone())
    }

    /// Loops are adjacent iff their ends alternate around the vertex; the
    /// marked set is the set of twisted loops.
    pub fn intersection_graft(&self) -> Graft {
        let n = self.n();
        let mut first = vec![usize::MAX; n];
        let mut span = vec![(0, 0); n];
        for (p, &e) in self.word.iter().enumerate() {
            if first[e] == usize::MAX {
                first[e] = p;
            } else {
                span[e] = (first[e], p);
            }
        }
        let mut edges = Vec::new();
        for e in 0..n {
            for f in e + 1..n {
                let (a, b) = span[e];
                let inside = |p: usize| a < p && p < b;
                if inside(span[f].0) != inside(span[f].1) {
                    edges.push((e, f));
                }
            }
        }
        let marked: Vec<usize> = (0..n).filter(|&e| self.twisted[e]).collect();
        let names: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (names[a], names[b])).collect();
        let marks: Vec<&str> = marked.iter().map(|&e| names[e]).collect();
        Graft::new(&names, &pairs, &marks).expect("bouquet labels are valid vertex labels")
    }

    /// Boundary components of the ribbon graph.
    pub fn boundary_components(&self) -> Result<usize> {
        faces(&self.word, |e| self.twisted[e])
    }

    /// `2 + e - v - f` with one vertex.
    pub fn euler_genus(&self) -> Result<usize> {
        let f = self.boundary_components()?;
        (1 + self.n())
            .checked_sub(f)
            .ok_or_else(|| Error::internal(format!("negative Euler genus for {self}")))
    }

    /// Euler genus of `B^{op(F)}` for the edge mask `f`.
    pub fn twuality_euler_genus_mask(&self, op: Operator, f: u64) -> Result<usize> {
        self.check_mask_size()?;
        let n = self.n();
        let in_f = |e: usize| f >> e & 1 == 1;
        let tw = |e: usize| self.twisted[e];
        let tw_f = |e: usize| self.twisted[e] != in_f(e);
        let only = |keep_f: bool| -> Vec<usize> { self.word.iter().copied().filter(|&e| in_f(e) == keep_f).collect() };

        // B \ F keeps F^c; B \ F^c keeps F
        let minus_f = || faces(&only(false), tw);
        let minus_fc = || faces(&only(true), tw);
        let twisted_minus_fc = || faces(&only(true), tw_f);
        let whole = || faces(&self.word, tw);
        let twisted_whole = || faces(&self.word, tw_f);

        let (a, b) = match op {
            Operator::Tau => (twisted_whole()?, 1),
            Operator::Delta => (minus_f()?, minus_fc()?),
            Operator::DeltaTau => (minus_f()?, twisted_minus_fc()?),
            Operator::TauDelta => (twisted_whole()?, minus_fc()?),
            Operator::TauDeltaTau => (whole()?, twisted_minus_fc()?),
        };
        (2 + n)
            .checked_sub(a + b)
            .ok_or_else(|| Error::internal(format!("negative {op} genus at mask {f:#b} for {self}")))
    }

    pub fn twuality_euler_genus<S: AsRef<str>>(&self, op: Operator, edges: &[S]) -> Result<usize> {
        let m = self.edge_mask(edges)?;
        self.twuality_euler_genus_mask(op, m)
    }

    /// `Σ_F z^{ε(B^{op(F)})}` over all edge subsets.
    pub fn topological_polynomial(&self, op: Operator, cfg: &SweepConfig) -> Result<IntPolynomial> {
        let n = self.n();
        let cap = cfg.max_n.min(MAX_MASK_BITS);
        if n > cap {
            return Err(Error::SizeCapExceeded { n, cap });
        }
        let mut coeffs = vec![0u64; 2 * n + 1];
        for f in 0..1u64 << n {
            coeffs[self.twuality_euler_genus_mask(op, f)?] += 1;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Topological and matrix polynomials agree for all five operators.
    pub fn check_equivalence(&self, cfg: &SweepConfig) -> Result<bool> {
        let matrix_side = self.intersection_graft().all_polynomials(cfg)?;
        for op in Operator::ALL {
            if self.topological_polynomial(op, cfg)? != *matrix_side.get(op) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Per-subset form of the equivalence: for every `F` and operator the
    /// traced genus equals the matrix exponent of the intersection graft.
    /// Returns the first mismatch as `(operator, mask, genus, exponent)`.
    pub fn subset_genus_mismatch(&self, cfg: &SweepConfig) -> Result<Option<(Operator, u64, usize, usize)>> {
        let m = self.intersection_graft().adjacency_matrix();
        for op in Operator::ALL {
            let table = twuality::subset_exponents(op, &m, cfg)?;
            for (f, &e) in table.iter().enumerate() {
                let g = self.twuality_euler_genus_mask(op, f as u64)?;
                if g != e {
                    return Ok(Some((op, f as u64, g, e)));
                }
            }
        }
        Ok(None)
    }

    pub fn to_text(&self) -> String {
        format!("word: {}\ntwisted: {}\n", self.word().join(" "), self.twisted().join(" "))
    }

    /// Parses `word:` and `twisted:` lines; `twisted:` may be empty or absent.
    pub fn parse(text: &str) -> Result<Self> {
        let mut word: Option<(usize, Vec<(usize, String)>)> = None;
        let mut twisted: Vec<(usize, usize, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                return Err(Error::parse(ln, 1, "expected `key: values`"));
            };
            let offset = key.len() + 1;
            let toks = tokens(rest).map(|(c, t)| (offset + c, t.to_string()));
            match key.trim() {
                "word" => word = Some((ln, toks.collect())),
                "twisted" => twisted.extend(toks.map(|(c, t)| (ln, c, t))),
                k => return Err(Error::parse(ln, 1, format!("unknown key `{k}`"))),
            }
        }
        let (wln, word) = word.ok_or_else(|| Error::parse(1, 1, "missing `word:` line"))?;
        let labels: Vec<&str> = word.iter().map(|t| t.1.as_str()).collect();
        for (col, t) in &word {
            let c = labels.iter().filter(|l| **l == t.as_str()).count();
            if c != 2 {
                return Err(Error::parse(
                    wln,
                    *col,
                    format!("edge `{t}` occurs {c} times, expected 2"),
                ));
            }
        }
        for (ln, col, t) in &twisted {
            if !labels.contains(&t.as_str()) {
                return Err(Error::parse(*ln, *col, format!("unknown edge `{t}`")));
            }
        }
        let tw: Vec<&str> = twisted.iter().map(|t| t.2.as_str()).collect();
        Bouquet::new(&labels, &tw).map_err(|e| Error::parse(wln, 1, e.to_string()))
    }
}

impl fmt::Display for Bouquet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = self.twisted();
        write!(f, "[{}]", self.word().join(" "))?;
        if !tw.is_empty() {
            write!(f, " twisted {{{}}}", tw.join(","))?;
        }
        Ok(())
    }
}

/// Boundary components of the bouquet with the given word (edge ids, each
/// present exactly twice) and twist predicate.
///
/// Darts are `(position, up|down)`. From `(i, o)` cross the ribbon at `i` to
/// the other end `j`; a twisted ribbon flips `o`; then step to `j + 1` going
/// up or to `j - 1` going down. Every boundary component is traced once in
/// each direction, so the orbit count is twice the number of components.
fn faces(word: &[usize], twisted: impl Fn(usize) -> bool) -> Result<usize> {
    let m = word.len();
    if m == 0 {
        return Ok(1);
    }
    let mut first: HashMap<usize, usize> = HashMap::with_capacity(m / 2);
    let mut partner = vec![0usize; m];
    for (p, &e) in word.iter().enumerate() {
        if let Some(q) = first.insert(e, p) {
            partner[p] = q;
            partner[q] = p;
        }
    }
    let mut seen = vec![false; 2 * m];
    let mut orbits = 0;
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut cur = start;
        loop {
            seen[cur] = true;
            let (i, down) = (cur / 2, cur % 2 == 1);
            let j = partner[i];
            let down = down != twisted(word[i]);
            let next = if down { (j + m - 1) % m } else { (j + 1) % m };
            cur = 2 * next + down as usize;
            if cur == start {
                break;
            }
        }
    }
    if orbits % 2 == 1 {
        return Err(Error::internal(format!("odd dart orbit count {orbits}")));
    }
    Ok(orbits / 2)
}

/// Every double-occurrence word on edge ids `0..n-1`, without symmetry
/// reduction: `(2n)! / 2^n` words.
pub fn all_words(n: usize) -> Vec<Vec<usize>> {
    fn rec(word: &mut Vec<usize>, left: &mut [u8], out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(word.clone());
            return;
        }
        for e in 0..left.len() {
            if left[e] > 0 {
                left[e] -= 1;
                word.push(e);
                rec(word, left, out);
                word.pop();
                left[e] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(2 * n), &mut vec![2; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bq(word: &str, twisted: &str) -> Bouquet {
        let w: Vec<&str> = word.split_whitespace().collect();
        let t: Vec<&str> = twisted.split_whitespace().collect();
        Bouquet::new(&w, &t).unwrap()
    }

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    #[test]
    fn intersection_graft_examples() {
        let g = bq("a a", "").intersection_graft();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edges().count(), 0);
        assert!(g.marked().is_empty());

        let g = bq("a b a b", "").intersection_graft();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let g = bq("a b a c b c", "b").intersection_graft();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.marked(), vec![1]);
        assert_eq!(g.vertices(), &["a", "b", "c"]);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(bq("a a", "").boundary_components().unwrap(), 2);
        assert_eq!(bq("a a", "a").boundary_components().unwrap(), 1);
        assert_eq!(bq("a b a b", "").boundary_components().unwrap(), 1);
        assert_eq!(Bouquet::new::<&str>(&[], &[]).unwrap().boundary_components().unwrap(), 1);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(bq("a a", "").euler_genus().unwrap(), 0);
        assert_eq!(bq("a a", "a").euler_genus().unwrap(), 1);
        assert_eq!(bq("a b a b", "").euler_genus().unwrap(), 2);
        assert_eq!(Bouquet::new::<&str>(&[], &[]).unwrap().euler_genus().unwrap(), 0);
    }

    #[test]
    fn edit_examples() {
        let b = bq("a b a b", "");
        assert_eq!(b.delete_edges(&["a"]).unwrap(), bq("b b", ""));
        assert_eq!(b.delete_edges::<&str>(&[]).unwrap(), b);
        let l = bq("a a", "");
        assert_eq!(l.partial_petrial(&["a"]).unwrap(), bq("a a", "a"));
        assert_eq!(b.partial_petrial(&["a"]).unwrap().partial_petrial(&["a"]).unwrap(), b);
        assert_eq!(b.delete_edges(&["z"]), Err(Error::UnknownLabel("z".into())));
        assert!(b.partial_petrial(&["z"]).is_err());
    }

    #[test]
    fn twuality_genus_examples() {
        let l = bq("a a", "");
        assert_eq!(l.twuality_euler_genus(Operator::Delta, &["a"]).unwrap(), 0);
        assert_eq!(l.twuality_euler_genus(Operator::Tau, &["a"]).unwrap(), 1);
        assert_eq!(bq("a b a b", "").twuality_euler_genus::<&str>(Operator::TauDeltaTau, &[]).unwrap(), 2);
    }

    #[test]
    fn topological_polynomial_examples() {
        let l = bq("a a", "");
        assert_eq!(l.topological_polynomial(Operator::Tau, &cfg()).unwrap(), IntPolynomial::new(vec![1, 1]));
        assert_eq!(l.topological_polynomial(Operator::Delta, &cfg()).unwrap(), IntPolynomial::new(vec![2]));
        assert_eq!(
            bq("a b a b", "").topological_polynomial(Operator::TauDeltaTau, &cfg()).unwrap(),
            IntPolynomial::new(vec![0, 1, 3])
        );
    }

    #[test]
    fn equivalence_examples() {
        assert!(bq("a a", "a").check_equivalence(&cfg()).unwrap());
        assert!(bq("a b a c b c", "b").check_equivalence(&cfg()).unwrap());
        assert_eq!(bq("a b a c b c", "b").subset_genus_mismatch(&cfg()).unwrap(), None);
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(all_words(0), vec![Vec::<usize>::new()]);
        assert_eq!(all_words(1).len(), 1);
        assert_eq!(all_words(2).len(), 6);
        assert_eq!(all_words(3).len(), 90);
        assert_eq!(all_words(4).len(), 2520);
    }

    #[test]
    fn invalid_words() {
        assert!(Bouquet::new(&["a", "b", "a"], &[]).is_err());
        assert!(Bouquet::new(&["a", "a", "a", "a"], &[]).is_err());
        assert_eq!(Bouquet::new(&["a", "a"], &["b"]), Err(Error::UnknownLabel("b".into())));
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let b = bq("a b a c b c", "b");
        assert_eq!(b.to_text(), "word: a b a c b c\ntwisted: b\n");
        assert_eq!(Bouquet::parse(&b.to_text()).unwrap(), b);
        assert_eq!(Bouquet::parse("word: a a\ntwisted:\n").unwrap(), bq("a a", ""));
        assert_eq!(Bouquet::parse("word: a a\n").unwrap(), bq("a a", ""));
        assert_eq!(
            Bouquet::parse("word: a b a\n"),
            Err(Error::parse(1, 9, "edge `b` occurs 1 times, expected 2"))
        );
        assert_eq!(
            Bouquet::parse("word: a a\ntwisted: q\n"),
            Err(Error::parse(2, 10, "unknown edge `q`"))
        );
        assert!(matches!(Bouquet::parse("twisted: a\n"), Err(Error::Parse { .. })));
    }
}
