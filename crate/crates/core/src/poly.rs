//! Polynomials in `z` with nonnegative integer coefficients and their
//! support analysis.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense coefficients, index = exponent, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![1])
    }

    /// `c * z^k`
    pub fn monomial(c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPolynomial::new(v)
    }

    /// Builds from `(coefficient, exponent)` pairs, summing repeats.
    pub fn from_terms(terms: &[(u64, usize)]) -> Self {
        let len = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut v = vec![0; len];
        for &(c, k) in terms {
            v[k] += c;
        }
        IntPolynomial::new(v)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn coefficient_sum(&self) -> u128 {
        self.coeffs.iter().map(|&c| c as u128).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&k| self.coeffs[k] != 0).collect()
    }

    /// `P_e` where `P(z) = P_e(z^2) + z P_o(z^2)`.
    pub fn even_part(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().step_by(2).copied().collect())
    }

    /// `P_o` where `P(z) = P_e(z^2) + z P_o(z^2)`.
    pub fn odd_part(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().skip(1).step_by(2).copied().collect())
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::one(), |acc, _| &acc * self)
    }

    pub fn gap_report(&self) -> Result<GapReport> {
        GapReport::of(self)
    }

    /// Text form: ascending terms `c`, `c*z`, `c*z^k` joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        terms.join(" + ")
    }

    /// Parses the text form produced by [`IntPolynomial::to_text`].
    pub fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(IntPolynomial::zero());
        }
        let bad = |t: &str| Error::Invalid(format!("`{t}` is not a polynomial term"));
        let mut terms = Vec::new();
        for t in s.split(" + ") {
            let (c, k) = match t.split_once("*z") {
                None => (t, 0),
                Some((c, "")) => (c, 1),
                Some((c, rest)) => {
                    let k = rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| bad(t))?;
                    (c, k)
                }
            };
            terms.push((c.parse().map_err(|_| bad(t))?, k));
        }
        Ok(IntPolynomial::from_terms(&terms))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

/// Support structure of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub support: Vec<usize>,
    pub min_deg: usize,
    pub deg: usize,
    /// Maximal runs of missing exponents inside `[min_deg, deg]`, as
    /// `(first missing exponent, run length)`.
    pub gaps: Vec<(usize, usize)>,
    pub is_interpolating: bool,
    pub is_even_polynomial: bool,
    pub is_odd_polynomial: bool,
    pub is_even_interpolating: bool,
    pub is_odd_interpolating: bool,
    /// Informational only.
    pub is_unimodal: bool,
    /// Informational only: `c_k^2 >= c_{k-1} c_{k+1}` on `[min_deg, deg]`.
    pub is_log_concave: bool,
}

fn gaps_of(support: &[usize]) -> Vec<(usize, usize)> {
    support
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| (w[0] + 1, w[1] - w[0] - 1))
        .collect()
}

fn is_interpolating(p: &IntPolynomial) -> bool {
    !p.is_zero() && gaps_of(&p.support()).is_empty()
}

impl GapReport {
    pub fn of(p: &IntPolynomial) -> Result<Self> {
        let support = p.support();
        let (Some(&min_deg), Some(&deg)) = (support.first(), support.last()) else {
            return Err(Error::ZeroPolynomial);
        };
        let gaps = gaps_of(&support);
        let c = &p.coeffs[min_deg..=deg];
        let peak = c.iter().enumerate().max_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
        let is_unimodal = c[..=peak].windows(2).all(|w| w[0] <= w[1]) && c[peak..].windows(2).all(|w| w[0] >= w[1]);
        let is_log_concave = c
            .windows(3)
            .all(|w| (w[1] as u128) * (w[1] as u128) >= (w[0] as u128) * (w[2] as u128));
        Ok(GapReport {
            is_interpolating: gaps.is_empty(),
            is_even_polynomial: support.iter().all(|k| k % 2 == 0),
            is_odd_polynomial: support.iter().all(|k| k % 2 == 1),
            is_even_interpolating: is_interpolating(&p.even_part()),
            is_odd_interpolating: is_interpolating(&p.odd_part()),
            support,
            min_deg,
            deg,
            gaps,
            is_unimodal,
            is_log_concave,
        })
    }

    /// Largest gap size, 0 when interpolating.
    pub fn max_gap(&self) -> usize {
        self.gaps.iter().map(|g| g.1).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(IntPolynomial::zero().to_text(), "0");
        assert_eq!(IntPolynomial::one().to_text(), "1");
        let p = IntPolynomial::new(vec![0, 0, 0, 0, 5, 26, 33]);
        assert_eq!(p.to_text(), "5*z^4 + 26*z^5 + 33*z^6");
        assert_eq!(IntPolynomial::new(vec![2, 1]).to_text(), "2 + 1*z");
        assert_eq!(IntPolynomial::parse_text(&p.to_text()).unwrap(), p);
        assert!(IntPolynomial::parse_text("3*y").is_err());
    }

    #[test]
    fn gap_examples() {
        let r = IntPolynomial::new(vec![0, 1, 3]).gap_report().unwrap();
        assert!(r.is_interpolating);
        assert!(r.gaps.is_empty());
        assert_eq!((r.min_deg, r.deg), (1, 2));

        let r = IntPolynomial::new(vec![1, 0, 0, 1]).gap_report().unwrap();
        assert_eq!(r.gaps, vec![(1, 2)]);
        assert!(!r.is_interpolating);
        assert_eq!(r.max_gap(), 2);

        let r = IntPolynomial::new(vec![2, 0, 4, 0, 2]).gap_report().unwrap();
        assert!(r.is_even_polynomial);
        assert!(!r.is_odd_polynomial);
        assert!(r.is_even_interpolating);
        assert!(!r.is_odd_interpolating);
        assert!(!r.is_interpolating);

        assert_eq!(IntPolynomial::zero().gap_report(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn even_interpolation_needs_contiguous_even_part() {
        // support {0, 4}: even part 1 + y^2 has a gap
        let r = IntPolynomial::new(vec![1, 0, 0, 0, 1]).gap_report().unwrap();
        assert!(r.is_even_polynomial);
        assert!(!r.is_even_interpolating);
        // support {1, 3, 5}: odd-interpolating
        let r = IntPolynomial::new(vec![0, 1, 0, 2, 0, 1]).gap_report().unwrap();
        assert!(r.is_odd_polynomial && r.is_odd_interpolating);
    }

    #[test]
    fn arithmetic() {
        let p = IntPolynomial::new(vec![0, 1, 3]);
        assert_eq!(&p * &p, IntPolynomial::new(vec![0, 0, 1, 6, 9]));
        assert_eq!(&p + &IntPolynomial::one(), IntPolynomial::new(vec![1, 1, 3]));
        assert_eq!(IntPolynomial::new(vec![1, 1]).pow(3), IntPolynomial::new(vec![1, 3, 3, 1]));
        assert_eq!(IntPolynomial::new(vec![1, 0, 0]).degree(), Some(0));
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn informational_shape_flags() {
        let r = IntPolynomial::new(vec![1, 4, 6, 4, 1]).gap_report().unwrap();
        assert!(r.is_unimodal && r.is_log_concave);
        let r = IntPolynomial::new(vec![3, 1, 3]).gap_report().unwrap();
        assert!(!r.is_unimodal && !r.is_log_concave);
    }
}
