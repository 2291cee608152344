//! Coefficient fields: GF(2), GF(p) for a prime `p < 2^31`, and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ambient field of a matrix.
///
/// `GF(2)` is kept as its own variant because its matrices are bit-packed.
/// [`Field::gfp`] with `p = 2` returns [`Field::Gf2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Gf2,
    Gfp(u32),
    Rational,
}

/// An observable matrix entry.
///
/// Finite-field entries are canonical representatives in `[0, p)`.
/// Rationals are kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Residue(u32),
    Rational(BigRational),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn gfp(p: u64) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(if p == 2 { Field::Gf2 } else { Field::Gfp(p as u32) })
    }

    /// Modulus for finite fields, `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        match self {
            Field::Gf2 => Some(2),
            Field::Gfp(p) => Some(*p),
            Field::Rational => None,
        }
    }

    /// Short tag used in JSON output: `gf2`, `gfp<p>`, `q`.
    pub fn tag(&self) -> String {
        match self {
            Field::Gf2 => "gf2".to_string(),
            Field::Gfp(p) => format!("gfp{p}"),
            Field::Rational => "q".to_string(),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Image of an integer in this field.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::Residue(v.rem_euclid(p as i64) as u32),
            None => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Image of the fraction `num/den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self.modulus() {
            Some(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u32::try_from(r).expect("residue fits in u32")
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::Invalid(format!(
                        "denominator {den} is not invertible modulo {p}"
                    )));
                }
                let m = ModArith::new(p);
                Ok(Scalar::Residue(m.mul(&reduce(num), &m.inv(&d))))
            }
            None => {
                if den.is_zero() {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Parses an integer literal or `a/b` and maps it into the field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Invalid(format!("`{s}` is not an integer or fraction"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a).map_err(|_| bad())?,
                BigInt::from_str(b).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_fraction(&num, &den)
    }

    pub(crate) fn check_scalar(&self, s: &Scalar) -> Result<()> {
        match (self.modulus(), s) {
            (Some(p), Scalar::Residue(v)) if *v < p => Ok(()),
            (None, Scalar::Rational(_)) => Ok(()),
            _ => Err(Error::Invalid(format!("{s} is not an element of {self}"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Gf2 => write!(f, "GF(2)"),
            Field::Gfp(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue(v) => *v == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(v) => write!(f, "{v}"),
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Field arithmetic used by the dense elimination routines.
pub(crate) trait Arith {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ModArith {
    p: u32,
}

impl ModArith {
    pub(crate) fn new(p: u32) -> Self {
        ModArith { p }
    }
}

impl Arith for ModArith {
    type E = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "inverse of a non-unit");
        t0.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_guard() {
        assert!(Field::gfp(3).is_ok());
        assert_eq!(Field::gfp(2).unwrap(), Field::Gf2);
        assert_eq!(Field::gfp(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::gfp(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::gfp(2147483647).unwrap(), Field::Gfp(2147483647));
        assert!(Field::gfp(1 << 31).is_err());
    }

    #[test]
    fn modular_inverse_roundtrip() {
        for p in [3u32, 5, 7, 101, 2147483647] {
            let m = ModArith::new(p);
            for a in [1u32, 2, p - 1, p / 2 + 1] {
                assert_eq!(m.mul(&a, &m.inv(&a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn scalars_parse_into_field() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse_scalar("4/2").unwrap().to_string(), "2");
        let f5 = Field::Gfp(5);
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::Residue(4));
        // 1/2 = 3 mod 5
        assert_eq!(f5.parse_scalar("1/2").unwrap(), Scalar::Residue(3));
        assert!(f5.parse_scalar("1/5").is_err());
        assert!(q.parse_scalar("x").is_err());
        assert!(q.parse_scalar("1/0").is_err());
    }
}
