//! Coefficient fields used by the exact linear algebra.
//!
//! Everything rank-related in this workspace runs over one of three kinds of
//! field: the rationals, the Gaussian rationals `Q(i)`, or a small prime field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Minimal field interface needed by elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Prime field `Z/PZ` for a compile-time prime `P < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + other.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - other.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(P-2)
        let mut base = self.0 as u64;
        let mut exp = P as u64 - 2;
        let mut acc = 1u64;
        let m = P as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Fp(acc as u32)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

/// Runtime choice of coefficient field for homology and page computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "F3")]
    F3,
    #[serde(rename = "F5")]
    F5,
    #[serde(rename = "F7")]
    F7,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rational => "Q",
            FieldKind::F2 => "F2",
            FieldKind::F3 => "F3",
            FieldKind::F5 => "F5",
            FieldKind::F7 => "F7",
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::F2 => 2,
            FieldKind::F3 => 3,
            FieldKind::F5 => 5,
            FieldKind::F7 => 7,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "rational" | "rationals" => Ok(FieldKind::Rational),
            "f2" | "2" => Ok(FieldKind::F2),
            "f3" | "3" => Ok(FieldKind::F3),
            "f5" | "5" => Ok(FieldKind::F5),
            "f7" | "7" => Ok(FieldKind::F7),
            other => Err(format!("unsupported coefficient field `{other}` (expected q, f2, f3, f5 or f7)")),
        }
    }
}

/// Parse a rational from `"a/b"` or `"a"`. Denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Canonical `"num/den"` rendering (reduced, positive denominator).
pub fn format_rational(r: &BigRational) -> String {
    let den = r.denom();
    debug_assert!(den.is_positive());
    format!("{}/{}", r.numer(), den)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        for a in 1..7 {
            let x = F7::new(a);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert_eq!(F2::new(3), F2::one());
        assert_eq!(F3::new(-1).value(), 2);
    }

    #[test]
    fn rational_strings() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!("q".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert_eq!("F2".parse::<FieldKind>().unwrap(), FieldKind::F2);
        assert!("f4".parse::<FieldKind>().is_err());
    }
}
