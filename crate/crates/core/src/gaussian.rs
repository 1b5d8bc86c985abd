//! Gaussian rationals `Q(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::field::{format_rational, parse_rational, Fp};

/// `re + i·im` with exact rational parts. `BigRational` keeps both parts
/// reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: Zero::zero() }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_ints(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact conversion of a finite double-precision complex number.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(GaussianRational { re: BigRational::from_f64(z.re)?, im: BigRational::from_f64(z.im)? })
    }

    /// Parse from the pair of `"a/b"` strings used by the JSON formats.
    pub fn parse(re: &str, im: &str) -> Option<Self> {
        Some(GaussianRational { re: parse_rational(re)?, im: parse_rational(im)? })
    }

    pub fn re_string(&self) -> String {
        format_rational(&self.re)
    }

    pub fn im_string(&self) -> String {
        format_rational(&self.im)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

/// Wire form `{"re": "a/b", "im": "c/d"}`.
impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &self.re_string())?;
        st.serialize_field("im", &self.im_string())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Wire {
            re: String,
            im: String,
        }
        let w = Wire::deserialize(d)?;
        GaussianRational::parse(&w.re, &w.im)
            .ok_or_else(|| serde::de::Error::custom(format!("bad Gaussian rational `{}` + i`{}`", w.re, w.im)))
    }
}

impl crate::field::Field for GaussianRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
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
        let n = self.norm_sqr();
        assert!(!Zero::is_zero(&n), "inverse of zero");
        GaussianRational { re: &self.re / &n, im: -&self.im / &n }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.re) && Zero::is_zero(&self.im)
    }
}

/// Prime `P = 1 (mod 4)` below `2^31`: `Z[i]` maps onto `F_P`.
pub const REDUCTION_PRIME: u32 = 2_147_483_629;
/// Image of `i` in `F_P`, a square root of `-1`.
const REDUCTION_I: i64 = 1_518_275_076;

pub type ReductionField = Fp<REDUCTION_PRIME>;

fn reduce_rational(x: &BigRational) -> Option<ReductionField> {
    use crate::field::Field;
    let p = BigInt::from(REDUCTION_PRIME);
    let residue = |v: &BigInt| (v % &p).to_i64().expect("below P");
    let den = ReductionField::new(residue(x.denom()));
    if Field::is_zero(&den) {
        return None;
    }
    Some(ReductionField::new(residue(x.numer())).mul(&den.inv()))
}

impl GaussianRational {
    /// Image under the ring map to `F_P` sending `i` to a square root of
    /// `-1`; `None` when a denominator vanishes mod `P`.
    pub fn reduce_mod(&self) -> Option<ReductionField> {
        use crate::field::Field;
        let re = reduce_rational(&self.re)?;
        let im = reduce_rational(&self.im)?;
        Some(re.add(&im.mul(&ReductionField::new(REDUCTION_I))))
    }
}
