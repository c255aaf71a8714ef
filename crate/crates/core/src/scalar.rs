//! Exact scalars in the field of Gaussian rationals `a + b i` with `a, b` rational.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian rational. Both components are kept in lowest terms with a
/// positive denominator, so derived equality is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

/// Short alias used throughout the crate.
pub type Q = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn complex(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugation, the scalar star.
    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `a^2 + b^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Text form of one rational component: `p/q`, or `p` when `q = 1`.
    pub fn rational_text(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational literal {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = Self::rational_text(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im_abs = Self::rational_text(&self.im.abs());
        let unit = if self.im.abs().is_one() { "i".to_string() } else { format!("{im_abs}i") };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{unit}")
            } else {
                write!(f, "{unit}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{re}{sign}{unit}")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational { re: &a.re * &b.re, im: BigRational::zero() };
    }
    GaussianRational {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
// Panics on a zero divisor; use `checked_div` where the divisor is data.
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    /// Accepts a real rational `p/q`. Complex values use the JSON object form.
    fn from_str(s: &str) -> Result<Self> {
        Ok(GaussianRational { re: Self::parse_rational(s)?, im: BigRational::zero() })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.im.is_zero() {
            return s.serialize_str(&Self::rational_text(&self.re));
        }
        let mut st = s.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &Self::rational_text(&self.re))?;
        st.serialize_field("im", &Self::rational_text(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Parts {
                re: String,
                #[serde(default)]
                im: Option<String>,
            },
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(de::Error::custom),
            Repr::Parts { re, im } => {
                let re = Self::parse_rational(&re).map_err(de::Error::custom)?;
                let im = match im {
                    Some(t) => Self::parse_rational(&t).map_err(de::Error::custom)?,
                    None => BigRational::zero(),
                };
                Ok(GaussianRational { re, im })
            }
        }
    }
}

/// Gaussian integers, the coefficient ring of the fraction-free eliminator.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact (Bareiss / Sylvester identity).
    pub fn exact_div(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let n = &d.re * &d.re + &d.im * &d.im;
        let num = GaussInt { re: d.re.clone(), im: -d.im.clone() };
        let p = self.mul(&num);
        debug_assert!((&p.re % &n).is_zero() && (&p.im % &n).is_zero());
        GaussInt { re: p.re / &n, im: p.im / n }
    }

    /// `q * scale` must be a Gaussian integer.
    pub fn from_scaled(q: &Q, scale: &BigInt) -> GaussInt {
        let re = q.re() * BigRational::from_integer(scale.clone());
        let im = q.im() * BigRational::from_integer(scale.clone());
        debug_assert!(re.is_integer() && im.is_integer());
        GaussInt { re: re.to_integer(), im: im.to_integer() }
    }

    pub fn to_q(&self) -> Q {
        Q::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let half_1_plus_i = Q::new(BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 2.into()));
        assert_eq!(&half_1_plus_i * &Q::complex(1, -1), Q::one());
        assert_eq!(Q::from_frac(1, 3) + Q::from_frac(2, 3), Q::one());
        assert_eq!(Q::i().checked_div(&Q::i()).unwrap(), Q::one());
        assert_eq!(Q::i().conj(), -Q::i());
        assert_eq!(Q::from_frac(3, 5).conj(), Q::from_frac(3, 5));
        assert_eq!(Q::complex(2, 7).conj().conj(), Q::complex(2, 7));
        assert!(matches!(Q::one().checked_div(&Q::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_round_trip() {
        let q = Q::new(BigRational::new((-3).into(), 4.into()), BigRational::new(5.into(), 1.into()));
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"re":"-3/4","im":"5"}"#);
        let back: Q = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert_eq!(serde_json::to_string(&Q::from_frac(-3, 4)).unwrap(), r#""-3/4""#);
        let plain: Q = serde_json::from_str(r#""6/4""#).unwrap();
        assert_eq!(plain, Q::from_frac(3, 2));
        assert_eq!(q.to_string(), "-3/4+5i");
    }
}
