use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_rational, parse_rational, BigRational};
use super::text::split_top_level;
use crate::error::{Error, Result};

/// Exact `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        BigRational::one().into()
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into()).into()
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

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(acc)
    }

    /// Rendering that is safe as a summand: two-part values get parentheses.
    pub(crate) fn render_in_sum(&self) -> String {
        if !self.re.is_zero() && !self.im.is_zero() {
            format!("({self})")
        } else {
            self.to_string()
        }
    }

    /// Inverse of [`Display`]: `3/2`, `-i`, `2*i`, `3/2 - 1/2*i`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let plus = split_top_level(t, " + ");
        let (re_part, im_part, im_sign) = if plus.len() == 2 {
            (Some(plus[0].1), Some(plus[1].1), 1)
        } else {
            let minus = split_top_level(t, " - ");
            if minus.len() == 2 {
                (Some(minus[0].1), Some(minus[1].1), -1)
            } else if t.ends_with('i') {
                (None, Some(t), 1)
            } else {
                (Some(t), None, 1)
            }
        };
        let re = match re_part {
            Some(r) => parse_rational(r)?,
            None => BigRational::zero(),
        };
        let im = match im_part {
            Some(p) => {
                let p = p.trim();
                let body = p
                    .strip_suffix("*i")
                    .or_else(|| p.strip_suffix('i'))
                    .ok_or_else(|| Error::parse(0, format!("malformed imaginary part `{p}`")))?;
                let v = match body {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    b => parse_rational(b)?,
                };
                if im_sign < 0 {
                    -v
                } else {
                    v
                }
            }
            None => BigRational::zero(),
        };
        Ok(GaussianRational::new(re, im))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_str = |v: &BigRational| {
            if v.is_one() {
                "i".to_string()
            } else if (-v.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(v))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_str(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}", fmt_rational(&self.re), im_str(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}", fmt_rational(&self.re), im_str(&self.im))
                }
            }
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GaussianRational::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return (&self.re * &o.re).into();
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::inv`] to check.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

crate::forward_owned_binops!(GaussianRational; Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
    }

    #[test]
    fn conjugation_is_involution() {
        let z = GaussianRational::new(rat(3, 2), rat(-5, 7));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
    }

    #[test]
    fn text_round_trip() {
        for z in [
            GaussianRational::new(rat(3, 2), rat(1, 2)),
            GaussianRational::new(rat(3, 2), rat(-1, 2)),
            GaussianRational::new(rat(0, 1), rat(-1, 1)),
            GaussianRational::new(rat(0, 1), rat(7, 3)),
            GaussianRational::new(rat(-4, 1), rat(0, 1)),
            GaussianRational::zero(),
        ] {
            assert_eq!(GaussianRational::parse(&z.to_string()).unwrap(), z, "{z}");
        }
    }
}
