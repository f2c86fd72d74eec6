use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::poly::QPoly;
use super::rational::{factorial, BigRational};
use super::series::USeries;
use super::text::{parse_terms, render_monomial, render_term, split_top_level};
use crate::error::{Error, Result};

/// Rational function in `q = Q^{1/2}` over the Gaussian rationals.
///
/// Stored as `q^shift * num / den` with `num(0) != 0`, `den(0) == 1` and
/// `gcd(num, den) == 1`, which makes structural equality mathematical
/// equality. Zero is `0 / 1` with shift 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRatFunc {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl QRatFunc {
    pub fn new(num: QPoly, den: QPoly, shift: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = QPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let mut shift = shift;
        let nv = num.valuation().unwrap_or(0);
        num = num.shift_down(nv);
        shift += nv as i64;
        let dv = den.valuation().unwrap_or(0);
        den = den.shift_down(dv);
        shift -= dv as i64;
        let c = den.coeff(0).inv().expect("nonzero constant term");
        Ok(QRatFunc { shift, num: num.scale(&c), den: den.scale(&c) })
    }

    pub fn zero() -> Self {
        QRatFunc { shift: 0, num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRatFunc { shift: 0, num: QPoly::constant(c), den: QPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        QRatFunc { shift: k, num: QPoly::one(), den: QPoly::one() }
    }

    /// `Q^k = q^(2k)`.
    pub fn big_q_pow(k: i64) -> Self {
        Self::q_pow(2 * k)
    }

    /// `1 - Q^k` for `k >= 1`.
    pub fn one_minus_big_q(k: u32) -> Self {
        let p = &QPoly::one() - &QPoly::monomial(GaussianRational::one(), 2 * k as usize);
        Self::from_poly(p)
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::new(p, QPoly::one(), 0).expect("unit denominator")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    /// The value when this is a constant, if it is one.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        (self.shift == 0 && self.num.degree() == Some(0) && self.den.degree() == Some(0))
            .then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone(), -self.shift)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(QRatFunc {
            shift: base.shift * k as i64,
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRatFunc { shift: self.shift, num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value at `q = x`; errors at a pole.
    pub fn eval(&self, x: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(x);
        let dinv = d.inv().ok_or(Error::DivisionByZero)?;
        let xs = x.pow(self.shift).ok_or(Error::DivisionByZero)?;
        Ok(&(&xs * &self.num.eval(x)) * &dinv)
    }

    /// Value at `Q = 1`, which corresponds to `u = 0`.
    pub fn eval_at_q1(&self) -> Result<GaussianRational> {
        self.eval(&GaussianRational::one())
    }

    /// Value at `Q = x`; only defined when just even powers of `q` occur.
    pub fn eval_at_big_q(&self, x: &GaussianRational) -> Result<GaussianRational> {
        let even = |p: &QPoly| -> Result<QPoly> {
            let c = p.coeffs();
            if c.iter().skip(1).step_by(2).any(|v| !v.is_zero()) {
                return Err(Error::invalid("odd powers of Q^(1/2) present; evaluate in q instead"));
            }
            Ok(QPoly::new(c.iter().step_by(2).cloned().collect()))
        };
        if self.is_zero() {
            return Ok(GaussianRational::zero());
        }
        if self.shift % 2 != 0 {
            return Err(Error::invalid("odd powers of Q^(1/2) present; evaluate in q instead"));
        }
        let (n, d) = (even(&self.num)?, even(&self.den)?);
        let dinv = d.eval(x).inv().ok_or(Error::DivisionByZero)?;
        let xs = x.pow(self.shift / 2).ok_or(Error::DivisionByZero)?;
        Ok(&(&xs * &n.eval(x)) * &dinv)
    }

    /// Substitute `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let rev = |p: &QPoly| QPoly::new(p.coeffs().iter().rev().cloned().collect());
        Self::new(rev(&self.num), rev(&self.den), -self.shift - dn as i64 + dd as i64)
            .expect("nonzero denominator")
    }

    /// Parse the canonical rendering, e.g. `(1 + -1*q^2)/(1 + q^2)` or `3/2*q^-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let parts = split_top_level(t, ")/(");
        let (n_txt, d_txt) = match parts.as_slice() {
            [(_, n), (_, d)] if n.starts_with('(') && d.ends_with(')') => (&n[1..], &d[..d.len() - 1]),
            [_] => (t, "1"),
            _ => return Err(Error::parse(0, "malformed rational function")),
        };
        let laurent = |s: &str| -> Result<QRatFunc> {
            let mut acc = QRatFunc::zero();
            for term in parse_terms(s, &["q"])? {
                acc = &acc + &QRatFunc::q_pow(term.exps[0]).scale(&term.coeff);
            }
            Ok(acc)
        };
        let n = laurent(n_txt)?;
        let d = laurent(d_txt)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&n / &d)
    }

    fn render_laurent(p: &QPoly, shift: i64) -> String {
        let parts: Vec<String> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| render_term(c, &render_monomial(&["q"], &[shift + j as i64])))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// `exp(i k u / 2)` to the given order.
fn q_power_series(k: i64, order: i64) -> USeries {
    let x = GaussianRational::new(BigRational::from_integer(0.into()), BigRational::new(BigInt::from(k), BigInt::from(2)));
    let mut coeffs = Vec::new();
    let mut p = GaussianRational::one();
    for m in 0..order.max(0) {
        coeffs.push(p.scale(&BigRational::new(1.into(), factorial(m as u64))));
        p = &p * &x;
    }
    USeries::from_coeffs(0, coeffs, order)
}

fn laurent_to_u(p: &QPoly, shift: i64, order: i64) -> USeries {
    let mut acc = USeries::zero(order);
    for (j, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &q_power_series(shift + j as i64, order).scale(c);
        }
    }
    acc
}

/// Substitute `q = exp(i u / 2)` (so `Q = e^{iu}`) and expand to order `order`.
pub fn q_to_u(f: &QRatFunc, order: i64) -> Result<USeries> {
    if f.is_zero() {
        return Ok(USeries::zero(order));
    }
    let deg = f.den.degree().unwrap_or(0) as i64;
    let probe = laurent_to_u(&f.den, 0, deg + 1);
    let v = probe.valuation().ok_or_else(|| {
        Error::NotInvertible("denominator vanishes identically under q = exp(iu/2)".into())
    })?;
    let den = laurent_to_u(&f.den, 0, order + 2 * v);
    let num = laurent_to_u(&f.num, f.shift, order + v);
    Ok((&num * &den.inv()?).truncate(order))
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = Self::render_laurent(&self.num, self.shift);
        if self.den.degree() == Some(0) {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", Self::render_laurent(&self.den, 0))
        }
    }
}

impl Serialize for QRatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QRatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        QRatFunc::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn add(self, o: &QRatFunc) -> QRatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = (&self.num * &o.den).shift_up((self.shift - m) as usize);
        let b = (&o.num * &self.den).shift_up((o.shift - m) as usize);
        let den = if self.den == o.den { self.den.clone() } else { &self.den * &o.den };
        let num = if self.den == o.den {
            &self.num.shift_up((self.shift - m) as usize) + &o.num.shift_up((o.shift - m) as usize)
        } else {
            &a + &b
        };
        QRatFunc::new(num, den, m).expect("nonzero denominator")
    }
}

impl Neg for &QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        QRatFunc { shift: self.shift, num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        -&self
    }
}

impl Sub<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn sub(self, o: &QRatFunc) -> QRatFunc {
        self + &(-o)
    }
}

impl Mul<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn mul(self, o: &QRatFunc) -> QRatFunc {
        if self.is_zero() || o.is_zero() {
            return QRatFunc::zero();
        }
        QRatFunc::new(&self.num * &o.num, &self.den * &o.den, self.shift + o.shift)
            .expect("nonzero denominator")
    }
}

impl Div<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    /// Panics on division by zero; use [`QRatFunc::inv`] to check.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QRatFunc) -> QRatFunc {
        self * &o.inv().expect("division by zero rational function")
    }
}

crate::forward_owned_binops!(QRatFunc; Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn evaluation_in_big_q() {
        // Q/(1+Q) at Q = 2 is 2/3
        let f = &QRatFunc::big_q_pow(1) / &(&QRatFunc::one() + &QRatFunc::big_q_pow(1));
        assert_eq!(f.eval_at_big_q(&GaussianRational::from_int(2)).unwrap(), rat(2, 3).into());
        assert!(QRatFunc::q_pow(1).eval_at_big_q(&GaussianRational::one()).is_err());
    }

    fn g(n: i64, d: i64) -> GaussianRational {
        rat(n, d).into()
    }

    #[test]
    fn normal_form_cancels() {
        let a = QRatFunc::one_minus_big_q(2);
        let b = QRatFunc::one_minus_big_q(1);
        let r = &a / &b;
        assert_eq!(r, QRatFunc::from_poly(QPoly::from_ints(&[1, 0, 1])));
        assert_eq!(&r * &b, a);
    }

    #[test]
    fn big_q_expansion() {
        let s = q_to_u(&QRatFunc::q_pow(2), 4).unwrap();
        assert_eq!(s.coeff(0), g(1, 1));
        assert_eq!(s.coeff(1), GaussianRational::i());
        assert_eq!(s.coeff(2), g(-1, 2));
        let t = q_to_u(&QRatFunc::one_minus_big_q(1), 4).unwrap();
        assert_eq!(t.coeff(1), -GaussianRational::i());
        assert_eq!(t.coeff(2), g(1, 2));
    }

    #[test]
    fn half_power_difference_is_sine() {
        let f = &QRatFunc::q_pow(1) - &QRatFunc::q_pow(-1);
        let s = q_to_u(&f, 8).unwrap();
        let expect = crate::exactalg::sin_half(1, 8).scale(&GaussianRational::i());
        assert_eq!(s, expect);
    }

    #[test]
    fn pole_at_q_one_is_laurent() {
        let f = QRatFunc::one_minus_big_q(1).inv().unwrap();
        let s = q_to_u(&f, 6).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), GaussianRational::i());
        assert_eq!(s.order(), Some(6));
    }

    #[test]
    fn render_round_trip() {
        let f = &(&QRatFunc::q_pow(-1).scale(&g(3, 2)) + &QRatFunc::one()) / &QRatFunc::one_minus_big_q(1);
        let text = f.to_string();
        assert_eq!(QRatFunc::parse(&text).unwrap(), f, "{text}");
        assert_eq!(QRatFunc::parse("3/2*q^-1").unwrap(), QRatFunc::q_pow(-1).scale(&g(3, 2)));
    }

    #[test]
    fn value_at_one() {
        let f = &QRatFunc::one_minus_big_q(3) / &QRatFunc::one_minus_big_q(1);
        assert_eq!(f.eval_at_q1().unwrap(), g(3, 1));
        assert!(QRatFunc::one_minus_big_q(1).inv().unwrap().eval_at_q1().is_err());
    }

    #[test]
    fn variable_inversion() {
        let f = &QRatFunc::q_pow(3) / &QRatFunc::one_minus_big_q(1);
        let back = f.invert_variable().invert_variable();
        assert_eq!(back, f);
        let expect = &QRatFunc::q_pow(-3) / &(&QRatFunc::one() - &QRatFunc::big_q_pow(-1));
        assert_eq!(f.invert_variable(), expect);
    }
}
