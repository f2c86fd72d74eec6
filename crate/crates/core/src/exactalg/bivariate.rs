use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::BigRational;
use super::text::{parse_terms, render_monomial, render_term, split_top_level};
use crate::error::{Error, Result};

/// Sparse polynomial in `s1`, `s2` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0)
    }

    /// `c * s1^a * s2^b`.
    pub fn monomial(c: BigRational, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BivariatePoly { terms }
    }

    pub fn s1() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn s2() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert(*k, v * c);
        }
        out
    }

    fn insert(&mut self, k: (u32, u32), v: BigRational) {
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exchange `s1` and `s2`.
    pub fn swap(&self) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn eval(&self, s1: &BigRational, s2: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(a, b), c)| {
            acc + c * num_traits::pow(s1.clone(), a as usize) * num_traits::pow(s2.clone(), b as usize)
        })
    }

    /// Specialise to `s1 = s`, `s2 = -s`; returns degree → coefficient.
    pub fn antidiagonal(&self) -> BTreeMap<i64, BigRational> {
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let c = if b % 2 == 1 { -c.clone() } else { c.clone() };
            *out.entry((a + b) as i64).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Largest monomial dividing every term.
    fn monomial_gcd(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    fn divide_monomial(&self, a: u32, b: u32) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&(x, y), c)| ((x - a, y - b), c.clone())).collect() }
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| render_term(&c.clone().into(), &render_monomial(&["s1", "s2"], &[a as i64, b as i64])))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn parse(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        for t in parse_terms(text, &["s1", "s2"])? {
            if !t.coeff.is_real() || t.exps.iter().any(|&e| e < 0) {
                return Err(Error::parse(0, format!("not a polynomial with rational coefficients: `{text}`")));
            }
            out.insert((t.exps[0] as u32, t.exps[1] as u32), t.coeff.re);
        }
        Ok(out)
    }
}

impl Add<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, o: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.insert(*k, v.clone());
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-BigRational::one())
    }
}

impl Sub<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, o: &BivariatePoly) -> BivariatePoly {
        self + &(-o)
    }
}

impl Mul<&BivariatePoly> for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, o: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                out.insert((a + x, b + y), c * d);
            }
        }
        out
    }
}

crate::forward_owned_binops!(BivariatePoly; Add add, Sub sub, Mul mul);

/// Ratio of two bivariate polynomials; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct BivariateRatFunc {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl BivariateRatFunc {
    pub fn new(num: BivariatePoly, den: BivariatePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (na, nb) = num.monomial_gcd();
        let (da, db) = den.monomial_gcd();
        let (a, b) = (na.min(da), nb.min(db));
        let (num, den) = (num.divide_monomial(a, b), den.divide_monomial(a, b));
        let lead = den.terms.values().next_back().cloned().expect("nonzero");
        let lead = if lead.is_negative() { -BigRational::one() } else { BigRational::one() };
        // Fold the denominator's content into the numerator when it is a monomial.
        if den.terms.len() == 1 {
            let (&k, c) = den.terms.iter().next().unwrap();
            return Ok(BivariateRatFunc {
                num: num.scale(&(BigRational::one() / c)),
                den: BivariatePoly::monomial(BigRational::one(), k.0, k.1),
            });
        }
        Ok(BivariateRatFunc { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        BivariateRatFunc { num: BivariatePoly::zero(), den: BivariatePoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(BivariatePoly::one())
    }

    pub fn from_poly(p: BivariatePoly) -> Self {
        BivariateRatFunc { num: p, den: BivariatePoly::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(BivariatePoly::monomial(c, 0, 0))
    }

    /// `c * s1^a * s2^b` with integer exponents.
    pub fn monomial(c: BigRational, a: i64, b: i64) -> Self {
        let num = BivariatePoly::monomial(c, a.max(0) as u32, b.max(0) as u32);
        let den = BivariatePoly::monomial(BigRational::one(), (-a).max(0) as u32, (-b).max(0) as u32);
        Self::new(num, den).expect("unit denominator")
    }

    pub fn numerator(&self) -> &BivariatePoly {
        &self.num
    }

    pub fn denominator(&self) -> &BivariatePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn swap(&self) -> Self {
        Self::new(self.num.swap(), self.den.swap()).expect("nonzero denominator")
    }

    pub fn eval(&self, s1: &BigRational, s2: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(s1, s2);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(s1, s2) / d)
    }

    /// Specialise to `s1 = s`, `s2 = -s`, giving a Laurent polynomial in `s`
    /// (degree → coefficient). The denominator must specialise to a monomial.
    pub fn antidiagonal(&self) -> Result<BTreeMap<i64, BigRational>> {
        let d = self.den.antidiagonal();
        if d.len() != 1 {
            return Err(Error::NotInvertible(format!(
                "denominator {} is not a monomial on the anti-diagonal",
                self.den.render()
            )));
        }
        let (&dk, dc) = d.iter().next().unwrap();
        Ok(self.num.antidiagonal().into_iter().map(|(k, c)| (k - dk, c / dc)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let parts = split_top_level(t, ")/(");
        match parts.as_slice() {
            [(_, n), (_, d)] if n.starts_with('(') && d.ends_with(')') => {
                Self::new(BivariatePoly::parse(&n[1..])?, BivariatePoly::parse(&d[..d.len() - 1])?)
            }
            [_] => Ok(Self::from_poly(BivariatePoly::parse(t.trim_start_matches('(').trim_end_matches(')'))?)),
            _ => Err(Error::parse(0, "malformed bivariate rational function")),
        }
    }
}

impl PartialEq for BivariateRatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for BivariateRatFunc {}

impl fmt::Display for BivariateRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BivariatePoly::one() {
            write!(f, "{}", self.num.render())
        } else {
            write!(f, "({})/({})", self.num.render(), self.den.render())
        }
    }
}

impl Serialize for BivariateRatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BivariateRatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BivariateRatFunc::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add<&BivariateRatFunc> for &BivariateRatFunc {
    type Output = BivariateRatFunc;
    fn add(self, o: &BivariateRatFunc) -> BivariateRatFunc {
        if self.den == o.den {
            return BivariateRatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        BivariateRatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("nonzero")
    }
}

impl Neg for &BivariateRatFunc {
    type Output = BivariateRatFunc;
    fn neg(self) -> BivariateRatFunc {
        BivariateRatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub<&BivariateRatFunc> for &BivariateRatFunc {
    type Output = BivariateRatFunc;
    fn sub(self, o: &BivariateRatFunc) -> BivariateRatFunc {
        self + &(-o)
    }
}

impl Mul<&BivariateRatFunc> for &BivariateRatFunc {
    type Output = BivariateRatFunc;
    fn mul(self, o: &BivariateRatFunc) -> BivariateRatFunc {
        BivariateRatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

crate::forward_owned_binops!(BivariateRatFunc; Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn pair_prefactor() -> BivariateRatFunc {
        BivariateRatFunc::new(
            &BivariatePoly::s1() + &BivariatePoly::s2(),
            BivariatePoly::monomial(rat(2, 1), 1, 1),
        )
        .unwrap()
    }

    #[test]
    fn cross_multiplied_equality() {
        let a = pair_prefactor();
        let b = &BivariateRatFunc::monomial(rat(1, 2), -1, 0) + &BivariateRatFunc::monomial(rat(1, 2), 0, -1);
        assert_eq!(a, b);
    }

    #[test]
    fn antidiagonal_kills_pair_prefactor() {
        assert!(pair_prefactor().antidiagonal().unwrap().is_empty());
        let m = BivariateRatFunc::monomial(rat(3, 1), 1, 2).antidiagonal().unwrap();
        assert_eq!(m.get(&3), Some(&rat(3, 1)));
        let bad = BivariateRatFunc::new(BivariatePoly::one(), &BivariatePoly::s1() + &BivariatePoly::s2()).unwrap();
        assert!(bad.antidiagonal().is_err());
    }

    #[test]
    fn render_round_trip() {
        let a = pair_prefactor();
        let text = a.to_string();
        assert_eq!(BivariateRatFunc::parse(&text).unwrap(), a, "{text}");
        let m = BivariateRatFunc::monomial(rat(-1, 4), -1, 0);
        assert_eq!(BivariateRatFunc::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn swap_exchanges_weights() {
        let m = BivariateRatFunc::monomial(rat(1, 1), -2, 1);
        assert_eq!(m.swap(), BivariateRatFunc::monomial(rat(1, 1), 1, -2));
    }
}
