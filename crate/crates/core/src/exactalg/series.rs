use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::{factorial, BigRational};
use super::text::{parse_terms, render_term, split_top_level};
use crate::error::{Error, Result};

/// Default truncation order for series computations.
pub const DEFAULT_ORDER: i64 = 16;

/// Marker order for a series known exactly (a Laurent polynomial).
const EXACT: i64 = i64::MAX;

fn add_ord(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

/// Truncated Laurent series in `u` with Gaussian-rational coefficients.
///
/// `coeffs[j]` is the coefficient of `u^(val + j)`; every coefficient in
/// `[val + len, order)` is zero, and nothing is known at or above `order`.
/// For the zero series `coeffs` is empty and `val == order`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct USeries {
    val: i64,
    order: i64,
    coeffs: Vec<GaussianRational>,
}

impl USeries {
    /// Build from the coefficients of `u^start, u^(start+1), ...`, known modulo `u^order`.
    pub fn from_coeffs(start: i64, coeffs: Vec<GaussianRational>, order: i64) -> Self {
        let mut s = USeries { val: start, order, coeffs };
        s.normalize();
        s
    }

    /// Rational coefficients, convenience for tests and tables.
    pub fn from_rationals(start: i64, coeffs: Vec<BigRational>, order: i64) -> Self {
        Self::from_coeffs(start, coeffs.into_iter().map(Into::into).collect(), order)
    }

    /// `c * u^k`, known exactly.
    pub fn monomial(c: GaussianRational, k: i64) -> Self {
        Self::from_coeffs(k, vec![c], EXACT)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn zero(order: i64) -> Self {
        USeries { val: order, order, coeffs: Vec::new() }
    }

    pub fn exact_zero() -> Self {
        Self::zero(EXACT)
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.order;
                return;
            }
            Some(p) => {
                self.coeffs.drain(..p);
                self.val += p as i64;
            }
        }
        if self.val >= self.order {
            self.coeffs.clear();
            self.val = self.order;
            return;
        }
        if self.order != EXACT {
            let keep = (self.order - self.val) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Lowest degree with a nonzero coefficient, or `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Exclusive truncation order; `None` if the series is exact.
    pub fn order(&self) -> Option<i64> {
        (!self.is_exact()).then_some(self.order)
    }

    pub fn coeff(&self, k: i64) -> GaussianRational {
        if self.is_zero() || k < self.val {
            return GaussianRational::zero();
        }
        self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms as (degree, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.val + j as i64, c))
    }

    /// Forget everything at or above `u^order`.
    pub fn truncate(&self, order: i64) -> Self {
        Self::from_coeffs(self.val, self.coeffs.clone(), order.min(self.order))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.val, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        USeries {
            val: add_ord(self.val, k),
            order: add_ord(self.order, k),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Agreement on all degrees below both truncation orders.
    pub fn agrees_with(&self, other: &USeries) -> bool {
        let n = self.order.min(other.order);
        let d = self - other;
        let ok = d.terms().all(|(k, _)| k >= n);
        ok
    }

    fn require_order(&self, what: &str) -> Result<()> {
        if self.is_exact() {
            return Err(Error::SeriesPrecondition(format!(
                "{what} of an exact series needs an explicit truncation order"
            )));
        }
        Ok(())
    }

    pub fn inv(&self) -> Result<USeries> {
        if self.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        if self.coeffs.len() == 1 {
            let c = self.coeffs[0].inv().ok_or(Error::NonInvertibleSeries)?;
            return Ok(USeries::from_coeffs(-self.val, vec![c], add_ord(self.order, -2 * self.val)));
        }
        self.require_order("inverse")?;
        let v = self.val;
        let prec = (self.order - v) as usize;
        let c_inv = self.coeffs[0].inv().ok_or(Error::NonInvertibleSeries)?;
        let mut b: Vec<GaussianRational> = Vec::with_capacity(prec);
        b.push(c_inv.clone());
        for n in 1..prec {
            let mut acc = GaussianRational::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[k] * &b[n - k]);
            }
            b.push(-(&acc * &c_inv));
        }
        Ok(USeries::from_coeffs(-v, b, -v + prec as i64))
    }

    pub fn exp(&self) -> Result<USeries> {
        if self.is_zero() {
            return Ok(USeries::from_coeffs(0, vec![GaussianRational::one()], self.order));
        }
        if self.val < 1 {
            return Err(Error::SeriesPrecondition(format!(
                "exp needs zero constant term and no poles, found {} at u^{}",
                self.coeff(self.val),
                self.val
            )));
        }
        self.require_order("exp")?;
        let n_max = self.order.max(0) as usize;
        let a: Vec<GaussianRational> = (0..n_max as i64).map(|k| self.coeff(k)).collect();
        let mut f = vec![GaussianRational::one()];
        for n in 1..n_max {
            let mut acc = GaussianRational::zero();
            for k in 1..=n {
                if a[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&a[k].scale(&BigRational::from_integer(BigInt::from(k))) * &f[n - k]);
            }
            f.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(USeries::from_coeffs(0, f, self.order))
    }

    pub fn log(&self) -> Result<USeries> {
        if self.val != 0 || !self.coeff(0).is_one() {
            return Err(Error::SeriesPrecondition(format!(
                "log needs constant term 1, found {}",
                self.coeff(0)
            )));
        }
        self.require_order("log")?;
        let n_max = self.order.max(0) as usize;
        let a: Vec<GaussianRational> = (0..n_max as i64).map(|k| self.coeff(k)).collect();
        let mut g = vec![GaussianRational::zero()];
        for n in 1..n_max {
            let mut acc = a[n].scale(&BigRational::from_integer(BigInt::from(n)));
            for k in 1..n {
                if g[k].is_zero() || a[n - k].is_zero() {
                    continue;
                }
                acc = &acc - &(&g[k].scale(&BigRational::from_integer(BigInt::from(k))) * &a[n - k]);
            }
            g.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(USeries::from_coeffs(0, g, self.order))
    }

    pub fn pow(&self, e: i64) -> Result<USeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = USeries::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Parse the canonical rendering, e.g. `1 + -1/24*u^2 + O(u^6)`.
    pub fn parse(text: &str) -> Result<USeries> {
        let t = text.trim();
        let pieces = split_top_level(t, " + ");
        let (body, order) = match pieces.last() {
            Some((off, last)) if last.trim().starts_with("O(") => {
                let inner = last
                    .trim()
                    .strip_prefix("O(u^")
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(*off, "malformed truncation marker"))?;
                let n: i64 = inner
                    .parse()
                    .map_err(|_| Error::parse(*off, "malformed truncation order"))?;
                (if *off == 0 { "" } else { &t[..off - 3] }, n)
            }
            _ => (t, EXACT),
        };
        let mut out = USeries::zero(order);
        for term in parse_terms(body, &["u"])? {
            out = &out + &USeries::monomial(term.coeff, term.exps[0]);
        }
        Ok(out.truncate(order))
    }
}

/// `2 sin(k u / 2)` to the given order.
pub fn sin_half(k: u32, order: i64) -> USeries {
    let half_k = BigRational::new(BigInt::from(k), BigInt::from(2));
    let mut coeffs = Vec::new();
    let mut n = 0i64;
    while n < order {
        if n % 2 == 1 {
            let m = (n - 1) / 2;
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let c = BigRational::from_integer(BigInt::from(2 * sign)) * num_traits::pow(half_k.clone(), n as usize)
                / BigRational::from_integer(factorial(n as u64));
            coeffs.push(c.into());
        } else {
            coeffs.push(GaussianRational::zero());
        }
        n += 1;
    }
    USeries::from_coeffs(0, coeffs, order)
}

fn cos_twice(k: u32, order: i64) -> USeries {
    let half_k = BigRational::new(BigInt::from(k), BigInt::from(2));
    let mut coeffs = Vec::new();
    for n in 0..order.max(0) {
        if n % 2 == 0 {
            let sign = if (n / 2) % 2 == 0 { 2 } else { -2 };
            let c = BigRational::from_integer(BigInt::from(sign)) * num_traits::pow(half_k.clone(), n as usize)
                / BigRational::from_integer(factorial(n as u64));
            coeffs.push(c.into());
        } else {
            coeffs.push(GaussianRational::zero());
        }
    }
    USeries::from_coeffs(0, coeffs, order)
}

/// `cot(k u / 2)` to the given order; valuation −1.
pub fn cot_half(k: u32, order: i64) -> USeries {
    let s = sin_half(k, order + 2);
    let c = cos_twice(k, order + 1);
    (&c * &s.inv().expect("sine series is invertible")).truncate(order)
}

impl Add<&USeries> for &USeries {
    type Output = USeries;
    fn add(self, o: &USeries) -> USeries {
        let order = self.order.min(o.order);
        if self.is_zero() {
            return o.truncate(order);
        }
        if o.is_zero() {
            return self.truncate(order);
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64).min(order);
        let coeffs = (lo..hi).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        USeries::from_coeffs(lo, coeffs, order)
    }
}

impl Neg for &USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        USeries { val: self.val, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        -&self
    }
}

impl Sub<&USeries> for &USeries {
    type Output = USeries;
    fn sub(self, o: &USeries) -> USeries {
        self + &(-o)
    }
}

impl Mul<&USeries> for &USeries {
    type Output = USeries;
    fn mul(self, o: &USeries) -> USeries {
        if (self.is_zero() && self.is_exact()) || (o.is_zero() && o.is_exact()) {
            return USeries::exact_zero();
        }
        let order = add_ord(self.order, o.val).min(add_ord(o.order, self.val));
        if self.is_zero() || o.is_zero() {
            return USeries::zero(order);
        }
        let val = self.val + o.val;
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(if order == EXACT {
            usize::MAX
        } else {
            (order - val).max(0) as usize
        });
        let mut out = vec![GaussianRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        USeries::from_coeffs(val, out, order)
    }
}

crate::forward_owned_binops!(USeries; Add add, Sub sub, Mul mul);

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => "u".to_string(),
                    _ => format!("u^{k}"),
                };
                render_term(c, &mono)
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        if !self.is_exact() {
            parts.push(format!("O(u^{})", self.order));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for USeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for USeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        USeries::parse(&s).map_err(serde::de::Error::custom)
    }
}
