use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::qratfunc::QRatFunc;
use super::rational::BigRational;
use super::series::USeries;

/// Coefficient ring for the tensor engine.
///
/// Methods are spelled out rather than taken from operator traits so that
/// generic code needs no higher-ranked bounds.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse when it exists in this representation.
    fn try_inv(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    /// Embed a Gaussian rational, if the ring contains `i`.
    fn from_gaussian(g: &GaussianRational) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(&base);
        }
        Some(acc)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        g.is_real().then(|| g.re.clone())
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone().into()
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(g.clone())
    }
}

impl Scalar for QRatFunc {
    fn zero() -> Self {
        QRatFunc::zero()
    }
    fn one() -> Self {
        QRatFunc::one()
    }
    fn is_zero(&self) -> bool {
        QRatFunc::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        QRatFunc::constant(r.clone().into())
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(QRatFunc::constant(g.clone()))
    }
}

impl Scalar for USeries {
    fn zero() -> Self {
        USeries::exact_zero()
    }
    fn one() -> Self {
        USeries::one()
    }
    fn is_zero(&self) -> bool {
        USeries::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    /// Exact polynomials are only invertible when they are monomials.
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        USeries::constant(r.clone().into())
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(USeries::constant(g.clone()))
    }
}

/// Laurent polynomial in the anti-diagonal weight `s` over a scalar ring.
#[derive(Clone, PartialEq, Debug)]
pub struct SLaurent<K: Scalar> {
    terms: BTreeMap<i64, K>,
}

impl<K: Scalar> SLaurent<K> {
    /// `c * s^k`.
    pub fn monomial(c: K, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        SLaurent { terms }
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0)
    }

    pub fn s_pow(k: i64) -> Self {
        Self::monomial(K::one(), k)
    }

    pub fn coeff(&self, k: i64) -> K {
        self.terms.get(&k).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// The single term `(k, c)` when this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &K)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.times(c));
        }
        out
    }

    fn add_term(&mut self, k: i64, c: K) {
        let next = match self.terms.get(&k) {
            Some(v) => v.plus(&c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, next);
        }
    }

    pub fn map<L: Scalar, E>(&self, f: impl Fn(&K) -> Result<L, E>) -> Result<SLaurent<L>, E> {
        let mut out = SLaurent::<L>::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, f(v)?);
        }
        Ok(out)
    }
}

impl<K: Scalar> Scalar for SLaurent<K> {
    fn zero() -> Self {
        SLaurent { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, x.times(y));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        SLaurent { terms: self.terms.iter().map(|(k, v)| (*k, v.negated())).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        let (k, c) = self.as_monomial()?;
        Some(Self::monomial(c.try_inv()?, -k))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(K::from_rational(r))
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(Self::constant(K::from_gaussian(g)?))
    }
}

impl<K: Scalar> fmt::Display for SLaurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                match *k {
                    0 => cs,
                    1 if cs == "1" => "s".into(),
                    _ if cs == "1" => format!("s^{k}"),
                    1 => format!("{cs}*s"),
                    _ => format!("{cs}*s^{k}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
