use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// Dense polynomial in `q` with Gaussian-rational coefficients, lowest degree
/// first. The zero polynomial has no coefficients; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<GaussianRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// `c * q^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut v = vec![GaussianRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lead(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divide by `q^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![GaussianRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Substitute `q -> q^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut v = vec![GaussianRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * k] = c.clone();
        }
        Self::new(v)
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    ///
    /// Runs a primitive pseudo-remainder sequence over the Gaussian integers,
    /// which keeps coefficient sizes bounded.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return QPoly::one();
        }
        let g = zi::gcd(zi::primitive(zi::from_poly(a)), zi::primitive(zi::from_poly(b)));
        zi::to_poly(&g).monic()
    }

    /// Exact division; errors if there is a remainder.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::NotInvertible("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Polynomials over the Gaussian integers, for gcds.
mod zi {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    use super::QPoly;
    use crate::exactalg::{BigRational, GaussianRational};

    /// `re + i*im`
    pub type Z = (BigInt, BigInt);
    type P = Vec<Z>;

    fn is_zero(z: &Z) -> bool {
        z.0.is_zero() && z.1.is_zero()
    }

    fn mul(a: &Z, b: &Z) -> Z {
        (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
    }

    fn sub(a: &Z, b: &Z) -> Z {
        (&a.0 - &b.0, &a.1 - &b.1)
    }

    fn norm(a: &Z) -> BigInt {
        &a.0 * &a.0 + &a.1 * &a.1
    }

    /// Nearest integer to `n/d` for `d > 0`.
    fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
        let two = BigInt::from(2);
        (n * &two + d).div_floor(&(d * &two))
    }

    fn divmod(a: &Z, b: &Z) -> (Z, Z) {
        let n = norm(b);
        let num = mul(a, &(b.0.clone(), -&b.1));
        let q = (round_div(&num.0, &n), round_div(&num.1, &n));
        let r = sub(a, &mul(&q, b));
        (q, r)
    }

    fn zgcd(a: &Z, b: &Z) -> Z {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !is_zero(&y) {
            let r = divmod(&x, &y).1;
            x = y;
            y = r;
        }
        x
    }

    /// Exact quotient `a / b` in `Z[i]`.
    fn div_exact(a: &Z, b: &Z) -> Z {
        let n = norm(b);
        let num = mul(a, &(b.0.clone(), -&b.1));
        (&num.0 / &n, &num.1 / &n)
    }

    pub fn from_poly(p: &QPoly) -> P {
        let mut l = BigInt::one();
        for c in &p.coeffs {
            l = l.lcm(c.re.denom()).lcm(c.im.denom());
        }
        p.coeffs
            .iter()
            .map(|c| ((&c.re * &l).to_integer(), (&c.im * &l).to_integer()))
            .collect()
    }

    pub fn to_poly(p: &[Z]) -> QPoly {
        QPoly::new(
            p.iter()
                .map(|(a, b)| GaussianRational::new(BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone())))
                .collect(),
        )
    }

    fn trim(mut p: P) -> P {
        while p.last().is_some_and(is_zero) {
            p.pop();
        }
        p
    }

    pub fn primitive(p: P) -> P {
        let p = trim(p);
        // Integer content first; it is cheap and usually all there is.
        let mut ic = BigInt::zero();
        for (a, b) in &p {
            ic = ic.gcd(a).gcd(b);
        }
        let p: P = if ic.is_zero() || ic.is_one() {
            p
        } else {
            p.iter().map(|(a, b)| (a / &ic, b / &ic)).collect()
        };
        let mut c: Z = (BigInt::zero(), BigInt::zero());
        for z in &p {
            c = zgcd(&c, z);
            if norm(&c).is_one() {
                return p;
            }
        }
        if is_zero(&c) {
            return p;
        }
        p.iter().map(|z| div_exact(z, &c)).collect()
    }

    fn prem(a: &[Z], b: &[Z]) -> P {
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r: P = a.to_vec();
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            r = r.iter().map(|c| mul(c, lb)).collect();
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] = sub(&r[shift + j], &mul(&lr, bc));
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: P, b: P) -> P {
        let (mut x, mut y) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !y.is_empty() {
            let r = prem(&x, &y);
            x = y;
            if r.is_empty() {
                return x;
            }
            if r.len() == 1 {
                return vec![(BigInt::one(), BigInt::zero())];
            }
            y = primitive(r);
        }
        x
    }

}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        QPoly::new(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

crate::forward_owned_binops!(QPoly; Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_with_remainder() {
        let a = QPoly::from_ints(&[1, 0, 0, -1]);
        let b = QPoly::from_ints(&[1, -1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = QPoly::from_ints(&[1, 0, -1]);
        let b = QPoly::from_ints(&[1, 0, 0, -1]);
        assert_eq!(QPoly::gcd(&a, &b), QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn inflate_then_eval() {
        let p = QPoly::from_ints(&[1, 2]);
        let x = GaussianRational::from_int(3);
        assert_eq!(p.inflate(2).eval(&x), GaussianRational::from_int(19));
    }
}
