use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::antid::AntidScalar;
use crate::error::{Error, Result};
use crate::exactalg::{
    cot_half, sin_half, BigRational, BivariatePoly, BivariateRatFunc, GaussianRational, QRatFunc, SLaurent, Scalar,
    USeries,
};
use crate::partitions::Partition;

/// A full-torus invariant in separated form `s_part(s1, s2) · u_part(u)`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FullTorusSeries {
    pub s_part: BivariateRatFunc,
    pub u_part: USeries,
}

impl fmt::Display for FullTorusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] * [{}]", self.s_part, self.u_part)
    }
}

impl FullTorusSeries {
    pub fn new(s_part: BivariateRatFunc, u_part: USeries) -> Self {
        FullTorusSeries { s_part, u_part }
    }

    /// `(c, a, b)` when `s_part = c · s1^a · s2^b`.
    pub fn s_monomial(&self) -> Option<(BigRational, i64, i64)> {
        let mut num = self.s_part.numerator().terms();
        let (&(a, b), c) = num.next()?;
        if num.next().is_some() {
            return None;
        }
        let mut den = self.s_part.denominator().terms();
        let (&(da, db), dc) = den.next()?;
        if den.next().is_some() {
            return None;
        }
        Some((c / dc, a as i64 - da as i64, b as i64 - db as i64))
    }

    /// Move a rational coefficient of a monomial `s_part` into `u_part`.
    pub fn normalized(&self) -> Self {
        match self.s_monomial() {
            Some((c, a, b)) => FullTorusSeries {
                s_part: BivariateRatFunc::monomial(<BigRational as One>::one(), a, b),
                u_part: self.u_part.scale(&c.into()),
            },
            None => self.clone(),
        }
    }

    pub fn times(&self, o: &FullTorusSeries) -> FullTorusSeries {
        FullTorusSeries { s_part: &self.s_part * &o.s_part, u_part: &self.u_part * &o.u_part }
    }

    /// Sum of two terms whose normalized `s_part`s agree.
    pub fn plus(&self, o: &FullTorusSeries) -> Result<FullTorusSeries> {
        let (a, b) = (self.normalized(), o.normalized());
        if a.u_part.is_zero() {
            return Ok(b);
        }
        if b.u_part.is_zero() {
            return Ok(a);
        }
        if a.s_part != b.s_part {
            return Err(Error::invalid(format!("cannot add {a} and {b} in separated form")));
        }
        Ok(FullTorusSeries { s_part: a.s_part, u_part: &a.u_part + &b.u_part })
    }

    /// Specialise `s1 = s`, `s2 = −s`: list of `(power of s, u-series)`.
    pub fn antidiagonal(&self) -> Result<Vec<(i64, USeries)>> {
        Ok(self.s_part.antidiagonal()?.into_iter().map(|(k, c)| (k, self.u_part.scale(&c.into()))).collect())
    }
}

/// Which Calabi–Yau cap: level `(0,−1)` carries `s1`, level `(−1,0)` carries `s2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CapSide {
    ZeroMinusOne,
    MinusOneZero,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn cap_s_part(d: u32, eta: &Partition, side: CapSide) -> BivariateRatFunc {
    let l = eta.len() as i64;
    let sign = if (d as i64 - l) % 2 == 0 { 1 } else { -1 };
    let c = int(sign) / BigRational::from_integer(eta.zeta());
    match side {
        CapSide::ZeroMinusOne => BivariateRatFunc::monomial(c, -l, 0),
        CapSide::MinusOneZero => BivariateRatFunc::monomial(c, 0, -l),
    }
}

/// Lemma-pair generator: `(s1+s2)/(2 s1 s2) · (d cot(du/2) − cot(u/2))`.
pub fn pair_series(d: u32, order: i64) -> Result<FullTorusSeries> {
    if d < 2 {
        return Err(Error::invalid("pair_series needs d >= 2"));
    }
    let num = &BivariatePoly::s1() + &BivariatePoly::s2();
    let den = BivariatePoly::monomial(int(2), 1, 1);
    let u = (&cot_half(d, order + 2).scale(&GaussianRational::from_int(d as i64)) - &cot_half(1, order + 2))
        .truncate(order);
    Ok(FullTorusSeries::new(BivariateRatFunc::new(num, den)?, u))
}

/// Calabi–Yau cap of level `(0,−1)` with boundary `η`:
/// `(−1)^{d−ℓ} (2 sin(u/2))^d / (s1^ℓ 𝔷(η) ∏ 2 sin(η_i u/2))`.
pub fn cy_cap(d: u32, eta: &Partition, order: i64) -> Result<FullTorusSeries> {
    cy_cap_side(d, eta, CapSide::ZeroMinusOne, order)
}

/// Either cap; the `(−1,0)` cap has `s2` in place of `s1`.
pub fn cy_cap_side(d: u32, eta: &Partition, side: CapSide, order: i64) -> Result<FullTorusSeries> {
    if eta.size() != d {
        return Err(Error::DegreeMismatch(format!("{eta} is not a partition of {d}")));
    }
    let work = order + eta.len() as i64 + 2;
    let mut u = sin_half(1, work).pow(d as i64)?;
    for &p in eta.parts() {
        u = &u * &sin_half(p, work).inv()?;
    }
    Ok(FullTorusSeries::new(cap_s_part(d, eta, side), u.truncate(order)))
}

/// Connected cap with boundary `(d)`: `(−1)^{d−1}/(s1 d) · (2 sin(u/2))^d / 2 sin(du/2)`.
/// It vanishes for every other boundary.
pub fn cy_cap_connected(d: u32, order: i64) -> Result<FullTorusSeries> {
    if d == 0 {
        return Err(Error::invalid("cy_cap_connected needs d >= 1"));
    }
    let sign = if d % 2 == 1 { 1 } else { -1 };
    let work = order + 3;
    let u = (&sin_half(1, work).pow(d as i64)? * &sin_half(d, work).inv()?).truncate(order);
    Ok(FullTorusSeries::new(BivariateRatFunc::monomial(int(sign) / int(d as i64), -1, 0), u))
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn aut(eta: &Partition) -> BigRational {
    eta.multiplicities().values().fold(<BigRational as One>::one(), |acc, &m| {
        acc * BigRational::from_integer(crate::exactalg::factorial(m as u64))
    })
}

/// Assemble the disconnected cap from connected ones:
/// `|Aut η| A_η = Σ_{set partitions of the parts} ∏_B |Aut η_B| A°_{η_B}`.
pub fn cy_cap_from_connected(eta: &Partition, order: i64) -> Result<FullTorusSeries> {
    let parts = eta.parts();
    let mut total = FullTorusSeries::new(BivariateRatFunc::one(), USeries::zero(order));
    for sp in set_partitions(parts.len()) {
        let mut term = FullTorusSeries::new(BivariateRatFunc::one(), USeries::one());
        let mut vanishes = false;
        for block in &sp {
            let sub = Partition::new(block.iter().map(|&i| parts[i]).collect())?;
            if sub.len() != 1 {
                vanishes = true;
                break;
            }
            let mut c = cy_cap_connected(sub.size(), order)?;
            c.u_part = c.u_part.scale(&aut(&sub).into());
            term = term.times(&c);
        }
        if !vanishes {
            total = total.plus(&term)?;
        }
    }
    let inv = <BigRational as One>::one() / aut(eta);
    Ok(FullTorusSeries { s_part: total.s_part, u_part: total.u_part.scale(&inv.into()).truncate(order) }.normalized())
}

/// `2 sin(ku/2) = i q^{−k} (1 − Q^k)` with `q = Q^{1/2}`.
pub fn two_sin_half_q(k: u32) -> QRatFunc {
    QRatFunc::constant(GaussianRational::i())
        .times(&QRatFunc::q_pow(-(k as i64)))
        .times(&QRatFunc::one_minus_big_q(k))
}

/// The cap with its index raised by `𝔷(η)(s1 s2)^{ℓ(η)}`, on the
/// anti-diagonal, as an exact function of `Q`.
pub fn cy_cap_antid_raised(d: u32, eta: &Partition, side: CapSide) -> Result<AntidScalar> {
    if eta.size() != d {
        return Err(Error::DegreeMismatch(format!("{eta} is not a partition of {d}")));
    }
    let l = eta.len() as u32;
    let raise = BivariateRatFunc::from_poly(BivariatePoly::monomial(BigRational::from_integer(eta.zeta()), l, l));
    let s = (&cap_s_part(d, eta, side) * &raise).antidiagonal()?;
    let mut q = two_sin_half_q(1).pow(d as i64)?;
    for &p in eta.parts() {
        q = q.times(&two_sin_half_q(p).inv()?);
    }
    let mut out = AntidScalar::zero();
    for (k, c) in s {
        if !Zero::is_zero(&c) {
            out = out.plus(&SLaurent::monomial(q.scale(&c.into()), k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q_to_u, rat};
    use crate::partitions::enumerate;

    fn g(n: i64, d: i64) -> GaussianRational {
        rat(n, d).into()
    }

    #[test]
    fn pair_series_shape() {
        for d in 2..=6 {
            let p = pair_series(d, 12).unwrap();
            let u = &p.u_part;
            assert_eq!(u.coeff(-1), g(0, 1));
            assert_eq!(u.coeff(1), g(1 - (d * d) as i64, 6));
            for k in (-2..12).step_by(2) {
                assert!(u.coeff(k).is_zero(), "d={d} even power {k}");
            }
            assert!(p.s_part.antidiagonal().unwrap().is_empty());
        }
        assert!(pair_series(1, 8).is_err());
    }

    #[test]
    fn degree_one_cap() {
        let c = cy_cap(1, &Partition::row(1), 8).unwrap();
        assert_eq!(c.s_part, BivariateRatFunc::monomial(rat(1, 1), -1, 0));
        assert_eq!(c.u_part, USeries::one().truncate(8));
    }

    #[test]
    fn degree_two_full_cap_is_tangent() {
        let c = cy_cap(2, &Partition::row(2), 8).unwrap();
        assert_eq!(c.s_part, BivariateRatFunc::monomial(rat(-1, 2), -1, 0));
        // tan(u/2) = u/2 + u^3/24 + u^5/240 + 17 u^7/40320
        assert_eq!(c.u_part.coeff(1), g(1, 2));
        assert_eq!(c.u_part.coeff(3), g(1, 24));
        assert_eq!(c.u_part.coeff(5), g(1, 240));
        assert_eq!(c.u_part.coeff(7), g(17, 40320));
    }

    #[test]
    fn cap_valuation_is_d_minus_length() {
        for d in 1..=6 {
            for eta in enumerate(d) {
                let c = cy_cap(d, &eta, 12).unwrap();
                assert_eq!(c.u_part.valuation(), Some(d as i64 - eta.len() as i64), "{eta}");
                assert_eq!(c.u_part.order(), Some(12));
            }
        }
    }

    #[test]
    fn exponentiation_reproduces_caps() {
        for d in 1..=6 {
            for eta in enumerate(d) {
                assert_eq!(cy_cap_from_connected(&eta, 12).unwrap(), cy_cap(d, &eta, 12).unwrap().normalized(), "{eta}");
            }
        }
    }

    #[test]
    fn q_form_of_sine_matches_series() {
        for k in 1..=5 {
            assert_eq!(q_to_u(&two_sin_half_q(k), 12).unwrap(), sin_half(k, 12));
        }
    }

    #[test]
    fn raised_cap_q_form_matches_series() {
        for d in 1..=4 {
            for eta in enumerate(d) {
                for side in [CapSide::ZeroMinusOne, CapSide::MinusOneZero] {
                    let exact = cy_cap_antid_raised(d, &eta, side).unwrap();
                    let series = cy_cap_side(d, &eta, side, 10).unwrap();
                    let l = eta.len() as u32;
                    let raised = FullTorusSeries::new(
                        &series.s_part
                            * &BivariateRatFunc::from_poly(BivariatePoly::monomial(
                                BigRational::from_integer(eta.zeta()),
                                l,
                                l,
                            )),
                        series.u_part.clone(),
                    );
                    for (k, u) in raised.antidiagonal().unwrap() {
                        assert!(q_to_u(&exact.coeff(k), 10).unwrap().agrees_with(&u), "{eta} {side:?}");
                    }
                }
            }
        }
    }
}
