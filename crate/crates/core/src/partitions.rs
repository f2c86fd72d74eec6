//! Integer partitions and Young-diagram statistics.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{factorial, BigRational, GaussianRational, QPoly, QRatFunc};

/// A weakly decreasing sequence of positive integers.
///
/// Ordering is reverse-lexicographic, so `(4) < (3,1) < (2,2) < (2,1,1) < (1^4)`;
/// this is the canonical index order for every table.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

/// Per-box statistics of a Young diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CellStats {
    pub hooklengths: Vec<u32>,
    /// Sum over boxes of (column − row).
    pub total_content: i64,
    /// Sum over boxes of (row − 1), rows counted from 1.
    pub n_value: u64,
}

impl Partition {
    /// Build from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(d)`.
    pub fn row(d: u32) -> Self {
        if d == 0 {
            Self::empty()
        } else {
            Partition(vec![d])
        }
    }

    /// The one-column partition `(1^d)`.
    pub fn column(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    /// The class of a transposition, `(2, 1^(d-2))`.
    pub fn transposition(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid("transpositions need d >= 2"));
        }
        let mut p = vec![2];
        p.extend(std::iter::repeat_n(1, d as usize - 2));
        Ok(Partition(p))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part value → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Order of the centralizer of a permutation of this cycle type.
    pub fn zeta(&self) -> BigInt {
        self.multiplicities().iter().fold(BigInt::one(), |acc, (&p, &m)| {
            acc * factorial(m as u64) * num_traits::pow(BigInt::from(p), m as usize)
        })
    }

    /// Number of permutations of this cycle type.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size() as u64) / self.zeta()
    }

    /// `(-1)^(d - ℓ)`, the sign of the class.
    pub fn sign(&self) -> i64 {
        if (self.size() as usize - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Hook length of every box, row by row.
    pub fn hooklengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut h = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j as usize] - i as u32 - 1;
                h.push(arm + leg + 1);
            }
        }
        h
    }

    pub fn n_value(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    pub fn content(&self) -> i64 {
        self.conjugate().n_value() as i64 - self.n_value() as i64
    }

    pub fn cell_stats(&self) -> CellStats {
        CellStats { hooklengths: self.hooklengths(), total_content: self.content(), n_value: self.n_value() }
    }

    /// Dimension of the irreducible representation, by the hook length formula.
    pub fn dim(&self) -> BigInt {
        let prod = self.hooklengths().iter().fold(BigInt::one(), |a, &h| a * BigInt::from(h));
        let d = factorial(self.size() as u64);
        assert!((&d % &prod) == BigInt::from(0), "hook product does not divide d! for {self}");
        d / prod
    }

    /// `d! ∏ (1 − Q)/(1 − Q^h)` over boxes.
    pub fn q_dim(&self) -> QRatFunc {
        let mut num = QRatFunc::constant(BigRational::from_integer(factorial(self.size() as u64)).into());
        for h in self.hooklengths() {
            if h > 1 {
                // (1 − Q)/(1 − Q^h) = 1/(1 + Q + … + Q^(h−1))
                let geom = QPoly::new((0..2 * h as usize - 1).map(|k| {
                    if k % 2 == 0 { GaussianRational::one() } else { GaussianRational::zero() }
                }).collect());
                num = &num / &QRatFunc::from_poly(geom);
            }
        }
        num
    }

    /// Principal specialization `Q^{n(ρ)} ∏ 1/(1 − Q^h)`.
    pub fn schur_q(&self) -> QRatFunc {
        let mut out = QRatFunc::big_q_pow(self.n_value() as i64);
        for h in self.hooklengths() {
            out = &out / &QRatFunc::one_minus_big_q(h);
        }
        out
    }

    /// Text form `3+2+2+1+1`; the empty partition renders as `()`.
    pub fn to_plus_string(&self) -> String {
        if self.is_empty() {
            return "()".into();
        }
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+")
    }

    /// Parse `3+2+2+1+1`, `(3,2^2,1^2)`, `3,2,2`, `1^4` or `()`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let (inner, base) = match t.strip_prefix('(') {
            Some(rest) => (
                rest.strip_suffix(')')
                    .ok_or_else(|| Error::parse(t.len(), "missing closing parenthesis"))?,
                1,
            ),
            None => (t, 0),
        };
        let mut parts = Vec::new();
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut pos = base;
        for tok in inner.split([',', '+']) {
            let raw = tok.trim();
            let bad = || Error::parse(pos, format!("bad partition token `{raw}`"));
            let (v, m) = match raw.split_once('^') {
                Some((v, m)) => (v.trim(), m.trim().parse::<u32>().map_err(|_| bad())?),
                None => (raw, 1),
            };
            let v: u32 = v.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(v, m as usize));
            pos += tok.len() + 1;
        }
        Self::new(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compact form `(3,2^2,1^2)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .multiplicities()
            .iter()
            .rev()
            .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_plus_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Partition::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `d` in canonical (reverse-lexicographic) order.
pub fn enumerate(d: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate(4).iter().map(|x| x.to_plus_string()).collect();
        assert_eq!(four, ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
        assert_eq!(enumerate(10).len(), 42);
        let mut sorted = enumerate(7);
        sorted.sort();
        assert_eq!(sorted, enumerate(7));
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("3+2+2+1+1").conjugate(), p("5+3+1"));
        assert_eq!(Partition::row(5).conjugate(), Partition::column(5));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(Partition::column(5).zeta(), factorial(5));
        assert_eq!(p("2+1").zeta(), BigInt::from(2));
    }

    #[test]
    fn stats_of_small_diagram() {
        let s = p("2+1").cell_stats();
        let mut h = s.hooklengths.clone();
        h.sort();
        assert_eq!(h, [1, 1, 3]);
        assert_eq!(s.n_value, 1);
        assert_eq!(s.total_content, 0);
        assert_eq!(Partition::column(6).n_value(), 15);
        assert_eq!(Partition::row(6).n_value(), 0);
    }

    #[test]
    fn dimensions() {
        assert_eq!(Partition::row(6).dim(), BigInt::one());
        assert_eq!(p("2+1").dim(), BigInt::from(2));
    }

    #[test]
    fn q_dimension_of_hook() {
        let expect = QRatFunc::from_int(6) / QRatFunc::from_poly(QPoly::from_ints(&[1, 0, 1, 0, 1]));
        assert_eq!(p("2+1").q_dim(), expect);
    }

    #[test]
    fn q_dimension_of_row() {
        let d = 4u32;
        let mut expect = QRatFunc::from_int(24);
        for j in 1..=d {
            expect = &(&expect * &QRatFunc::one_minus_big_q(1)) / &QRatFunc::one_minus_big_q(j);
        }
        assert_eq!(Partition::row(d).q_dim(), expect);
    }

    #[test]
    fn schur_specializations() {
        assert_eq!(p("1").schur_q(), QRatFunc::one_minus_big_q(1).inv().unwrap());
        let two = &(&QRatFunc::one_minus_big_q(1) * &QRatFunc::one_minus_big_q(2)).inv().unwrap() * &QRatFunc::one();
        assert_eq!(p("2").schur_q(), two);
    }

    #[test]
    fn text_forms() {
        let x = p("(3,2^2,1^2)");
        assert_eq!(x, p("3+2+2+1+1"));
        assert_eq!(x.to_string(), "(3,2^2,1^2)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!(p("()"), Partition::empty());
        assert!(Partition::parse("3+0").is_err());
        assert!(Partition::parse("3+x").is_err());
        assert!(Partition::parse("(3,2").is_err());
    }
}
