//! Hurwitz numbers of covers of a genus-g curve, connected and not, and the
//! generating series built from them.

mod bruteforce;
mod cache;
mod connected;
mod frobenius;
mod series;

pub use bruteforce::hurwitz_bruteforce;
pub use cache::{cached_hurwitz, clear_hurwitz_cache, hurwitz_cached, HurwitzCacheEntry};
pub use connected::hurwitz_connected;
pub use frobenius::hurwitz_disconnected;
pub use series::{h_series, l_series};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, BigRational};
use crate::partitions::Partition;

/// Ramification data: degree `d`, base genus `g`, the special fibres
/// `classes`, and `s` further simple branch points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BranchData {
    pub d: u32,
    pub g: u32,
    pub classes: Vec<Partition>,
    pub s: u32,
}

impl BranchData {
    pub fn new(d: u32, g: u32, classes: Vec<Partition>, s: u32) -> Result<Self> {
        let b = BranchData { d, g, classes, s };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::invalid("Hurwitz numbers need d >= 1"));
        }
        for c in &self.classes {
            if c.size() != self.d {
                return Err(Error::DegreeMismatch(format!("class {c} is not a partition of {}", self.d)));
            }
        }
        Ok(())
    }

    /// Same data with classes sorted, used as a memo key.
    pub(crate) fn canonical(&self) -> BranchData {
        let mut c = self.clone();
        c.classes.sort();
        c
    }

    /// Total ramification `Σ (d − ℓ(η_i)) + s`.
    pub fn ramification(&self) -> i64 {
        self.classes.iter().map(|c| self.d as i64 - c.len() as i64).sum::<i64>() + self.s as i64
    }
}

/// A Hurwitz number together with which count it is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HurwitzValue {
    pub value: BigRational,
    pub connected: bool,
}

/// JSON form `{d, g, classes, s, connected, value}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HurwitzRecord {
    pub d: u32,
    pub g: u32,
    pub classes: Vec<Partition>,
    pub s: u32,
    pub connected: bool,
    pub value: String,
    pub cover_genus: Option<i64>,
}

impl HurwitzRecord {
    pub fn new(b: &BranchData, v: &HurwitzValue) -> Self {
        HurwitzRecord {
            d: b.d,
            g: b.g,
            classes: b.classes.clone(),
            s: b.s,
            connected: v.connected,
            value: fmt_rational(&v.value),
            cover_genus: cover_genus(b),
        }
    }
}

/// Genus `h` of the cover from Riemann–Hurwitz, with `χ = 2 − 2h` for
/// possibly disconnected covers; `None` when the parity is wrong.
pub fn cover_genus(b: &BranchData) -> Option<i64> {
    let rhs = b.d as i64 * (2 * b.g as i64 - 2) + b.ramification();
    (rhs % 2 == 0).then_some(rhs / 2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn riemann_hurwitz() {
        assert_eq!(cover_genus(&BranchData::new(2, 0, vec![p("2")], 1).unwrap()), Some(0));
        assert_eq!(cover_genus(&BranchData::new(1, 3, vec![], 0).unwrap()), Some(3));
        assert_eq!(cover_genus(&BranchData::new(2, 0, vec![p("1+1")], 0).unwrap()), Some(-1));
        assert_eq!(cover_genus(&BranchData::new(2, 0, vec![p("2")], 0).unwrap()), None);
    }

    #[test]
    fn invalid_data() {
        assert!(BranchData::new(0, 0, vec![], 0).is_err());
        assert!(BranchData::new(3, 0, vec![p("2")], 0).is_err());
    }
}
