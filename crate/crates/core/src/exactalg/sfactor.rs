use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;

/// A monomial `i^unit * s^exponent` in the anti-diagonal weight `s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SFactor {
    /// Power of `i`, reduced mod 4: 0 → 1, 1 → i, 2 → −1, 3 → −i.
    pub unit: u8,
    pub exponent: i64,
}

impl SFactor {
    pub fn new(unit: i64, exponent: i64) -> Self {
        SFactor { unit: unit.rem_euclid(4) as u8, exponent }
    }

    pub fn one() -> Self {
        Self::new(0, 0)
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::new(0, k)
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Self {
        Self::new(2 * k, 0)
    }

    pub fn unit_value(&self) -> GaussianRational {
        GaussianRational::i_pow(self.unit as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.unit as i64), -self.exponent)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.unit as i64 * e, self.exponent * e)
    }

    /// Real sign when the unit is ±1.
    pub fn real_sign(&self) -> Option<i64> {
        match self.unit {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl Mul for SFactor {
    type Output = SFactor;
    fn mul(self, o: SFactor) -> SFactor {
        SFactor::new(self.unit as i64 + o.unit as i64, self.exponent + o.exponent)
    }
}

impl fmt::Display for SFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = ["", "i*", "-", "-i*"][self.unit as usize];
        match self.exponent {
            0 => write!(f, "{}", ["1", "i", "-1", "-i"][self.unit as usize]),
            1 => write!(f, "{unit}s"),
            k => write!(f, "{unit}s^{k}"),
        }
    }
}
