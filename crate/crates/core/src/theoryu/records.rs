use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::antid::{antid_closed, semisimple_data_antid, AntidScalar, AntidiagValue};
use crate::error::{Error, Result};
use crate::exactalg::{q_to_u, SFactor, Scalar};
use crate::partitions::Partition;
use crate::tqftcore::{change_basis, tensor_with_slots, Basis, Variance};

/// Which invariant: degree, base genus, levels and boundary partitions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct InvariantKey {
    pub d: u32,
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
    pub inputs: Vec<Partition>,
    pub outputs: Vec<Partition>,
}

impl InvariantKey {
    pub fn closed(d: u32, g: u32, k1: i64, k2: i64) -> Self {
        InvariantKey { d, g, k1, k2, inputs: Vec::new(), outputs: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        for p in self.inputs.iter().chain(&self.outputs) {
            if p.size() != self.d {
                return Err(Error::DegreeMismatch(format!("{p} is not a partition of {}", self.d)));
            }
        }
        Ok(())
    }

    /// Anti-diagonal value from the semisimple engine, class basis.
    pub fn evaluate(&self) -> Result<AntidScalar> {
        self.validate()?;
        let ss = semisimple_data_antid(self.d)?;
        let mut slots = vec![Variance::Lower; self.inputs.len()];
        slots.extend(vec![Variance::Upper; self.outputs.len()]);
        let t = change_basis(&tensor_with_slots(self.g, self.k1, self.k2, &slots, &ss)?, &ss, Basis::Eta)?;
        let idx: Vec<usize> = self
            .inputs
            .iter()
            .chain(&self.outputs)
            .map(|p| ss.eta_labels.iter().position(|e| e == p).expect("validated"))
            .collect();
        Ok(t.get(&idx))
    }

    /// Engine value as a single power of `s` times a function of `q`.
    pub fn engine_value(&self) -> Result<AntidiagValue> {
        let x = self.evaluate()?;
        if x.is_zero() {
            return Ok(AntidiagValue::zero());
        }
        let (k, q) = x
            .as_monomial()
            .ok_or_else(|| Error::invalid(format!("value {x} is not a single power of s")))?;
        Ok(AntidiagValue::new(SFactor::s_pow(k), q.clone()))
    }
}

/// JSON form of one anti-diagonal invariant.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub key: InvariantKey,
    /// Power of `s`; absent when the value is zero.
    pub s_exponent: Option<i64>,
    /// Unit in front: `1`, `i`, `-1` or `-i`.
    pub sign: String,
    pub q_rational: Option<String>,
    pub u_series: Option<String>,
    pub convention_metadata: BTreeMap<String, String>,
}

const UNITS: [&str; 4] = ["1", "i", "-1", "-i"];

impl InvariantRecord {
    /// Closed invariant from the closed formula; `order` switches the `Q`
    /// part to a `u`-series.
    pub fn closed(d: u32, g: u32, k1: i64, k2: i64, order: Option<i64>) -> Result<Self> {
        let v = antid_closed(d, g, k1, k2)?;
        Self::from_value(InvariantKey::closed(d, g, k1, k2), &v, order)
    }

    pub fn from_value(key: InvariantKey, v: &AntidiagValue, order: Option<i64>) -> Result<Self> {
        let ss = semisimple_data_antid(key.d)?;
        let zero = v.is_zero();
        let (q_rational, u_series) = match order {
            Some(n) => (None, Some(q_to_u(&v.q_part, n)?.to_string())),
            None => (Some(v.q_part.to_string()), None),
        };
        Ok(InvariantRecord {
            key,
            s_exponent: (!zero).then_some(v.s_factor.exponent),
            sign: UNITS[v.s_factor.unit as usize].to_string(),
            q_rational,
            u_series,
            convention_metadata: ss.metadata.clone(),
        })
    }

    /// Any key, through the engine. Values spread over several powers of `s`
    /// are rejected.
    pub fn from_engine(key: InvariantKey, order: Option<i64>) -> Result<Self> {
        let v = key.engine_value()?;
        Self::from_value(key, &v, order)
    }
}
