//! A generic engine for semisimple weighted 2d TQFTs: tensors attached to
//! cobordisms, change of basis, gluing, index gymnastics, axiom checks and a
//! small language for describing cobordisms.

mod dsl;
mod semisimple;
mod tensor;

pub use dsl::{check_functoriality, evaluate, parse_cobordism, CobordismExpr, Sign};
pub use semisimple::{check_frobenius, dijkgraaf_data, invert_matrix, FrobeniusReport, SemisimpleData};
pub use tensor::{change_basis, glue, lower_index, raise_index, self_glue, tensor_of, tensor_with_slots, Tensor};

use serde::{Deserialize, Serialize};

/// Which basis a tensor's indices refer to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Basis {
    /// Class basis `e_η`.
    Eta,
    /// Semisimple basis `e_ρ`.
    Rho,
}

/// Slot variance: `Lower` slots are inputs (negatively oriented circles),
/// `Upper` slots are outputs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Variance {
    Lower,
    Upper,
}

/// Topological type of a connected cobordism with levels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CobordismSignature {
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
    /// Number of input circles.
    pub m: usize,
    /// Number of output circles.
    pub n: usize,
}

impl CobordismSignature {
    pub fn new(g: u32, k1: i64, k2: i64, m: usize, n: usize) -> Self {
        CobordismSignature { g, k1, k2, m, n }
    }

    pub fn closed(g: u32, k1: i64, k2: i64) -> Self {
        Self::new(g, k1, k2, 0, 0)
    }
}
