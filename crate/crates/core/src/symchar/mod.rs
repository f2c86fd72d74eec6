//! Characters of the symmetric group and its class algebra.

mod cache;
mod class_algebra;
mod murnaghan;
pub mod perm;

pub use cache::{cache_dir, cached_degrees, clear_cache, set_cache_dir, CacheSetting, CACHE_ENV};
pub use class_algebra::{class_product, class_product_by_convolution, ClassVector};
pub use murnaghan::character;

use std::sync::{Arc, OnceLock, RwLock};
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition};

/// Largest degree for which full tables are built.
pub const MAX_TABLE_DEGREE: u32 = 12;

/// Character table of `S_d`. Rows are irreducibles in canonical partition
/// order (trivial first); columns are classes in the reverse order, so the
/// first column is the identity class and holds the dimensions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub d: u32,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn compute(d: u32) -> Result<Self> {
        if d > MAX_TABLE_DEGREE {
            return Err(Error::invalid(format!(
                "character tables are supported for d <= {MAX_TABLE_DEGREE}, got {d}"
            )));
        }
        let rows = enumerate(d);
        let cols: Vec<Partition> = rows.iter().rev().cloned().collect();
        let entries = rows
            .par_iter()
            .map(|rho| cols.iter().map(|eta| character(rho, eta)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable { d, rows, cols, entries })
    }

    pub fn row_index(&self, rho: &Partition) -> Option<usize> {
        self.rows.binary_search(rho).ok()
    }

    pub fn col_index(&self, eta: &Partition) -> Option<usize> {
        self.cols.binary_search_by(|c| eta.cmp(c)).ok()
    }

    /// `χ_ρ(η)`; panics if either partition is not of size `d`.
    pub fn value(&self, rho: &Partition, eta: &Partition) -> i64 {
        let r = self.row_index(rho).expect("irreducible of the table's degree");
        let c = self.col_index(eta).expect("class of the table's degree");
        self.entries[r][c]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho\\eta");
        for c in &self.cols {
            out.push(',');
            out.push_str(&c.to_plus_string());
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            out.push_str(&r.to_plus_string());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Outcome of the exact orthogonality check.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub d: u32,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Check both orthogonality relations exactly.
pub fn verify_orthogonality(table: &CharacterTable) -> OrthogonalityReport {
    let mut failures = Vec::new();
    let zetas: Vec<BigInt> = table.cols.iter().map(|c| c.zeta()).collect();
    let dfact = crate::exactalg::factorial(table.d as u64);
    for (a, ra) in table.rows.iter().enumerate() {
        for (b, rb) in table.rows.iter().enumerate().skip(a) {
            // Σ_η χ_a χ_b / ζ(η) = δ, scaled by d!
            let s: BigInt = (0..table.cols.len())
                .map(|k| BigInt::from(table.entries[a][k] * table.entries[b][k]) * (&dfact / &zetas[k]))
                .sum();
            let expect = if a == b { dfact.clone() } else { BigInt::zero() };
            if s != expect {
                failures.push(format!("row orthogonality fails for ({ra}, {rb})"));
            }
        }
    }
    for (k, ck) in table.cols.iter().enumerate() {
        for (l, cl) in table.cols.iter().enumerate().skip(k) {
            let s: i64 = table.entries.iter().map(|row| row[k] * row[l]).sum();
            let expect = if k == l { zetas[k].clone() } else { BigInt::zero() };
            if BigInt::from(s) != expect {
                failures.push(format!("column orthogonality fails for ({ck}, {cl})"));
            }
        }
    }
    OrthogonalityReport { d: table.d, passed: failures.is_empty(), failures }
}

fn memory() -> &'static RwLock<HashMap<u32, Arc<CharacterTable>>> {
    static M: OnceLock<RwLock<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// The character table of `S_d`, memoized in memory and on disk when a cache
/// directory is configured.
pub fn character_table(d: u32) -> Result<Arc<CharacterTable>> {
    if let Some(t) = memory().read().expect("table memo poisoned").get(&d) {
        return Ok(t.clone());
    }
    let table = Arc::new(cache::load_or_compute(d)?);
    memory().write().expect("table memo poisoned").insert(d, table.clone());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_table() {
        let t = CharacterTable::compute(2).unwrap();
        assert_eq!(t.entries, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn trivial_character_is_orthogonal_to_rest() {
        let t = CharacterTable::compute(3).unwrap();
        for (r, row) in t.entries.iter().enumerate().skip(1) {
            let s: BigInt = t.cols.iter().zip(row).map(|(c, v)| c.class_size() * v).sum();
            assert_eq!(s, BigInt::zero(), "row {r}");
        }
    }

    #[test]
    fn orthogonality_small_degrees() {
        for d in 1..=6 {
            let rep = verify_orthogonality(&CharacterTable::compute(d).unwrap());
            assert!(rep.passed, "{:?}", rep.failures);
        }
    }

    #[test]
    fn broken_table_is_reported() {
        let mut t = CharacterTable::compute(3).unwrap();
        t.entries[1][0] += 1;
        let rep = verify_orthogonality(&t);
        assert!(!rep.passed);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn csv_layout() {
        let csv = CharacterTable::compute(2).unwrap().to_csv();
        assert_eq!(csv, "rho\\eta,1+1,2\n2,1,1\n1+1,1,-1\n");
    }

    #[test]
    fn first_column_holds_dimensions() {
        let t = CharacterTable::compute(6).unwrap();
        assert_eq!(t.cols[0], Partition::column(6));
        for (r, row) in t.rows.iter().zip(&t.entries) {
            assert_eq!(BigInt::from(row[0]), r.dim());
        }
    }

    #[test]
    fn oversized_degree_rejected() {
        assert!(CharacterTable::compute(MAX_TABLE_DEGREE + 1).is_err());
    }
}
