use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{BranchData, HurwitzValue};
use crate::error::Result;
use crate::exactalg::{factorial, BigRational};
use crate::partitions::Partition;
use crate::symchar::character_table;

fn memo() -> &'static RwLock<HashMap<BranchData, BigRational>> {
    static M: OnceLock<RwLock<HashMap<BranchData, BigRational>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Automorphism-weighted count of possibly disconnected covers, by
/// `Σ_ρ (d!/dim ρ)^{2g−2} ∏_i χ_ρ(η_i)|C_{η_i}|/dim ρ · (χ_ρ(τ)|C_τ|/dim ρ)^s`.
pub fn hurwitz_disconnected(b: &BranchData) -> Result<HurwitzValue> {
    b.validate()?;
    let key = b.canonical();
    if let Some(v) = memo().read().expect("hurwitz memo poisoned").get(&key) {
        return Ok(HurwitzValue { value: v.clone(), connected: false });
    }
    let value = frobenius_sum(b)?;
    memo().write().expect("hurwitz memo poisoned").insert(key, value.clone());
    Ok(HurwitzValue { value, connected: false })
}

fn frobenius_sum(b: &BranchData) -> Result<BigRational> {
    if b.d == 1 {
        let v = if b.s == 0 { 1 } else { 0 };
        return Ok(BigRational::from_integer(v.into()));
    }
    let t = character_table(b.d)?;
    let dfact = factorial(b.d as u64);
    let tau = Partition::transposition(b.d)?;
    let tau_col = t.col_index(&tau).expect("transposition class");
    let class_cols: Vec<(usize, BigInt)> =
        b.classes.iter().map(|c| (t.col_index(c).expect("class of degree d"), c.class_size())).collect();
    let tau_size = tau.class_size();
    let terms: Vec<BigRational> = t
        .rows
        .par_iter()
        .zip(t.entries.par_iter())
        .map(|(rho, row)| {
            let dim = rho.dim();
            let mut term = pow_rat(&BigRational::new(dfact.clone(), dim.clone()), 2 * b.g as i64 - 2);
            for (col, size) in &class_cols {
                term *= BigRational::new(BigInt::from(row[*col]) * size, dim.clone());
            }
            let tw = BigRational::new(BigInt::from(row[tau_col]) * &tau_size, dim.clone());
            term * pow_rat(&tw, b.s as i64)
        })
        .collect();
    Ok(terms.into_iter().fold(BigRational::zero(), |a, x| a + x))
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    if e < 0 {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    } else {
        num_traits::pow(x.clone(), e as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn h(d: u32, g: u32, classes: &[&str], s: u32) -> BigRational {
        let b = BranchData::new(d, g, classes.iter().map(|c| p(c)).collect(), s).unwrap();
        hurwitz_disconnected(&b).unwrap().value
    }

    #[test]
    fn two_transpositions() {
        assert_eq!(h(2, 0, &["2", "2"], 0), rat(1, 2));
    }

    #[test]
    fn even_transposition_counts() {
        for k in 0..5 {
            assert_eq!(h(2, 0, &["1+1"], 2 * k), rat(1, 2));
            assert_eq!(h(2, 0, &["1+1"], 2 * k + 1), rat(0, 1));
        }
    }

    #[test]
    fn unramified_torus_double_covers() {
        assert_eq!(h(2, 1, &[], 0), rat(2, 1));
    }

    #[test]
    fn degree_one() {
        assert_eq!(h(1, 2, &["1"], 0), rat(1, 1));
        assert_eq!(h(1, 0, &[], 3), rat(0, 1));
    }
}
