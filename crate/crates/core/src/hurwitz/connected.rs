use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{hurwitz_disconnected, BranchData, HurwitzValue};
use crate::error::Result;
use crate::exactalg::{factorial, BigRational};
use crate::partitions::Partition;

fn memo() -> &'static RwLock<HashMap<BranchData, BigRational>> {
    static M: OnceLock<RwLock<HashMap<BranchData, BigRational>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of monodromy tuples (`d!` times the disconnected Hurwitz number).
fn tuples_all(d: u32, g: u32, classes: &[Partition], s: u32) -> Result<BigRational> {
    if d == 0 {
        let v = if s == 0 { BigRational::one() } else { BigRational::zero() };
        return Ok(v);
    }
    let b = BranchData { d, g, classes: classes.to_vec(), s };
    let h = hurwitz_disconnected(&b)?.value;
    Ok(h * BigRational::from_integer(factorial(d as u64)))
}

/// All ways to take a sub-multiset of `eta` summing to `k`: (taken, rest).
fn splits(eta: &Partition, k: u32) -> Vec<(Partition, Partition)> {
    let mult: Vec<(u32, u32)> = eta.multiplicities().into_iter().collect();
    let mut out = Vec::new();
    fn rec(mult: &[(u32, u32)], i: usize, rem: u32, taken: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == mult.len() {
            if rem == 0 {
                out.push(taken.clone());
            }
            return;
        }
        let (v, m) = mult[i];
        for c in 0..=m {
            if c * v > rem {
                break;
            }
            taken.extend(std::iter::repeat_n(v, c as usize));
            rec(mult, i + 1, rem - c * v, taken, out);
            taken.truncate(taken.len() - c as usize);
        }
    }
    let mut raw = Vec::new();
    rec(&mult, 0, k, &mut Vec::new(), &mut raw);
    for t in raw {
        let mut rest = eta.parts().to_vec();
        for x in &t {
            let pos = rest.iter().position(|y| y == x).expect("sub-multiset");
            rest.remove(pos);
        }
        out.push((Partition::new(t).expect("positive"), Partition::new(rest).expect("positive")));
    }
    out
}

/// Tuples generating a transitive subgroup, by peeling off the orbit of the
/// first letter from all tuples.
fn tuples_connected(d: u32, g: u32, classes: &[Partition], s: u32) -> Result<BigRational> {
    let key = BranchData { d, g, classes: classes.to_vec(), s }.canonical();
    if let Some(v) = memo().read().expect("hurwitz memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let mut total = tuples_all(d, g, classes, s)?;
    for d1 in 1..d {
        let ways = BigRational::from_integer(binom(d as u64 - 1, d1 as u64 - 1));
        let mut combos: Vec<(Vec<Partition>, Vec<Partition>)> = vec![(Vec::new(), Vec::new())];
        for eta in classes {
            let options = splits(eta, d1);
            let mut next = Vec::new();
            for (a, r) in &combos {
                for (x, y) in &options {
                    let mut a2 = a.clone();
                    a2.push(x.clone());
                    let mut r2 = r.clone();
                    r2.push(y.clone());
                    next.push((a2, r2));
                }
            }
            combos = next;
        }
        for (alpha, rest) in &combos {
            for t in 0..=s {
                let inner = tuples_connected(d1, g, alpha, t)?;
                if inner.is_zero() {
                    continue;
                }
                let outer = tuples_all(d - d1, g, rest, s - t)?;
                total -= &ways * BigRational::from_integer(binom(s as u64, t as u64)) * inner * outer;
            }
        }
    }
    memo().write().expect("hurwitz memo poisoned").insert(key, total.clone());
    Ok(total)
}

/// Automorphism-weighted count of connected covers.
pub fn hurwitz_connected(b: &BranchData) -> Result<HurwitzValue> {
    b.validate()?;
    let t = tuples_connected(b.d, b.g, &b.classes, b.s)?;
    Ok(HurwitzValue { value: t / BigRational::from_integer(factorial(b.d as u64)), connected: true })
}
