use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::Partition;

type Key = (Vec<u32>, Vec<u32>);

fn memo() -> &'static RwLock<HashMap<Key, i64>> {
    static M: OnceLock<RwLock<HashMap<Key, i64>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// `χ_ρ(η)` by border-strip removal.
pub fn character(rho: &Partition, eta: &Partition) -> Result<i64> {
    if rho.size() != eta.size() {
        return Err(Error::DegreeMismatch(format!(
            "character of {rho} (d={}) on class {eta} (d={})",
            rho.size(),
            eta.size()
        )));
    }
    Ok(mn(rho.parts(), eta.parts()))
}

/// `shape` weakly decreasing, `cycles` weakly decreasing with equal sum.
fn mn(shape: &[u32], cycles: &[u32]) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = memo().read().expect("character memo poisoned").get(&key) {
        return *v;
    }
    let k = cycles[0];
    let rest = &cycles[1..];
    let len = shape.len();
    // Beta numbers: shape[i] + (len - 1 - i), strictly decreasing.
    let beta: Vec<u32> = shape.iter().enumerate().map(|(i, &p)| p + (len - 1 - i) as u32).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let nb = b - k;
        if beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let n = next.len();
        let sub: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (n - 1 - j) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&sub, rest);
    }
    memo().write().expect("character memo poisoned").insert(key, total);
    total
}
