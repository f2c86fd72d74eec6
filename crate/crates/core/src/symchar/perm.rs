//! Small permutation utilities used by the enumeration oracles.

use crate::partitions::Partition;

/// A permutation of `0..n` in one-line notation.
pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

/// Cycle type as a partition.
pub fn cycle_type(a: &[u8]) -> Partition {
    let mut seen = vec![false; a.len()];
    let mut parts = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("positive cycle lengths")
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut cur = identity(n);
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;

    #[test]
    fn counts_and_class_sizes() {
        let ps = all(5);
        assert_eq!(ps.len(), 120);
        for eta in enumerate(5) {
            let n = ps.iter().filter(|p| cycle_type(p) == eta).count();
            assert_eq!(num_bigint::BigInt::from(n) * eta.zeta(), crate::exactalg::factorial(5));
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in all(4) {
            assert_eq!(compose(&p, &inverse(&p)), identity(4));
        }
    }
}
