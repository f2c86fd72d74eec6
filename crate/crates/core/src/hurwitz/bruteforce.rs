use std::collections::HashMap;

use num_bigint::BigInt;

use super::{BranchData, HurwitzValue};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, BigRational};
use crate::partitions::Partition;
use crate::symchar::perm::{self, Perm};

/// Largest degree the enumeration oracle accepts.
pub const MAX_ORACLE_DEGREE: u32 = 4;
/// Largest number of branch points (special fibres plus simple points).
pub const MAX_ORACLE_POINTS: usize = 8;

struct Group {
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl Group {
    fn new(d: usize) -> Self {
        let elems = perm::all(d);
        let index: HashMap<Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&perm::compose(a, b)]).collect())
            .collect();
        let inv = elems.iter().map(|a| index[&perm::inverse(a)]).collect();
        Group { elems, index, mul, inv }
    }
}

/// Merge the blocks of `blocks` along the cycles of `p`, relabelled canonically.
fn join(blocks: &[u8], p: &[u8]) -> Vec<u8> {
    let n = blocks.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if blocks[i] == blocks[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let (a, b) = (find(&mut parent, i), find(&mut parent, p[i] as usize));
        parent[a] = b;
    }
    let mut label: HashMap<usize, u8> = HashMap::new();
    (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            let next = label.len() as u8;
            *label.entry(r).or_insert(next)
        })
        .collect()
}

type State = (usize, Vec<u8>);

/// Count monodromy tuples directly: `g` commutator pairs, one element of each
/// class, `s` transpositions, with ordered product the identity; divided by
/// `d!`. Optionally keep only tuples generating a transitive subgroup.
pub fn hurwitz_bruteforce(b: &BranchData, require_transitive: bool) -> Result<HurwitzValue> {
    b.validate()?;
    let points = b.classes.len() + b.s as usize;
    if b.d > MAX_ORACLE_DEGREE || points > MAX_ORACLE_POINTS {
        return Err(Error::OracleBoundExceeded(format!(
            "enumeration supports d <= {MAX_ORACLE_DEGREE} and at most {MAX_ORACLE_POINTS} branch points, got d = {} with {points}",
            b.d
        )));
    }
    let zero = || Ok(HurwitzValue { value: BigRational::from_integer(0.into()), connected: require_transitive });
    if b.s > 0 && b.d < 2 {
        return zero();
    }
    let d = b.d as usize;
    let grp = Group::new(d);
    let id = grp.index[&perm::identity(d)];
    let mut states: HashMap<State, u128> = HashMap::new();
    states.insert((id, (0..d as u8).collect()), 1);

    for _ in 0..b.g {
        let mut next: HashMap<State, u128> = HashMap::new();
        for ((p, blocks), n) in &states {
            for a in 0..grp.elems.len() {
                let ba = join(blocks, &grp.elems[a]);
                for c in 0..grp.elems.len() {
                    let comm = grp.mul[grp.mul[a][c]][grp.mul[grp.inv[a]][grp.inv[c]]];
                    let key = (grp.mul[*p][comm], join(&ba, &grp.elems[c]));
                    *next.entry(key).or_insert(0) += n;
                }
            }
        }
        states = next;
    }

    let mut steps: Vec<Partition> = b.classes.clone();
    if b.s > 0 {
        steps.extend(std::iter::repeat_n(Partition::transposition(b.d)?, b.s as usize));
    }
    for class in &steps {
        let members: Vec<usize> =
            (0..grp.elems.len()).filter(|&i| perm::cycle_type(&grp.elems[i]) == *class).collect();
        let mut next: HashMap<State, u128> = HashMap::new();
        for ((p, blocks), n) in &states {
            for &m in &members {
                let key = (grp.mul[*p][m], join(blocks, &grp.elems[m]));
                *next.entry(key).or_insert(0) += n;
            }
        }
        states = next;
    }

    let count: u128 = states
        .iter()
        .filter(|((p, blocks), _)| *p == id && (!require_transitive || blocks.iter().all(|&x| x == 0)))
        .map(|(_, n)| *n)
        .sum();
    Ok(HurwitzValue {
        value: BigRational::new(BigInt::from(count), factorial(b.d as u64)),
        connected: require_transitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    /// Literal enumeration of all tuples, for tiny cases only.
    fn naive(b: &BranchData, transitive: bool) -> BigRational {
        let d = b.d as usize;
        let all = perm::all(d);
        let mut slots: Vec<Vec<Perm>> = Vec::new();
        for _ in 0..2 * b.g {
            slots.push(all.clone());
        }
        for c in &b.classes {
            slots.push(all.iter().filter(|x| perm::cycle_type(x) == *c).cloned().collect());
        }
        for _ in 0..b.s {
            slots.push(all.iter().filter(|x| perm::cycle_type(x) == Partition::transposition(b.d).unwrap()).cloned().collect());
        }
        let mut count = 0u64;
        let mut idx = vec![0usize; slots.len()];
        if slots.iter().any(|s| s.is_empty()) {
            return rat(0, 1);
        }
        loop {
            let tuple: Vec<&Perm> = idx.iter().zip(&slots).map(|(i, s)| &s[*i]).collect();
            let mut prod = perm::identity(d);
            for k in 0..b.g as usize {
                let (a, c) = (tuple[2 * k], tuple[2 * k + 1]);
                let comm = perm::compose(&perm::compose(a, c), &perm::compose(&perm::inverse(a), &perm::inverse(c)));
                prod = perm::compose(&prod, &comm);
            }
            for x in &tuple[2 * b.g as usize..] {
                prod = perm::compose(&prod, x);
            }
            if prod == perm::identity(d) {
                let mut blocks: Vec<u8> = (0..d as u8).collect();
                for x in &tuple {
                    blocks = join(&blocks, x);
                }
                if !transitive || blocks.iter().all(|&x| x == 0) {
                    count += 1;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return BigRational::new(BigInt::from(count), factorial(b.d as u64));
                }
                idx[k] += 1;
                if idx[k] < slots[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn commuting_pairs_in_s2() {
        let b = BranchData::new(2, 1, vec![], 0).unwrap();
        assert_eq!(hurwitz_bruteforce(&b, false).unwrap().value, rat(2, 1));
    }

    #[test]
    fn three_cycles_are_transitive() {
        let b = BranchData::new(3, 0, vec![p("3"), p("3"), p("3")], 0).unwrap();
        let all = hurwitz_bruteforce(&b, false).unwrap().value;
        assert_eq!(hurwitz_bruteforce(&b, true).unwrap().value, all);
        assert_eq!(all, naive(&b, false));
    }

    #[test]
    fn dynamic_programme_matches_literal_enumeration() {
        let cases = [
            (2, 1, vec![p("2")], 1),
            (3, 1, vec![], 0),
            (3, 0, vec![p("2+1"), p("3")], 1),
            (3, 0, vec![], 4),
            (3, 1, vec![p("1+1+1")], 0),
            (4, 0, vec![p("2+2"), p("2+2")], 0),
            (4, 0, vec![p("3+1")], 3),
        ];
        for (d, g, classes, s) in cases {
            let b = BranchData::new(d, g, classes, s).unwrap();
            for t in [false, true] {
                assert_eq!(hurwitz_bruteforce(&b, t).unwrap().value, naive(&b, t), "{b:?} transitive={t}");
            }
        }
    }

    #[test]
    fn bounds_enforced() {
        let b = BranchData::new(5, 0, vec![], 0).unwrap();
        assert!(matches!(hurwitz_bruteforce(&b, false), Err(Error::OracleBoundExceeded(_))));
        let b = BranchData::new(2, 0, vec![p("2")], 8).unwrap();
        assert!(matches!(hurwitz_bruteforce(&b, false), Err(Error::OracleBoundExceeded(_))));
    }
}
