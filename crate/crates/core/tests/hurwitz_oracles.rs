//! Hurwitz numbers against classical closed forms.

use covertqft::exactalg::{factorial, BigRational};
use covertqft::hurwitz::{hurwitz_bruteforce, hurwitz_connected, hurwitz_disconnected, BranchData};
use covertqft::partitions::{enumerate, Partition};

fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow(d: u32, e: i64) -> BigRational {
    big(d as i64).pow(e as i32)
}

#[test]
fn polynomial_covers_are_cayley() {
    // connected genus-0 covers, full ramification over one point plus d-1 simple points: d^{d-3}
    for d in 1..=7u32 {
        let b = BranchData::new(d, 0, vec![Partition::row(d)], d - 1).unwrap();
        assert_eq!(hurwitz_connected(&b).unwrap().value, pow(d, d as i64 - 3), "d={d}");
    }
}

#[test]
fn simple_genus_zero_numbers() {
    // d^{d-3} (2d-2)! / d!
    for d in 1..=6u32 {
        let b = BranchData::new(d, 0, vec![], 2 * d - 2).unwrap();
        let want = pow(d, d as i64 - 3) * BigRational::new(factorial(2 * d as u64 - 2), factorial(d as u64));
        assert_eq!(hurwitz_connected(&b).unwrap().value, want, "d={d}");
    }
}

fn sigma(d: u32) -> i64 {
    (1..=d).filter(|k| d.is_multiple_of(*k)).map(|k| k as i64).sum()
}

#[test]
fn unramified_torus_covers() {
    // connected: σ(d)/d; all covers: Σ over partitions ∏ of the connected counts, i.e. p(d)
    for d in 1..=8u32 {
        let b = BranchData::new(d, 1, vec![], 0).unwrap();
        assert_eq!(hurwitz_connected(&b).unwrap().value, BigRational::new(sigma(d).into(), (d as i64).into()), "d={d}");
        assert_eq!(hurwitz_disconnected(&b).unwrap().value, big(enumerate(d).len() as i64), "d={d}");
    }
}

#[test]
fn empty_and_parity() {
    // three transpositions in S_2 cannot multiply to the identity
    let b = BranchData::new(2, 0, vec![], 3).unwrap();
    assert_eq!(hurwitz_disconnected(&b).unwrap().value, big(0));
    assert_eq!(hurwitz_bruteforce(&b, false).unwrap().value, big(0));
    // the trivial cover of any base
    for g in 0..=3 {
        let b = BranchData::new(1, g, vec![], 0).unwrap();
        assert_eq!(hurwitz_connected(&b).unwrap().value, big(1));
    }
}

#[test]
fn identity_class_is_invisible() {
    for d in 2..=5u32 {
        let plain = BranchData::new(d, 0, vec![], 2).unwrap();
        let marked = BranchData::new(d, 0, vec![Partition::column(d)], 2).unwrap();
        assert_eq!(hurwitz_disconnected(&plain).unwrap(), hurwitz_disconnected(&marked).unwrap());
    }
}
