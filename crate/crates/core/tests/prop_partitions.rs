use covertqft::exactalg::{factorial, BigRational, GaussianRational};
use covertqft::partitions::{enumerate, Partition};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=6, 0..7).prop_map(|v| Partition::new(v).unwrap())
}

/// Partition counts from Euler's pentagonal recurrence.
fn euler_counts(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p
}

#[test]
fn enumeration_counts_and_order() {
    let p = euler_counts(16);
    for d in 0..=16u32 {
        let ps = enumerate(d);
        assert_eq!(ps.len() as i64, p[d as usize], "d={d}");
        assert!(ps.windows(2).all(|w| w[0] < w[1]), "d={d} not strictly increasing");
        assert!(ps.iter().all(|x| x.size() == d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(c.size(), p.size());
        prop_assert_eq!(c.conjugate(), p.clone());
        prop_assert_eq!(c.len() as u32, p.parts().first().copied().unwrap_or(0));
    }

    #[test]
    fn text_forms_round_trip(p in partition()) {
        prop_assert_eq!(Partition::parse(&p.to_plus_string()).unwrap(), p.clone());
        prop_assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn content_and_n(p in partition()) {
        prop_assert_eq!(p.content(), p.conjugate().n_value() as i64 - p.n_value() as i64);
        // hooks are conjugation invariant as a multiset
        let mut a = p.hooklengths();
        let mut b = p.conjugate().hooklengths();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dimension_facts(p in partition()) {
        let d = p.size();
        prop_assert_eq!(p.dim(), p.conjugate().dim());
        let at1 = p.q_dim().eval_at_q1().unwrap();
        prop_assert_eq!(at1, GaussianRational::from(BigRational::from_integer(p.dim())));
        // d! / dim is an integer: the product of hooks
        let hooks: num_bigint::BigInt = p.hooklengths().iter().map(|&h| num_bigint::BigInt::from(h)).product();
        prop_assert_eq!(factorial(d as u64), &hooks * p.dim());
    }

    #[test]
    fn centralizer_times_class_is_d_factorial(p in partition()) {
        prop_assert_eq!(p.zeta() * p.class_size(), factorial(p.size() as u64));
    }
}
