use covertqft::exactalg::{factorial, BigRational};
use covertqft::partitions::{enumerate, Partition};
use covertqft::symchar::{character, character_table, class_product, class_product_by_convolution};
use proptest::prelude::*;

/// A degree in `1..=max` with two of its classes.
fn two_classes(max: u32) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max).prop_flat_map(|d| {
        let n = enumerate(d).len();
        (Just(d), 0..n, 0..n).prop_map(|(d, i, j)| {
            let ps = enumerate(d);
            (ps[i].clone(), ps[j].clone())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_match_convolution((eta, mu) in two_classes(5)) {
        let a = class_product(&eta, &mu).unwrap();
        prop_assert_eq!(&a, &class_product_by_convolution(&eta, &mu).unwrap());
        prop_assert_eq!(&a, &class_product(&mu, &eta).unwrap());
    }

    #[test]
    fn product_counts_pairs((eta, mu) in two_classes(7)) {
        // Σ_ν c_ν |C_ν| = |C_η| |C_μ|
        let v = class_product(&eta, &mu).unwrap();
        let total: BigRational = v.coeffs.iter().map(|(nu, c)| c * BigRational::from_integer(nu.class_size())).sum();
        prop_assert_eq!(total, BigRational::from_integer(eta.class_size() * mu.class_size()));
    }

    #[test]
    fn sign_twist((rho, eta) in two_classes(8)) {
        prop_assert_eq!(character(&rho.conjugate(), &eta).unwrap(), eta.sign() * character(&rho, &eta).unwrap());
    }

    #[test]
    fn table_agrees_with_single_values((rho, eta) in two_classes(7)) {
        let t = character_table(rho.size()).unwrap();
        prop_assert_eq!(t.value(&rho, &eta), character(&rho, &eta).unwrap());
    }

    #[test]
    fn column_orthogonality((a, b) in two_classes(7)) {
        let t = character_table(a.size()).unwrap();
        let s: i64 = t.rows.iter().map(|r| t.value(r, &a) * t.value(r, &b)).sum();
        let want = if a == b { a.zeta() } else { 0.into() };
        prop_assert_eq!(num_bigint::BigInt::from(s), want);
    }
}

#[test]
fn regular_character() {
    // Σ dim ρ · χ_ρ vanishes off the identity and is d! on it
    for d in 1..=8 {
        let t = character_table(d).unwrap();
        let id = Partition::column(d);
        for eta in &t.cols {
            let s: i64 = t.rows.iter().map(|r| t.value(r, &id) * t.value(r, eta)).sum();
            let want = if *eta == id { factorial(d as u64) } else { 0.into() };
            assert_eq!(num_bigint::BigInt::from(s), want, "d={d} eta={eta}");
        }
    }
}
