use covertqft::exactalg::{
    fmt_rational, parse_rational, q_to_u, BigRational, GaussianRational, QPoly, QRatFunc, USeries,
};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn poly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(gauss(), 0..max_len).prop_map(QPoly::new)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = QPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = QRatFunc> {
    (nonzero_poly(4), nonzero_poly(4), -3i64..=3)
        .prop_filter_map("denominator nonzero", |(n, d, k)| QRatFunc::new(n, d, k).ok())
}

/// A series in `u` whose constant term is nonzero.
fn unit_series(order: i64) -> impl Strategy<Value = USeries> {
    (gauss().prop_filter("nonzero", |c| !c.is_zero()), prop::collection::vec(gauss(), 0..6))
        .prop_map(move |(c0, rest)| {
            let mut coeffs = vec![c0];
            coeffs.extend(rest);
            USeries::from_coeffs(0, coeffs, order)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn gaussian_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
        }
    }

    #[test]
    fn polynomial_division(a in poly(7), b in nonzero_poly(4)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().is_none_or(|dr| dr < b.degree().unwrap()));
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(5), b in nonzero_poly(5), c in nonzero_poly(3)) {
        let (x, y) = (&a * &c, &b * &c);
        let g = QPoly::gcd(&x, &y);
        prop_assert!(x.divrem(&g).unwrap().1.is_zero());
        prop_assert!(y.divrem(&g).unwrap().1.is_zero());
        // the common factor survives
        prop_assert!(g.divrem(&c.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn ratfunc_field_laws(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&f * &g, &g * &f);
        if !f.is_zero() {
            prop_assert_eq!(&f * &f.inv().unwrap(), QRatFunc::one());
        }
    }

    #[test]
    fn u_expansion_is_a_homomorphism(f in ratfunc(), g in ratfunc()) {
        let order = 6;
        let (Ok(a), Ok(b)) = (q_to_u(&f, order), q_to_u(&g, order)) else {
            // pole at u = 0
            return Ok(());
        };
        if let Ok(ab) = q_to_u(&(&f * &g), order) {
            prop_assert!(ab.agrees_with(&(&a * &b)));
        }
        if let Ok(s) = q_to_u(&(&f + &g), order) {
            prop_assert!(s.agrees_with(&(&a + &b)));
        }
    }

    #[test]
    fn series_inverse_and_powers(a in unit_series(8), b in unit_series(8)) {
        let one = USeries::one().truncate(8);
        prop_assert!((&a * &a.inv().unwrap()).agrees_with(&one));
        prop_assert!((&a * &b).agrees_with(&(&b * &a)));
        prop_assert!(a.pow(3).unwrap().agrees_with(&(&(&a * &a) * &a)));
        prop_assert!(a.pow(-2).unwrap().agrees_with(&a.inv().unwrap().pow(2).unwrap()));
    }

    #[test]
    fn exp_log_inverse(rest in prop::collection::vec(small_rat(), 1..5)) {
        // series with constant term 1
        let mut c = vec![BigRational::from_integer(1.into())];
        c.extend(rest);
        let a = USeries::from_rationals(0, c, 7);
        prop_assert!(a.log().unwrap().exp().unwrap().agrees_with(&a));
    }
}
