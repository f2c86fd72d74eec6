use covertqft::exactalg::{rat, BigRational};
use covertqft::theoryu::semisimple_data_antid;
use covertqft::tqftcore::{
    change_basis, check_frobenius, check_functoriality, dijkgraaf_data, evaluate, parse_cobordism, tensor_of, Basis,
    CobordismSignature,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random well-formed cobordism text with its (inputs, outputs) counts,
/// keeping at most `max_b` boundary circles at every stage.
fn random_expr(rng: &mut StdRng, depth: u32, max_b: usize) -> (String, usize, usize) {
    let lv = |rng: &mut StdRng| format!("@({},{})", rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => (format!("cap(-){}", lv(rng)), 1, 0),
            1 => (format!("cap(+){}", lv(rng)), 0, 1),
            2 => (format!("cyl{}", lv(rng)), 1, 1),
            _ => {
                let signs: Vec<bool> = (0..3).map(|_| rng.gen_bool(0.5)).collect();
                let n = signs.iter().filter(|s| **s).count();
                let body: String = signs.iter().map(|s| if *s { '+' } else { '-' }).collect();
                (format!("pants({body}){}", lv(rng)), 3 - n, n)
            }
        };
    }
    for _ in 0..8 {
        let (a, m1, n1) = random_expr(rng, depth - 1, max_b);
        if rng.gen_bool(0.3) {
            if m1 > 0 && n1 > 0 {
                let (i, j) = (rng.gen_range(1..=n1), rng.gen_range(1..=m1));
                return (format!("selfglue({a}, {i}, {j})"), m1 - 1, n1 - 1);
            }
            continue;
        }
        let (b, m2, n2) = random_expr(rng, depth - 1, max_b);
        if n1 > 0 && m2 > 0 && m1 + m2 + n1 + n2 - 2 <= max_b {
            let (i, j) = (rng.gen_range(1..=n1), rng.gen_range(1..=m2));
            return (format!("glue({a}, {i}, {b}, {j})"), m1 + m2 - 1, n1 + n2 - 1);
        }
    }
    (format!("cyl{}", lv(rng)), 1, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_cobordisms_round_trip_and_glue(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (text, m, n) = random_expr(&mut rng, 3, 4);
        let e = parse_cobordism(&text).unwrap();
        prop_assert_eq!(e.signature().m, m, "{}", text);
        prop_assert_eq!(e.signature().n, n, "{}", text);
        let printed = e.print();
        prop_assert_eq!(parse_cobordism(&printed).unwrap(), e.clone());
        prop_assert!(check_functoriality(&e, &dijkgraaf_data(3).unwrap()).unwrap(), "{}", text);
        prop_assert!(check_functoriality(&e, &semisimple_data_antid(2).unwrap()).unwrap(), "{}", text);
    }

    #[test]
    fn closed_values_are_basis_free(g in 0u32..3, d in 1u32..5) {
        let ss = dijkgraaf_data(d).unwrap();
        let t = tensor_of(CobordismSignature::closed(g, 0, 0), &ss).unwrap();
        let a = change_basis(&t, &ss, Basis::Eta).unwrap().scalar();
        let b = change_basis(&t, &ss, Basis::Rho).unwrap().scalar();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn degree_zero_theories_are_frobenius() {
    for d in 1..=5 {
        let r = check_frobenius(&dijkgraaf_data(d).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn torus_counts_classes() {
    // a torus in the degree-0 theory counts commuting pairs / d!, i.e. p(d)
    for (d, p) in [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7)] {
        let ss = dijkgraaf_data(d).unwrap();
        let t = evaluate(&parse_cobordism("selfglue(cyl@(0,0), 1, 1)").unwrap(), &ss, Basis::Eta).unwrap();
        let want: BigRational = rat(p, 1);
        assert_eq!(t.scalar(), want);
    }
}
