use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::antid::{antid_closed, semisimple_data_antid};
use super::fulltorus::{cy_cap_side, CapSide, FullTorusSeries};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, q_to_u, BigRational, BivariatePoly, BivariateRatFunc, GaussianRational, USeries};
use crate::hurwitz::{h_series, hurwitz_bruteforce, hurwitz_disconnected, l_series, BranchData};
use crate::partitions::enumerate;
use crate::tqftcore::{change_basis, glue, self_glue, tensor_of, tensor_with_slots, Basis, CobordismSignature, Variance};

/// Residual of `Σ_{η⊢d} (−1)^{ℓ(η)} ℋ_{d,η}(u) ∏ 1/(2 sin(η_i u/2))`, which
/// vanishes for `d ≥ 2`.
pub fn verify_relfin(d: u32, order: i64) -> Result<USeries> {
    if d < 2 {
        return Err(Error::invalid("the fibre relation needs d >= 2"));
    }
    let di = d as i64;
    let mut total = USeries::zero(order);
    for eta in enumerate(d) {
        let mut term = h_series(&eta, order + di)?;
        for &k in eta.parts() {
            term = &term * &l_series(k, order + 2 * di)?;
        }
        if eta.len() % 2 == 1 {
            term = -term;
        }
        total = &total + &term;
    }
    Ok(total.truncate(order))
}

/// Genus-zero connected multiple-cover contributions: the coefficient of
/// `u^{2d−2}` in the connected part of `1 + Σ_d t^d A_d(0|−1,−1)`, for
/// `d = 1..=d_max`.
pub fn aspinwall_morrison(d_max: u32, order: i64) -> Result<Vec<BigRational>> {
    if d_max == 0 {
        return Err(Error::invalid("d_max must be at least 1"));
    }
    if order < 2 * d_max as i64 {
        return Err(Error::invalid(format!("order {order} is below 2*d_max = {}", 2 * d_max)));
    }
    let mut z: Vec<USeries> = vec![USeries::one().truncate(order)];
    for d in 1..=d_max {
        let v = antid_closed(d, 0, -1, -1)?;
        if v.s_factor.exponent != 0 {
            return Err(Error::Verification(format!("A_{d}(0|-1,-1) depends on s")));
        }
        z.push(v.u_series(order)?);
    }
    // log Z via d Z_d = Σ_{k=1}^{d} k F_k Z_{d−k}.
    let mut f: Vec<USeries> = vec![USeries::zero(order)];
    let mut out = Vec::new();
    for d in 1..=d_max as usize {
        let mut acc = USeries::zero(order);
        for k in 1..d {
            acc = &acc + &(&f[k] * &z[d - k]).scale(&GaussianRational::from_int(k as i64));
        }
        let fd = &z[d] - &acc.scale(&BigRational::new(1.into(), (d as i64).into()).into());
        let c = fd.coeff(2 * d as i64 - 2);
        if !Zero::is_zero(&c.im) {
            return Err(Error::Verification(format!("degree {d} coefficient {c} is not real")));
        }
        out.push(c.re.clone());
        f.push(fd);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideReport {
    pub d: u32,
    pub g: u32,
    /// `Σ_ρ (d!/dim ρ)^{2g−2}`.
    #[serde(serialize_with = "ser_rat")]
    pub burnside: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub frobenius: BigRational,
    /// Closed anti-diagonal invariant at `Q = 1`, prefactor removed.
    #[serde(serialize_with = "ser_rat")]
    pub antid_at_q1: BigRational,
    #[serde(serialize_with = "ser_opt_rat")]
    pub bruteforce: Option<BigRational>,
    pub passed: bool,
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactalg::fmt_rational(v))
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => ser_rat(r, s),
        None => s.serialize_none(),
    }
}

/// Compare Burnside's formula, the Frobenius character sum, the `Q = 1`
/// limit of the closed formula and, when asked, direct enumeration.
pub fn verify_burnside(d: u32, g: u32, bruteforce: bool) -> Result<BurnsideReport> {
    let fact = BigRational::from_integer(factorial(d as u64));
    let mut burnside = <BigRational as Zero>::zero();
    for rho in enumerate(d) {
        let r = &fact / BigRational::from_integer(rho.dim());
        burnside += r.pow(2 * g as i32 - 2);
    }
    let b = BranchData::new(d, g, vec![], 0)?;
    let frobenius = hurwitz_disconnected(&b)?.value;
    let at1 = antid_closed(d, g, 0, 0)?.q_part.eval_at_q1()?;
    if !Zero::is_zero(&at1.im) {
        return Err(Error::Verification(format!("Q = 1 value {at1} is not real")));
    }
    let antid_at_q1 = at1.re;
    let brute = if bruteforce { Some(hurwitz_bruteforce(&b, false)?.value) } else { None };
    let passed = frobenius == burnside && antid_at_q1 == burnside && brute.as_ref().is_none_or(|x| *x == burnside);
    Ok(BurnsideReport { d, g, burnside, frobenius, antid_at_q1, bruteforce: brute, passed })
}

/// Compare the anti-diagonal expansion of both Calabi–Yau caps, with raised
/// index, against the cap vectors `Σ μ_ρ e_ρ` and `Σ μ̄_ρ e_ρ` of the
/// semisimple data written in the class basis. Returns the mismatches.
pub fn verify_cap_vectors(d: u32, order: i64) -> Result<Vec<String>> {
    let ss = semisimple_data_antid(d)?;
    let mut failures = Vec::new();
    for (side, (k1, k2)) in [(CapSide::MinusOneZero, (-1, 0)), (CapSide::ZeroMinusOne, (0, -1))] {
        let v = change_basis(&tensor_of(CobordismSignature::new(0, k1, k2, 0, 1), &ss)?, &ss, Basis::Eta)?;
        for (i, eta) in ss.eta_labels.iter().enumerate() {
            let cap = cy_cap_side(d, eta, side, order)?;
            let l = eta.len() as u32;
            let metric = BivariateRatFunc::from_poly(BivariatePoly::monomial(BigRational::from_integer(eta.zeta()), l, l));
            let raised = FullTorusSeries::new(&cap.s_part * &metric, cap.u_part);
            let spec = raised.antidiagonal()?;
            let entry = v.get(&[i]);
            let powers_match = entry.terms().map(|(k, _)| k).collect::<Vec<_>>()
                == spec.iter().filter(|(_, u)| !u.is_zero()).map(|(k, _)| *k).collect::<Vec<_>>();
            if !powers_match {
                failures.push(format!("{side:?} d={d} {eta}: s-powers differ ({entry})"));
                continue;
            }
            for (k, u) in spec {
                let from_engine = q_to_u(&entry.coeff(k), order)?;
                if !from_engine.agrees_with(&u) {
                    failures.push(format!("{side:?} d={d} {eta}: s^{k} coefficient {from_engine} vs {u}"));
                }
            }
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingReport {
    pub d: u32,
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn random_slots(rng: &mut StdRng, m: usize, n: usize) -> Vec<Variance> {
    let mut s = vec![Variance::Lower; m];
    s.extend(vec![Variance::Upper; n]);
    s.shuffle(rng);
    s
}

/// Random gluings of anti-diagonal tensors in the class basis: two-piece
/// gluing, self-gluing and, for closed results, the closed formula.
pub fn verify_gluing_antid(d: u32, samples: usize, seed: u64) -> Result<GluingReport> {
    let ss = semisimple_data_antid(d)?;
    let mut rng = StdRng::seed_from_u64(seed ^ (d as u64) << 32);
    let mut failures = Vec::new();
    let mut checks = 0;
    let eta = |t| change_basis(&t, &ss, Basis::Eta);
    for _ in 0..samples {
        let (g1, g2) = (rng.gen_range(0..=1u32), rng.gen_range(0..=1u32));
        let k: [i64; 4] = [0; 4].map(|_| rng.gen_range(-1..=1));
        let (m1, n1) = (rng.gen_range(0..=1usize), rng.gen_range(1..=2usize));
        let (m2, n2) = (rng.gen_range(1..=2usize), rng.gen_range(0..=1usize));
        let s1 = random_slots(&mut rng, m1, n1);
        let s2 = random_slots(&mut rng, m2, n2);
        let t1 = eta(tensor_with_slots(g1, k[0], k[1], &s1, &ss)?)?;
        let t2 = eta(tensor_with_slots(g2, k[2], k[3], &s2, &ss)?)?;
        let (o, i) = (rng.gen_range(0..n1), rng.gen_range(0..m2));
        let glued = glue(&t1, o, &t2, i)?;
        let tuple = format!("g=({g1},{g2}) k=({},{})+({},{}) slots {s1:?} {s2:?} glue out {o} to in {i}", k[0], k[1], k[2], k[3]);
        let want = eta(tensor_with_slots(g1 + g2, k[0] + k[2], k[1] + k[3], &glued.slots, &ss)?)?;
        checks += 1;
        if glued != want {
            failures.push(format!("gluing {tuple}"));
            continue;
        }
        let sig = glued.signature();
        let mut last = glued;
        if sig.m > 0 && sig.n > 0 {
            let (a, b) = (rng.gen_range(0..sig.n), rng.gen_range(0..sig.m));
            let tr = self_glue(&last, a, b)?;
            let want = eta(tensor_with_slots(sig.g + 1, sig.k1, sig.k2, &tr.slots, &ss)?)?;
            checks += 1;
            if tr != want {
                failures.push(format!("self-gluing after {tuple}"));
                continue;
            }
            last = tr;
        }
        if last.slots.is_empty() {
            let s = last.signature();
            checks += 1;
            if last.scalar() != antid_closed(d, s.g, s.k1, s.k2)?.to_scalar() {
                failures.push(format!("closed value after {tuple}"));
            }
        }
    }
    Ok(GluingReport { d, samples, checks, passed: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn relfin_small() {
        for d in 2..=4 {
            assert!(verify_relfin(d, 10).unwrap().is_zero(), "d={d}");
        }
        assert!(verify_relfin(1, 10).is_err());
    }

    #[test]
    fn aspinwall_morrison_low_degrees() {
        let v = aspinwall_morrison(3, 8).unwrap();
        assert_eq!(v, vec![rat(1, 1), rat(1, 8), rat(1, 27)]);
        assert!(aspinwall_morrison(4, 6).is_err());
    }

    #[test]
    fn burnside_small() {
        for d in 1..=3 {
            for g in 0..=2 {
                let r = verify_burnside(d, g, true).unwrap();
                assert!(r.passed, "{r:?}");
            }
        }
        assert_eq!(verify_burnside(3, 1, false).unwrap().burnside, rat(3, 1));
    }

    #[test]
    fn caps_match_vectors() {
        for d in 1..=3 {
            let f = verify_cap_vectors(d, 8).unwrap();
            assert!(f.is_empty(), "{f:?}");
        }
    }

    #[test]
    fn gluing_sample() {
        let r = verify_gluing_antid(3, 10, 7).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert!(r.checks >= 10);
    }
}
