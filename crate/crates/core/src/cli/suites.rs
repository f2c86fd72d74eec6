use serde::Serialize;
use serde_json::{json, Value};

use super::args::Suite;
use super::Report;
use crate::error::Result;
use crate::exactalg::{factorial, fmt_rational, BigRational, GaussianRational};
use crate::hurwitz::{hurwitz_bruteforce, hurwitz_connected, hurwitz_disconnected, BranchData};
use crate::partitions::{enumerate, Partition};
use crate::symchar::{character_table, verify_orthogonality};
use crate::theoryu::{
    aspinwall_morrison, cy_cap, cy_cap_from_connected, verify_burnside, verify_cap_vectors, verify_gluing_antid,
    verify_relfin,
};

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: Value,
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

fn finish(suite: &str, checks: Vec<Check>) -> Report {
    let passed = checks.iter().all(|c| c.passed);
    let failure = checks.iter().find(|c| !c.passed).map(|c| format!("{suite}: {} {}", c.name, c.detail));
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{}  {suite}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
    }
    text.push_str(&format!("{suite}: {}\n", if passed { "PASS" } else { "FAIL" }));
    let json = json!({"suite": suite, "passed": passed, "checks": checks});
    Report { json, text, csv: None, passed, failure }
}

pub(crate) fn run_suite(s: &Suite) -> Result<Report> {
    match s {
        Suite::Relfin { d, order } => relfin(&d.map_or(vec![2, 3, 4, 5], |d| vec![d]), *order),
        Suite::Gluing { d, samples, seed } => gluing(&d.map_or((1..=4).collect(), |d| vec![d]), *samples, *seed),
        Suite::Burnside { d, g } => {
            burnside(&d.map_or((1..=8).collect(), |d| vec![d]), &g.map_or((0..=3).collect(), |g| vec![g]))
        }
        Suite::Aspinwall { dmax, order } => aspinwall(*dmax, order.unwrap_or(2 * *dmax as i64)),
        Suite::Cycap { dmax, vectors_dmax, order } => cycap(*dmax, *vectors_dmax, *order),
        Suite::Orthogonality { dmax } => orthogonality(*dmax),
        Suite::FrobeniusVsBruteforce { dmax, gmax, max_classes, smax } => {
            frobenius_vs_bruteforce(*dmax, *gmax, *max_classes, *smax)
        }
        Suite::All => all(),
    }
}

fn all() -> Result<Report> {
    let reports = vec![
        relfin(&[2, 3, 4, 5], 14)?,
        gluing(&[1, 2, 3, 4], 50, 0)?,
        burnside(&(1..=8).collect::<Vec<_>>(), &[0, 1, 2, 3])?,
        aspinwall(6, 16)?,
        cycap(6, 4, 12)?,
        orthogonality(8)?,
        frobenius_vs_bruteforce(4, 2, 3, 3)?,
    ];
    let passed = reports.iter().all(|r| r.passed);
    let failure = reports.iter().find_map(|r| r.failure.clone());
    let text: String = reports.iter().map(|r| r.text.as_str()).collect::<String>()
        + &format!("all: {}\n", if passed { "PASS" } else { "FAIL" });
    let json = json!({
        "suite": "all",
        "passed": passed,
        "suites": reports.into_iter().map(|r| r.json).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, csv: None, passed, failure })
}

fn relfin(ds: &[u32], order: i64) -> Result<Report> {
    let mut checks = Vec::new();
    for &d in ds {
        let r = verify_relfin(d, order)?;
        checks.push(check(
            format!("d={d} through u^{order}"),
            r.is_zero(),
            json!({"d": d, "order": order, "residual": r.to_string()}),
        ));
    }
    Ok(finish("relfin", checks))
}

fn gluing(ds: &[u32], samples: usize, seed: u64) -> Result<Report> {
    let mut checks = Vec::new();
    for &d in ds {
        let r = verify_gluing_antid(d, samples, seed)?;
        checks.push(check(format!("d={d}, {samples} samples"), r.passed, serde_json::to_value(&r)?));
    }
    Ok(finish("gluing", checks))
}

fn burnside(ds: &[u32], gs: &[u32]) -> Result<Report> {
    let mut checks = Vec::new();
    for &d in ds {
        for &g in gs {
            let r = verify_burnside(d, g, d <= 4)?;
            checks.push(check(
                format!("d={d} g={g}"),
                r.passed,
                json!({
                    "d": d,
                    "g": g,
                    "burnside": fmt_rational(&r.burnside),
                    "frobenius": fmt_rational(&r.frobenius),
                    "antid_at_q1": fmt_rational(&r.antid_at_q1),
                    "bruteforce": r.bruteforce.as_ref().map(fmt_rational),
                }),
            ));
        }
    }
    Ok(finish("burnside", checks))
}

fn aspinwall(dmax: u32, order: i64) -> Result<Report> {
    let vals = aspinwall_morrison(dmax, order)?;
    let checks = vals
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d = i as i64 + 1;
            let want = BigRational::new(1.into(), (d * d * d).into());
            check(format!("d={d}"), *v == want, json!({"d": d, "value": fmt_rational(v), "expected": fmt_rational(&want)}))
        })
        .collect();
    Ok(finish("aspinwall", checks))
}

fn cycap(dmax: u32, vectors_dmax: u32, order: i64) -> Result<Report> {
    let mut checks = Vec::new();
    for d in 1..=dmax {
        let mut bad = Vec::new();
        let etas = enumerate(d);
        for eta in &etas {
            if cy_cap_from_connected(eta, order)? != cy_cap(d, eta, order)?.normalized() {
                bad.push(eta.to_plus_string());
            }
        }
        checks.push(check(
            format!("exponentiation d={d}"),
            bad.is_empty(),
            json!({"d": d, "order": order, "classes": etas.len(), "mismatches": bad}),
        ));
    }
    for d in 1..=vectors_dmax {
        let bad = verify_cap_vectors(d, order)?;
        checks.push(check(format!("cap vectors d={d}"), bad.is_empty(), json!({"d": d, "order": order, "mismatches": bad})));
    }
    Ok(finish("cycap", checks))
}

fn orthogonality(dmax: u32) -> Result<Report> {
    let mut checks = Vec::new();
    for d in 1..=dmax {
        let r = verify_orthogonality(&*character_table(d)?);
        checks.push(check(format!("character orthogonality d={d}"), r.passed, serde_json::to_value(&r)?));
    }
    for d in 1..=dmax.max(10) {
        let mut bad = Vec::new();
        let mut sum = num_bigint::BigInt::from(0);
        for p in enumerate(d) {
            let dim = p.dim();
            sum += &dim * &dim;
            let at1 = p.q_dim().eval_at_q1()?;
            if at1 != GaussianRational::from(BigRational::from_integer(dim)) {
                bad.push(format!("dim_Q({p}) at Q=1 is {at1}"));
            }
            let c = p.content();
            if c != p.conjugate().n_value() as i64 - p.n_value() as i64 {
                bad.push(format!("c({p}) = {c} differs from n(conjugate) - n"));
            }
        }
        if sum != factorial(d as u64) {
            bad.push(format!("sum of squared dimensions is {sum}"));
        }
        checks.push(check(format!("partition identities d={d}"), bad.is_empty(), json!({"d": d, "failures": bad})));
    }
    let ex = Partition::new(vec![3, 2, 2, 1, 1])?;
    let conj = ex.conjugate();
    checks.push(check(
        "conjugate of 3+2+2+1+1",
        conj.parts() == [5, 3, 1],
        json!({"partition": ex, "conjugate": conj}),
    ));
    Ok(finish("orthogonality", checks))
}

/// Multisets of at most `k` partitions of `d`, in canonical order.
pub(crate) fn class_multisets(d: u32, k: usize) -> Vec<Vec<Partition>> {
    let ps = enumerate(d);
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<Partition>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (v, start) in &frontier {
            for (i, p) in ps.iter().enumerate().skip(*start) {
                let mut w = v.clone();
                w.push(p.clone());
                out.push(w.clone());
                next.push((w, i));
            }
        }
        frontier = next;
    }
    out
}

fn frobenius_vs_bruteforce(dmax: u32, gmax: u32, max_classes: usize, smax: u32) -> Result<Report> {
    let mut checks = Vec::new();
    for d in 1..=dmax {
        let mut cases = 0usize;
        let mut bad = Vec::new();
        for g in 0..=gmax {
            for classes in class_multisets(d, max_classes) {
                for s in 0..=smax {
                    let b = BranchData::new(d, g, classes.clone(), s)?;
                    cases += 1;
                    let dis = hurwitz_disconnected(&b)?.value;
                    let con = hurwitz_connected(&b)?.value;
                    let bd = hurwitz_bruteforce(&b, false)?.value;
                    let bc = hurwitz_bruteforce(&b, true)?.value;
                    if dis != bd || con != bc {
                        bad.push(json!({
                            "g": g,
                            "classes": classes,
                            "s": s,
                            "disconnected": [fmt_rational(&dis), fmt_rational(&bd)],
                            "connected": [fmt_rational(&con), fmt_rational(&bc)],
                        }));
                    }
                }
            }
        }
        checks.push(check(format!("d={d}"), bad.is_empty(), json!({"d": d, "cases": cases, "mismatches": bad})));
    }
    Ok(finish("frobenius-vs-bruteforce", checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_fails_the_suite() {
        let r = finish("demo", vec![check("ok", true, json!({})), check("bad", false, json!({"x": 1}))]);
        assert!(!r.passed);
        assert_eq!(r.failure.as_deref(), Some("demo: bad {\"x\":1}"));
        assert!(r.text.contains("FAIL  demo: bad"));
        assert_eq!(r.json["passed"], false);
    }

    #[test]
    fn multisets_are_counted_with_repetition() {
        // partitions of 3: three of them; multisets of size <= 2: 1 + 3 + 6
        assert_eq!(class_multisets(3, 2).len(), 10);
        assert_eq!(class_multisets(4, 3).len(), 1 + 5 + 15 + 35);
    }
}
