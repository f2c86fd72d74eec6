use std::collections::BTreeMap;

use serde::Serialize;

use super::{change_basis, tensor_of, Basis, CobordismSignature, Tensor};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, BigRational, Scalar};
use crate::partitions::{enumerate, Partition};
use crate::symchar::character_table;

/// Eigenvalue data of a semisimple weighted TQFT in degree `d`, together with
/// the change of basis to the class basis.
#[derive(Clone, Debug)]
pub struct SemisimpleData<S: Scalar> {
    pub d: u32,
    /// Class-basis labels, canonical order.
    pub eta_labels: Vec<Partition>,
    /// Idempotent labels, canonical order.
    pub rho_labels: Vec<Partition>,
    pub lambda: Vec<S>,
    pub mu: Vec<S>,
    pub mubar: Vec<S>,
    /// `e_ρ = Σ_η to_eta[ρ][η] e_η`.
    pub to_eta: Vec<Vec<S>>,
    /// `e_η = Σ_ρ from_eta[η][ρ] e_ρ`.
    pub from_eta: Vec<Vec<S>>,
    /// Copairing `Σ_η metric[η] e_η ⊗ e_η` in the class basis.
    pub metric: Vec<S>,
    pub metadata: BTreeMap<String, String>,
}

impl<S: Scalar> SemisimpleData<S> {
    pub fn rank(&self) -> usize {
        self.rho_labels.len()
    }

    /// Diagonal copairing in the given basis.
    pub fn copairing(&self, basis: Basis) -> Vec<S> {
        match basis {
            Basis::Eta => self.metric.clone(),
            Basis::Rho => self.lambda.clone(),
        }
    }

    /// Check that `to_eta` and `from_eta` are mutually inverse.
    pub fn check_inverse(&self) -> Result<()> {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                let mut acc = S::zero();
                for x in 0..r {
                    acc = acc.plus(&self.to_eta[a][x].times(&self.from_eta[x][b]));
                }
                let want = if a == b { S::one() } else { S::zero() };
                if acc != want {
                    return Err(Error::Singular(format!("basis change fails at ({a},{b}): {acc}")));
                }
            }
        }
        Ok(())
    }
}

/// Gauss-Jordan inverse over any scalar ring; a pivot must be invertible.
pub fn invert_matrix<S: Scalar>(m: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m.to_vec();
    let mut inv: Vec<Vec<S>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
    for col in 0..n {
        let (piv, pinv) = (col..n)
            .find_map(|r| a[r][col].try_inv().map(|x| (r, x)))
            .ok_or_else(|| Error::Singular(format!("no invertible pivot in column {col}")))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        for j in 0..n {
            a[col][j] = a[col][j].times(&pinv);
            inv[col][j] = inv[col][j].times(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].minus(&f.times(&a[col][j]));
                inv[r][j] = inv[r][j].minus(&f.times(&inv[col][j]));
            }
        }
    }
    Ok(inv)
}

/// The untwisted Dijkgraaf–Witten theory of `S_d` over a point: class sums,
/// `λ_ρ = (d!/dim ρ)²`, `μ = μ̄ = 1`.
pub fn dijkgraaf_data(d: u32) -> Result<SemisimpleData<BigRational>> {
    let table = character_table(d)?;
    let labels = enumerate(d);
    let fact = BigRational::from_integer(factorial(d as u64));
    let mut lambda = Vec::new();
    let mut to_eta = Vec::new();
    for rho in &labels {
        let dim = BigRational::from_integer(rho.dim());
        lambda.push((&fact / &dim) * (&fact / &dim));
        to_eta.push(labels.iter().map(|eta| &dim * BigRational::from_integer(table.value(rho, eta).into()) / &fact).collect());
    }
    let from_eta = labels
        .iter()
        .map(|eta| {
            let z = BigRational::from_integer(eta.zeta());
            labels
                .iter()
                .map(|rho| {
                    BigRational::from_integer(table.value(rho, eta).into()) / &z * &fact
                        / BigRational::from_integer(rho.dim())
                })
                .collect()
        })
        .collect();
    let metric = labels.iter().map(|eta| BigRational::from_integer(eta.zeta())).collect();
    let one = vec![BigRational::from_integer(1.into()); labels.len()];
    let mut metadata = BTreeMap::new();
    metadata.insert("theory".to_string(), "dijkgraaf-witten".to_string());
    Ok(SemisimpleData {
        d,
        eta_labels: labels.clone(),
        rho_labels: labels,
        lambda,
        mu: one.clone(),
        mubar: one,
        to_eta,
        from_eta,
        metric,
        metadata,
    })
}

/// Outcome of [`check_frobenius`]; each failure names a witness.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub d: u32,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Check that pants, caps and the class-basis metric of `ss` define a
/// commutative Frobenius algebra: unit, commutativity, associativity,
/// invariance of the pairing and compatibility of counit with pairing.
pub fn check_frobenius<S: Scalar>(ss: &SemisimpleData<S>) -> Result<FrobeniusReport> {
    let eta = |sig| -> Result<Tensor<S>> { change_basis(&tensor_of(sig, ss)?, ss, Basis::Eta) };
    let pants = eta(CobordismSignature::new(0, 0, 0, 2, 1))?;
    let unit = eta(CobordismSignature::new(0, 0, 0, 0, 1))?;
    let counit = eta(CobordismSignature::new(0, 0, 0, 1, 0))?;
    let r = ss.rank();
    let label = |i: usize| ss.eta_labels[i].to_plus_string();
    let c = |a: usize, b: usize, x: usize| pants.get(&[a, b, x]);
    let pairing: Vec<S> = ss
        .metric
        .iter()
        .map(|m| m.try_inv().ok_or_else(|| Error::NotInvertible(format!("metric entry {m}"))))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for a in 0..r {
        for b in 0..r {
            // Unit.
            let mut acc = S::zero();
            for x in 0..r {
                acc = acc.plus(&unit.get(&[x]).times(&c(x, a, b)));
            }
            let want = if a == b { S::one() } else { S::zero() };
            if acc != want {
                failures.push(format!("unit: 1*e_{} has e_{} coefficient {acc}", label(a), label(b)));
            }
            // Counit against pairing.
            let mut acc = S::zero();
            for x in 0..r {
                acc = acc.plus(&c(a, b, x).times(&counit.get(&[x])));
            }
            let want = if a == b { pairing[a].clone() } else { S::zero() };
            if acc != want {
                failures.push(format!("counit(e_{} e_{}) = {acc}, pairing gives {want}", label(a), label(b)));
            }
            for x in 0..r {
                if c(a, b, x) != c(b, a, x) {
                    failures.push(format!("commutativity fails for e_{} e_{}", label(a), label(b)));
                }
            }
            for cc in 0..r {
                // <ab, c> = <a, bc>
                let lhs = c(a, b, cc).times(&pairing[cc]);
                let rhs = c(b, cc, a).times(&pairing[a]);
                if lhs != rhs {
                    failures.push(format!(
                        "invariance: <e_{} e_{}, e_{}> = {lhs} but <e_{}, e_{} e_{}> = {rhs}",
                        label(a),
                        label(b),
                        label(cc),
                        label(a),
                        label(b),
                        label(cc)
                    ));
                }
                for y in 0..r {
                    let mut l = S::zero();
                    let mut rr = S::zero();
                    for x in 0..r {
                        l = l.plus(&c(a, b, x).times(&c(x, cc, y)));
                        rr = rr.plus(&c(b, cc, x).times(&c(a, x, y)));
                    }
                    if l != rr {
                        failures.push(format!(
                            "associativity fails for (e_{} e_{}) e_{} at e_{}",
                            label(a),
                            label(b),
                            label(cc),
                            label(y)
                        ));
                    }
                }
            }
        }
    }
    Ok(FrobeniusReport { d: ss.d, passed: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::hurwitz::{hurwitz_disconnected, BranchData};
    use crate::symchar::class_product;
    use crate::tqftcore::{glue, raise_index, self_glue, tensor_with_slots};

    #[test]
    fn dijkgraaf_basis_change_is_inverse() {
        for d in 1..=6 {
            dijkgraaf_data(d).unwrap().check_inverse().unwrap();
        }
    }

    #[test]
    fn generic_inverse_matches_closed_inverse() {
        let ss = dijkgraaf_data(4).unwrap();
        assert_eq!(invert_matrix(&ss.to_eta).unwrap(), ss.from_eta);
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(matches!(invert_matrix(&singular), Err(Error::Singular(_))));
    }

    #[test]
    fn dijkgraaf_is_frobenius() {
        for d in 1..=5 {
            let rep = check_frobenius(&dijkgraaf_data(d).unwrap()).unwrap();
            assert!(rep.passed, "{:?}", rep.failures);
        }
    }

    #[test]
    fn doubled_metric_entry_is_caught() {
        let mut ss = dijkgraaf_data(3).unwrap();
        ss.metric[1] = &ss.metric[1] * rat(2, 1);
        let rep = check_frobenius(&ss).unwrap();
        assert!(!rep.passed);
        assert!(rep.failures.iter().any(|f| f.contains("2+1")), "{:?}", rep.failures);
    }

    #[test]
    fn closed_surfaces_give_disconnected_hurwitz_numbers() {
        for d in 1..=5 {
            let ss = dijkgraaf_data(d).unwrap();
            for g in 0..=3 {
                let t = tensor_of(CobordismSignature::closed(g, 0, 0), &ss).unwrap();
                let h = hurwitz_disconnected(&BranchData::new(d, g, vec![], 0).unwrap()).unwrap();
                assert_eq!(t.scalar(), h.value, "d={d} g={g}");
            }
        }
    }

    #[test]
    fn pants_with_raised_output_gives_class_product() {
        let d = 4;
        let ss = dijkgraaf_data(d).unwrap();
        let pants = change_basis(&tensor_of(CobordismSignature::new(0, 0, 0, 2, 1), &ss).unwrap(), &ss, Basis::Eta)
            .unwrap();
        for (a, ea) in ss.eta_labels.iter().enumerate() {
            for (b, eb) in ss.eta_labels.iter().enumerate() {
                let prod = class_product(ea, eb).unwrap();
                for (x, ex) in ss.eta_labels.iter().enumerate() {
                    assert_eq!(pants.get(&[a, b, x]), prod.coeff(ex), "{ea} {eb} {ex}");
                }
            }
        }
    }

    #[test]
    fn gluing_is_basis_independent_and_additive() {
        let ss = dijkgraaf_data(3).unwrap();
        let p = tensor_of(CobordismSignature::new(1, 0, 0, 1, 2), &ss).unwrap();
        let q = tensor_of(CobordismSignature::new(0, 0, 0, 2, 1), &ss).unwrap();
        let g_rho = glue(&p, 1, &q, 0).unwrap();
        let pe = change_basis(&p, &ss, Basis::Eta).unwrap();
        let qe = change_basis(&q, &ss, Basis::Eta).unwrap();
        let g_eta = glue(&pe, 1, &qe, 0).unwrap();
        assert_eq!(change_basis(&g_rho, &ss, Basis::Eta).unwrap(), g_eta);
        assert_eq!(g_rho.signature(), CobordismSignature::new(1, 0, 0, 2, 2));
        let direct = tensor_with_slots(1, 0, 0, &g_rho.slots, &ss).unwrap();
        assert_eq!(g_rho, direct);
        let tr = self_glue(&g_rho, 0, 0).unwrap();
        assert_eq!(tr.signature(), CobordismSignature::new(2, 0, 0, 1, 1));
        assert_eq!(tr, tensor_of(tr.signature(), &ss).unwrap());
    }

    #[test]
    fn raising_counit_gives_unit() {
        let ss = dijkgraaf_data(4).unwrap();
        for basis in [Basis::Rho, Basis::Eta] {
            let counit = change_basis(&tensor_of(CobordismSignature::new(0, 0, 0, 1, 0), &ss).unwrap(), &ss, basis)
                .unwrap();
            let unit =
                change_basis(&tensor_of(CobordismSignature::new(0, 0, 0, 0, 1), &ss).unwrap(), &ss, basis).unwrap();
            assert_eq!(raise_index(&counit, 0, &ss).unwrap(), unit);
        }
    }

    #[test]
    fn contracting_same_variance_is_rejected() {
        let ss = dijkgraaf_data(2).unwrap();
        let a = tensor_of(CobordismSignature::new(0, 0, 0, 0, 2), &ss).unwrap();
        assert!(glue(&a, 0, &a, 0).is_err());
    }
}
