use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fulltorus::{cy_cap_antid_raised, CapSide};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, q_to_u, BigRational, GaussianRational, QRatFunc, SFactor, SLaurent, Scalar, USeries};
use crate::hurwitz::{hurwitz_disconnected, BranchData};
use crate::partitions::{enumerate, Partition};
use crate::symchar::character_table;
use crate::tqftcore::{
    change_basis, glue, lower_index, self_glue, tensor_of, Basis, CobordismSignature, SemisimpleData, Tensor,
};

/// Scalars of the anti-diagonal theory: Laurent polynomials in `s` with
/// coefficients rational in `q = Q^{1/2}`.
pub type AntidScalar = SLaurent<QRatFunc>;

/// `i^unit · s^exponent · q_part`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AntidiagValue {
    pub s_factor: SFactor,
    #[serde(serialize_with = "ser_display")]
    pub q_part: QRatFunc,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl AntidiagValue {
    pub fn new(s_factor: SFactor, q_part: QRatFunc) -> Self {
        if q_part.is_zero() {
            return Self::zero();
        }
        AntidiagValue { s_factor, q_part }
    }

    pub fn zero() -> Self {
        AntidiagValue { s_factor: SFactor::one(), q_part: QRatFunc::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.q_part.is_zero()
    }

    pub fn to_scalar(&self) -> AntidScalar {
        SLaurent::monomial(self.q_part.scale(&self.s_factor.unit_value()), self.s_factor.exponent)
    }

    /// Value at `Q = 1`, unit included.
    pub fn at_q1(&self) -> Result<GaussianRational> {
        Ok(self.q_part.eval_at_q1()? * self.s_factor.unit_value())
    }

    /// The `Q`-part expanded in `u` via `Q = e^{iu}`, unit included.
    pub fn u_series(&self, order: i64) -> Result<USeries> {
        Ok(q_to_u(&self.q_part, order)?.scale(&self.s_factor.unit_value()))
    }
}

impl fmt::Display for AntidiagValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{} * ({})", self.s_factor, self.q_part)
    }
}

fn rq(r: BigRational) -> QRatFunc {
    QRatFunc::constant(r.into())
}

fn sum_over_rho(d: u32, term: impl Fn(&Partition) -> Result<QRatFunc> + Sync) -> Result<QRatFunc> {
    let parts: Vec<QRatFunc> = enumerate(d).par_iter().map(&term).collect::<Result<_>>()?;
    Ok(parts.iter().fold(QRatFunc::zero(), |acc, x| acc.plus(x)))
}

fn closed_term(rho: &Partition, g: u32, k1: i64, k2: i64, q_sign: i64) -> Result<QRatFunc> {
    let d = rho.size();
    let fact = BigRational::from_integer(factorial(d as u64));
    let dim = BigRational::from_integer(rho.dim());
    let ratio = rq(dim.clone()).times(&rho.q_dim().inv()?);
    let genus = rq(fact / dim).pow(2 * g as i64 - 2)?;
    let q_exp = rho.n_value() as i64 * k1 + rho.conjugate().n_value() as i64 * k2;
    Ok(genus.times(&ratio.pow(k1 + k2)?).times(&QRatFunc::big_q_pow(q_sign * q_exp)))
}

fn closed_prefactor(d: u32, g: u32, k1: i64, k2: i64) -> SFactor {
    let (d, g) = (d as i64, g as i64);
    SFactor::sign(d * (g - 1 - k2)) * SFactor::s_pow(d * (2 * g - 2 - k1 - k2))
}

/// Closed anti-diagonal invariant of a genus-`g` surface at level `(k1,k2)`:
///
/// `(−1)^{d(g−1−k2)} s^{d(2g−2−k1−k2)} Σ_ρ (d!/dimρ)^{2g−2} (dimρ/dim_Qρ)^{k1+k2} Q^{−(n(ρ)k1+n(ρ′)k2)}`.
///
/// The sign of the `Q` exponent is the one forced by the eigenvalues
/// `μ_ρ ∝ Q^{n(ρ)}` read off the Calabi–Yau caps; see [`antid_closed_positive_exponent`].
pub fn antid_closed(d: u32, g: u32, k1: i64, k2: i64) -> Result<AntidiagValue> {
    if d == 0 {
        return Err(Error::invalid("antid_closed needs d >= 1"));
    }
    let q = sum_over_rho(d, |rho| closed_term(rho, g, k1, k2, -1))?;
    Ok(AntidiagValue::new(closed_prefactor(d, g, k1, k2), q))
}

/// The same sum with `Q^{+(n(ρ)k1+n(ρ′)k2)}`. It agrees with [`antid_closed`]
/// only when `k1 = k2 = 0` or `d = 1`, and does not glue with the caps.
pub fn antid_closed_positive_exponent(d: u32, g: u32, k1: i64, k2: i64) -> Result<AntidiagValue> {
    if d == 0 {
        return Err(Error::invalid("antid_closed needs d >= 1"));
    }
    let q = sum_over_rho(d, |rho| closed_term(rho, g, k1, k2, 1))?;
    Ok(AntidiagValue::new(closed_prefactor(d, g, k1, k2), q))
}

/// Degree-zero part of the anti-diagonal invariant with the given boundary
/// classes and level `(0,0)`: `(−s²)^{h̄−1}` times the disconnected Hurwitz
/// number, where `2h̄−2 = d(2g−2) + Σ(d − ℓ(η))`. Zero when that is odd.
pub fn level00_coefficient(d: u32, g: u32, classes: &[Partition]) -> Result<AntidiagValue> {
    let twice = d as i64 * (2 * g as i64 - 2) + classes.iter().map(|c| d as i64 - c.len() as i64).sum::<i64>();
    let b = BranchData::new(d, g, classes.to_vec(), 0)?;
    if twice.rem_euclid(2) != 0 {
        return Ok(AntidiagValue::zero());
    }
    let h = hurwitz_disconnected(&b)?.value;
    let e = twice / 2;
    Ok(AntidiagValue::new(SFactor::new(2 * e, 2 * e), rq(h)))
}

/// Normalization of the class basis: `e_η = α^{d−ℓ(η)} C_η`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum BasisScale {
    /// `α = i·s`
    IS,
    /// `α = s`
    S,
}

/// Prefactor of `μ̄_ρ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MubarPrefactor {
    /// `(−s)^d`
    MinusS,
    /// `s^d`
    S,
}

/// One point of the finite set of sign and exponent conventions searched by
/// [`semisimple_data_antid`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AntidConvention {
    pub basis_scale: BasisScale,
    /// `μ_ρ ∝ Q^{q_sign·n(ρ)}`.
    pub q_sign: i64,
    pub mubar_prefactor: MubarPrefactor,
    /// Exchange `n(ρ)` and `n(ρ′)` between `μ` and `μ̄`.
    pub swap_n: bool,
}

impl AntidConvention {
    pub fn candidates() -> Vec<AntidConvention> {
        let mut out = Vec::new();
        for basis_scale in [BasisScale::IS, BasisScale::S] {
            for q_sign in [1, -1] {
                for mubar_prefactor in [MubarPrefactor::MinusS, MubarPrefactor::S] {
                    for swap_n in [false, true] {
                        out.push(AntidConvention { basis_scale, q_sign, mubar_prefactor, swap_n });
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let alpha = match self.basis_scale {
            BasisScale::IS => "i*s",
            BasisScale::S => "s",
        };
        m.insert("basis".into(), format!("e_rho = (dim rho/d!) sum_eta ({alpha})^(l(eta)-d) chi_rho(eta) e_eta"));
        let (a, b) = if self.swap_n { ("n(rho')", "n(rho)") } else { ("n(rho)", "n(rho')") };
        let sgn = if self.q_sign > 0 { "" } else { "-" };
        m.insert("mu".into(), format!("s^d (dim_Q rho/dim rho) Q^({sgn}{a})"));
        let pre = match self.mubar_prefactor {
            MubarPrefactor::MinusS => "(-s)^d",
            MubarPrefactor::S => "s^d",
        };
        m.insert("mubar".into(), format!("{pre} (dim_Q rho/dim rho) Q^({sgn}{b})"));
        m.insert("lambda".into(), format!("(d!/dim rho)^2 ({alpha})^(2d)"));
        m.insert("metric".into(), "zeta(eta) (-s^2)^l(eta)".into());
        m.insert(
            "closed_formula".into(),
            "(-1)^(d(g-1-k2)) s^(d(2g-2-k1-k2)) sum_rho (d!/dim)^(2g-2) (dim/dim_Q)^(k1+k2) Q^(-(n(rho)k1+n(rho')k2))"
                .into(),
        );
        m
    }
}

fn s_mono(c: QRatFunc, k: i64) -> AntidScalar {
    SLaurent::monomial(c, k)
}

fn build_data(d: u32, conv: AntidConvention) -> Result<SemisimpleData<AntidScalar>> {
    let table = character_table(d)?;
    let labels = enumerate(d);
    let fact = BigRational::from_integer(factorial(d as u64));
    let alpha = match conv.basis_scale {
        BasisScale::IS => s_mono(QRatFunc::constant(GaussianRational::i()), 1),
        BasisScale::S => s_mono(QRatFunc::one(), 1),
    };
    let apow = |e: i64| alpha.pow(e).expect("monomial is invertible");
    let di = d as i64;
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    let mut mubar = Vec::new();
    let mut to_eta = Vec::new();
    for rho in &labels {
        let dim = BigRational::from_integer(rho.dim());
        let ratio = rq(fact.clone() / dim.clone());
        lambda.push(AntidScalar::constant(ratio.times(&ratio)).times(&apow(2 * di)));
        let qd = rho.q_dim().times(&rq(BigRational::from_integer(1.into()) / dim.clone()));
        let (na, nb) = (rho.n_value() as i64, rho.conjugate().n_value() as i64);
        let (nmu, nmubar) = if conv.swap_n { (nb, na) } else { (na, nb) };
        mu.push(s_mono(qd.times(&QRatFunc::big_q_pow(conv.q_sign * nmu)), di));
        let sign = match conv.mubar_prefactor {
            MubarPrefactor::MinusS if d % 2 == 1 => -1,
            _ => 1,
        };
        mubar.push(s_mono(qd.times(&QRatFunc::big_q_pow(conv.q_sign * nmubar)).times(&QRatFunc::from_int(sign)), di));
        to_eta.push(
            labels
                .iter()
                .map(|eta| {
                    let c = dim.clone() * BigRational::from_integer(table.value(rho, eta).into()) / fact.clone();
                    AntidScalar::constant(rq(c)).times(&apow(eta.len() as i64 - di))
                })
                .collect(),
        );
    }
    let from_eta = labels
        .iter()
        .map(|eta| {
            let z = BigRational::from_integer(eta.zeta());
            labels
                .iter()
                .map(|rho| {
                    let c = BigRational::from_integer(table.value(rho, eta).into()) / z.clone() * fact.clone()
                        / BigRational::from_integer(rho.dim());
                    AntidScalar::constant(rq(c)).times(&apow(di - eta.len() as i64))
                })
                .collect()
        })
        .collect();
    let minus_s2 = s_mono(QRatFunc::from_int(-1), 2);
    let metric = labels
        .iter()
        .map(|eta| {
            AntidScalar::constant(rq(BigRational::from_integer(eta.zeta()))).times(&minus_s2.pow(eta.len() as i64).unwrap())
        })
        .collect();
    let mut metadata = conv.describe();
    metadata.insert("theory".into(), "anti-diagonal".into());
    Ok(SemisimpleData {
        d,
        eta_labels: labels.clone(),
        rho_labels: labels,
        lambda,
        mu,
        mubar,
        to_eta,
        from_eta,
        metric,
        metadata,
    })
}

fn eta_tensor(sig: CobordismSignature, ss: &SemisimpleData<AntidScalar>) -> Result<Tensor<AntidScalar>> {
    change_basis(&tensor_of(sig, ss)?, ss, Basis::Eta)
}

/// Why a candidate convention was rejected; `None` means it passed.
fn first_violation(ss: &SemisimpleData<AntidScalar>) -> Result<Option<String>> {
    let d = ss.d;
    // Closed surfaces against the closed formula.
    for g in [0u32, 2] {
        for (k1, k2) in [(0, 0), (-1, 0), (0, -1), (1, 2)] {
            let engine = tensor_of(CobordismSignature::closed(g, k1, k2), ss)?.scalar();
            if engine != antid_closed(d, g, k1, k2)?.to_scalar() {
                return Ok(Some(format!("closed formula at g={g}, k=({k1},{k2})")));
            }
        }
    }
    // Calabi–Yau caps in exact Q-form.
    for (side, k) in [(CapSide::MinusOneZero, (-1, 0)), (CapSide::ZeroMinusOne, (0, -1))] {
        let v = eta_tensor(CobordismSignature::new(0, k.0, k.1, 0, 1), ss)?;
        for (i, eta) in ss.eta_labels.iter().enumerate() {
            if v.get(&[i]) != cy_cap_antid_raised(d, eta, side)? {
                return Ok(Some(format!("{side:?} cap at {eta}")));
            }
        }
    }
    // Degree-zero sector.
    let counit = eta_tensor(CobordismSignature::new(0, 0, 0, 1, 0), ss)?;
    for (i, eta) in ss.eta_labels.iter().enumerate() {
        if counit.get(&[i]) != level00_coefficient(d, 0, std::slice::from_ref(eta))?.to_scalar() {
            return Ok(Some(format!("counit at {eta}")));
        }
    }
    let copair = eta_tensor(CobordismSignature::new(0, 0, 0, 0, 2), ss)?;
    for (i, m) in ss.metric.iter().enumerate() {
        if copair.get(&[i, i]) != *m || copair.nnz() != ss.rank() {
            return Ok(Some("copairing is not the class-basis metric".into()));
        }
    }
    let pants = lower_index(&eta_tensor(CobordismSignature::new(0, 0, 0, 2, 1), ss)?, 2, ss)?;
    let labels = &ss.eta_labels;
    for a in 0..labels.len() {
        for b in a..labels.len() {
            for c in b..labels.len() {
                let want = level00_coefficient(d, 0, &[labels[a].clone(), labels[b].clone(), labels[c].clone()])?;
                if pants.get(&[a, b, c]) != want.to_scalar() {
                    return Ok(Some(format!("pants at ({}, {}, {})", labels[a], labels[b], labels[c])));
                }
            }
        }
    }
    // A gluing sample through the class basis.
    let t1 = eta_tensor(CobordismSignature::new(1, -1, 0, 1, 1), ss)?;
    let t2 = eta_tensor(CobordismSignature::new(0, 0, -1, 1, 1), ss)?;
    let glued = glue(&t1, 0, &t2, 0)?;
    if glued != eta_tensor(CobordismSignature::new(1, -1, -1, 1, 1), ss)? {
        return Ok(Some("gluing two tubes".into()));
    }
    let closed = self_glue(&glued, 0, 0)?.scalar();
    if closed != antid_closed(d, 2, -1, -1)?.to_scalar() {
        return Ok(Some("self-gluing".into()));
    }
    Ok(None)
}

/// Every candidate convention with its rejection reason (`None` if it passes).
pub fn convention_survey(d: u32) -> Result<Vec<(AntidConvention, Option<String>)>> {
    AntidConvention::candidates()
        .into_par_iter()
        .map(|c| Ok((c, first_violation(&build_data(d, c)?)?)))
        .collect()
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<SemisimpleData<AntidScalar>>>> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<SemisimpleData<AntidScalar>>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Largest degree for which the anti-diagonal eigenvalue package is built.
pub const MAX_ANTID_DEGREE: u32 = 7;

/// Eigenvalue package of the anti-diagonal theory in degree `d`.
///
/// The sign and exponent conventions are not taken on trust: every candidate
/// in [`AntidConvention::candidates`] is tested against the closed formula,
/// both Calabi–Yau caps, the degree-zero Hurwitz sector and a gluing sample,
/// and the first survivor is returned. The choice and the number of
/// survivors are recorded in `metadata`.
pub fn semisimple_data_antid(d: u32) -> Result<Arc<SemisimpleData<AntidScalar>>> {
    if d == 0 || d > MAX_ANTID_DEGREE {
        return Err(Error::invalid(format!("anti-diagonal data is built for 1 <= d <= {MAX_ANTID_DEGREE}")));
    }
    if let Some(ss) = cache().lock().unwrap().get(&d) {
        return Ok(ss.clone());
    }
    let survey = convention_survey(d)?;
    let survivors: Vec<AntidConvention> = survey.iter().filter(|(_, why)| why.is_none()).map(|(c, _)| *c).collect();
    let Some(&chosen) = survivors.first() else {
        let reasons: Vec<String> = survey.iter().map(|(c, why)| format!("{c:?}: {}", why.clone().unwrap_or_default())).collect();
        return Err(Error::NoConsistentConvention(format!("d = {d}: {}", reasons.join("; "))));
    };
    let mut ss = build_data(d, chosen)?;
    ss.metadata.insert("survivors".into(), survivors.len().to_string());
    ss.metadata.insert("candidates".into(), survey.len().to_string());
    ss.metadata.insert("convention".into(), serde_json::to_string(&chosen)?);
    let ss = Arc::new(ss);
    cache().lock().unwrap().insert(d, ss.clone());
    Ok(ss)
}
