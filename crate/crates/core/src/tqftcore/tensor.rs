use std::collections::BTreeMap;

use super::{Basis, CobordismSignature, SemisimpleData, Variance};
use crate::error::{Error, Result};
use crate::exactalg::Scalar;

/// Sparse tensor over a scalar ring with one index per boundary circle.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S: Scalar> {
    pub d: u32,
    /// Size of the basis each index ranges over.
    pub rank: usize,
    pub basis: Basis,
    pub genus: u32,
    pub k1: i64,
    pub k2: i64,
    pub slots: Vec<Variance>,
    entries: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zero(d: u32, rank: usize, basis: Basis, slots: Vec<Variance>) -> Self {
        Tensor { d, rank, basis, genus: 0, k1: 0, k2: 0, slots, entries: BTreeMap::new() }
    }

    pub fn get(&self, idx: &[usize]) -> S {
        self.entries.get(idx).cloned().unwrap_or_else(S::zero)
    }

    /// Add `v` to the entry at `idx`.
    pub fn add_at(&mut self, idx: Vec<usize>, v: S) {
        if v.is_zero() {
            return;
        }
        let next = match self.entries.get(&idx) {
            Some(old) => old.plus(&v),
            None => v,
        };
        if next.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, next);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn signature(&self) -> CobordismSignature {
        let m = self.slots.iter().filter(|v| **v == Variance::Lower).count();
        CobordismSignature::new(self.genus, self.k1, self.k2, m, self.slots.len() - m)
    }

    /// Value of a tensor with no slots.
    pub fn scalar(&self) -> S {
        self.get(&[])
    }

    /// True when every nonzero entry has all indices equal.
    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|k| k.windows(2).all(|w| w[0] == w[1]))
    }

    /// Position of the `i`-th slot (0-based) of the given variance.
    pub fn slot_of(&self, var: Variance, i: usize) -> Option<usize> {
        self.slots.iter().enumerate().filter(|(_, v)| **v == var).nth(i).map(|(p, _)| p)
    }

    fn map_slot(&self, slot: usize, matrix: &[Vec<S>]) -> Tensor<S> {
        let mut out = Tensor { entries: BTreeMap::new(), ..self.clone() };
        for (idx, v) in &self.entries {
            let i = idx[slot];
            for (j, a) in matrix[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut nidx = idx.clone();
                nidx[slot] = j;
                out.add_at(nidx, v.times(a));
            }
        }
        out
    }

    fn scale_slot(&self, slot: usize, factors: &[S]) -> Tensor<S> {
        let mut out = Tensor { entries: BTreeMap::new(), ..self.clone() };
        for (idx, v) in &self.entries {
            out.add_at(idx.clone(), v.times(&factors[idx[slot]]));
        }
        out
    }
}

fn eigen_power<S: Scalar>(x: &S, e: i64, what: &str) -> Result<S> {
    x.pow(e).ok_or_else(|| Error::NotInvertible(format!("{what} = {x} raised to {e}")))
}

/// Diagonal tensor `Σ_ρ λ^{g+n−1} μ^{−k1} μ̄^{−k2}` in the semisimple basis,
/// inputs first, then outputs.
pub fn tensor_of<S: Scalar>(sig: CobordismSignature, ss: &SemisimpleData<S>) -> Result<Tensor<S>> {
    let mut slots = vec![Variance::Lower; sig.m];
    slots.extend(vec![Variance::Upper; sig.n]);
    tensor_with_slots(sig.g, sig.k1, sig.k2, &slots, ss)
}

/// As [`tensor_of`] with an arbitrary order of input and output slots.
pub fn tensor_with_slots<S: Scalar>(
    g: u32,
    k1: i64,
    k2: i64,
    slots: &[Variance],
    ss: &SemisimpleData<S>,
) -> Result<Tensor<S>> {
    let n = slots.iter().filter(|v| **v == Variance::Upper).count() as i64;
    let mut t = Tensor::zero(ss.d, ss.rank(), Basis::Rho, slots.to_vec());
    t.genus = g;
    t.k1 = k1;
    t.k2 = k2;
    for r in 0..ss.rank() {
        let v = eigen_power(&ss.lambda[r], g as i64 + n - 1, "lambda")?
            .times(&eigen_power(&ss.mu[r], -k1, "mu")?)
            .times(&eigen_power(&ss.mubar[r], -k2, "mubar")?);
        let idx = if slots.is_empty() { Vec::new() } else { vec![r; slots.len()] };
        t.add_at(idx, v);
    }
    Ok(t)
}

/// Re-express a tensor in the other basis. Upper indices transform with
/// `to_eta`, lower ones with its inverse.
pub fn change_basis<S: Scalar>(t: &Tensor<S>, ss: &SemisimpleData<S>, target: Basis) -> Result<Tensor<S>> {
    if t.basis == target {
        return Ok(t.clone());
    }
    if t.rank != ss.rank() {
        return Err(Error::DegreeMismatch(format!("tensor rank {} vs data rank {}", t.rank, ss.rank())));
    }
    // Indexed [old][new]: v^η = Σ_ρ v^ρ to_eta[ρ][η], ω_η = Σ_ρ from_eta[η][ρ] ω_ρ.
    let (upper, lower): (Vec<Vec<S>>, Vec<Vec<S>>) = match target {
        Basis::Eta => (ss.to_eta.clone(), transpose(&ss.from_eta)),
        Basis::Rho => (ss.from_eta.clone(), transpose(&ss.to_eta)),
    };
    let mut out = t.clone();
    for (slot, var) in t.slots.iter().enumerate() {
        out = match var {
            Variance::Upper => out.map_slot(slot, &upper),
            Variance::Lower => out.map_slot(slot, &lower),
        };
    }
    out.basis = target;
    Ok(out)
}

fn transpose<S: Scalar>(m: &[Vec<S>]) -> Vec<Vec<S>> {
    (0..m.len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Contract slot `a` of `t1` with slot `b` of `t2`; one must be upper and the
/// other lower.
fn contract<S: Scalar>(t1: &Tensor<S>, a: usize, t2: &Tensor<S>, b: usize) -> Result<Tensor<S>> {
    if t1.basis != t2.basis || t1.rank != t2.rank {
        return Err(Error::DegreeMismatch("gluing tensors in different bases or degrees".into()));
    }
    if t1.slots[a] == t2.slots[b] {
        return Err(Error::Variance(
            "cannot contract two indices of the same variance; raise or lower one first".into(),
        ));
    }
    let mut slots: Vec<Variance> = t1.slots.clone();
    slots.remove(a);
    let mut s2 = t2.slots.clone();
    s2.remove(b);
    slots.extend(s2);
    let mut out = Tensor::zero(t1.d, t1.rank, t1.basis, slots);
    out.genus = t1.genus + t2.genus;
    out.k1 = t1.k1 + t2.k1;
    out.k2 = t1.k2 + t2.k2;
    let mut by_index: BTreeMap<usize, Vec<(&Vec<usize>, &S)>> = BTreeMap::new();
    for (idx, v) in &t2.entries {
        by_index.entry(idx[b]).or_default().push((idx, v));
    }
    for (i1, v1) in &t1.entries {
        let Some(partners) = by_index.get(&i1[a]) else { continue };
        for (i2, v2) in partners {
            let mut idx: Vec<usize> = i1.clone();
            idx.remove(a);
            let mut rest = (*i2).clone();
            rest.remove(b);
            idx.extend(rest);
            out.add_at(idx, v1.times(v2));
        }
    }
    Ok(out)
}

/// Glue output number `out_idx` of `t1` to input number `in_idx` of `t2`
/// (both 0-based among slots of that kind). Genus and levels add.
pub fn glue<S: Scalar>(t1: &Tensor<S>, out_idx: usize, t2: &Tensor<S>, in_idx: usize) -> Result<Tensor<S>> {
    let a = t1
        .slot_of(Variance::Upper, out_idx)
        .ok_or_else(|| Error::invalid(format!("no output number {} to glue", out_idx + 1)))?;
    let b = t2
        .slot_of(Variance::Lower, in_idx)
        .ok_or_else(|| Error::invalid(format!("no input number {} to glue", in_idx + 1)))?;
    contract(t1, a, t2, b)
}

/// Glue an output of `t` to one of its own inputs; genus grows by one.
pub fn self_glue<S: Scalar>(t: &Tensor<S>, out_idx: usize, in_idx: usize) -> Result<Tensor<S>> {
    let a = t
        .slot_of(Variance::Upper, out_idx)
        .ok_or_else(|| Error::invalid(format!("no output number {} to glue", out_idx + 1)))?;
    let b = t
        .slot_of(Variance::Lower, in_idx)
        .ok_or_else(|| Error::invalid(format!("no input number {} to glue", in_idx + 1)))?;
    let slots: Vec<Variance> =
        t.slots.iter().enumerate().filter(|(p, _)| *p != a && *p != b).map(|(_, v)| *v).collect();
    let mut out = Tensor::zero(t.d, t.rank, t.basis, slots);
    out.genus = t.genus + 1;
    out.k1 = t.k1;
    out.k2 = t.k2;
    for (idx, v) in &t.entries {
        if idx[a] != idx[b] {
            continue;
        }
        let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != a && *p != b).map(|(_, x)| *x).collect();
        out.add_at(rest, v.clone());
    }
    Ok(out)
}

/// Turn the lower slot `slot` into an upper one using the copairing.
pub fn raise_index<S: Scalar>(t: &Tensor<S>, slot: usize, ss: &SemisimpleData<S>) -> Result<Tensor<S>> {
    if t.slots.get(slot) != Some(&Variance::Lower) {
        return Err(Error::Variance(format!("slot {slot} is not a lower index")));
    }
    let mut out = t.scale_slot(slot, &ss.copairing(t.basis));
    out.slots[slot] = Variance::Upper;
    Ok(out)
}

/// Turn the upper slot `slot` into a lower one using the pairing.
pub fn lower_index<S: Scalar>(t: &Tensor<S>, slot: usize, ss: &SemisimpleData<S>) -> Result<Tensor<S>> {
    if t.slots.get(slot) != Some(&Variance::Upper) {
        return Err(Error::Variance(format!("slot {slot} is not an upper index")));
    }
    let inv: Vec<S> = ss
        .copairing(t.basis)
        .iter()
        .map(|c| c.try_inv().ok_or_else(|| Error::NotInvertible(format!("metric entry {c}"))))
        .collect::<Result<_>>()?;
    let mut out = t.scale_slot(slot, &inv);
    out.slots[slot] = Variance::Lower;
    Ok(out)
}
