use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::Serialize;

use super::character_table;
use super::perm;
use crate::error::{Error, Result};
use crate::exactalg::{factorial, fmt_rational, BigRational};
use crate::partitions::{enumerate, Partition};

/// Element of the class algebra in the basis of class sums `C_η`
/// (the sum of all permutations of cycle type η).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassVector {
    pub d: u32,
    pub coeffs: BTreeMap<Partition, BigRational>,
}

impl ClassVector {
    pub fn zero(d: u32) -> Self {
        ClassVector { d, coeffs: BTreeMap::new() }
    }

    pub fn basis(eta: &Partition) -> Self {
        let mut v = Self::zero(eta.size());
        v.add_term(eta.clone(), BigRational::from_integer(1.into()));
        v
    }

    /// The identity class `C_(1^d)`, the unit of the algebra.
    pub fn identity(d: u32) -> Self {
        Self::basis(&Partition::column(d))
    }

    pub fn coeff(&self, eta: &Partition) -> BigRational {
        self.coeffs.get(eta).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<Partition> {
        self.coeffs.keys().cloned().collect()
    }

    fn add_term(&mut self, eta: Partition, c: BigRational) {
        let e = self.coeffs.entry(eta.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&eta);
        }
    }

    pub fn plus(&self, o: &ClassVector) -> ClassVector {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> ClassVector {
        let mut out = Self::zero(self.d);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Product in the class algebra, extended bilinearly.
    pub fn multiply(&self, o: &ClassVector) -> Result<ClassVector> {
        if self.d != o.d {
            return Err(Error::DegreeMismatch(format!("class vectors of degree {} and {}", self.d, o.d)));
        }
        let mut out = Self::zero(self.d);
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                out = out.plus(&class_product(a, b)?.scale(&(x * y)));
            }
        }
        Ok(out)
    }
}

/// Serialised as `{"2+1": "3/2", ...}`.
impl Serialize for ClassVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, v) in &self.coeffs {
            m.serialize_entry(&k.to_plus_string(), &fmt_rational(v))?;
        }
        m.end()
    }
}

/// `C_η · C_μ = Σ_ν c^ν C_ν` with
/// `c^ν = |C_η||C_μ|/d! · Σ_ρ χ_ρ(η) χ_ρ(μ) χ_ρ(ν) / dim ρ`.
pub fn class_product(eta: &Partition, mu: &Partition) -> Result<ClassVector> {
    let d = eta.size();
    if mu.size() != d {
        return Err(Error::DegreeMismatch(format!("class product of {eta} and {mu}")));
    }
    let t = character_table(d)?;
    let (ie, im) = (t.col_index(eta).unwrap(), t.col_index(mu).unwrap());
    let dims: Vec<BigInt> = t.rows.iter().map(|r| r.dim()).collect();
    let pre = BigRational::new(eta.class_size() * mu.class_size(), factorial(d as u64));
    let mut out = ClassVector::zero(d);
    for (k, nu) in t.cols.iter().enumerate() {
        let s: BigRational = t
            .entries
            .iter()
            .zip(&dims)
            .map(|(row, dim)| BigRational::new(BigInt::from(row[ie] * row[im] * row[k]), dim.clone()))
            .sum();
        out.add_term(nu.clone(), &pre * s);
    }
    Ok(out)
}

/// The same product by direct multiplication of permutations; `d <= 6`.
pub fn class_product_by_convolution(eta: &Partition, mu: &Partition) -> Result<ClassVector> {
    let d = eta.size();
    if mu.size() != d {
        return Err(Error::DegreeMismatch(format!("class product of {eta} and {mu}")));
    }
    if d > 6 {
        return Err(Error::OracleBoundExceeded(format!("convolution oracle supports d <= 6, got {d}")));
    }
    let all = perm::all(d as usize);
    let a: Vec<_> = all.iter().filter(|p| perm::cycle_type(p) == *eta).collect();
    let b: Vec<_> = all.iter().filter(|p| perm::cycle_type(p) == *mu).collect();
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for x in &a {
        for y in &b {
            *counts.entry(perm::cycle_type(&perm::compose(x, y))).or_insert(0) += 1;
        }
    }
    let mut out = ClassVector::zero(d);
    for nu in enumerate(d) {
        if let Some(&n) = counts.get(&nu) {
            out.add_term(nu.clone(), BigRational::new(BigInt::from(n), nu.class_size()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn identity_class_is_unit() {
        for mu in enumerate(4) {
            assert_eq!(class_product(&Partition::column(4), &mu).unwrap(), ClassVector::basis(&mu));
        }
    }

    #[test]
    fn transposition_squares_to_identity_in_s2() {
        assert_eq!(class_product(&p("2"), &p("2")).unwrap(), ClassVector::identity(2));
    }

    #[test]
    fn three_cycles_in_s3() {
        let v = class_product(&p("3"), &p("3")).unwrap();
        assert_eq!(v.support(), vec![p("3"), p("1+1+1")]);
        assert_eq!(v.coeff(&p("1+1+1")), BigRational::from_integer(2.into()));
        assert_eq!(v.coeff(&p("3")), BigRational::from_integer(1.into()));
    }

    #[test]
    fn characters_agree_with_convolution() {
        for d in 1..=4 {
            for a in enumerate(d) {
                for b in enumerate(d) {
                    assert_eq!(class_product(&a, &b).unwrap(), class_product_by_convolution(&a, &b).unwrap());
                }
            }
        }
    }
}
