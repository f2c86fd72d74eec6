use super::{hurwitz_connected, BranchData};
use crate::error::Result;
use crate::exactalg::{factorial, sin_half, BigRational, GaussianRational, USeries};
use crate::partitions::Partition;

/// `Σ_{h≥0} (−1)^h H_d^h(η)/(2h+d+ℓ−2)! · u^{2h+d+ℓ−2}` with connected,
/// base-genus-0 Hurwitz numbers having one fibre η and the rest simple.
pub fn h_series(eta: &Partition, order: i64) -> Result<USeries> {
    let d = eta.size();
    let base = d as i64 + eta.len() as i64 - 2;
    let mut coeffs = Vec::new();
    let mut h = 0i64;
    while base + 2 * h < order {
        let s = (base + 2 * h) as u32;
        let b = BranchData::new(d, 0, vec![eta.clone()], s)?;
        let hv = hurwitz_connected(&b)?.value / BigRational::from_integer(factorial(s as u64));
        let signed = if h % 2 == 0 { hv } else { -hv };
        coeffs.push(GaussianRational::from(signed));
        coeffs.push(GaussianRational::zero());
        h += 1;
    }
    Ok(USeries::from_coeffs(base, coeffs, order))
}

/// `1/(2 sin(k u/2))`, valuation −1.
pub fn l_series(k: u32, order: i64) -> Result<USeries> {
    Ok(sin_half(k, order + 2).inv()?.truncate(order))
}
