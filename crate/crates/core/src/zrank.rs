//! Rational ranks over `Z`: Poincaré series of `K_*(Z[x_1..x_n]/(x_i^a_i)) ⊗ Q`
//! relative to `Z`, and of the per-vertex TC terms, each with an
//! enumeration oracle counting lattice points.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::truncation::{axis_mask, enumerate_slab};

/// Coefficients in degrees `0..=cutoff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub cutoff: u64,
    pub coefficients: Vec<u128>,
}

impl PoincareSeries {
    fn from_big(cutoff: u64, coeffs: Vec<BigUint>) -> Result<PoincareSeries> {
        let coefficients = coeffs
            .into_iter()
            .map(|c| {
                u128::try_from(&c).map_err(|_| Error::BudgetExceeded { needed: format!("coefficient {c}"), budget: u64::MAX })
            })
            .collect::<Result<_>>()?;
        Ok(PoincareSeries { cutoff, coefficients })
    }

    pub fn coefficient(&self, degree: u64) -> u128 {
        self.coefficients.get(degree as usize).copied().unwrap_or(0)
    }

    /// `(degree, coefficient)` for degrees `1..=cutoff`.
    pub fn rows(&self) -> Vec<(u64, u128)> {
        (1..=self.cutoff).map(|d| (d, self.coefficient(d))).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,coefficient\n");
        for (d, c) in self.rows() {
            out.push_str(&format!("{d},{c}\n"));
        }
        out
    }
}

fn check(a: &[u64], cutoff: u64) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidPoint("exponent tuple must be nonempty".into()));
    }
    if a.contains(&0) {
        return Err(Error::InvalidPoint("exponents must be positive".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidPoint("degree cutoff must be at least 1".into()));
    }
    Ok(())
}

/// Expands `sum_j t^(2j-1) (1+t)^(n-1) binom(n+j-2, n-1) prod (a_i - 1)`.
pub fn k_rational_series(a: &[u64], cutoff: u64) -> Result<PoincareSeries> {
    check(a, cutoff)?;
    let n = a.len() as u64;
    let prod: BigUint = a.iter().map(|&ai| BigUint::from(ai - 1)).product();
    let mut coeffs = vec![BigUint::from(0u32); cutoff as usize + 1];
    for j in 1..=cutoff.div_ceil(2) {
        let base = binomial(n + j - 2, n - 1) * &prod;
        for k in 0..n {
            let deg = 2 * j - 1 + k;
            if deg <= cutoff {
                coeffs[deg as usize] += binomial(n - 1, k) * &base;
            }
        }
    }
    PoincareSeries::from_big(cutoff, coeffs)
}

/// Expands `sum_j t^(2j-1) binom(n+j-2, n-1) prod_{i in I} a_i`, with `axes`
/// the 0-based indices in `I`.
pub fn tc_vertex_series(a: &[u64], axes: &[usize], cutoff: u64) -> Result<PoincareSeries> {
    check(a, cutoff)?;
    let mask = axis_mask(a.len(), axes)?;
    let n = a.len() as u64;
    let prod: BigUint = a.iter().zip(&mask).filter(|(_, &m)| m).map(|(&ai, _)| BigUint::from(ai)).product();
    let mut coeffs = vec![BigUint::from(0u32); cutoff as usize + 1];
    for j in 1..=cutoff.div_ceil(2) {
        coeffs[2 * j as usize - 1] = binomial(n + j - 2, n - 1) * &prod;
    }
    PoincareSeries::from_big(cutoff, coeffs)
}

/// Counts the `s` with `sum_i floor((s_i-1)/w_i) = layer` that pass `keep`.
fn count_layer(widths: &[u64], layer: u64, keep: &dyn Fn(&[u64]) -> bool) -> u128 {
    let mut count = 0u128;
    let mut coords = Vec::with_capacity(widths.len());
    enumerate_slab(widths, layer, &mut coords, &mut |s| {
        let used: u64 = s.iter().zip(widths).map(|(&si, &w)| (si - 1) / w).sum();
        if used == layer && keep(s) {
            count += 1;
        }
    });
    count
}

/// [`tc_vertex_series`] by counting, for each odd degree `2j-1`, the points
/// `s` with `sum_i floor((s_i-1)/a_i^[i in I]) = j-1`.
pub fn tc_vertex_series_oracle(a: &[u64], axes: &[usize], cutoff: u64) -> Result<PoincareSeries> {
    check(a, cutoff)?;
    let mask = axis_mask(a.len(), axes)?;
    let widths: Vec<u64> = a.iter().zip(&mask).map(|(&ai, &m)| if m { ai } else { 1 }).collect();
    let mut coefficients = vec![0u128; cutoff as usize + 1];
    for j in 1..=cutoff.div_ceil(2) {
        coefficients[2 * j as usize - 1] = count_layer(&widths, j - 1, &|_| true);
    }
    Ok(PoincareSeries { cutoff, coefficients })
}

/// [`k_rational_series`] by counting, in each layer of `S({1..n})`, the
/// points with `a_i ∤ s_i` for all `i`, then multiplying by `(1+t)^(n-1)`.
pub fn k_rational_series_oracle(a: &[u64], cutoff: u64) -> Result<PoincareSeries> {
    check(a, cutoff)?;
    let n = a.len() as u64;
    let keep = |s: &[u64]| s.iter().zip(a).all(|(&si, &ai)| si % ai != 0);
    let mut coefficients = vec![0u128; cutoff as usize + 1];
    for j in 1..=cutoff.div_ceil(2) {
        let rank = count_layer(a, j - 1, &keep);
        for k in 0..n {
            let deg = 2 * j - 1 + k;
            if deg <= cutoff {
                let mult = u128::try_from(binomial(n - 1, k)).expect("small binomial");
                coefficients[deg as usize] += mult * rank;
            }
        }
    }
    Ok(PoincareSeries { cutoff, coefficients })
}

/// All subsets of `0..n` as sorted axis lists.
pub fn all_vertices(n: usize) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> =
        (0u32..1 << n).map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    set.into_iter().collect()
}
