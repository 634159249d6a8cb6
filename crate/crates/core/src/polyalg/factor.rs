use serde::Serialize;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::upoly;

/// Degrees of the distinct monic irreducible factors: `(degree, count)` pairs,
/// ascending in degree. Multiplicities in the input are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDegreeProfile {
    pub pairs: Vec<(usize, usize)>,
}

impl FactorDegreeProfile {
    /// `Σ d_i · count_i`: the number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.pairs.iter().map(|(d, c)| d * c).sum()
    }

    /// True when every factor is linear.
    pub fn is_split(&self) -> bool {
        self.pairs.iter().all(|&(d, _)| d == 1)
    }

    /// Each factor degree repeated by its count.
    pub fn degrees(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .flat_map(|&(d, c)| std::iter::repeat_n(d, c))
            .collect()
    }
}

pub fn factor_degree_profile(g: &MultiPoly) -> Result<FactorDegreeProfile> {
    let coeffs = g.to_univariate()?;
    if coeffs.len() <= 1 {
        return Err(Error::ConstantPolynomial);
    }
    let ctx = &**g.ctx();
    let rad = upoly::radical(ctx, &coeffs);
    Ok(FactorDegreeProfile {
        pairs: upoly::distinct_degree_profile(ctx, &rad),
    })
}

/// Pole data of the reduced rational function `f/g` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleProfile {
    /// One entry per pole over the algebraic closure, descending.
    pub finite_pole_orders: Vec<u32>,
    /// `deg f - deg g`; positive exactly when infinity is a pole.
    pub infinity_order: i64,
    /// Whether `g(0) = 0` after reduction.
    pub pole_at_zero: bool,
}

pub fn pole_profile(f: &MultiPoly, g: &MultiPoly) -> Result<PoleProfile> {
    let ctx = &**g.ctx();
    let fu = f.to_univariate()?;
    let gu = g.to_univariate()?;
    if fu.is_empty() || gu.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let common = upoly::gcd(ctx, &fu, &gu);
    let fr = upoly::div_exact(ctx, &fu, &common);
    let gr = upoly::div_exact(ctx, &gu, &common);
    let mut finite = Vec::new();
    for (mult, deg) in upoly::multiplicity_degrees(ctx, &gr) {
        finite.extend(std::iter::repeat_n(mult as u32, deg));
    }
    finite.sort_unstable_by(|a, b| b.cmp(a));
    Ok(PoleProfile {
        finite_pole_orders: finite,
        infinity_order: fr.len() as i64 - gr.len() as i64,
        pole_at_zero: gr.first().is_some_and(|c| c.is_zero()) && gr.len() > 1,
    })
}
