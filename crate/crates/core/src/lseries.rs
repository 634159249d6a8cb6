//! L-functions and zeta functions from power sums, one-variable
//! L-polynomials, Newton polygons, and rational reconstruction over `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{inv_mod, reduce_i64};
use crate::cyclotomic::{CycloNum, PiOrd};
use crate::error::{Error, Result};
use crate::expsums::{self, SumMode, SumRequest};
use crate::field::PrimeField;
use crate::polyalg::{factor_degree_profile, pole_profile, MultiPoly};
use crate::report::Hypothesis;
use crate::upoly;

/// Rings in which `exp(Σ S_m T^m / m)` can be expanded.
pub trait ExpRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div_int(&self, k: u64) -> Result<Self>;
}

impl ExpRing for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.p())
    }
    fn one_like(&self) -> Self {
        CycloNum::one(self.p())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_int(&self, k: u64) -> Result<Self> {
        Ok(CycloNum::div_int(self, k as i64))
    }
}

impl ExpRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_int(&self, k: u64) -> Result<Self> {
        Ok(self / BigRational::from_integer(BigInt::from(k)))
    }
}

/// A residue mod `p`, tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u32,
    pub v: u32,
}

impl Fp {
    pub fn new(p: u32, v: i64) -> Self {
        Self {
            p,
            v: reduce_i64(v, p),
        }
    }
}

impl ExpRing for Fp {
    fn zero_like(&self) -> Self {
        Fp { p: self.p, v: 0 }
    }
    fn one_like(&self) -> Self {
        Fp {
            p: self.p,
            v: 1 % self.p,
        }
    }
    fn add(&self, other: &Self) -> Self {
        Fp {
            p: self.p,
            v: (self.v + other.v) % self.p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp {
            p: self.p,
            v: (self.v as u64 * other.v as u64 % self.p as u64) as u32,
        }
    }
    fn div_int(&self, k: u64) -> Result<Self> {
        let p = self.p as u64;
        if k.is_multiple_of(p) {
            return Err(Error::DivisionByP(self.p));
        }
        Ok(Fp {
            p: self.p,
            v: (self.v as u64 * inv_mod(k % p, p) % p) as u32,
        })
    }
}

/// Coefficients `e_0..e_M` of `exp(Σ_{m=1}^M S_m T^m / m)`, where `M = sums.len()`.
///
/// Uses `k e_k = Σ_{i=1}^k S_i e_{k-i}`. `unit` only supplies the ring.
pub fn exp_series<R: ExpRing>(unit: &R, sums: &[R]) -> Result<Vec<R>> {
    let mut e = vec![unit.one_like()];
    for k in 1..=sums.len() {
        let mut acc = unit.zero_like();
        for i in 1..=k {
            acc = acc.add(&sums[i - 1].mul(&e[k - i]));
        }
        e.push(acc.div_int(k as u64)?);
    }
    Ok(e)
}

/// Truncated power series over `F_p` with exactly `M + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpSeries {
    pub p: u32,
    pub coeffs: Vec<u32>,
}

impl FpSeries {
    /// Series of a polynomial, truncated or padded to order `m`.
    pub fn from_poly(p: u32, poly: &[u32], m: usize) -> Self {
        let mut coeffs = vec![0u32; m + 1];
        for (c, &a) in coeffs.iter_mut().zip(poly) {
            *c = a % p;
        }
        Self { p, coeffs }
    }

    pub fn one(p: u32, m: usize) -> Self {
        Self::from_poly(p, &[1], m)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let m = self.order().min(other.order());
        let p = self.p as u64;
        let mut out = vec![0u64; m + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self {
            p: self.p,
            coeffs: out.into_iter().map(|c| c as u32).collect(),
        }
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.p as u64;
        let c0 = self.coeffs[0] as u64;
        if c0 == 0 {
            return Err(Error::InvalidInput(
                "series with zero constant term is not invertible".into(),
            ));
        }
        let inv0 = inv_mod(c0, p);
        let mut out = vec![0u64; self.coeffs.len()];
        out[0] = inv0;
        for k in 1..out.len() {
            let mut acc = 0u64;
            for i in 1..=k {
                acc = (acc + self.coeffs[i] as u64 * out[k - i]) % p;
            }
            out[k] = (p - acc) % p * inv0 % p;
        }
        Ok(Self {
            p: self.p,
            coeffs: out.into_iter().map(|c| c as u32).collect(),
        })
    }

    /// `self^e` for a signed exponent.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.p, self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Coefficients with trailing zeros removed.
    pub fn trimmed(&self) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// `num / den` expanded through order `m`.
pub fn series_of_rational(p: u32, num: &[u32], den: &[u32], m: usize) -> Result<FpSeries> {
    Ok(FpSeries::from_poly(p, num, m).mul(&FpSeries::from_poly(p, den, m).inverse()?))
}

/// `(1 - T)^e` as a polynomial over `F_p`, `e ≥ 0`.
pub fn one_minus_t_pow(p: u32, e: usize) -> Vec<u32> {
    let fp = PrimeField::new(p);
    let mut acc = vec![1u32];
    for _ in 0..e {
        acc = upoly::mul(&fp, &acc, &[1, p - 1]);
    }
    acc
}

/// `∏ (1 - T^{d_i})` over `F_p`.
pub fn prod_one_minus_t_pow(p: u32, degrees: &[usize]) -> Vec<u32> {
    let fp = PrimeField::new(p);
    let mut acc = vec![1u32];
    for &d in degrees {
        let mut f = vec![0u32; d + 1];
        f[0] = 1;
        f[d] = p - 1;
        acc = upoly::mul(&fp, &acc, &f);
    }
    acc
}

fn rational_mod_p(r: &BigRational, p: u32) -> Result<u32> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(Error::NotPiIntegral);
    }
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Ok((n * inv_mod(d, p as u64) % p as u64) as u32)
}

/// `Z^{sign}` mod `p` through order `counts.len()`, for `Z = exp(Σ N_m T^m/m)`.
///
/// The series is expanded over `Q` and reduced afterwards: congruent power
/// sums do not give congruent exponentials once `m ≥ p`.
pub fn zeta_series_mod_p(p: u32, counts: &[u64], sign: i64) -> Result<FpSeries> {
    let sums: Vec<BigRational> = counts
        .iter()
        .map(|&n| BigRational::from_integer(BigInt::from(n) * sign))
        .collect();
    let e = exp_series(&BigRational::one(), &sums)?;
    let coeffs = e.iter().map(|c| rational_mod_p(c, p)).collect::<Result<_>>()?;
    Ok(FpSeries { p, coeffs })
}

/// `L^{sign}` mod `π` through order `sums.len()`, for `L = exp(Σ S_m T^m/m)`.
pub fn l_series_mod_pi(p: u32, sums: &[CycloNum], sign: i64) -> Result<FpSeries> {
    let signed: Vec<CycloNum> = sums
        .iter()
        .map(|s| if sign < 0 { -s } else { s.clone() })
        .collect();
    let e = exp_series(&CycloNum::one(p), &signed)?;
    let coeffs = e.iter().map(|c| c.reduce_mod_pi()).collect::<Result<_>>()?;
    Ok(FpSeries { p, coeffs })
}

/// Polynomial over `Q(ζ_p)`, ascending, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloPoly {
    pub coeffs: Vec<CycloNum>,
}

impl CycloPoly {
    pub fn new(mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn reduce_mod_pi(&self) -> Result<Vec<u32>> {
        let mut v: Vec<u32> = self
            .coeffs
            .iter()
            .map(|c| c.reduce_mod_pi())
            .collect::<Result<_>>()?;
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(v)
    }
}

/// Lower convex hull of `(i, ord_π(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    /// Horizontal length of the slope-zero segment.
    pub fn unit_root_count(&self) -> usize {
        match self.vertices.as_slice() {
            [(x0, y0), (x1, y1), ..] if y0 == y1 => (x1 - x0) as usize,
            _ => 0,
        }
    }

    /// `(rise, run)` of each segment, left to right.
    pub fn slopes(&self) -> Vec<(i64, i64)> {
        self.vertices
            .windows(2)
            .map(|w| (w[1].1 - w[0].1, w[1].0 - w[0].0))
            .collect()
    }
}

pub fn newton_polygon(poly: &CycloPoly) -> Result<NewtonPolygon> {
    if poly.coeffs.first().is_none_or(|c| *c != CycloNum::one(c.p())) {
        return Err(Error::NotNormalized);
    }
    let points: Vec<(i64, i64)> = poly
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.ord_pi() {
            PiOrd::Finite(v) => Some((i as i64, v)),
            PiOrd::Infinity => None,
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: lower_hull(&points),
    })
}

fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b unless it lies strictly below the chord from a to pt.
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Checks `k e_k = Σ_{i=1}^k (-1)^{i+1} e_{k-i} p_i` for `k = 1..=sums.len()`,
/// with `p_m = -S_m` and `e_k = (-1)^k a_k`.
pub fn newton_identities_hold(poly: &CycloPoly, sums: &[CycloNum]) -> bool {
    let Some(first) = sums.first() else { return true };
    let p = first.p();
    let zero = CycloNum::zero(p);
    let e = |k: usize| -> CycloNum {
        let a = poly.coeffs.get(k).cloned().unwrap_or_else(|| zero.clone());
        if k % 2 == 1 {
            -&a
        } else {
            a
        }
    };
    let pw: Vec<CycloNum> = sums.iter().map(|s| -s).collect();
    (1..=sums.len()).all(|k| {
        let mut rhs = zero.clone();
        for i in 1..=k {
            let t = &e(k - i) * &pw[i - 1];
            rhs = if i % 2 == 1 { &rhs + &t } else { &rhs - &t };
        }
        e(k).scale(&BigRational::from_integer(BigInt::from(k))) == rhs
    })
}

/// Minimal rational representation `num / den` of a sequence over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub numerator: Vec<u32>,
    pub denominator: Vec<u32>,
}

/// Berlekamp–Massey on `c_0..c_M`. The connection polynomial is the
/// denominator (constant term 1) and `num = (S · den) mod T^L`.
///
/// Certified only when the register length last changed within the first two
/// thirds of the data and `2L ≤ M + 1`.
pub fn berlekamp_massey(p: u32, seq: &[u32]) -> Result<Reconstruction> {
    let pp = p as u64;
    let n = seq.len();
    let s: Vec<u64> = seq.iter().map(|&c| (c % p) as u64).collect();
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_b = 1u64;
    let mut last_change = 0usize;
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l.min(c.len() - 1) {
            d = (d + c[j] * s[i - j]) % pp;
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = d * inv_mod(last_b, pp) % pp;
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            next[j + shift] = (next[j + shift] + pp - coef * bj % pp) % pp;
        }
        if 2 * l <= i {
            b = std::mem::replace(&mut c, next);
            l = i + 1 - l;
            last_b = d;
            shift = 1;
            last_change = i;
        } else {
            c = next;
            shift += 1;
        }
    }
    if l > 0 && (3 * (last_change + 1) > 2 * n || 2 * l > n) {
        return Err(Error::InsufficientData(format!(
            "register length {l} last changed at index {last_change} of {n}"
        )));
    }
    let fp = PrimeField::new(p);
    let mut den: Vec<u32> = c.iter().map(|&x| x as u32).collect();
    den.truncate(l + 1);
    upoly::trim(&fp, &mut den);
    let prod = upoly::mul(&fp, seq, &den);
    let mut num: Vec<u32> = prod.into_iter().take(l).collect();
    upoly::trim(&fp, &mut num);
    Ok(Reconstruction {
        numerator: num,
        denominator: den,
    })
}

/// The standing one-variable hypotheses on `f/g`.
pub fn onevar_hypotheses(f: &MultiPoly, g: &MultiPoly) -> Result<Vec<Hypothesis>> {
    let p = g.ctx().p();
    let ctx = &**g.ctx();
    let (fu, gu) = (f.to_univariate()?, g.to_univariate()?);
    if fu.is_empty() || gu.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let common = upoly::gcd(ctx, &fu, &gu);
    let poles = pole_profile(f, g)?;
    let (df, dg) = (fu.len() - 1, gu.len() - 1);
    let mut orders: Vec<i64> = poles.finite_pole_orders.iter().map(|&o| o as i64).collect();
    if poles.infinity_order > 0 {
        orders.push(poles.infinity_order);
    }
    let bad: Vec<i64> = orders.iter().copied().filter(|o| o % p as i64 == 0).collect();
    Ok(vec![
        Hypothesis::new(
            "Coprime",
            common.len() == 1,
            format!("gcd(f, g) has degree {}", common.len() - 1),
        ),
        Hypothesis::new(
            "PoleAtZero",
            gu[0].is_zero(),
            format!("g(0) = 0 is {}", gu[0].is_zero()),
        ),
        Hypothesis::new("PoleAtInfinity", df > dg, format!("deg f = {df}, deg g = {dg}")),
        Hypothesis::new(
            "PoleOrdersPrimeToP",
            bad.is_empty(),
            format!("pole orders {orders:?}, divisible by {p}: {bad:?}"),
        ),
    ])
}

/// The exact L-polynomial of `f/g` together with the power sums `S_1..S_{D+2}`.
#[derive(Clone, Debug, Serialize)]
pub struct OneVarL {
    pub poly: CycloPoly,
    pub sums: Vec<CycloNum>,
    /// `deg f + n - 1`, with `n` the number of distinct zeros of `g`.
    pub expected_degree: usize,
}

pub fn l_onevar_exact(f: &MultiPoly, g: &MultiPoly) -> Result<CycloPoly> {
    Ok(l_onevar(f, g)?.poly)
}

pub fn l_onevar(f: &MultiPoly, g: &MultiPoly) -> Result<OneVarL> {
    if let Some(h) = onevar_hypotheses(f, g)?.into_iter().find(|h| !h.satisfied) {
        return Err(Error::HypothesisViolated(format!("{}: {}", h.name, h.detail)));
    }
    l_onevar_unchecked(f, g)
}

/// [`l_onevar`] without the hypothesis check. The polynomiality and
/// integrality checks still apply.
pub fn l_onevar_unchecked(f: &MultiPoly, g: &MultiPoly) -> Result<OneVarL> {
    let n = factor_degree_profile(g)?.distinct_roots();
    let deg_f = f.total_degree().ok_or(Error::ZeroPolynomial)? as usize;
    let big_d = (deg_f + n).saturating_sub(1);
    let terms = big_d + 2;
    expsums::guard(g.ctx(), terms as u32, 1, "one-variable L-polynomial")?;
    let p = g.ctx().p();
    let sums = (1..=terms as u32)
        .map(|m| expsums::exp_sum(&SumRequest::new(SumMode::OneVar, f.clone(), g.clone(), m)?))
        .collect::<Result<Vec<_>>>()?;
    let e = exp_series(&CycloNum::one(p), &sums)?;
    if !e[big_d + 1].is_zero() || !e[big_d + 2].is_zero() {
        return Err(Error::PolynomialityCheckFailed(format!(
            "coefficients {} and {} of L({f}/{g}) do not vanish",
            big_d + 1,
            big_d + 2
        )));
    }
    if let Some(k) = e.iter().position(|c| c.ord_pi() < PiOrd::Finite(0)) {
        return Err(Error::PolynomialityCheckFailed(format!(
            "coefficient {k} is not π-integral"
        )));
    }
    let poly = CycloPoly::new(e[..=big_d].to_vec());
    Ok(OneVarL {
        poly,
        sums,
        expected_degree: big_d,
    })
}
