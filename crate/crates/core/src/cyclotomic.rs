//! Exact arithmetic in `Q(ζ_p)`, the standard additive character, and the
//! valuation at `π = 1 - ζ_p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldElement};

/// `Σ c_i ζ_p^i` over the power basis `1, ζ, …, ζ^{p-2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u32,
    coeffs: Vec<BigRational>,
}

/// π-adic valuation, normalized so that `ord(π) = 1` and `ord(p) = p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PiOrd {
    Finite(i64),
    Infinity,
}

impl PartialOrd for PiOrd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PiOrd {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PiOrd::Infinity, PiOrd::Infinity) => Ordering::Equal,
            (PiOrd::Infinity, _) => Ordering::Greater,
            (_, PiOrd::Infinity) => Ordering::Less,
            (PiOrd::Finite(a), PiOrd::Finite(b)) => a.cmp(b),
        }
    }
}

impl PiOrd {
    pub fn finite(self) -> Option<i64> {
        match self {
            PiOrd::Finite(v) => Some(v),
            PiOrd::Infinity => None,
        }
    }
}

impl fmt::Display for PiOrd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiOrd::Finite(v) => write!(f, "{v}"),
            PiOrd::Infinity => write!(f, "inf"),
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycloNum {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            coeffs: vec![BigRational::zero(); (p - 1) as usize],
        }
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, rat(n))
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `ζ_p^t` for any integer `t`.
    pub fn zeta_pow(p: u32, t: i64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[t.rem_euclid(p as i64) as usize] = 1;
        Self::from_counts(p, &counts)
    }

    /// `π = 1 - ζ_p`.
    pub fn pi(p: u32) -> Self {
        &Self::one(p) - &Self::zeta_pow(p, 1)
    }

    /// `Σ_t counts[t] ζ^t` for `t = 0..p`.
    pub fn from_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let last = counts[p as usize - 1];
        let coeffs = counts[..p as usize - 1].iter().map(|&c| rat(c - last)).collect();
        Self { p, coeffs }
    }

    /// Build from power-basis coefficients (length exactly `p - 1`).
    pub fn from_coeffs(p: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::InvalidInput(format!(
                "Q(zeta_{p}) needs {} coefficients, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value if this lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_int(&self, n: i64) -> Self {
        let inv = rat(1) / rat(n);
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| &acc * self)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Q(zeta_p) for different p");
    }

    /// Common denominator `D` and integer numerator polynomial `Z` with `self = Z(ζ)/D`.
    fn integral_parts(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, num)
    }

    /// `N(z) = Res(Φ_p, Z) / D^{p-1}`.
    pub fn norm(&self) -> BigRational {
        let phi: Vec<BigRational> = vec![rat(1); self.p as usize];
        resultant(&phi, &self.coeffs)
    }

    pub fn ord_pi(&self) -> PiOrd {
        if self.is_zero() {
            return PiOrd::Infinity;
        }
        let p = BigInt::from(self.p);
        let (den, num) = self.integral_parts();
        let phi: Vec<BigRational> = vec![rat(1); self.p as usize];
        let znum: Vec<BigRational> = num.into_iter().map(BigRational::from_integer).collect();
        let norm = resultant(&phi, &znum);
        debug_assert!(norm.is_integer());
        let v_norm = val_p_big(&norm.to_integer(), &p);
        let v_den = val_p_big(&den, &p);
        PiOrd::Finite(v_norm - (self.p as i64 - 1) * v_den)
    }

    /// Image in `Z[ζ]/(π) ≅ F_p` (substitute `ζ = 1`, reduce mod `p`).
    pub fn reduce_mod_pi(&self) -> Result<u32> {
        let p = BigInt::from(self.p);
        // Denominators prime to p already make the element π-integral.
        if self.coeffs.iter().any(|c| c.denom().is_multiple_of(&p)) {
            return Err(Error::NotPiIntegral);
        }
        let sum: BigRational = self.coeffs.iter().sum();
        let n = sum.numer().mod_floor(&p);
        let d = sum.denom().mod_floor(&p);
        let pu = self.p as u64;
        let n = n.to_u64().unwrap();
        let d = d.to_u64().unwrap();
        Ok((n * crate::arith::inv_mod(d, pu) % pu) as u32)
    }

    /// Coefficients rendered as exact `num/den` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

fn val_p_big(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn trim_rat(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn rem_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &c * bj;
        }
        trim_rat(&mut r);
    }
    r
}

/// Resultant of two polynomials over `Q` by the Euclidean algorithm.
pub fn resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_rat(&mut a);
    trim_rat(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return acc * num_traits::pow(b[0].clone(), m);
        }
        if m == 0 {
            return acc * num_traits::pow(a[0].clone(), n);
        }
        let r = rem_rat(&a, &b);
        if r.is_empty() {
            return BigRational::zero();
        }
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[n].clone(), m - (r.len() - 1));
        a = b;
        b = r;
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        let p = self.p as usize;
        // Multiply modulo ζ^p = 1, then rewrite ζ^{p-1} = -(1 + … + ζ^{p-2}).
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        let top = full.pop().unwrap();
        CycloNum {
            p: self.p,
            coeffs: full.into_iter().map(|c| c - &top).collect(),
        }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycloNum", 2)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("coeffs", &self.coeff_strings())?;
        st.end()
    }
}

/// The standard nontrivial additive character `ψ(a) = ζ_p^{Tr(a)}`.
pub fn char_psi(ctx: &FieldCtx, a: &FieldElement) -> CycloNum {
    CycloNum::zeta_pow(ctx.p(), ctx.abs_trace(a) as i64)
}
