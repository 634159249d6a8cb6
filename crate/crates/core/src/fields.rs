//! The finite field tower `F_p ⊆ F_q ⊆ F_{q^m}`.
//!
//! Every field is a single extension `F_p[t]/(h)` where `h` is the smallest
//! monic irreducible of its degree, ordered by the integer `Σ h_i p^i`.
//! Subfields are related by explicit [`Embedding`]s rather than compatible
//! defining polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::arith::{inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::upoly;

/// Largest extension degree a [`FieldCtx`] supports.
pub const MAX_DEGREE: usize = 24;

/// Enumeration refuses fields (and products of fields) larger than this.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// An element of some [`FieldCtx`], stored as coefficients of `1, t, …, t^{k-1}`.
/// Arithmetic goes through the context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    c: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { c: [0; MAX_DEGREE] };

    pub fn scalar(a: u32) -> Self {
        let mut c = [0; MAX_DEGREE];
        c[0] = a;
        Self { c }
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c[i]
    }

    /// The first `k` coefficients.
    pub fn coeffs(&self, k: usize) -> &[u32] {
        &self.c[..k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        f.debug_list().entries(&self.c[..=last]).finish()
    }
}

/// Image of the generator powers `t^i` of a subfield inside a larger field.
#[derive(Clone, Debug)]
pub struct Embedding {
    images: Vec<FieldElement>,
}

pub struct FieldCtx {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
    cardinality: u128,
    // (p - h_j) mod p, used by the reduction step.
    neg_modulus: Vec<u64>,
    lazy_reduce: bool,
    abs_traces: Vec<u32>,
    frobenius: Vec<FieldElement>,
    embeddings: RwLock<HashMap<Vec<u32>, Arc<Embedding>>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn is_irreducible(fp: &PrimeField, h: &[u32]) -> bool {
    let k = h.len() - 1;
    let x = upoly::x(fp);
    // x^{p^k} = x mod h, and gcd(x^{p^{k/r}} - x, h) = 1 for every prime r | k.
    let mut powers = vec![upoly::rem(fp, &x, h)];
    for _ in 0..k {
        let next = upoly::frobenius_mod(fp, powers.last().unwrap(), h);
        powers.push(next);
    }
    if powers[k] != upoly::rem(fp, &x, h) {
        return false;
    }
    for r in (2..=k).filter(|r| k.is_multiple_of(*r) && is_prime(*r as u64)) {
        let diff = upoly::sub(fp, &powers[k / r], &x);
        if upoly::degree(&upoly::gcd(fp, &diff, h)) != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `k` over `F_p`.
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let fp = PrimeField::new(p);
    if k == 1 {
        return vec![0, 1];
    }
    let mut tail = vec![0u32; k];
    loop {
        // Constant term zero means x divides h.
        if tail[0] != 0 {
            let mut h = tail.clone();
            h.push(1);
            if is_irreducible(&fp, &h) {
                return h;
            }
        }
        for digit in tail.iter_mut() {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
    }
}

/// Builds `F_{p^degree}` with the smallest monic irreducible as modulus.
pub fn make_field(p: u32, degree: usize) -> Result<Arc<FieldCtx>> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::InvalidDegree(format!(
            "extension degree must lie in 1..={MAX_DEGREE}, got {degree}"
        )));
    }
    let cardinality = (p as u128)
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::InvalidDegree(format!("F_{{{p}^{degree}}} is too large to represent")))?;
    // Contexts are immutable, so one instance per (p, degree) is shared and
    // its embedding cache survives across calls.
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<FieldCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ctx) = cache.lock().unwrap().get(&(p, degree)) {
        return Ok(Arc::clone(ctx));
    }
    let modulus = smallest_irreducible(p, degree);
    let ctx = Arc::new(FieldCtx::with_modulus(p, modulus, cardinality)?);
    Ok(Arc::clone(
        cache.lock().unwrap().entry((p, degree)).or_insert(ctx),
    ))
}

impl FieldCtx {
    fn with_modulus(p: u32, modulus: Vec<u32>, cardinality: u128) -> Result<Self> {
        let degree = modulus.len() - 1;
        let pm1 = (p - 1) as u128;
        let lazy_reduce = 2 * (degree as u128 + 1) * pm1 * pm1 + (p as u128) < u64::MAX as u128 / 2;
        let neg_modulus = modulus[..degree].iter().map(|&h| ((p - h) % p) as u64).collect();
        let mut ctx = FieldCtx {
            p,
            degree,
            modulus,
            cardinality,
            neg_modulus,
            lazy_reduce,
            abs_traces: Vec::new(),
            frobenius: Vec::new(),
            embeddings: RwLock::new(HashMap::new()),
        };
        ctx.frobenius = (0..degree)
            .map(|i| ctx.pow(&ctx.generator_power(i), p as u128))
            .collect();
        ctx.abs_traces = (0..degree)
            .map(|i| {
                let mut y = ctx.generator_power(i);
                let mut acc = FieldElement::ZERO;
                for _ in 0..degree {
                    acc = ctx.add(&acc, &y);
                    y = ctx.frobenius(&y);
                }
                debug_assert!(acc.c[1..].iter().all(|&c| c == 0));
                acc.c[0]
            })
            .collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cardinality(&self) -> u128 {
        self.cardinality
    }

    /// Monic defining polynomial, ascending coefficients.
    pub fn defining_poly(&self) -> &[u32] {
        &self.modulus
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p)
    }

    /// The class of `t^i`.
    pub fn generator_power(&self, i: usize) -> FieldElement {
        if self.degree == 1 {
            // The prime field is F_p[t]/(t), so t = 0.
            return if i == 0 {
                FieldElement::scalar(1)
            } else {
                FieldElement::ZERO
            };
        }
        let mut e = FieldElement::scalar(1);
        let t = self.generator();
        for _ in 0..i {
            e = self.mul(&e, &t);
        }
        e
    }

    pub fn generator(&self) -> FieldElement {
        if self.degree == 1 {
            return FieldElement::ZERO;
        }
        let mut c = [0; MAX_DEGREE];
        c[1] = 1;
        FieldElement { c }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let mut c = [0; MAX_DEGREE];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = src % self.p;
        }
        Ok(FieldElement { c })
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement::scalar(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element whose coefficient tuple is the base-`p` expansion of `index`.
    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.degree) {
            *slot = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        FieldElement { c }
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.c[..self.degree]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    /// Advances `a` to the next element in enumeration order; returns false on wrap-around.
    pub fn step(&self, a: &mut FieldElement) -> bool {
        for slot in a.c.iter_mut().take(self.degree) {
            *slot += 1;
            if *slot < self.p {
                return true;
            }
            *slot = 0;
        }
        false
    }

    /// All elements, zero first, in lexicographic order of the reversed
    /// coefficient tuple (equivalently, by [`FieldCtx::index_of`]).
    pub fn enumerate(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        if self.cardinality > ENUMERATION_LIMIT {
            return Err(Error::ScaleExceeded {
                what: format!("F_{{{}^{}}}", self.p, self.degree),
                size: self.cardinality,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok((0..self.cardinality as u64).map(move |i| self.element_at(i)))
    }

    /// Absolute trace to `F_p`.
    #[inline]
    pub fn abs_trace(&self, a: &FieldElement) -> u32 {
        let p = self.p as u64;
        if self.degree == 1 {
            return a.c[0];
        }
        let mut acc = 0u64;
        for (x, t) in a.c[..self.degree].iter().zip(&self.abs_traces) {
            acc += *x as u64 * *t as u64;
            if !self.lazy_reduce {
                acc %= p;
            }
        }
        (acc % p) as u32
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        if self.degree == 1 {
            return *a;
        }
        let mut out = FieldElement::ZERO;
        for (i, &ai) in a.c[..self.degree].iter().enumerate() {
            if ai != 0 {
                let term = self.mul_scalar(&self.frobenius[i], ai);
                out = self.add(&out, &term);
            }
        }
        out
    }

    pub fn frobenius_iter(&self, a: &FieldElement, times: usize) -> FieldElement {
        (0..times).fold(*a, |acc, _| self.frobenius(&acc))
    }

    /// Relative trace to the subfield of degree `sub_degree`:
    /// `Σ_{i < r/s} a^{p^{s i}}`. The result is returned inside this field.
    pub fn trace(&self, a: &FieldElement, sub_degree: usize) -> Result<FieldElement> {
        if sub_degree == 0 || !self.degree.is_multiple_of(sub_degree) {
            return Err(Error::DegreeMismatch(format!(
                "{sub_degree} does not divide {}",
                self.degree
            )));
        }
        let mut acc = FieldElement::ZERO;
        let mut y = *a;
        for _ in 0..self.degree / sub_degree {
            acc = self.add(&acc, &y);
            y = self.frobenius_iter(&y, sub_degree);
        }
        debug_assert_eq!(self.frobenius_iter(&acc, sub_degree), acc);
        Ok(acc)
    }

    #[inline]
    pub fn mul_scalar(&self, a: &FieldElement, s: u32) -> FieldElement {
        let p = self.p as u64;
        let mut out = FieldElement::ZERO;
        for i in 0..self.degree {
            out.c[i] = (a.c[i] as u64 * s as u64 % p) as u32;
        }
        out
    }

    /// Multiplies into the double-length buffer and reduces modulo the defining polynomial.
    #[inline]
    fn mul_impl(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let k = self.degree;
        let p = self.p as u64;
        if k == 1 {
            return FieldElement::scalar((a.c[0] as u64 * b.c[0] as u64 % p) as u32);
        }
        let mut t = [0u64; 2 * MAX_DEGREE];
        if self.lazy_reduce {
            for i in 0..k {
                let ai = a.c[i] as u64;
                if ai == 0 {
                    continue;
                }
                for j in 0..k {
                    t[i + j] += ai * b.c[j] as u64;
                }
            }
            for i in (k..2 * k - 1).rev() {
                let c = t[i] % p;
                if c != 0 {
                    let base = i - k;
                    for j in 0..k {
                        t[base + j] += c * self.neg_modulus[j];
                    }
                }
            }
        } else {
            for i in 0..k {
                let ai = a.c[i] as u64;
                if ai == 0 {
                    continue;
                }
                for j in 0..k {
                    t[i + j] = (t[i + j] + ai * b.c[j] as u64 % p) % p;
                }
            }
            for i in (k..2 * k - 1).rev() {
                let c = t[i] % p;
                if c != 0 {
                    let base = i - k;
                    for j in 0..k {
                        t[base + j] = (t[base + j] + c * self.neg_modulus[j] % p) % p;
                    }
                }
            }
        }
        let mut out = FieldElement::ZERO;
        for i in 0..k {
            out.c[i] = (t[i] % p) as u32;
        }
        out
    }

    /// Inverse by the extended Euclidean algorithm on `F_p[t]`.
    fn inv_impl(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let fp = self.prime_field();
        if self.degree == 1 {
            return Some(FieldElement::scalar(inv_mod(a.c[0] as u64, self.p as u64) as u32));
        }
        let mut r0: Vec<u32> = self.modulus.clone();
        let mut r1: Vec<u32> = a.c[..self.degree].to_vec();
        upoly::trim(&fp, &mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (q, r) = upoly::divrem(&fp, &r0, &r1);
            let s = upoly::sub(&fp, &s0, &upoly::mul(&fp, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c = inv_mod(r0[0] as u64, self.p as u64) as u32;
        let s = upoly::scale(&fp, &s0, &c);
        let mut out = FieldElement::ZERO;
        out.c[..s.len()].copy_from_slice(&s);
        Some(out)
    }

    /// Inverts every nonzero entry of `vals` in place (zeros stay zero) with one field inversion.
    pub fn batch_invert(&self, vals: &mut [FieldElement], scratch: &mut Vec<FieldElement>) {
        scratch.clear();
        let mut acc = FieldElement::scalar(1);
        for v in vals.iter() {
            scratch.push(acc);
            if !v.is_zero() {
                acc = self.mul_impl(&acc, v);
            }
        }
        let mut inv = self.inv_impl(&acc).expect("product of nonzero elements");
        for (v, prefix) in vals.iter_mut().zip(scratch.iter()).rev() {
            if v.is_zero() {
                continue;
            }
            let next = self.mul_impl(&inv, v);
            *v = self.mul_impl(&inv, prefix);
            inv = next;
        }
    }

    fn embedding_from(&self, sub: &FieldCtx) -> Result<Arc<Embedding>> {
        if sub.p != self.p || !self.degree.is_multiple_of(sub.degree) {
            return Err(Error::NoEmbedding(format!(
                "F_{{{}^{}}} does not embed in F_{{{}^{}}}",
                sub.p, sub.degree, self.p, self.degree
            )));
        }
        if let Some(e) = self.embeddings.read().unwrap().get(&sub.modulus) {
            return Ok(Arc::clone(e));
        }
        let root = if sub.degree == 1 {
            FieldElement::ZERO
        } else {
            let mut found = None;
            for x in self.enumerate()? {
                let v = sub.modulus.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                    self.add(&self.mul_impl(&acc, &x), &FieldElement::scalar(c))
                });
                if v.is_zero() {
                    found = Some(x);
                    break;
                }
            }
            found.ok_or_else(|| Error::NoEmbedding("defining polynomial has no root".into()))?
        };
        let mut images = Vec::with_capacity(sub.degree);
        let mut pw = FieldElement::scalar(1);
        for _ in 0..sub.degree {
            images.push(pw);
            pw = self.mul_impl(&pw, &root);
        }
        let e = Arc::new(Embedding { images });
        self.embeddings
            .write()
            .unwrap()
            .entry(sub.modulus.clone())
            .or_insert_with(|| Arc::clone(&e));
        Ok(e)
    }

    /// Maps `a ∈ sub` into this field through the cached embedding.
    pub fn embed_from(&self, sub: &FieldCtx, a: &FieldElement) -> Result<FieldElement> {
        if sub == self {
            return Ok(*a);
        }
        let e = self.embedding_from(sub)?;
        let mut out = FieldElement::ZERO;
        for (i, img) in e.images.iter().enumerate() {
            if a.c[i] != 0 {
                out = self.add(&out, &self.mul_scalar(img, a.c[i]));
            }
        }
        Ok(out)
    }
}

/// Image of `a ∈ sub` in `target`; a field homomorphism fixed per context pair.
pub fn embed(a: &FieldElement, sub: &FieldCtx, target: &FieldCtx) -> Result<FieldElement> {
    target.embed_from(sub, a)
}

/// Relative trace; see [`FieldCtx::trace`].
pub fn trace(ctx: &FieldCtx, a: &FieldElement, sub_degree: usize) -> Result<FieldElement> {
    ctx.trace(a, sub_degree)
}

impl Field for FieldCtx {
    type Elem = FieldElement;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::scalar(1)
    }
    fn from_u32(&self, n: u32) -> FieldElement {
        FieldElement::scalar(n % self.p)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    #[inline]
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::ZERO;
        for i in 0..self.degree {
            let s = a.c[i] + b.c[i];
            out.c[i] = if s >= self.p { s - self.p } else { s };
        }
        out
    }
    #[inline]
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = FieldElement::ZERO;
        for i in 0..self.degree {
            out.c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + self.p - b.c[i]
            };
        }
        out
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&FieldElement::ZERO, a)
    }
    #[inline]
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.mul_impl(a, b)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inv_impl(a)
    }
    fn pth_root(&self, a: &FieldElement) -> FieldElement {
        self.frobenius_iter(a, self.degree - 1)
    }
    fn cardinality(&self) -> Option<u128> {
        Some(self.cardinality)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(ctx: &FieldCtx) -> Vec<FieldElement> {
        ctx.enumerate().unwrap().collect()
    }

    #[test]
    fn prime_field_convention() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.defining_poly(), &[0, 1]);
        assert_eq!(f7.cardinality(), 7);
    }

    #[test]
    fn f9_defining_poly_matches_root_enumeration() {
        // Oracle: scan monic quadratics x^2 + b x + c in the same order and
        // keep the first one without a root in F_3.
        let mut oracle = None;
        'outer: for b in 0..3u32 {
            for c in 0..3u32 {
                if (0..3u32).all(|x| (x * x + b * x + c) % 3 != 0) {
                    oracle = Some(vec![c, b, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(Some(f9.defining_poly().to_vec()), oracle);
        assert_eq!(f9.defining_poly(), &[1, 0, 1]);
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(make_field(1, 1).is_err());
    }

    #[test]
    fn trace_examples() {
        let f9 = make_field(3, 2).unwrap();
        let t = f9.generator();
        assert_eq!(f9.trace(&t, 1).unwrap(), FieldElement::ZERO);
        assert_eq!(f9.abs_trace(&t), 0);
        // Tr(1) = m mod p
        for m in 1..=4 {
            let f = make_field(5, m).unwrap();
            assert_eq!(f.abs_trace(&FieldElement::scalar(1)), (m % 5) as u32);
        }
        let f16 = make_field(2, 4).unwrap();
        let a = f16.element_at(11);
        assert_eq!(f16.trace(&a, 4).unwrap(), a);
        assert!(f16.trace(&a, 3).is_err());
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        let f5 = make_field(5, 1).unwrap();
        let v: Vec<u32> = f5.enumerate().unwrap().map(|e| e.coeff(0)).collect();
        assert_eq!(v, [0, 1, 2, 3, 4]);
        let f9 = make_field(3, 2).unwrap();
        let mut els = all(&f9);
        assert_eq!(els[0], FieldElement::ZERO);
        els.sort();
        els.dedup();
        assert_eq!(els.len(), 9);
        assert!(make_field(2, 24).unwrap().enumerate().is_err());
    }

    #[test]
    fn sum_of_all_elements_vanishes() {
        for (p, k) in [(3, 1), (5, 1), (3, 2), (2, 2), (7, 2), (2, 3)] {
            let f = make_field(p, k).unwrap();
            let s = all(&f).iter().fold(FieldElement::ZERO, |acc, x| f.add(&acc, x));
            assert!(s.is_zero(), "F_{p}^{k}");
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 2), (3, 2), (2, 3), (5, 1)] {
            let f = make_field(p, k).unwrap();
            let els = all(&f);
            for a in &els {
                if !a.is_zero() {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, &ai), f.one());
                }
                for b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &els {
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_up_to_729() {
        for (p, k) in [(3, 6), (3, 4), (2, 8)] {
            let f = make_field(p, k).unwrap();
            for a in all(&f).iter().skip(1) {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_field() {
        for (p, k) in [(3, 2), (2, 4), (3, 4), (5, 2)] {
            let f = make_field(p, k).unwrap();
            let els = all(&f);
            let fixed = els.iter().filter(|a| f.frobenius(a) == **a).count();
            assert_eq!(fixed, p as usize);
            let mut images: Vec<_> = els.iter().map(|a| f.frobenius(a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), els.len());
            for a in els.iter().take(20) {
                for b in els.iter().take(20) {
                    assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
                    assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                }
            }
            assert_eq!(f.frobenius(&f.generator()), f.pow(&f.generator(), p as u128));
        }
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        let f = make_field(3, 4).unwrap();
        let els = all(&f);
        let mut image: Vec<_> = els.iter().map(|a| f.trace(a, 2).unwrap()).collect();
        for (a, b) in els.iter().zip(els.iter().rev()).take(40) {
            let lhs = f.trace(&f.add(a, b), 2).unwrap();
            let rhs = f.add(&f.trace(a, 2).unwrap(), &f.trace(b, 2).unwrap());
            assert_eq!(lhs, rhs);
        }
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 9);
        let abs: std::collections::BTreeSet<u32> = els.iter().map(|a| f.abs_trace(a)).collect();
        assert_eq!(abs.len(), 3);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        assert_eq!(embed(&FieldElement::ZERO, &f9, &f81).unwrap(), FieldElement::ZERO);
        assert_eq!(embed(&f9.one(), &f9, &f81).unwrap(), f81.one());
        for a in all(&f9) {
            for b in all(&f9) {
                let lhs = embed(&f9.mul(&a, &b), &f9, &f81).unwrap();
                let rhs = f81.mul(&embed(&a, &f9, &f81).unwrap(), &embed(&b, &f9, &f81).unwrap());
                assert_eq!(lhs, rhs);
                let lhs = embed(&f9.add(&a, &b), &f9, &f81).unwrap();
                let rhs = f81.add(&embed(&a, &f9, &f81).unwrap(), &embed(&b, &f9, &f81).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn embedded_generator_is_a_root() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let g = embed(&f4.generator(), &f4, &f16).unwrap();
        let v = f4
            .defining_poly()
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                f16.add(&f16.mul(&acc, &g), &FieldElement::scalar(c))
            });
        assert!(v.is_zero());
        let f8 = make_field(2, 3).unwrap();
        assert!(matches!(
            embed(&f4.generator(), &f4, &f8),
            Err(Error::NoEmbedding(_))
        ));
    }

    #[test]
    fn batch_inversion_matches_single() {
        let f = make_field(7, 3).unwrap();
        let mut vals: Vec<_> = (0..50).map(|i| f.element_at(i * 7)).collect();
        let expect: Vec<_> = vals
            .iter()
            .map(|v| f.inv(v).unwrap_or(FieldElement::ZERO))
            .collect();
        let mut scratch = Vec::new();
        f.batch_invert(&mut vals, &mut scratch);
        assert_eq!(vals, expect);
    }

    #[test]
    fn large_prime_uses_safe_reduction() {
        let p = 2_147_483_647;
        let f = make_field(p, 2).unwrap();
        let a = f.from_coeffs(&[p - 1, p - 2]).unwrap();
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
    }
}
