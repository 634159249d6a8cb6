//! Exponential sums and point counts over `F_{q^m}` by enumeration.
//!
//! Sums are accumulated as a histogram of absolute traces, so the exact value
//! `Σ_t counts[t] ζ^t` is assembled once at the end. One-variable sums walk
//! Frobenius orbits (the summand is constant on them); multivariable sums
//! evaluate each polynomial as a univariate in the last variable whose
//! coefficients are computed once per prefix.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fields::{make_field, FieldCtx, FieldElement, ENUMERATION_LIMIT};
use crate::polyalg::MultiPoly;
use crate::upoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SumMode {
    /// `Σ_{g(x) ≠ 0} ψ_m(f(x)/g(x))`, one variable.
    OneVar,
    /// `Σ ψ_m(f(x))` over `x ∈ (F_{q^m}^*)^n` with `g(x) ≠ 0`.
    Toric,
    /// `Σ ψ_m(f(x))` over `x ∈ F_{q^m}^n` with `g(x) ≠ 0`.
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CountMode {
    Toric,
    Affine,
}

#[derive(Clone, Debug)]
pub struct SumRequest {
    pub mode: SumMode,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub m: u32,
}

impl SumRequest {
    pub fn new(mode: SumMode, f: MultiPoly, g: MultiPoly, m: u32) -> Result<Self> {
        let req = Self { mode, f, g, m };
        req.validate()?;
        Ok(req)
    }

    fn validate(&self) -> Result<()> {
        if self.f.nvars() != self.g.nvars() {
            return Err(Error::ArityMismatch(format!(
                "f has {} variables, g has {}",
                self.f.nvars(),
                self.g.nvars()
            )));
        }
        if **self.f.ctx() != **self.g.ctx() {
            return Err(Error::DegreeMismatch("f and g live over different fields".into()));
        }
        if self.mode == SumMode::OneVar && self.f.nvars() != 1 {
            return Err(Error::ArityMismatch(format!(
                "one-variable sums need n = 1, got {}",
                self.f.nvars()
            )));
        }
        if self.m == 0 {
            return Err(Error::InvalidInput(
                "extension exponent m must be positive".into(),
            ));
        }
        guard(self.f.ctx(), self.m, self.f.nvars() as u32, "exponential sum")?;
        Ok(())
    }
}

/// `F_{q^m}` for the field `ctx = F_q`.
pub fn extension(ctx: &FieldCtx, m: u32) -> Result<Arc<FieldCtx>> {
    make_field(ctx.p(), ctx.degree() * m as usize)
}

/// Fails unless `q^{m·e} ≤ 10^7`.
pub fn guard(ctx: &FieldCtx, m: u32, e: u32, what: &str) -> Result<()> {
    let size = (ctx.cardinality())
        .checked_pow(m.saturating_mul(e))
        .unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::ScaleExceeded {
            what: what.into(),
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

pub fn exp_sum(req: &SumRequest) -> Result<CycloNum> {
    let counts = trace_histogram(req)?;
    Ok(CycloNum::from_counts(req.f.ctx().p(), &counts))
}

/// `counts[t]` = number of summation points whose argument has absolute trace `t`.
pub fn trace_histogram(req: &SumRequest) -> Result<Vec<i64>> {
    req.validate()?;
    let base = req.f.ctx();
    let ext = extension(base, req.m)?;
    let f = req.f.to_extension(&ext)?;
    let g = req.g.to_extension(&ext)?;
    let p = base.p() as usize;
    match f.nvars() {
        0 => {
            let mut counts = vec![0i64; p];
            let gv = g.eval(&[]);
            if !gv.is_zero() {
                counts[ext.abs_trace(&f.eval(&[])) as usize] += 1;
            }
            Ok(counts)
        }
        1 => Ok(histogram_one(
            &ext,
            &f.to_univariate()?,
            &g.to_univariate()?,
            req.mode,
            base.degree(),
        )),
        _ => Ok(histogram_many(&ext, &f, &g, req.mode == SumMode::Toric)),
    }
}

fn horner(ctx: &FieldCtx, c: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for a in c.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), a);
    }
    acc
}

const BATCH: usize = 1024;

fn histogram_one(
    ext: &FieldCtx,
    f: &[FieldElement],
    g: &[FieldElement],
    mode: SumMode,
    base_degree: usize,
) -> Vec<i64> {
    let p = ext.p() as usize;
    let size = ext.cardinality() as usize;
    let mut counts = vec![0i64; p];
    let mut seen = vec![0u64; size.div_ceil(64)];
    let mut reps: Vec<(FieldElement, i64)> = Vec::with_capacity(BATCH);
    let mut fv = Vec::with_capacity(BATCH);
    let mut gv = Vec::with_capacity(BATCH);
    let mut scratch = Vec::with_capacity(BATCH);

    let mut flush = |reps: &mut Vec<(FieldElement, i64)>, counts: &mut Vec<i64>| {
        fv.clear();
        gv.clear();
        for (x, _) in reps.iter() {
            gv.push(horner(ext, g, x));
            fv.push(horner(ext, f, x));
        }
        if mode == SumMode::OneVar {
            ext.batch_invert(&mut gv, &mut scratch);
        }
        for (i, (_, w)) in reps.iter().enumerate() {
            if gv[i].is_zero() {
                continue;
            }
            let v = if mode == SumMode::OneVar {
                ext.mul(&fv[i], &gv[i])
            } else {
                fv[i]
            };
            counts[ext.abs_trace(&v) as usize] += w;
        }
        reps.clear();
    };

    for i in 0..size {
        if seen[i / 64] >> (i % 64) & 1 == 1 {
            continue;
        }
        let x = ext.element_at(i as u64);
        let mut y = x;
        let mut orbit = 0i64;
        loop {
            let j = ext.index_of(&y) as usize;
            seen[j / 64] |= 1 << (j % 64);
            orbit += 1;
            y = ext.frobenius_iter(&y, base_degree);
            if y == x {
                break;
            }
        }
        if mode == SumMode::Toric && x.is_zero() {
            continue;
        }
        reps.push((x, orbit));
        if reps.len() == BATCH {
            flush(&mut reps, &mut counts);
        }
    }
    flush(&mut reps, &mut counts);
    counts
}

/// A polynomial read as `Σ_j c_j(x_1..x_{n-1}) y^j` with `y = x_n`.
struct Sliced {
    slices: Vec<Vec<(Vec<u32>, FieldElement)>>,
}

impl Sliced {
    fn new(poly: &MultiPoly) -> Self {
        let n = poly.nvars();
        let mut slices: Vec<Vec<(Vec<u32>, FieldElement)>> = Vec::new();
        for (m, c) in poly.terms() {
            let e = m.exponents();
            let j = e[n - 1] as usize;
            if slices.len() <= j {
                slices.resize(j + 1, Vec::new());
            }
            slices[j].push((e[..n - 1].to_vec(), *c));
        }
        Self { slices }
    }

    fn max_exponents(&self, nprefix: usize) -> Vec<u32> {
        let mut out = vec![0u32; nprefix];
        for s in &self.slices {
            for (e, _) in s {
                for (o, &x) in out.iter_mut().zip(e) {
                    *o = (*o).max(x);
                }
            }
        }
        out
    }

    /// Coefficients in `y` at a prefix, given `powers[i][e] = x_i^e`.
    fn at(&self, ctx: &FieldCtx, powers: &[Vec<FieldElement>], out: &mut Vec<FieldElement>) {
        out.clear();
        for s in &self.slices {
            let mut acc = FieldElement::ZERO;
            for (e, c) in s {
                let mut t = *c;
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t = ctx.mul(&t, &powers[i][k as usize]);
                    }
                }
                acc = ctx.add(&acc, &t);
            }
            out.push(acc);
        }
        upoly::trim(ctx, out);
    }
}

struct Prefixes {
    q: u64,
    nprefix: usize,
    max_exp: Vec<u32>,
}

impl Prefixes {
    fn new(ctx: &FieldCtx, nprefix: usize, max_exp: Vec<u32>) -> Self {
        Self {
            q: ctx.cardinality() as u64,
            nprefix,
            max_exp,
        }
    }

    fn total(&self) -> u64 {
        self.q.pow(self.nprefix as u32)
    }

    /// Power tables for the prefix with the given index; `None` if a
    /// coordinate is zero and `toric` is set.
    fn powers(&self, ctx: &FieldCtx, mut idx: u64, toric: bool) -> Option<Vec<Vec<FieldElement>>> {
        let mut out = Vec::with_capacity(self.nprefix);
        for i in 0..self.nprefix {
            let x = ctx.element_at(idx % self.q);
            idx /= self.q;
            if toric && x.is_zero() {
                return None;
            }
            let mut pw = Vec::with_capacity(self.max_exp[i] as usize + 1);
            pw.push(FieldElement::scalar(1));
            for _ in 0..self.max_exp[i] {
                pw.push(ctx.mul(pw.last().unwrap(), &x));
            }
            out.push(pw);
        }
        Some(out)
    }

    /// Splits the prefix range into chunks for the thread pool.
    fn chunks(&self) -> Vec<(u64, u64)> {
        let total = self.total();
        let step = (total / 256).max(1);
        (0..total)
            .step_by(step as usize)
            .map(|s| (s, (s + step).min(total)))
            .collect()
    }
}

fn histogram_many(ext: &FieldCtx, f: &MultiPoly, g: &MultiPoly, toric: bool) -> Vec<i64> {
    let p = ext.p() as usize;
    let n = f.nvars();
    let sf = Sliced::new(f);
    let sg = Sliced::new(g);
    let max_exp: Vec<u32> = sf
        .max_exponents(n - 1)
        .into_iter()
        .zip(sg.max_exponents(n - 1))
        .map(|(a, b)| a.max(b))
        .collect();
    let pre = Prefixes::new(ext, n - 1, max_exp);
    let ys: Vec<FieldElement> = ext
        .enumerate()
        .expect("guarded by the caller")
        .filter(|y| !(toric && y.is_zero()))
        .collect();

    pre.chunks()
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut counts = vec![0i64; p];
            let (mut cf, mut cg) = (Vec::new(), Vec::new());
            for idx in lo..hi {
                let Some(powers) = pre.powers(ext, idx, toric) else {
                    continue;
                };
                sf.at(ext, &powers, &mut cf);
                sg.at(ext, &powers, &mut cg);
                if cg.is_empty() {
                    continue;
                }
                for y in &ys {
                    if horner(ext, &cg, y).is_zero() {
                        continue;
                    }
                    counts[ext.abs_trace(&horner(ext, &cf, y)) as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0i64; p],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `#{x : g(x) = 0}` in the torus `(F_{q^m}^*)^n` or affine space `F_{q^m}^n`.
pub fn count_points(g: &MultiPoly, m: u32, mode: CountMode) -> Result<u64> {
    let base = g.ctx();
    let n = g.nvars();
    if m == 0 {
        return Err(Error::InvalidInput(
            "extension exponent m must be positive".into(),
        ));
    }
    let toric = mode == CountMode::Toric;
    if n == 0 {
        return Ok(g.is_zero() as u64);
    }
    guard(base, m, n as u32 - 1, "point count fibration")?;
    if n == 1 {
        let qm = base
            .cardinality()
            .checked_pow(m)
            .and_then(|q| u64::try_from(q).ok())
            .ok_or_else(|| Error::InvalidInput(format!("q^{m} overflows")))?;
        if g.is_zero() {
            return Ok(if toric { qm - 1 } else { qm });
        }
        let u = g.to_univariate()?;
        let roots = upoly::count_roots_in_extension(&**base, &u, m);
        return Ok(roots - (toric && u[0].is_zero()) as u64);
    }
    let ext = extension(base, m)?;
    let qm = ext.cardinality() as u64;
    let g = g.to_extension(&ext)?;
    let sg = Sliced::new(&g);
    let pre = Prefixes::new(&ext, n - 1, sg.max_exponents(n - 1));
    let full = if toric { qm - 1 } else { qm };
    let total = pre
        .chunks()
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = 0u64;
            let mut h = Vec::new();
            for idx in lo..hi {
                let Some(powers) = pre.powers(&ext, idx, toric) else {
                    continue;
                };
                sg.at(&ext, &powers, &mut h);
                if h.is_empty() {
                    acc += full;
                    continue;
                }
                acc += fiber_roots(&ext, &h) - (toric && h[0].is_zero()) as u64;
            }
            acc
        })
        .sum();
    Ok(total)
}

/// Distinct roots of `h` in its own coefficient field.
fn fiber_roots(ctx: &FieldCtx, h: &[FieldElement]) -> u64 {
    match h.len() {
        1 => 0,
        2 => 1,
        3 if ctx.p() != 2 => {
            let (c, b, a) = (&h[0], &h[1], &h[2]);
            let four_ac = ctx.mul_scalar(&ctx.mul(a, c), 4 % ctx.p());
            let disc = ctx.sub(&ctx.mul(b, b), &four_ac);
            if disc.is_zero() {
                1
            } else if ctx.is_one(&ctx.pow(&disc, (ctx.cardinality() - 1) / 2)) {
                2
            } else {
                0
            }
        }
        _ => upoly::count_roots_in_extension(ctx, h, 1),
    }
}

/// Point count by evaluating `g` at every point; the oracle for [`count_points`].
pub fn count_points_brute(g: &MultiPoly, m: u32, mode: CountMode) -> Result<u64> {
    let n = g.nvars();
    guard(g.ctx(), m, n as u32, "brute-force point count")?;
    let ext = extension(g.ctx(), m)?;
    let g = g.to_extension(&ext)?;
    let elems: Vec<FieldElement> = ext
        .enumerate()?
        .filter(|x| mode == CountMode::Affine || !x.is_zero())
        .collect();
    let mut count = 0u64;
    let mut idx = vec![0usize; n];
    let mut point = vec![FieldElement::ZERO; n];
    if n > 0 && elems.is_empty() {
        return Ok(0);
    }
    loop {
        for (x, &i) in point.iter_mut().zip(&idx) {
            *x = elems[i];
        }
        if g.eval(&point).is_zero() {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(count);
        }
    }
}
