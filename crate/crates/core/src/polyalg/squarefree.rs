//! One-sided squarefreeness certificates for homogeneous forms.
//!
//! A form `F` of degree `D` is certified when its restriction to some affine
//! line `t ↦ a t + b` is a squarefree univariate polynomial of degree `D`.
//! A square factor `G^2 | F` survives on every line either as a square factor
//! or as a degree drop, so a certificate is never issued for such `F`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::fields::{make_field, FieldElement};
use crate::upoly;

pub const DEFAULT_TRIALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SquarefreeVerdict {
    CertifiedSquarefree,
    LikelyNotSquarefree,
    Inconclusive,
}

pub fn squarefree_certificate(form: &MultiPoly, trials: usize, seed: u64) -> Result<SquarefreeVerdict> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // One variable: the form is read dehomogenized and tested directly.
    if form.nvars() == 1 {
        let ctx = &**form.ctx();
        let u = form.to_univariate()?;
        return Ok(if upoly::is_squarefree(ctx, &u) {
            SquarefreeVerdict::CertifiedSquarefree
        } else {
            SquarefreeVerdict::LikelyNotSquarefree
        });
    }
    if !form.is_homogeneous() {
        return Err(Error::InvalidInput(format!("{form} is not homogeneous")));
    }
    let deg = form.total_degree().unwrap();
    if deg <= 1 {
        return Ok(SquarefreeVerdict::CertifiedSquarefree);
    }
    let support = form.support_vars();
    if support.len() <= 1 {
        // c * x^deg with deg >= 2.
        return Ok(SquarefreeVerdict::LikelyNotSquarefree);
    }
    if trials == 0 {
        return Ok(SquarefreeVerdict::Inconclusive);
    }

    let base = form.ctx();
    let q = base.cardinality();
    let need = 4 * (deg as u128) * (deg as u128);
    let mut e = 1usize;
    while q.pow(e as u32) <= need {
        e += 1;
    }
    let ext = make_field(base.p(), base.degree() * e)?;
    let lifted = form.to_extension(&ext)?;
    let card = ext.cardinality() as u64;
    let ctx = &*ext;
    let n = form.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..trials {
        let lines: Vec<Vec<FieldElement>> = (0..n)
            .map(|_| {
                let b = ext.element_at(rng.gen_range(0..card));
                let a = ext.element_at(rng.gen_range(0..card));
                let mut l = vec![b, a];
                upoly::trim(ctx, &mut l);
                l
            })
            .collect();
        let mut h: Vec<FieldElement> = Vec::new();
        for (m, c) in lifted.terms() {
            let mut t = vec![*c];
            for (line, &exp) in lines.iter().zip(m.exponents()) {
                for _ in 0..exp {
                    t = upoly::mul(ctx, &t, line);
                }
            }
            h = upoly::add(ctx, &h, &t);
        }
        if upoly::degree(&h) == Some(deg as usize) {
            let dh = upoly::derivative(ctx, &h);
            if upoly::degree(&upoly::gcd(ctx, &h, &dh)) == Some(0) {
                return Ok(SquarefreeVerdict::CertifiedSquarefree);
            }
        }
    }
    Ok(SquarefreeVerdict::LikelyNotSquarefree)
}
