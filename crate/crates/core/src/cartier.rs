//! The operator `ψ_p ∘ g^{p-1}` on `R_d` and `W_d`, its Fredholm
//! determinant, and the mod-`p` zeta congruences it realizes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, inv_mod};
use crate::error::{Error, Result};
use crate::expsums::{count_points, CountMode};
use crate::field::PrimeField;
use crate::lseries::{one_minus_t_pow, zeta_series_mod_p, FpSeries};
use crate::polyalg::MultiPoly;
use crate::upoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpaceKind {
    /// Polynomials of degree `≤ d`.
    Rd,
    /// Polynomials of degree `≤ d` divisible by `x_1⋯x_n`.
    Wd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialSpace {
    pub kind: SpaceKind,
    pub n: usize,
    pub d: u32,
    /// Exponent vectors in graded-lex order.
    pub basis: Vec<Vec<u32>>,
}

impl MonomialSpace {
    pub fn new(kind: SpaceKind, n: usize, d: u32) -> Self {
        let lo = match kind {
            SpaceKind::Rd => 0,
            SpaceKind::Wd => 1,
        };
        let mut basis = Vec::new();
        let mut u = vec![lo; n];
        if n == 0 {
            basis.push(Vec::new());
        } else if lo as usize * n <= d as usize {
            loop {
                if u.iter().sum::<u32>() <= d {
                    basis.push(u.clone());
                }
                let mut i = 0;
                while i < n {
                    u[i] += 1;
                    if u[i] <= d {
                        break;
                    }
                    u[i] = lo;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        basis.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum()).then_with(|| a.cmp(b)));
        Self { kind, n, d, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `binom(n+d, n)` for `R_d`, `binom(d, n)` for `W_d`.
    pub fn expected_dim(&self) -> u128 {
        match self.kind {
            SpaceKind::Rd => binomial(self.n as u64 + self.d as u64, self.n as u64),
            SpaceKind::Wd => binomial(self.d as u64, self.n as u64),
        }
    }
}

/// Square matrix over `F_p`; `entries[i][j]` is row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpMatrix {
    pub p: u32,
    pub entries: Vec<Vec<u32>>,
}

impl FpMatrix {
    pub fn zero(p: u32, dim: usize) -> Self {
        Self {
            p,
            entries: vec![vec![0; dim]; dim],
        }
    }

    pub fn identity(p: u32, dim: usize) -> Self {
        let mut m = Self::zero(p, dim);
        for i in 0..dim {
            m.entries[i][i] = 1 % p;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// Matrix of `ψ_p ∘ g^{p-1}` on `space`; column `j` holds the image of basis monomial `j`.
pub fn cartier_matrix(g: &MultiPoly, space: &MonomialSpace) -> Result<FpMatrix> {
    if g.ctx().degree() != 1 {
        return Err(Error::UnsupportedFieldDegree(g.ctx().degree()));
    }
    let p = g.ctx().p();
    if g.nvars() != space.n {
        return Err(Error::ArityMismatch(format!(
            "g has {} variables, the space has {}",
            g.nvars(),
            space.n
        )));
    }
    if g.total_degree().unwrap_or(0) > space.d {
        return Err(Error::InvalidInput(format!(
            "deg g = {} exceeds d = {}",
            g.total_degree().unwrap_or(0),
            space.d
        )));
    }
    let power = g.pow(p - 1).prime_terms()?;
    let index: HashMap<&[u32], usize> = space
        .basis
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_slice(), i))
        .collect();
    let pp = p as u64;
    let columns: Vec<Result<Vec<u32>>> = space
        .basis
        .par_iter()
        .map(|u| {
            let mut col = vec![0u64; space.dim()];
            for (v, c) in &power {
                let w: Vec<u32> = u.iter().zip(v).map(|(a, b)| a + b).collect();
                if w.iter().any(|e| e % p != 0) {
                    continue;
                }
                let w: Vec<u32> = w.iter().map(|e| e / p).collect();
                let &row = index
                    .get(w.as_slice())
                    .ok_or_else(|| Error::InvalidInput(format!("image monomial {w:?} left the space")))?;
                col[row] = (col[row] + *c as u64) % pp;
            }
            Ok(col.into_iter().map(|x| x as u32).collect())
        })
        .collect();
    let mut m = FpMatrix::zero(p, space.dim());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, x) in col?.into_iter().enumerate() {
            m.entries[i][j] = x;
        }
    }
    Ok(m)
}

/// `det(I - MT)` over `F_p`: the reversed characteristic polynomial, from a
/// Hessenberg reduction.
pub fn fredholm_det(m: &FpMatrix) -> Vec<u32> {
    let n = m.dim();
    let p = m.p as u64;
    let mut h: Vec<Vec<u64>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for k in j + 2..n {
            let u = h[k][j] * inv % p;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                h[k][c] = (h[k][c] + p - u * h[j + 1][c] % p) % p;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[k]) % p;
            }
        }
    }
    // χ_m(x) = (x - h_{m-1,m-1}) χ_{m-1} - Σ_i (∏ subdiagonal) h_{m-i-1,m-1} χ_{m-i-1}
    let fp = PrimeField::new(m.p);
    let mut chi: Vec<Vec<u32>> = vec![vec![1]];
    for k in 1..=n {
        let lin = vec![((p - h[k - 1][k - 1]) % p) as u32, 1];
        let mut next = upoly::mul(&fp, &lin, &chi[k - 1]);
        let mut t = 1u64;
        for i in 1..k {
            t = t * h[k - i][k - i - 1] % p;
            let c = (t * h[k - i - 1][k - 1] % p) as u32;
            if c != 0 {
                next = upoly::sub(&fp, &next, &upoly::scale(&fp, &chi[k - i - 1], &c));
            }
        }
        chi.push(next);
    }
    let mut out = chi[n].clone();
    out.resize(n + 1, 0);
    out.reverse();
    upoly::trim(&fp, &mut out);
    out
}

/// Both sides of the mod-`p` zeta congruence for one hypersurface.
#[derive(Clone, Debug, Serialize)]
pub struct WanCheck {
    pub kind: SpaceKind,
    pub n: usize,
    pub d: u32,
    pub dim: usize,
    pub truncation: usize,
    pub counts: Vec<u64>,
    pub matrix: FpMatrix,
    pub det: Vec<u32>,
    /// `Z^{(-1)^n}` mod `p`.
    pub zeta_side: FpSeries,
    /// `det / (1 - T)` for tori, `det` for affine space.
    pub det_side: FpSeries,
    /// `(1 - T) · det` for tori, `det` for affine space.
    pub alt_side: FpSeries,
    pub holds: bool,
    pub alt_holds: bool,
    /// Whether `(1 - T)` divides `det` (tori only).
    pub det_divisible: Option<bool>,
}

/// Compares `Z(H,T)^{(-1)^n}` with the Fredholm determinant through `truncation` terms.
///
/// Tori use `R_d` and the orientation `Z^{(-1)^n} ≡ det / (1 - T)`; the
/// alternative `(1 - T) · det` is evaluated alongside. Affine space uses
/// `W_d` and `Z^{(-1)^n} ≡ det`.
pub fn wan_congruence_check(g: &MultiPoly, d: u32, kind: SpaceKind, truncation: usize) -> Result<WanCheck> {
    let ctx = g.ctx();
    if ctx.degree() != 1 {
        return Err(Error::UnsupportedFieldDegree(ctx.degree()));
    }
    let p = ctx.p();
    let n = g.nvars();
    let space = MonomialSpace::new(kind, n, d);
    let matrix = cartier_matrix(g, &space)?;
    let det = fredholm_det(&matrix);
    let mode = match kind {
        SpaceKind::Rd => CountMode::Toric,
        SpaceKind::Wd => CountMode::Affine,
    };
    let counts = (1..=truncation as u32)
        .map(|m| count_points(g, m, mode))
        .collect::<Result<Vec<_>>>()?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let zeta_side = zeta_series_mod_p(p, &counts, sign)?;
    let det_series = FpSeries::from_poly(p, &det, truncation);
    let (det_side, alt_side, det_divisible) = match kind {
        SpaceKind::Rd => {
            let one_minus_t = FpSeries::from_poly(p, &one_minus_t_pow(p, 1), truncation);
            let fp = PrimeField::new(p);
            let divisible = upoly::rem(&fp, &det, &one_minus_t_pow(p, 1)).is_empty();
            (
                det_series.mul(&one_minus_t.inverse()?),
                det_series.mul(&one_minus_t),
                Some(divisible),
            )
        }
        SpaceKind::Wd => (det_series.clone(), det_series, None),
    };
    Ok(WanCheck {
        kind,
        n,
        d,
        dim: space.dim(),
        truncation,
        counts,
        holds: zeta_side == det_side,
        alt_holds: zeta_side == alt_side,
        matrix,
        det,
        zeta_side,
        det_side,
        alt_side,
        det_divisible,
    })
}
