//! Sparse multivariate polynomials over a [`FieldCtx`].

mod factor;
mod parse;
mod squarefree;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fields::{FieldCtx, FieldElement};

pub use factor::{factor_degree_profile, pole_profile, FactorDegreeProfile, PoleProfile};
pub use parse::parse_poly;
pub use squarefree::{squarefree_certificate, SquarefreeVerdict, DEFAULT_TRIALS};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, nvars: usize, c: FieldElement) -> Self {
        Self::from_terms(ctx, nvars, [(vec![0; nvars], c)])
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, nvars: usize, c: i64) -> Self {
        Self::constant(ctx, nvars, ctx.from_int(c))
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(ctx, nvars, [(e, ctx.one())])
    }

    /// Sums like terms and drops zeros. Panics on an exponent vector of the wrong length.
    pub fn from_terms<I>(ctx: &Arc<FieldCtx>, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let mut out = Self::zero(ctx, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent arity");
            out.add_term(Monomial(e), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let ctx = Arc::clone(&self.ctx);
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ctx.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> FieldElement {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .copied()
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert!(*self.ctx == *other.ctx, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ctx.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.0.clone(), self.ctx.mul(c, s)));
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), self.ctx.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.nvars, self.ctx.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.0.clone(), *c));
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    /// Top-degree homogeneous component.
    pub fn leading_form(&self) -> Result<Self> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    /// Sets `x_i = 0` for the zero-based indices in `zeroed`, keeping all variables.
    pub fn restrict_zero(&self, zeroed: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| zeroed.iter().all(|&i| m.0[i] == 0))
            .map(|(m, c)| (m.0.clone(), *c));
        Self::from_terms(&self.ctx, self.nvars, terms)
    }

    /// Sets the listed variables to zero and removes them, renumbering the rest.
    pub fn drop_vars(&self, zeroed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !zeroed.contains(i)).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| zeroed.iter().all(|&i| m.0[i] == 0))
            .map(|(m, c)| (keep.iter().map(|&i| m.0[i]).collect(), *c));
        Self::from_terms(&self.ctx, keep.len(), terms)
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let ctx = &*self.ctx;
        let mut acc = FieldElement::ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = ctx.mul(&t, &ctx.pow(x, e as u128));
                }
            }
            acc = ctx.add(&acc, &t);
        }
        acc
    }

    /// The same polynomial with coefficients embedded in `target`.
    pub fn to_extension(&self, target: &Arc<FieldCtx>) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.0.clone(), target.embed_from(&self.ctx, c)?));
        }
        Ok(Self::from_terms(target, self.nvars, terms))
    }

    /// Dense coefficient vector of a one-variable polynomial.
    pub fn to_univariate(&self) -> Result<Vec<FieldElement>> {
        if self.nvars != 1 {
            return Err(Error::NotUnivariate);
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![FieldElement::ZERO; deg + 1];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = *c;
        }
        crate::upoly::trim(&*self.ctx, &mut out);
        Ok(out)
    }

    pub fn from_univariate(ctx: &Arc<FieldCtx>, coeffs: &[FieldElement]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], *c));
        Self::from_terms(ctx, 1, terms)
    }

    /// Terms with coefficients as residues mod `p`; requires a prime field.
    pub fn prime_terms(&self) -> Result<Vec<(Vec<u32>, u32)>> {
        if self.ctx.degree() != 1 {
            return Err(Error::UnsupportedFieldDegree(self.ctx.degree()));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.coeff(0)))
            .collect())
    }

    fn var_name(&self, i: usize) -> String {
        if self.nvars == 1 {
            "x".to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    fn coeff_string(&self, c: &FieldElement) -> (String, bool) {
        let k = self.ctx.degree();
        if c.coeffs(k)[1..].iter().all(|&v| v == 0) {
            return (c.coeff(0).to_string(), true);
        }
        let parts: Vec<String> = (0..k)
            .rev()
            .filter(|&i| c.coeff(i) != 0)
            .map(|i| match (i, c.coeff(i)) {
                (0, v) => v.to_string(),
                (1, 1) => "t".to_string(),
                (1, v) => format!("{v}*t"),
                (_, 1) => format!("t^{i}"),
                (_, v) => format!("{v}*t^{i}"),
            })
            .collect();
        (format!("({})", parts.join(" + ")), false)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.var_name(i)
                        } else {
                            format!("{}^{}", self.var_name(i), e)
                        }
                    })
                    .collect();
            let (cs, scalar) = self.coeff_string(c);
            if vars.is_empty() {
                write!(f, "{cs}")?;
            } else if scalar && cs == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultiPoly[F_{}^{}; n={}]({})",
            self.ctx.p(),
            self.ctx.degree(),
            self.nvars,
            self
        )
    }
}

/// All subsets of `0..n` as sorted index lists, smallest first.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn leading_forms() {
        let f7 = make_field(7, 1).unwrap();
        let g = parse_poly("y^2 - x*(x-1)*(x-3)", 2, &f7).unwrap();
        assert_eq!(g.leading_form().unwrap(), parse_poly("-x^3", 2, &f7).unwrap());
        let f5 = make_field(5, 1).unwrap();
        let h = parse_poly("x1*x2 - 1", 2, &f5).unwrap();
        assert_eq!(h.leading_form().unwrap().to_string(), "x1*x2");
        let hom = parse_poly("x1^2 + 3*x1*x2", 2, &f5).unwrap();
        assert_eq!(hom.leading_form().unwrap(), hom);
        assert_eq!(MultiPoly::zero(&f5, 2).leading_form(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn restrictions() {
        let f5 = make_field(5, 1).unwrap();
        let g = parse_poly("x1*x2 - 1", 2, &f5).unwrap();
        assert_eq!(g.restrict_zero(&[]), g);
        assert_eq!(g.restrict_zero(&[0]), MultiPoly::from_int(&f5, 2, -1));
        let s = parse_poly("x1 + x2", 2, &f5).unwrap();
        assert!(s.restrict_zero(&[0, 1]).is_zero());
        assert_eq!(g.drop_vars(&[1]).nvars(), 1);
    }

    #[test]
    fn restriction_matches_pointwise_evaluation() {
        for p in [3u32, 5] {
            let f = make_field(p, 1).unwrap();
            let g = parse_poly("x1^2*x2 + 2*x1 + x2^3 + 1", 2, &f).unwrap();
            for zeroed in subsets(2) {
                let r = g.restrict_zero(&zeroed);
                for a in 0..p {
                    for b in 0..p {
                        let mut pt = [FieldElement::scalar(a), FieldElement::scalar(b)];
                        assert_eq!(r.eval(&pt), {
                            for &i in &zeroed {
                                pt[i] = FieldElement::ZERO;
                            }
                            g.eval(&pt)
                        });
                    }
                }
            }
        }
    }

    #[test]
    fn homogeneous_components_sum_to_whole() {
        let f7 = make_field(7, 1).unwrap();
        let g = parse_poly("x^3*y + 2*x*y + 5*y^2 + 3*x + 1", 2, &f7).unwrap();
        let d = g.total_degree().unwrap();
        let sum = (0..=d).fold(MultiPoly::zero(&f7, 2), |acc, i| {
            acc.add(&g.homogeneous_component(i))
        });
        assert_eq!(sum, g);
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = subsets(3);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], Vec::<usize>::new());
        assert_eq!(s[7], vec![0, 1, 2]);
    }
}
