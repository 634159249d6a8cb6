//! Dense univariate polynomials over any [`Field`], coefficients in ascending
//! degree order. The zero polynomial is the empty vector.

use crate::field::Field;

pub type UPoly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, a: &mut UPoly<F::Elem>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> UPoly<F::Elem> {
    let mut v = vec![c];
    trim(f, &mut v);
    v
}

/// The monomial `x`.
pub fn x<F: Field>(f: &F) -> UPoly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> UPoly<F::Elem> {
    let mut out: Vec<F::Elem> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let mut out: Vec<F::Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_u32((i as u64 % f.characteristic() as u64) as u32)))
        .collect();
    trim(f, &mut out);
    out
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("trimmed polynomial has nonzero lead");
    let mut r: Vec<F::Elem> = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = f.mul(&r[i], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        let shift = i - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
        }
        q[shift] = c;
    }
    r.truncate(db);
    trim(f, &mut r);
    trim(f, &mut q);
    (q, r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    divrem(f, a, b).1
}

/// Exact division; panics if `b` does not divide `a`.
pub fn div_exact<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let (q, r) = divrem(f, a, b);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero lead");
            scale(f, a, &inv)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(f, &mut a);
    trim(f, &mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn mul_mod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> UPoly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod<F: Field>(f: &F, a: &[F::Elem], mut exp: u128, m: &[F::Elem]) -> UPoly<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut base = rem(f, a, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(f, &acc, &base, m);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul_mod(f, &base, &base, m);
        }
    }
    acc
}

/// `a^(|F|)` modulo `m`, by repeated `p`-th powers so the exponent never overflows.
pub fn frobenius_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic() as u128;
    let mut out = rem(f, a, m);
    for _ in 0..f.degree() {
        out = pow_mod(f, &out, p, m);
    }
    out
}

fn pth_root_poly<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let p = f.characteristic() as usize;
    a.iter().step_by(p).map(|c| f.pth_root(c)).collect()
}

/// Product of the distinct monic irreducible factors of `a` (the radical).
/// Handles the characteristic-`p` case where the derivative vanishes.
pub fn radical<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return if a.is_empty() { a } else { vec![f.one()] };
    }
    let da = derivative(f, &a);
    if da.is_empty() {
        return radical(f, &pth_root_poly(f, &a));
    }
    let c = gcd(f, &a, &da);
    let w = div_exact(f, &a, &c);
    // Strip the factors already in `w`; what is left has p-divisible multiplicities.
    let mut r = c;
    loop {
        let h = gcd(f, &r, &w);
        if degree(&h) == Some(0) {
            break;
        }
        r = div_exact(f, &r, &h);
    }
    if degree(&r) == Some(0) {
        w
    } else {
        let rr = radical(f, &pth_root_poly(f, &r));
        mul(f, &w, &rr)
    }
}

pub fn is_squarefree<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    degree(&radical(f, a)) == degree(a)
}

/// For each multiplicity `j >= 1` occurring in `a`, the total degree of the
/// distinct irreducible factors that divide `a` exactly `j` times.
pub fn multiplicity_degrees<F: Field>(f: &F, a: &[F::Elem]) -> Vec<(usize, usize)> {
    let mut layers = Vec::new();
    let mut cur = monic(f, a);
    while degree(&cur).unwrap_or(0) > 0 {
        let r = radical(f, &cur);
        layers.push(degree(&r).unwrap());
        cur = div_exact(f, &cur, &r);
    }
    let mut out = Vec::new();
    for j in 0..layers.len() {
        let next = layers.get(j + 1).copied().unwrap_or(0);
        if layers[j] > next {
            out.push((j + 1, layers[j] - next));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree polynomial: `(degree, count)`
/// pairs, ascending in degree.
pub fn distinct_degree_profile<F: Field>(f: &F, a: &[F::Elem]) -> Vec<(usize, usize)> {
    let mut h = monic(f, a);
    let mut out = Vec::new();
    let mut xp = x(f);
    let mut k = 0usize;
    while degree(&h).unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > degree(&h).unwrap() {
            let d = degree(&h).unwrap();
            out.push((d, 1));
            break;
        }
        xp = frobenius_mod(f, &xp, &h);
        let g = gcd(f, &h, &sub(f, &xp, &x(f)));
        let dg = degree(&g).unwrap();
        if dg > 0 {
            out.push((k, dg / k));
            h = div_exact(f, &h, &g);
            xp = rem(f, &xp, &h);
        }
    }
    out
}

/// Number of distinct roots of `a` in the degree-`m` extension of the
/// coefficient field, i.e. `deg gcd(a, x^(q^m) - x)`.
pub fn count_roots_in_extension<F: Field>(f: &F, a: &[F::Elem], m: u32) -> u64 {
    let a = monic(f, a);
    match degree(&a) {
        None => panic!("root count of the zero polynomial"),
        Some(0) => return 0,
        _ => {}
    }
    let mut xp = x(f);
    for _ in 0..m {
        xp = frobenius_mod(f, &xp, &a);
    }
    let g = gcd(f, &a, &sub(f, &xp, &x(f)));
    degree(&g).unwrap_or(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn p(c: &[u32]) -> Vec<u32> {
        c.to_vec()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(7);
        let a = p(&[3, 0, 5, 1, 6]);
        let b = p(&[1, 2, 3]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn radical_handles_pth_powers() {
        // (x+1)^5 * x^2 over F_5 has radical x(x+1).
        let f = PrimeField::new(5);
        let x1_5 = p(&[1, 0, 0, 0, 0, 1]);
        let a = mul(&f, &x1_5, &p(&[0, 0, 1]));
        assert_eq!(radical(&f, &a), p(&[0, 1, 1]));
        assert!(!is_squarefree(&f, &a));
        assert!(is_squarefree(&f, &p(&[0, 1, 1])));
    }

    #[test]
    fn multiplicity_layers() {
        // x^2 (x - 1) over F_5
        let f = PrimeField::new(5);
        let a = p(&[0, 0, 4, 1]);
        assert_eq!(multiplicity_degrees(&f, &a), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn ddf_examples() {
        let f3 = PrimeField::new(3);
        assert_eq!(distinct_degree_profile(&f3, &p(&[1, 0, 1])), vec![(2, 1)]);
        let f7 = PrimeField::new(7);
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        assert_eq!(distinct_degree_profile(&f7, &p(&[0, 2, 4, 1])), vec![(1, 3)]);
    }

    #[test]
    fn root_counts_in_extensions() {
        // x^2 + 1 over F_3: no roots in F_3, two in F_9.
        let f = PrimeField::new(3);
        let a = p(&[1, 0, 1]);
        assert_eq!(count_roots_in_extension(&f, &a, 1), 0);
        assert_eq!(count_roots_in_extension(&f, &a, 2), 2);
        assert_eq!(count_roots_in_extension(&f, &a, 3), 0);
    }
}
