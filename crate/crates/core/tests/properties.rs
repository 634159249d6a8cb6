//! Randomized invariants across the arithmetic layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use unitroots_core::cyclotomic::{char_psi, CycloNum, PiOrd};
use unitroots_core::fields::make_field;
use unitroots_core::lseries::{berlekamp_massey, series_of_rational};
use unitroots_core::polyalg::{parse_poly, MultiPoly};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cyclo(p: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec(
        (
            -30i64..=30,
            prop::sample::select(vec![1i64, 1, 1, 2, 3, p as i64]),
        ),
        (p - 1) as usize,
    )
    .prop_map(move |cs| CycloNum::from_coeffs(p, cs.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap())
}

fn integral(p: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec(-40i64..=40, (p - 1) as usize)
        .prop_map(move |cs| CycloNum::from_coeffs(p, cs.into_iter().map(|n| rat(n, 1)).collect()).unwrap())
}

fn add_ord(a: PiOrd, b: PiOrd) -> PiOrd {
    match (a, b) {
        (PiOrd::Finite(x), PiOrd::Finite(y)) => PiOrd::Finite(x + y),
        _ => PiOrd::Infinity,
    }
}

fn pair_strategy() -> impl Strategy<Value = (CycloNum, CycloNum)> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| (cyclo(p), cyclo(p)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn valuation_is_multiplicative_and_ultrametric((a, b) in pair_strategy()) {
        prop_assert_eq!((&a * &b).ord_pi(), add_ord(a.ord_pi(), b.ord_pi()));
        prop_assert!((&a + &b).ord_pi() >= a.ord_pi().min(b.ord_pi()));
        if a.ord_pi() != b.ord_pi() {
            prop_assert_eq!((&a + &b).ord_pi(), a.ord_pi().min(b.ord_pi()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn reduction_is_a_ring_map(
        (a, b) in prop::sample::select(vec![3u32, 5, 7, 11]).prop_flat_map(|p| (integral(p), integral(p)))
    ) {
        let p = a.p() as u64;
        let (ra, rb) = (a.reduce_mod_pi().unwrap() as u64, b.reduce_mod_pi().unwrap() as u64);
        prop_assert_eq!((&a + &b).reduce_mod_pi().unwrap() as u64, (ra + rb) % p);
        prop_assert_eq!((&a * &b).reduce_mod_pi().unwrap() as u64, ra * rb % p);
    }
}

#[test]
fn character_orthogonality() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        let total = (0..p as i64).fold(CycloNum::zero(p), |acc, t| &acc + &CycloNum::zeta_pow(p, t));
        assert!(total.is_zero(), "p = {p}");
    }
    for (p, k) in [(2u32, 3usize), (3, 2), (5, 2), (7, 2), (13, 1)] {
        let ctx = make_field(p, k).unwrap();
        let mut total = CycloNum::zero(p);
        for a in ctx.enumerate().unwrap() {
            total = &total + &char_psi(&ctx, &a);
        }
        assert!(total.is_zero(), "F_{p}^{k}");
    }
}

/// `a·d = b·c` in `F_p[T]`.
fn cross_equal(p: u32, a: &[u32], d: &[u32], b: &[u32], c: &[u32]) -> bool {
    let mul = |x: &[u32], y: &[u32]| {
        let mut out = vec![0u64; x.len() + y.len()];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                out[i + j] = (out[i + j] + u as u64 * v as u64) % p as u64;
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    };
    mul(a, d) == mul(b, c)
}

fn rational_strategy() -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>)> {
    prop::sample::select(vec![5u32, 7]).prop_flat_map(|p| {
        (
            Just(p),
            prop::collection::vec(0..p, 1..=4),
            prop::collection::vec(0..p, 0..=4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn berlekamp_massey_round_trip((p, num, den_tail) in rational_strategy()) {
        let mut den = vec![1u32];
        den.extend(den_tail);
        let s = series_of_rational(p, &num, &den, 24).unwrap();
        let r = berlekamp_massey(p, &s.coeffs).unwrap();
        prop_assert_eq!(r.denominator[0], 1);
        prop_assert!(r.denominator.len() <= den.len());
        prop_assert!(cross_equal(p, &r.numerator, &den, &num, &r.denominator));
    }
}

fn poly_strategy() -> impl Strategy<Value = (u32, usize, usize, Vec<(Vec<u32>, Vec<u32>)>)> {
    (
        prop::sample::select(vec![(2u32, 1usize), (3, 1), (5, 1), (7, 1), (3, 2), (2, 3)]),
        1usize..=3,
    )
        .prop_flat_map(|((p, k), n)| {
            let term = (prop::collection::vec(0u32..4, n), prop::collection::vec(0..p, k));
            (Just(p), Just(k), Just(n), prop::collection::vec(term, 0..6))
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn parser_round_trip((p, k, n, terms) in poly_strategy()) {
        let ctx = make_field(p, k).unwrap();
        let poly = MultiPoly::from_terms(
            &ctx,
            n,
            terms.into_iter().map(|(e, c)| (e, ctx.from_coeffs(&c).unwrap())),
        );
        let text = poly.to_string();
        let back = parse_poly(&text, n, &ctx).unwrap();
        prop_assert_eq!(back, poly, "{}", text);
    }
}
