//! Word-sized modular arithmetic helpers.

/// Deterministic primality test by trial division; adequate for `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`. Panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// p-adic valuation of a nonzero machine integer.
pub fn val_p(mut n: u64, p: u64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `base^exp` if it fits in a `u128`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_fifty() {
        let got: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(7, 3), 35);
    }

    #[test]
    fn inverses() {
        for a in 1..13u64 {
            assert_eq!(a * inv_mod(a, 13) % 13, 1);
        }
    }
}
