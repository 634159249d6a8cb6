//! The field abstraction shared by prime fields and their extensions.

use std::fmt::Debug;

use crate::arith::{inv_mod, pow_mod};

pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime subfield.
    fn degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u32(&self, n: u32) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Number of elements, if it fits in a `u128`.
    fn cardinality(&self) -> Option<u128> {
        (self.characteristic() as u128).checked_pow(self.degree() as u32)
    }
}

/// The prime field `F_p` with elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// `p` must be prime; callers validate.
    pub fn new(p: u32) -> Self {
        Self { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_u32(&self, n: u32) -> u32 {
        n % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(inv_mod(*a as u64, self.p as u64) as u32)
        }
    }
    fn pth_root(&self, a: &u32) -> u32 {
        *a
    }
    fn pow(&self, a: &u32, exp: u128) -> u32 {
        let e = if exp == 0 {
            0
        } else {
            ((exp - 1) % (self.p as u128 - 1)) as u64 + 1
        };
        pow_mod(*a as u64, e, self.p as u64) as u32
    }
}
