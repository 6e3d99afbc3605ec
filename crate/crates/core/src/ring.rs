//! Coefficient rings for the integer recurrences.
//!
//! Residues modulo `m` carry their modulus at runtime, so they cannot
//! implement `num_traits::Zero` directly. The recurrences are written against
//! [`IntRing`] instead, a ring *context* that hands out elements.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[allow(clippy::wrong_self_convention)]
pub trait IntRing: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_u64(&self, x: u64) -> Self::Elem;
    fn from_int(&self, x: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Canonical integer representative (in `[0, m)` for residues).
    fn to_int(&self, a: &Self::Elem) -> BigInt;

    /// `Some(e)` when the ring is `Z/2^e`.
    ///
    /// `R(n,k)` and `R^{-1}(n,k)` are divisible by `2^{(n-k)/2}`, so over such
    /// a ring only a band of width `2e` below the diagonal is nonzero.
    fn two_power_exponent(&self) -> Option<u32> {
        None
    }

    fn one(&self) -> Self::Elem {
        self.from_u64(1)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn pow(&self, base: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }
}

/// The exact integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl IntRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_u64(&self, x: u64) -> BigInt {
        BigInt::from(x)
    }
    fn from_int(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn to_int(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

/// Residues modulo a machine-word modulus `2 <= m < 2^63`.
#[derive(Debug, Clone, Copy)]
pub struct Zmod {
    modulus: u64,
    two_power: Option<u32>,
}

impl Zmod {
    pub const MAX_MODULUS: u64 = 1 << 63;

    /// Returns `None` for moduli outside `[2, 2^63)`.
    pub fn new(modulus: u64) -> Option<Self> {
        if !(2..Self::MAX_MODULUS).contains(&modulus) {
            return None;
        }
        let two_power = modulus.is_power_of_two().then(|| modulus.trailing_zeros());
        Some(Zmod { modulus, two_power })
    }

    pub fn from_big(modulus: &BigInt) -> Option<Self> {
        modulus.to_u64().and_then(Zmod::new)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl IntRing for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_u64(&self, x: u64) -> u64 {
        x % self.modulus
    }
    fn from_int(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        x.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.modulus - b)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_int(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    fn two_power_exponent(&self) -> Option<u32> {
        self.two_power
    }
}

/// Canonical residue of `x` modulo `m > 0`, in `[0, m)`.
pub fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    debug_assert!(m.is_positive());
    x.mod_floor(m)
}
