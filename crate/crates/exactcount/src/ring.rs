use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A commutative ring, passed around as an explicit context value so that
/// rings with runtime parameters (a modulus, a truncation degree, a label
/// count) fit the same generic code as parameter-free rings.
///
/// Everything downstream (matrices, hafnians, the set-cover DP) is generic
/// over this trait, which is what lets one squeeze implementation run over
/// integers, residues, truncated polynomials and label vectors alike.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// In-place accumulate; rings with heap-backed elements override this
    /// to avoid a temporary per addition in the hot loops.
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BigIntRing;

impl Ring for BigIntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::from(1)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        Zero::is_zero(a)
    }

    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }

    fn sub_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a -= b;
    }
}

/// Z modulo a runtime modulus m >= 2. Elements are canonical residues in
/// [0, m); products go through u128 so any m < 2^64 is safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2, got {modulus}");
        ModRing { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduce a big integer to its canonical residue.
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0)
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - *a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.modulus as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}
