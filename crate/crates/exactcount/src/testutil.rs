//! Shared helpers for the unit tests. Compiled only under cfg(test).

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ring::Ring;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// (2n-1)!! = 1*3*5*...*(2n-1); the number of ways to pair up 2n items.
pub fn double_factorial_odd(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut k = 1u64;
    for _ in 0..n {
        acc *= BigInt::from(k);
        k += 2;
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 1..=n {
        acc *= BigInt::from(k as u64);
    }
    acc
}

/// Exercises the commutative-ring laws on every consecutive triple of the
/// given samples. Panics with a descriptive message on the first violation.
pub fn check_ring_axioms<R: Ring>(ring: &R, samples: &[R::Elem]) {
    let zero = ring.zero();
    let one = ring.one();
    for w in samples.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        assert_eq!(ring.add(a, b), ring.add(b, a), "add commutes");
        assert_eq!(ring.mul(a, b), ring.mul(b, a), "mul commutes");
        assert_eq!(
            ring.add(&ring.add(a, b), c),
            ring.add(a, &ring.add(b, c)),
            "add associates"
        );
        assert_eq!(
            ring.mul(&ring.mul(a, b), c),
            ring.mul(a, &ring.mul(b, c)),
            "mul associates"
        );
        assert_eq!(
            ring.mul(a, &ring.add(b, c)),
            ring.add(&ring.mul(a, b), &ring.mul(a, c)),
            "mul distributes over add"
        );
        assert_eq!(ring.add(a, &zero), a.clone(), "zero is additive identity");
        assert_eq!(ring.mul(a, &one), a.clone(), "one is multiplicative identity");
        assert!(ring.is_zero(&ring.add(a, &ring.neg(a))), "a + (-a) = 0");
        assert!(ring.is_zero(&ring.mul(a, &zero)), "a * 0 = 0");
        assert_eq!(ring.sub(a, b), ring.add(a, &ring.neg(b)), "sub = add neg");
        let mut acc = a.clone();
        ring.add_assign(&mut acc, b);
        assert_eq!(acc, ring.add(a, b), "add_assign agrees with add");
        let mut acc = a.clone();
        ring.sub_assign(&mut acc, b);
        assert_eq!(acc, ring.sub(a, b), "sub_assign agrees with sub");
    }
}
