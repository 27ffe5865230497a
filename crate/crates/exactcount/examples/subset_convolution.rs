//! Arithmetic in the label ring: coefficients indexed by subsets of a
//! label set, where every label squares to zero.
//!
//! Multiplication is subset convolution. The naive rule walks all 3^m
//! subset pairs; the fast path runs ranked zeta and Moebius transforms in
//! O(2^m m^2) ring operations. Both are exposed, and this example checks
//! them against each other while printing a small worked product.
//!
//! ```text
//! cargo run --example subset_convolution
//! ```

use std::time::Instant;

use exactcount::label_ring::LabelRing;
use exactcount::ring::{BigIntRing, ModRing, Ring};
use num_bigint::BigInt;

fn main() {
    // (1 + 2u1)(3 + 4u2) = 3 + 6u1 + 4u2 + 8u1u2 with labels u1, u2.
    let lr = LabelRing::new(BigIntRing, 2);
    let a = lr.from_pairs(&[(0b00, BigInt::from(1)), (0b01, BigInt::from(2))]);
    let b = lr.from_pairs(&[(0b00, BigInt::from(3)), (0b10, BigInt::from(4))]);
    let prod = lr.mul(&a, &b);
    println!("(1 + 2u1)(3 + 4u2):");
    for mask in 0..lr.len() {
        println!("  coefficient on {mask:02b}: {}", lr.coeff(&prod, mask));
    }

    // Labels are nilpotent: u1 * u1 = 0.
    let u1 = lr.singleton(0b01, BigInt::from(1));
    assert!(lr.is_zero(&lr.mul(&u1, &u1)));
    println!("u1 * u1 = 0");

    // Fast and naive multiplication agree; the gap grows with m.
    let ring = ModRing::new(1_000_003);
    for m in [10usize, 14] {
        let lr = LabelRing::new(ring.clone(), m);
        let a: Vec<u64> = (0..lr.len()).map(|i| (7 * i as u64 + 3) % 1_000_003).collect();
        let b: Vec<u64> = (0..lr.len()).map(|i| (11 * i as u64 + 5) % 1_000_003).collect();

        let t = Instant::now();
        let fast = lr.mul(&a, &b);
        let t_fast = t.elapsed();
        let t = Instant::now();
        let naive = lr.mul_naive(&a, &b);
        let t_naive = t.elapsed();
        assert_eq!(fast, naive);
        println!(
            "m={m:<3} fast {:>10.3?}  naive {:>10.3?}",
            t_fast, t_naive
        );
    }

    // Top coefficients of long products stream through the ranked domain
    // without materializing intermediate products.
    let lr = LabelRing::new(ring, 8);
    let factors: Vec<Vec<u64>> = (0..6)
        .map(|f| (0..lr.len()).map(|i| ((f + 2) * i as u64 + f) % 97).collect())
        .collect();
    let mut folded = lr.one();
    for f in &factors {
        folded = lr.mul(&folded, f);
    }
    let streamed = lr.product_top_coefficient(&factors);
    assert_eq!(streamed, lr.top_coeff(&folded));
    println!("streamed product top over 6 factors, 8 labels: {streamed}");
}
