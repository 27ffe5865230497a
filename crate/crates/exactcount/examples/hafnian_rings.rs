//! Hafnians over different coefficient rings.
//!
//! The engines are generic over a commutative ring, so the same matrix
//! can be counted over the integers or modulo a prime without touching
//! the algorithm.
//!
//! ```text
//! cargo run --example hafnian_rings
//! ```

use exactcount::hafnian::{hafnian, hafnian_polyspace, HafnianAlgo};
use exactcount::matrix::SymZeroDiag;
use exactcount::ring::{BigIntRing, ModRing, Ring};

fn main() {
    // haf = 2*13 + 3*11 + 5*7 = 94: one term per way to pair up {0,1,2,3}.
    let rows = vec![
        vec![0, 2, 3, 5],
        vec![2, 0, 7, 11],
        vec![3, 7, 0, 13],
        vec![5, 11, 13, 0],
    ];

    let b = SymZeroDiag::from_int_rows(&BigIntRing, &rows).unwrap();
    println!("over the integers:");
    for algo in [
        HafnianAlgo::Bruteforce,
        HafnianAlgo::LabelRing,
        HafnianAlgo::PolySpace,
    ] {
        println!("  {:<10} {}", algo.name(), hafnian(&BigIntRing, &b, algo));
    }

    println!("modulo small primes:");
    for p in [2u64, 7, 101] {
        let ring = ModRing::new(p);
        let bm = SymZeroDiag::from_int_rows(&ring, &rows).unwrap();
        println!("  haf mod {p:<4} = {}", hafnian_polyspace(&ring, &bm));
    }

    // Negative entries are fine, and the lenient constructor reads only
    // the strict upper triangle, so the junk below it is ignored.
    let upper = vec![
        vec![9, -1, 4, 2],
        vec![9, 9, -3, 5],
        vec![9, 9, 9, -2],
        vec![9, 9, 9, 9],
    ];
    let b = SymZeroDiag::from_upper(
        &BigIntRing,
        upper
            .iter()
            .map(|r| r.iter().map(|&v| BigIntRing.from_i64(v)).collect())
            .collect(),
    )
    .unwrap();
    println!("signed upper-triangle input: haf = {}", hafnian_polyspace(&BigIntRing, &b));
}
