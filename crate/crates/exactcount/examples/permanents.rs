//! Permanents three ways: Ryser's formula, direct expansion, and the
//! hafnian of the doubled matrix [[0, A], [A^T, 0]].
//!
//! ```text
//! cargo run --example permanents
//! ```

use exactcount::hafnian::hafnian_polyspace;
use exactcount::matrix::{block_antidiagonal, Matrix};
use exactcount::permanent::{permanent_bruteforce, permanent_ryser, permanent_via_hafnian};
use exactcount::ring::BigIntRing;

fn main() {
    let rows = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
    let a = Matrix::from_int_rows(&BigIntRing, &rows).unwrap();

    println!("0/1 circulant, per = 2:");
    println!("  ryser      {}", permanent_ryser(&BigIntRing, &a));
    println!(
        "  bruteforce {}",
        permanent_bruteforce(&BigIntRing, &a).unwrap()
    );
    println!("  hafnian    {}", permanent_via_hafnian(&BigIntRing, &a));

    // The embedding itself: per(A) = haf of the doubled matrix, because
    // perfect pairings of the doubled index set that respect the block
    // structure are exactly the permutations of the columns.
    let doubled = block_antidiagonal(&BigIntRing, &a);
    println!(
        "  doubled {}x{} hafnian = {}",
        doubled.dim(),
        doubled.dim(),
        hafnian_polyspace(&BigIntRing, &doubled)
    );

    // n! sanity scan on all-ones matrices.
    println!("\nall-ones matrices:");
    for n in 1..=8usize {
        let a = Matrix::from_int_rows(&BigIntRing, &vec![vec![1; n]; n]).unwrap();
        println!("  per(J_{n}) = {}", permanent_ryser(&BigIntRing, &a));
    }
}
