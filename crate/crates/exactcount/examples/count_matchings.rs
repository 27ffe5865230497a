//! Count perfect matchings of a few graphs with each engine.
//!
//! ```text
//! cargo run --example count_matchings
//! ```

use exactcount::hafnian::HafnianAlgo;
use exactcount::matching::{
    count_perfect_matchings, count_perfect_matchings_with, CountOptions, Graph,
};

fn main() {
    // A six-vertex graph with exactly five perfect matchings.
    let g = Graph::new(
        6,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 5),
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();

    println!("six-vertex example ({} edges):", g.edge_count());
    for algo in [
        HafnianAlgo::Bruteforce,
        HafnianAlgo::LabelRing,
        HafnianAlgo::PolySpace,
    ] {
        println!("  {:<10} {}", algo.name(), count_perfect_matchings(&g, algo));
    }

    // Complete graphs count (2n-1)!! perfect matchings.
    println!("\ncomplete graphs:");
    for vc in (2..=12).step_by(2) {
        let count = count_perfect_matchings(&Graph::complete(vc), HafnianAlgo::PolySpace);
        println!("  K_{vc:<3} {count}");
    }

    // The polynomial-space engine can spread its outermost choices over
    // threads, and can work modulo coprime prime powers instead of over
    // big integers. Both knobs leave the count bit-identical.
    let g = Graph::random(18, 7);
    let plain = count_perfect_matchings(&g, HafnianAlgo::PolySpace);
    let threaded = count_perfect_matchings_with(
        &g,
        &CountOptions {
            threads: 4,
            ..CountOptions::default()
        },
    );
    let crt = count_perfect_matchings_with(
        &g,
        &CountOptions {
            crt: true,
            ..CountOptions::default()
        },
    );
    assert_eq!(plain, threaded);
    assert_eq!(plain, crt);
    println!(
        "\nrandom 18-vertex graph (seed 7): {plain} matchings, identical single-threaded, threaded and via residues"
    );
}
