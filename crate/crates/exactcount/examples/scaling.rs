//! Wall-clock scaling of the polynomial-space engine.
//!
//! Counts perfect matchings of complete graphs of growing order and
//! prints the time ratio between consecutive sizes. The work roughly
//! doubles per step (2^n stage subsets times polynomial bookkeeping), so
//! the ratios settle a little above 2.
//!
//! ```text
//! cargo run --release --example scaling [max_dim] [threads]
//! ```

use std::time::Instant;

use exactcount::matching::{count_perfect_matchings_with, CountOptions, Graph};

fn main() {
    let mut args = std::env::args().skip(1);
    let max: usize = args.next().map(|a| a.parse().expect("max_dim")).unwrap_or(24);
    let threads: usize = args.next().map(|a| a.parse().expect("threads")).unwrap_or(1);
    let opts = CountOptions {
        threads,
        ..CountOptions::default()
    };

    println!("{:>4} {:>22} {:>10} {:>7}", "dim", "matchings", "seconds", "ratio");
    let mut prev: Option<f64> = None;
    for dim in (8..=max).step_by(2) {
        let g = Graph::complete(dim);
        let t = Instant::now();
        let count = count_perfect_matchings_with(&g, &opts);
        let secs = t.elapsed().as_secs_f64();
        match prev {
            Some(p) if p > 0.0 => {
                println!("{dim:>4} {count:>22} {secs:>10.3} {:>7.2}", secs / p)
            }
            _ => println!("{dim:>4} {count:>22} {secs:>10.3} {:>7}", "-"),
        }
        prev = Some(secs);
    }
}
