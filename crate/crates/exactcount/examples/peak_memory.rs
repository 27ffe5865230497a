//! Live-storage comparison of the two engines.
//!
//! Both engines report the peak number of simultaneously live ring
//! elements in their working containers. The label-ring engine keeps a
//! full 2^n-coefficient element (plus convolution scratch) and doubles
//! every dimension step; the polynomial-space engine parks a geometric
//! ladder of checkpoint matrices and grows like a small power of n.
//!
//! ```text
//! cargo run --example peak_memory
//! ```

use exactcount::hafnian::{hafnian_labelring_with_stats, hafnian_polyspace_with_stats};
use exactcount::matching::{adjacency_matrix, Graph};
use exactcount::ring::BigIntRing;

fn main() {
    println!("{:>4} {:>16} {:>16} {:>8}", "dim", "polyspace", "labelring", "ratio");
    for dim in (4..=20).step_by(2) {
        let b = adjacency_matrix(&BigIntRing, &Graph::complete(dim)).unwrap();
        let (hp, poly) = hafnian_polyspace_with_stats(&BigIntRing, &b);
        let (hl, label) = hafnian_labelring_with_stats(&BigIntRing, &b);
        assert_eq!(hp, hl);
        println!(
            "{dim:>4} {:>16} {:>16} {:>8.1}",
            poly.peak_live_ring_elems,
            label.peak_live_ring_elems,
            label.peak_live_ring_elems as f64 / poly.peak_live_ring_elems as f64
        );
    }
    println!("\npeaks count ring elements, not bytes; the ratio column is labelring/polyspace");
}
