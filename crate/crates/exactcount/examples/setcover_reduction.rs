//! Turn a 0/1 permanent into exact-cover counting.
//!
//! The reduction builds, for a chosen modulus m, a set-cover instance
//! whose number of exact covers is congruent to per(M) mod m. Running it
//! for a few coprime moduli and recombining the counts recovers the
//! permanent exactly.
//!
//! ```text
//! cargo run --example setcover_reduction
//! ```

use exactcount::matrix::BinaryMatrix;
use exactcount::permanent::permanent_ryser;
use exactcount::ring::BigIntRing;
use exactcount::setcover::{
    count_exact_covers_dp, count_exact_covers_dp_mod, recover_permanent_crt, recovery_moduli,
    reduce_permanent_to_setcover, write_instance,
};

fn main() {
    let m = BinaryMatrix::from_int_rows(&[
        vec![1, 1, 0, 1],
        vec![1, 1, 1, 0],
        vec![0, 1, 1, 1],
        vec![1, 0, 1, 1],
    ])
    .unwrap();
    let per = permanent_ryser(&BigIntRing, &m.to_matrix(&BigIntRing));
    println!("per(M) = {per} by Ryser\n");

    // One instance, modulus 3, groups of 2 rows.
    let art = reduce_permanent_to_setcover(&m, 2, 3).unwrap();
    println!(
        "modulus 3, k=2: {} groups, ground set of {} elements, {} member sets",
        art.group_count,
        art.instance.ground_size(),
        art.instance.family_len()
    );
    for (j, block) in art.blocks.iter().enumerate() {
        println!(
            "  group {j}: label block at {}..{} (anchors {} and {}), weights {:?}",
            block.offset,
            block.offset + block.size,
            block.left_anchor,
            block.right_anchor,
            art.weights[j]
        );
    }
    let covers = count_exact_covers_dp(&art.instance).unwrap();
    println!(
        "  exact covers: {covers}; {covers} mod 3 = {} = per(M) mod 3\n",
        count_exact_covers_dp_mod(&art.instance, 3).unwrap()
    );

    // The instance is plain text, ready for files or the CLI.
    let text = write_instance(&art.instance);
    println!("first lines of the emitted instance:");
    for line in text.lines().take(5) {
        println!("  {line}");
    }
    println!("  ... {} lines total\n", text.lines().count());

    // Full recovery: enough coprime prime-power moduli to clear n!.
    println!("recovery moduli for n=4: {:?}", recovery_moduli(4));
    let recovered = recover_permanent_crt(&m, 2).unwrap();
    println!("recovered permanent = {recovered}");
    assert_eq!(recovered, per);
}
