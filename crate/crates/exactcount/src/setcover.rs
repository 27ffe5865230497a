use num_bigint::BigInt;

use crate::crt::{coprime_moduli, crt_combine};
use crate::error::{Error, Result};
use crate::matrix::{significant_lines, BinaryMatrix};
use crate::ring::{BigIntRing, ModRing, Ring};

/// Ground-set size above which the exact-cover DP refuses to run.
pub const DP_GROUND_CAP: usize = 24;
/// Family size above which subfamily enumeration refuses to run.
pub const BRUTEFORCE_FAMILY_CAP: usize = 20;
/// Largest row group the submatrix-permanent weights are computed for.
pub const GROUP_WEIGHT_CAP: usize = 7;

/// An exact-set-cover instance: a ground set {0..ground_size-1} and a
/// family of nonempty member sets, stored as bitmasks. Repeated member
/// sets are allowed and count as distinct members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    ground_size: usize,
    family: Vec<u64>,
}

impl SetCoverInstance {
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut family = Vec::with_capacity(sets.len());
        for (i, set) in sets.iter().enumerate() {
            let mut mask = 0u64;
            for &e in set {
                if e >= ground_size {
                    return Err(Error::invalid(format!(
                        "set {} mentions element {e}, ground size is {ground_size}",
                        i + 1
                    )));
                }
                if mask >> e & 1 == 1 {
                    return Err(Error::invalid(format!(
                        "set {} repeats element {e}",
                        i + 1
                    )));
                }
                mask |= 1 << e;
            }
            family.push(mask);
        }
        SetCoverInstance::from_masks(ground_size, family)
    }

    pub fn from_masks(ground_size: usize, family: Vec<u64>) -> Result<Self> {
        if ground_size > 63 {
            return Err(Error::cap("ground-set size", 63, ground_size as u64));
        }
        let full = full_mask(ground_size);
        for (i, &mask) in family.iter().enumerate() {
            if mask == 0 {
                return Err(Error::invalid(format!("set {} is empty", i + 1)));
            }
            if mask & !full != 0 {
                return Err(Error::invalid(format!(
                    "set {} leaves the ground set of size {ground_size}",
                    i + 1
                )));
            }
        }
        Ok(SetCoverInstance {
            ground_size,
            family,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn family_len(&self) -> usize {
        self.family.len()
    }

    pub fn family_masks(&self) -> &[u64] {
        &self.family
    }

    pub fn member_elements(&self, idx: usize) -> Vec<usize> {
        let mask = self.family[idx];
        (0..self.ground_size).filter(|&e| mask >> e & 1 == 1).collect()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Parse the set-cover text format (elements 0-based):
///
/// ```text
/// u <ground_size>
/// s <e1> <e2> ...   (strictly increasing elements, one line per set)
/// ```
pub fn parse_instance(text: &str) -> Result<SetCoverInstance> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'u <ground_size>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "u" {
        return Err(Error::parse(line_no, "expected header 'u <ground_size>'"));
    }
    let ground_size: usize = tokens[1]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad ground size '{}'", tokens[1])))?;

    let mut sets = Vec::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "s" {
            return Err(Error::parse(line_no, "expected set line 's <elements>'"));
        }
        if tokens.len() == 1 {
            return Err(Error::parse(line_no, "set line has no elements"));
        }
        let mut set = Vec::with_capacity(tokens.len() - 1);
        for t in &tokens[1..] {
            let e: usize = t
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad element '{t}'")))?;
            if let Some(&last) = set.last() {
                if e <= last {
                    return Err(Error::parse(
                        line_no,
                        "elements must be strictly increasing",
                    ));
                }
            }
            set.push(e);
        }
        sets.push(set);
    }
    SetCoverInstance::new(ground_size, sets)
}

/// Canonical text form; `parse_instance` inverts it byte for byte.
pub fn write_instance(inst: &SetCoverInstance) -> String {
    let mut out = format!("u {}\n", inst.ground_size);
    for i in 0..inst.family_len() {
        out.push('s');
        for e in inst.member_elements(i) {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}

/// Exact covers counted over subsets of the ground set: c[S] sums, over
/// members F inside S that contain min(S), the counts c[S - F]. Bucketing
/// the family by minimum element turns the inner filter into a short scan.
fn count_exact_covers_ring<R: Ring>(ring: &R, inst: &SetCoverInstance) -> Result<R::Elem> {
    let n = inst.ground_size;
    if n > DP_GROUND_CAP {
        return Err(Error::cap(
            "ground-set size for the exact-cover DP",
            DP_GROUND_CAP as u64,
            n as u64,
        ));
    }
    let mut by_min: Vec<Vec<u64>> = vec![Vec::new(); n.max(1)];
    for &f in &inst.family {
        by_min[f.trailing_zeros() as usize].push(f);
    }
    let full = full_mask(n);
    let mut c = vec![ring.zero(); 1 << n];
    c[0] = ring.one();
    for s in 1..=full {
        let e = s.trailing_zeros() as usize;
        let mut acc = ring.zero();
        for &f in &by_min[e] {
            if f & s == f {
                ring.add_assign(&mut acc, &c[(s & !f) as usize]);
            }
        }
        c[s as usize] = acc;
    }
    Ok(c[full as usize].clone())
}

pub fn count_exact_covers_dp(inst: &SetCoverInstance) -> Result<BigInt> {
    count_exact_covers_ring(&BigIntRing, inst)
}

/// Same recurrence evaluated in Z_modulus; all the reduction pipeline
/// needs is the residue, and a u64 table is far lighter than of a big
/// integer one.
pub fn count_exact_covers_dp_mod(inst: &SetCoverInstance, modulus: u64) -> Result<u64> {
    count_exact_covers_ring(&ModRing::new(modulus), inst)
}

/// Oracle counter: try all 2^|family| subfamilies.
pub fn count_exact_covers_bruteforce(inst: &SetCoverInstance) -> Result<BigInt> {
    Ok(BigInt::from(exact_covers_bruteforce(inst)?.len()))
}

/// The covers themselves (as sorted member-index lists), for structural
/// assertions about reduced instances.
pub fn exact_covers_bruteforce(inst: &SetCoverInstance) -> Result<Vec<Vec<usize>>> {
    let k = inst.family.len();
    if k > BRUTEFORCE_FAMILY_CAP {
        return Err(Error::cap(
            "family size for subfamily enumeration",
            BRUTEFORCE_FAMILY_CAP as u64,
            k as u64,
        ));
    }
    let full = full_mask(inst.ground_size);
    let mut covers = Vec::new();
    'outer: for pick in 0u64..1 << k {
        let mut union = 0u64;
        for i in 0..k {
            if pick >> i & 1 == 1 {
                let f = inst.family[i];
                if union & f != 0 {
                    continue 'outer;
                }
                union |= f;
            }
        }
        if union == full {
            covers.push((0..k).filter(|&i| pick >> i & 1 == 1).collect());
        }
    }
    Ok(covers)
}

/// Permanent of the 0/1 submatrix M[rows, cols], reduced mod `modulus`.
/// Group sizes are capped, so plain assignment enumeration is fine.
pub fn group_weight(
    m: &BinaryMatrix,
    rows: &[usize],
    cols: &[usize],
    modulus: u64,
) -> Result<u64> {
    if rows.len() != cols.len() {
        return Err(Error::invalid(format!(
            "{} rows against {} columns",
            rows.len(),
            cols.len()
        )));
    }
    if rows.len() > GROUP_WEIGHT_CAP {
        return Err(Error::cap(
            "group size for permanent weights",
            GROUP_WEIGHT_CAP as u64,
            rows.len() as u64,
        ));
    }
    if modulus < 2 {
        return Err(Error::invalid(format!("modulus {modulus} must be at least 2")));
    }
    for set in [rows, cols] {
        for (i, &a) in set.iter().enumerate() {
            if a >= m.n() {
                return Err(Error::invalid(format!("index {a} out of range")));
            }
            if set[..i].contains(&a) {
                return Err(Error::invalid(format!("index {a} repeated")));
            }
        }
    }

    fn rec(m: &BinaryMatrix, rows: &[usize], cols: &[usize], i: usize, used: u64) -> u64 {
        if i == rows.len() {
            return 1;
        }
        let mut total = 0;
        for (j, &c) in cols.iter().enumerate() {
            if used >> j & 1 == 0 && m.get(rows[i], c) {
                total += rec(m, rows, cols, i + 1, used | 1 << j);
            }
        }
        total
    }

    Ok(rec(m, rows, cols, 0, 0) % modulus)
}

/// How big each label block is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSetSizing {
    /// ceil(log2 modulus) + 2 elements: the smallest block whose
    /// 2^(size-2) one-anchor subsets can express any weight below the
    /// modulus.
    Minimal,
    /// 2 ceil(log2 n) + 2 elements, generous enough for any modulus up to
    /// n^2.
    Wide,
}

/// Which concrete subsets encode the weights 1..w. Any injective choice
/// works; two are provided so tests can confirm the counts don't care.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelOrder {
    /// Weight c maps to the free-element pattern c-1.
    Lex,
    /// Weight c maps to the pattern capacity-c.
    ReverseLex,
}

#[derive(Clone, Copy, Debug)]
pub struct ReductionOptions {
    pub sizing: LabelSetSizing,
    pub order: LabelOrder,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            sizing: LabelSetSizing::Minimal,
            order: LabelOrder::Lex,
        }
    }
}

/// One label block: `size` consecutive ground elements starting at
/// `offset`, with the first two as the left and right anchors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelBlock {
    pub offset: usize,
    pub size: usize,
    pub left_anchor: usize,
    pub right_anchor: usize,
}

impl LabelBlock {
    fn free_pattern_mask(&self, pattern: usize) -> u64 {
        let mut mask = 0u64;
        for t in 0..self.size - 2 {
            if pattern >> t & 1 == 1 {
                mask |= 1 << (self.offset + 2 + t);
            }
        }
        mask
    }
}

/// Everything the reduction produced, kept together so callers can emit
/// the instance, inspect the layout, or re-derive the weights.
#[derive(Clone, Debug)]
pub struct ReductionArtifacts {
    pub instance: SetCoverInstance,
    /// Number of row groups m; rows j*k..(j+1)*k form group j.
    pub group_count: usize,
    /// Rows (and columns) per group, k.
    pub group_size: usize,
    pub modulus: u64,
    /// Ground elements 0..matrix_columns are the matrix columns; the rest
    /// are label-block elements.
    pub matrix_columns: usize,
    pub blocks: Vec<LabelBlock>,
    /// The k-subsets of columns, as bitmasks in ascending order; row t
    /// of each weights row refers to subsets[t].
    pub subsets: Vec<u64>,
    /// weights[j][t] = per(M[group j rows, subsets[t]]) mod modulus.
    pub weights: Vec<Vec<u64>>,
}

/// Encode "count exact covers" so that the count is congruent to per(M)
/// mod `modulus`.
///
/// Columns become ground elements. For every row group j and every
/// k-subset T of columns, the family holds w_j(T) sets "T plus left
/// anchor of block j plus a distinct filler pattern", where w_j(T) is the
/// submatrix permanent mod `modulus`; the block's remaining subsets,
/// anchored right, complete whatever filler the chosen left set used. A
/// cover picks one left set and one right set per block, so covers
/// correspond to (column partition, weight index) choices and their count
/// is sum over partitions of the product of group weights, which is
/// per(M) mod `modulus` by expansion along row groups.
pub fn reduce_permanent_to_setcover(
    m: &BinaryMatrix,
    k: usize,
    modulus: u64,
) -> Result<ReductionArtifacts> {
    reduce_permanent_to_setcover_with(m, k, modulus, &ReductionOptions::default())
}

pub fn reduce_permanent_to_setcover_with(
    m: &BinaryMatrix,
    k: usize,
    modulus: u64,
    opts: &ReductionOptions,
) -> Result<ReductionArtifacts> {
    let n = m.n();
    if k == 0 {
        return Err(Error::invalid("group size k must be positive"));
    }
    if n % k != 0 {
        return Err(Error::invalid(format!(
            "group size {k} does not divide the dimension {n}"
        )));
    }
    if k > GROUP_WEIGHT_CAP {
        return Err(Error::cap(
            "group size for permanent weights",
            GROUP_WEIGHT_CAP as u64,
            k as u64,
        ));
    }
    if modulus < 2 {
        return Err(Error::invalid(format!("modulus {modulus} must be at least 2")));
    }

    let groups = n / k;
    let ell = match opts.sizing {
        LabelSetSizing::Minimal => ceil_log2(modulus) + 2,
        LabelSetSizing::Wide => {
            let ell = 2 * ceil_log2(n.max(1) as u64) + 2;
            if ell < 2 || (1u64 << (ell - 2)) < modulus {
                return Err(Error::invalid(format!(
                    "wide label blocks of size {ell} cannot encode weights mod {modulus}"
                )));
            }
            ell
        }
    };
    let capacity = 1usize << (ell - 2);
    debug_assert!(capacity as u64 >= modulus);

    let ground = n + groups * ell;
    if ground > 63 {
        return Err(Error::cap("ground-set size", 63, ground as u64));
    }

    let subsets = k_subsets(n, k);
    let blocks: Vec<LabelBlock> = (0..groups)
        .map(|j| {
            let offset = n + j * ell;
            LabelBlock {
                offset,
                size: ell,
                left_anchor: offset,
                right_anchor: offset + 1,
            }
        })
        .collect();

    let mut family = Vec::new();
    let mut weights = Vec::with_capacity(groups);
    for (j, block) in blocks.iter().enumerate() {
        let rows: Vec<usize> = (j * k..(j + 1) * k).collect();
        let mut row_weights = Vec::with_capacity(subsets.len());
        for &t in &subsets {
            let cols: Vec<usize> = (0..n).filter(|&c| t >> c & 1 == 1).collect();
            let w = group_weight(m, &rows, &cols, modulus)?;
            for c in 1..=w {
                let pattern = match opts.order {
                    LabelOrder::Lex => (c - 1) as usize,
                    LabelOrder::ReverseLex => capacity - c as usize,
                };
                family.push(t | 1 << block.left_anchor | block.free_pattern_mask(pattern));
            }
            row_weights.push(w);
        }
        for pattern in 0..capacity {
            family.push(1 << block.right_anchor | block.free_pattern_mask(pattern));
        }
        weights.push(row_weights);
    }

    Ok(ReductionArtifacts {
        instance: SetCoverInstance::from_masks(ground, family)?,
        group_count: groups,
        group_size: k,
        modulus,
        matrix_columns: n,
        blocks,
        subsets,
        weights,
    })
}

/// The moduli the recovery pipeline uses for an n-by-n matrix: smallest
/// prime powers above n, enough of them that the product clears n!, the
/// upper bound on a 0/1 permanent.
pub fn recovery_moduli(n: usize) -> Vec<u64> {
    let bound = factorial(n);
    let mut count = 1;
    loop {
        let moduli = coprime_moduli(count, n as u64);
        let product: BigInt = moduli.iter().map(|&m| BigInt::from(m)).product();
        if product > bound {
            return moduli;
        }
        count += 1;
    }
}

/// per(M) exactly, by running the reduction for each recovery modulus,
/// counting covers mod each, and recombining.
pub fn recover_permanent_crt(m: &BinaryMatrix, k: usize) -> Result<BigInt> {
    let moduli = recovery_moduli(m.n());
    let mut residues = Vec::with_capacity(moduli.len());
    for &modulus in &moduli {
        let artifacts = reduce_permanent_to_setcover(m, k, modulus)?;
        let r = count_exact_covers_dp_mod(&artifacts.instance, modulus)?;
        residues.push((r, modulus));
    }
    crt_combine(&residues)
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for v in 1..=n {
        acc *= BigInt::from(v as u64);
    }
    acc
}

fn ceil_log2(x: u64) -> usize {
    debug_assert!(x >= 1);
    (64 - (x - 1).leading_zeros()) as usize
}

/// All k-element subsets of {0..n-1} as bitmasks in increasing value.
fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit = 1u64 << n;
    let mut v = (1u64 << k) - 1;
    while v < limit {
        out.push(v);
        let low = v & v.wrapping_neg();
        let ripple = v + low;
        if ripple >= limit {
            break;
        }
        v = ((ripple ^ v) >> 2) / low | ripple;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permanent::permanent_ryser;
    use crate::ring::BigIntRing;
    use crate::testutil::rng;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    fn inst(ground: usize, sets: &[&[usize]]) -> SetCoverInstance {
        SetCoverInstance::new(ground, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tiny_instances() {
        // {0,1},{2} and {0},{1,2} are the two covers.
        let i = inst(3, &[&[0, 1], &[2], &[0], &[1, 2]]);
        assert_eq!(count_exact_covers_dp(&i).unwrap(), BigInt::from(2));
        assert_eq!(count_exact_covers_bruteforce(&i).unwrap(), BigInt::from(2));
        // No way to cover element 1.
        let i = inst(2, &[&[0]]);
        assert_eq!(count_exact_covers_dp(&i).unwrap(), BigInt::from(0));
        // Empty ground set: one cover, the empty subfamily.
        let i = inst(0, &[]);
        assert_eq!(count_exact_covers_dp(&i).unwrap(), BigInt::from(1));
        assert_eq!(count_exact_covers_bruteforce(&i).unwrap(), BigInt::from(1));
    }

    #[test]
    fn matching_counts_as_exact_covers() {
        // Edges of the 6-vertex example as 2-element sets: its perfect
        // matchings are exactly the exact covers, five of them.
        let edges: &[&[usize]] = &[
            &[0, 1],
            &[0, 2],
            &[0, 3],
            &[0, 5],
            &[1, 2],
            &[1, 3],
            &[2, 3],
            &[2, 4],
            &[3, 5],
            &[4, 5],
        ];
        let i = inst(6, edges);
        assert_eq!(count_exact_covers_dp(&i).unwrap(), BigInt::from(5));
        assert_eq!(count_exact_covers_bruteforce(&i).unwrap(), BigInt::from(5));
    }

    fn random_instance(r: &mut ChaCha8Rng) -> SetCoverInstance {
        let ground = r.gen_range(1..=9usize);
        let members = r.gen_range(1..=12usize);
        let family: Vec<u64> = (0..members)
            .map(|_| loop {
                let m = r.gen_range(0..1u64 << ground);
                if m != 0 {
                    break m;
                }
            })
            .collect();
        SetCoverInstance::from_masks(ground, family).unwrap()
    }

    #[test]
    fn dp_matches_bruteforce_randomized() {
        let mut r = rng(81);
        for _ in 0..60 {
            let i = random_instance(&mut r);
            assert_eq!(
                count_exact_covers_dp(&i).unwrap(),
                count_exact_covers_bruteforce(&i).unwrap()
            );
        }
    }

    #[test]
    fn mod_dp_matches_exact_dp() {
        let mut r = rng(82);
        for _ in 0..40 {
            let i = random_instance(&mut r);
            let exact = count_exact_covers_dp(&i).unwrap();
            for modulus in [2u64, 3, 7, 101] {
                let want = ModRing::new(modulus).reduce_bigint(&exact);
                assert_eq!(count_exact_covers_dp_mod(&i, modulus).unwrap(), want);
            }
        }
    }

    #[test]
    fn enumerated_covers_are_partitions() {
        let mut r = rng(83);
        for _ in 0..20 {
            let i = random_instance(&mut r);
            for cover in exact_covers_bruteforce(&i).unwrap() {
                let mut union = 0u64;
                for &idx in &cover {
                    assert_eq!(union & i.family_masks()[idx], 0, "members overlap");
                    union |= i.family_masks()[idx];
                }
                assert_eq!(union, full_mask(i.ground_size()), "not a cover");
            }
        }
    }

    #[test]
    fn parse_and_write_round_trip() {
        let text = "u 4\ns 0 1\ns 2\ns 1 2 3\n";
        let i = parse_instance(text).unwrap();
        assert_eq!(write_instance(&i), text);
        let with_comments = "# cover\nu 4\n\ns 0 1\ns 2\n# done\ns 1 2 3\n";
        assert_eq!(parse_instance(with_comments).unwrap(), i);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_instance("").is_err());
        assert!(parse_instance("v 3\n").is_err());
        assert!(parse_instance("u 3\ns 2 1\n").is_err(), "not increasing");
        assert!(parse_instance("u 3\ns 1 1\n").is_err(), "repeat");
        assert!(parse_instance("u 3\ns 3\n").is_err(), "out of range");
        assert!(parse_instance("u 3\ns\n").is_err(), "empty set");
        assert!(parse_instance("u 3\ns 0\nx 1\n").is_err(), "junk line");
    }

    #[test]
    fn group_weight_examples() {
        let ones = BinaryMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(group_weight(&ones, &[0, 1], &[0, 1], 5).unwrap(), 2);
        assert_eq!(group_weight(&ones, &[0, 1], &[0, 1], 2).unwrap(), 0);
        let id = BinaryMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(group_weight(&id, &[0, 1], &[0, 1], 3).unwrap(), 1);
        assert_eq!(group_weight(&id, &[0], &[1], 3).unwrap(), 0);
        assert!(group_weight(&id, &[0, 1], &[0], 3).is_err());
        assert!(group_weight(&id, &[0, 0], &[0, 1], 3).is_err());
    }

    #[test]
    fn k_subsets_enumeration() {
        assert_eq!(k_subsets(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(k_subsets(3, 3), vec![0b111]);
        assert_eq!(k_subsets(3, 0), vec![0]);
        assert_eq!(k_subsets(2, 3), Vec::<u64>::new());
    }

    #[test]
    fn reduction_small_hand_case() {
        // All-ones 2x2, k=1, mod 3: weights are all 1, covers are the two
        // column assignments, and the count 2 = per mod 3.
        let m = BinaryMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let art = reduce_permanent_to_setcover(&m, 1, 3).unwrap();
        assert_eq!(art.group_count, 2);
        assert_eq!(art.blocks[0].size, 4);
        assert_eq!(art.instance.ground_size(), 2 + 2 * 4);
        assert_eq!(art.weights, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(
            count_exact_covers_dp(&art.instance).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn every_cover_uses_two_sets_per_group() {
        let m = BinaryMatrix::from_int_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        let art = reduce_permanent_to_setcover(&m, 1, 2).unwrap();
        let covers = exact_covers_bruteforce(&art.instance).unwrap();
        assert!(!covers.is_empty());
        for cover in covers {
            assert_eq!(cover.len(), 2 * art.group_count);
        }
    }

    fn random_binary(n: usize, r: &mut ChaCha8Rng) -> BinaryMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| r.gen_range(0..=1)).collect())
            .collect();
        BinaryMatrix::from_int_rows(&rows).unwrap()
    }

    #[test]
    fn cover_count_is_permanent_mod_m() {
        let mut r = rng(84);
        for _ in 0..12 {
            for (n, k) in [(2usize, 1usize), (2, 2), (4, 2)] {
                let m = random_binary(n, &mut r);
                let per = permanent_ryser(&BigIntRing, &m.to_matrix(&BigIntRing));
                for modulus in [2u64, 3, 5] {
                    let art = reduce_permanent_to_setcover(&m, k, modulus).unwrap();
                    let count = count_exact_covers_dp_mod(&art.instance, modulus).unwrap();
                    let want = ModRing::new(modulus).reduce_bigint(&per);
                    assert_eq!(count, want, "n={n} k={k} mod={modulus}");
                }
            }
        }
    }

    #[test]
    fn weight_encoding_order_does_not_matter() {
        let mut r = rng(85);
        for _ in 0..8 {
            let m = random_binary(4, &mut r);
            for modulus in [3u64, 5] {
                let lex = reduce_permanent_to_setcover_with(
                    &m,
                    2,
                    modulus,
                    &ReductionOptions {
                        order: LabelOrder::Lex,
                        ..Default::default()
                    },
                )
                .unwrap();
                let rev = reduce_permanent_to_setcover_with(
                    &m,
                    2,
                    modulus,
                    &ReductionOptions {
                        order: LabelOrder::ReverseLex,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(
                    count_exact_covers_dp(&lex.instance).unwrap(),
                    count_exact_covers_dp(&rev.instance).unwrap()
                );
            }
        }
    }

    #[test]
    fn wide_blocks_give_the_same_residue() {
        let mut r = rng(86);
        let m = random_binary(2, &mut r);
        let per = permanent_ryser(&BigIntRing, &m.to_matrix(&BigIntRing));
        let wide = reduce_permanent_to_setcover_with(
            &m,
            1,
            2,
            &ReductionOptions {
                sizing: LabelSetSizing::Wide,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(wide.blocks[0].size, 4);
        let count = count_exact_covers_dp_mod(&wide.instance, 2).unwrap();
        assert_eq!(count, ModRing::new(2).reduce_bigint(&per));
    }

    #[test]
    fn recover_matches_ryser() {
        let mut r = rng(87);
        for _ in 0..10 {
            for (n, k) in [(2usize, 1usize), (2, 2), (4, 2)] {
                let m = random_binary(n, &mut r);
                let per = permanent_ryser(&BigIntRing, &m.to_matrix(&BigIntRing));
                assert_eq!(recover_permanent_crt(&m, k).unwrap(), per, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn reduce_validates_arguments() {
        let m = BinaryMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(reduce_permanent_to_setcover(&m, 0, 3).is_err());
        assert!(reduce_permanent_to_setcover(&m, 3, 3).is_err(), "k does not divide n");
        assert!(reduce_permanent_to_setcover(&m, 1, 1).is_err(), "modulus too small");
        let big = BinaryMatrix::from_int_rows(
            &(0..8).map(|_| vec![1i64; 8]).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(reduce_permanent_to_setcover(&big, 8, 3).is_err(), "group cap");
        // Ground set would need 8 + 8*12 elements.
        assert!(reduce_permanent_to_setcover(&big, 1, 1 << 10).is_err(), "ground cap");
    }

    #[test]
    fn dp_cap_enforced() {
        let sets: Vec<Vec<usize>> = (0..25).map(|e| vec![e]).collect();
        let i = SetCoverInstance::new(25, sets).unwrap();
        assert!(count_exact_covers_dp(&i).is_err());
        assert!(count_exact_covers_dp_mod(&i, 5).is_err());
    }
}
