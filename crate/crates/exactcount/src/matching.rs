use num_bigint::BigInt;
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crt::{coprime_moduli, crt_combine};
use crate::error::{Error, Result};
use crate::hafnian::{hafnian, hafnian_polyspace_threads, HafnianAlgo};
use crate::matrix::{significant_lines, SymZeroDiag};
use crate::ring::{BigIntRing, ModRing, Ring};

/// Simple undirected graph: no loops, no parallel edges. Edges are kept
/// normalized (low vertex first) and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Graph {
            vertex_count,
            edges: norm,
        })
    }

    pub fn complete(vertex_count: usize) -> Graph {
        let edges = (0..vertex_count)
            .flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)))
            .collect();
        Graph {
            vertex_count,
            edges,
        }
    }

    /// Each possible edge present with probability 1/2, drawn from a
    /// fixed-stream generator so a seed pins the graph on every platform.
    pub fn random(vertex_count: usize, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = (0..vertex_count)
            .flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)))
            .filter(|_| rng.next_u64() & 1 == 1)
            .collect();
        Graph {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }
}

/// Parse the graph text format (vertices are 0-based):
///
/// ```text
/// p <vertex_count> <edge_count>
/// e <u> <v>        (exactly edge_count lines)
/// ```
///
/// '#' comments and blank lines are ignored anywhere; anything else beyond
/// the declared edges is rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'p <vertices> <edges>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "p" {
        return Err(Error::parse(line_no, "expected header 'p <vertices> <edges>'"));
    }
    let vertex_count: usize = tokens[1]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad vertex count '{}'", tokens[1])))?;
    let edge_count: usize = tokens[2]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad edge count '{}'", tokens[2])))?;

    let mut edges = Vec::with_capacity(edge_count);
    let mut last_line = line_no;
    for _ in 0..edge_count {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("expected {edge_count} edge lines")))?;
        last_line = line_no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != "e" {
            return Err(Error::parse(line_no, "expected edge line 'e <u> <v>'"));
        }
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad vertex '{t}'")))
        };
        edges.push((parse(tokens[1])?, parse(tokens[2])?));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "trailing content after edge lines"));
    }
    Graph::new(vertex_count, edges)
}

/// Canonical text form; `parse_graph` inverts it byte for byte.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count, g.edges.len());
    for (u, v) in &g.edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// 0/1 adjacency matrix over the given ring. The shape only exists for
/// even orders, matching the hafnian input type.
pub fn adjacency_matrix<R: Ring>(ring: &R, g: &Graph) -> Result<SymZeroDiag<R>> {
    let n = g.vertex_count;
    if n % 2 != 0 {
        return Err(Error::invalid(format!(
            "adjacency embedding needs an even vertex count, got {n}"
        )));
    }
    let mut entries = vec![ring.zero(); n * n];
    for &(u, v) in &g.edges {
        entries[u * n + v] = ring.one();
        entries[v * n + u] = ring.one();
    }
    Ok(SymZeroDiag::from_parts_unchecked(n, entries))
}

pub const BRUTEFORCE_VERTEX_CAP: usize = 16;

/// Count perfect matchings by direct recursion on the graph itself: match
/// the lowest unmatched vertex against each unmatched neighbor. This never
/// touches matrices or rings, so it is an independent oracle for the
/// hafnian-based route.
pub fn count_pm_bruteforce(g: &Graph) -> Result<BigInt> {
    let n = g.vertex_count;
    if n > BRUTEFORCE_VERTEX_CAP {
        return Err(Error::cap(
            "vertex count for brute-force matching enumeration",
            BRUTEFORCE_VERTEX_CAP as u64,
            n as u64,
        ));
    }
    if n % 2 != 0 {
        return Ok(BigInt::zero());
    }
    let mut adj = vec![0u64; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }

    fn rec(adj: &[u64], unmatched: u64) -> u64 {
        if unmatched == 0 {
            return 1;
        }
        let u = unmatched.trailing_zeros() as usize;
        let mut total = 0;
        let mut cands = adj[u] & unmatched & !(1 << u);
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            total += rec(adj, unmatched & !(1 << u) & !(1 << v));
        }
        total
    }

    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(BigInt::from(rec(&adj, all)))
}

/// How a matching count should be computed.
#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub algo: HafnianAlgo,
    pub threads: usize,
    /// Evaluate modulo several coprime prime powers and recombine, instead
    /// of running the whole computation over big integers.
    pub crt: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            algo: HafnianAlgo::PolySpace,
            threads: 1,
            crt: false,
        }
    }
}

/// Number of perfect matchings: the hafnian of the adjacency matrix.
/// Odd orders trivially count zero.
pub fn count_perfect_matchings(g: &Graph, algo: HafnianAlgo) -> BigInt {
    count_perfect_matchings_with(
        g,
        &CountOptions {
            algo,
            ..CountOptions::default()
        },
    )
}

pub fn count_perfect_matchings_with(g: &Graph, opts: &CountOptions) -> BigInt {
    let n = g.vertex_count;
    if n % 2 != 0 {
        return BigInt::zero();
    }
    if !opts.crt {
        let ring = BigIntRing;
        let b = adjacency_matrix(&ring, g).expect("even order checked");
        return match opts.algo {
            HafnianAlgo::PolySpace if opts.threads > 1 => {
                hafnian_polyspace_threads(&ring, &b, opts.threads)
            }
            algo => hafnian(&ring, &b, algo),
        };
    }

    // The count is at most (n-1)!!, the complete graph's count, so enough
    // coprime moduli pin it exactly.
    let bound = matchings_upper_bound(n);
    let mut t = 1;
    let moduli = loop {
        let moduli = coprime_moduli(t, 1 << 31);
        let product = moduli.iter().map(|&m| BigInt::from(m)).product::<BigInt>();
        if product > bound {
            break moduli;
        }
        t += 1;
    };
    let residues: Vec<(u64, u64)> = moduli
        .iter()
        .map(|&m| {
            let ring = ModRing::new(m);
            let b = adjacency_matrix(&ring, g).expect("even order checked");
            let r = match opts.algo {
                HafnianAlgo::PolySpace if opts.threads > 1 => {
                    hafnian_polyspace_threads(&ring, &b, opts.threads)
                }
                algo => hafnian(&ring, &b, algo),
            };
            (r, m)
        })
        .collect();
    crt_combine(&residues).expect("prime-power moduli are coprime")
}

/// (n-1)!! for even n, an upper bound on any simple graph's matching count.
fn matchings_upper_bound(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut k = 1u64;
    while (k as usize) < n {
        acc *= BigInt::from(k);
        k += 2;
    }
    acc
}
