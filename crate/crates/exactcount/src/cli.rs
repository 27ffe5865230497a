//! The command surface behind the `exactcount` binary. Machine-readable
//! output (counts, instance text, CSV) goes to stdout; run reports,
//! progress and file paths go to stderr. Exit codes: 0 on success, 2 for
//! bad input, 3 for blown caps.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hafnian::{
    hafnian_bruteforce, hafnian_labelring_with_stats, hafnian_polyspace_threads,
    hafnian_polyspace_with_stats, HafnianAlgo,
};
use crate::matching::{count_perfect_matchings_with, parse_graph, CountOptions, Graph};
use crate::matrix::{parse_int_matrix, BinaryMatrix, Matrix, SymZeroDiag};
use crate::permanent::{permanent_bruteforce, permanent_ryser, permanent_via_hafnian};
use crate::ring::{BigIntRing, ModRing, Ring};
use crate::setcover::{
    count_exact_covers_bruteforce, count_exact_covers_dp, count_exact_covers_dp_mod,
    parse_instance, recovery_moduli, reduce_permanent_to_setcover, write_instance,
};

/// Default dimension caps per engine, chosen so a default run finishes in
/// minutes on one core. `--max-vertices` overrides them.
pub const DEFAULT_MAX_VERTICES_POLYSPACE: usize = 36;
pub const DEFAULT_MAX_VERTICES_LABELRING: usize = 26;
pub const DEFAULT_MAX_VERTICES_BRUTEFORCE: usize = 16;
/// Ryser's rule touches n 2^n terms, comparable to the label-ring engine.
pub const DEFAULT_MAX_PERMANENT_RYSER: usize = 26;

fn default_vertex_cap(algo: HafnianAlgo) -> usize {
    match algo {
        HafnianAlgo::Bruteforce => DEFAULT_MAX_VERTICES_BRUTEFORCE,
        HafnianAlgo::LabelRing => DEFAULT_MAX_VERTICES_LABELRING,
        HafnianAlgo::PolySpace => DEFAULT_MAX_VERTICES_POLYSPACE,
    }
}

fn check_cap(what: &str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::cap(what, cap as u64, size as u64));
    }
    Ok(())
}

/// One line per run, written to stderr:
/// `<command> input=sha256:<16 hex> algo=<name> result=<value> wall=<secs>s [peak-ring-elems=<n>]`
pub struct RunReport {
    pub command: &'static str,
    pub input_digest: String,
    pub algorithm: String,
    pub result: String,
    pub wall_seconds: f64,
    pub peak_live_ring_elems: Option<u64>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} input={} algo={} result={} wall={:.3}s",
            self.command, self.input_digest, self.algorithm, self.result, self.wall_seconds
        )?;
        if let Some(peak) = self.peak_live_ring_elems {
            write!(f, " peak-ring-elems={peak}")?;
        }
        Ok(())
    }
}

/// "sha256:" plus the first 16 hex digits of the input file's hash.
pub fn input_digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::from("sha256:");
    for byte in &hash[..8] {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Parser, Debug)]
#[command(
    name = "exactcount",
    version,
    about = "Exact counts of perfect matchings, hafnians, permanents and set covers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the perfect matchings of a graph file.
    CountPm(CountPmArgs),
    /// Hafnian of a symmetric integer matrix with zero diagonal.
    Hafnian(HafnianArgs),
    /// Permanent of a square integer matrix.
    Permanent(PermanentArgs),
    /// Count the exact covers of a set-cover instance.
    Setcover(SetcoverArgs),
    /// Encode a 0/1 permanent as set-cover instances and optionally
    /// recover its exact value from cover counts.
    Reduce(ReduceArgs),
    /// Time matching counts over a graph family; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct CountPmArgs {
    /// Graph file: 'p <vertices> <edges>' then 'e <u> <v>' lines, 0-based.
    input: PathBuf,
    /// bruteforce, labelring or polyspace.
    #[arg(long, default_value = "polyspace")]
    algo: HafnianAlgo,
    /// Worker threads (polyspace only).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Compute modulo coprime prime powers and recombine.
    #[arg(long)]
    crt: bool,
    /// Override the per-algorithm vertex cap.
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Args, Debug)]
struct HafnianArgs {
    /// Matrix file: 'm <dim>' then dim rows of dim integers.
    input: PathBuf,
    /// bruteforce, labelring or polyspace.
    #[arg(long, default_value = "polyspace")]
    algo: HafnianAlgo,
    /// Worker threads (polyspace only).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Read only the strict upper triangle; ignore the diagonal and lower
    /// entries instead of requiring them to match.
    #[arg(long)]
    upper: bool,
    /// Compute in Z_modulus instead of over the integers.
    #[arg(long = "mod", value_name = "MODULUS")]
    modulus: Option<u64>,
    /// Override the per-algorithm dimension cap.
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
enum PermanentAlgo {
    Ryser,
    Hafnian,
    Bruteforce,
}

impl FromStr for PermanentAlgo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ryser" => Ok(PermanentAlgo::Ryser),
            "hafnian" => Ok(PermanentAlgo::Hafnian),
            "bruteforce" => Ok(PermanentAlgo::Bruteforce),
            other => Err(format!(
                "unknown algorithm '{other}' (expected ryser, hafnian or bruteforce)"
            )),
        }
    }
}

#[derive(Args, Debug)]
struct PermanentArgs {
    /// Matrix file: 'm <dim>' then dim rows of dim integers.
    input: PathBuf,
    /// ryser, hafnian or bruteforce.
    #[arg(long, default_value = "ryser")]
    algo: PermanentAlgo,
    /// Override the dimension cap (for 'hafnian' this bounds the doubled
    /// dimension the engine actually runs at).
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
enum SetcoverAlgo {
    Dp,
    Bruteforce,
}

impl FromStr for SetcoverAlgo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dp" => Ok(SetcoverAlgo::Dp),
            "bruteforce" => Ok(SetcoverAlgo::Bruteforce),
            other => Err(format!(
                "unknown algorithm '{other}' (expected dp or bruteforce)"
            )),
        }
    }
}

#[derive(Args, Debug)]
struct SetcoverArgs {
    /// Instance file: 'u <ground_size>' then 's <elements>' lines.
    input: PathBuf,
    /// dp or bruteforce.
    #[arg(long, default_value = "dp")]
    algo: SetcoverAlgo,
    /// Count modulo this value (dp only).
    #[arg(long = "mod", value_name = "MODULUS")]
    modulus: Option<u64>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// 0/1 matrix file: 'm <dim>' then dim rows.
    input: PathBuf,
    /// Rows per group; must divide the dimension.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Emit one instance whose cover count is the permanent mod this.
    #[arg(long, value_name = "MODULUS")]
    modulus: Option<u64>,
    /// Reduce for each recovery modulus, count covers mod each, and print
    /// the exact permanent.
    #[arg(long)]
    auto_crt: bool,
    /// With --modulus: write the instance here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// With --auto-crt: directory for the emitted instance files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug)]
enum BenchFamily {
    Complete,
    Random,
}

impl FromStr for BenchFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "complete" => Ok(BenchFamily::Complete),
            "random" => Ok(BenchFamily::Random),
            other => Err(format!("unknown family '{other}' (expected complete or random)")),
        }
    }
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// complete or random.
    #[arg(long, default_value = "complete")]
    family: BenchFamily,
    /// Smallest vertex count (even).
    #[arg(long, default_value_t = 8)]
    min: usize,
    /// Largest vertex count; sizes step by 2.
    #[arg(long, default_value_t = 16)]
    max: usize,
    /// bruteforce, labelring or polyspace.
    #[arg(long, default_value = "polyspace")]
    algo: HafnianAlgo,
    /// Worker threads (polyspace only).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seed for the random family.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Compute modulo coprime prime powers and recombine.
    #[arg(long)]
    crt: bool,
    /// Override the per-algorithm vertex cap.
    #[arg(long)]
    max_vertices: Option<usize>,
}

/// Parse the process arguments, run the command, and return the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command) -> Result<()> {
    match command {
        Command::CountPm(args) => cmd_count_pm(args),
        Command::Hafnian(args) => cmd_hafnian(args),
        Command::Permanent(args) => cmd_permanent(args),
        Command::Setcover(args) => cmd_setcover(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn check_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        return Err(Error::invalid("--threads must be at least 1"));
    }
    Ok(())
}

fn algo_label(algo: HafnianAlgo, threads: usize, crt: bool) -> String {
    let mut label = algo.name().to_string();
    if threads > 1 {
        label.push_str(&format!(",threads={threads}"));
    }
    if crt {
        label.push_str(",crt");
    }
    label
}

fn cmd_count_pm(args: &CountPmArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let digest = input_digest(text.as_bytes());
    let g = parse_graph(&text)?;
    check_threads(args.threads)?;
    let cap = args.max_vertices.unwrap_or_else(|| default_vertex_cap(args.algo));
    check_cap("vertex count", g.vertex_count(), cap)?;

    let start = Instant::now();
    let count = count_perfect_matchings_with(
        &g,
        &CountOptions {
            algo: args.algo,
            threads: args.threads,
            crt: args.crt,
        },
    );
    let report = RunReport {
        command: "count-pm",
        input_digest: digest,
        algorithm: algo_label(args.algo, args.threads, args.crt),
        result: count.to_string(),
        wall_seconds: start.elapsed().as_secs_f64(),
        peak_live_ring_elems: None,
    };
    eprintln!("{report}");
    println!("{count}");
    Ok(())
}

fn build_sym<R: Ring>(ring: &R, rows: &[Vec<i64>], upper: bool) -> Result<SymZeroDiag<R>> {
    if upper {
        SymZeroDiag::from_upper(
            ring,
            rows.iter()
                .map(|row| row.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
    } else {
        SymZeroDiag::from_int_rows(ring, rows)
    }
}

fn run_hafnian<R: Ring>(
    ring: &R,
    b: &SymZeroDiag<R>,
    algo: HafnianAlgo,
    threads: usize,
) -> (R::Elem, Option<u64>) {
    match algo {
        HafnianAlgo::PolySpace if threads > 1 => {
            (hafnian_polyspace_threads(ring, b, threads), None)
        }
        HafnianAlgo::PolySpace => {
            let (h, stats) = hafnian_polyspace_with_stats(ring, b);
            (h, Some(stats.peak_live_ring_elems))
        }
        HafnianAlgo::LabelRing => {
            let (h, stats) = hafnian_labelring_with_stats(ring, b);
            (h, Some(stats.peak_live_ring_elems))
        }
        HafnianAlgo::Bruteforce => (hafnian_bruteforce(ring, b), None),
    }
}

fn cmd_hafnian(args: &HafnianArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let digest = input_digest(text.as_bytes());
    let rows = parse_int_matrix(&text)?;
    check_threads(args.threads)?;
    let cap = args.max_vertices.unwrap_or_else(|| default_vertex_cap(args.algo));
    check_cap("matrix dimension", rows.len(), cap)?;

    let start = Instant::now();
    let (result, peak) = match args.modulus {
        Some(m) => {
            if m < 2 {
                return Err(Error::invalid(format!("modulus {m} must be at least 2")));
            }
            let ring = ModRing::new(m);
            let b = build_sym(&ring, &rows, args.upper)?;
            let (h, peak) = run_hafnian(&ring, &b, args.algo, args.threads);
            (h.to_string(), peak)
        }
        None => {
            let ring = BigIntRing;
            let b = build_sym(&ring, &rows, args.upper)?;
            let (h, peak) = run_hafnian(&ring, &b, args.algo, args.threads);
            (h.to_string(), peak)
        }
    };
    let report = RunReport {
        command: "hafnian",
        input_digest: digest,
        algorithm: algo_label(args.algo, args.threads, false),
        result: result.clone(),
        wall_seconds: start.elapsed().as_secs_f64(),
        peak_live_ring_elems: peak,
    };
    eprintln!("{report}");
    println!("{result}");
    Ok(())
}

fn cmd_permanent(args: &PermanentArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let digest = input_digest(text.as_bytes());
    let rows = parse_int_matrix(&text)?;
    let ring = BigIntRing;
    let a = Matrix::from_int_rows(&ring, &rows)?;
    let n = a.n();

    let start = Instant::now();
    let (per, label) = match args.algo {
        PermanentAlgo::Ryser => {
            let cap = args.max_vertices.unwrap_or(DEFAULT_MAX_PERMANENT_RYSER);
            check_cap("matrix dimension", n, cap)?;
            (permanent_ryser(&ring, &a), "ryser")
        }
        PermanentAlgo::Hafnian => {
            let cap = args.max_vertices.unwrap_or(DEFAULT_MAX_VERTICES_POLYSPACE);
            check_cap("doubled matrix dimension", 2 * n, cap)?;
            (permanent_via_hafnian(&ring, &a), "hafnian")
        }
        PermanentAlgo::Bruteforce => {
            if let Some(cap) = args.max_vertices {
                check_cap("matrix dimension", n, cap)?;
            }
            (permanent_bruteforce(&ring, &a)?, "bruteforce")
        }
    };
    let report = RunReport {
        command: "permanent",
        input_digest: digest,
        algorithm: label.to_string(),
        result: per.to_string(),
        wall_seconds: start.elapsed().as_secs_f64(),
        peak_live_ring_elems: None,
    };
    eprintln!("{report}");
    println!("{per}");
    Ok(())
}

fn cmd_setcover(args: &SetcoverArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let digest = input_digest(text.as_bytes());
    let inst = parse_instance(&text)?;

    let start = Instant::now();
    let (result, label) = match (args.algo, args.modulus) {
        (SetcoverAlgo::Dp, None) => (count_exact_covers_dp(&inst)?.to_string(), "dp".to_string()),
        (SetcoverAlgo::Dp, Some(m)) => {
            if m < 2 {
                return Err(Error::invalid(format!("modulus {m} must be at least 2")));
            }
            (
                count_exact_covers_dp_mod(&inst, m)?.to_string(),
                format!("dp,mod={m}"),
            )
        }
        (SetcoverAlgo::Bruteforce, None) => (
            count_exact_covers_bruteforce(&inst)?.to_string(),
            "bruteforce".to_string(),
        ),
        (SetcoverAlgo::Bruteforce, Some(_)) => {
            return Err(Error::invalid("--mod requires --algo dp"));
        }
    };
    let report = RunReport {
        command: "setcover",
        input_digest: digest,
        algorithm: label,
        result: result.clone(),
        wall_seconds: start.elapsed().as_secs_f64(),
        peak_live_ring_elems: None,
    };
    eprintln!("{report}");
    println!("{result}");
    Ok(())
}

fn cmd_reduce(args: &ReduceArgs) -> Result<()> {
    let text = read_file(&args.input)?;
    let digest = input_digest(text.as_bytes());
    let rows = parse_int_matrix(&text)?;
    let m = BinaryMatrix::from_int_rows(&rows)?;
    let stem = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string());

    match (args.modulus, args.auto_crt) {
        (Some(modulus), false) => {
            let art = reduce_permanent_to_setcover(&m, args.k, modulus)?;
            eprintln!(
                "reduce input={digest} k={} modulus={modulus} groups={} ground={} sets={}",
                args.k,
                art.group_count,
                art.instance.ground_size(),
                art.instance.family_len()
            );
            let body = write_instance(&art.instance);
            match &args.out {
                Some(path) => {
                    write_file(path, &body)?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{body}"),
            }
            Ok(())
        }
        (None, true) => {
            let moduli = recovery_moduli(m.n());
            let mut residues = Vec::with_capacity(moduli.len());
            for &modulus in &moduli {
                let art = reduce_permanent_to_setcover(&m, args.k, modulus)?;
                let path = args.out_dir.join(format!("{stem}.k{}.mod{modulus}.sc", args.k));
                write_file(&path, &write_instance(&art.instance))?;
                let residue = count_exact_covers_dp_mod(&art.instance, modulus)?;
                eprintln!(
                    "modulus {modulus}: ground={} sets={} cover count = {residue} (mod {modulus}), wrote {}",
                    art.instance.ground_size(),
                    art.instance.family_len(),
                    path.display()
                );
                residues.push((residue, modulus));
            }
            let per = crate::crt::crt_combine(&residues)?;
            eprintln!("recovered permanent from {} congruences", residues.len());
            println!("{per}");
            Ok(())
        }
        _ => Err(Error::invalid("pass exactly one of --modulus or --auto-crt")),
    }
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    check_threads(args.threads)?;
    if args.min % 2 != 0 || args.min == 0 {
        return Err(Error::invalid("--min must be a positive even vertex count"));
    }
    if args.max < args.min {
        return Err(Error::invalid("--max must be at least --min"));
    }
    let cap = args.max_vertices.unwrap_or_else(|| default_vertex_cap(args.algo));
    check_cap("vertex count", args.max, cap)?;

    let opts = CountOptions {
        algo: args.algo,
        threads: args.threads,
        crt: args.crt,
    };
    println!("size,result,seconds");
    let mut prev: Option<f64> = None;
    let mut size = args.min;
    while size <= args.max {
        let g = match args.family {
            BenchFamily::Complete => Graph::complete(size),
            BenchFamily::Random => Graph::random(size, args.seed.wrapping_add(size as u64)),
        };
        let start = Instant::now();
        let count = count_perfect_matchings_with(&g, &opts);
        let secs = start.elapsed().as_secs_f64();
        println!("{size},{count},{secs:.6}");
        match prev {
            Some(p) if p > 0.0 => eprintln!(
                "n={size:<3} {secs:>10.3}s  result={count}  x{:.2} vs n={}",
                secs / p,
                size - 2
            ),
            _ => eprintln!("n={size:<3} {secs:>10.3}s  result={count}"),
        }
        prev = Some(secs);
        size += 2;
    }
    Ok(())
}
