//! Command-line front end for `hecke-mult`.
//!
//! Exit codes: 0 success, 1 findings under `--strict`, 2 usage or domain
//! error, 3 integrity error, 4 missing cache entry, 5 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dieudonne::{
    frobenius_on_points, honda_example, verify_conjugacy, verify_conjugacy_batch, witt_kernel_check,
};
use crate::error::{usage, Result};
use crate::ff::{FpMatrix, FpPoly, PrimeField};
use crate::modsym::{GroupKind, GroupSpec};
use crate::scan::{
    csv_rows, parse_list, run_scan, write_csv, Cache, CacheEntry, CacheKey, OutputFormat, ScanConfig, CACHE_ENV,
};

/// Directory used when neither `--cache-dir` nor the environment names one.
pub const DEFAULT_CACHE_DIR: &str = ".hecke-mult-cache";

#[derive(Parser, Debug)]
#[command(
    name = "hecke-mult",
    version,
    about = "Mod-p Hecke algebras, socles and multiplicities"
)]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Scan (p, N) pairs and report per-factor diagnostics.
    Scan(ScanArgs),
    /// Dump a cached result in full.
    Inspect(InspectArgs),
    /// Linear-algebra checks on Dieudonné modules.
    #[command(subcommand)]
    Dieudonne(DieudonneCmd),
    /// Manage the result cache.
    Cache(CacheArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CacheDirArg {
    /// Cache directory.
    #[arg(long, env = CACHE_ENV, default_value = DEFAULT_CACHE_DIR)]
    pub cache_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Primes, e.g. `2,3,5` or `2..7`.
    #[arg(long = "p")]
    pub primes: String,
    /// Levels, e.g. `431` or `1..60`.
    #[arg(long = "N")]
    pub levels: String,
    #[arg(long, default_value = "gamma0")]
    pub group: GroupKind,
    /// Override the Sturm bound used for generators.
    #[arg(long)]
    pub sturm: Option<u64>,
    #[command(flatten)]
    pub cache: CacheDirArg,
    /// Do not read or write the cache.
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exit nonzero when consistency findings occur.
    #[arg(long)]
    pub strict: bool,
    /// Record wall time per pair in the report.
    #[arg(long)]
    pub timings: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InspectArgs {
    /// Cache entry name as printed by `cache ls`.
    pub key: Option<String>,
    #[arg(long = "p")]
    pub p: Option<u64>,
    #[arg(long = "N")]
    pub level: Option<u64>,
    #[arg(long, default_value = "gamma0")]
    pub group: GroupKind,
    #[arg(long)]
    pub sturm: Option<u64>,
    #[command(flatten)]
    pub cache: CacheDirArg,
    /// Print the raw cache entry as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum DieudonneCmd {
    /// Check that V and the Frobenius on points are conjugate.
    #[command(name = "verify-a1")]
    VerifyA1 {
        #[arg(long)]
        p: u64,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, conflicts_with = "random")]
        matrix: Option<String>,
        /// Check this many random invertible matrices instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive kernel check for the truncated covector map over F_{p^k}.
    Witt {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// The Z/p^n example where V is trivial on M/FM but not on M.
    #[command(name = "prop-a2")]
    PropA2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        unit: u64,
    },
    /// Frobenius on the points of the module with V = A.
    Points {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Args, Debug)]
pub struct CacheArgs {
    #[command(flatten)]
    pub cache: CacheDirArg,
    #[command(subcommand)]
    pub action: CacheAction,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// List entries with their status.
    Ls,
    /// Remove one entry, or all with `--all`.
    Rm {
        key: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Remove stale and corrupt entries.
    Gc,
}

/// Parse `1,1;0,1` into a square matrix over `F_p`.
pub fn parse_matrix(p: u64, spec: &str) -> Result<FpMatrix> {
    let field = PrimeField::new(p)?;
    let rows = spec
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| usage!("invalid matrix entry '{x}'"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = FpMatrix::from_rows(field, &rows)?;
    m.require_square("matrix")?;
    Ok(m)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_scan(args: ScanArgs, out: &mut dyn Write) -> Result<i32> {
    let config = ScanConfig {
        primes: parse_list(&args.primes)?,
        levels: parse_list(&args.levels)?,
        group: args.group,
        sturm_override: args.sturm,
        cache_dir: (!args.no_cache).then_some(args.cache.cache_dir),
        format: match args.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
        workers: args.workers,
        seed: args.seed,
        strict: args.strict,
        timings: args.timings,
    };
    let report = run_scan(&config)?;
    let mut file;
    let sink: &mut dyn Write = match &args.out {
        Some(path) => {
            file = File::create(path)?;
            &mut file
        }
        None => out,
    };
    match config.format {
        OutputFormat::Json => emit_json(sink, &report)?,
        OutputFormat::Csv => write_csv(&csv_rows(&report), sink)?,
    }
    if args.timings {
        for r in &report.results {
            if let Some(s) = r.seconds {
                eprintln!("p={} N={}: {s:.3}s", r.p, r.level);
            }
        }
    }
    for r in &report.results {
        if let crate::scan::PairStatus::Failed { error } = &r.status {
            eprintln!("p={} N={}: {error}", r.p, r.level);
        }
    }
    let findings = report.findings();
    if findings > 0 {
        eprintln!("{findings} consistency finding(s)");
    }
    Ok(if report.integrity_errors() > 0 {
        3
    } else if config.strict && findings > 0 {
        1
    } else {
        0
    })
}

fn poly_string(p: u64, coeffs: &[u64]) -> String {
    let field = PrimeField::new(p).expect("prime recorded in the entry");
    FpPoly::new(field, coeffs.to_vec()).to_string()
}

/// Human-readable dump of a cache entry.
pub fn render_entry(entry: &CacheEntry) -> String {
    let pl = &entry.payload;
    let sp = &pl.space;
    let p = sp.p;
    let mut s = String::new();
    let _ = writeln!(s, "entry {}", entry.key.file_stem());
    let _ = writeln!(s, "checksum {}", entry.checksum);
    let _ = writeln!(
        s,
        "space {} over F_{p}: {} symbols, ambient dim {}, cuspidal dim {}, {} cusps, nu2 {}, nu3 {}",
        sp.group, sp.num_symbols, sp.ambient_dim, sp.cuspidal_dim, sp.num_cusps, sp.nu2, sp.nu3
    );
    let gens: Vec<String> = pl.algebra.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(
        s,
        "algebra dim {}, Sturm bound {}, generators {}",
        pl.algebra.dim,
        pl.algebra.sturm_bound,
        gens.join(" ")
    );
    for c in &pl.checks {
        let _ = writeln!(s, "check: {} ({:?})", c.claim, c.status);
    }
    for (detail, rep) in pl.factors.iter().zip(&pl.reports) {
        let f = &rep.factor;
        let _ = writeln!(s, "\nfactor {}", f.index);
        let _ = writeln!(
            s,
            "  dim T_m {}, dim m {}, subspace dim {}, residue field F_{}^{} mod {}",
            f.dim_t,
            f.dim_m,
            f.subspace_dim,
            p,
            f.residue_degree,
            poly_string(p, &f.residue_modulus)
        );
        let _ = writeln!(s, "  eigenvalues (coordinates in powers of the residue generator):");
        for (label, v) in &f.eigenvalues {
            let _ = writeln!(s, "    {label}: {v:?}");
        }
        let _ = writeln!(s, "  minimal polynomials:");
        for m in &detail.min_polys {
            let _ = writeln!(s, "    {}: {}", m.label, poly_string(p, &m.min_poly));
        }
        let _ = writeln!(s, "  subspace basis (cuspidal coordinates):");
        for v in &detail.subspace {
            let _ = writeln!(s, "    {v:?}");
        }
        let _ = writeln!(s, "  basis of T_m:");
        for b in &detail.basis {
            for line in b.to_string().lines() {
                let _ = writeln!(s, "    {line}");
            }
            let _ = writeln!(s);
        }
        let _ = writeln!(s, "  basis of m:");
        for b in &detail.maximal_ideal {
            for line in b.to_string().lines() {
                let _ = writeln!(s, "    {line}");
            }
            let _ = writeln!(s);
        }
        let r = rep.multiplicity_r.map_or("-".to_string(), |r| r.to_string());
        let _ = writeln!(
            s,
            "  hypotheses {:?}, ordinary {}, eisenstein {}, dim_F T[m] {}, dim_F T[m^(p)] {}, r {}",
            rep.hypotheses, rep.ordinary, rep.eisenstein_flag, rep.dim_f_socle, rep.dim_f_socle_p, r
        );
        let _ = writeln!(
            s,
            "  gorenstein {}, strict inclusion {}, T_p scalar on T[m^(p)] {}, weight-one signature {}, dim T/m^(p)T {}",
            rep.gorenstein,
            rep.socle_strict_inclusion,
            rep.tp_scalar_on_socle_p,
            rep.weight_one_signature,
            rep.away_quotient_dim
        );
        for c in &rep.consistency {
            let _ = writeln!(s, "  check: {} ({:?})", c.claim, c.status);
        }
    }
    s
}

fn cmd_inspect(args: InspectArgs, out: &mut dyn Write) -> Result<i32> {
    let cache = Cache::open(&args.cache.cache_dir)?;
    let entry = match (&args.key, args.p, args.level) {
        (Some(k), _, _) => cache.load_named(k)?,
        (None, Some(p), Some(n)) => {
            let g = GroupSpec::new(args.group, n)?;
            cache.load(&CacheKey::new(p, g, args.sturm.unwrap_or_else(|| g.sturm_bound())))?
        }
        _ => return Err(usage!("give a cache entry name or both --p and --N")),
    };
    if args.json {
        emit_json(out, &entry)?;
    } else {
        out.write_all(render_entry(&entry).as_bytes())?;
    }
    Ok(0)
}

fn cmd_dieudonne(cmd: DieudonneCmd, out: &mut dyn Write) -> Result<i32> {
    let ok = match cmd {
        DieudonneCmd::VerifyA1 {
            p,
            matrix,
            random,
            n,
            seed,
        } => match (matrix, random) {
            (Some(m), _) => {
                let c = verify_conjugacy(&parse_matrix(p, &m)?)?;
                emit_json(out, &c)?;
                c.passed()
            }
            (None, Some(count)) => {
                let r = verify_conjugacy_batch(p, n, count, seed)?;
                emit_json(out, &r)?;
                r.passed == r.count
            }
            (None, None) => return Err(usage!("give --matrix or --random")),
        },
        DieudonneCmd::Witt { p, k } => {
            let r = witt_kernel_check(p, k)?;
            emit_json(out, &r)?;
            r.passed()
        }
        DieudonneCmd::PropA2 { p, n, unit } => {
            let r = honda_example(p, n, unit)?;
            emit_json(out, &r)?;
            r.fv_is_p && r.v_identity_on_quotient
        }
        DieudonneCmd::Points { p, matrix } => {
            let r = frobenius_on_points(&parse_matrix(p, &matrix)?)?;
            emit_json(out, &r)?;
            r.passed()
        }
    };
    Ok(if ok { 0 } else { 3 })
}

fn cmd_cache(args: CacheArgs, out: &mut dyn Write) -> Result<i32> {
    let cache = Cache::open(&args.cache.cache_dir)?;
    match args.action {
        CacheAction::Ls => {
            for l in cache.list()? {
                writeln!(out, "{}\t{}\t{:?}", l.name, l.bytes, l.status)?;
            }
        }
        CacheAction::Rm { key, all } => match (key, all) {
            (_, true) => writeln!(out, "removed {} entries", cache.clear()?)?,
            (Some(k), false) => {
                cache.remove(&k)?;
                writeln!(out, "removed {k}")?;
            }
            (None, false) => return Err(usage!("give an entry name or --all")),
        },
        CacheAction::Gc => {
            for name in cache.gc()? {
                writeln!(out, "removed {name}")?;
            }
        }
    }
    Ok(0)
}

/// Run a parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Scan(a) => cmd_scan(a, out),
        Command::Inspect(a) => cmd_inspect(a, out),
        Command::Dieudonne(c) => cmd_dieudonne(c, out),
        Command::Cache(a) => cmd_cache(a, out),
    }
}

/// Parse arguments, run, and return the exit code. Errors go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut io::stdout().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("hecke-mult").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn matrix_parsing() {
        let m = parse_matrix(3, "1,1; 0,1").unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 1], vec![0, 1]]);
        assert!(parse_matrix(3, "1,1;0").is_err());
        assert!(parse_matrix(3, "1,2,3").is_err());
    }

    #[test]
    fn dieudonne_subcommands() {
        let (code, out) = run_capture(&["dieudonne", "witt", "--p", "3", "--k", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"kernel_count\": 9"));
        let (code, out) = run_capture(&[
            "dieudonne",
            "verify-a1",
            "--random",
            "20",
            "--n",
            "4",
            "--p",
            "3",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\"passed\": 20"));
        let (code, _) = run_capture(&["dieudonne", "prop-a2", "--p", "3", "--n", "2", "--unit", "2"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["dieudonne", "points", "--p", "2", "--matrix", "0,1;1,1"]);
        assert_eq!(code, 0);
    }
}
