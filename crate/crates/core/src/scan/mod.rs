//! Scans over `(p, N)` pairs: build the space, the algebra and its local
//! factors, run the diagnostics, and cache the results.

pub mod cache;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime};
use crate::diagnostics::{diagnose_algebra, CheckStatus, ConsistencyCheck, DiagnosticReport};
use crate::error::{usage, Error, Result};
use crate::ff::{min_poly, FpMatrix};
use crate::hecke::{generate_algebra, AlgebraSummary};
use crate::modsym::{build_space, genus_data, GroupKind, GroupSpec, OpLabel, SpaceSummary, HEILBRONN_FAMILY_ID};

pub use cache::{Cache, CacheEntry, CacheKey, CACHE_ENV};
pub use report::{csv_rows, read_csv, write_csv, CsvRow, ScanReport, SCHEMA_VERSION};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub primes: Vec<u64>,
    pub levels: Vec<u64>,
    pub group: GroupKind,
    pub sturm_override: Option<u64>,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    /// Does not affect results, so it is left out of reports.
    #[serde(skip)]
    pub workers: usize,
    /// Recorded for reproducibility. Every randomized subroutine is Las
    /// Vegas with a fixed internal seed, so results do not depend on it.
    pub seed: u64,
    pub strict: bool,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            primes: Vec::new(),
            levels: Vec::new(),
            group: GroupKind::Gamma0,
            sturm_override: None,
            cache_dir: None,
            format: OutputFormat::Json,
            workers: 1,
            seed: 0,
            strict: false,
            timings: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(usage!("worker count must be at least 1"));
        }
        if self.primes.is_empty() || self.levels.is_empty() {
            return Err(usage!("at least one prime and one level are required"));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(usage!("{p} is not prime"));
        }
        for &n in &self.levels {
            GroupSpec::new(self.group, n)?;
        }
        Ok(())
    }

    /// Pairs in scan order: primes ascending, then levels ascending.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut primes = self.primes.clone();
        primes.sort_unstable();
        primes.dedup();
        let mut levels = self.levels.clone();
        levels.sort_unstable();
        levels.dedup();
        primes
            .iter()
            .flat_map(|&p| levels.iter().map(move |&n| (p, n)))
            .collect()
    }
}

/// Parse `11`, `1..60`, `1..=60` or comma-separated mixtures of these.
/// Both range forms include the upper end.
pub fn parse_list(spec: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| usage!("invalid number '{s}' in '{spec}'"))
        };
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (lo, hi) = (num(a)?, num(b)?);
            if lo > hi {
                return Err(usage!("empty range '{part}'"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err(usage!("empty list '{spec}'"));
    }
    Ok(out)
}

/// Generator minimal polynomial on a factor, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMinPoly {
    pub label: OpLabel,
    pub min_poly: Vec<u64>,
}

/// Everything `inspect` shows about one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDetail {
    pub index: usize,
    pub subspace: Vec<Vec<u64>>,
    pub basis: Vec<FpMatrix>,
    pub maximal_ideal: Vec<FpMatrix>,
    pub min_polys: Vec<GeneratorMinPoly>,
}

/// The cached result of one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPayload {
    pub space: SpaceSummary,
    pub algebra: AlgebraSummary,
    pub algebra_basis: Vec<FpMatrix>,
    pub factors: Vec<FactorDetail>,
    pub reports: Vec<DiagnosticReport>,
    /// Checks against independent formulas.
    pub checks: Vec<ConsistencyCheck>,
}

/// Run the pipeline for one pair, without the cache.
pub fn analyze_pair(p: u64, group: GroupSpec, sturm: Option<u64>) -> Result<PairPayload> {
    let space = build_space(p, group)?;
    let genus = genus_data(&group).genus as usize;
    let alg = generate_algebra(space, sturm)?;
    let closure = alg.verify_closure();
    let (factors, reports) = diagnose_algebra(&alg)?;
    let details = factors
        .iter()
        .map(|f| {
            let min_polys = f
                .generators
                .iter()
                .map(|(label, g)| {
                    Ok(GeneratorMinPoly {
                        label: *label,
                        min_poly: min_poly(g)?.coeffs().to_vec(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FactorDetail {
                index: f.index,
                subspace: f.subspace.clone(),
                basis: f.basis.clone(),
                maximal_ideal: f.maximal_ideal.clone(),
                min_polys,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let check = |claim: &str, holds: bool| ConsistencyCheck {
        claim: claim.to_string(),
        status: if holds {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        },
    };
    let checks = vec![
        check(
            "cuspidal dimension equals twice the genus",
            alg.space_dim() == 2 * genus,
        ),
        check("Manin relations hold on the basis", alg.space().manin_relations_hold()),
        check("algebra closed under multiplication and commutative", closure),
    ];
    Ok(PairPayload {
        space: alg.space().summary(),
        algebra: alg.summary(),
        algebra_basis: alg.basis().to_vec(),
        factors: details,
        reports,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum PairStatus {
    Computed,
    Skipped { reason: String },
    Failed { error: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub p: u64,
    pub level: u64,
    pub group: GroupKind,
    #[serde(flatten)]
    pub status: PairStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_key: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<PairPayload>,
    /// Wall time, only recorded when timings are requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl ScanResult {
    pub fn reports(&self) -> &[DiagnosticReport] {
        self.payload.as_ref().map_or(&[], |p| &p.reports)
    }

    /// Consistency violations among the diagnostics and formula checks.
    pub fn findings(&self) -> usize {
        self.payload.as_ref().map_or(0, |pl| {
            pl.reports.iter().map(|r| r.violations().count()).sum::<usize>()
                + pl.checks.iter().filter(|c| c.status == CheckStatus::Violated).count()
        })
    }
}

fn run_pair(config: &ScanConfig, cache: Option<&Cache>, p: u64, n: u64) -> ScanResult {
    let start = Instant::now();
    let mut result = ScanResult {
        p,
        level: n,
        group: config.group,
        status: PairStatus::Computed,
        cache_key: None,
        payload: None,
        seconds: None,
    };
    if gcd(p, n) != 1 {
        let reason = format!("p = {p} divides N = {n}");
        log::info!("skipping ({p}, {n}): {reason}");
        result.status = PairStatus::Skipped { reason };
        return result;
    }
    let group = GroupSpec {
        kind: config.group,
        level: n,
    };
    let key = CacheKey::new(p, group, config.sturm_override.unwrap_or_else(|| group.sturm_bound()));
    result.cache_key = Some(key.file_stem());
    let cached = cache.and_then(|c| match c.load(&key) {
        Ok(entry) => Some(entry.payload),
        Err(Error::NotFound(_)) => None,
        Err(e) => {
            log::warn!("recomputing ({p}, {n}): {e}");
            None
        }
    });
    let outcome = match cached {
        Some(payload) => Ok(payload),
        None => analyze_pair(p, group, config.sturm_override).and_then(|payload| {
            if let Some(c) = cache {
                c.store(&CacheEntry::new(key.clone(), payload.clone())?)?;
            }
            Ok(payload)
        }),
    };
    match outcome {
        Ok(payload) => result.payload = Some(payload),
        Err(e) => result.status = PairStatus::Failed { error: e.to_string() },
    }
    if config.timings {
        result.seconds = Some(start.elapsed().as_secs_f64());
    }
    result
}

/// Run a scan. Results come back in [`ScanConfig::pairs`] order whatever
/// the worker count.
pub fn run_scan(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let cache = config.cache_dir.as_ref().map(Cache::open).transpose()?;
    let pairs = config.pairs();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| usage!("cannot start worker pool: {e}"))?;
    let results: Vec<ScanResult> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(p, n)| run_pair(config, cache.as_ref(), p, n))
            .collect()
    });
    Ok(ScanReport::new(config.clone(), results))
}

/// Key components shared by every report.
pub fn heilbronn_family() -> &'static str {
    HEILBRONN_FAMILY_ID
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_parse() {
        assert_eq!(parse_list("11").unwrap(), vec![11]);
        assert_eq!(parse_list("1..4,7").unwrap(), vec![1, 2, 3, 4, 7]);
        assert_eq!(parse_list("2..=3").unwrap(), vec![2, 3]);
        assert!(parse_list("5..2").is_err());
        assert!(parse_list("x").is_err());
    }

    #[test]
    fn documented_scans() {
        let cfg = ScanConfig {
            primes: vec![5],
            levels: vec![11, 55],
            ..Default::default()
        };
        let rep = run_scan(&cfg).unwrap();
        assert_eq!(rep.results.len(), 2);
        let r = &rep.results[0];
        let d = &r.reports()[0];
        assert_eq!((d.factor.dim_t, d.dim_f_socle), (1, 1));
        assert!(d.gorenstein && d.eisenstein_flag);
        assert!(matches!(rep.results[1].status, PairStatus::Skipped { .. }));
        assert_eq!(rep.integrity_errors(), 0);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut cfg = ScanConfig {
            primes: vec![2, 3],
            levels: (11..=30).collect(),
            ..Default::default()
        };
        let one = serde_json::to_string(&run_scan(&cfg).unwrap()).unwrap();
        cfg.workers = 4;
        let four = serde_json::to_string(&run_scan(&cfg).unwrap()).unwrap();
        assert_eq!(one, four);
        assert!(run_scan(&ScanConfig { workers: 0, ..cfg }).is_err());
    }
}
