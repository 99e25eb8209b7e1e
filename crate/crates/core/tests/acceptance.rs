//! Acceptance criteria 1-7, one PASS/FAIL line each.
//!
//! All checks are exact: every tolerance below is zero.

mod common;

use std::collections::BTreeMap;

use modp_hecke::diagnostics::{CheckStatus, DiagnosticReport, Hypotheses, CLAIM_EQUIVALENCE};
use modp_hecke::dieudonne::{honda_example, random_invertible, verify_conjugacy, witt_kernel_check};
use modp_hecke::ff::PrimeField;
use modp_hecke::modsym::{build_space, hecke_operator, GroupKind, GroupSpec};
use modp_hecke::scan::{run_scan, Cache, PairStatus, ScanConfig, ScanReport};
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Allowed mismatches in every count below.
const TOLERANCE: usize = 0;
const SWEEP_PRIMES: [u64; 4] = [2, 3, 5, 7];
const SWEEP_MAX_LEVEL: u64 = 60;
const ORACLE_PRIMES: [u64; 4] = [3, 5, 7, 13];
const ORACLE_LEVELS: [u64; 3] = [11, 23, 37];
const APPENDIX_SEED: u64 = 20240601;
const APPENDIX_COUNT: usize = 500;
const WITT_ORDERS: [(u64, usize); 6] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)];

fn workers() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get())
}

fn line(results: &mut Vec<(usize, bool)>, n: usize, ok: bool, what: &str, detail: String) {
    println!(
        "criterion {n}: {} - {what} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    results.push((n, ok));
}

fn ordinary_unflagged(d: &DiagnosticReport) -> bool {
    d.hypotheses == Hypotheses::Met
}

fn criterion_1(results: &mut Vec<(usize, bool)>, kilford: &ScanReport) {
    let oracle = common::fixture("kilford_431_oracle.json");
    let of = &oracle["factors_with_residue_field_F2"][0];
    let want_socle = of["dimF_socle"].as_u64().unwrap() as usize;
    let want_r = Rational64::new(want_socle as i64 + 1, 2);
    let cands: Vec<&DiagnosticReport> = kilford
        .factor_reports()
        .map(|(_, d)| d)
        .filter(|d| ordinary_unflagged(d) && d.factor.residue_degree == 1)
        .collect();
    let ok = cands.len() == 1 && {
        let d = cands[0];
        d.dim_f_socle == want_socle
            && d.multiplicity_r == Some(want_r)
            && want_r == Rational64::from_integer(2)
            && !d.gorenstein
            && d.weight_one_signature
            && d.factor.dim_t == of["dimT"].as_u64().unwrap() as usize
            && d.factor.dim_m == of["dim_m"].as_u64().unwrap() as usize
            && d.dim_f_socle_p == of["dimF_socle_p"].as_u64().unwrap() as usize
            && d.away_quotient_dim == of["dim_T_mod_mp_T"].as_u64().unwrap() as usize
            && d.tp_scalar_on_socle_p == of["tp_scalar_on_socle_p"].as_bool().unwrap()
    };
    let detail = cands
        .first()
        .map(|d| {
            format!(
                "{} candidate(s); dim_F T[m] = {}, r = {}, gorenstein = {}, weight-one signature = {}; oracle socle {want_socle}, r {want_r}",
                cands.len(),
                d.dim_f_socle,
                d.multiplicity_r.map_or("-".into(), |r| r.to_string()),
                d.gorenstein,
                d.weight_one_signature
            )
        })
        .unwrap_or_else(|| "no ordinary unflagged F_2 factor".into());
    line(results, 1, ok, "Kilford level 431, p = 2", detail);
}

fn criterion_2_3_4(results: &mut Vec<(usize, bool)>, sweep: &ScanReport, kilford: &ScanReport) {
    let mut parity_checked = 0;
    let mut parity_bad = Vec::new();
    let mut dim_checked = 0;
    let mut dim_bad = Vec::new();
    for (r, d) in sweep.factor_reports() {
        if ordinary_unflagged(d) {
            parity_checked += 1;
            if d.dim_f_socle % 2 == 0 {
                parity_bad.push((r.p, r.level, d.factor.index));
            }
        }
        if d.ordinary {
            dim_checked += 1;
            if !d.dimension_identity {
                dim_bad.push((r.p, r.level, d.factor.index));
            }
        }
    }
    let failed = sweep.integrity_errors();
    line(
        results,
        2,
        parity_bad.len() == TOLERANCE && failed == 0 && parity_checked > 0,
        "socle parity sweep",
        format!(
            "{parity_checked} ordinary unflagged factors, {} even socles {parity_bad:?}, {failed} failed pairs",
            parity_bad.len()
        ),
    );

    let mut eq_checked = 0;
    let mut eq_bad = Vec::new();
    for (r, d) in sweep.factor_reports().chain(kilford.factor_reports()) {
        eq_checked += 1;
        let b = d.socle_strict_inclusion;
        let c = !d.tp_scalar_on_socle_p;
        if b != c || d.check(CLAIM_EQUIVALENCE) != CheckStatus::Holds {
            eq_bad.push((r.p, r.level, d.factor.index));
        }
    }
    line(
        results,
        3,
        eq_bad.len() == TOLERANCE && eq_checked > 0,
        "strict socle inclusion equals non-scalar T_p",
        format!("{eq_checked} factors, {} discrepancies {eq_bad:?}", eq_bad.len()),
    );
    line(
        results,
        4,
        dim_bad.len() == TOLERANCE && dim_checked > 0,
        "2 dim T_m = dim of the factor's cuspidal subspace",
        format!(
            "{dim_checked} ordinary factors, {} violations {dim_bad:?}",
            dim_bad.len()
        ),
    );
}

fn criterion_5(results: &mut Vec<(usize, bool)>) {
    let traces = common::fixture("trace_formula_oracle.json");
    // Cross-check the two oracles where both apply.
    let mut oracle_bad = Vec::new();
    for l in common::small_primes(20) {
        let li = l as i64;
        let tf = |n: u64| traces["levels"][n.to_string()]["trace_T"][l.to_string()].as_i64();
        if l != 11 && tf(11) != Some(common::frobenius_trace(&common::E11A1, li)) {
            oracle_bad.push((11, l));
        }
        if l != 37
            && tf(37) != Some(common::frobenius_trace(&common::E37A1, li) + common::frobenius_trace(&common::E37B1, li))
        {
            oracle_bad.push((37, l));
        }
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for &p in &ORACLE_PRIMES {
        for &n in &ORACLE_LEVELS {
            let space = build_space(p, GroupSpec::gamma0(n)).unwrap();
            for l in common::small_primes(20).into_iter().filter(|&l| l != n) {
                let want = 2 * traces["levels"][n.to_string()]["trace_T"][l.to_string()]
                    .as_i64()
                    .unwrap();
                let got = hecke_operator(&space, l).unwrap().matrix.trace();
                checked += 1;
                if want.rem_euclid(p as i64) as u64 != got {
                    bad.push((p, n, l));
                }
            }
        }
    }
    line(
        results,
        5,
        bad.len() == TOLERANCE && oracle_bad.is_empty(),
        "T_l traces mod p against point counts and the trace formula",
        format!(
            "{checked} traces, {} mismatches {bad:?}, oracle disagreements {oracle_bad:?}",
            bad.len()
        ),
    );
}

fn criterion_6(results: &mut Vec<(usize, bool)>) {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(APPENDIX_SEED);
    let mut passed = 0;
    for i in 0..APPENDIX_COUNT {
        let p = [2u64, 3, 5][i % 3];
        let n = 1 + i % 6;
        let a = random_invertible(PrimeField::new(p).unwrap(), n, &mut rng);
        if verify_conjugacy(&a).unwrap().passed() {
            passed += 1;
        }
    }
    let witt: Vec<(u64, bool)> = WITT_ORDERS
        .iter()
        .map(|&(p, k)| {
            let r = witt_kernel_check(p, k).unwrap();
            (r.q, r.passed() && r.kernel_count == r.q)
        })
        .collect();
    let honda = honda_example(2, 2, 3).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = passed == APPENDIX_COUNT
        && witt.iter().all(|w| w.1)
        && !honda.v_identity_on_m
        && honda.v_identity_on_quotient
        && elapsed < 60.0;
    line(
        results,
        6,
        ok,
        "Dieudonné battery",
        format!(
            "{passed}/{APPENDIX_COUNT} conjugacy certificates, kernels {witt:?}, V = 1 on M/FM: {}, V = 1 on M: {}, {elapsed:.1}s",
            honda.v_identity_on_quotient, honda.v_identity_on_m
        ),
    );
}

fn criterion_7(results: &mut Vec<(usize, bool)>, sweep: &ScanReport, config: &ScanConfig) {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for r in &sweep.results {
        if let Some(pl) = &r.payload {
            pairs += 1;
            if pl.checks.iter().any(|c| c.status != CheckStatus::Holds) {
                bad.push((r.p, r.level));
            }
        }
    }
    // Cache round trip: the sweep above populated the cache; rerun from it.
    let cached = run_scan(config).unwrap();
    let fresh = run_scan(&ScanConfig {
        cache_dir: None,
        ..config.clone()
    })
    .unwrap();
    let a = serde_json::to_string(&cached).unwrap();
    let b = serde_json::to_string(&fresh).unwrap();
    let c = serde_json::to_string(sweep).unwrap();
    let round_trip = a == b && b == c;
    line(
        results,
        7,
        bad.is_empty() && round_trip && pairs > 0,
        "Manin relations, commutativity, closure, cache determinism",
        format!(
            "{pairs} spaces, {} failing {bad:?}, cached = fresh byte-for-byte: {round_trip}",
            bad.len()
        ),
    );
}

#[test]
fn acceptance() {
    let cache_dir = tempfile::tempdir().unwrap();
    let sweep_cfg = ScanConfig {
        primes: SWEEP_PRIMES.to_vec(),
        levels: (1..=SWEEP_MAX_LEVEL).collect(),
        group: GroupKind::Gamma0,
        cache_dir: Some(cache_dir.path().to_path_buf()),
        workers: workers(),
        ..Default::default()
    };
    let kilford_cfg = ScanConfig {
        primes: vec![2],
        levels: vec![431],
        workers: 1,
        ..sweep_cfg.clone()
    };
    let t = std::time::Instant::now();
    let kilford = run_scan(&kilford_cfg).unwrap();
    println!("level 431 scan: {:.1}s", t.elapsed().as_secs_f64());
    let t = std::time::Instant::now();
    let sweep = run_scan(&sweep_cfg).unwrap();
    let skipped = sweep
        .results
        .iter()
        .filter(|r| matches!(r.status, PairStatus::Skipped { .. }))
        .count();
    println!(
        "sweep: {} pairs ({skipped} skipped) in {:.1}s",
        sweep.results.len(),
        t.elapsed().as_secs_f64()
    );

    let mut results = Vec::new();
    criterion_1(&mut results, &kilford);
    criterion_2_3_4(&mut results, &sweep, &kilford);
    criterion_5(&mut results);
    criterion_6(&mut results);
    criterion_7(&mut results, &sweep, &sweep_cfg);
    assert!(!Cache::open(cache_dir.path()).unwrap().list().unwrap().is_empty());

    let summary: BTreeMap<usize, bool> = results.iter().copied().collect();
    let failed: Vec<usize> = summary.iter().filter(|(_, ok)| !**ok).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
