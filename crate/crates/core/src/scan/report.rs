//! Scan reports: a versioned JSON document and a fixed-column CSV table.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{PairStatus, ScanConfig, ScanResult, ARTIFACT_VERSION};
use crate::diagnostics::DiagnosticReport;
use crate::error::{usage, Result};
use crate::modsym::{GroupKind, HEILBRONN_FAMILY_ID};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub heilbronn_family: String,
    pub config: ScanConfig,
    pub results: Vec<ScanResult>,
}

impl ScanReport {
    pub fn new(config: ScanConfig, results: Vec<ScanResult>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            heilbronn_family: HEILBRONN_FAMILY_ID.to_string(),
            config,
            results,
        }
    }

    pub fn integrity_errors(&self) -> usize {
        self.results
            .iter()
            .filter(|r| matches!(r.status, PairStatus::Failed { .. }))
            .count()
    }

    pub fn findings(&self) -> usize {
        self.results.iter().map(ScanResult::findings).sum()
    }

    /// All diagnostic reports with their pair.
    pub fn factor_reports(&self) -> impl Iterator<Item = (&ScanResult, &DiagnosticReport)> {
        self.results
            .iter()
            .flat_map(|r| r.reports().iter().map(move |d| (r, d)))
    }
}

/// One CSV row per factor, in the fixed column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub group: GroupKind,
    pub factor: usize,
    #[serde(rename = "dimT")]
    pub dim_t: usize,
    pub res_deg: usize,
    #[serde(rename = "dimF_socle")]
    pub dim_f_socle: usize,
    #[serde(rename = "dimF_socle_p")]
    pub dim_f_socle_p: usize,
    /// Empty when the hypotheses are not met.
    pub r: String,
    pub ordinary: bool,
    pub gorenstein: bool,
    pub weight1_sig: bool,
    pub eisenstein_flag: bool,
}

pub const CSV_COLUMNS: [&str; 13] = [
    "p",
    "N",
    "group",
    "factor",
    "dimT",
    "res_deg",
    "dimF_socle",
    "dimF_socle_p",
    "r",
    "ordinary",
    "gorenstein",
    "weight1_sig",
    "eisenstein_flag",
];

pub fn csv_rows(report: &ScanReport) -> Vec<CsvRow> {
    report
        .factor_reports()
        .map(|(r, d)| CsvRow {
            p: r.p,
            n: r.level,
            group: r.group,
            factor: d.factor.index,
            dim_t: d.factor.dim_t,
            res_deg: d.factor.residue_degree,
            dim_f_socle: d.dim_f_socle,
            dim_f_socle_p: d.dim_f_socle_p,
            r: d.multiplicity_r.map(|x| x.to_string()).unwrap_or_default(),
            ordinary: d.ordinary,
            gorenstein: d.gorenstein,
            weight1_sig: d.weight_one_signature,
            eisenstein_flag: d.eisenstein_flag,
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[CsvRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(|e| usage!("csv: {e}"))?;
    for row in rows {
        w.serialize(row).map_err(|e| usage!("csv: {e}"))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(|e| usage!("csv: {e}"))?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(usage!("unexpected csv header {headers:?}"));
    }
    r.deserialize().map(|row| row.map_err(|e| usage!("csv: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::{run_scan, ScanConfig};

    #[test]
    fn csv_and_json_round_trip() {
        let cfg = ScanConfig {
            primes: vec![2, 5],
            levels: vec![11, 23, 37],
            ..Default::default()
        };
        let rep = run_scan(&cfg).unwrap();
        let rows = csv_rows(&rep);
        assert!(!rows.is_empty());
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_COLUMNS.join(",")));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);

        let json = serde_json::to_string(&rep).unwrap();
        let back: ScanReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
