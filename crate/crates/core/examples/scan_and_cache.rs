//! A small scan written through the result cache, then emitted as CSV.

use modp_hecke::scan::{csv_rows, run_scan, write_csv, Cache, ScanConfig};

fn main() -> modp_hecke::error::Result<()> {
    let dir = tempfile::tempdir()?;
    let config = ScanConfig {
        primes: vec![2, 3, 5],
        levels: vec![11, 23, 37],
        cache_dir: Some(dir.path().to_path_buf()),
        workers: 2,
        ..ScanConfig::default()
    };
    let report = run_scan(&config)?;
    println!("{} pairs, {} findings", report.results.len(), report.findings());
    write_csv(&csv_rows(&report), std::io::stdout())?;
    for entry in Cache::open(dir.path())?.list()? {
        println!("cached {} ({} bytes, {:?})", entry.name, entry.bytes, entry.status);
    }
    Ok(())
}
