//! Persisted prime scans: fixed-format CSV rows, a sidecar checkpoint tying
//! the file to its surface, and a resumable, scheduler-invariant pipeline.
//!
//! Per-prime records are computed independently (in parallel when the pool
//! allows) but always persisted in ascending prime order, so the bytes on
//! disk never depend on scheduling or on where a previous run stopped.

use super::{primes_up_to, NagaoError, PrimeScanRecord, ViolationClass};
use crate::charsum::PrimeField;
use crate::surface::IntegralSurface;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str = "p,T_p,L_p,M_p,R_p,bad,violation";

/// Primes per parallel batch; also the checkpoint flush granularity.
const CHUNK: usize = 256;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub max_prime: u64,
    /// Persist records here (plus a `<path>.ckpt.json` sidecar); `None` keeps
    /// the scan in memory.
    pub csv_path: Option<PathBuf>,
    /// Continue an interrupted scan of the same surface.
    pub resume: bool,
    /// Use the O(p^2) oracle instead of the closed-form kernel.
    pub naive: bool,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    surface_sha256: String,
    last_p: u64,
}

impl PrimeScanRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p,
            self.t_p,
            self.l_p,
            self.m_p,
            self.r_p,
            self.bad as u8,
            self.violation.map_or("", |v| v.tag())
        )
    }

    pub fn from_csv_row(row: &str) -> Option<PrimeScanRecord> {
        let mut it = row.split(',');
        let p = it.next()?.parse().ok()?;
        let t_p = it.next()?.parse().ok()?;
        let l_p = it.next()?.parse().ok()?;
        let m_p = it.next()?.parse().ok()?;
        let r_p = it.next()?.parse().ok()?;
        let bad = match it.next()? {
            "0" => false,
            "1" => true,
            _ => return None,
        };
        let violation = ViolationClass::from_tag(it.next()?)?;
        if it.next().is_some() {
            return None;
        }
        Some(PrimeScanRecord {
            p,
            t_p,
            l_p,
            m_p,
            r_p,
            bad,
            violation,
        })
    }
}

pub fn surface_sha256(surface: &IntegralSurface) -> String {
    let mut hasher = Sha256::new();
    hasher.update(surface.surface().canonical_json().as_bytes());
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn checkpoint_path(csv_path: &Path) -> PathBuf {
    let mut os = csv_path.as_os_str().to_owned();
    os.push(".ckpt.json");
    PathBuf::from(os)
}

fn compute_records(surface: &IntegralSurface, primes: &[u64], naive: bool) -> Vec<PrimeScanRecord> {
    let work = |&p: &u64| {
        let field = PrimeField::new(p).expect("sieve emits odd primes >= 5");
        if naive {
            super::prime_record_naive(surface, &field)
        } else {
            super::prime_record(surface, &field)
        }
    };
    match std::env::var("QUADRANK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(|| primes.par_iter().map(work).collect()),
        _ => primes.par_iter().map(work).collect(),
    }
}

/// Read back the valid prefix of an existing scan file: complete well-formed
/// rows whose primes match `primes` in order. Returns the records and the
/// byte offset just past the last good row.
fn read_prefix(path: &Path, primes: &[u64]) -> std::io::Result<(Vec<PrimeScanRecord>, u64)> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    let mut offset = 0u64;
    let mut records = Vec::new();

    let n = reader.read_line(&mut line)?;
    if line.trim_end_matches('\n') != CSV_HEADER || !line.ends_with('\n') {
        return Ok((records, 0));
    }
    offset += n as u64;
    loop {
        line.clear();
        let n = reader.read_line(&mut line)?;
        if n == 0 || !line.ends_with('\n') {
            break; // EOF or truncated final row
        }
        match PrimeScanRecord::from_csv_row(line.trim_end_matches('\n')) {
            Some(rec) if records.len() < primes.len() && rec.p == primes[records.len()] => {
                records.push(rec);
                offset += n as u64;
            }
            _ => break,
        }
    }
    Ok((records, offset))
}

/// Scan all primes in `[5, max_prime]`, resuming from and appending to the
/// CSV when configured. The returned records (and the file bytes) are
/// identical regardless of interruptions or parallel scheduling.
pub fn scan(
    surface: &IntegralSurface,
    cfg: &ScanConfig,
) -> Result<Vec<PrimeScanRecord>, NagaoError> {
    let (primes, _) = primes_up_to(cfg.max_prime);
    if primes.is_empty() {
        return Err(NagaoError::EmptyRange(cfg.max_prime));
    }

    let Some(csv_path) = &cfg.csv_path else {
        return Ok(compute_records(surface, &primes, cfg.naive));
    };

    let hash = surface_sha256(surface);
    let ckpt_path = checkpoint_path(csv_path);
    let mut records: Vec<PrimeScanRecord> = Vec::new();

    let mut file = if cfg.resume && csv_path.exists() {
        let ckpt_raw = std::fs::read_to_string(&ckpt_path)
            .map_err(|e| NagaoError::BadCheckpoint(format!("missing sidecar: {e}")))?;
        let ckpt: Checkpoint = serde_json::from_str(&ckpt_raw)
            .map_err(|e| NagaoError::BadCheckpoint(e.to_string()))?;
        if ckpt.surface_sha256 != hash {
            return Err(NagaoError::ChecksumMismatch {
                expected: hash,
                found: ckpt.surface_sha256,
            });
        }
        let (prefix, offset) = read_prefix(csv_path, &primes)?;
        records = prefix;
        let file = OpenOptions::new().read(true).write(true).open(csv_path)?;
        file.set_len(offset)?;
        let mut file = file;
        file.seek(SeekFrom::End(0))?;
        if offset == 0 {
            writeln!(file, "{CSV_HEADER}")?;
        }
        file
    } else {
        let mut file = File::create(csv_path)?;
        writeln!(file, "{CSV_HEADER}")?;
        file
    };

    let done = records.len();
    for chunk in primes[done..].chunks(CHUNK) {
        let batch = compute_records(surface, chunk, cfg.naive);
        for rec in &batch {
            writeln!(file, "{}", rec.to_csv_row())?;
        }
        file.flush()?;
        records.extend(batch);
        let ckpt = Checkpoint {
            surface_sha256: hash.clone(),
            last_p: records.last().unwrap().p,
        };
        std::fs::write(&ckpt_path, serde_json::to_string(&ckpt).unwrap())?;
    }
    Ok(records)
}

/// Parse a whole scan file (header plus rows), used by `estimate` consumers.
pub fn read_scan_csv(path: &Path) -> Result<Vec<PrimeScanRecord>, NagaoError> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    match lines.next() {
        Some(Ok(h)) if h == CSV_HEADER => {}
        _ => return Err(NagaoError::BadCheckpoint("missing CSV header".into())),
    }
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        match PrimeScanRecord::from_csv_row(&line) {
            Some(rec) => records.push(rec),
            None => return Err(NagaoError::BadCheckpoint(format!("bad row: {line}"))),
        }
    }
    Ok(records)
}
