//! Spectrum cache and CSV/JSON exports.
//!
//! Cache layout: a header line `N,functional,convention,count`, one record
//! line, then one value per line in enumeration order, written with 17
//! significant digits so that a reload reproduces every statistic bit for bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::cayley::{Convention, Functional, Histogram, MultifractalCurve, SpectrumSummary};
use crate::error::{Error, Result};
use crate::sine_gordon::PhasePoint;

pub const CACHE_HEADER: &str = "N,functional,convention,count";

/// Writes `contents` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn spectrum_cache_text(s: &SpectrumSummary) -> String {
    let mut out = String::with_capacity(24 * (s.raw.len() + 2));
    out.push_str(CACHE_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{},{},{},{}\n",
        s.n,
        s.functional,
        s.convention,
        s.raw.len()
    ));
    for v in &s.raw {
        out.push_str(&format!("{v:.16e}\n"));
    }
    out
}

pub fn write_spectrum_cache(path: &Path, s: &SpectrumSummary) -> Result<()> {
    write_atomic(path, &spectrum_cache_text(s))
}

/// Parses a cache, returning `None` when its record does not match the
/// requested `(n, functional, convention)`.
pub fn parse_spectrum_cache(
    text: &str,
    n: usize,
    functional: Functional,
    convention: Convention,
) -> Result<Option<SpectrumSummary>> {
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_HEADER) {
        return Ok(None);
    }
    let record = lines
        .next()
        .ok_or_else(|| Error::Parse("cache missing record line".into()))?;
    let fields: Vec<&str> = record.split(',').collect();
    if fields.len() != 4 {
        return Err(Error::Parse(format!("bad cache record {record:?}")));
    }
    let parse_usize = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad cache record {record:?}: {e}")))
    };
    let cn = parse_usize(fields[0])?;
    let cf: Functional = fields[1].parse()?;
    let cc: Convention = fields[2].parse()?;
    let count = parse_usize(fields[3])?;
    if (cn, cf, cc) != (n, functional, convention) {
        return Ok(None);
    }
    let raw = lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad cache value {l:?}: {e}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if raw.len() != count {
        return Err(Error::Parse(format!(
            "cache lists {count} values but holds {}",
            raw.len()
        )));
    }
    SpectrumSummary::from_raw(n, functional, convention, raw).map(Some)
}

/// Loads a matching cache, or `Ok(None)` if the file is absent or describes
/// another run.
pub fn read_spectrum_cache(
    path: &Path,
    n: usize,
    functional: Functional,
    convention: Convention,
) -> Result<Option<SpectrumSummary>> {
    match fs::read_to_string(path) {
        Ok(text) => parse_spectrum_cache(&text, n, functional, convention),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRecord {
    pub n: usize,
    pub count: usize,
    pub functional: Functional,
    pub convention: Convention,
    pub l_min: f64,
    pub l_max: f64,
    pub mean: f64,
    pub sigma: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
}

impl SummaryRecord {
    pub fn new(s: &SpectrumSummary) -> Self {
        let (alpha_min, alpha_max) = crate::cayley::alpha_limits(s);
        SummaryRecord {
            n: s.n,
            count: s.count(),
            functional: s.functional,
            convention: s.convention,
            l_min: s.l_min,
            l_max: s.l_max,
            mean: s.mean,
            sigma: s.sigma,
            alpha_min,
            alpha_max,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn curves_csv(c: &MultifractalCurve) -> String {
    let mut out = String::from("q,tau,D,alpha,f\n");
    for i in 0..c.len() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.q_grid[i], c.tau[i], c.d[i], c.alpha[i], c.f[i]
        ));
    }
    out
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_start,bin_end,count\n");
    for (start, count) in h.edges().into_iter().zip(&h.counts) {
        out.push_str(&format!("{},{},{}\n", start, start + h.delta, count));
    }
    out
}

pub fn portrait_csv(rows: &[(PhasePoint, f64)]) -> String {
    let mut out = String::from("phi,p,H\n");
    for (pt, h) in rows {
        out.push_str(&format!("{},{},{}\n", pt.phi, pt.p, h));
    }
    out
}

pub fn action_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("epsilon,J\n");
    for (e, j) in rows {
        out.push_str(&format!("{e},{j}\n"));
    }
    out
}
