//! Directed Cayley tree of the cusp group and its path-length spectrum.
//!
//! Paths are words `i_1 .. i_N` over the six letters `g1, g2, g3, g1^-1,
//! g2^-1, g3^-1` (indices 1..6); a letter may not be followed by its inverse.

pub mod markov;
pub mod multifractal;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GAMMA;
use crate::hyperbolic::{dist_ball, dist_from_origin, BallPoint};

pub use markov::{markov_estimate, markov_weights, MarkovEstimate};
pub use multifractal::{
    alpha_limits, gaussian_partition, gaussian_tau, gibbs_mean, multifractal_at,
    multifractal_curves, partition_function, GaussianParams, MultifractalCurve, MultifractalPoint,
};

pub const MIN_DEPTH: usize = 1;
pub const MAX_DEPTH: usize = 9;
/// Values closer than this are reported as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Default histogram bin width.
pub const DEFAULT_BIN_WIDTH: f64 = 0.2;

/// Number of admissible words of length `n`: `6 * 5^(n-1)`.
pub fn vertex_count(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    6 * 5u64.pow(n as u32 - 1)
}

/// Letters are 0-based here; `a` may follow `b` unless they are mutually inverse.
#[inline]
pub fn admissible_pair(prev: usize, next: usize) -> bool {
    prev.abs_diff(next) != 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Functional {
    /// Sum of distances from the origin to every vertex of the path.
    #[serde(rename = "L")]
    L,
    /// Sum of distances between consecutive vertices.
    #[serde(rename = "L0")]
    L0,
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functional::L => "L",
            Functional::L0 => "L0",
        })
    }
}

impl FromStr for Functional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(Functional::L),
            "L0" => Ok(Functional::L0),
            _ => Err(Error::Parse(format!("unknown functional {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `P_t = γ_{i_t}[P_{t-1}]`: each new letter acts last.
    Outermost,
    /// `P_t = γ_{i_1} … γ_{i_t}[0]`: each new letter acts first.
    Innermost,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Outermost => "outermost",
            Convention::Innermost => "innermost",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outermost" => Ok(Convention::Outermost),
            "innermost" => Ok(Convention::Innermost),
            _ => Err(Error::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

/// A path in the tree as 1-based letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWord {
    pub indices: Vec<u8>,
}

impl PathWord {
    pub fn new(indices: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| !(1..=6).contains(&i)) {
            return Err(Error::OutOfRange {
                name: "letter",
                value: bad as i64,
                min: 1,
                max: 6,
            });
        }
        Ok(PathWord { indices })
    }

    pub fn is_admissible(&self) -> bool {
        self.indices
            .windows(2)
            .all(|w| admissible_pair(w[0] as usize, w[1] as usize))
    }

    /// Vertices `P_1 .. P_N` of the path.
    pub fn vertices(&self, convention: Convention) -> Result<Vec<BallPoint>> {
        let letters: Vec<usize> = self.indices.iter().map(|&i| i as usize - 1).collect();
        let mut out = Vec::with_capacity(letters.len());
        match convention {
            Convention::Outermost => {
                let mut p = BallPoint::ORIGIN;
                for &l in &letters {
                    p = GAMMA[l].apply(p)?;
                    out.push(p);
                }
            }
            Convention::Innermost => {
                for t in 1..=letters.len() {
                    out.push(apply_prefix(&letters[..t])?);
                }
            }
        }
        Ok(out)
    }

    pub fn functional(&self, functional: Functional, convention: Convention) -> Result<f64> {
        let pts = self.vertices(convention)?;
        Ok(path_value(functional, &pts))
    }
}

/// `γ_{w_1} … γ_{w_t}[0]`.
fn apply_prefix(letters: &[usize]) -> Result<BallPoint> {
    letters
        .iter()
        .rev()
        .try_fold(BallPoint::ORIGIN, |p, &l| GAMMA[l].apply(p))
}

fn path_value(functional: Functional, pts: &[BallPoint]) -> f64 {
    match functional {
        Functional::L => pts.iter().map(|&p| dist_from_origin(p)).sum(),
        Functional::L0 => {
            let mut prev = BallPoint::ORIGIN;
            let mut acc = 0.0;
            for &p in pts {
                acc += dist_ball(prev, p);
                prev = p;
            }
            acc
        }
    }
}

/// Depth-first walk below a fixed first letter, pushing one value per leaf in
/// lexicographic word order.
struct Walker {
    n: usize,
    functional: Functional,
    convention: Convention,
    letters: Vec<usize>,
    out: Vec<f64>,
}

impl Walker {
    fn step_point(&self, prev: BallPoint) -> Result<BallPoint> {
        let t = self.letters.len();
        match self.convention {
            Convention::Outermost => GAMMA[self.letters[t - 1]].apply(prev),
            Convention::Innermost => apply_prefix(&self.letters),
        }
    }

    fn walk(&mut self, prev: BallPoint, acc: f64) -> Result<()> {
        let p = self.step_point(prev)?;
        let acc = acc
            + match self.functional {
                Functional::L => dist_from_origin(p),
                Functional::L0 => dist_ball(prev, p),
            };
        if self.letters.len() == self.n {
            self.out.push(acc);
            return Ok(());
        }
        let last = *self.letters.last().expect("non-empty");
        for next in 0..6 {
            if admissible_pair(last, next) {
                self.letters.push(next);
                self.walk(p, acc)?;
                self.letters.pop();
            }
        }
        Ok(())
    }
}

fn check_depth(n: usize) -> Result<()> {
    if !(MIN_DEPTH..=MAX_DEPTH).contains(&n) {
        return Err(Error::OutOfRange {
            name: "N",
            value: n as i64,
            min: MIN_DEPTH as i64,
            max: MAX_DEPTH as i64,
        });
    }
    Ok(())
}

fn subtree(n: usize, functional: Functional, convention: Convention, first: usize) -> Result<Vec<f64>> {
    let mut w = Walker {
        n,
        functional,
        convention,
        letters: vec![first],
        out: Vec::with_capacity((vertex_count(n) / 6) as usize),
    };
    w.walk(BallPoint::ORIGIN, 0.0)?;
    Ok(w.out)
}

/// Path values in lexicographic word order.
pub fn enumerate_values(n: usize, functional: Functional, convention: Convention) -> Result<Vec<f64>> {
    check_depth(n)?;
    let mut out = Vec::with_capacity(vertex_count(n) as usize);
    for first in 0..6 {
        out.extend(subtree(n, functional, convention, first)?);
    }
    Ok(out)
}

/// As [`enumerate_values`], with the six first-letter subtrees walked in
/// parallel and concatenated in letter order. The output is identical to the
/// serial walk.
pub fn enumerate_values_parallel(
    n: usize,
    functional: Functional,
    convention: Convention,
) -> Result<Vec<f64>> {
    check_depth(n)?;
    let parts: Vec<Result<Vec<f64>>> = (0..6)
        .into_par_iter()
        .map(|first| subtree(n, functional, convention, first))
        .collect();
    let mut out = Vec::with_capacity(vertex_count(n) as usize);
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub delta: f64,
    pub origin: f64,
    pub counts: Vec<u64>,
    /// Number of distinct values after merging those within [`DEGENERACY_TOL`].
    pub distinct_levels: usize,
    /// Largest multiplicity of a merged level.
    pub max_degeneracy: usize,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Left edges of the bins.
    pub fn edges(&self) -> Vec<f64> {
        (0..self.counts.len())
            .map(|k| self.origin + k as f64 * self.delta)
            .collect()
    }
}

/// Path-length spectrum at generation `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub n: usize,
    pub functional: Functional,
    pub convention: Convention,
    /// Sorted ascending.
    pub values: Vec<f64>,
    /// Enumeration order; all sums run over this order.
    #[serde(skip)]
    pub raw: Vec<f64>,
    pub l_min: f64,
    pub l_max: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub sigma: f64,
    pub histogram: Histogram,
}

/// Compensated (Neumaier) sum.
pub(crate) fn neumaier_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for x in it {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

impl SpectrumSummary {
    /// Builds the summary from values in enumeration order.
    pub fn from_raw(
        n: usize,
        functional: Functional,
        convention: Convention,
        raw: Vec<f64>,
    ) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Domain("empty spectrum".into()));
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite spectrum value".into()));
        }
        let count = raw.len() as f64;
        let mean = neumaier_sum(raw.iter().copied()) / count;
        let var = neumaier_sum(raw.iter().map(|v| (v - mean) * (v - mean))) / count;
        let mut values = raw.clone();
        values.sort_by(f64::total_cmp);
        let l_min = values[0];
        let l_max = values[values.len() - 1];
        let mut s = SpectrumSummary {
            n,
            functional,
            convention,
            values,
            raw,
            l_min,
            l_max,
            mean: mean.clamp(l_min, l_max),
            sigma: var.max(0.0).sqrt(),
            histogram: Histogram {
                delta: DEFAULT_BIN_WIDTH,
                origin: l_min,
                counts: Vec::new(),
                distinct_levels: 0,
                max_degeneracy: 0,
            },
        };
        s.histogram = histogram(&s, DEFAULT_BIN_WIDTH)?;
        Ok(s)
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// `ln v(N)` with `v(N)` the number of paths.
    pub fn ln_count(&self) -> f64 {
        (self.raw.len() as f64).ln()
    }

    /// Population skewness.
    pub fn skewness(&self) -> f64 {
        if self.sigma == 0.0 {
            return 0.0;
        }
        let m3 = neumaier_sum(self.raw.iter().map(|v| (v - self.mean).powi(3))) / self.raw.len() as f64;
        m3 / self.sigma.powi(3)
    }
}

/// Enumerates every admissible path of length `n` and summarizes the values.
pub fn enumerate_spectrum(
    n: usize,
    functional: Functional,
    convention: Convention,
) -> Result<SpectrumSummary> {
    let raw = enumerate_values(n, functional, convention)?;
    SpectrumSummary::from_raw(n, functional, convention, raw)
}

/// Parallel variant of [`enumerate_spectrum`].
pub fn enumerate_spectrum_parallel(
    n: usize,
    functional: Functional,
    convention: Convention,
) -> Result<SpectrumSummary> {
    let raw = enumerate_values_parallel(n, functional, convention)?;
    SpectrumSummary::from_raw(n, functional, convention, raw)
}

/// Counts per half-open bin `[l_min + kΔ, l_min + (k+1)Δ)`; the maximum is
/// folded into the last bin.
pub fn histogram(s: &SpectrumSummary, delta: f64) -> Result<Histogram> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("bin width must be positive, got {delta}")));
    }
    let range = s.l_max - s.l_min;
    let bins = ((range / delta).ceil() as usize).max(1);
    let mut counts = vec![0u64; bins];
    for &v in &s.values {
        let k = (((v - s.l_min) / delta).floor() as usize).min(bins - 1);
        counts[k] += 1;
    }
    let mut distinct_levels = 0;
    let mut max_degeneracy = 0;
    let mut run = 0;
    let mut prev = f64::NEG_INFINITY;
    for &v in &s.values {
        if v - prev > DEGENERACY_TOL {
            distinct_levels += 1;
            max_degeneracy = max_degeneracy.max(run);
            run = 0;
        }
        run += 1;
        prev = v;
    }
    max_degeneracy = max_degeneracy.max(run);
    Ok(Histogram {
        delta,
        origin: s.l_min,
        counts,
        distinct_levels,
        max_degeneracy,
    })
}

/// `ℓ = dist(0, γ_1[0])`, the common step length of the generators.
pub fn step_length() -> f64 {
    dist_from_origin(GAMMA[0].apply(BallPoint::ORIGIN).expect("origin image is interior"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_formula() {
        for n in 1..=4 {
            let v = enumerate_values(n, Functional::L, Convention::Outermost).unwrap();
            assert_eq!(v.len() as u64, vertex_count(n));
        }
        assert_eq!(vertex_count(6), 18750);
    }

    #[test]
    fn depth_guard() {
        assert!(enumerate_values(0, Functional::L, Convention::Outermost).is_err());
        assert!(enumerate_values(10, Functional::L, Convention::Outermost).is_err());
    }

    #[test]
    fn admissibility_by_brute_force() {
        for n in 1..=3usize {
            let mut all = Vec::new();
            for code in 0..6usize.pow(n as u32) {
                let mut c = code;
                let mut idx = vec![0u8; n];
                for slot in idx.iter_mut().rev() {
                    *slot = (c % 6) as u8 + 1;
                    c /= 6;
                }
                let w = PathWord::new(idx).unwrap();
                if w.is_admissible() {
                    all.push(w);
                }
            }
            assert_eq!(all.len() as u64, vertex_count(n));
            let direct: Vec<f64> = all
                .iter()
                .map(|w| w.functional(Functional::L, Convention::Outermost).unwrap())
                .collect();
            let walked = enumerate_values(n, Functional::L, Convention::Outermost).unwrap();
            for (a, b) in direct.iter().zip(&walked) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_generation_is_step_length() {
        let s = enumerate_spectrum(1, Functional::L, Convention::Outermost).unwrap();
        for v in &s.values {
            assert!((v - 1.762747174039086).abs() < 1e-12);
        }
        assert!((step_length() - 1.762747174039086).abs() < 1e-12);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        for conv in [Convention::Outermost, Convention::Innermost] {
            let a = enumerate_values(4, Functional::L, conv).unwrap();
            let b = enumerate_values_parallel(4, Functional::L, conv).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn histogram_edge_cases() {
        let s = enumerate_spectrum(3, Functional::L, Convention::Outermost).unwrap();
        let h = histogram(&s, 0.2).unwrap();
        assert_eq!(h.total(), 150);
        let one = histogram(&s, s.l_max - s.l_min).unwrap();
        assert_eq!(one.counts, vec![150]);
        let wide = histogram(&s, 1e3).unwrap();
        assert_eq!(wide.counts, vec![150]);
        assert!(histogram(&s, 0.0).is_err());
        let flat = enumerate_spectrum(1, Functional::L, Convention::Outermost).unwrap();
        assert_eq!(flat.histogram.counts, vec![6]);
        assert_eq!(flat.histogram.distinct_levels, 1);
        assert_eq!(flat.histogram.max_degeneracy, 6);
    }

    #[test]
    fn parsing() {
        assert_eq!("L0".parse::<Functional>().unwrap(), Functional::L0);
        assert_eq!("innermost".parse::<Convention>().unwrap(), Convention::Innermost);
        assert!("l".parse::<Functional>().is_err());
        assert!(PathWord::new(vec![1, 7]).is_err());
        assert!(!PathWord::new(vec![1, 4]).unwrap().is_admissible());
    }
}
