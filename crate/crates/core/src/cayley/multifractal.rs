//! Partition function over paths and the derived multifractal exponents.

use serde::{Deserialize, Serialize};

use super::{neumaier_sum, vertex_count, SpectrumSummary};
use crate::error::{Error, Result};
use crate::special::ln_erf_sum;

fn shift(s: &SpectrumSummary, q: f64) -> f64 {
    if q > 0.0 {
        q * s.l_max
    } else {
        q * s.l_min
    }
}

/// `ln Z(q) = ln Σ exp(q L)` by a shifted log-sum-exp. `ln Z(0)` is `ln v` exactly.
pub fn partition_function(s: &SpectrumSummary, q: f64) -> f64 {
    if q == 0.0 {
        return s.ln_count();
    }
    let c = shift(s, q);
    neumaier_sum(s.raw.iter().map(|&l| (q * l - c).exp())).ln() + c
}

/// Gibbs average `Σ L e^{qL} / Σ e^{qL}`.
pub fn gibbs_mean(s: &SpectrumSummary, q: f64) -> f64 {
    let c = shift(s, q);
    let mut num = Vec::with_capacity(s.raw.len());
    let mut den = Vec::with_capacity(s.raw.len());
    for &l in &s.raw {
        let w = (q * l - c).exp();
        num.push(l * w);
        den.push(w);
    }
    (neumaier_sum(num) / neumaier_sum(den)).clamp(s.l_min, s.l_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultifractalPoint {
    pub q: f64,
    pub tau: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub alpha: f64,
    pub f: f64,
}

/// Exponents at a single `q`, given `ln Z(1)`.
fn point_with(s: &SpectrumSummary, q: f64, ln_z1: f64) -> MultifractalPoint {
    let ln_v = s.ln_count();
    let tau = (partition_function(s, q) - q * ln_z1) / ln_v;
    let alpha = (ln_z1 - gibbs_mean(s, q)) / ln_v;
    // D(1) = -τ'(1) = α(1)
    let d = if q == 1.0 { alpha } else { tau / (1.0 - q) };
    MultifractalPoint {
        q,
        tau,
        d,
        alpha,
        f: tau + q * alpha,
    }
}

pub fn multifractal_at(s: &SpectrumSummary, q: f64) -> MultifractalPoint {
    point_with(s, q, partition_function(s, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultifractalCurve {
    pub q_grid: Vec<f64>,
    pub tau: Vec<f64>,
    #[serde(rename = "D")]
    pub d: Vec<f64>,
    pub alpha: Vec<f64>,
    pub f: Vec<f64>,
}

impl MultifractalCurve {
    pub fn len(&self) -> usize {
        self.q_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q_grid.is_empty()
    }

    pub fn point(&self, i: usize) -> MultifractalPoint {
        MultifractalPoint {
            q: self.q_grid[i],
            tau: self.tau[i],
            d: self.d[i],
            alpha: self.alpha[i],
            f: self.f[i],
        }
    }
}

/// Evenly spaced grid from `q_min` to `q_max` inclusive. Grid points within
/// rounding of 0 or 1 are snapped onto them.
pub fn q_grid(q_min: f64, q_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::OutOfRange {
            name: "steps",
            value: steps as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    if !(q_min < q_max) {
        return Err(Error::Domain(format!("empty q range [{q_min}, {q_max}]")));
    }
    let h = (q_max - q_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            let q = if k == steps - 1 { q_max } else { q_min + k as f64 * h };
            if q.abs() < 1e-12 * h {
                0.0
            } else if (q - 1.0).abs() < 1e-12 * h {
                1.0
            } else {
                q
            }
        })
        .collect())
}

pub fn multifractal_curves(
    s: &SpectrumSummary,
    q_min: f64,
    q_max: f64,
    steps: usize,
) -> Result<MultifractalCurve> {
    let grid = q_grid(q_min, q_max, steps)?;
    let ln_z1 = partition_function(s, 1.0);
    let mut c = MultifractalCurve {
        q_grid: Vec::with_capacity(steps),
        tau: Vec::with_capacity(steps),
        d: Vec::with_capacity(steps),
        alpha: Vec::with_capacity(steps),
        f: Vec::with_capacity(steps),
    };
    for q in grid {
        let p = point_with(s, q, ln_z1);
        c.q_grid.push(q);
        c.tau.push(p.tau);
        c.d.push(p.d);
        c.alpha.push(p.alpha);
        c.f.push(p.f);
    }
    Ok(c)
}

/// `(α_min, α_max)`: the `q → ±∞` limits `(ln Z(1) - L_max)/ln v` and
/// `(ln Z(1) - L_min)/ln v`.
pub fn alpha_limits(s: &SpectrumSummary) -> (f64, f64) {
    let ln_z1 = partition_function(s, 1.0);
    let ln_v = s.ln_count();
    ((ln_z1 - s.l_max) / ln_v, (ln_z1 - s.l_min) / ln_v)
}

/// Moments of a spectrum fed to the truncated-Gaussian model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub n: usize,
    pub l_min: f64,
    pub l_max: f64,
    pub mean: f64,
    pub sigma: f64,
}

impl GaussianParams {
    pub fn from_summary(s: &SpectrumSummary) -> Self {
        GaussianParams {
            n: s.n,
            l_min: s.l_min,
            l_max: s.l_max,
            mean: s.mean,
            sigma: s.sigma,
        }
    }

    fn ln_c(&self, q: f64) -> f64 {
        let shifted = self.mean + q * self.sigma * self.sigma;
        let scale = std::f64::consts::SQRT_2 * self.sigma;
        ln_erf_sum((self.l_max - shifted) / scale, (shifted - self.l_min) / scale)
    }
}

/// `ln Z*(q) = ln v + ln c(q) - ln c(0) + q²σ²/2 + q·mean` with
/// `c(q) = erf((L_max - mean - qσ²)/(√2σ)) + erf((mean + qσ² - L_min)/(√2σ))`.
pub fn gaussian_partition(p: &GaussianParams, q: f64) -> Result<f64> {
    if !(p.sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be positive, got {}", p.sigma)));
    }
    let ln_v = (vertex_count(p.n) as f64).ln();
    if q == 0.0 {
        return Ok(ln_v);
    }
    Ok(ln_v + p.ln_c(q) - p.ln_c(0.0) + 0.5 * q * q * p.sigma * p.sigma + q * p.mean)
}

/// Mass exponent of the Gaussian model, normalized like the exact one.
pub fn gaussian_tau(p: &GaussianParams, q: f64) -> Result<f64> {
    let ln_v = (vertex_count(p.n) as f64).ln();
    let ln_z1 = gaussian_partition(p, 1.0)?;
    Ok((gaussian_partition(p, q)? - q * ln_z1) / ln_v)
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_spectrum, Convention, Functional};
    use super::*;

    #[test]
    fn anchors() {
        let s = enumerate_spectrum(3, Functional::L, Convention::Outermost).unwrap();
        let c = multifractal_curves(&s, -2.0, 2.0, 41).unwrap();
        let i0 = c.q_grid.iter().position(|&q| q == 0.0).unwrap();
        let i1 = c.q_grid.iter().position(|&q| q == 1.0).unwrap();
        assert_eq!(c.tau[i0], 1.0);
        assert_eq!(c.tau[i1], 0.0);
        assert_eq!(c.f[i0], 1.0);
        assert_eq!(partition_function(&s, 0.0), (150.0f64).ln());
    }

    #[test]
    fn degenerate_alpha_limits() {
        let s = enumerate_spectrum(1, Functional::L, Convention::Outermost).unwrap();
        let (a, b) = alpha_limits(&s);
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn large_q_dominance() {
        let s = enumerate_spectrum(3, Functional::L, Convention::Outermost).unwrap();
        for q in [40.0, 200.0] {
            let r = partition_function(&s, q) - q * s.l_max;
            assert!(r >= -1e-12 && r.is_finite());
        }
        assert!(partition_function(&s, -200.0).is_finite());
    }

    #[test]
    fn gaussian_at_zero() {
        let p = GaussianParams {
            n: 6,
            l_min: 13.0,
            l_max: 33.0,
            mean: 25.0,
            sigma: 3.0,
        };
        assert_eq!(gaussian_partition(&p, 0.0).unwrap(), (18750.0f64).ln());
        assert_eq!(gaussian_tau(&p, 1.0).unwrap(), 0.0);
        let bad = GaussianParams { sigma: 0.0, ..p };
        assert!(gaussian_partition(&bad, 1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(q_grid(0.0, 1.0, 1).is_err());
        assert!(q_grid(1.0, 1.0, 5).is_err());
        let g = q_grid(-10.0, 10.0, 201).unwrap();
        assert_eq!(g.len(), 201);
        assert!(g.contains(&0.0) && g.contains(&1.0));
    }
}
