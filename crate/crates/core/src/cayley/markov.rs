//! Markov-chain estimate of the spectrum from two-step length increments.
//!
//! The increment matrix `ξ[i][j]` is the mean growth in distance from the
//! origin when a third letter follows the admissible pair `(i, j)`.

use serde::{Deserialize, Serialize};

use super::{admissible_pair, neumaier_sum, step_length};
use crate::error::{Error, Result};
use crate::group::GAMMA;
use crate::hyperbolic::{dist_from_origin, BallPoint};

pub const MIN_DEPTH: usize = 2;
pub const MAX_DEPTH: usize = 9;
const ADMISSIBLE_PAIRS: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovEstimate {
    pub n: usize,
    /// `None` on the six inadmissible pairs.
    pub xi: [[Option<f64>; 6]; 6],
    pub xi_bar: f64,
    /// `(ξ²)_t` for `t = 0 .. N-2`.
    pub xi2_t: Vec<f64>,
    /// Correlation weights `a_t(N)` for `t = 0 .. N-2`.
    pub weights: Vec<u64>,
    /// Whether `a_0 + 2 Σ a_t = N²(N-1)²/4` holds.
    pub weight_identity: bool,
    /// Largest `t` kept in the variance sum.
    pub truncation: usize,
    pub l_min_star: f64,
    pub l_max_star: f64,
    pub mean_star: f64,
    pub sigma_star: f64,
}

/// `a_t(N) = Σ_{s=1}^{N-1-t} s (s + t)` for `t = 0 .. N-2`.
pub fn markov_weights(n: usize) -> Vec<u64> {
    (0..n.saturating_sub(1))
        .map(|t| {
            (1..n - t)
                .map(|s| (s * (s + t)) as u64)
                .sum::<u64>()
        })
        .collect()
}

fn weight_identity_holds(n: usize, a: &[u64]) -> bool {
    let lhs = a.first().copied().unwrap_or(0) + 2 * a.iter().skip(1).sum::<u64>();
    let n = n as u64;
    4 * lhs == n * n * (n - 1) * (n - 1)
}

fn point(letters: &[usize]) -> Result<BallPoint> {
    letters
        .iter()
        .rev()
        .try_fold(BallPoint::ORIGIN, |p, &l| GAMMA[l].apply(p))
}

/// `ξ[i][j] = (1/5) Σ_k [d(0, γ_k γ_j γ_i[0]) - d(0, γ_k γ_j[0])]` over `k`
/// admissible after `j`.
pub fn increment_matrix() -> Result<[[Option<f64>; 6]; 6]> {
    let mut xi = [[None; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            if !admissible_pair(i, j) {
                continue;
            }
            let mut acc = 0.0;
            for k in (0..6).filter(|&k| admissible_pair(j, k)) {
                acc += dist_from_origin(point(&[k, j, i])?) - dist_from_origin(point(&[k, j])?);
            }
            xi[i][j] = Some(acc / 5.0);
        }
    }
    Ok(xi)
}

fn adjacency() -> [[f64; 6]; 6] {
    let mut a = [[0.0; 6]; 6];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if admissible_pair(i, j) {
                *v = 1.0;
            }
        }
    }
    a
}

fn mat_mul(a: &[[f64; 6]; 6], b: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    let mut c = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] = (0..6).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// `(ξ²)_t`: mean of `ξ[w_1][w_0] · ξ[w_{t+1}][w_t]` over admissible words
/// `w_0 .. w_{t+1}`. The sum over the inner letters is carried by powers of
/// the admissibility matrix, which counts the same words.
pub fn correlations(xi: &[[Option<f64>; 6]; 6], t_max: usize) -> Vec<f64> {
    let x = |i: usize, j: usize| xi[i][j].unwrap_or(0.0);
    let adj = adjacency();
    // tail[b] = Σ_{c adm after b} ξ[c][b]
    let tail: Vec<f64> = (0..6)
        .map(|b| (0..6).filter(|&c| admissible_pair(b, c)).map(|c| x(c, b)).sum())
        .collect();
    let mut out = Vec::with_capacity(t_max + 1);
    let mut power = [[0.0; 6]; 6];
    for (i, row) in power.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for t in 0..=t_max {
        let words = 6.0 * 5f64.powi(t as i32 + 1);
        let mut terms = Vec::with_capacity(30);
        for w0 in 0..6 {
            for w1 in (0..6).filter(|&w1| admissible_pair(w0, w1)) {
                let head = x(w1, w0);
                let rest = if t == 0 {
                    head
                } else {
                    (0..6).map(|b| power[w1][b] * tail[b]).sum()
                };
                terms.push(head * rest);
            }
        }
        out.push(neumaier_sum(terms) / words);
        if t >= 1 {
            power = mat_mul(&power, &adj);
        }
    }
    out
}

/// Markov estimate at depth `n`. `truncation` caps the correlation lag kept in
/// the variance; `None` keeps every lag up to `N-2`.
pub fn markov_estimate(n: usize, truncation: Option<usize>) -> Result<MarkovEstimate> {
    if !(MIN_DEPTH..=MAX_DEPTH).contains(&n) {
        return Err(Error::OutOfRange {
            name: "N",
            value: n as i64,
            min: MIN_DEPTH as i64,
            max: MAX_DEPTH as i64,
        });
    }
    let xi = increment_matrix()?;
    let defined: Vec<f64> = xi.iter().flatten().filter_map(|v| *v).collect();
    let xi_bar = neumaier_sum(defined.iter().copied()) / ADMISSIBLE_PAIRS;
    let xi_min = defined.iter().copied().fold(f64::INFINITY, f64::min);
    let xi_max = defined.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let t_top = n - 2;
    let truncation = truncation.unwrap_or(t_top).min(t_top);
    let xi2_t = correlations(&xi, t_top);
    let weights = markov_weights(n);
    let weight_identity = weight_identity_holds(n, &weights);

    let xb2 = xi_bar * xi_bar;
    let mut var = weights[0] as f64 * (xi2_t[0] - xb2);
    for t in 1..=truncation {
        var += 2.0 * weights[t] as f64 * (xi2_t[t] - xb2);
    }

    let nf = n as f64;
    let base = nf * step_length();
    let pairs = 0.5 * nf * (nf - 1.0);
    Ok(MarkovEstimate {
        n,
        xi,
        xi_bar,
        xi2_t,
        weights,
        weight_identity,
        truncation,
        l_min_star: base + pairs * xi_min,
        l_max_star: base + pairs * xi_max,
        mean_star: base + pairs * xi_bar,
        sigma_star: var.max(0.0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_at_six() {
        let a = markov_weights(6);
        assert_eq!(a.len(), 5);
        assert_eq!(a[0] + 2 * a[1..].iter().sum::<u64>(), 225);
        for n in 2..=9 {
            assert!(weight_identity_holds(n, &markov_weights(n)));
        }
    }

    #[test]
    fn inadmissible_entries_flagged() {
        let xi = increment_matrix().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(xi[i][j].is_none(), !admissible_pair(i, j));
            }
        }
    }

    #[test]
    fn correlations_match_word_enumeration() {
        let xi = increment_matrix().unwrap();
        let fast = correlations(&xi, 4);
        for (t, &value) in fast.iter().enumerate() {
            let len = t + 2;
            let mut words: Vec<Vec<usize>> = (0..6).map(|a| vec![a]).collect();
            for _ in 1..len {
                words = words
                    .into_iter()
                    .flat_map(|w| {
                        let last = *w.last().unwrap();
                        (0..6).filter(move |&c| admissible_pair(last, c)).map(move |c| {
                            let mut v = w.clone();
                            v.push(c);
                            v
                        })
                    })
                    .collect();
            }
            let sum: f64 = words
                .iter()
                .map(|w| xi[w[1]][w[0]].unwrap() * xi[w[t + 1]][w[t]].unwrap())
                .sum();
            let brute = sum / words.len() as f64;
            assert!((brute - value).abs() < 1e-12, "t={t}: {brute} vs {value}");
        }
    }

    #[test]
    fn variance_nonnegative_and_truncation() {
        let m = markov_estimate(6, None).unwrap();
        assert!(m.xi2_t[0] >= m.xi_bar * m.xi_bar);
        let m0 = markov_estimate(6, Some(0)).unwrap();
        assert_eq!(m0.truncation, 0);
        assert_ne!(m0.sigma_star, m.sigma_star);
        assert!(markov_estimate(1, None).is_err());
        assert!(markov_estimate(10, None).is_err());
    }
}
