//! Stationary sine-Gordon system attached to decorated squares: the antikink
//! `φ(ū) = arctan e^{-2ū}`, the Hamiltonian `H = (p² - sin² 2φ)/2`, its phase
//! portrait and the action variable of closed orbits.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::special::complete_elliptic_ke;

/// Upper limit of the kink energy integral; the integrand decays like `e^{-4ū}`.
pub const KINK_CUTOFF: f64 = 20.0;

/// Area `π/4 - (1-h)/(1+h)` of one of the eight parts of the decorated square.
pub fn segment_area(h: f64) -> Result<f64> {
    if !(FRAC_1_SQRT_2..=1.0).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside [2^-1/2, 1]")));
    }
    Ok(FRAC_PI_4 - (1.0 - h) / (1.0 + h))
}

/// The antikink `arctan e^{-2ū}`.
pub fn phi_of_u(u_bar: f64) -> f64 {
    (-2.0 * u_bar).exp().atan()
}

/// Inverse of [`phi_of_u`] on `(0, π/2)`.
pub fn u_of_phi(phi: f64) -> f64 {
    -0.5 * phi.tan().ln()
}

/// `φ'' - sin 4φ` on the antikink with `φ'' = 2 sech(2ū) tanh(2ū)`.
pub fn eom_residual(u_bar: f64) -> f64 {
    let x = 2.0 * u_bar;
    let second = 2.0 * x.tanh() / x.cosh();
    second - (4.0 * phi_of_u(u_bar)).sin()
}

/// `dφ/dū = -sech(2ū)`.
pub fn kink_slope(u_bar: f64) -> f64 {
    -1.0 / (2.0 * u_bar).cosh()
}

/// Energy density `φ'² + (1 - cos 4φ)/2` of the antikink.
pub fn kink_energy_density(u_bar: f64) -> f64 {
    let s = kink_slope(u_bar);
    s * s + 0.5 * (1.0 - (4.0 * phi_of_u(u_bar)).cos())
}

/// `∫_0^∞ [φ'² + (1 - cos 4φ)/2] dū`, truncated at `cutoff`.
pub fn kink_energy_with_cutoff(cutoff: f64) -> Result<f64> {
    quadrature::adaptive_simpson(kink_energy_density, 0.0, cutoff, 1e-12)
}

pub fn kink_energy() -> Result<f64> {
    kink_energy_with_cutoff(KINK_CUTOFF)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub phi: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Scattering,
    Separatrix,
    Cyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    #[serde(rename = "H")]
    pub h: f64,
    pub regime: Regime,
}

impl EnergyLevel {
    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() || h < -0.5 {
            return Err(Error::Domain(format!("energy {h} below -1/2 has an empty level set")));
        }
        let regime = if h > 0.0 {
            Regime::Scattering
        } else if h == 0.0 {
            Regime::Separatrix
        } else {
            Regime::Cyclic
        };
        Ok(EnergyLevel { h, regime })
    }

    /// `ε = -2H`.
    pub fn epsilon(&self) -> f64 {
        -2.0 * self.h
    }
}

pub fn hamiltonian(s: PhasePoint) -> f64 {
    let w = (2.0 * s.phi).sin();
    0.5 * (s.p * s.p - w * w)
}

/// Left turning point `½ arcsin √ε` of the orbit at `ε = -2H`.
pub fn turning_point(epsilon: f64) -> f64 {
    0.5 * epsilon.sqrt().asin()
}

/// Sampled level set `H = const`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub level: EnergyLevel,
    /// Each branch is a polyline in the `(φ, p)` plane.
    pub branches: Vec<Vec<PhasePoint>>,
}

fn momentum(h: f64, phi: f64) -> f64 {
    let w = (2.0 * phi).sin();
    (2.0 * h + w * w).max(0.0).sqrt()
}

/// Level set through the well or window containing `phi0`.
///
/// Cyclic orbits are closed curves around `π/4 + nπ/2`; the other regimes are
/// sampled over one period `[φ_s, φ_s + π/2]` starting at the nearest
/// multiple of `π/2` below `phi0`, as an upper and a lower branch.
pub fn trajectory(h: f64, phi0: f64, n_samples: usize) -> Result<Trajectory> {
    let level = EnergyLevel::new(h)?;
    if n_samples < 2 {
        return Err(Error::OutOfRange {
            name: "n_samples",
            value: n_samples as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    let cell = (phi0 / FRAC_PI_2).floor() * FRAC_PI_2;
    let (lo, hi) = match level.regime {
        Regime::Cyclic => {
            let a = turning_point(level.epsilon().min(1.0));
            (cell + a, cell + FRAC_PI_2 - a)
        }
        _ => (cell, cell + FRAC_PI_2),
    };
    if level.regime == Regime::Cyclic && hi - lo <= 0.0 {
        return Ok(Trajectory {
            level,
            branches: vec![vec![PhasePoint {
                phi: cell + FRAC_PI_4,
                p: 0.0,
            }]],
        });
    }
    let upper: Vec<PhasePoint> = (0..n_samples)
        .map(|k| {
            let phi = lo + (hi - lo) * k as f64 / (n_samples - 1) as f64;
            PhasePoint { phi, p: momentum(h, phi) }
        })
        .collect();
    let lower: Vec<PhasePoint> = upper
        .iter()
        .rev()
        .map(|pt| PhasePoint { phi: pt.phi, p: -pt.p })
        .collect();
    let branches = if level.regime == Regime::Cyclic {
        let mut closed = upper;
        closed.extend(lower.into_iter().skip(1));
        vec![closed]
    } else {
        vec![upper, lower]
    };
    Ok(Trajectory { level, branches })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon {epsilon} outside [0, 1]")));
    }
    Ok(())
}

/// `J(ε) = 2E(k) - 2εK(k)` with `k = √(1-ε)`; `J(0) = 2` and `J(1) = 0`.
pub fn action_variable(epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    if epsilon == 0.0 {
        // E(1) = 1 and εK(k) -> 0
        return Ok(2.0);
    }
    let (k, e) = complete_elliptic_ke((1.0 - epsilon).sqrt())?;
    Ok(2.0 * e - 2.0 * epsilon * k)
}

/// Integrand `√(sin² 2φ - ε)` of the action; zero outside the well.
pub fn action_density(phi: f64, epsilon: f64) -> f64 {
    let w = (2.0 * phi).sin();
    (w * w - epsilon).max(0.0).sqrt()
}

/// `4 ∫_{φ0}^{π/4} √(sin² 2φ - ε) dφ` with `φ = φ0 + s²` to remove the
/// square-root behavior at the turning point.
pub fn action_variable_quadrature(epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let phi0 = turning_point(epsilon);
    let s_max = (FRAC_PI_4 - phi0).max(0.0).sqrt();
    if s_max == 0.0 {
        return Ok(0.0);
    }
    let integral = quadrature::adaptive_simpson(
        |s| 2.0 * s * action_density(phi0 + s * s, epsilon),
        0.0,
        s_max,
        1e-12,
    )?;
    Ok(4.0 * integral)
}

/// `|tan φ - √W / (1 + √(1-W))|` with `W = (1 - cos 4φ)/2`.
pub fn self_action_identity(phi: f64) -> f64 {
    let w = 0.5 * (1.0 - (4.0 * phi).cos());
    (phi.tan() - w.sqrt() / (1.0 + (1.0 - w).max(0.0).sqrt())).abs()
}

/// `ω = Σ dp_i ∧ dφ_i` on six uncoupled copies; tangents are laid out as
/// six `φ` components followed by six `p` components.
pub fn symplectic_form(d1: &[f64; 12], d2: &[f64; 12]) -> f64 {
    (0..6)
        .map(|i| d1[6 + i] * d2[i] - d2[6 + i] * d1[i])
        .sum()
}

/// Samples of the phase portrait at each energy, as `(φ, p, H)` rows.
pub fn phase_portrait(levels: &[f64], n_samples: usize) -> Result<Vec<(PhasePoint, f64)>> {
    let mut rows = Vec::new();
    for &h in levels {
        let t = trajectory(h, FRAC_PI_4, n_samples)?;
        for branch in t.branches {
            rows.extend(branch.into_iter().map(|pt| (pt, h)));
        }
    }
    Ok(rows)
}

/// Default energy levels of the phase portrait.
pub const DEFAULT_PORTRAIT_LEVELS: [f64; 7] = [-0.5, -0.375, -0.25, -0.125, 0.0, 0.125, 0.25];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_examples() {
        assert_eq!(segment_area(1.0).unwrap(), FRAC_PI_4);
        let h = FRAC_1_SQRT_2;
        assert!((segment_area(h).unwrap() - (FRAC_PI_4 - (1.0 - h) / (1.0 + h))).abs() < 1e-15);
        assert!(segment_area(0.5).is_err());
    }

    #[test]
    fn antikink_basics() {
        assert_eq!(phi_of_u(0.0), FRAC_PI_4);
        assert!(phi_of_u(40.0) < 1e-30);
        for u in [0.0, 0.3, 2.0, 7.5] {
            assert!((u_of_phi(phi_of_u(u)) - u).abs() < 1e-12);
        }
        assert!((kink_energy_density(0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn eom_holds() {
        for u in [0.1, 1.0, 5.0] {
            assert!(eom_residual(u).abs() < 1e-12);
        }
    }

    #[test]
    fn energy_levels() {
        assert_eq!(EnergyLevel::new(0.1).unwrap().regime, Regime::Scattering);
        assert_eq!(EnergyLevel::new(0.0).unwrap().regime, Regime::Separatrix);
        assert_eq!(EnergyLevel::new(-0.2).unwrap().regime, Regime::Cyclic);
        assert!(EnergyLevel::new(-0.6).is_err());
        let p = PhasePoint { phi: FRAC_PI_4, p: 1.0 };
        assert_eq!(hamiltonian(p), 0.0);
    }

    #[test]
    fn trajectories() {
        let fixed = trajectory(-0.5, 0.3, 10).unwrap();
        assert_eq!(fixed.branches, vec![vec![PhasePoint { phi: FRAC_PI_4, p: 0.0 }]]);
        let sep = trajectory(0.0, 0.1, 33).unwrap();
        for pt in &sep.branches[0] {
            assert!((pt.p - (2.0 * pt.phi).sin().abs()).abs() < 1e-12);
        }
        let cyc = trajectory(-0.2, 0.7, 41).unwrap();
        let c = &cyc.branches[0];
        assert!((c[0].phi - c[c.len() - 1].phi).abs() < 1e-15);
        for pt in c {
            assert!((hamiltonian(*pt) + 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn action_anchors() {
        assert_eq!(action_variable(0.0).unwrap(), 2.0);
        assert_eq!(action_variable(1.0).unwrap(), 0.0);
        assert!((action_variable_quadrature(0.0).unwrap() - 2.0).abs() < 1e-9);
        assert!(action_variable(1.5).is_err());
    }

    #[test]
    fn symplectic_examples() {
        let mut a = [0.0; 12];
        let mut b = [0.0; 12];
        a[0] = 1.0;
        b[6] = 1.0;
        assert_eq!(symplectic_form(&a, &b), -1.0);
        assert_eq!(symplectic_form(&b, &a), 1.0);
        assert_eq!(symplectic_form(&a, &a), 0.0);
    }
}
