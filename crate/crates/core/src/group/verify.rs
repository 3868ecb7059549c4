//! Pointwise verification of group identities on seeded sample points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{brc_triple, word, Axis, GeneratorName, IsometryMap};
use crate::error::{Error, Result};
use crate::hyperbolic::BallPoint;
use crate::vec3::Vec3;

/// Radius of the ball from which random probes are drawn.
const SAMPLE_RADIUS: f64 = 0.9;
/// Probes placed just inside the fixed points of the generators.
const NEAR_FIXED_SCALE: f64 = 0.99;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<RelationCheck>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(tol: f64, samples: usize, seed: u64, checks: Vec<RelationCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            tol,
            samples,
            seed,
            checks,
            passed,
        }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checks.extend(other.checks);
        self.passed = self.checks.iter().all(|c| c.passed);
        self
    }
}

/// Origin, near-fixed-point probes, and `samples` seeded uniform points.
pub fn sample_points(samples: usize, seed: u64) -> Vec<BallPoint> {
    let mut out = vec![BallPoint::ORIGIN];
    for fp in [Vec3::J, -Vec3::I, Vec3::K, -Vec3::J, Vec3::I, -Vec3::K] {
        out.push(BallPoint::from_vec(fp.scale(NEAR_FIXED_SCALE)).expect("inside"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < samples {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm_sq() < 1.0 {
            out.push(BallPoint::from_vec(v.scale(SAMPLE_RADIUS)).expect("inside"));
            drawn += 1;
        }
    }
    out
}

/// Largest coordinate deviation between two maps over the sample points.
/// A drift error on either side counts as an infinite deviation.
pub fn max_deviation(lhs: &IsometryMap, rhs: &IsometryMap, pts: &[BallPoint]) -> f64 {
    pts.iter()
        .map(|&p| match (lhs.apply(p), rhs.apply(p)) {
            (Ok(a), Ok(b)) => a.vec().max_abs_diff(b.vec()),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

fn check(name: &str, lhs: &IsometryMap, rhs: &IsometryMap, pts: &[BallPoint], tol: f64) -> RelationCheck {
    let dev = max_deviation(lhs, rhs, pts);
    RelationCheck {
        name: name.to_string(),
        max_deviation: dev,
        passed: dev < tol,
    }
}

fn require_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    Ok(())
}

/// Wirtinger relations `R1..R3` for an arbitrary generator triple.
pub fn verify_wirtinger_triple(
    triple: &[IsometryMap; 3],
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    require_samples(samples)?;
    let pts = sample_points(samples, seed);
    let mut checks = Vec::with_capacity(3);
    for (idx, (a, b, c)) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)].into_iter().enumerate() {
        // R: (g_b^-1 g_c g_b g_c^-1) g_a = g_a (g_b^-1 g_c g_b g_c^-1)
        let comm = triple[b]
            .inverse()
            .compose(&triple[c])
            .compose(&triple[b])
            .compose(&triple[c].inverse());
        let lhs = comm.compose(&triple[a]);
        let rhs = triple[a].compose(&comm);
        checks.push(check(&format!("R{}", idx + 1), &lhs, &rhs, &pts, tol));
    }
    Ok(VerificationReport::new(tol, samples, seed, checks))
}

/// Wirtinger relations for `(g1, g2, g3)`.
pub fn verify_wirtinger(samples: usize, tol: f64, seed: u64) -> Result<VerificationReport> {
    verify_wirtinger_triple(&brc_triple(), samples, tol, seed)
}

/// Relations of the disk group, its conjugates, the Abelian cusp pairs, and
/// the expressions of `g1, g2, g3` and their commutators through `h1, h2`.
/// `-I` acts as the identity on the ball.
pub fn verify_parent_relations(samples: usize, tol: f64, seed: u64) -> Result<VerificationReport> {
    use GeneratorName::*;
    require_samples(samples)?;
    let pts = sample_points(samples, seed);
    let id = IsometryMap::identity();
    let g = |name, p| word(&[(name, p)]);
    let ri = Axis::I.quarter_turn(1.0);
    let rj = Axis::J.quarter_turn(1.0);

    let mut checks = vec![
        check("(h1 h2)^2 = -I", &word(&[(H1, 1), (H2, 1), (H1, 1), (H2, 1)]), &id, &pts, tol),
        check("(h2 h3)^2 = -I", &word(&[(H2, 1), (H3, 1), (H2, 1), (H3, 1)]), &id, &pts, tol),
        check("(h3 h4)^2 = -I", &word(&[(H3, 1), (H4, 1), (H3, 1), (H4, 1)]), &id, &pts, tol),
        check("(h1 h4)^2 = -I", &word(&[(H1, 1), (H4, 1), (H1, 1), (H4, 1)]), &id, &pts, tol),
        check("h4 h3 h2 h1 = -I", &word(&[(H4, 1), (H3, 1), (H2, 1), (H1, 1)]), &id, &pts, tol),
        check("h3 = h2 h1 h2^-1", &g(H3, 1), &word(&[(H2, 1), (H1, 1), (H2, -1)]), &pts, tol),
        check("h4 = h1^-1 h2 h1", &g(H4, 1), &word(&[(H1, -1), (H2, 1), (H1, 1)]), &pts, tol),
    ];

    let pairs = [
        ("h_tilde_1", HTilde1, H1),
        ("h_tilde_2", HTilde2, H2),
        ("h_tilde_3", HTilde3, H3),
        ("h_tilde_4", HTilde4, H4),
        ("h_tilde_plus", HTildePlus, HPlus),
        ("h_tilde_minus", HTildeMinus, HMinus),
    ];
    for (label, tilde, base) in pairs {
        let (m, n) = (2, 3);
        checks.push(check(
            &format!("{label}^{m} {base}^{n} = {base}^{n} {label}^{m}", base = base.as_str()),
            &word(&[(tilde, m), (base, n)]),
            &word(&[(base, n), (tilde, m)]),
            &pts,
            tol,
        ));
    }

    checks.push(check("g1 = R_j h1^-1 R_j^-1", &g(G1, 1), &g(H1, -1).conjugated_by(rj), &pts, tol));
    checks.push(check("g2 = h2", &g(G2, 1), &g(H2, 1), &pts, tol));
    checks.push(check("g3 = R_i h1^-1 R_i^-1", &g(G3, 1), &g(H1, -1).conjugated_by(ri), &pts, tol));
    checks.push(check(
        "g2^-1 g3 g2 g3^-1 = h1^2",
        &word(&[(G2, -1), (G3, 1), (G2, 1), (G3, -1)]),
        &g(H1, 2),
        &pts,
        tol,
    ));
    checks.push(check(
        "g3^-1 g1 g3 g1^-1 = R_i h2^-2 R_i^-1",
        &word(&[(G3, -1), (G1, 1), (G3, 1), (G1, -1)]),
        &g(H2, -2).conjugated_by(ri),
        &pts,
        tol,
    ));
    checks.push(check(
        "g1^-1 g2 g1 g2^-1 = R_j h2^-2 R_j^-1",
        &word(&[(G1, -1), (G2, 1), (G1, 1), (G2, -1)]),
        &g(H2, -2).conjugated_by(rj),
        &pts,
        tol,
    ));
    checks.push(check(
        "g1_inv = g1^-1",
        &g(G1Inv, 1),
        &g(G1, -1),
        &pts,
        tol,
    ));

    Ok(VerificationReport::new(tol, samples, seed, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wirtinger_passes_default() {
        let r = verify_wirtinger(100, 1e-9, 42).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 3);
    }

    #[test]
    fn parent_relations_pass_default() {
        let r = verify_parent_relations(100, 1e-9, 42).unwrap();
        assert!(r.passed, "{:?}", r.failures());
    }

    #[test]
    fn impossible_tolerance_fails() {
        let r = verify_parent_relations(100, 1e-30, 42).unwrap();
        assert!(!r.passed);
        assert!(!r.failures().is_empty());
    }

    #[test]
    fn zero_samples_is_an_error() {
        assert!(verify_wirtinger(0, 1e-9, 1).is_err());
        assert!(verify_parent_relations(0, 1e-9, 1).is_err());
    }

    #[test]
    fn sample_points_are_seeded() {
        assert_eq!(sample_points(10, 3), sample_points(10, 3));
        assert_ne!(sample_points(10, 3), sample_points(10, 4));
        assert_eq!(sample_points(10, 3)[0], BallPoint::ORIGIN);
    }

    #[test]
    fn rotated_triples_satisfy_wirtinger() {
        for axis in [Axis::I, Axis::J, Axis::K] {
            let triple = super::super::rotated_realization(axis);
            let r = verify_wirtinger_triple(&triple, 100, 1e-9, 7).unwrap();
            assert!(r.passed, "{axis:?}: {r:?}");
        }
    }
}
