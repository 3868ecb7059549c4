//! Parabolic generator catalog, words, and composed ball isometries.
//!
//! Composition follows `h_i h_j [r] = h_i[h_j[r]]`: the letters of a word are
//! applied right to left.

pub mod catalog;
pub mod orbit;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{BallPoint, Rotation};
use crate::vec3::Vec3;

pub use orbit::{
    daughter_shared_edges, dodecahedron_finite_vertices, octahedron_orbit, PolylineMesh,
};
pub use verify::{
    verify_parent_relations, verify_wirtinger, verify_wirtinger_triple, RelationCheck,
    VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorName {
    H1,
    H2,
    H3,
    H4,
    HPlus,
    HTildePlus,
    HMinus,
    HTildeMinus,
    HTilde1,
    HTilde2,
    HTilde3,
    HTilde4,
    G1,
    G2,
    G3,
    G1Inv,
    G2Inv,
    G3Inv,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 18] = [
        GeneratorName::H1,
        GeneratorName::H2,
        GeneratorName::H3,
        GeneratorName::H4,
        GeneratorName::HPlus,
        GeneratorName::HTildePlus,
        GeneratorName::HMinus,
        GeneratorName::HTildeMinus,
        GeneratorName::HTilde1,
        GeneratorName::HTilde2,
        GeneratorName::HTilde3,
        GeneratorName::HTilde4,
        GeneratorName::G1,
        GeneratorName::G2,
        GeneratorName::G3,
        GeneratorName::G1Inv,
        GeneratorName::G2Inv,
        GeneratorName::G3Inv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorName::H1 => "h1",
            GeneratorName::H2 => "h2",
            GeneratorName::H3 => "h3",
            GeneratorName::H4 => "h4",
            GeneratorName::HPlus => "h_plus",
            GeneratorName::HTildePlus => "h_tilde_plus",
            GeneratorName::HMinus => "h_minus",
            GeneratorName::HTildeMinus => "h_tilde_minus",
            GeneratorName::HTilde1 => "h_tilde_1",
            GeneratorName::HTilde2 => "h_tilde_2",
            GeneratorName::HTilde3 => "h_tilde_3",
            GeneratorName::HTilde4 => "h_tilde_4",
            GeneratorName::G1 => "g1",
            GeneratorName::G2 => "g2",
            GeneratorName::G3 => "g3",
            GeneratorName::G1Inv => "g1_inv",
            GeneratorName::G2Inv => "g2_inv",
            GeneratorName::G3Inv => "g3_inv",
        }
    }

    /// Boundary point fixed by the generator.
    pub fn fixed_point(self) -> Vec3 {
        use GeneratorName::*;
        match self {
            H1 | HTilde1 | G1 | G1Inv => Vec3::J,
            H2 | HTilde2 | G2 | G2Inv => -Vec3::I,
            H3 | HTilde3 => -Vec3::J,
            H4 | HTilde4 => Vec3::I,
            HPlus | HTildePlus | G3 | G3Inv => Vec3::K,
            HMinus | HTildeMinus => -Vec3::K,
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GeneratorName::ALL
            .iter()
            .copied()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// A catalog generator raised to an integer power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorId {
    pub name: GeneratorName,
    pub power: i32,
}

impl GeneratorId {
    pub const fn new(name: GeneratorName, power: i32) -> Self {
        GeneratorId { name, power }
    }

    pub const fn once(name: GeneratorName) -> Self {
        GeneratorId { name, power: 1 }
    }

    pub fn inverse(self) -> Self {
        GeneratorId {
            name: self.name,
            power: -self.power,
        }
    }

    /// Closed-form action on raw coordinates. Valid on the boundary sphere too,
    /// which the mesh code uses for ideal vertices.
    pub fn apply_vec(self, r: Vec3) -> Vec3 {
        use GeneratorName::*;
        if self.power == 0 {
            return r;
        }
        let n = self.power as f64;
        match self.name {
            H1 => catalog::h1(n, r),
            H2 => catalog::h2(n, r),
            H3 => catalog::h3(n, r),
            H4 => catalog::h4(n, r),
            HPlus => catalog::h_plus(n, r),
            HTildePlus => catalog::h_tilde_plus(n, r),
            HMinus => catalog::h_minus(n, r),
            HTildeMinus => catalog::h_tilde_minus(n, r),
            HTilde1 => tilde(1, catalog::h1, n, r),
            HTilde2 => tilde(2, catalog::h2, n, r),
            HTilde3 => tilde(3, catalog::h3, n, r),
            HTilde4 => tilde(4, catalog::h4, n, r),
            G1 => catalog::g1(n, r),
            G2 => catalog::g2(n, r),
            G3 => catalog::g3(n, r),
            G1Inv => catalog::g1(-n, r),
            G2Inv => catalog::g2(-n, r),
            G3Inv => catalog::g3(-n, r),
        }
    }

    pub fn apply(self, r: BallPoint) -> Result<BallPoint> {
        BallPoint::from_image(self.apply_vec(r.vec()))
    }
}

fn tilde(k: u8, base: fn(f64, Vec3) -> Vec3, n: f64, r: Vec3) -> Vec3 {
    let rot = Rotation::new(catalog::tilde_axis(k), catalog::TILDE_ANGLE)
        .expect("basis vectors are unit");
    rot.apply_vec(base(n, rot.inverse().apply_vec(r)))
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}^{}", self.name, self.power)
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;
    /// Accepts `g1`, `g1^-1`, `h_tilde_plus^3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, power) = match s.split_once('^') {
            Some((name, p)) => {
                let power = p
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad power in {s:?}")))?;
                (name, power)
            }
            None => (s, 1),
        };
        Ok(GeneratorId::new(name.parse()?, power))
    }
}

/// `apply_generator(id, r)`.
pub fn apply_generator(id: GeneratorId, r: BallPoint) -> Result<BallPoint> {
    id.apply(r)
}

/// Ordered product of generators; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupWord {
    pub letters: Vec<GeneratorId>,
}

impl GroupWord {
    pub fn new(letters: Vec<GeneratorId>) -> Self {
        GroupWord { letters }
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    /// `self ++ other`, acting as `self[other[r]]`.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    pub fn apply_vec(&self, r: Vec3) -> Vec3 {
        self.letters.iter().rev().fold(r, |acc, g| g.apply_vec(acc))
    }

    pub fn apply(&self, r: BallPoint) -> Result<BallPoint> {
        self.letters.iter().rev().try_fold(r, |acc, g| g.apply(acc))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord { letters })
    }
}

/// `apply_word(w, r)`.
pub fn apply_word(w: &GroupWord, r: BallPoint) -> Result<BallPoint> {
    w.apply(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IsoStep {
    Gen(GeneratorId),
    Rot(Rotation),
}

impl IsoStep {
    fn apply_vec(&self, r: Vec3) -> Vec3 {
        match self {
            IsoStep::Gen(g) => g.apply_vec(r),
            IsoStep::Rot(rot) => rot.apply_vec(r),
        }
    }

    fn inverse(&self) -> IsoStep {
        match self {
            IsoStep::Gen(g) => IsoStep::Gen(g.inverse()),
            IsoStep::Rot(rot) => IsoStep::Rot(rot.inverse()),
        }
    }
}

/// Composable, invertible self-map of the ball built from catalog generators
/// and rotations. Steps are stored left to right and applied right to left.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IsometryMap {
    steps: Vec<IsoStep>,
}

impl IsometryMap {
    pub fn identity() -> Self {
        IsometryMap::default()
    }

    pub fn generator(id: GeneratorId) -> Self {
        IsometryMap {
            steps: vec![IsoStep::Gen(id)],
        }
    }

    pub fn rotation(rot: Rotation) -> Self {
        IsometryMap {
            steps: vec![IsoStep::Rot(rot)],
        }
    }

    pub fn from_word(w: &GroupWord) -> Self {
        IsometryMap {
            steps: w.letters.iter().map(|&g| IsoStep::Gen(g)).collect(),
        }
    }

    pub fn steps(&self) -> &[IsoStep] {
        &self.steps
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IsometryMap) -> IsometryMap {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        IsometryMap { steps }
    }

    pub fn inverse(&self) -> IsometryMap {
        IsometryMap {
            steps: self.steps.iter().rev().map(IsoStep::inverse).collect(),
        }
    }

    /// `R ∘ self ∘ R^{-1}`.
    pub fn conjugated_by(&self, rot: Rotation) -> IsometryMap {
        IsometryMap::rotation(rot)
            .compose(self)
            .compose(&IsometryMap::rotation(rot.inverse()))
    }

    pub fn pow(&self, n: i32) -> IsometryMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(IsometryMap::identity(), |acc, _| acc.compose(&base))
    }

    pub fn apply_vec(&self, r: Vec3) -> Vec3 {
        self.steps.iter().rev().fold(r, |acc, s| s.apply_vec(acc))
    }

    /// Applies each step with a drift check on the intermediate image.
    pub fn apply(&self, r: BallPoint) -> Result<BallPoint> {
        self.steps
            .iter()
            .rev()
            .try_fold(r, |acc, s| BallPoint::from_image(s.apply_vec(acc.vec())))
    }
}

/// Product of catalog letters given as `(name, power)` pairs.
pub fn word(letters: &[(GeneratorName, i32)]) -> IsometryMap {
    IsometryMap::from_word(&GroupWord::new(
        letters
            .iter()
            .map(|&(n, p)| GeneratorId::new(n, p))
            .collect(),
    ))
}

/// Coordinate axis of the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub fn unit(self) -> Vec3 {
        match self {
            Axis::I => Vec3::I,
            Axis::J => Vec3::J,
            Axis::K => Vec3::K,
        }
    }

    pub fn quarter_turn(self, sign: f64) -> Rotation {
        Rotation::new(self.unit(), sign * std::f64::consts::FRAC_PI_2).expect("unit axis")
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "x" => Ok(Axis::I),
            "j" | "y" => Ok(Axis::J),
            "k" | "t" => Ok(Axis::K),
            _ => Err(Error::Parse(format!("unknown axis {s:?}"))),
        }
    }
}

/// The Wirtinger generators `(g1, g2, g3)`.
pub fn brc_triple() -> [IsometryMap; 3] {
    [
        IsometryMap::generator(GeneratorId::once(GeneratorName::G1)),
        IsometryMap::generator(GeneratorId::once(GeneratorName::G2)),
        IsometryMap::generator(GeneratorId::once(GeneratorName::G3)),
    ]
}

/// `g̃_k = R_{n,π/2} g_k R_{n,-π/2}` for `n` one of the coordinate axes.
pub fn rotated_realization(axis: Axis) -> [IsometryMap; 3] {
    let rot = axis.quarter_turn(1.0);
    brc_triple().map(|g| g.conjugated_by(rot))
}

/// Generating set `γ_1..γ_6 = g1, g2, g3, g1^-1, g2^-1, g3^-1` (index 0..5).
pub const GAMMA: [GeneratorId; 6] = [
    GeneratorId::once(GeneratorName::G1),
    GeneratorId::once(GeneratorName::G2),
    GeneratorId::once(GeneratorName::G3),
    GeneratorId::once(GeneratorName::G1Inv),
    GeneratorId::once(GeneratorName::G2Inv),
    GeneratorId::once(GeneratorName::G3Inv),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{dist_ball, ParabolicDiskParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn points(seed: u64, n: usize) -> Vec<BallPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v = Vec3::new(
                rng.gen_range(-0.9..0.9),
                rng.gen_range(-0.9..0.9),
                rng.gen_range(-0.9..0.9),
            );
            if v.norm_sq() < 0.81 {
                out.push(BallPoint::from_vec(v).unwrap());
            }
        }
        out
    }

    #[test]
    fn g1_on_origin() {
        let p = apply_generator(GeneratorId::once(GeneratorName::G1), BallPoint::ORIGIN).unwrap();
        assert!(p.vec().max_abs_diff(Vec3::new(0.0, 0.5, -0.5)) < 1e-15);
    }

    #[test]
    fn zero_power_is_identity() {
        for p in points(1, 20) {
            let q = apply_generator(GeneratorId::new(GeneratorName::H1, 0), p).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn fixed_points_of_catalog() {
        for name in GeneratorName::ALL {
            let fp = name.fixed_point();
            for n in [1, -2, 3] {
                let img = GeneratorId::new(name, n).apply_vec(fp);
                assert!(img.max_abs_diff(fp) < 1e-14, "{name}^{n}");
            }
        }
    }

    #[test]
    fn g1_attracts_toward_fixed_point() {
        let g = GeneratorId::once(GeneratorName::G1);
        for eps in [1e-2, 1e-4, 1e-6] {
            let p = BallPoint::new(0.0, 1.0 - eps, 0.0).unwrap();
            let img = g.apply(p).unwrap();
            assert!((img.vec() - Vec3::J).norm() < 10.0 * eps);
        }
    }

    #[test]
    fn every_generator_is_an_isometry() {
        let pts = points(2, 60);
        for name in GeneratorName::ALL {
            let g = GeneratorId::once(name);
            for pair in pts.windows(2) {
                let d0 = dist_ball(pair[0], pair[1]);
                let d1 = dist_ball(g.apply(pair[0]).unwrap(), g.apply(pair[1]).unwrap());
                assert!((d0 - d1).abs() < 1e-10, "{name}: {d0} vs {d1}");
            }
        }
    }

    #[test]
    fn closed_form_power_equals_iteration() {
        let pts = points(3, 30);
        for name in GeneratorName::ALL {
            let g = GeneratorId::once(name);
            for n in 2..=4 {
                let gn = GeneratorId::new(name, n);
                for &p in &pts {
                    let iter = (0..n).try_fold(p, |acc, _| g.apply(acc)).unwrap();
                    let direct = gn.apply(p).unwrap();
                    assert!(iter.vec().max_abs_diff(direct.vec()) < 1e-9, "{name}^{n}");
                }
            }
        }
    }

    #[test]
    fn disk_slices_are_linear_fractional() {
        // h1: a = -1, φ = π/2;  h2: a = -1, φ = π;  h3: a = -1, φ = 3π/2;  h4: a = -1, φ = 0
        use std::f64::consts::PI;
        let cases = [
            (GeneratorName::H1, PI / 2.0),
            (GeneratorName::H2, PI),
            (GeneratorName::H3, 1.5 * PI),
            (GeneratorName::H4, 0.0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (name, phi) in cases {
            let params = ParabolicDiskParams::new(-1.0, phi);
            for _ in 0..50 {
                let r: f64 = rng.gen_range(0.0..0.95);
                let th: f64 = rng.gen_range(0.0..2.0 * PI);
                let z = crate::hyperbolic::DiskPoint::new(r * th.cos(), r * th.sin()).unwrap();
                for n in [1, 2, -1] {
                    let w = params.apply_disk(n, z).unwrap();
                    let img = GeneratorId::new(name, n).apply(z.to_ball()).unwrap();
                    assert!((img.x() - w.re()).abs() < 1e-12, "{name}^{n}");
                    assert!((img.y() - w.im()).abs() < 1e-12);
                    assert_eq!(img.t(), 0.0);
                }
            }
        }
    }

    #[test]
    fn word_composition() {
        let pts = points(5, 20);
        let w1: GroupWord = "g1 h2^-1".parse().unwrap();
        let w2: GroupWord = "h_tilde_plus^2 g3_inv".parse().unwrap();
        for &p in &pts {
            let lhs = w1.concat(&w2).apply(p).unwrap();
            let rhs = w1.apply(w2.apply(p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(GroupWord::identity().apply(p).unwrap(), p);
            let back = w1.inverse().apply(w1.apply(p).unwrap()).unwrap();
            assert!(back.vec().max_abs_diff(p.vec()) < 1e-10);
            let ginv: GroupWord = "g1 g1_inv".parse().unwrap();
            assert!(ginv.apply(p).unwrap().vec().max_abs_diff(p.vec()) < 1e-10);
        }
    }

    #[test]
    fn word_parsing() {
        let w: GroupWord = "g1 g2^-1 h_tilde_3^2".parse().unwrap();
        assert_eq!(w.letters.len(), 3);
        assert_eq!(w.letters[1], GeneratorId::new(GeneratorName::G2, -1));
        assert_eq!(w.to_string(), "g1 g2^-1 h_tilde_3^2");
        assert!("g4".parse::<GroupWord>().is_err());
        assert!("g1^x".parse::<GroupWord>().is_err());
    }

    #[test]
    fn isometry_map_inverse_and_pow() {
        let m = word(&[(GeneratorName::G1, 1), (GeneratorName::H2, -2)])
            .conjugated_by(Axis::K.quarter_turn(1.0));
        for p in points(6, 20) {
            let q = m.inverse().apply(m.apply(p).unwrap()).unwrap();
            assert!(q.vec().max_abs_diff(p.vec()) < 1e-10);
            let a = m.pow(3).apply(p).unwrap();
            let b = m.apply(m.apply(m.apply(p).unwrap()).unwrap()).unwrap();
            assert!(a.vec().max_abs_diff(b.vec()) < 1e-12);
            let c = m.pow(-2).apply(m.pow(2).apply(p).unwrap()).unwrap();
            assert!(c.vec().max_abs_diff(p.vec()) < 1e-9);
        }
    }

    #[test]
    fn rotated_realization_fixed_points() {
        // rotating about i sends the fixed point j of g1 to k
        let [g1, g2, _] = rotated_realization(Axis::I);
        assert!(g1.apply_vec(Vec3::K).max_abs_diff(Vec3::K) < 1e-14);
        // g2 fixes -i, which lies on the rotation axis
        assert!(g2.apply_vec(-Vec3::I).max_abs_diff(-Vec3::I) < 1e-14);
        // points on the i axis near the fixed point stay near it
        let p = BallPoint::new(-0.999, 0.0, 0.0).unwrap();
        assert!((g2.apply(p).unwrap().vec() + Vec3::I).norm() < 1e-2);
    }

    #[test]
    fn identity_rotation_gives_original_triple() {
        let id = Rotation::new(Vec3::K, 0.0).unwrap();
        let orig = brc_triple();
        for p in points(8, 10) {
            for g in &orig {
                let rotated = g.conjugated_by(id);
                assert_eq!(rotated.apply(p).unwrap(), g.apply(p).unwrap());
            }
        }
    }

    #[test]
    fn step_length_of_all_gammas() {
        for g in GAMMA {
            let d = crate::hyperbolic::dist_from_origin(g.apply(BallPoint::ORIGIN).unwrap());
            assert!((d - 1.762747).abs() < 1e-6);
        }
    }
}
