//! Horosphere decorations of the ideal octahedron: λ-lengths, horocyclic arc
//! lengths, face hexagons, boosts and the conformal flow.
//!
//! A height `h ∈ [0, 1)` places the horosphere at vertex `e` so that `h e` is
//! its point nearest the origin. With `h = tanh(u/2)` the shifted coordinate
//! `ū = u - ln(2)/2` makes λ-lengths additive: `λ_ij = ū_i + ū_j`.

pub mod mcg;

use std::f64::consts::{LN_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{dist_ball, BallPoint};
use crate::octahedron::{edges, face_label, Edge, Face, Vertex};
use crate::quadrature;
use crate::vec3::Vec3;

pub use mcg::{
    mcg_apply, mcg_generators, mcg_orbit, mcg_structure_report, McgWord, PermutationRep,
};

/// Tolerance used by [`class_equivalent`].
pub const CLASS_TOL: f64 = 1e-9;

fn check_height(h: f64) -> Result<()> {
    if !(0.0..1.0).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside [0, 1)")));
    }
    Ok(())
}

/// `ū = 2 atanh(h) - ln(2)/2`.
pub fn u_bar(h: f64) -> Result<f64> {
    check_height(h)?;
    Ok(2.0 * h.atanh() - 0.5 * LN_2)
}

/// Inverse of [`u_bar`].
pub fn height_from_u_bar(u: f64) -> Result<f64> {
    let h = (0.5 * (u + 0.5 * LN_2)).tanh();
    check_height(h)?;
    Ok(h)
}

/// Six horosphere heights in vertex order `(+x, +y, +t, -x, -y, -t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDecoration", into = "RawDecoration")]
pub struct Decoration {
    heights: [f64; 6],
}

#[derive(Serialize, Deserialize)]
struct RawDecoration {
    heights: [f64; 6],
}

impl TryFrom<RawDecoration> for Decoration {
    type Error = Error;
    fn try_from(raw: RawDecoration) -> Result<Self> {
        Decoration::new(raw.heights)
    }
}

impl From<Decoration> for RawDecoration {
    fn from(d: Decoration) -> Self {
        RawDecoration { heights: d.heights }
    }
}

impl Decoration {
    pub fn new(heights: [f64; 6]) -> Result<Self> {
        for &h in &heights {
            check_height(h)?;
        }
        Ok(Decoration { heights })
    }

    pub fn uniform(h: f64) -> Result<Self> {
        Decoration::new([h; 6])
    }

    pub fn from_u_bar(u: [f64; 6]) -> Result<Self> {
        let mut heights = [0.0; 6];
        for (h, &ui) in heights.iter_mut().zip(&u) {
            *h = height_from_u_bar(ui)?;
        }
        Ok(Decoration { heights })
    }

    pub fn heights(&self) -> [f64; 6] {
        self.heights
    }

    pub fn height(&self, v: Vertex) -> f64 {
        self.heights[v.index()]
    }

    pub fn u_bar(&self) -> [f64; 6] {
        self.heights.map(|h| 2.0 * h.atanh() - 0.5 * LN_2)
    }

    pub fn lambda_lengths(&self) -> LambdaLengths {
        let es = edges();
        let lambda = es
            .iter()
            .map(|&(a, b)| rho(self.height(a), self.height(b)))
            .collect();
        LambdaLengths {
            edges: es,
            lambda,
            w: self.heights.map(horo_arc_closed_form),
        }
    }
}

/// λ-lengths on the twelve edges (ordered as [`edges`]) and the six
/// horocyclic lengths `w` (vertex order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaLengths {
    pub edges: Vec<Edge>,
    pub lambda: Vec<f64>,
    pub w: [f64; 6],
}

impl LambdaLengths {
    pub fn get(&self, a: Vertex, b: Vertex) -> Option<f64> {
        self.edges
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .map(|k| self.lambda[k])
    }

    /// `ū` recovered from the λ-lengths of a face through each vertex:
    /// `ū_i = (λ_ij + λ_ik - λ_jk)/2`.
    pub fn u_bar_from_lambda(&self) -> [f64; 6] {
        let mut u = [0.0; 6];
        for v in Vertex::ALL {
            let others: Vec<Vertex> = Vertex::ALL
                .iter()
                .copied()
                .filter(|&o| v.is_adjacent(o))
                .collect();
            let j = others[0];
            let k = others
                .iter()
                .copied()
                .find(|&o| o.is_adjacent(j))
                .expect("octahedron vertex links are 4-cycles");
            let l = |a, b| self.get(a, b).expect("adjacent");
            u[v.index()] = 0.5 * (l(v, j) + l(v, k) - l(j, k));
        }
        u
    }

    /// `ū_i = -ln w_i`.
    pub fn u_bar_from_w(&self) -> [f64; 6] {
        self.w.map(|w| -w.ln())
    }

    /// `λ_ij = -ln(w_i w_j)` on every edge.
    pub fn lambda_from_w(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|&(a, b)| -(self.w[a.index()] * self.w[b.index()]).ln())
            .collect()
    }
}

fn check_adjacent(i: Vertex, j: Vertex) -> Result<()> {
    if !i.is_adjacent(j) {
        return Err(Error::NotAdjacent(i.to_string(), j.to_string()));
    }
    Ok(())
}

/// End of the edge `e_j e_i` cut off by the horosphere at `e_i`:
/// `[2(1-h)² e_j + (1+h)² e_i] / [(1-h)² + 4]`.
pub fn edge_endpoint(h_i: f64, i: Vertex, j: Vertex) -> Result<BallPoint> {
    check_height(h_i)?;
    check_adjacent(i, j)?;
    BallPoint::from_vec(endpoint_vec(h_i, i, j))
}

fn endpoint_vec(h: f64, i: Vertex, j: Vertex) -> Vec3 {
    let a = (1.0 - h) * (1.0 - h);
    let k = a + 4.0;
    j.position().scale(2.0 * a / k) + i.position().scale((1.0 + h) * (1.0 + h) / k)
}

/// Tangent `(3-h)(1+h) e_i - 4(1-h) e_j` of the edge at [`edge_endpoint`].
pub fn edge_tangent(h_i: f64, i: Vertex, j: Vertex) -> Result<Vec3> {
    check_height(h_i)?;
    check_adjacent(i, j)?;
    Ok(i.position().scale((3.0 - h_i) * (1.0 + h_i)) - j.position().scale(4.0 * (1.0 - h_i)))
}

fn rho(hi: f64, hj: f64) -> f64 {
    let num = 3.0 * (hi + hj) - hi * hj - 1.0;
    let den = 2.0 * (2.0 * (1.0 - hi * hi) * (1.0 - hj * hj)).sqrt();
    2.0 * (num / den).asinh()
}

/// Signed length of an edge between two horospheres; negative when they overlap.
pub fn lambda_length(h_i: f64, h_j: f64) -> Result<f64> {
    check_height(h_i)?;
    check_height(h_j)?;
    Ok(rho(h_i, h_j))
}

fn horo_arc_closed_form(h: f64) -> f64 {
    SQRT_2 * (1.0 - h) / (1.0 + h)
}

/// Length `√2 (1-h)/(1+h)` of the horocyclic arc cut from a face.
pub fn horo_arc_length(h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside [0, 1]")));
    }
    Ok(horo_arc_closed_form(h))
}

/// The same length by integrating the ball metric along the intersection of
/// the face `(x-1)²+(y-1)²+(t-1)² = 2` with the horosphere at `(0,0,1)`.
pub fn horo_arc_quadrature(h: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::Domain(format!("height {h} outside [0, 1]")));
    }
    if h == 1.0 {
        return Ok(0.0);
    }
    let a = (1.0 - h) * (1.0 - h);
    let k = a + 4.0;
    let x_end = 2.0 * a / k;
    let integrand = |x: f64| {
        let q = (a * (1.0 + 2.0 * x - x * x) - 8.0 * x * x).max(0.0);
        let sq = q.sqrt();
        let dq = a * (2.0 - 2.0 * x) - 16.0 * x;
        let t = (3.0 - 2.0 * x * (1.0 - h) + h * h - 2.0 * sq) / k;
        let y = 0.5 * (1.0 - h) * (1.0 - t) - x;
        let dt = if sq > 0.0 {
            (-2.0 * (1.0 - h) - dq / sq) / k
        } else {
            -2.0 * (1.0 - h) / k
        };
        let dy = -0.5 * (1.0 - h) * dt - 1.0;
        2.0 * (1.0 + dy * dy + dt * dt).sqrt() / (1.0 - x * x - y * y - t * t)
    };
    quadrature::adaptive_simpson(integrand, 0.0, x_end, 1e-12)
}

/// Signed distances `(p_ji, p_ij)` from the Euclidean edge midpoint to the two
/// truncation points; a distance is negative when the truncation point lies
/// past the midpoint.
pub fn midpoint_p_lengths(h_i: f64, i: Vertex, h_j: f64, j: Vertex) -> Result<(f64, f64)> {
    check_height(h_i)?;
    check_height(h_j)?;
    check_adjacent(i, j)?;
    let m = crate::octahedron::edge_midpoint(i, j);
    let mp = BallPoint::from_vec(m)?;
    let signed = |h: f64, near: Vertex, far: Vertex| -> Result<f64> {
        let e = endpoint_vec(h, near, far);
        let d = dist_ball(mp, BallPoint::from_vec(e)?);
        Ok(if e.dot(near.position()) >= m.dot(near.position()) {
            d
        } else {
            -d
        })
    };
    Ok((signed(h_i, i, j)?, signed(h_j, j, i)?))
}

/// Right-angled hexagon cut from a face by the three horospheres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceHexagon {
    pub face: Face,
    pub label: String,
    /// `(λ_21, λ_31, λ_23)` for face vertices `(i1, i2, i3)`.
    pub lambda: [f64; 3],
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Horocyclic sides `(e^{-a}, e^{-b}, e^{-c})` at `i1, i2, i3`.
    pub w: [f64; 3],
}

impl FaceHexagon {
    /// Sides in boundary order: `λ_21, w_2, λ_23, w_3, λ_31, w_1`.
    pub fn sides(&self) -> [f64; 6] {
        [
            self.lambda[0],
            self.w[1],
            self.lambda[2],
            self.w[2],
            self.lambda[1],
            self.w[0],
        ]
    }
}

pub fn face_hexagon(face: Face, d: &Decoration) -> Result<FaceHexagon> {
    let [i1, i2, i3] = face;
    let l21 = rho(d.height(i2), d.height(i1));
    let l31 = rho(d.height(i3), d.height(i1));
    let l23 = rho(d.height(i2), d.height(i3));
    let label = face_label(&face);
    let checks = [
        (l21 + l31 > l23, "l21 + l31 > l23"),
        (l21 + l23 > l31, "l21 + l23 > l31"),
        (l31 + l23 > l21, "l31 + l23 > l21"),
    ];
    if let Some((_, which)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::TriangleInequality {
            face: label,
            inequality: (*which).to_string(),
        });
    }
    let a = 0.5 * (l21 + l31 - l23);
    let b = 0.5 * (l21 + l23 - l31);
    let c = 0.5 * (l31 + l23 - l21);
    Ok(FaceHexagon {
        face,
        label,
        lambda: [l21, l31, l23],
        a,
        b,
        c,
        w: [(-a).exp(), (-b).exp(), (-c).exp()],
    })
}

/// Hexagons of all eight faces.
pub fn face_hexagons(d: &Decoration) -> Result<Vec<FaceHexagon>> {
    crate::octahedron::faces()
        .into_iter()
        .map(|f| face_hexagon(f, d))
        .collect()
}

/// Möbius boost `h -> (h + tanh(τ/2)) / (1 + h tanh(τ/2))`, shifting `ū` by `τ`.
pub fn boost(h: f64, tau: f64) -> Result<f64> {
    check_height(h)?;
    let s = (0.5 * tau).tanh();
    let out = (h + s) / (1.0 + h * s);
    if !(0.0..1.0).contains(&out) {
        return Err(Error::Domain(format!(
            "boost by {tau} moves height {h} to {out}, outside [0, 1)"
        )));
    }
    Ok(out)
}

/// `|w(h) - w(h̃) e^{ε τ_e}|` with `τ_e` the ball distance from `h e` to `h̃ e`
/// along the axis through `e` and `ε = sign(h̃ - h)`.
pub fn boost_identity_residual(h: f64, h_tilde: f64, e: Vertex) -> Result<f64> {
    check_height(h)?;
    check_height(h_tilde)?;
    let p = BallPoint::from_vec(e.position().scale(h))?;
    let q = BallPoint::from_vec(e.position().scale(h_tilde))?;
    let tau_e = dist_ball(p, q);
    let eps = if h_tilde > h {
        1.0
    } else if h_tilde < h {
        -1.0
    } else {
        0.0
    };
    Ok((horo_arc_closed_form(h) - horo_arc_closed_form(h_tilde) * (eps * tau_e).exp()).abs())
}

/// Boosts every height by `τ`.
pub fn boost_decoration(d: &Decoration, tau: f64) -> Result<Decoration> {
    let mut heights = [0.0; 6];
    for (out, &h) in heights.iter_mut().zip(&d.heights) {
        *out = boost(h, tau)?;
    }
    Decoration::new(heights)
}

/// The common shift `τ` with `ū(d2) = ū(d1) + τ`, if one exists.
pub fn class_equivalent(d1: &Decoration, d2: &Decoration) -> Option<f64> {
    let (u1, u2) = (d1.u_bar(), d2.u_bar());
    let diffs: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| b - a).collect();
    let tau = diffs.iter().sum::<f64>() / 6.0;
    diffs
        .iter()
        .all(|dv| (dv - tau).abs() <= CLASS_TOL)
        .then_some(tau)
}

/// One explicit Euler step of `dū/dτ = -∂E/∂ū`.
pub fn conformal_flow_step<G>(d: &Decoration, grad_energy: G, dtau: f64) -> Result<Decoration>
where
    G: Fn(&[f64; 6]) -> [f64; 6],
{
    if !(dtau > 0.0) {
        return Err(Error::Domain(format!("flow step must be positive, got {dtau}")));
    }
    let u = d.u_bar();
    let g = grad_energy(&u);
    let mut next = [0.0; 6];
    for k in 0..6 {
        next[k] = u[k] - dtau * g[k];
    }
    Decoration::from_u_bar(next)
}
