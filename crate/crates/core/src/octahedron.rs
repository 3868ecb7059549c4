//! Combinatorics of the ideal regular octahedron with vertices `±i, ±j, ±k`.
//!
//! Vertex order follows the Kronecker split used for moduli vectors:
//! `(+x, +y, +t, -x, -y, -t)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    #[serde(rename = "+x")]
    PlusX,
    #[serde(rename = "+y")]
    PlusY,
    #[serde(rename = "+t")]
    PlusT,
    #[serde(rename = "-x")]
    MinusX,
    #[serde(rename = "-y")]
    MinusY,
    #[serde(rename = "-t")]
    MinusT,
}

impl Vertex {
    pub const ALL: [Vertex; 6] = [
        Vertex::PlusX,
        Vertex::PlusY,
        Vertex::PlusT,
        Vertex::MinusX,
        Vertex::MinusY,
        Vertex::MinusT,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Vertex> {
        Vertex::ALL.get(i).copied()
    }

    pub fn position(self) -> Vec3 {
        match self {
            Vertex::PlusX => Vec3::I,
            Vertex::PlusY => Vec3::J,
            Vertex::PlusT => Vec3::K,
            Vertex::MinusX => -Vec3::I,
            Vertex::MinusY => -Vec3::J,
            Vertex::MinusT => -Vec3::K,
        }
    }

    pub fn antipode(self) -> Vertex {
        Vertex::ALL[(self.index() + 3) % 6]
    }

    pub fn is_adjacent(self, other: Vertex) -> bool {
        self != other && self.antipode() != other
    }

    pub fn label(self) -> &'static str {
        match self {
            Vertex::PlusX => "+x",
            Vertex::PlusY => "+y",
            Vertex::PlusT => "+t",
            Vertex::MinusX => "-x",
            Vertex::MinusY => "-y",
            Vertex::MinusT => "-t",
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Vertex::ALL
            .iter()
            .copied()
            .find(|v| v.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown vertex label {s:?}")))
    }
}

/// Edge as an ordered pair of adjacent vertices with `a < b`.
pub type Edge = (Vertex, Vertex);

/// A face `[v1, v2, v3]`, one vertex from each axis.
pub type Face = [Vertex; 3];

/// The twelve edges, ordered lexicographically by vertex index.
pub fn edges() -> Vec<Edge> {
    let mut out = Vec::with_capacity(12);
    for (i, &a) in Vertex::ALL.iter().enumerate() {
        for &b in &Vertex::ALL[i + 1..] {
            if a.is_adjacent(b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The eight faces, one per octant, as `[x-vertex, y-vertex, t-vertex]`.
pub fn faces() -> Vec<Face> {
    let mut out = Vec::with_capacity(8);
    for &xv in &[Vertex::PlusX, Vertex::MinusX] {
        for &yv in &[Vertex::PlusY, Vertex::MinusY] {
            for &tv in &[Vertex::PlusT, Vertex::MinusT] {
                out.push([xv, yv, tv]);
            }
        }
    }
    out
}

pub fn face_label(face: &Face) -> String {
    format!("({},{},{})", face[0], face[1], face[2])
}

/// Point of the ideal edge `e_a e_b` at parameter `θ ∈ [0, π/2]`.
///
/// The edge is the arc of the unit circle centered at `e_a + e_b` in the
/// plane spanned by the two vertices; `θ = 0` gives `e_a`, `θ = π/2` gives `e_b`.
pub fn ideal_edge_point(a: Vertex, b: Vertex, theta: f64) -> Vec3 {
    let (ea, eb) = (a.position(), b.position());
    ea + eb - eb.scale(theta.cos()) - ea.scale(theta.sin())
}

/// Euclidean midpoint of the ideal edge, `(1 - 2^{-1/2}) (e_a + e_b)`.
pub fn edge_midpoint(a: Vertex, b: Vertex) -> Vec3 {
    (a.position() + b.position()).scale(1.0 - std::f64::consts::FRAC_1_SQRT_2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OctahedronModel {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

impl OctahedronModel {
    pub fn new() -> Self {
        OctahedronModel {
            vertices: Vertex::ALL.to_vec(),
            edges: edges(),
            faces: faces(),
        }
    }
}

impl Default for OctahedronModel {
    fn default() -> Self {
        Self::new()
    }
}
