//! Images of the ideal octahedron under group words, as polyline meshes.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use serde::Serialize;

use super::{GeneratorId, GeneratorName, GroupWord};
use crate::error::{Error, Result};
use crate::octahedron::{edge_midpoint, edges, faces, face_label, ideal_edge_point, Edge, Vertex};
use crate::vec3::Vec3;

/// Matching tolerance for boundary points of different tiles.
const MATCH_TOL: f64 = 1e-9;

/// A list of polylines in the ball. Text form: one `x y t` line per point,
/// polylines separated by a blank line.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PolylineMesh {
    pub polylines: Vec<Vec<Vec3>>,
}

impl PolylineMesh {
    pub fn point_count(&self) -> usize {
        self.polylines.iter().map(Vec::len).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, line) in self.polylines.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for p in line {
                let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.t);
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<PolylineMesh> {
        let mut polylines = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                if !current.is_empty() {
                    polylines.push(std::mem::take(&mut current));
                }
                continue;
            }
            let vals = line
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if vals.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 coordinates, got {}",
                    lineno + 1,
                    vals.len()
                )));
            }
            current.push(Vec3::new(vals[0], vals[1], vals[2]));
        }
        if !current.is_empty() {
            polylines.push(current);
        }
        Ok(PolylineMesh { polylines })
    }
}

/// Samples each of the twelve ideal edges at `samples_per_edge` points and maps
/// them through every word. Polylines are ordered word-major, edge-minor.
pub fn octahedron_orbit(words: &[GroupWord], samples_per_edge: usize) -> Result<PolylineMesh> {
    if samples_per_edge < 2 {
        return Err(Error::OutOfRange {
            name: "samples_per_edge",
            value: samples_per_edge as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    let edge_samples: Vec<Vec<Vec3>> = edges()
        .into_iter()
        .map(|(a, b)| {
            (0..samples_per_edge)
                .map(|s| {
                    let th = FRAC_PI_2 * s as f64 / (samples_per_edge - 1) as f64;
                    ideal_edge_point(a, b, th)
                })
                .collect()
        })
        .collect();
    let mut polylines = Vec::with_capacity(words.len() * edge_samples.len());
    for w in words {
        for line in &edge_samples {
            let img: Vec<Vec3> = line.iter().map(|&p| w.apply_vec(p)).collect();
            if img.iter().any(|p| !p.norm_sq().is_finite() || p.norm_sq() > 1.0 + 1e-9) {
                return Err(Error::Numeric(format!("edge image of {w} left the closed ball")));
            }
            polylines.push(img);
        }
    }
    Ok(PolylineMesh { polylines })
}

/// Edges of the parent octahedron that are also edges of its image under `w`.
/// Endpoints and Euclidean midpoints must match.
pub fn shared_edges(w: &GroupWord) -> Vec<Edge> {
    let parent = edges();
    let mut out = Vec::new();
    for (a, b) in edges() {
        let ia = w.apply_vec(a.position());
        let ib = w.apply_vec(b.position());
        let im = w.apply_vec(ideal_edge_point(a, b, FRAC_PI_2 / 2.0));
        for &(pa, pb) in &parent {
            let ends_match = (ia.max_abs_diff(pa.position()) < MATCH_TOL
                && ib.max_abs_diff(pb.position()) < MATCH_TOL)
                || (ia.max_abs_diff(pb.position()) < MATCH_TOL
                    && ib.max_abs_diff(pa.position()) < MATCH_TOL);
            if ends_match && im.max_abs_diff(edge_midpoint(pa, pb)) < MATCH_TOL {
                out.push((pa, pb));
            }
        }
    }
    out
}

/// Shared edges between the parent and each of the daughters `h_k[O]`, k = 1..4.
pub fn daughter_shared_edges() -> Vec<(GeneratorName, Vec<Edge>)> {
    [GeneratorName::H1, GeneratorName::H2, GeneratorName::H3, GeneratorName::H4]
        .into_iter()
        .map(|name| {
            let w = GroupWord::new(vec![GeneratorId::once(name)]);
            (name, shared_edges(&w))
        })
        .collect()
}

/// Finite vertices of the dual dodecahedral tiling: the reflection of the
/// origin in each face sphere of the octahedron, labelled by face.
pub fn dodecahedron_finite_vertices() -> Vec<(String, Vec3)> {
    faces()
        .into_iter()
        .map(|f| {
            let center = f.iter().fold(Vec3::ZERO, |acc, v: &Vertex| acc + v.position());
            // face sphere: |r - c|^2 = |c|^2 - 1, orthogonal to the unit sphere
            let r2 = center.norm_sq() - 1.0;
            let d = Vec3::ZERO - center;
            (face_label(&f), center + d.scale(r2 / d.norm_sq()))
        })
        .collect()
}
