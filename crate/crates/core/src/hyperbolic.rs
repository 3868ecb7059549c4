//! Poincaré ball and disk geometry: points, distances, geodesic arcs,
//! rotations, and the extension of parabolic disk isometries to the ball.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::vec3::Vec3;

/// Images whose norm exceeds one by less than this are pulled back inside.
pub const DRIFT_TOL: f64 = 1e-12;

const UNIT_AXIS_TOL: f64 = 1e-12;
const THETA_BISECTION_TOL: f64 = 1e-13;
/// `|r1 x r2|` below this fraction of `|r1||r2|` selects the diameter branch.
const COLLINEAR_TOL: f64 = 1e-12;

/// A point of the open unit ball, split as `(x + i y, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec3", into = "Vec3")]
pub struct BallPoint(Vec3);

impl BallPoint {
    pub const ORIGIN: BallPoint = BallPoint(Vec3::ZERO);

    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, t))
    }

    /// Validate a raw vector: finite and strictly inside the unit ball.
    pub fn from_vec(v: Vec3) -> Result<Self> {
        let n2 = v.norm_sq();
        if !n2.is_finite() {
            return Err(Error::Domain(format!("non-finite ball coordinates {v:?}")));
        }
        if n2 >= 1.0 {
            return Err(Error::Domain(format!(
                "point {v:?} has norm {} >= 1",
                n2.sqrt()
            )));
        }
        Ok(BallPoint(v))
    }

    /// Accept the image of an isometry. Norms within [`DRIFT_TOL`] of the
    /// boundary are clamped just inside; anything further out is a drift error.
    pub fn from_image(v: Vec3) -> Result<Self> {
        let n2 = v.norm_sq();
        if !n2.is_finite() {
            return Err(Error::Drift { norm: f64::NAN });
        }
        if n2 < 1.0 {
            return Ok(BallPoint(v));
        }
        let norm = n2.sqrt();
        if norm < 1.0 + DRIFT_TOL {
            return Ok(BallPoint(v.scale((1.0 - f64::EPSILON) / norm)));
        }
        Err(Error::Drift { norm })
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn t(self) -> f64 {
        self.0.t
    }

    pub fn norm_sq(self) -> f64 {
        self.0.norm_sq()
    }

    pub fn to_array(self) -> [f64; 3] {
        self.0.to_array()
    }
}

impl TryFrom<Vec3> for BallPoint {
    type Error = Error;
    fn try_from(v: Vec3) -> Result<Self> {
        BallPoint::from_vec(v)
    }
}

impl From<BallPoint> for Vec3 {
    fn from(p: BallPoint) -> Vec3 {
        p.0
    }
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let z = Complex64::new(re, im);
        if !z.norm_sqr().is_finite() || z.norm_sqr() >= 1.0 {
            return Err(Error::Domain(format!("disk point {re} + {im}i not inside the unit disk")));
        }
        Ok(DiskPoint(z))
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn complex(self) -> Complex64 {
        self.0
    }

    /// The same point viewed on the `t = 0` slice of the ball.
    pub fn to_ball(self) -> BallPoint {
        BallPoint(Vec3::new(self.0.re, self.0.im, 0.0))
    }
}

/// Hyperbolic distance in the ball, `2 asinh(|p-q| / sqrt((1-|p|^2)(1-|q|^2)))`.
pub fn dist_ball(p: BallPoint, q: BallPoint) -> f64 {
    let num = (p.0 - q.0).norm();
    let den = ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq())).sqrt();
    2.0 * (num / den).asinh()
}

/// `dist_ball(0, p)`.
pub fn dist_from_origin(p: BallPoint) -> f64 {
    let n2 = p.norm_sq();
    2.0 * (n2.sqrt() / (1.0 - n2).sqrt()).asinh()
}

/// Hyperbolic distance in the disk (same formula as the ball).
pub fn dist_disk(z: DiskPoint, w: DiskPoint) -> f64 {
    let num = (z.0 - w.0).norm();
    let den = ((1.0 - z.0.norm_sqr()) * (1.0 - w.0.norm_sqr())).sqrt();
    2.0 * (num / den).asinh()
}

/// Geodesic segment between two ball points.
///
/// Off-diameter arcs are circles orthogonal to the boundary sphere:
/// `r(θ) = r0 + (r1 - r0) cos θ + [n × (r1 - r0)] sin θ` for `θ ∈ [0, θ2]`.
/// Diameter arcs are straight chords `r(θ) = r1 + θ (r2 - r1)/|r2 - r1|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicArc {
    pub center: Vec3,
    pub radius: f64,
    pub normal: Vec3,
    pub start: BallPoint,
    pub end: BallPoint,
    pub theta_end: f64,
    pub is_diameter: bool,
}

impl GeodesicArc {
    pub fn point_at(&self, theta: f64) -> Vec3 {
        if self.is_diameter {
            let dir = (self.end.0 - self.start.0).scale(1.0 / self.theta_end);
            return self.start.0 + dir.scale(theta);
        }
        let rel = self.start.0 - self.center;
        self.center + rel.scale(theta.cos()) + self.normal.cross(rel).scale(theta.sin())
    }

    /// `dr/dθ`.
    pub fn tangent_at(&self, theta: f64) -> Vec3 {
        if self.is_diameter {
            return (self.end.0 - self.start.0).scale(1.0 / self.theta_end);
        }
        let rel = self.start.0 - self.center;
        rel.scale(-theta.sin()) + self.normal.cross(rel).scale(theta.cos())
    }

    /// `n` evenly spaced parameter samples including both ends.
    pub fn sample(&self, n: usize) -> Vec<Vec3> {
        let n = n.max(2);
        (0..n)
            .map(|k| self.point_at(self.theta_end * k as f64 / (n - 1) as f64))
            .collect()
    }
}

/// Construct the geodesic arc from `r1` to `r2`.
pub fn geodesic_between(r1: BallPoint, r2: BallPoint) -> Result<GeodesicArc> {
    let (a, b) = (r1.0, r2.0);
    if (a - b).norm() == 0.0 {
        return Err(Error::Degenerate("geodesic endpoints coincide".into()));
    }
    let cross = a.cross(b);
    let cn = cross.norm();
    if cn <= COLLINEAR_TOL * a.norm() * b.norm() || a.norm() == 0.0 || b.norm() == 0.0 {
        return Ok(GeodesicArc {
            center: Vec3::ZERO,
            radius: f64::INFINITY,
            normal: Vec3::ZERO,
            start: r1,
            end: r2,
            theta_end: (b - a).norm(),
            is_diameter: true,
        });
    }
    let mut normal = cross.scale(1.0 / cn);
    let c1 = 0.5 * (a.norm_sq() + 1.0);
    let c2 = 0.5 * (b.norm_sq() + 1.0);
    let m = a.scale(c2) - b.scale(c1);
    let center = normal.cross(m).scale(1.0 / cn);
    let radius = (center.norm_sq() - 1.0).sqrt();

    // ((r(θ) - r0) × (r2 - r0))·n = R² sin(θ2 - θ): positive before θ2, negative after.
    let rel1 = a - center;
    let rel2 = b - center;
    // orient the circle so that the short arc runs from r1 to r2 with increasing θ
    if rel1.cross(rel2).dot(normal) < 0.0 {
        normal = -normal;
    }
    let side = |theta: f64| {
        let rel = rel1.scale(theta.cos()) + normal.cross(rel1).scale(theta.sin());
        rel.cross(rel2).dot(normal)
    };
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::PI);
    if side(lo) <= 0.0 || side(hi) >= 0.0 {
        return Err(Error::Numeric(
            "arc end parameter not bracketed in [0, pi]".into(),
        ));
    }
    while hi - lo > THETA_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if side(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(GeodesicArc {
        center,
        radius,
        normal,
        start: r1,
        end: r2,
        theta_end: 0.5 * (lo + hi),
        is_diameter: false,
    })
}

/// Hyperbolic length of an arc by adaptive quadrature of `2|r'(θ)| / (1 - r(θ)^2)`.
pub fn arc_length(arc: &GeodesicArc) -> Result<f64> {
    if arc.theta_end == 0.0 {
        return Ok(0.0);
    }
    let speed = if arc.is_diameter { 1.0 } else { arc.radius };
    quadrature::adaptive_simpson(
        |theta| 2.0 * speed / (1.0 - arc.point_at(theta).norm_sq()),
        0.0,
        arc.theta_end,
        quadrature::DEFAULT_TOL,
    )
}

/// Rotation of angle `angle` about the unit axis `axis` (Rodrigues' formula).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    axis: Vec3,
    angle: f64,
}

impl Rotation {
    pub fn new(axis: Vec3, angle: f64) -> Result<Self> {
        if (axis.norm() - 1.0).abs() > UNIT_AXIS_TOL {
            return Err(Error::Domain(format!(
                "rotation axis {axis:?} is not a unit vector"
            )));
        }
        Ok(Rotation { axis, angle })
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn inverse(&self) -> Rotation {
        Rotation {
            axis: self.axis,
            angle: -self.angle,
        }
    }

    pub fn apply_vec(&self, r: Vec3) -> Vec3 {
        let (s, c) = self.angle.sin_cos();
        r.scale(c) + self.axis.scale(self.axis.dot(r) * (1.0 - c)) + self.axis.cross(r).scale(s)
    }

    pub fn apply(&self, r: BallPoint) -> Result<BallPoint> {
        BallPoint::from_image(self.apply_vec(r.0))
    }
}

/// `R_{n,φ}[r]`.
pub fn rotate(axis: Vec3, angle: f64, r: BallPoint) -> Result<BallPoint> {
    Rotation::new(axis, angle)?.apply(r)
}

/// Parabolic element of PSU(1,1) with matrix
/// `[[1 + i a, -i a e^{iφ}], [i a e^{-iφ}, 1 - i a]]`, fixing `e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicDiskParams {
    pub a: f64,
    pub phi: f64,
}

impl ParabolicDiskParams {
    pub fn new(a: f64, phi: f64) -> Self {
        ParabolicDiskParams { a, phi }
    }

    /// Matrix entries `(u, v)` of the `n`-th power; the power acts by `a -> n a`.
    pub fn matrix(&self, n: i32) -> (Complex64, Complex64) {
        let a = self.a * n as f64;
        let u = Complex64::new(1.0, a);
        let v = Complex64::new(0.0, -a) * Complex64::from_polar(1.0, self.phi);
        (u, v)
    }

    /// Linear-fractional action `(u z + v) / (v̄ z + ū)` on the disk.
    pub fn apply_disk(&self, n: i32, z: DiskPoint) -> Result<DiskPoint> {
        let (u, v) = self.matrix(n);
        let w = (u * z.0 + v) / (v.conj() * z.0 + u.conj());
        DiskPoint::new(w.re, w.im).or_else(|_| {
            let r = w.norm();
            if r < 1.0 + DRIFT_TOL {
                Ok(DiskPoint(w * ((1.0 - f64::EPSILON) / r)))
            } else {
                Err(Error::Drift { norm: r })
            }
        })
    }

    pub fn fixed_point(&self) -> Vec3 {
        Vec3::new(self.phi.cos(), self.phi.sin(), 0.0)
    }

    /// Extended action on raw coordinates (also valid on the boundary sphere).
    pub fn apply_vec(&self, n: i32, r: Vec3) -> Vec3 {
        let a = self.a * n as f64;
        let (s, c) = self.phi.sin_cos();
        let Vec3 { x, y, t } = r;
        let xi1 = x * s - y * c;
        let xi2 = y * s + x * c;
        let big = xi1 * xi1 + (xi2 - 1.0).powi(2) + t * t;
        let den = a * a * (t * t + (xi2 - 1.0).powi(2)) + (a * xi1 + 1.0).powi(2);
        let xt = x + (a * a * c + a * s) * big + 2.0 * a * xi1 * c;
        let yt = y + (a * a * s - a * c) * big + 2.0 * a * xi1 * s;
        Vec3::new(xt / den, yt / den, t / den)
    }
}

/// `n`-th power of the parabolic disk isometry extended to the ball.
pub fn extend_parabolic(params: ParabolicDiskParams, n: i32, r: BallPoint) -> Result<BallPoint> {
    BallPoint::from_image(params.apply_vec(n, r.0))
}

/// Third side of a hyperbolic triangle from two sides and the exterior angle
/// `psi` between the continuation of the first side and the second side:
/// `cosh d = cosh d01 cosh d12 + sinh d01 sinh d12 cos psi`.
pub fn hyp_law_of_cosines(d01: f64, d12: f64, psi: f64) -> f64 {
    let c = d01.cosh() * d12.cosh() + d01.sinh() * d12.sinh() * psi.cos();
    // acosh loses accuracy near 1; clamp tiny undershoot from rounding
    c.max(1.0).acosh()
}

/// Angle at `r_prev` between the outward radial direction and the geodesic
/// heading to `r_next`, in `[0, π]`.
pub fn angle_at_vertex(r_prev: BallPoint, r_next: BallPoint) -> Result<f64> {
    let radial = r_prev.0;
    let rn = radial.norm();
    if rn == 0.0 {
        return Err(Error::Domain("angle undefined at the origin".into()));
    }
    let arc = geodesic_between(r_prev, r_next)?;
    let v = arc.tangent_at(0.0);
    let cos = (v.dot(radial) / (v.norm() * rn)).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// Large-distance form of the law of cosines:
/// `d_prev + ln(cosh ℓ + sinh ℓ cos ψ)`.
pub fn asymptotic_step(d_prev: f64, psi: f64, ell: f64) -> f64 {
    d_prev + (ell.cosh() + ell.sinh() * psi.cos()).ln()
}
