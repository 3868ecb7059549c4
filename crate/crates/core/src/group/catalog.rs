//! Closed-form parabolic isometries of the ball, each carrying its power `n`
//! explicitly (the `n`-th power is not computed by iteration).

use std::f64::consts::FRAC_PI_2;

use crate::vec3::Vec3;

/// `h_1^n`, fixing `(0, 1, 0)`.
pub fn h1(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + (y - 1.0).powi(2) + t * t;
    let den = n * n * (t * t + (y - 1.0).powi(2)) + (n * x - 1.0).powi(2);
    Vec3::new(x - n * s, y + n * n * s - 2.0 * n * x, t).scale(1.0 / den)
}

/// `h_2^n`, fixing `(-1, 0, 0)`.
pub fn h2(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = (x + 1.0).powi(2) + y * y + t * t;
    let den = n * n * (t * t + (x + 1.0).powi(2)) + (n * y - 1.0).powi(2);
    Vec3::new(x - n * n * s + 2.0 * n * y, y - n * s, t).scale(1.0 / den)
}

/// `h_3^n`, fixing `(0, -1, 0)`.
pub fn h3(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + (y + 1.0).powi(2) + t * t;
    let den = n * n * (t * t + (y + 1.0).powi(2)) + (n * x + 1.0).powi(2);
    Vec3::new(x + n * s, y - n * n * s - 2.0 * n * x, t).scale(1.0 / den)
}

/// `h_4^n`, fixing `(1, 0, 0)`.
pub fn h4(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = (x - 1.0).powi(2) + y * y + t * t;
    let den = n * n * (t * t + (x - 1.0).powi(2)) + (n * y + 1.0).powi(2);
    Vec3::new(x + n * n * s + 2.0 * n * y, y + n * s, t).scale(1.0 / den)
}

/// `h_+^n`, fixing `(0, 0, 1)`, acting in the `xt` planes.
pub fn h_plus(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + y * y + (t - 1.0).powi(2);
    let den = n * n * (y * y + (t - 1.0).powi(2)) + (n * x + 1.0).powi(2);
    Vec3::new(x + n * s, y, t + n * n * s + 2.0 * n * x).scale(1.0 / den)
}

/// `h̃_+^n`, fixing `(0, 0, 1)`, acting in the `yt` planes.
pub fn h_tilde_plus(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + y * y + (t - 1.0).powi(2);
    let den = n * n * (x * x + (t - 1.0).powi(2)) + (n * y + 1.0).powi(2);
    Vec3::new(x, y + n * s, t + n * n * s + 2.0 * n * y).scale(1.0 / den)
}

/// `h_-^n`, fixing `(0, 0, -1)`.
pub fn h_minus(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + y * y + (t + 1.0).powi(2);
    let den = n * n * (y * y + (t + 1.0).powi(2)) + (n * x + 1.0).powi(2);
    Vec3::new(x + n * s, y, t - n * n * s - 2.0 * n * x).scale(1.0 / den)
}

/// `h̃_-^n`, fixing `(0, 0, -1)`.
pub fn h_tilde_minus(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let s = x * x + y * y + (t + 1.0).powi(2);
    let den = n * n * (x * x + (t + 1.0).powi(2)) + (n * y + 1.0).powi(2);
    Vec3::new(x, y + n * s, t - n * n * s - 2.0 * n * y).scale(1.0 / den)
}

/// `g_1^n`, fixing `(0, 1, 0)`.
pub fn g1(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let q = x * x + (y - 1.0).powi(2);
    let den = n * n * q + (n * t - 1.0).powi(2);
    Vec3::new(x, y - 1.0 + den, t - n * (q + t * t)).scale(1.0 / den)
}

/// `g_2^n`, fixing `(-1, 0, 0)`.
pub fn g2(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let den = n * n * (t * t + (x + 1.0).powi(2)) + (n * y - 1.0).powi(2);
    Vec3::new(
        x + 1.0 - den,
        y - n * ((x + 1.0).powi(2) + y * y + t * t),
        t,
    )
    .scale(1.0 / den)
}

/// `g_3^n`, fixing `(0, 0, 1)`.
pub fn g3(n: f64, r: Vec3) -> Vec3 {
    let Vec3 { x, y, t } = r;
    let den = n * n * (y * y + (t - 1.0).powi(2)) + (n * x + 1.0).powi(2);
    Vec3::new(
        x + n * (x * x + y * y + (t - 1.0).powi(2)),
        y,
        t - 1.0 + den,
    )
    .scale(1.0 / den)
}

/// Rotation axis used to build `h̃_k` (k = 1..4) from `h_k`: `j` for the
/// generators fixing `±j`, `i` for those fixing `±i`.
pub fn tilde_axis(k: u8) -> Vec3 {
    if k % 2 == 1 {
        Vec3::J
    } else {
        Vec3::I
    }
}

/// Quarter-turn angle of the `h̃_k` conjugation.
pub const TILDE_ANGLE: f64 = FRAC_PI_2;
