//! C ABI over `brc-core`.
//!
//! Every fallible call returns a [`BrcStatus`]; on failure a message is kept
//! per thread and can be read with [`brc_last_error_message`]. Spectra are
//! owned by opaque [`BrcSpectrum`] handles released with [`brc_spectrum_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use brc_core::cayley::{self, Convention, Functional, SpectrumSummary};
use brc_core::group::GeneratorId;
use brc_core::hyperbolic::{dist_ball, BallPoint};
use brc_core::vec3::Vec3;
use brc_core::{sine_gordon, teich, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Domain = 4,
    Drift = 5,
    Numeric = 6,
    Degenerate = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrcFunctional {
    L = 0,
    L0 = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrcConvention {
    Outermost = 0,
    Innermost = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrcSpectrumStats {
    pub n: u32,
    pub count: usize,
    pub l_min: f64,
    pub l_max: f64,
    pub mean: f64,
    pub sigma: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrcMultifractalPoint {
    pub q: f64,
    pub tau: f64,
    pub d: f64,
    pub alpha: f64,
    pub f: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrcMarkovStats {
    pub n: u32,
    pub l_min_star: f64,
    pub l_max_star: f64,
    pub mean_star: f64,
    pub sigma_star: f64,
    pub xi_bar: f64,
}

/// Opaque spectrum handle.
pub struct BrcSpectrum {
    inner: SpectrumSummary,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> BrcStatus {
    match err {
        Error::Domain(_) | Error::TriangleInequality { .. } | Error::NotAdjacent(..) => {
            BrcStatus::Domain
        }
        Error::Degenerate(_) => BrcStatus::Degenerate,
        Error::Drift { .. } => BrcStatus::Drift,
        Error::Numeric(_) => BrcStatus::Numeric,
        Error::OutOfRange { .. } => BrcStatus::OutOfRange,
        Error::Parse(_) | Error::Io(_) => BrcStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard<F>(f: F) -> BrcStatus
where
    F: FnOnce() -> Result<(), (BrcStatus, String)>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BrcStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (BrcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (BrcStatus, String) {
    (BrcStatus::NullPointer, format!("{name} is null"))
}

/// Copies `value` into `*out`.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), (BrcStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `p` must be null or point to three readable doubles.
unsafe fn read_vec3(p: *const f64, name: &str) -> Result<Vec3, (BrcStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(Vec3::new(s[0], s[1], s[2]))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn brc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn brc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Hyperbolic distance between two points of the unit ball.
///
/// # Safety
/// `p` and `q` must point to three doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_dist_ball(p: *const f64, q: *const f64, out: *mut f64) -> BrcStatus {
    guard(|| {
        let a = BallPoint::from_vec(read_vec3(p, "p")?).map_err(core_err)?;
        let b = BallPoint::from_vec(read_vec3(q, "q")?).map_err(core_err)?;
        write_out(out, dist_ball(a, b), "out")
    })
}

/// Applies a catalog generator (`"g1"`, `"h_tilde_plus"`, ...) raised to
/// `power` to a ball point.
///
/// # Safety
/// `name` must be a NUL-terminated string; `r` and `out` must point to three doubles.
#[no_mangle]
pub unsafe extern "C" fn brc_apply_generator(
    name: *const c_char,
    power: i32,
    r: *const f64,
    out: *mut f64,
) -> BrcStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| (BrcStatus::InvalidArgument, "name is not UTF-8".to_string()))?;
        let id = GeneratorId::new(name.parse().map_err(core_err)?, power);
        let p = BallPoint::from_vec(read_vec3(r, "r")?).map_err(core_err)?;
        let img = id.apply(p).map_err(core_err)?;
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&img.to_array());
        Ok(())
    })
}

/// Enumerates the path spectrum at depth `n` into a new handle.
///
/// # Safety
/// `out` must be writable; the handle must be released with [`brc_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_create(
    n: u32,
    functional: BrcFunctional,
    convention: BrcConvention,
    out: *mut *mut BrcSpectrum,
) -> BrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = match functional {
            BrcFunctional::L => Functional::L,
            BrcFunctional::L0 => Functional::L0,
        };
        let c = match convention {
            BrcConvention::Outermost => Convention::Outermost,
            BrcConvention::Innermost => Convention::Innermost,
        };
        let s = cayley::enumerate_spectrum(n as usize, f, c).map_err(core_err)?;
        out.write(Box::into_raw(Box::new(BrcSpectrum { inner: s })));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `h` must be null or a handle from [`brc_spectrum_create`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_free(h: *mut BrcSpectrum) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_stats(
    h: *const BrcSpectrum,
    out: *mut BrcSpectrumStats,
) -> BrcStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.inner;
        write_out(
            out,
            BrcSpectrumStats {
                n: s.n as u32,
                count: s.count(),
                l_min: s.l_min,
                l_max: s.l_max,
                mean: s.mean,
                sigma: s.sigma,
            },
            "out",
        )
    })
}

/// Copies the sorted spectrum into `buf`. `len` must be at least the count;
/// pass a null `buf` to query the count through `needed`.
///
/// # Safety
/// `h` must be a live handle; `buf` must be null or hold `len` doubles;
/// `needed` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_values(
    h: *const BrcSpectrum,
    buf: *mut f64,
    len: usize,
    needed: *mut usize,
) -> BrcStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.inner;
        if !needed.is_null() {
            needed.write(s.count());
        }
        if buf.is_null() {
            return Ok(());
        }
        if len < s.count() {
            return Err((
                BrcStatus::BufferTooSmall,
                format!("buffer holds {len} values, {} needed", s.count()),
            ));
        }
        std::slice::from_raw_parts_mut(buf, s.count()).copy_from_slice(&s.values);
        Ok(())
    })
}

/// `ln Z(q)` of the spectrum.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_ln_partition(
    h: *const BrcSpectrum,
    q: f64,
    out: *mut f64,
) -> BrcStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.inner;
        if !q.is_finite() {
            return Err((BrcStatus::InvalidArgument, format!("q = {q} is not finite")));
        }
        write_out(out, cayley::partition_function(s, q), "out")
    })
}

/// Multifractal exponents at `q`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_multifractal(
    h: *const BrcSpectrum,
    q: f64,
    out: *mut BrcMultifractalPoint,
) -> BrcStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.inner;
        if !q.is_finite() {
            return Err((BrcStatus::InvalidArgument, format!("q = {q} is not finite")));
        }
        let p = cayley::multifractal_at(s, q);
        write_out(
            out,
            BrcMultifractalPoint {
                q: p.q,
                tau: p.tau,
                d: p.d,
                alpha: p.alpha,
                f: p.f,
            },
            "out",
        )
    })
}

/// `(α_min, α_max)` of the spectrum.
///
/// # Safety
/// `h` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_spectrum_alpha_limits(
    h: *const BrcSpectrum,
    alpha_min: *mut f64,
    alpha_max: *mut f64,
) -> BrcStatus {
    guard(|| {
        let s = &h.as_ref().ok_or_else(|| null("handle"))?.inner;
        let (lo, hi) = cayley::alpha_limits(s);
        write_out(alpha_min, lo, "alpha_min")?;
        write_out(alpha_max, hi, "alpha_max")
    })
}

/// Markov estimate at depth `n`, keeping every correlation lag.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_markov_estimate(n: u32, out: *mut BrcMarkovStats) -> BrcStatus {
    guard(|| {
        let m = cayley::markov_estimate(n as usize, None).map_err(core_err)?;
        write_out(
            out,
            BrcMarkovStats {
                n,
                l_min_star: m.l_min_star,
                l_max_star: m.l_max_star,
                mean_star: m.mean_star,
                sigma_star: m.sigma_star,
                xi_bar: m.xi_bar,
            },
            "out",
        )
    })
}

/// Signed λ-length between horospheres of heights `h_i`, `h_j`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_lambda_length(h_i: f64, h_j: f64, out: *mut f64) -> BrcStatus {
    guard(|| write_out(out, teich::lambda_length(h_i, h_j).map_err(core_err)?, "out"))
}

/// Horocyclic arc length `w(h)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_horo_arc_length(h: f64, out: *mut f64) -> BrcStatus {
    guard(|| write_out(out, teich::horo_arc_length(h).map_err(core_err)?, "out"))
}

/// Action variable `J(ε)` for `ε ∈ [0, 1]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_action_variable(epsilon: f64, out: *mut f64) -> BrcStatus {
    guard(|| {
        write_out(
            out,
            sine_gordon::action_variable(epsilon).map_err(core_err)?,
            "out",
        )
    })
}

/// Energy of the antikink.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brc_kink_energy(out: *mut f64) -> BrcStatus {
    guard(|| write_out(out, sine_gordon::kink_energy().map_err(core_err)?, "out"))
}
