//! C ABI for `deginv`.
//!
//! Every entry point returns a [`DeginvStatus`] and writes results through out
//! pointers. On failure the message is available from [`deginv_last_error`]
//! on the same thread. Period matrices and sweep reports are opaque handles
//! released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use deginv::degeneration::{
    run_sweep, Family, NonSeparatingFamily, SeparatingFamily, SweepGrid, SweepMode, SweepReport,
};
use deginv::invariants::{
    arakelov_d_torus, beta_genus2, delta_elliptic, green_torus, EllipticCurveData, TorusDisplacement,
};
use deginv::modular::{chi10, log_petersson_chi10, log_petersson_eta};
use deginv::theta::{
    log_abs_eta, theta_char_genus2, theta_odd_genus1, AccuracyTarget, CharEntry, SiegelPoint2, ThetaChar2,
    UpperHalfPoint,
};
use deginv::Error;
use num_complex::Complex64;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeginvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Accuracy = 4,
    Vanishing = 5,
    NonTermination = 6,
    Fit = 7,
    Panic = 8,
}

/// Opaque genus-two period matrix.
pub struct DeginvSiegelPoint(SiegelPoint2);

/// Opaque result of a degeneration sweep.
pub struct DeginvSweepReport(SweepReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DeginvStatus {
    match e {
        Error::Domain(_) => DeginvStatus::Domain,
        Error::Accuracy { .. } => DeginvStatus::Accuracy,
        Error::Vanishing { .. } => DeginvStatus::Vanishing,
        Error::NonTermination(_) => DeginvStatus::NonTermination,
        Error::Fit(_) => DeginvStatus::Fit,
    }
}

enum Fail {
    Null,
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DeginvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DeginvStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            DeginvStatus::NullPointer
        }
        Ok(Err(Fail::Invalid(m))) => {
            set_error(&m);
            DeginvStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            DeginvStatus::Panic
        }
    }
}

fn accuracy(eps: f64, max_radius: usize) -> Result<AccuracyTarget, Fail> {
    AccuracyTarget::new(eps, max_radius).map_err(|e| Fail::Invalid(e.to_string()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn write_complex(re: *mut f64, im: *mut f64, v: Complex64) -> Result<(), Fail> {
    if re.is_null() || im.is_null() {
        return Err(Fail::Null);
    }
    re.write(v.re);
    im.write(v.im);
    Ok(())
}

unsafe fn point<'a>(p: *const DeginvSiegelPoint) -> Result<&'a SiegelPoint2, Fail> {
    p.as_ref().map(|p| &p.0).ok_or(Fail::Null)
}

fn char_entry(half: u8) -> Result<CharEntry, Fail> {
    match half {
        0 => Ok(CharEntry::Zero),
        1 => Ok(CharEntry::Half),
        _ => Err(Fail::Invalid(format!("characteristic entry must be 0 or 1 (halves), got {half}"))),
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn deginv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a NUL-terminated string with static lifetime.
#[no_mangle]
pub extern "C" fn deginv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `log|η(ω)|`, for `Im ω ≥ 0.05`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_log_abs_eta(
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let w = UpperHalfPoint::new(omega_re, omega_im)?;
        write(out, log_abs_eta(w, accuracy(eps, max_radius)?)?)
    })
}

/// `log ‖η‖(ω)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_log_petersson_eta(
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let w = UpperHalfPoint::new(omega_re, omega_im)?;
        write(out, log_petersson_eta(w, accuracy(eps, max_radius)?)?.log_norm)
    })
}

/// The odd genus-one theta function `θ(z, ω)`.
///
/// # Safety
/// `out_re` and `out_im` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_theta_odd_genus1(
    z_re: f64,
    z_im: f64,
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let w = UpperHalfPoint::new(omega_re, omega_im)?;
        let v = theta_odd_genus1(Complex64::new(z_re, z_im), w, accuracy(eps, max_radius)?)?;
        write_complex(out_re, out_im, v)
    })
}

/// Creates a period matrix `[[d11, d12], [d12, d22]]`; fails unless its
/// imaginary part is positive definite.
///
/// # Safety
/// `out` must be null or valid for writes. The handle must be released with
/// [`deginv_siegel_point_free`].
#[no_mangle]
pub unsafe extern "C" fn deginv_siegel_point_new(
    d11_re: f64,
    d11_im: f64,
    d12_re: f64,
    d12_im: f64,
    d22_re: f64,
    d22_im: f64,
    out: *mut *mut DeginvSiegelPoint,
) -> DeginvStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let p = SiegelPoint2::new(
            Complex64::new(d11_re, d11_im),
            Complex64::new(d12_re, d12_im),
            Complex64::new(d22_re, d22_im),
        )?;
        out.write(Box::into_raw(Box::new(DeginvSiegelPoint(p))));
        Ok(())
    })
}

/// Releases a period matrix. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from [`deginv_siegel_point_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn deginv_siegel_point_free(p: *mut DeginvSiegelPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Genus-two theta constant or function with characteristic. Characteristic
/// entries are given in halves: `0` for 0 and `1` for ½.
///
/// # Safety
/// `p` must be a live handle; `out_re`, `out_im` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_theta_char_genus2(
    p: *const DeginvSiegelPoint,
    a1: u8,
    a2: u8,
    b1: u8,
    b2: u8,
    z1_re: f64,
    z1_im: f64,
    z2_re: f64,
    z2_im: f64,
    eps: f64,
    max_radius: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let alpha = ThetaChar2::new([char_entry(a1)?, char_entry(a2)?], [char_entry(b1)?, char_entry(b2)?]);
        let z = [Complex64::new(z1_re, z1_im), Complex64::new(z2_re, z2_im)];
        let v = theta_char_genus2(alpha, z, point(p)?, accuracy(eps, max_radius)?)?;
        write_complex(out_re, out_im, v)
    })
}

/// `χ₁₀(Ω)`.
///
/// # Safety
/// `p` must be a live handle; `out_re`, `out_im` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_chi10(
    p: *const DeginvSiegelPoint,
    eps: f64,
    max_radius: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let v = chi10(point(p)?, accuracy(eps, max_radius)?)?;
        write_complex(out_re, out_im, v)
    })
}

/// `log ‖χ₁₀‖(Ω)`; `DEGINV_STATUS_VANISHING` when `|χ₁₀| < eps`.
///
/// # Safety
/// `p` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_log_petersson_chi10(
    p: *const DeginvSiegelPoint,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| write(out, log_petersson_chi10(point(p)?, accuracy(eps, max_radius)?)?.log_norm))
}

/// The genus-two β invariant.
///
/// # Safety
/// `p` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_beta_genus2(
    p: *const DeginvSiegelPoint,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| write(out, beta_genus2(point(p)?, accuracy(eps, max_radius)?)?))
}

/// Faltings' δ of `ℂ/(ℤ + ℤω)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_delta_elliptic(
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let e = EllipticCurveData::new(UpperHalfPoint::new(omega_re, omega_im)?);
        write(out, delta_elliptic(e, accuracy(eps, max_radius)?)?)
    })
}

/// `log d` of `ℂ/(ℤ + ℤω)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_arakelov_d_torus(
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let e = EllipticCurveData::new(UpperHalfPoint::new(omega_re, omega_im)?);
        write(out, arakelov_d_torus(e, accuracy(eps, max_radius)?)?)
    })
}

/// Arakelov Green's function `g(0, u)` on `ℂ/(ℤ + ℤω)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_green_torus(
    u_re: f64,
    u_im: f64,
    omega_re: f64,
    omega_im: f64,
    eps: f64,
    max_radius: usize,
    out: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let w = UpperHalfPoint::new(omega_re, omega_im)?;
        let d = TorusDisplacement::new(Complex64::new(u_re, u_im), w)?;
        write(out, green_torus(d, accuracy(eps, max_radius)?)?)
    })
}

unsafe fn grid(mode: SweepMode, points: *const f64, n: usize) -> Result<SweepGrid, Fail> {
    if points.is_null() {
        return Err(Fail::Null);
    }
    Ok(SweepGrid::new(mode, std::slice::from_raw_parts(points, n).to_vec())?)
}

unsafe fn finish_sweep(
    grid: SweepGrid,
    family: Family,
    eps: f64,
    max_radius: usize,
    out: *mut *mut DeginvSweepReport,
) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    let report = run_sweep(&grid, &family, accuracy(eps, max_radius)?)?;
    out.write(Box::into_raw(Box::new(DeginvSweepReport(report))));
    Ok(())
}

/// Sweeps the separating family at the `n` values of `t` in `points`
/// (strictly decreasing, in `(0, 0.05]`).
///
/// # Safety
/// `points` must reference `n` doubles; `out` null or valid for writes. The
/// report must be released with [`deginv_sweep_report_free`].
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_separating(
    omega1_re: f64,
    omega1_im: f64,
    omega2_re: f64,
    omega2_im: f64,
    points: *const f64,
    n: usize,
    eps: f64,
    max_radius: usize,
    out: *mut *mut DeginvSweepReport,
) -> DeginvStatus {
    guard(|| {
        let fam = SeparatingFamily::new(
            UpperHalfPoint::new(omega1_re, omega1_im)?,
            UpperHalfPoint::new(omega2_re, omega2_im)?,
        );
        let g = grid(SweepMode::Separating, points, n)?;
        finish_sweep(g, Family::Separating(fam), eps, max_radius, out)
    })
}

/// Sweeps the non-separating family at the `n` values of `y` in `points`
/// (strictly increasing, in `[2, 40]`).
///
/// # Safety
/// As [`deginv_sweep_separating`].
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_nonseparating(
    omega_re: f64,
    omega_im: f64,
    u_re: f64,
    u_im: f64,
    x_offset: f64,
    points: *const f64,
    n: usize,
    eps: f64,
    max_radius: usize,
    out: *mut *mut DeginvSweepReport,
) -> DeginvStatus {
    guard(|| {
        let fam =
            NonSeparatingFamily::new(UpperHalfPoint::new(omega_re, omega_im)?, Complex64::new(u_re, u_im), x_offset)?;
        let g = grid(SweepMode::NonSeparating, points, n)?;
        finish_sweep(g, Family::NonSeparating(fam), eps, max_radius, out)
    })
}

/// Number of samples in a report; 0 for null.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_report_len(r: *const DeginvSweepReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.samples.len())
}

/// Sample `i` of a report.
///
/// # Safety
/// `r` must be a live report; `param`, `value` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_report_sample(
    r: *const DeginvSweepReport,
    i: usize,
    param: *mut f64,
    value: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let r = r.as_ref().ok_or(Fail::Null)?;
        let &(p, v) =
            r.0.samples
                .get(i)
                .ok_or_else(|| Fail::Invalid(format!("sample {i} out of range (len {})", r.0.samples.len())))?;
        write(param, p)?;
        write(value, v)
    })
}

/// Summary of a report. Any out pointer may be null to skip that field.
///
/// # Safety
/// `r` must be a live report; non-null out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_report_summary(
    r: *const DeginvSweepReport,
    extrapolated_limit: *mut f64,
    rhs: *mut f64,
    discrepancy: *mut f64,
    estimated_order: *mut f64,
) -> DeginvStatus {
    guard(|| {
        let r = &r.as_ref().ok_or(Fail::Null)?.0;
        for (out, v) in [
            (extrapolated_limit, r.extrapolated_limit),
            (rhs, r.closed_form_rhs),
            (discrepancy, r.discrepancy),
            (estimated_order, r.estimated_order),
        ] {
            if !out.is_null() {
                out.write(v);
            }
        }
        Ok(())
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must be null or a report not yet freed.
#[no_mangle]
pub unsafe extern "C" fn deginv_sweep_report_free(r: *mut DeginvSweepReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
