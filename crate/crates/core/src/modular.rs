//! The Siegel cusp form χ₁₀, Petersson norms of η and χ₁₀, and reduction of
//! genus-one moduli to the standard fundamental domain.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::{
    even_characteristics, log_abs_eta_raw, theta_char_genus2_raw, AccuracyTarget, SiegelPoint2, UpperHalfPoint,
};

const REDUCTION_CAP: usize = 10_000;

/// Points this close to the unit circle count as on it.
const CIRCLE_TOL: f64 = 1e-14;

const ZERO2: [Complex64; 2] = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

/// Natural logarithm of a Petersson norm.
///
/// A norm that vanishes is carried as `log_norm = −∞` with the vanishing flag
/// set, never as NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeterssonValue {
    pub log_norm: f64,
    vanishing: bool,
}

impl PeterssonValue {
    pub fn finite(log_norm: f64) -> Self {
        Self { log_norm, vanishing: false }
    }

    pub fn vanishing() -> Self {
        Self { log_norm: f64::NEG_INFINITY, vanishing: true }
    }

    pub fn is_vanishing(&self) -> bool {
        self.vanishing
    }
}

/// Moves `ω` into `{|Re ω| ≤ ½, |ω| ≥ 1}` by alternating `ω ↦ ω − round(Re ω)`
/// and `ω ↦ −1/ω`. Points within `1e-14` of the unit circle are left in place.
pub fn reduce_fundamental_domain(omega: UpperHalfPoint) -> Result<UpperHalfPoint> {
    let mut w = omega.to_complex();
    for _ in 0..REDUCTION_CAP {
        if w.re.abs() > 0.5 {
            w.re -= w.re.round();
        }
        if w.norm_sqr() < 1.0 - CIRCLE_TOL {
            w = -1.0 / w;
        } else {
            return UpperHalfPoint::from_complex(w);
        }
    }
    Err(Error::NonTermination(REDUCTION_CAP))
}

/// `log ‖η‖(ω) = ¼ log Im ω + log|η(ω)|`, evaluated at the reduced modulus.
pub fn log_petersson_eta(omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<PeterssonValue> {
    let reduced = reduce_fundamental_domain(omega)?;
    let log_eta = log_abs_eta_raw(reduced, acc.eps_abs(), acc.max_radius())?;
    Ok(PeterssonValue::finite(0.25 * reduced.im().ln() + log_eta))
}

/// `log|η(ω)|` for any `ω` in the upper half plane, via `‖η‖`.
pub(crate) fn log_abs_eta_any(omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<f64> {
    Ok(log_petersson_eta(omega, acc)?.log_norm - 0.25 * omega.im().ln())
}

fn even_theta_constants(omega: &SiegelPoint2, eps: f64, cap: usize) -> Result<Vec<Complex64>> {
    even_characteristics().into_iter().map(|alpha| theta_char_genus2_raw(alpha, ZERO2, omega, eps, cap)).collect()
}

/// `χ₁₀(Ω) = ∏_{α even} θ[α](0, Ω)²`.
///
/// A first pass bounds `B ≥ max(|θ[α](0,Ω)|, 1)`; the second pass evaluates each
/// factor to `eps_abs / (20·B¹⁹)`, which bounds the error of the twenty-fold
/// product by `eps_abs`.
pub fn chi10(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<Complex64> {
    let eps = acc.eps_abs();
    let first = even_theta_constants(omega, eps, acc.max_radius())?;
    let bound = first.iter().map(|t| t.norm() + eps).fold(1.0_f64, f64::max);
    let factor_eps = eps / (20.0 * bound.powi(19));
    let thetas = even_theta_constants(omega, factor_eps, acc.max_radius())?;
    Ok(thetas.iter().map(|t| t * t).product())
}

/// `log ‖χ₁₀‖(Ω) = 5 log det Im Ω + log|χ₁₀(Ω)|`.
///
/// Raises [`Error::Vanishing`] when `|χ₁₀(Ω)| < eps_abs`. Otherwise the logarithm
/// is accumulated factor by factor, with each theta constant evaluated to a
/// relative accuracy that bounds the total log error by `eps_abs`.
pub fn log_petersson_chi10(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<PeterssonValue> {
    let value = chi10(omega, acc)?;
    let magnitude = value.norm();
    if magnitude < acc.eps_abs() {
        return Err(Error::Vanishing { form: "chi10", magnitude, threshold: acc.eps_abs() });
    }
    log_petersson_chi10_scaled(omega, acc)
}

/// As [`log_petersson_chi10`], but without the absolute threshold on `|χ₁₀|`.
///
/// Near the boundary `|χ₁₀|` is far below any absolute tolerance while every
/// theta constant is still resolved. Only a theta constant that cannot be
/// told apart from zero raises [`Error::Vanishing`].
pub(crate) fn log_petersson_chi10_scaled(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<PeterssonValue> {
    let thetas = even_theta_constants_relative(omega, acc)?;
    let log_abs: f64 = thetas.iter().map(|t| 2.0 * t.norm().ln()).sum();
    Ok(PeterssonValue::finite(5.0 * omega.det_im().ln() + log_abs))
}

/// `χ₁₀(Ω)` to relative accuracy `eps_abs`, with no absolute threshold.
pub(crate) fn chi10_scaled(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<Complex64> {
    Ok(even_theta_constants_relative(omega, acc)?.iter().map(|t| t * t).product())
}

fn even_theta_constants_relative(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<Vec<Complex64>> {
    let eps = acc.eps_abs();
    let first = even_theta_constants(omega, eps, acc.max_radius())?;
    let smallest = first.iter().map(|t| t.norm()).fold(f64::INFINITY, f64::min);
    if smallest <= 2.0 * eps {
        return Err(Error::Vanishing { form: "even theta constant", magnitude: smallest, threshold: 2.0 * eps });
    }
    // |log|θ+e| − log|θ|| ≤ 2|e|/|θ| once |e| ≤ |θ|/2; 20 logs in total.
    let factor_eps = eps * 0.5 * smallest / 40.0;
    even_theta_constants(omega, factor_eps, acc.max_radius())
}
