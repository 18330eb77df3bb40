//! Invariants of elliptic curves and genus-two surfaces: Faltings' δ, the
//! Arakelov Green's function on a torus, the `log d` constant, the Hain–Reed β
//! in genus two, Zhang's λ, and the closed-form degeneration limits.

mod limits;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modular::{log_abs_eta_any, log_petersson_chi10, log_petersson_chi10_scaled, log_petersson_eta};
use crate::theta::{theta_odd_genus1_raw, AccuracyTarget, SiegelPoint2, UpperHalfPoint};

pub use limits::{
    beta_via_lambda, lambda_coefficients, proof_identities, thm_a_formula, thm_a_limit, thm_b_formula, thm_b_limit,
    wentworth_delta_formula, wentworth_delta_limit, GenusSplit, IdentityCheck, LambdaCoefficients, LimitFormula,
    LimitInputs, LimitValue, Q,
};

/// Distance to the lattice below which a displacement counts as a lattice point.
pub const LATTICE_TOL: f64 = 1e-9;

/// Theta accuracy used inside the Green's function: keeps the log error of
/// `log|θ|` below `1e-10` whenever `|θ| ≥ 1e-6`.
const GREEN_THETA_EPS: f64 = 3e-17;

pub fn log_two_pi() -> f64 {
    (2.0 * PI).ln()
}

/// The Kawazumi–Zhang invariant of a genus-one surface, which is zero.
pub fn phi_genus1() -> f64 {
    0.0
}

/// The elliptic curve `ℂ/(ℤ + ℤω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCurveData {
    pub omega: UpperHalfPoint,
}

impl EllipticCurveData {
    pub fn new(omega: UpperHalfPoint) -> Self {
        Self { omega }
    }
}

/// A displacement `u = b − a` between two points of `ℂ/(ℤ + ℤω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusDisplacement {
    u: Complex64,
    reduced: Complex64,
    omega: UpperHalfPoint,
}

impl TorusDisplacement {
    /// Fails when `u` is within [`LATTICE_TOL`] of `ℤ + ℤω`.
    pub fn new(u: Complex64, omega: UpperHalfPoint) -> Result<Self> {
        if !(u.re.is_finite() && u.im.is_finite()) {
            return Err(Error::domain("non-finite displacement"));
        }
        let w = omega.to_complex();
        let r = u.im / w.im;
        let s = u.re - r * w.re;
        let reduced = Complex64::new(s - s.floor(), 0.0) + (r - r.floor()) * w;
        let corners = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), w, w + 1.0];
        let dist = corners.iter().map(|c| (reduced - c).norm()).fold(f64::INFINITY, f64::min);
        if dist < LATTICE_TOL {
            return Err(Error::domain(format!("u = {u} lies on the lattice Z + Z({w}) (distance {dist:e})")));
        }
        Ok(Self { u, reduced, omega })
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    /// Representative of `u` in the fundamental parallelogram `[0,1) + [0,1)ω`.
    pub fn reduced(&self) -> Complex64 {
        self.reduced
    }

    pub fn omega(&self) -> UpperHalfPoint {
        self.omega
    }
}

/// `δ(M) = −24 log ‖η‖(ω) − 8 log 2π` for `M = ℂ/(ℤ + ℤω)`.
pub fn delta_elliptic(curve: EllipticCurveData, acc: AccuracyTarget) -> Result<f64> {
    let norm = log_petersson_eta(curve.omega, acc)?;
    Ok(-24.0 * norm.log_norm - 8.0 * log_two_pi())
}

/// Arakelov Green's function of the torus,
/// `g(a, b) = −π (Im u)²/Im ω + log|θ(u, ω)| − log|η(ω)|`.
///
/// The quadratic term enters with a minus sign: that is the sign for which the
/// quasi-periodicity factor `|exp(−πiω − 2πiu)|` of θ cancels, so `g` is doubly
/// periodic and integrates to zero. Evaluated at the representative of `u` in
/// the fundamental parallelogram.
pub fn green_torus(d: TorusDisplacement, acc: AccuracyTarget) -> Result<f64> {
    let omega = d.omega;
    let u = d.reduced;
    let theta = theta_odd_genus1_raw(u, omega, GREEN_THETA_EPS.min(acc.eps_abs()), acc.max_radius())?;
    let log_eta = log_abs_eta_any(omega, acc)?;
    Ok(-PI * u.im * u.im / omega.im() + theta.norm().ln() - log_eta)
}

/// `log|θ(u, ω)|` to absolute accuracy `eps_abs`, at `u` as given (no reduction).
pub(crate) fn log_abs_theta_odd(u: Complex64, omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<f64> {
    let eps = acc.eps_abs();
    let first = theta_odd_genus1_raw(u, omega, eps, acc.max_radius())?.norm();
    if first <= 2.0 * eps {
        return Err(Error::domain(format!("θ({u}, {omega}) vanishes to working accuracy")));
    }
    let theta = theta_odd_genus1_raw(u, omega, eps * first / 4.0, acc.max_radius())?;
    Ok(theta.norm().ln())
}

/// `log d = 2 log|η(ω)| + log 2π`, the regularized self-pairing at the origin
/// in the euclidean coordinate.
pub fn arakelov_d_torus(curve: EllipticCurveData, acc: AccuracyTarget) -> Result<f64> {
    Ok(2.0 * log_abs_eta_any(curve.omega, acc)? + log_two_pi())
}

/// Hain–Reed β in genus two: `β = −2 log ‖χ₁₀‖(Ω) − 40 log 2π + 24 log 2`.
pub fn beta_genus2(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<f64> {
    let norm = log_petersson_chi10(omega, acc)?;
    Ok(beta_from_log_norm(norm.log_norm))
}

/// [`beta_genus2`] without the absolute threshold on `|χ₁₀|`, for points close
/// to the boundary of moduli.
pub(crate) fn beta_genus2_scaled(omega: &SiegelPoint2, acc: AccuracyTarget) -> Result<f64> {
    let norm = log_petersson_chi10_scaled(omega, acc)?;
    Ok(beta_from_log_norm(norm.log_norm))
}

fn beta_from_log_norm(log_norm: f64) -> f64 {
    -2.0 * log_norm - 40.0 * log_two_pi() + 24.0 * 2f64.ln()
}

/// Zhang's `λ = (h−1)/(6(2h+1))·φ + δ/12 − (h/3) log 2π`.
pub fn lambda_invariant(h: u32, phi: f64, delta: f64) -> Result<f64> {
    let c = lambda_coefficients(h)?;
    Ok(to_f64(c.phi) * phi + to_f64(c.delta) * delta + to_f64(c.log_two_pi) * log_two_pi())
}

/// `β = (8h + 4) λ`.
pub fn beta_from_lambda(h: u32, lambda: f64) -> Result<f64> {
    if h == 0 {
        return Err(Error::domain("genus must be at least 1"));
    }
    Ok((8.0 * h as f64 + 4.0) * lambda)
}

pub(crate) fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc() -> AccuracyTarget {
        AccuracyTarget::default()
    }

    fn uhp(re: f64, im: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(re, im).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_vanishes_in_genus_one() {
        assert_eq!(phi_genus1(), 0.0);
    }

    #[test]
    fn delta_is_translation_invariant() {
        let w = uhp(0.13, 0.7);
        let a = delta_elliptic(EllipticCurveData::new(w), acc()).unwrap();
        let b = delta_elliptic(EllipticCurveData::new(w.translate(1.0)), acc()).unwrap();
        assert!((a - b).abs() < 1e-12);
        let i = uhp(0.0, 1.0);
        let a = delta_elliptic(EllipticCurveData::new(i), acc()).unwrap();
        let b = delta_elliptic(EllipticCurveData::new(i.invert()), acc()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn green_is_even() {
        let w = uhp(0.0, 1.0);
        let u = c(0.3, 0.2);
        let g = |u| green_torus(TorusDisplacement::new(u, w).unwrap(), acc()).unwrap();
        assert!((g(u) - g(-u)).abs() < 1e-12);
    }

    #[test]
    fn green_is_doubly_periodic() {
        let w = uhp(0.0, 1.1);
        let u = c(0.3, 0.2);
        let g = |u| green_torus(TorusDisplacement::new(u, w).unwrap(), acc()).unwrap();
        assert!((g(u) - g(u + 1.0)).abs() < 1e-10);
        assert!((g(u) - g(u + w.to_complex())).abs() < 1e-10);
    }

    #[test]
    fn green_periodicity_through_unreduced_theta() {
        // Check the quasi-periodicity cancellation directly on unreduced inputs.
        let w = uhp(0.2, 1.1);
        let u = c(0.3, 0.2);
        let raw = |u: Complex64| {
            let theta = theta_odd_genus1_raw(u, w, 1e-16, 64).unwrap();
            -PI * u.im * u.im / w.im() + theta.norm().ln()
        };
        assert!((raw(u) - raw(u + w.to_complex())).abs() < 1e-10);
        assert!((raw(u) - raw(u + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn green_rejects_lattice_points() {
        let w = uhp(0.0, 1.0);
        for u in [c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 0.0), c(3e-10, 0.0)] {
            assert!(matches!(TorusDisplacement::new(u, w), Err(Error::Domain(_))));
        }
        assert!(TorusDisplacement::new(c(1e-6, 0.0), w).is_ok());
    }

    #[test]
    fn log_d_deep_cusp() {
        let w = uhp(0.0, 10.0);
        let v = arakelov_d_torus(EllipticCurveData::new(w), acc()).unwrap();
        assert!((v - (2.0 * (-20.0 * PI / 24.0) + log_two_pi())).abs() < 1e-10);
        let a = arakelov_d_torus(EllipticCurveData::new(uhp(0.3, 0.9)), acc()).unwrap();
        let b = arakelov_d_torus(EllipticCurveData::new(uhp(1.3, 0.9)), acc()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn beta_recomposes_and_vanishes_on_diagonal() {
        let omega = SiegelPoint2::new(c(0.0, 1.0), c(0.0, 2.0 * PI * 1e-3), c(0.0, 1.5)).unwrap();
        let beta = beta_genus2(&omega, acc()).unwrap();
        let lpc = log_petersson_chi10(&omega, acc()).unwrap().log_norm;
        let residual = beta + 2.0 * lpc + 40.0 * log_two_pi() - 24.0 * 2f64.ln();
        assert!(residual.abs() < 1e-11);

        let diag = SiegelPoint2::diagonal(uhp(0.0, 1.0), uhp(0.0, 2.0));
        assert!(matches!(beta_genus2(&diag, acc()), Err(Error::Vanishing { .. })));
    }

    #[test]
    fn lambda_and_beta_examples() {
        let delta = 1.7;
        let l1 = lambda_invariant(1, 0.0, delta).unwrap();
        assert!((l1 - (delta / 12.0 - log_two_pi() / 3.0)).abs() < 1e-15);
        let l2 = lambda_invariant(2, 0.0, 0.0).unwrap();
        assert!((l2 + 2.0 / 3.0 * log_two_pi()).abs() < 1e-15);
        assert_eq!(beta_from_lambda(2, 1.0).unwrap(), 20.0);
        assert_eq!(beta_from_lambda(1, 1.0).unwrap(), 12.0);
        assert!(lambda_invariant(0, 0.0, 0.0).is_err());

        // 20 λ in genus two is (2/3) φ + (5/3) δ − (40/3) log 2π.
        let (phi, delta) = (0.4, -3.1);
        let beta = beta_from_lambda(2, lambda_invariant(2, phi, delta).unwrap()).unwrap();
        let expected = 2.0 / 3.0 * phi + 5.0 / 3.0 * delta - 40.0 / 3.0 * log_two_pi();
        assert!((beta - expected).abs() < 1e-13);
    }
}
