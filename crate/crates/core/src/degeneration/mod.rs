//! Separating and non-separating genus-two degenerations, the regularized β
//! along them, and the closed-form limits they approach.
//!
//! Separating: `Ω_t = [[ω₁ + 2πit, 2πit], [2πit, ω₂ + 2πit]]`, `t → 0`.
//! Non-separating: `Ω = [[ω, u], [u, x + iy]]`, `y → ∞`, with `q = e^{2πi(x+iy)}`.

mod sweep;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::invariants::{
    arakelov_d_torus, beta_genus2_scaled, green_torus, log_abs_theta_odd, log_two_pi, EllipticCurveData,
    TorusDisplacement,
};
use crate::modular::{chi10_scaled, log_abs_eta_any, log_petersson_eta};
use crate::theta::{AccuracyTarget, SiegelPoint2, UpperHalfPoint};

pub use sweep::{run_sweep, SweepGrid, SweepReport, THREADS_ENV};

/// Largest `|t|` accepted on the separating family.
pub const T_MAX: f64 = 0.05;

/// Range of `y = Im ω₂₂` on the non-separating family.
pub const Y_MIN: f64 = 2.0;
pub const Y_MAX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Separating,
    NonSeparating,
}

impl SweepMode {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::Separating => "separating",
            SweepMode::NonSeparating => "nonseparating",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatingFamily {
    pub omega1: UpperHalfPoint,
    pub omega2: UpperHalfPoint,
}

impl SeparatingFamily {
    pub fn new(omega1: UpperHalfPoint, omega2: UpperHalfPoint) -> Self {
        Self { omega1, omega2 }
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.omega2, self.omega1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonSeparatingFamily {
    displacement: TorusDisplacement,
    x_offset: f64,
}

impl NonSeparatingFamily {
    /// Fails when `u` lies on the lattice `ℤ + ℤω`.
    pub fn new(omega: UpperHalfPoint, u: Complex64, x_offset: f64) -> Result<Self> {
        if !x_offset.is_finite() {
            return Err(Error::domain("non-finite real part for ω₂₂"));
        }
        Ok(Self { displacement: TorusDisplacement::new(u, omega)?, x_offset })
    }

    pub fn omega(&self) -> UpperHalfPoint {
        self.displacement.omega()
    }

    pub fn u(&self) -> Complex64 {
        self.displacement.u()
    }

    pub fn x_offset(&self) -> f64 {
        self.x_offset
    }

    pub fn displacement(&self) -> TorusDisplacement {
        self.displacement
    }
}

/// A family together with its mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Separating(SeparatingFamily),
    NonSeparating(NonSeparatingFamily),
}

impl Family {
    pub fn mode(&self) -> SweepMode {
        match self {
            Family::Separating(_) => SweepMode::Separating,
            Family::NonSeparating(_) => SweepMode::NonSeparating,
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= T_MAX) {
        return Err(Error::domain(format!("t = {t} is outside (0, {T_MAX}]")));
    }
    Ok(())
}

fn check_y(y: f64) -> Result<()> {
    if !(Y_MIN..=Y_MAX).contains(&y) {
        return Err(Error::domain(format!("y = {y} is outside [{Y_MIN}, {Y_MAX}]")));
    }
    Ok(())
}

/// `Ω_t = [[ω₁ + 2πit, 2πit], [2πit, ω₂ + 2πit]]` for `0 < |t| ≤ 0.05`.
pub fn sep_period_matrix(fam: &SeparatingFamily, t: Complex64) -> Result<SiegelPoint2> {
    let r = t.norm();
    if !(r > 0.0 && r <= T_MAX) {
        return Err(Error::domain(format!("|t| = {r} is outside (0, {T_MAX}]")));
    }
    let s = Complex64::new(0.0, 2.0 * PI) * t;
    SiegelPoint2::new(fam.omega1.to_complex() + s, s, fam.omega2.to_complex() + s)
}

/// `Ω = [[ω, u], [u, x_offset + iy]]` for `y ≥ 2`.
pub fn nonsep_period_matrix(fam: &NonSeparatingFamily, y: f64) -> Result<SiegelPoint2> {
    if !(y.is_finite() && y >= Y_MIN) {
        return Err(Error::domain(format!("y = {y} must be finite and at least {Y_MIN}")));
    }
    SiegelPoint2::new(fam.omega().to_complex(), fam.u(), Complex64::new(fam.x_offset, y))
}

/// `β(M_t) + 4 log|t|` on the real ray `t ∈ (0, 0.05]`.
pub fn regularized_beta_separating(fam: &SeparatingFamily, t: f64, acc: AccuracyTarget) -> Result<f64> {
    check_t(t)?;
    let omega = sep_period_matrix(fam, Complex64::new(t, 0.0))?;
    Ok(beta_genus2_scaled(&omega, acc)? + 4.0 * t.ln())
}

/// `−48 log‖η‖(ω₁) − 48 log‖η‖(ω₂) + 2 log(Im ω₁ · Im ω₂) − 48 log 2π`.
pub fn rhs_separating(fam: &SeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    let n1 = log_petersson_eta(fam.omega1, acc)?.log_norm;
    let n2 = log_petersson_eta(fam.omega2, acc)?.log_norm;
    Ok(-48.0 * (n1 + n2) + 2.0 * (fam.omega1.im() * fam.omega2.im()).ln() - 48.0 * log_two_pi())
}

/// `log|τ| − log|t| = log d₁ + log d₂`, the shift between the `τ` and `t` parameters.
pub fn separating_tau_shift(fam: &SeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    Ok(arakelov_d_torus(EllipticCurveData::new(fam.omega1), acc)?
        + arakelov_d_torus(EllipticCurveData::new(fam.omega2), acc)?)
}

/// `β + 2 log|q| + 10 log(−log|q|)` with `log|q| = −2πy`.
pub fn regularized_beta_nonseparating_q(fam: &NonSeparatingFamily, y: f64, acc: AccuracyTarget) -> Result<f64> {
    check_y(y)?;
    let omega = nonsep_period_matrix(fam, y)?;
    let log_q = -2.0 * PI * y;
    Ok(beta_genus2_scaled(&omega, acc)? + 2.0 * log_q + 10.0 * (-log_q).ln())
}

/// `−36 log|η(ω)| − 4 log|θ(u, ω)| − 10 log Im ω − 30 log 2π`.
pub fn rhs_nonseparating_q(fam: &NonSeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    let omega = fam.omega();
    let log_eta = log_abs_eta_any(omega, acc)?;
    let log_theta = log_abs_theta_odd(fam.u(), omega, acc)?;
    Ok(-36.0 * log_eta - 4.0 * log_theta - 10.0 * omega.im().ln() - 30.0 * log_two_pi())
}

/// `−40 log‖η‖(ω) − 30 log 2π`.
pub fn rhs_nonseparating_tau(fam: &NonSeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    let norm = log_petersson_eta(fam.omega(), acc)?.log_norm;
    Ok(-40.0 * norm - 30.0 * log_two_pi())
}

/// `log|q| = log|τ| − 2 log|θ(u, ω)| + 2 log|η(ω)|`.
pub fn log_q_from_log_tau(log_tau: f64, fam: &NonSeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    let omega = fam.omega();
    Ok(log_tau - 2.0 * log_abs_theta_odd(fam.u(), omega, acc)? + 2.0 * log_abs_eta_any(omega, acc)?)
}

/// The same relation written with the Green's function,
/// `log|q| = log|τ| − 2 g(a, b) − 2π (Im u)²/Im ω`.
pub fn log_q_from_log_tau_via_green(log_tau: f64, fam: &NonSeparatingFamily, acc: AccuracyTarget) -> Result<f64> {
    let u = fam.u();
    let g = green_torus(fam.displacement, acc)?;
    Ok(log_tau - 2.0 * g - 2.0 * PI * u.im * u.im / fam.omega().im())
}

/// `χ₁₀(Ω)` divided by its leading term: `t²(2π)⁴2¹²η(ω₁)²⁴η(ω₂)²⁴` on the
/// separating family at real `t`, `−q·2¹²η(ω)¹⁸θ(u, ω)²` on the non-separating
/// family at `y`.
pub fn chi10_leading_ratio(family: &Family, parameter: f64, acc: AccuracyTarget) -> Result<Complex64> {
    match family {
        Family::Separating(fam) => {
            check_t(parameter)?;
            let omega = sep_period_matrix(fam, Complex64::new(parameter, 0.0))?;
            let chi = chi10_scaled(&omega, acc)?;
            let e1 = eta_complex(fam.omega1, acc)?;
            let e2 = eta_complex(fam.omega2, acc)?;
            let lead = parameter * parameter * (2.0 * PI).powi(4) * 4096.0 * e1.powi(24) * e2.powi(24);
            Ok(chi / lead)
        }
        Family::NonSeparating(fam) => {
            check_y(parameter)?;
            let omega = nonsep_period_matrix(fam, parameter)?;
            let chi = chi10_scaled(&omega, acc)?;
            let w = fam.omega();
            let theta = crate::theta::theta_odd_genus1(fam.u(), w, acc)?;
            if theta.norm() <= 2.0 * acc.eps_abs() {
                return Err(Error::domain("leading term vanishes: θ(u, ω) = 0"));
            }
            let q = (Complex64::new(0.0, 2.0 * PI) * Complex64::new(fam.x_offset, parameter)).exp();
            let lead = -q * 4096.0 * eta_complex(w, acc)?.powi(18) * theta * theta;
            Ok(chi / lead)
        }
    }
}

/// `η(ω)` as a complex number, `e^{πiω/12} ∏ (1 − e^{2πinω})`.
fn eta_complex(omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<Complex64> {
    let w = omega.to_complex();
    let q = (Complex64::new(0.0, 2.0 * PI) * w).exp();
    let r = q.norm();
    if r >= 1.0 - 1e-3 {
        return Err(Error::domain(format!("Im ω = {} too small for the q-product", omega.im())));
    }
    let mut prod = (Complex64::new(0.0, PI / 12.0) * w).exp();
    let mut qn = q;
    for _ in 0..acc.max_radius().max(1) * 64 {
        prod *= Complex64::new(1.0, 0.0) - qn;
        if qn.norm() < acc.eps_abs() * 1e-3 {
            return Ok(prod);
        }
        qn *= q;
    }
    Err(Error::Accuracy {
        reason: format!("eta product at Im ω = {}", omega.im()),
        needed: usize::MAX,
        cap: acc.max_radius(),
    })
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

    fn sep_family() -> SeparatingFamily {
        SeparatingFamily::new(uhp(0.0, 1.0), uhp(0.0, 1.5))
    }

    fn nonsep_family() -> NonSeparatingFamily {
        NonSeparatingFamily::new(uhp(0.0, 1.0), c(0.2, 0.3), 0.0).unwrap()
    }

    #[test]
    fn separating_matrix_shape() {
        let fam = SeparatingFamily::new(uhp(0.0, 1.0), uhp(0.0, 1.0));
        let t = 1e-3;
        let m = sep_period_matrix(&fam, c(t, 0.0)).unwrap();
        assert_eq!(m.entry(0, 1), m.entry(1, 0));
        // Im Ω_t = [[1 + 2πt, 2πt], [2πt, 1 + 2πt]] has eigenvalues 1 and 1 + 4πt.
        let (lo, hi) = m.im_eigenvalues();
        assert!((lo - 1.0).abs() < 1e-14);
        assert!((hi - (1.0 + 4.0 * PI * t)).abs() < 1e-14);
        assert!(sep_period_matrix(&fam, c(0.0, 0.0)).is_err());
        assert!(sep_period_matrix(&fam, c(0.06, 0.0)).is_err());
    }

    #[test]
    fn nonseparating_matrix_checks() {
        let fam = nonsep_family();
        let m = nonsep_period_matrix(&fam, 3.0).unwrap();
        assert!((m.det_im() - (3.0 - 0.09)).abs() < 1e-14);
        assert!(nonsep_period_matrix(&fam, 1.0).is_err());
        assert!(NonSeparatingFamily::new(uhp(0.0, 1.0), c(1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn separating_value_is_swap_symmetric() {
        let fam = sep_family();
        let a = regularized_beta_separating(&fam, 1e-3, acc()).unwrap();
        let b = regularized_beta_separating(&fam.swapped(), 1e-3, acc()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn separating_rhs_is_translation_invariant() {
        let fam = sep_family();
        let moved = SeparatingFamily::new(fam.omega1.translate(1.0), fam.omega2.translate(-1.0));
        let a = rhs_separating(&fam, acc()).unwrap();
        let b = rhs_separating(&moved, acc()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn rhs_tau_and_q_differ_by_theta_over_eta() {
        let fam = nonsep_family();
        let d = rhs_nonseparating_tau(&fam, acc()).unwrap() - rhs_nonseparating_q(&fam, acc()).unwrap();
        let w = fam.omega();
        let expected = 4.0 * log_abs_theta_odd(fam.u(), w, acc()).unwrap() - 4.0 * log_abs_eta_any(w, acc()).unwrap();
        assert!((d - expected).abs() < 1e-10);
    }

    #[test]
    fn log_q_forms_agree() {
        let fam = nonsep_family();
        let a = log_q_from_log_tau(-7.0, &fam, acc()).unwrap();
        let b = log_q_from_log_tau_via_green(-7.0, &fam, acc()).unwrap();
        assert!((a - b).abs() < 1e-10);
        let a2 = log_q_from_log_tau(-6.0, &fam, acc()).unwrap();
        assert!((a2 - a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eta_complex_matches_modulus() {
        let w = uhp(0.3, 0.9);
        let e = eta_complex(w, acc()).unwrap();
        let l = log_abs_eta_any(w, acc()).unwrap();
        assert!((e.norm().ln() - l).abs() < 1e-12);
    }

    #[test]
    fn parameters_outside_range_are_rejected() {
        let fam = sep_family();
        assert!(regularized_beta_separating(&fam, 0.1, acc()).is_err());
        assert!(regularized_beta_nonseparating_q(&nonsep_family(), 41.0, acc()).is_err());
    }
}
