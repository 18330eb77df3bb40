use std::f64::consts::PI;

use num_complex::Complex64;

use super::tail::line_tail;
use super::{AccuracyTarget, CharEntry, UpperHalfPoint, RADIUS_LIMIT};
use crate::error::{Error, Result};

/// The elliptic theta function with odd characteristic `(½, ½)`,
///
/// `θ(z, ω) = Σ_{n∈ℤ} exp(πi (n+½)² ω + 2πi (n+½)(z+½))`.
///
/// The sum is truncated symmetrically to `|n+½| ≤ N+½`, with `N` the smallest
/// radius whose two-sided tail bound (accounting for `exp(2π|n+½||Im z|)`
/// growth) is below `acc.eps_abs`.
pub fn theta_odd_genus1(z: Complex64, omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<Complex64> {
    theta_odd_genus1_raw(z, omega, acc.eps_abs(), acc.max_radius())
}

fn radius(y: f64, c: f64, eps: f64) -> Option<usize> {
    (0..=RADIUS_LIMIT * 16).find(|&n| 2.0 * line_tail(y, c, n as f64 + 1.5) < eps)
}

pub(crate) fn theta_odd_genus1_raw(z: Complex64, omega: UpperHalfPoint, eps: f64, cap: usize) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite theta argument"));
    }
    let n = match radius(omega.im(), z.im.abs(), eps) {
        Some(n) if n <= cap => n,
        found => {
            return Err(Error::Accuracy {
                reason: format!("genus-one theta at Im ω = {}, Im z = {}", omega.im(), z.im),
                needed: found.unwrap_or(usize::MAX),
                cap,
            })
        }
    };
    let w = omega.to_complex();
    let (m, z) = unit_shift(z);
    let shift = z + 0.5;
    let i_pi = Complex64::new(0.0, PI);
    let term = |k: f64| (i_pi * (k * k * w + 2.0 * k * shift)).exp();
    // Pair k = j+½ with −k so partial sums stay odd in z.
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        let k = j as f64 + 0.5;
        sum += term(k) + term(-k);
    }
    Ok(if m % 2 == 0 { sum } else { -sum })
}

/// Splits off the nearest integer of `Re z`; each unit step multiplies θ[a, b] by `exp(2πi a)`.
fn unit_shift(z: Complex64) -> (i64, Complex64) {
    let m = z.re.round();
    (m as i64, Complex64::new(z.re - m, z.im))
}

/// Genus-one theta function with characteristic `(a, b)`,
///
/// `θ[a, b](z, ω) = Σ_{n∈ℤ} exp(πi (n+a)² ω + 2πi (n+a)(z+b))`.
///
/// `θ[½, ½]` is [`theta_odd_genus1`]. Used to check the splitting of genus-two
/// theta constants on block-diagonal period matrices.
pub fn theta_char_genus1(
    a: CharEntry,
    b: CharEntry,
    z: Complex64,
    omega: UpperHalfPoint,
    acc: AccuracyTarget,
) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite theta argument"));
    }
    let n = match radius(omega.im(), z.im.abs(), acc.eps_abs()) {
        Some(n) if n <= acc.max_radius() => n as i64,
        found => {
            return Err(Error::Accuracy {
                reason: format!("genus-one theta at Im ω = {}, Im z = {}", omega.im(), z.im),
                needed: found.unwrap_or(usize::MAX),
                cap: acc.max_radius(),
            })
        }
    };
    let w = omega.to_complex();
    let (m, z) = unit_shift(z);
    let shift = z + b.value();
    let i_pi = Complex64::new(0.0, PI);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -(n + 1)..=(n + 1) {
        let k = j as f64 + a.value();
        sum += (i_pi * (k * k * w + 2.0 * k * shift)).exp();
    }
    let flip = a == CharEntry::Half && m % 2 != 0;
    Ok(if flip { -sum } else { sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc() -> AccuracyTarget {
        AccuracyTarget::default()
    }

    fn i_omega() -> UpperHalfPoint {
        UpperHalfPoint::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn vanishes_at_origin() {
        let v = theta_odd_genus1(Complex64::new(0.0, 0.0), i_omega(), acc()).unwrap();
        assert!(v.norm() < 1e-14, "{v}");
    }

    #[test]
    fn odd_in_z() {
        let z = Complex64::new(0.3, 0.1);
        let a = theta_odd_genus1(z, i_omega(), acc()).unwrap();
        let b = theta_odd_genus1(-z, i_omega(), acc()).unwrap();
        assert!((a + b).norm() < 1e-13);
    }

    #[test]
    fn shifts_by_one_flip_the_sign() {
        let w = UpperHalfPoint::new(0.1, 0.8).unwrap();
        let z = Complex64::new(0.21, -0.13);
        let a = theta_odd_genus1(z, w, acc()).unwrap();
        let b = theta_odd_genus1(z + 1.0, w, acc()).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn derivative_at_origin_matches_eta_cubed() {
        // θ'(0) = −2π η(ω)³ for this characteristic.
        let w = UpperHalfPoint::new(0.0, 1.0).unwrap();
        let h = 1e-5;
        let plus = theta_odd_genus1(Complex64::new(h, 0.0), w, acc()).unwrap();
        let minus = theta_odd_genus1(Complex64::new(-h, 0.0), w, acc()).unwrap();
        let deriv = (plus - minus) / (2.0 * h);
        let eta = super::super::log_abs_eta(w, acc()).unwrap().exp();
        assert!((deriv.norm() - 2.0 * PI * eta.powi(3)).abs() < 1e-8);
    }

    #[test]
    fn large_imaginary_shift_widens_radius() {
        let w = UpperHalfPoint::new(0.0, 0.5).unwrap();
        let z = Complex64::new(0.1, 4.0);
        let v = theta_odd_genus1(z, w, acc()).unwrap();
        assert!(v.norm().is_finite());
        let tight = AccuracyTarget::new(1e-12, 4).unwrap();
        assert!(matches!(theta_odd_genus1(z, w, tight), Err(Error::Accuracy { .. })));
    }

    #[test]
    fn char_theta_half_half_is_the_odd_theta() {
        let z = Complex64::new(0.3, 0.1);
        let h = CharEntry::Half;
        let a = theta_char_genus1(h, h, z, i_omega(), acc()).unwrap();
        let b = theta_odd_genus1(z, i_omega(), acc()).unwrap();
        assert!((a - b).norm() < 1e-13);
    }
}
