use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AccuracyTarget, UpperHalfPoint, ETA_MIN_IM};
use crate::error::{Error, Result};

/// Hard limit on product length when reporting the length that would be needed.
const SEARCH_LIMIT: usize = 1 << 20;

/// `log|η(ω)|` with `η = q^{1/24} ∏_{n≥1} (1 − qⁿ)`, `q = e^{2πiω}`.
///
/// The product is truncated at the first `N` with `|q|^{N+1}/(1−|q|) < ε/2`,
/// after which the rigorous log-tail bound
/// `Σ_{n>N} −log(1−|q|ⁿ) ≤ |q|^{N+1} / ((1−|q|)(1−|q|^{N+1}))`
/// is checked as well. The number of factors is capped by `max_radius`.
pub fn log_abs_eta(omega: UpperHalfPoint, acc: AccuracyTarget) -> Result<f64> {
    if omega.im() < ETA_MIN_IM {
        return Err(Error::domain(format!(
            "Im ω = {} is below {ETA_MIN_IM}; reduce to the fundamental domain first",
            omega.im()
        )));
    }
    log_abs_eta_raw(omega, acc.eps_abs(), acc.max_radius())
}

fn tail_bound(r: f64, n: usize) -> f64 {
    let rn1 = r.powi(n as i32 + 1);
    rn1 / ((1.0 - r) * (1.0 - rn1))
}

fn product_length(r: f64, eps: f64) -> usize {
    let mut n = 1;
    while n < SEARCH_LIMIT {
        let rn1 = r.powi(n as i32 + 1);
        if rn1 / (1.0 - r) < 0.5 * eps && tail_bound(r, n) < 0.5 * eps {
            return n;
        }
        n += 1;
    }
    usize::MAX
}

pub(crate) fn log_abs_eta_raw(omega: UpperHalfPoint, eps: f64, cap: usize) -> Result<f64> {
    let y = omega.im();
    let r = (-2.0 * PI * y).exp();
    let n_terms = product_length(r, eps);
    if n_terms > cap {
        return Err(Error::Accuracy {
            reason: format!("eta product at Im ω = {y} needs more factors"),
            needed: n_terms,
            cap,
        });
    }
    let frac = omega.re() - omega.re().round();
    let mut sum = -PI * y / 12.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        let angle = 2.0 * PI * (nf * frac).fract();
        let qn = Complex64::from_polar(r.powi(n as i32), angle);
        // log|1 − w| = ½ log(1 − 2 Re w + |w|²)
        sum += 0.5 * (qn.norm_sqr() - 2.0 * qn.re).ln_1p();
    }
    Ok(sum)
}
