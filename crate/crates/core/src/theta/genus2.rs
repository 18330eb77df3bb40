use std::f64::consts::PI;

use num_complex::Complex64;

use super::tail::shell_tail;
use super::{AccuracyTarget, SiegelPoint2, ThetaChar2, RADIUS_LIMIT};
use crate::error::{Error, Result};

/// The ten even characteristics, lexicographic on `(a₁, a₂, b₁, b₂)` with `0 < ½`.
pub fn even_characteristics() -> Vec<ThetaChar2> {
    ThetaChar2::all().filter(ThetaChar2::is_even).collect()
}

/// The six odd characteristics, in the same order.
pub fn odd_characteristics() -> Vec<ThetaChar2> {
    ThetaChar2::all().filter(|c| !c.is_even()).collect()
}

/// Smallest `N ≤ 256` with `8(N+2)·exp(−π λ_min (N − offset)²) < eps`.
///
/// `offset` bounds the characteristic shift `|a|∞ ≤ ½`; callers pass `1`.
/// The search starts at `N = ⌈offset⌉` so the Gaussian factor is decreasing.
pub fn truncation_radius(lambda_min: f64, offset: f64, eps: f64) -> Result<usize> {
    let valid = lambda_min > 0.0 && eps > 0.0 && (0.0..=1.0).contains(&offset);
    if !valid {
        return Err(Error::domain(format!(
            "truncation_radius(λ_min = {lambda_min}, offset = {offset}, eps = {eps}) out of domain"
        )));
    }
    let bound = |n: usize| {
        let d = n as f64 - offset;
        8.0 * (n as f64 + 2.0) * (-PI * lambda_min * d * d).exp()
    };
    (offset.ceil() as usize..=RADIUS_LIMIT).find(|&n| bound(n) < eps).ok_or_else(|| Error::Accuracy {
        reason: format!("genus-two lattice sum with λ_min = {lambda_min:e}"),
        needed: usize::MAX,
        cap: RADIUS_LIMIT,
    })
}

/// Radius for a genus-two sum at `z`; `c = |Im z|₂` enters the tail majorant.
fn genus2_radius(lambda_min: f64, c: f64, eps: f64) -> Result<usize> {
    let start = if c == 0.0 { truncation_radius(lambda_min, 1.0, eps)? } else { 1 };
    // The closed form above is a heuristic envelope for small λ_min; the
    // explicit shell majorant is what certifies the cut.
    (start..=RADIUS_LIMIT).find(|&n| shell_tail(lambda_min, c, n) < eps).ok_or_else(|| Error::Accuracy {
        reason: format!("genus-two lattice sum with λ_min = {lambda_min:e}, |Im z| = {c}"),
        needed: usize::MAX,
        cap: RADIUS_LIMIT,
    })
}

/// Genus-two theta function with characteristic `α = (a, b)`,
///
/// `θ[α](z, Ω) = Σ_{n∈ℤ²} exp(πi (n+a) Ω ᵗ(n+a) + 2πi (n+a) ᵗ(z+b))`,
///
/// summed over the box `max(|n₁|, |n₂|) ≤ N` in increasing shells.
pub fn theta_char_genus2(
    alpha: ThetaChar2,
    z: [Complex64; 2],
    omega: &SiegelPoint2,
    acc: AccuracyTarget,
) -> Result<Complex64> {
    theta_char_genus2_raw(alpha, z, omega, acc.eps_abs(), acc.max_radius())
}

pub(crate) fn theta_char_genus2_raw(
    alpha: ThetaChar2,
    z: [Complex64; 2],
    omega: &SiegelPoint2,
    eps: f64,
    cap: usize,
) -> Result<Complex64> {
    if z.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::domain("non-finite theta argument"));
    }
    let c = z[0].im.hypot(z[1].im);
    let n = genus2_radius(omega.lambda_min(), c, eps)?;
    if n > cap {
        return Err(Error::Accuracy {
            reason: format!("genus-two theta with λ_min = {:e}", omega.lambda_min()),
            needed: n,
            cap,
        });
    }

    let [a1, a2] = alpha.a_values();
    let [b1, b2] = alpha.b_values();
    let [[w11, w12], [_, w22]] = omega.entries();
    let s1 = z[0] + b1;
    let s2 = z[1] + b2;
    let i_pi = Complex64::new(0.0, PI);
    let term = |n1: i64, n2: i64| {
        let v1 = n1 as f64 + a1;
        let v2 = n2 as f64 + a2;
        let quad = v1 * v1 * w11 + 2.0 * v1 * v2 * w12 + v2 * v2 * w22;
        let lin = v1 * s1 + v2 * s2;
        (i_pi * (quad + 2.0 * lin)).exp()
    };

    let mut total = term(0, 0);
    for m in 1..=n as i64 {
        let mut shell = Complex64::new(0.0, 0.0);
        // Top and bottom rows, then the two side columns without corners.
        for k in -m..=m {
            shell += term(k, m) + term(k, -m);
        }
        for k in (-m + 1)..m {
            shell += term(m, k) + term(-m, k);
        }
        total += shell;
    }
    Ok(total)
}
