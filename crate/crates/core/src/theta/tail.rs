//! Upper bounds on the tails of Gaussian lattice sums.

use std::f64::consts::PI;

/// Covers rounding in the closed-form bounds.
const SLACK: f64 = 1.0 + 1e-9;

/// Bound on `Σ_{j≥0} exp(−π y (k₀+j)² + 2π c (k₀+j))` for `y > 0`, `c ≥ 0`.
///
/// Returns `+∞` when the terms are not yet geometrically decreasing at `k₀`.
pub(crate) fn line_tail(y: f64, c: f64, k0: f64) -> f64 {
    let log_ratio = -PI * y * (2.0 * k0 + 1.0) + 2.0 * PI * c;
    if log_ratio >= 0.0 || k0 * y < c {
        return f64::INFINITY;
    }
    let log_first = -PI * y * k0 * k0 + 2.0 * PI * c * k0;
    SLACK * log_first.exp() / (1.0 - log_ratio.exp())
}

/// Bound on `Σ_{m>n} 8m · exp(−π λ (m−1)² + 2π c (m−1))`.
///
/// This majorizes the shells `‖k‖∞ = m > n` of a genus-two sum whose terms
/// satisfy `|term| ≤ exp(−π λ |v|² + 2π c |v|)` with `|v| ≥ m − 1`, provided the
/// exponent is decreasing from `n` on, i.e. `n ≥ c/λ`. Returns `+∞` otherwise.
pub(crate) fn shell_tail(lambda: f64, c: f64, n: usize) -> f64 {
    let n = n as f64;
    if n * lambda < c {
        return f64::INFINITY;
    }
    let m = n + 1.0;
    let log_ratio = ((m + 1.0) / m).ln() - PI * lambda * (2.0 * m - 1.0) + 2.0 * PI * c;
    if log_ratio >= 0.0 {
        return f64::INFINITY;
    }
    let r = m - 1.0;
    let log_first = (8.0 * m).ln() - PI * lambda * r * r + 2.0 * PI * c * r;
    SLACK * log_first.exp() / (1.0 - log_ratio.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_line(y: f64, c: f64, k0: f64) -> f64 {
        (0..10_000)
            .map(|j| {
                let k = k0 + j as f64;
                (-PI * y * k * k + 2.0 * PI * c * k).exp()
            })
            .sum()
    }

    fn brute_shell(lambda: f64, c: f64, n: usize) -> f64 {
        ((n + 1)..(n + 5_000))
            .map(|m| {
                let r = m as f64 - 1.0;
                8.0 * m as f64 * (-PI * lambda * r * r + 2.0 * PI * c * r).exp()
            })
            .sum()
    }

    #[test]
    fn line_tail_dominates_direct_sum() {
        for &(y, c, k0) in &[(1.0, 0.0, 1.5), (0.3, 0.5, 4.5), (2.0, 3.0, 2.5), (0.05, 0.0, 20.5)] {
            let bound = line_tail(y, c, k0);
            let direct = brute_line(y, c, k0);
            assert!(bound >= direct, "y={y} c={c} k0={k0}: {bound} < {direct}");
            assert!(bound <= 2.0 * direct, "bound too loose");
        }
    }

    #[test]
    fn line_tail_before_peak_is_infinite() {
        assert!(line_tail(1.0, 5.0, 0.5).is_infinite());
    }

    #[test]
    fn shell_tail_dominates_direct_sum() {
        for &(l, c, n) in &[(1.0, 0.0, 3), (0.3, 0.0, 8), (0.5, 0.7, 4), (0.01, 0.0, 60)] {
            let bound = shell_tail(l, c, n);
            let direct = brute_shell(l, c, n);
            assert!(bound >= direct, "l={l} c={c} n={n}: {bound} < {direct}");
        }
    }
}
