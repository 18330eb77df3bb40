use std::f64::consts::PI;

use rayon::prelude::*;

use super::{
    regularized_beta_nonseparating_q, regularized_beta_separating, rhs_nonseparating_q, rhs_separating, Family,
    SweepMode, T_MAX, Y_MAX, Y_MIN,
};
use crate::error::{Error, Result};
use crate::theta::AccuracyTarget;

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "DEGINV_THREADS";

/// Number of trailing samples used by the extrapolation fit.
const FIT_POINTS: usize = 4;

/// Sample parameters: `t` values for a separating sweep, `y` values for a
/// non-separating one, ordered toward the degenerate limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    mode: SweepMode,
    points: Vec<f64>,
}

impl SweepGrid {
    /// `t` strictly decreasing in `(0, 0.05]`, or `y` strictly increasing in `[2, 40]`.
    pub fn new(mode: SweepMode, points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("empty sweep grid"));
        }
        for &p in &points {
            let ok = match mode {
                SweepMode::Separating => p > 0.0 && p <= T_MAX,
                SweepMode::NonSeparating => (Y_MIN..=Y_MAX).contains(&p),
            };
            if !ok {
                return Err(Error::domain(format!("grid point {p} is outside the {} range", mode.name())));
            }
        }
        let monotone = points.windows(2).all(|w| match mode {
            SweepMode::Separating => w[1] < w[0],
            SweepMode::NonSeparating => w[1] > w[0],
        });
        if !monotone {
            return Err(Error::domain("grid must move strictly toward the degenerate limit"));
        }
        Ok(Self { mode, points })
    }

    /// `n` points from `start` to `end`, equally spaced in `log t` (separating)
    /// or in `log|q| = −2πy` (non-separating, i.e. equally spaced in `y`).
    pub fn log_spaced(mode: SweepMode, start: f64, end: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a grid needs at least one point"));
        }
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::domain("non-finite grid endpoint"));
        }
        let points = match mode {
            SweepMode::Separating => {
                if !(start > 0.0 && end > 0.0) {
                    return Err(Error::domain("separating grid endpoints must be positive"));
                }
                let mut p: Vec<f64> = spaced(start.ln(), end.ln(), n).into_iter().map(f64::exp).collect();
                p[0] = start;
                if n > 1 {
                    p[n - 1] = end;
                }
                p
            }
            SweepMode::NonSeparating => spaced(start, end, n),
        };
        Self::new(mode, points)
    }

    pub fn mode(&self) -> SweepMode {
        self.mode
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

fn spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(|k| if k == n - 1 { b } else { a + step * k as f64 }).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub mode: SweepMode,
    /// `(parameter, regularized β)` in grid order.
    pub samples: Vec<(f64, f64)>,
    pub extrapolated_limit: f64,
    pub closed_form_rhs: f64,
    /// `|extrapolated_limit − closed_form_rhs|`.
    pub discrepancy: f64,
    /// Separating: exponent `p` of `|value − L| ~ t^p`. Non-separating: root mean
    /// square residual of the `L + C e^{−2πy}` fit.
    pub estimated_order: f64,
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::domain(format!("{THREADS_ENV}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::domain(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

/// Evaluates the regularized β on every grid point, fits `L + C·φ(s)` to the
/// last four samples and compares `L` with the closed-form limit.
///
/// `φ(t) = t` on the separating family and `φ(y) = e^{−2πy}` on the
/// non-separating one.
pub fn run_sweep(grid: &SweepGrid, family: &Family, acc: AccuracyTarget) -> Result<SweepReport> {
    if grid.mode() != family.mode() {
        return Err(Error::domain(format!(
            "a {} grid cannot drive a {} family",
            grid.mode().name(),
            family.mode().name()
        )));
    }
    let eval = |&p: &f64| -> Result<(f64, f64)> {
        let v = match family {
            Family::Separating(f) => regularized_beta_separating(f, p, acc)?,
            Family::NonSeparating(f) => regularized_beta_nonseparating_q(f, p, acc)?,
        };
        Ok((p, v))
    };
    let samples: Vec<(f64, f64)> = match thread_cap()? {
        None => grid.points().par_iter().map(eval).collect::<Result<_>>()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?
            .install(|| grid.points().par_iter().map(eval).collect::<Result<_>>())?,
    };

    let rhs = match family {
        Family::Separating(f) => rhs_separating(f, acc)?,
        Family::NonSeparating(f) => rhs_nonseparating_q(f, acc)?,
    };
    let basis = |s: f64| match family {
        Family::Separating(_) => s,
        Family::NonSeparating(_) => (-2.0 * PI * s).exp(),
    };
    if samples.len() < FIT_POINTS {
        return Err(Error::Fit(format!("{} sample(s); the fit needs {FIT_POINTS}", samples.len())));
    }
    let tail = &samples[samples.len() - FIT_POINTS..];
    let xs: Vec<f64> = tail.iter().map(|&(s, _)| basis(s)).collect();
    let ys: Vec<f64> = tail.iter().map(|&(_, v)| v).collect();
    let (limit, slope) = fit_line(&xs, &ys)?;

    let estimated_order = match family {
        Family::Separating(_) => log_log_slope(&samples, limit)?,
        Family::NonSeparating(_) => {
            let ss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - limit - slope * x).powi(2)).sum();
            (ss / FIT_POINTS as f64).sqrt()
        }
    };

    Ok(SweepReport {
        mode: grid.mode(),
        samples,
        extrapolated_limit: limit,
        closed_form_rhs: rhs,
        discrepancy: (limit - rhs).abs(),
        estimated_order,
    })
}

/// Least-squares `y ≈ a + b·x`; returns `(a, b)`.
fn fit_line(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let scale = xs.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let resolved = sxx.is_finite() && sxx > (1e-12 * scale).powi(2);
    if !resolved {
        return Err(Error::Fit("fit abscissae are (numerically) coincident".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    Ok((my - b * mx, b))
}

/// Slope of `log|v − L|` against `log s` over the samples with `v ≠ L`.
fn log_log_slope(samples: &[(f64, f64)], limit: f64) -> Result<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        samples.iter().filter(|&&(_, v)| v != limit).map(|&(s, v)| (s.ln(), (v - limit).abs().ln())).unzip();
    if xs.len() < 2 {
        return Err(Error::Fit("too few samples away from the limit to estimate an order".into()));
    }
    Ok(fit_line(&xs, &ys)?.1)
}
