//! Closed-form limits of φ, δ and β along one-node degenerations.
//!
//! Each limit statement has the shape
//!
//! ```text
//! lim [ X(M_t) + slope·log|τ| + log_log·log(−log|τ|) ]
//!     = phi·Φ + delta·Δ + green·g(a,b) + log_two_pi·log 2π
//! ```
//!
//! where `Φ` and `Δ` are `φ(M₁)+φ(M₂)`, `δ(M₁)+δ(M₂)` in the separating case and
//! `φ(M)`, `δ(M)` in the non-separating case. Coefficients are exact rationals.

use num_rational::Ratio;

use super::{log_two_pi, to_f64};
use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// How the surface degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusSplit {
    /// Two components of genera `h1, h2 ≥ 1` joined at a node; total genus `h1 + h2`.
    Separating { h1: u32, h2: u32 },
    /// A genus-`h` surface with two points identified; total genus `h + 1`.
    NonSeparating { h: u32 },
}

impl GenusSplit {
    pub fn separating(h1: u32, h2: u32) -> Result<Self> {
        if h1 == 0 || h2 == 0 {
            return Err(Error::domain(format!("component genera ({h1}, {h2}) must be ≥ 1")));
        }
        Ok(GenusSplit::Separating { h1, h2 })
    }

    pub fn non_separating(h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::domain("genus of the normalization must be ≥ 1"));
        }
        Ok(GenusSplit::NonSeparating { h })
    }

    /// Genus of the smooth fibres `M_t`.
    pub fn total_genus(&self) -> u32 {
        match *self {
            GenusSplit::Separating { h1, h2 } => h1 + h2,
            GenusSplit::NonSeparating { h } => h + 1,
        }
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, GenusSplit::Separating { .. })
    }
}

/// Values entering the right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitInputs {
    Separating { phi: [f64; 2], delta: [f64; 2] },
    NonSeparating { phi: f64, delta: f64, g_ab: f64 },
}

/// Exact coefficients of one limit statement (see module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitFormula {
    pub slope: Q,
    pub log_log: Q,
    pub phi: Q,
    pub delta: Q,
    pub green: Q,
    pub log_two_pi: Q,
}

/// A limit statement evaluated at concrete inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitValue {
    pub slope: f64,
    pub log_log_coeff: f64,
    pub limit: f64,
}

impl LimitFormula {
    fn zero() -> Self {
        let z = int(0);
        Self { slope: z, log_log: z, phi: z, delta: z, green: z, log_two_pi: z }
    }

    pub fn evaluate(&self, split: GenusSplit, inputs: &LimitInputs) -> Result<LimitValue> {
        let (phi, delta, green) = match (split, *inputs) {
            (GenusSplit::Separating { .. }, LimitInputs::Separating { phi, delta }) => {
                (phi[0] + phi[1], delta[0] + delta[1], 0.0)
            }
            (GenusSplit::NonSeparating { .. }, LimitInputs::NonSeparating { phi, delta, g_ab }) => (phi, delta, g_ab),
            _ => return Err(Error::domain("limit inputs do not match the degeneration mode")),
        };
        Ok(LimitValue {
            slope: to_f64(self.slope),
            log_log_coeff: to_f64(self.log_log),
            limit: to_f64(self.phi) * phi
                + to_f64(self.delta) * delta
                + to_f64(self.green) * green
                + to_f64(self.log_two_pi) * log_two_pi(),
        })
    }
}

/// Kawazumi–Zhang φ. Separating: slope `2h₁h₂/h`, limit `φ(M₁)+φ(M₂)`;
/// non-separating: slope `h/(6(h+1))`, limit `φ(M) − 5h/(3(h+1))·g(a,b)`.
pub fn thm_a_formula(split: GenusSplit) -> LimitFormula {
    let mut f = LimitFormula::zero();
    f.phi = int(1);
    match split {
        GenusSplit::Separating { h1, h2 } => {
            let (h1, h2) = (h1 as i64, h2 as i64);
            f.slope = q(2 * h1 * h2, h1 + h2);
        }
        GenusSplit::NonSeparating { h } => {
            let h = h as i64;
            f.slope = q(h, 6 * (h + 1));
            f.green = -q(5 * h, 3 * (h + 1));
        }
    }
    f
}

/// Wentworth's limits for Faltings' δ.
pub fn wentworth_delta_formula(split: GenusSplit) -> LimitFormula {
    let mut f = LimitFormula::zero();
    f.delta = int(1);
    match split {
        GenusSplit::Separating { h1, h2 } => {
            let (h1, h2) = (h1 as i64, h2 as i64);
            f.slope = q(4 * h1 * h2, h1 + h2);
        }
        GenusSplit::NonSeparating { h } => {
            let h = h as i64;
            f.slope = q(4 * h + 3, 3 * (h + 1));
            f.log_log = int(6);
            f.green = -q(2 * (2 * h - 3), 3 * (h + 1));
            f.log_two_pi = int(-2);
        }
    }
    f
}

/// Hain–Reed β, stated directly.
pub fn thm_b_formula(split: GenusSplit) -> LimitFormula {
    let mut f = LimitFormula::zero();
    match split {
        GenusSplit::Separating { h1, h2 } => {
            let (h1, h2) = (h1 as i64, h2 as i64);
            let h = h1 + h2;
            f.slope = int(4 * h1 * h2);
            f.phi = q(2 * (h - 1), 3);
            f.delta = q(2 * h + 1, 3);
            f.log_two_pi = -q((8 * h + 4) * h, 3);
        }
        GenusSplit::NonSeparating { h } => {
            let h = h as i64;
            f.slope = int(h + 1);
            f.log_log = int(2 * (2 * h + 3));
            f.phi = q(2 * h, 3);
            f.delta = q(2 * h + 3, 3);
            f.green = int(-2 * (h - 1));
            f.log_two_pi = -(q(8 * h * (h + 3), 3) + int(6));
        }
    }
    f
}

/// Coefficients of `λ = c_φ·φ + c_δ·δ + c_{2π}·log 2π` in genus `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaCoefficients {
    pub phi: Q,
    pub delta: Q,
    pub log_two_pi: Q,
}

pub fn lambda_coefficients(h: u32) -> Result<LambdaCoefficients> {
    if h == 0 {
        return Err(Error::domain("genus must be at least 1"));
    }
    let h = h as i64;
    Ok(LambdaCoefficients { phi: q(h - 1, 6 * (2 * h + 1)), delta: q(1, 12), log_two_pi: -q(h, 3) })
}

/// The β limit obtained by pushing the φ and δ limits through `β = (8h+4)λ`,
/// with `h` the genus of `M_t`.
pub fn beta_via_lambda(split: GenusSplit) -> LimitFormula {
    let h = split.total_genus();
    let lam = lambda_coefficients(h).expect("total genus is at least 2");
    let scale = int(8 * h as i64 + 4);
    let a = thm_a_formula(split);
    let w = wentworth_delta_formula(split);
    LimitFormula {
        slope: scale * (lam.phi * a.slope + lam.delta * w.slope),
        log_log: scale * (lam.phi * a.log_log + lam.delta * w.log_log),
        phi: scale * (lam.phi * a.phi + lam.delta * w.phi),
        delta: scale * (lam.phi * a.delta + lam.delta * w.delta),
        green: scale * (lam.phi * a.green + lam.delta * w.green),
        log_two_pi: scale * (lam.phi * a.log_two_pi + lam.delta * w.log_two_pi + lam.log_two_pi),
    }
}

pub fn thm_a_limit(split: GenusSplit, inputs: &LimitInputs) -> Result<LimitValue> {
    thm_a_formula(split).evaluate(split, inputs)
}

pub fn wentworth_delta_limit(split: GenusSplit, inputs: &LimitInputs) -> Result<LimitValue> {
    wentworth_delta_formula(split).evaluate(split, inputs)
}

pub fn thm_b_limit(split: GenusSplit, inputs: &LimitInputs) -> Result<LimitValue> {
    thm_b_formula(split).evaluate(split, inputs)
}

/// One exact coefficient identity from the asymptotic analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: Q,
    pub rhs: Q,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The coefficient identities behind the φ asymptotics, for the given genera.
///
/// Separating (`h = h₁ + h₂`): the limiting `(2,2)`-forms integrate to `2 − 2h`,
/// and the four blocks' `log|τ|` coefficients add up to `−2h₁h₂/h`.
/// Non-separating (genus `h` normalization): the Euler-characteristic identity
/// and the `log|τ|` and `g(a,b)` coefficient identities.
pub fn proof_identities(split: GenusSplit) -> Vec<IdentityCheck> {
    match split {
        GenusSplit::Separating { h1, h2 } => {
            let (h1, h2) = (h1 as i64, h2 as i64);
            let h = h1 + h2;
            let hh = h * h;
            let block1 = -q(2 * h2 * (2 * h - h2), hh) + int(2 - 2 * h1);
            let block2 = -q(2 * h1 * (2 * h - h1), hh) + int(2 - 2 * h2);
            let cross = q(2 * h1 * h2, hh);
            vec![
                IdentityCheck { name: "separating-euler", lhs: block1 + block2 + cross + cross, rhs: int(2 - 2 * h) },
                IdentityCheck {
                    name: "separating-log-tau",
                    lhs: q(h2 * h2, hh) * block1 + q(h1 * h1, hh) * block2 - int(2) * q(h1 * h2, hh) * cross,
                    rhs: -q(2 * h1 * h2, h),
                },
            ]
        }
        GenusSplit::NonSeparating { h } => {
            let h = h as i64;
            let hp2 = (h + 1) * (h + 1);
            let nn = -q(4 * h + 2, hp2) + int(2 - 2 * h);
            let nc = q(2 * h, hp2);
            let cc = q(2 * h * (h + 2), hp2);
            let combo = |base: Q| base * nn - int(2) * base * int(h) * nc - base * int(h * h) * cc;
            vec![
                IdentityCheck { name: "non-separating-euler", lhs: nn + nc + nc - cc, rhs: int(2 - 2 * (h + 1)) },
                IdentityCheck { name: "non-separating-log-tau", lhs: combo(q(1, 12 * hp2)), rhs: -q(h, 6 * (h + 1)) },
                IdentityCheck { name: "non-separating-green", lhs: combo(q(5, 6 * hp2)), rhs: -q(5 * h, 3 * (h + 1)) },
            ]
        }
    }
}
