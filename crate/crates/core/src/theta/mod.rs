//! Dedekind eta, the genus-one odd theta function and genus-two theta
//! constants with half-integer characteristics.
//!
//! Every evaluator takes an [`AccuracyTarget`] and certifies the absolute
//! truncation error of the returned value against it. Lattice sums run over
//! square boxes in increasing `‖n‖∞` shells with a fixed intra-shell order,
//! so repeated runs on one platform are bit-identical.

mod eta;
mod genus1;
mod genus2;
mod tail;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eta::log_abs_eta;
pub use genus1::{theta_char_genus1, theta_odd_genus1};
pub use genus2::{even_characteristics, odd_characteristics, theta_char_genus2, truncation_radius};

pub(crate) use eta::log_abs_eta_raw;
pub(crate) use genus1::theta_odd_genus1_raw;
pub(crate) use genus2::theta_char_genus2_raw;

/// Smallest imaginary part accepted by [`log_abs_eta`].
pub const ETA_MIN_IM: f64 = 0.05;

/// Absolute upper limit on any truncation radius.
pub const RADIUS_LIMIT: usize = 256;

/// A point of the complex upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    re: f64,
    im: f64,
}

impl UpperHalfPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::domain(format!("non-finite modulus {re} + {im}i")));
        }
        if im <= 0.0 {
            return Err(Error::domain(format!("modulus {re} + {im}i is not in the upper half plane")));
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(w: Complex64) -> Result<Self> {
        Self::new(w.re, w.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `ω ↦ ω + k`.
    pub fn translate(&self, k: f64) -> Self {
        Self { re: self.re + k, im: self.im }
    }

    /// `ω ↦ −1/ω`.
    pub fn invert(&self) -> Self {
        let w = -1.0 / self.to_complex();
        Self { re: w.re, im: w.im }
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// A point of the degree-two Siegel upper half space: a symmetric complex
/// 2×2 matrix with positive-definite imaginary part.
///
/// The off-diagonal entry is stored once, so the matrix is symmetric by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiegelPoint2 {
    d11: Complex64,
    d12: Complex64,
    d22: Complex64,
}

impl SiegelPoint2 {
    pub fn new(d11: Complex64, d12: Complex64, d22: Complex64) -> Result<Self> {
        let finite = [d11, d12, d22].iter().all(|c| c.re.is_finite() && c.im.is_finite());
        if !finite {
            return Err(Error::domain("non-finite period matrix entry"));
        }
        let det = d11.im * d22.im - d12.im * d12.im;
        if d11.im <= 0.0 || d22.im <= 0.0 || det <= 0.0 {
            return Err(Error::domain(format!(
                "imaginary part [[{}, {}], [{}, {}]] is not positive definite",
                d11.im, d12.im, d12.im, d22.im
            )));
        }
        Ok(Self { d11, d12, d22 })
    }

    pub fn diagonal(w1: UpperHalfPoint, w2: UpperHalfPoint) -> Self {
        Self { d11: w1.to_complex(), d12: Complex64::new(0.0, 0.0), d22: w2.to_complex() }
    }

    /// Entry `(i, j)` with `i, j ∈ {0, 1}`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match (i, j) {
            (0, 0) => self.d11,
            (1, 1) => self.d22,
            (0, 1) | (1, 0) => self.d12,
            _ => panic!("index ({i}, {j}) out of range for a 2x2 matrix"),
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.d11, self.d12], [self.d12, self.d22]]
    }

    pub fn det_im(&self) -> f64 {
        self.d11.im * self.d22.im - self.d12.im * self.d12.im
    }

    /// Eigenvalues of the imaginary part, smallest first.
    pub fn im_eigenvalues(&self) -> (f64, f64) {
        let (p, r, s) = (self.d11.im, self.d12.im, self.d22.im);
        let mean = 0.5 * (p + s);
        let rad = (0.5 * (p - s)).hypot(r);
        // Product form for the small root avoids cancellation.
        let large = mean + rad;
        (self.det_im() / large, large)
    }

    pub fn lambda_min(&self) -> f64 {
        self.im_eigenvalues().0
    }

    /// Swaps the two coordinates, `Ω ↦ ᵗP Ω P` with `P` the transposition.
    pub fn swapped(&self) -> Self {
        Self { d11: self.d22, d12: self.d12, d22: self.d11 }
    }
}

/// One half-integer characteristic entry: `0` or `½`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharEntry {
    Zero,
    Half,
}

impl CharEntry {
    pub fn value(self) -> f64 {
        match self {
            CharEntry::Zero => 0.0,
            CharEntry::Half => 0.5,
        }
    }

    fn bit(self) -> u8 {
        match self {
            CharEntry::Zero => 0,
            CharEntry::Half => 1,
        }
    }

    /// Parses `0` or `0.5`.
    pub fn from_f64(x: f64) -> Option<Self> {
        if x == 0.0 {
            Some(CharEntry::Zero)
        } else if x == 0.5 {
            Some(CharEntry::Half)
        } else {
            None
        }
    }
}

/// A genus-two theta characteristic `α = (a, b)` with `a, b ∈ {0, ½}²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThetaChar2 {
    pub a: [CharEntry; 2],
    pub b: [CharEntry; 2],
}

impl ThetaChar2 {
    pub const fn new(a: [CharEntry; 2], b: [CharEntry; 2]) -> Self {
        Self { a, b }
    }

    /// All sixteen characteristics, lexicographic on `(a₁, a₂, b₁, b₂)`.
    pub fn all() -> impl Iterator<Item = ThetaChar2> {
        (0u8..16).map(|bits| {
            let h = |k: u8| {
                if bits >> (3 - k) & 1 == 1 {
                    CharEntry::Half
                } else {
                    CharEntry::Zero
                }
            };
            ThetaChar2::new([h(0), h(1)], [h(2), h(3)])
        })
    }

    /// `(−1)^{4 a·ᵗb}`.
    pub fn parity(&self) -> i8 {
        let dot = self.a[0].bit() * self.b[0].bit() + self.a[1].bit() * self.b[1].bit();
        if dot.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn a_values(&self) -> [f64; 2] {
        [self.a[0].value(), self.a[1].value()]
    }

    pub fn b_values(&self) -> [f64; 2] {
        [self.b[0].value(), self.b[1].value()]
    }

    /// The characteristic with its two coordinates exchanged.
    pub fn swapped(&self) -> Self {
        Self::new([self.a[1], self.a[0]], [self.b[1], self.b[0]])
    }
}

impl fmt::Display for ThetaChar2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2] = self.a_values();
        let [b1, b2] = self.b_values();
        write!(f, "[({a1},{a2}),({b1},{b2})]")
    }
}

/// Requested absolute accuracy and the hard cap on truncation radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyTarget {
    eps_abs: f64,
    max_radius: usize,
}

impl AccuracyTarget {
    pub const DEFAULT_EPS: f64 = 1e-12;
    pub const DEFAULT_MAX_RADIUS: usize = 64;

    pub fn new(eps_abs: f64, max_radius: usize) -> Result<Self> {
        if !(eps_abs > 0.0 && eps_abs <= 1e-3) {
            return Err(Error::domain(format!("eps_abs = {eps_abs:e} must lie in (0, 1e-3]")));
        }
        if !(4..=RADIUS_LIMIT).contains(&max_radius) {
            return Err(Error::domain(format!("max_radius = {max_radius} must lie in [4, {RADIUS_LIMIT}]")));
        }
        Ok(Self { eps_abs, max_radius })
    }

    pub fn eps_abs(&self) -> f64 {
        self.eps_abs
    }

    pub fn max_radius(&self) -> usize {
        self.max_radius
    }
}

impl Default for AccuracyTarget {
    fn default() -> Self {
        Self { eps_abs: Self::DEFAULT_EPS, max_radius: Self::DEFAULT_MAX_RADIUS }
    }
}
