//! Embedded property suite behind `deginv selftest`.
//!
//! Inputs are drawn from a fixed-seed generator, so every run checks the
//! same points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::invariants::{beta_via_lambda, proof_identities, thm_b_formula, GenusSplit};
use crate::modular::log_petersson_eta;
use crate::theta::{
    even_characteristics, odd_characteristics, theta_char_genus1, theta_char_genus2, AccuracyTarget, SiegelPoint2,
    ThetaChar2, UpperHalfPoint,
};

const SEED: u64 = 0x5eed_de61;

/// Group names, in the order they run.
pub const GROUPS: [&str; 6] = [
    "even-characteristic count",
    "odd vanishing",
    "splitting",
    "SL2 invariance",
    "consistency chain",
    "proof identities",
];

/// Parity function used by the even-count group; swappable for fault injection.
pub type ParityFn = fn(&ThetaChar2) -> i8;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    /// Largest residual seen, compared against the group's tolerance.
    pub worst_residual: f64,
    /// Set when a computation failed outright.
    pub error: Option<String>,
}

pub fn run() -> Vec<GroupResult> {
    run_with_parity(ThetaChar2::parity)
}

pub fn run_with_parity(parity: ParityFn) -> Vec<GroupResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let acc = AccuracyTarget::default();
    vec![
        group(GROUPS[0], 0.0, even_count(parity)),
        group(GROUPS[1], 1e-12, odd_vanishing(&mut rng, acc)),
        group(GROUPS[2], 1e-11, splitting(&mut rng, acc)),
        group(GROUPS[3], 1e-10, sl2_invariance(&mut rng, acc)),
        group(GROUPS[4], 0.0, consistency_chain()),
        group(GROUPS[5], 0.0, identities()),
    ]
}

fn group(name: &'static str, tol: f64, worst: crate::Result<f64>) -> GroupResult {
    match worst {
        Ok(w) => GroupResult { name, passed: w <= tol, worst_residual: w, error: None },
        Err(e) => GroupResult { name, passed: false, worst_residual: f64::INFINITY, error: Some(e.to_string()) },
    }
}

fn even_count(parity: ParityFn) -> crate::Result<f64> {
    let count = ThetaChar2::all().filter(|a| parity(a) == 1).count();
    let listed = even_characteristics().len();
    Ok((count as f64 - 10.0).abs().max((listed as f64 - 10.0).abs()))
}

fn random_uhp(rng: &mut ChaCha8Rng) -> UpperHalfPoint {
    UpperHalfPoint::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..2.0)).unwrap()
}

fn random_siegel(rng: &mut ChaCha8Rng) -> SiegelPoint2 {
    loop {
        let d11 = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0));
        let d22 = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0));
        let d12 = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
        if let Ok(p) = SiegelPoint2::new(d11, d12, d22) {
            if p.lambda_min() >= 0.3 {
                return p;
            }
        }
    }
}

const ZERO2: [Complex64; 2] = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

fn odd_vanishing(rng: &mut ChaCha8Rng, acc: AccuracyTarget) -> crate::Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let omega = random_siegel(rng);
        for alpha in odd_characteristics() {
            worst = worst.max(theta_char_genus2(alpha, ZERO2, &omega, acc)?.norm());
        }
    }
    Ok(worst)
}

fn splitting(rng: &mut ChaCha8Rng, acc: AccuracyTarget) -> crate::Result<f64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let (w1, w2) = (random_uhp(rng), random_uhp(rng));
        let omega = SiegelPoint2::diagonal(w1, w2);
        for alpha in ThetaChar2::all() {
            let whole = theta_char_genus2(alpha, ZERO2, &omega, acc)?;
            let f1 = theta_char_genus1(alpha.a[0], alpha.b[0], zero, w1, acc)?;
            let f2 = theta_char_genus1(alpha.a[1], alpha.b[1], zero, w2, acc)?;
            worst = worst.max((whole - f1 * f2).norm());
        }
    }
    Ok(worst)
}

fn sl2_invariance(rng: &mut ChaCha8Rng, acc: AccuracyTarget) -> crate::Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let start = random_uhp(rng);
        let mut w = start;
        for _ in 0..rng.gen_range(1..=5) {
            w = match rng.gen_range(0..3) {
                0 => w.translate(1.0),
                1 => w.translate(-1.0),
                _ => w.invert(),
            };
        }
        let a = log_petersson_eta(start, acc)?.log_norm;
        let b = log_petersson_eta(w, acc)?.log_norm;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn consistency_chain() -> crate::Result<f64> {
    let mut splits = Vec::new();
    for h1 in 1..=10 {
        for h2 in 1..=10 {
            splits.push(GenusSplit::separating(h1, h2)?);
        }
    }
    for h in 1..=10 {
        splits.push(GenusSplit::non_separating(h)?);
    }
    let bad = splits.iter().filter(|&&s| beta_via_lambda(s) != thm_b_formula(s)).count();
    Ok(bad as f64)
}

fn identities() -> crate::Result<f64> {
    let mut bad = 0;
    for h1 in 1..=20 {
        for h2 in 1..=20 {
            bad += proof_identities(GenusSplit::separating(h1, h2)?).iter().filter(|c| !c.holds()).count();
        }
    }
    for h in 1..=20 {
        bad += proof_identities(GenusSplit::non_separating(h)?).iter().filter(|c| !c.holds()).count();
    }
    Ok(bad as f64)
}
