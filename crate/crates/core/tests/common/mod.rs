//! Extended-precision direct-sum oracles and shared input generators.
//!
//! The oracles share no code with the library: plain truncated sums and
//! products evaluated with 192-bit floats.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use deginv::theta::{CharEntry, SiegelPoint2, ThetaChar2, UpperHalfPoint};
use num_complex::Complex64;
use proptest::prelude::*;

const P: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

/// Terms with real exponent below this are far under double resolution.
const NEGLIGIBLE: f64 = -120.0;

struct Ctx {
    cc: Consts,
    pi: BigFloat,
}

impl Ctx {
    fn new() -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(P, RM);
        Self { cc, pi }
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, P)
    }

    /// `exp(re + i·im)` as a big complex pair.
    fn cexp(&mut self, re: &BigFloat, im: &BigFloat) -> (BigFloat, BigFloat) {
        let m = re.exp(P, RM, &mut self.cc);
        let c = im.cos(P, RM, &mut self.cc);
        let s = im.sin(P, RM, &mut self.cc);
        (m.mul(&c, P, RM), m.mul(&s, P, RM))
    }
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, P, RM)
}

fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, P, RM)
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, P, RM)
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().expect("decimal rendering of a finite value")
}

/// `log|η(ω)| = −π Im ω / 12 + Σ_{n=1}^{200} log|1 − qⁿ|`.
pub fn log_abs_eta(omega: UpperHalfPoint) -> f64 {
    let mut c = Ctx::new();
    let two_pi = mul(&c.f(2.0), &c.pi);
    let (qr, qi) = {
        let re = mul(&two_pi, &c.f(-omega.im()));
        let im = mul(&two_pi, &c.f(omega.re()));
        c.cexp(&re, &im)
    };
    let one = c.f(1.0);
    let (mut pr, mut pi) = (one.clone(), c.f(0.0));
    let mut sum = c.f(0.0);
    for _ in 0..200 {
        let nr = sub(&mul(&pr, &qr), &mul(&pi, &qi));
        let ni = add(&mul(&pr, &qi), &mul(&pi, &qr));
        pr = nr;
        pi = ni;
        let dr = sub(&one, &pr);
        let norm2 = add(&mul(&dr, &dr), &mul(&pi, &pi));
        let half_log = norm2.ln(P, RM, &mut c.cc).div(&c.f(2.0), P, RM);
        sum = add(&sum, &half_log);
    }
    let lead = mul(&c.pi, &c.f(omega.im())).div(&c.f(-12.0), P, RM);
    to_f64(&add(&lead, &sum))
}

/// `θ(z, ω) = Σ_{|n| ≤ 50} exp(πi (n+½)² ω + 2πi (n+½)(z+½))`.
pub fn theta_odd_genus1(z: Complex64, omega: UpperHalfPoint) -> Complex64 {
    theta_genus1(0.5, 0.5, z, omega)
}

/// Genus-one theta with characteristic `(a, b)`, summed over `|n| ≤ 50`.
pub fn theta_genus1(a: f64, b: f64, z: Complex64, omega: UpperHalfPoint) -> Complex64 {
    let mut c = Ctx::new();
    let (mut sr, mut si) = (c.f(0.0), c.f(0.0));
    for n in -50..=50_i64 {
        let k = c.f(n as f64 + a);
        let k2 = mul(&k, &k);
        // πi k² ω + 2πi k (z + b)
        let re = mul(&c.pi, &add(&mul(&k2, &c.f(-omega.im())), &mul(&mul(&c.f(-2.0), &k), &c.f(z.im))));
        if to_f64(&re) < NEGLIGIBLE {
            continue;
        }
        let shift = add(&c.f(z.re), &c.f(b));
        let im = mul(&c.pi, &add(&mul(&k2, &c.f(omega.re())), &mul(&mul(&c.f(2.0), &k), &shift)));
        let (tr, ti) = c.cexp(&re, &im);
        sr = add(&sr, &tr);
        si = add(&si, &ti);
    }
    Complex64::new(to_f64(&sr), to_f64(&si))
}

/// Genus-two theta with characteristic over the box `max(|n₁|, |n₂|) ≤ 40`.
pub fn theta_genus2(alpha: ThetaChar2, z: [Complex64; 2], omega: &SiegelPoint2) -> Complex64 {
    let mut c = Ctx::new();
    let [a1, a2] = alpha.a_values();
    let [b1, b2] = alpha.b_values();
    let w = omega.entries();
    let (mut sr, mut si) = (c.f(0.0), c.f(0.0));
    for n1 in -40..=40_i64 {
        for n2 in -40..=40_i64 {
            let v = [n1 as f64 + a1, n2 as f64 + a2];
            // cheap screen in doubles, exact evaluation below
            let quad_im = v[0] * v[0] * w[0][0].im + 2.0 * v[0] * v[1] * w[0][1].im + v[1] * v[1] * w[1][1].im;
            let lin_im = v[0] * z[0].im + v[1] * z[1].im;
            if -std::f64::consts::PI * (quad_im + 2.0 * lin_im) < NEGLIGIBLE {
                continue;
            }
            let v = [c.f(v[0]), c.f(v[1])];
            let two = c.f(2.0);
            let quad = |part: fn(&Complex64) -> f64, c: &Ctx| {
                add(
                    &add(
                        &mul(&mul(&v[0], &v[0]), &c.f(part(&w[0][0]))),
                        &mul(&mul(&two, &mul(&v[0], &v[1])), &c.f(part(&w[0][1]))),
                    ),
                    &mul(&mul(&v[1], &v[1]), &c.f(part(&w[1][1]))),
                )
            };
            let q_re = quad(|x| x.re, &c);
            let q_im = quad(|x| x.im, &c);
            let l_re = add(&mul(&v[0], &add(&c.f(z[0].re), &c.f(b1))), &mul(&v[1], &add(&c.f(z[1].re), &c.f(b2))));
            let l_im = add(&mul(&v[0], &c.f(z[0].im)), &mul(&v[1], &c.f(z[1].im)));
            // πi (quad + 2 lin)
            let re = mul(&c.pi, &add(&q_im, &mul(&two, &l_im))).neg();
            let im = mul(&c.pi, &add(&q_re, &mul(&two, &l_re)));
            let (tr, ti) = c.cexp(&re, &im);
            sr = add(&sr, &tr);
            si = add(&si, &ti);
        }
    }
    Complex64::new(to_f64(&sr), to_f64(&si))
}

pub fn all_characteristics() -> Vec<ThetaChar2> {
    let e = [CharEntry::Zero, CharEntry::Half];
    let mut out = Vec::new();
    for a1 in e {
        for a2 in e {
            for b1 in e {
                for b2 in e {
                    out.push(ThetaChar2::new([a1, a2], [b1, b2]));
                }
            }
        }
    }
    out
}

/// `(−1)^{4 a·b}` computed from the entries directly.
pub fn parity(alpha: &ThetaChar2) -> i8 {
    let [a1, a2] = alpha.a_values();
    let [b1, b2] = alpha.b_values();
    if ((4.0 * (a1 * b1 + a2 * b2)).round() as i64) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn uhp(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = UpperHalfPoint> {
    (re, im).prop_map(|(x, y)| UpperHalfPoint::new(x, y).unwrap())
}

pub fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(x, y)| Complex64::new(x, y))
}

/// Siegel points with `λ_min(Im Ω) ≥ 0.3`.
pub fn siegel() -> impl Strategy<Value = SiegelPoint2> {
    (complex(-0.5..0.5, 0.8..2.0), complex(-0.5..0.5, -0.3..0.3), complex(-0.5..0.5, 0.8..2.0))
        .prop_filter_map("λ_min ≥ 0.3", |(d11, d12, d22)| {
            SiegelPoint2::new(d11, d12, d22).ok().filter(|p| p.lambda_min() >= 0.3)
        })
}

pub fn characteristic() -> impl Strategy<Value = ThetaChar2> {
    (0..16usize).prop_map(|i| all_characteristics()[i])
}

pub fn entry_value(e: CharEntry) -> f64 {
    match e {
        CharEntry::Zero => 0.0,
        CharEntry::Half => 0.5,
    }
}
