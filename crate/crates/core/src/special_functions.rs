//! Complex Gamma function and the trigonometric factor of the reflection
//! amplitude.
//!
//! The Gamma function uses the Lanczos approximation (g = 7, nine
//! coefficients) on the half plane `Re z >= 1/2` and the reflection formula
//! elsewhere. `log_complex_gamma` continues to the left half plane by upward
//! recurrence instead, which keeps it on the standard branch (cut along the
//! negative real axis, `ln Γ(z + 1) = ln Γ(z) + ln z`).

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

/// Distance to a pole of Γ below which results are flagged.
pub const POLE_THRESHOLD: f64 = 1e-6;

/// Smallest |k| accepted by the amplitude formulas.
pub const K_MIN: f64 = 1e-8;

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// ln(sqrt(2π))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SpecialError {
    #[error("argument is exactly at the Gamma pole z = {0}")]
    ExactPole(i64),
    #[error("|k| = {0:e} is below k_min = {K_MIN:e}")]
    BelowKMin(f64),
}

/// Value of Γ(z) together with pole-proximity information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaResult {
    pub value: Complex64,
    /// The non-positive integer pole closest to z, when closer than
    /// [`POLE_THRESHOLD`].
    pub nearest_pole: Option<i64>,
    /// Distance to `nearest_pole`; zero when no pole is flagged.
    pub pole_distance: f64,
}

/// Returns the nearby pole and its distance, or an error for an exact hit.
fn pole_proximity(z: Complex64) -> Result<Option<(i64, f64)>, SpecialError> {
    let nearest = z.re.round();
    if nearest > 0.0 {
        return Ok(None);
    }
    let dist = (z - Complex64::new(nearest, 0.0)).norm();
    if dist == 0.0 {
        return Err(SpecialError::ExactPole(nearest as i64));
    }
    if dist < POLE_THRESHOLD {
        Ok(Some((nearest as i64, dist)))
    } else {
        Ok(None)
    }
}

/// sin(πz) with the real part reduced to [-1/2, 1/2] first, so that the
/// zeros at the integers are reproduced without cancellation.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let (s, c) = (PI * r).sin_cos();
    let v = Complex64::new(s * (PI * z.im).cosh(), c * (PI * z.im).sinh());
    if n.rem_euclid(2.0) == 1.0 {
        -v
    } else {
        v
    }
}

/// cos(πz), reduced the same way as [`sin_pi`].
pub fn cos_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let (s, c) = (PI * r).sin_cos();
    let v = Complex64::new(c * (PI * z.im).cosh(), -s * (PI * z.im).sinh());
    if n.rem_euclid(2.0) == 1.0 {
        -v
    } else {
        v
    }
}

fn lanczos_sum(zm1: Complex64) -> Complex64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, &c)| {
            acc + c / (zm1 + (i + 1) as f64)
        })
}

// Re z >= 1/2 only.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI + lanczos_sum(zm1).ln()
}

fn gamma_right(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    ((zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI).exp() * lanczos_sum(zm1)
}

/// Γ(z) for complex z.
///
/// Exact non-positive integers are rejected; arguments within
/// [`POLE_THRESHOLD`] of a pole are evaluated and flagged.
pub fn complex_gamma(z: Complex64) -> Result<GammaResult, SpecialError> {
    let pole = pole_proximity(z)?;
    let value = if z.re < 0.5 {
        Complex64::new(PI, 0.0) / (sin_pi(z) * gamma_right(1.0 - z))
    } else {
        gamma_right(z)
    };
    Ok(GammaResult {
        value,
        nearest_pole: pole.map(|(p, _)| p),
        pole_distance: pole.map_or(0.0, |(_, d)| d),
    })
}

/// ln Γ(z) on the standard branch: analytic off the negative real axis and
/// real for positive real z.
pub fn log_complex_gamma(z: Complex64) -> Result<Complex64, SpecialError> {
    pole_proximity(z)?;
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let correction: Complex64 = (0..shift).map(|j| (z + j as f64).ln()).sum();
    Ok(ln_gamma_right(z + shift as f64) - correction)
}

/// cos(w) = exp(s)·m with s = |Im w|; returns (m, s).
fn cos_scaled(w: Complex64) -> (Complex64, f64) {
    let s = w.im.abs();
    let (sn, c) = w.re.sin_cos();
    let p = (-w.im - s).exp();
    let q = (w.im - s).exp();
    (Complex64::new(c * (p + q) / 2.0, sn * (p - q) / 2.0), s)
}

fn sin_scaled(w: Complex64) -> (Complex64, f64) {
    let s = w.im.abs();
    let (sn, c) = w.re.sin_cos();
    let p = (-w.im - s).exp();
    let q = (w.im - s).exp();
    (Complex64::new(sn * (p + q) / 2.0, -c * (p - q) / 2.0), s)
}

/// (sinh, cosh) of w, both as exp(s)·m with s = |Re w|.
fn sinh_cosh_scaled(w: Complex64) -> (Complex64, Complex64, f64) {
    let s = w.re.abs();
    let u = (w.re - s).exp();
    let v = (-w.re - s).exp();
    let (sh, ch) = ((u - v) / 2.0, (u + v) / 2.0);
    let (sy, cy) = w.im.sin_cos();
    (Complex64::new(sh * cy, ch * sy), Complex64::new(ch * cy, sh * sy), s)
}

/// The factor relating the reflection and transmission amplitudes,
///
/// `cos(πA) sinh(πB) / cosh(πk) + i sin(πA) cosh(πB) / sinh(πk)`,
///
/// so that `r_left = t · safe_trig_ratio(A, B, k)` and
/// `r_right = t · safe_trig_ratio(A, -B, k)`.
///
/// Every hyperbolic and trigonometric factor is carried as a mantissa and
/// an exponent so that large |Im A|, |Re B| or |k| cannot overflow the
/// intermediate products. `k` may be negative (time-reversed channel).
pub fn safe_trig_ratio(a: Complex64, b: Complex64, k: f64) -> Result<Complex64, SpecialError> {
    if !(k.abs() >= K_MIN) {
        return Err(SpecialError::BelowKMin(k));
    }
    // Integer Re A must give exact zeros of sin(πA).
    let n = a.re.round();
    let parity = if n.rem_euclid(2.0) == 1.0 { -1.0 } else { 1.0 };
    let a_red = Complex64::new(PI * (a.re - n), PI * a.im);
    let (cos_a, s_a) = cos_scaled(a_red);
    let (sin_a, _) = sin_scaled(a_red);
    let (sinh_b, cosh_b, s_b) = sinh_cosh_scaled(PI * b);

    let ak = PI * k.abs();
    let decay = (-2.0 * ak).exp();
    // 1/cosh(πk) = 2 e^{-π|k|} / (1 + e^{-2π|k|})
    let inv_cosh = 2.0 / (1.0 + decay);
    // 1/sinh(πk) = sign(k) · 2 e^{-π|k|} / (1 - e^{-2π|k|})
    let inv_sinh = k.signum() * 2.0 / -(-2.0 * ak).exp_m1();

    let scale = (s_a + s_b - ak).exp() * parity;
    let first = cos_a * sinh_b * inv_cosh;
    let second = Complex64::i() * sin_a * cosh_b * inv_sinh;
    Ok((first + second) * scale)
}
