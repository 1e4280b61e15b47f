//! Closed-form transmission and reflection amplitudes of the Scarf II
//! potential at real (signed) wavenumber.
//!
//! ```text
//! t(k) = Γ(−A−ik) Γ(1+A−ik) Γ(1/2−iB−ik) Γ(1/2+iB−ik)
//!        ─────────────────────────────────────────────
//!              Γ(−ik) Γ(1−ik) Γ²(1/2−ik)
//! r_left(k)  = t(k) · ρ(A,  B, k)
//! r_right(k) = t(k) · ρ(A, −B, k)
//! ```
//!
//! with ρ the factor computed by [`safe_trig_ratio`]. Plane waves are
//! referenced to x = 0: left incidence means `e^{ikx} + r_left e^{−ikx}` for
//! x → −∞ and `t e^{ikx}` for x → +∞. Negative k gives the time-reversed
//! amplitudes.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::scarf_model::ScarfParameters;
use crate::special_functions::{log_complex_gamma, safe_trig_ratio, SpecialError, K_MIN, POLE_THRESHOLD};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ScatteringError {
    #[error("|k| = {0:e} is below k_min")]
    KTooSmall(f64),
    #[error("k = {k} sits exactly on a pole of numerator Gamma factor {factor}")]
    ExactSingularity { factor: usize, k: f64 },
    #[error("energy must be at least k_min², got {0:e}")]
    EnergyTooSmall(f64),
    #[error("Gamma evaluation failed: {0}")]
    Gamma(#[from] SpecialError),
}

/// t at one wavenumber, with the index (0..4) of the numerator Gamma factor
/// that lies within the pole threshold, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlaggedAmplitude {
    pub value: Complex64,
    pub singular: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub t: Complex64,
    pub r_left: Complex64,
    pub r_right: Complex64,
    pub singular: Option<usize>,
}

impl ScatteringAmplitudes {
    pub fn transmitivity(&self) -> f64 {
        self.t.norm_sqr()
    }
}

/// Transmitivities and reflectivities at energy E in both channels:
/// `fwd` at k = +√E, `rev` at k = −√E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(rename = "T_fwd")]
    pub t_fwd: f64,
    #[serde(rename = "T_rev")]
    pub t_rev: f64,
    #[serde(rename = "R_left_fwd")]
    pub r_left_fwd: f64,
    #[serde(rename = "R_right_fwd")]
    pub r_right_fwd: f64,
    #[serde(rename = "R_left_rev")]
    pub r_left_rev: f64,
    #[serde(rename = "R_right_rev")]
    pub r_right_rev: f64,
    pub singular: bool,
}

/// The constant parts c of the four numerator arguments `c − ik`.
fn numerator_offsets(a: Complex64, b: Complex64) -> [Complex64; 4] {
    let i = Complex64::i();
    [-a, 1.0 + a, 0.5 - i * b, 0.5 + i * b]
}

fn check_k(k: Complex64) -> Result<(), ScatteringError> {
    if !(k.norm() >= K_MIN) {
        return Err(ScatteringError::KTooSmall(k.norm()));
    }
    Ok(())
}

/// t at complex k. Used for pole confirmation off the real axis.
pub fn transmission_at(a: Complex64, b: Complex64, k: Complex64) -> Result<FlaggedAmplitude, ScatteringError> {
    check_k(k)?;
    let ik = Complex64::i() * k;
    let mut log_t = Complex64::new(0.0, 0.0);
    let mut singular = None;
    for (idx, c) in numerator_offsets(a, b).into_iter().enumerate() {
        let z = c - ik;
        match log_complex_gamma(z) {
            Ok(l) => log_t += l,
            Err(SpecialError::ExactPole(_)) => return Err(ScatteringError::ExactSingularity { factor: idx, k: k.re }),
            Err(e) => return Err(e.into()),
        }
        let nearest = z.re.round();
        if singular.is_none() && nearest <= 0.0 && (z - nearest).norm() < POLE_THRESHOLD {
            singular = Some(idx);
        }
    }
    log_t -= log_complex_gamma(-ik)?;
    log_t -= log_complex_gamma(1.0 - ik)?;
    log_t -= 2.0 * log_complex_gamma(0.5 - ik)?;
    Ok(FlaggedAmplitude {
        value: log_t.exp(),
        singular,
    })
}

pub fn transmission_amplitude(p: &ScarfParameters, k: f64) -> Result<FlaggedAmplitude, ScatteringError> {
    transmission_at(p.a(), p.b(), Complex64::new(k, 0.0))
}

/// (r_left, r_right) at signed real k.
pub fn reflection_amplitudes(p: &ScarfParameters, k: f64) -> Result<(Complex64, Complex64), ScatteringError> {
    let amps = amplitudes(p, k)?;
    Ok((amps.r_left, amps.r_right))
}

pub fn amplitudes(p: &ScarfParameters, k: f64) -> Result<ScatteringAmplitudes, ScatteringError> {
    let t = transmission_amplitude(p, k)?;
    let bracket_left = safe_trig_ratio(p.a(), p.b(), k).map_err(|_| ScatteringError::KTooSmall(k.abs()))?;
    let bracket_right = safe_trig_ratio(p.a(), -p.b(), k).map_err(|_| ScatteringError::KTooSmall(k.abs()))?;
    Ok(ScatteringAmplitudes {
        k,
        t: t.value,
        r_left: t.value * bracket_left,
        r_right: t.value * bracket_right,
        singular: t.singular,
    })
}

pub fn observables(p: &ScarfParameters, energy: f64) -> Result<Observables, ScatteringError> {
    if !(energy >= K_MIN * K_MIN) {
        return Err(ScatteringError::EnergyTooSmall(energy));
    }
    let k = energy.sqrt();
    let fwd = amplitudes(p, k)?;
    let rev = amplitudes(p, -k)?;
    Ok(Observables {
        energy,
        t_fwd: fwd.t.norm_sqr(),
        t_rev: rev.t.norm_sqr(),
        r_left_fwd: fwd.r_left.norm_sqr(),
        r_right_fwd: fwd.r_right.norm_sqr(),
        r_left_rev: rev.r_left.norm_sqr(),
        r_right_rev: rev.r_right.norm_sqr(),
        singular: fwd.singular.is_some() || rev.singular.is_some(),
    })
}

/// Signed real wavenumbers at which some numerator Gamma factor has a pole,
/// i.e. the spectral singularities of this instance in either channel.
///
/// A factor `Γ(c − ik)` blows up on the real k axis only when Re c is a
/// non-positive integer; the pole is then at k = Im c.
pub fn real_axis_poles(p: &ScarfParameters) -> Vec<f64> {
    let mut out: Vec<f64> = numerator_offsets(p.a(), p.b())
        .into_iter()
        .filter(|c| {
            let n = c.re.round();
            n <= 0.0 && (c.re - n).abs() <= 1e-12 && c.im != 0.0
        })
        .map(|c| c.im)
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// All poles of the numerator factors with index j ≤ `max_order`, anywhere
/// in the complex k plane.
pub fn complex_poles(p: &ScarfParameters, max_order: u32) -> Vec<Complex64> {
    let mi = Complex64::new(0.0, -1.0);
    numerator_offsets(p.a(), p.b())
        .into_iter()
        .flat_map(|c| (0..=max_order).map(move |j| mi * (c + j as f64)))
        .collect()
}
