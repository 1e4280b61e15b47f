//! Spectral singularities and bound states of the parametrized Scarf II
//! potential, plus a numerical pole test on the transmission amplitude.
//!
//! With `A = −(m+1) + iα` and `B = β + i(n+1/2)` the factors
//! `Γ(1+A−ik) = Γ(−m + i(α−k))` and `Γ(1/2+iB−ik) = Γ(−n + i(β−k))` carry
//! all physical poles of t:
//!
//! * real α (β): a real-axis pole at k = α (β), a spectral singularity at
//!   E = α² (β²), seen at k > 0 in T(k) or at k < 0 in T(−k);
//! * α = iγ (β = iδ): poles at k = i(γ+m−M), M = 0, 1, … while positive,
//!   giving bound states E = −(γ+m−M)² (and likewise with δ, n, N).

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::analytic_scattering::{transmission_at, ScatteringError};
use crate::scarf_model::ScarfParameters;

/// Distances from the candidate used by [`confirm_pole`].
pub const POLE_PROBE_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Allowed relative deviation of successive |t| ratios from 10.
pub const POLE_RATIO_TOL: f64 = 0.2;

const PT_COLLAPSE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("k = {0} is neither real nor on the positive imaginary axis")]
    DomainError(Complex64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Visible in T(k), k = +√E.
    Forward,
    /// Visible in T(−k).
    TimeReversed,
    /// Both channels (PT-symmetric collapse).
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleSource {
    AlphaGammaFactor,
    BetaGammaFactor,
    BothFactors,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSingularityRecord {
    #[serde(rename = "E_star")]
    pub e_star: f64,
    pub k_star: f64,
    pub channel: Channel,
    pub source: PoleSource,
}

impl SpectralSingularityRecord {
    fn from_pole(k_star: f64, source: PoleSource) -> Self {
        Self {
            e_star: k_star * k_star,
            k_star,
            channel: if k_star > 0.0 {
                Channel::Forward
            } else {
                Channel::TimeReversed
            },
            source,
        }
    }

    /// Signed wavenumbers at which the singularity shows up.
    pub fn pole_wavenumbers(&self) -> Vec<f64> {
        match self.channel {
            Channel::Both => vec![self.k_star.abs(), -self.k_star.abs()],
            _ => vec![self.k_star],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundStateRecord {
    pub branch: Branch,
    pub index: u32,
    pub energy: f64,
    pub kappa: f64,
}

/// Both record kinds for a (possibly mixed) parameter set.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Spectrum {
    pub spectral_singularities: Vec<SpectralSingularityRecord>,
    pub bound_states: Vec<BoundStateRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleConfirmation {
    pub is_pole: bool,
    pub growth_exponent: f64,
    /// |t(ε_{i+1})| / |t(ε_i)| for the probe distances.
    pub ratios: [f64; 2],
}

fn branch_states(branch: Branch, offset: u32, gamma: f64) -> Vec<BoundStateRecord> {
    let top = gamma + offset as f64;
    (0u32..)
        .map(|idx| (idx, top - idx as f64))
        .take_while(|&(_, kappa)| kappa > 0.0)
        .map(|(index, kappa)| BoundStateRecord {
            branch,
            index,
            energy: -kappa * kappa,
            kappa,
        })
        .collect()
}

/// Spectral singularities and bound states for `A = −(m+1) + iα`,
/// `B = β + i(n+1/2)` with α, β each either real or purely imaginary.
/// Complex α or β with both parts nonzero contributes nothing on the axes.
pub fn enumerate_spectrum(m: u32, n: u32, alpha: Complex64, beta: Complex64) -> Spectrum {
    let mut out = Spectrum::default();
    let factors = [
        (alpha, m, PoleSource::AlphaGammaFactor, Branch::Plus),
        (beta, n, PoleSource::BetaGammaFactor, Branch::Minus),
    ];
    for (param, offset, source, branch) in factors {
        if param.im == 0.0 && param.re != 0.0 {
            out.spectral_singularities
                .push(SpectralSingularityRecord::from_pole(param.re, source));
        } else if param.re == 0.0 {
            out.bound_states.extend(branch_states(branch, offset, param.im));
        }
    }

    if let [a, b] = out.spectral_singularities[..] {
        if m == n && (a.k_star + b.k_star).abs() <= PT_COLLAPSE_TOL * a.k_star.abs().max(1.0) {
            let k = a.k_star.abs();
            out.spectral_singularities = vec![SpectralSingularityRecord {
                e_star: k * k,
                k_star: k,
                channel: Channel::Both,
                source: PoleSource::BothFactors,
            }];
        }
    }
    out.bound_states
        .sort_by(|x, y| x.energy.total_cmp(&y.energy).then(x.branch.cmp(&y.branch)));
    out
}

/// Spectral singularities for real α, β.
pub fn find_spectral_singularities(m: u32, n: u32, alpha: f64, beta: f64) -> Vec<SpectralSingularityRecord> {
    enumerate_spectrum(m, n, Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0)).spectral_singularities
}

/// Both bound-state branches for α = iγ, β = iδ, sorted by energy.
pub fn bound_states(m: u32, n: u32, gamma: f64, delta: f64) -> Result<Vec<BoundStateRecord>, SpectralError> {
    if !(gamma > 0.0 && delta > 0.0 && gamma.is_finite() && delta.is_finite()) {
        return Err(SpectralError::InvalidInput(format!(
            "gamma and delta must be positive, got {gamma}, {delta}"
        )));
    }
    let spectrum = enumerate_spectrum(m, n, Complex64::new(0.0, gamma), Complex64::new(0.0, delta));
    debug_assert!(spectrum.spectral_singularities.is_empty());
    Ok(spectrum.bound_states)
}

/// Probes |t| at distances 1e−2, 1e−3, 1e−4 from `k_candidate` along its
/// axis. A simple pole multiplies |t| by ≈ 10 per decade.
pub fn confirm_pole(p: &ScarfParameters, k_candidate: Complex64) -> Result<PoleConfirmation, SpectralError> {
    let direction = if k_candidate.im == 0.0 && k_candidate.re != 0.0 {
        Complex64::new(1.0, 0.0)
    } else if k_candidate.re == 0.0 && k_candidate.im > 0.0 {
        Complex64::new(0.0, 1.0)
    } else {
        return Err(SpectralError::DomainError(k_candidate));
    };
    let mut logs = [0.0; 3];
    for (slot, eps) in logs.iter_mut().zip(POLE_PROBE_STEPS) {
        let t = transmission_at(p.a(), p.b(), k_candidate + direction * eps)?;
        *slot = t.value.norm().ln();
    }
    let ratios = [(logs[1] - logs[0]).exp(), (logs[2] - logs[1]).exp()];
    let is_pole = ratios.iter().all(|r| (r / 10.0 - 1.0).abs() <= POLE_RATIO_TOL);

    // Least-squares slope of ln|t| against −ln ε.
    let xs = POLE_PROBE_STEPS.map(|e| -e.ln());
    let x_mean = xs.iter().sum::<f64>() / 3.0;
    let y_mean = logs.iter().sum::<f64>() / 3.0;
    let (num, den) = xs.iter().zip(&logs).fold((0.0, 0.0), |(n, d), (x, y)| {
        (n + (x - x_mean) * (y - y_mean), d + (x - x_mean).powi(2))
    });
    Ok(PoleConfirmation {
        is_pole,
        growth_exponent: num / den,
        ratios,
    })
}

/// Peak search in one channel around a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelCheck {
    pub peak_energy: f64,
    pub peak_transmitivity: f64,
    /// Largest transmitivity of the other channel on the same window.
    pub opposite_max: f64,
}

/// Scans T(±√E) on `points` energies spread evenly over `[E* − half_width,
/// E* + half_width]` (an even count keeps E* itself off the grid). For a
/// [`Channel::Both`] record the forward channel is scanned and the
/// time-reversed one reported as opposite.
pub fn scan_channel(
    p: &ScarfParameters,
    record: &SpectralSingularityRecord,
    half_width: f64,
    points: usize,
) -> Result<ChannelCheck, SpectralError> {
    if points < 2 || !(half_width > 0.0) || half_width >= record.e_star {
        return Err(SpectralError::InvalidInput("bad scan window".into()));
    }
    let sign = if record.channel == Channel::TimeReversed {
        -1.0
    } else {
        1.0
    };
    let lo = record.e_star - half_width;
    let step = 2.0 * half_width / (points - 1) as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    let mut opposite_max = 0.0f64;
    for i in 0..points {
        let e = lo + i as f64 * step;
        let k = e.sqrt();
        let own = transmission_at(p.a(), p.b(), Complex64::new(sign * k, 0.0))?
            .value
            .norm_sqr();
        let other = transmission_at(p.a(), p.b(), Complex64::new(-sign * k, 0.0))?
            .value
            .norm_sqr();
        if own > best.1 {
            best = (e, own);
        }
        opposite_max = opposite_max.max(other);
    }
    Ok(ChannelCheck {
        peak_energy: best.0,
        peak_transmitivity: best.1,
        opposite_max,
    })
}
