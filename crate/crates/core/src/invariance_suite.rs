//! Executable form of the reflectivity/transmitivity (in)variance table.
//!
//! | class                | R_left vs R_right | T_left vs T_right | R(−k) vs R(k)              | T(−k) vs T(k) |
//! |----------------------|-------------------|-------------------|----------------------------|---------------|
//! | Hermitian            | =                 | =                 | =                          | =             |
//! | P-symmetric          | =                 | =                 | ≠                          | ≠             |
//! | general non-Hermitian| ≠                 | =                 | ≠                          | ≠             |
//! | PT-symmetric         | ≠                 | =                 | R_left(−k) = R_right(k)    | =             |
//!
//! Each property is measured as the largest normalized difference
//! `|a − b| / (1 + max(a, b))` over a k-grid and both channels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::analytic_scattering::{self, real_axis_poles, ScatteringError};
use crate::numeric_oracle::{self, OracleError, SampledPotential};
use crate::scarf_model::{HamiltonianClass, ScarfParameters};
use crate::special_functions::K_MIN;

pub const HOLD_TOL_ANALYTIC: f64 = 1e-8;
pub const HOLD_TOL_ORACLE: f64 = 1e-5;
pub const FAIL_MARGIN: f64 = 1e-3;
/// Grid points closer than this to a known spectral singularity are skipped.
pub const SINGULARITY_EXCLUSION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Property {
    #[serde(rename = "R_lr_equal")]
    RLrEqual,
    #[serde(rename = "T_lr_equal")]
    TLrEqual,
    #[serde(rename = "R_k_even")]
    RKEven,
    #[serde(rename = "T_k_even")]
    TKEven,
    #[serde(rename = "R_pt_cross")]
    RPtCross,
    #[serde(rename = "T_k_even_pt")]
    TKEvenPt,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::RLrEqual,
        Property::TLrEqual,
        Property::RKEven,
        Property::TKEven,
        Property::RPtCross,
        Property::TKEvenPt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::RLrEqual => "R_lr_equal",
            Property::TLrEqual => "T_lr_equal",
            Property::RKEven => "R_k_even",
            Property::TKEven => "T_k_even",
            Property::RPtCross => "R_pt_cross",
            Property::TKEvenPt => "T_k_even_pt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Error)]
pub enum InvarianceError {
    #[error("{} violation {violation:e} lies between hold and fail thresholds", property.name())]
    Inconclusive { property: Property, violation: f64 },
    #[error("grid point k = {0} is flagged singular")]
    SingularGridPoint(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// What the report is computed from.
#[derive(Debug, Clone, Copy)]
pub enum ReportSource<'a> {
    Analytic(&'a ScarfParameters),
    Sampled(&'a SampledPotential),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub class_tested: HamiltonianClass,
    pub grid: Vec<f64>,
    /// Requested grid points dropped for lying near a spectral singularity.
    pub excluded: Vec<f64>,
    pub hold_tol: f64,
    pub fail_margin: f64,
    pub max_violation: BTreeMap<Property, f64>,
    pub verdicts: BTreeMap<Property, Verdict>,
}

/// Expected verdicts for a class; properties outside its row are
/// `NotApplicable`.
pub fn expected_row(class: HamiltonianClass) -> BTreeMap<Property, Verdict> {
    use Property::*;
    use Verdict::*;
    let row: &[(Property, Verdict)] = match class {
        HamiltonianClass::Hermitian => &[(RLrEqual, Holds), (TLrEqual, Holds), (RKEven, Holds), (TKEven, Holds)],
        HamiltonianClass::PSymmetric => &[(RLrEqual, Holds), (TLrEqual, Holds), (RKEven, Fails), (TKEven, Fails)],
        HamiltonianClass::GeneralNonHermitian => {
            &[(RLrEqual, Fails), (TLrEqual, Holds), (RKEven, Fails), (TKEven, Fails)]
        }
        HamiltonianClass::PtSymmetric => &[
            (RLrEqual, Fails),
            (TLrEqual, Holds),
            (RPtCross, Holds),
            (TKEvenPt, Holds),
        ],
    };
    Property::ALL
        .iter()
        .map(|&p| (p, row.iter().find(|(q, _)| *q == p).map_or(NotApplicable, |(_, v)| *v)))
        .collect()
}

/// 50 logarithmically spaced wavenumbers in [0.2, 3].
pub fn default_grid() -> Vec<f64> {
    log_grid(0.2, 3.0, 50)
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                lo * (ratio * i as f64).exp()
            }
        })
        .collect()
}

/// The six reflectivity/transmitivity values at ±k.
#[derive(Debug, Clone, Copy)]
struct PointObservables {
    t_left_fwd: f64,
    t_right_fwd: f64,
    t_left_rev: f64,
    t_right_rev: f64,
    r_left_fwd: f64,
    r_right_fwd: f64,
    r_left_rev: f64,
    r_right_rev: f64,
}

fn analytic_point(p: &ScarfParameters, k: f64) -> Result<PointObservables, InvarianceError> {
    let fwd = analytic_scattering::amplitudes(p, k)?;
    let rev = analytic_scattering::amplitudes(p, -k)?;
    if fwd.singular.is_some() || rev.singular.is_some() {
        return Err(InvarianceError::SingularGridPoint(k));
    }
    // Right incidence is left incidence on the mirror image; evaluated
    // separately so T_left = T_right is an actual comparison.
    let mirror = p.mirrored();
    let t_right_fwd = analytic_scattering::transmission_amplitude(&mirror, k)?.value;
    let t_right_rev = analytic_scattering::transmission_amplitude(&mirror, -k)?.value;
    Ok(PointObservables {
        t_left_fwd: fwd.t.norm_sqr(),
        t_right_fwd: t_right_fwd.norm_sqr(),
        t_left_rev: rev.t.norm_sqr(),
        t_right_rev: t_right_rev.norm_sqr(),
        r_left_fwd: fwd.r_left.norm_sqr(),
        r_right_fwd: fwd.r_right.norm_sqr(),
        r_left_rev: rev.r_left.norm_sqr(),
        r_right_rev: rev.r_right.norm_sqr(),
    })
}

fn sampled_point(v: &SampledPotential, conj: &SampledPotential, k: f64) -> Result<PointObservables, InvarianceError> {
    let fwd = numeric_oracle::solve(v, k)?;
    // a_V(−k) = conj(a_{V*}(k)); moduli only need the conjugate solve.
    let rev = numeric_oracle::solve(conj, k)?;
    Ok(PointObservables {
        t_left_fwd: fwd.t_left.norm_sqr(),
        t_right_fwd: fwd.t_right.norm_sqr(),
        t_left_rev: rev.t_left.norm_sqr(),
        t_right_rev: rev.t_right.norm_sqr(),
        r_left_fwd: fwd.r_left.norm_sqr(),
        r_right_fwd: fwd.r_right.norm_sqr(),
        r_left_rev: rev.r_left.norm_sqr(),
        r_right_rev: rev.r_right.norm_sqr(),
    })
}

fn gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.max(b))
}

fn violations(o: &PointObservables) -> [(Property, f64); 6] {
    let t_even = gap(o.t_left_fwd, o.t_left_rev).max(gap(o.t_right_fwd, o.t_right_rev));
    [
        (
            Property::RLrEqual,
            gap(o.r_left_fwd, o.r_right_fwd).max(gap(o.r_left_rev, o.r_right_rev)),
        ),
        (
            Property::TLrEqual,
            gap(o.t_left_fwd, o.t_right_fwd).max(gap(o.t_left_rev, o.t_right_rev)),
        ),
        (
            Property::RKEven,
            gap(o.r_left_fwd, o.r_left_rev).max(gap(o.r_right_fwd, o.r_right_rev)),
        ),
        (Property::TKEven, t_even),
        (
            Property::RPtCross,
            gap(o.r_left_rev, o.r_right_fwd).max(gap(o.r_right_rev, o.r_left_fwd)),
        ),
        (Property::TKEvenPt, t_even),
    ]
}

/// Computes all six property violations over `grid` and assigns verdicts
/// for the properties in the detected class's table row.
pub fn run_report(source: ReportSource<'_>, grid: &[f64]) -> Result<InvarianceReport, InvarianceError> {
    if grid.is_empty() {
        return Err(InvarianceError::InvalidGrid("empty grid".into()));
    }
    if let Some(k) = grid.iter().find(|k| !(**k >= K_MIN && k.is_finite())) {
        return Err(InvarianceError::InvalidGrid(format!(
            "k = {k} is below k_min or not finite"
        )));
    }

    let (class, hold_tol, poles) = match source {
        ReportSource::Analytic(p) => (p.coefficients().classify(), HOLD_TOL_ANALYTIC, real_axis_poles(p)),
        ReportSource::Sampled(v) => (v.classify(), HOLD_TOL_ORACLE, Vec::new()),
    };
    let (kept, excluded): (Vec<f64>, Vec<f64>) = grid
        .iter()
        .partition(|&&k| poles.iter().all(|kp| (k - kp.abs()).abs() > SINGULARITY_EXCLUSION));
    if kept.is_empty() {
        return Err(InvarianceError::InvalidGrid(
            "every grid point is near a spectral singularity".into(),
        ));
    }

    let conj = match source {
        ReportSource::Sampled(v) => Some(v.conj()),
        ReportSource::Analytic(_) => None,
    };
    let mut max_violation: BTreeMap<Property, f64> = Property::ALL.iter().map(|&p| (p, 0.0)).collect();
    for &k in &kept {
        let obs = match (source, &conj) {
            (ReportSource::Analytic(p), _) => analytic_point(p, k)?,
            (ReportSource::Sampled(v), Some(c)) => sampled_point(v, c, k)?,
            (ReportSource::Sampled(_), None) => unreachable!(),
        };
        for (prop, v) in violations(&obs) {
            let slot = max_violation.get_mut(&prop).expect("all properties present");
            *slot = slot.max(v);
        }
    }

    let expected = expected_row(class);
    let mut verdicts = BTreeMap::new();
    for (&prop, &v) in &max_violation {
        let verdict = if expected[&prop] == Verdict::NotApplicable {
            Verdict::NotApplicable
        } else if v < hold_tol {
            Verdict::Holds
        } else if v > FAIL_MARGIN {
            Verdict::Fails
        } else {
            return Err(InvarianceError::Inconclusive {
                property: prop,
                violation: v,
            });
        };
        verdicts.insert(prop, verdict);
    }

    Ok(InvarianceReport {
        class_tested: class,
        grid: kept,
        excluded,
        hold_tol,
        fail_margin: FAIL_MARGIN,
        max_violation,
        verdicts,
    })
}

impl InvarianceReport {
    /// Whether every verdict equals the class's table row.
    pub fn matches_table(&self) -> bool {
        self.verdicts == expected_row(self.class_tested)
    }

    /// Aligned text rendering.
    pub fn render_table(&self) -> String {
        let expected = expected_row(self.class_tested);
        let mut s = String::new();
        let _ = writeln!(s, "class: {}", self.class_tested);
        let _ = writeln!(
            s,
            "grid: {} points in [{:.4}, {:.4}], {} excluded near singularities",
            self.grid.len(),
            self.grid.first().copied().unwrap_or(f64::NAN),
            self.grid.last().copied().unwrap_or(f64::NAN),
            self.excluded.len()
        );
        let _ = writeln!(
            s,
            "{:<12} {:>14} {:<15} {:<15}",
            "property", "max_violation", "verdict", "expected"
        );
        for (prop, v) in &self.max_violation {
            let _ = writeln!(
                s,
                "{:<12} {:>14.3e} {:<15} {:<15}",
                prop.name(),
                v,
                verdict_name(self.verdicts[prop]),
                verdict_name(expected[prop])
            );
        }
        let _ = writeln!(s, "matches table: {}", self.matches_table());
        s
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::NotApplicable => "not_applicable",
    }
}
