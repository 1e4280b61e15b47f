//! Scattering from the complexified Scarf II potential
//! `V(x) = V1 sech²x + V2 sech x tanh x`.
//!
//! Closed-form amplitudes, spectral singularities and bound states, a
//! transfer-matrix oracle for arbitrary sampled potentials, and a checker
//! for the symmetry properties of reflectivity and transmitivity.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic_scattering;
pub mod invariance_suite;
pub mod numeric_oracle;
pub mod scarf_model;
pub mod special_functions;
pub mod spectral_analysis;

pub use analytic_scattering::{Observables, ScatteringAmplitudes, ScatteringError};
pub use invariance_suite::{InvarianceReport, Property, ReportSource, Verdict};
pub use numeric_oracle::{OracleResult, SampledPotential};
pub use scarf_model::{HamiltonianClass, PotentialCoefficients, ScarfParameters};
pub use spectral_analysis::{BoundStateRecord, SpectralSingularityRecord, Spectrum};
