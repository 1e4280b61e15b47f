//! Shared inputs for the criterion benchmarks.

use scarf_core::{SampledPotential, ScarfParameters};

/// The four reference instances (general, sign-flipped, mixed, PT) with m = n = 0.
pub fn reference_instances() -> [ScarfParameters; 4] {
    let (s2, s5) = (2f64.sqrt(), 5f64.sqrt());
    [(s2, s5), (-s2, -s5), (-s2, s5), (s2, -s2)]
        .map(|(a, b)| ScarfParameters::from_real_parametrization(0, 0, a, b).expect("finite"))
}

/// The first instance sampled on the default oracle grid.
pub fn default_sampled() -> SampledPotential {
    scarf_core::numeric_oracle::sample_scarf(&reference_instances()[0], -20.0, 20.0, 4000).expect("tail")
}
