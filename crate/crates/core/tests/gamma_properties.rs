use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use scarf_core::special_functions::{complex_gamma, log_complex_gamma, safe_trig_ratio};

const TOL: f64 = 1e-10;

fn off_pole() -> impl Strategy<Value = Complex64> {
    (-10.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(re, im)| Complex64::new(re, im))
        .prop_filter("away from poles", |z| (z.re - z.re.round()).abs().hypot(z.im) > 1e-3)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn gamma(z: Complex64) -> Complex64 {
    complex_gamma(z).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflection(z in off_pole()) {
        let rhs = PI / (PI * z).sin();
        prop_assert!(rel(gamma(z) * gamma(1.0 - z), rhs) < TOL);
    }

    #[test]
    fn recurrence(z in off_pole()) {
        prop_assert!(rel(gamma(z + 1.0), z * gamma(z)) < TOL);
    }

    #[test]
    fn conjugation(z in off_pole()) {
        prop_assert!(rel(gamma(z.conj()), gamma(z).conj()) < TOL);
    }

    #[test]
    fn log_gamma_exponentiates(z in off_pole()) {
        prop_assert!(rel(log_complex_gamma(z).unwrap().exp(), gamma(z)) < TOL);
    }

    #[test]
    fn log_gamma_recurrence_on_principal_branch(re in 0.5f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let diff = log_complex_gamma(z + 1.0).unwrap() - log_complex_gamma(z).unwrap() - z.ln();
        prop_assert!(diff.norm() < 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn trig_ratio_odd_in_k(
        ar in -3.0f64..3.0, ai in -3.0f64..3.0,
        br in -3.0f64..3.0, bi in -3.0f64..3.0,
        k in 0.05f64..4.0,
    ) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        let plus = safe_trig_ratio(a, b, k).unwrap();
        let minus = safe_trig_ratio(a, b, -k).unwrap();
        // First term is even in k, second odd.
        let even = (plus + minus) / 2.0;
        let expected = (PI * a).cos() * (PI * b).sinh() / (PI * k).cosh();
        prop_assert!((even - expected).norm() < 1e-9 * (1.0 + expected.norm()));
    }
}
