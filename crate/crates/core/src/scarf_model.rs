//! The Scarf II potential `V(x) = V1 sech²x + V2 sech x tanh x` and its
//! parametrizations.
//!
//! The amplitude formulas use the pair (A, B) with
//! `V1 = B² − A² − A`, `V2 = B(2A + 1)`. The four-parameter form
//! (m, n, α, β) fixes `A = −(m+1) + iα`, `B = β + i(n + 1/2)`, which places
//! real-axis poles of t(k) at k = α and k = β for real α, β.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used by [`PotentialCoefficients::classify`].
pub const TOL_CLASS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),
}

/// How a [`ScarfParameters`] value was built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Origin {
    Direct,
    Parametrized {
        m: u32,
        n: u32,
        alpha: Complex64,
        beta: Complex64,
    },
}

/// Scarf II parameters in (A, B) form, remembering the parametrization they
/// came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct ScarfParameters {
    a: Complex64,
    b: Complex64,
    origin: Origin,
}

impl ScarfParameters {
    pub fn direct(a: Complex64, b: Complex64) -> Result<Self, ModelError> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(ModelError::NonFinite("A"));
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(ModelError::NonFinite("B"));
        }
        Ok(Self {
            a,
            b,
            origin: Origin::Direct,
        })
    }

    /// `A = −(m+1) + iα`, `B = β + i(n + 1/2)`.
    pub fn from_parametrization(m: u32, n: u32, alpha: Complex64, beta: Complex64) -> Result<Self, ModelError> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(ModelError::NonFinite("alpha"));
        }
        if !(beta.re.is_finite() && beta.im.is_finite()) {
            return Err(ModelError::NonFinite("beta"));
        }
        let i = Complex64::i();
        let a = -(m as f64 + 1.0) + i * alpha;
        let b = beta + i * (n as f64 + 0.5);
        Ok(Self {
            a,
            b,
            origin: Origin::Parametrized { m, n, alpha, beta },
        })
    }

    /// Shorthand for real α, β.
    pub fn from_real_parametrization(m: u32, n: u32, alpha: f64, beta: f64) -> Result<Self, ModelError> {
        Self::from_parametrization(m, n, Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The mirror image V(−x), i.e. B → −B. Right incidence on `self` is left
    /// incidence on the mirror.
    pub fn mirrored(&self) -> Self {
        Self {
            a: self.a,
            b: -self.b,
            origin: Origin::Direct,
        }
    }

    pub fn coefficients(&self) -> PotentialCoefficients {
        let (a, b) = (self.a, self.b);
        PotentialCoefficients {
            v1: b * b - a * a - a,
            v2: b * (2.0 * a + 1.0),
        }
    }
}

/// Coefficients of `V1 sech²x + V2 sech x tanh x` (units with ħ² = 2μ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "CoeffRepr", into = "CoeffRepr")]
pub struct PotentialCoefficients {
    pub v1: Complex64,
    pub v2: Complex64,
}

/// Symmetry classes distinguished by the (in)variance table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianClass {
    Hermitian,
    PSymmetric,
    PtSymmetric,
    GeneralNonHermitian,
}

impl std::fmt::Display for HamiltonianClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HamiltonianClass::Hermitian => "hermitian",
            HamiltonianClass::PSymmetric => "p_symmetric",
            HamiltonianClass::PtSymmetric => "pt_symmetric",
            HamiltonianClass::GeneralNonHermitian => "general_non_hermitian",
        };
        f.write_str(s)
    }
}

impl PotentialCoefficients {
    pub fn new(v1: Complex64, v2: Complex64) -> Self {
        Self { v1, v2 }
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        let sech = 1.0 / x.cosh();
        self.v1 * (sech * sech) + self.v2 * (sech * x.tanh())
    }

    pub fn classify(&self) -> HamiltonianClass {
        let zero = |v: f64| v.abs() <= TOL_CLASS;
        if zero(self.v1.im) && zero(self.v2.im) {
            HamiltonianClass::Hermitian
        } else if zero(self.v2.norm()) {
            HamiltonianClass::PSymmetric
        } else if zero(self.v1.im) && zero(self.v2.re) {
            HamiltonianClass::PtSymmetric
        } else {
            HamiltonianClass::GeneralNonHermitian
        }
    }
}

pub fn evaluate_potential(c: &PotentialCoefficients, x: f64) -> Complex64 {
    c.evaluate(x)
}

pub fn classify(c: &PotentialCoefficients) -> HamiltonianClass {
    c.classify()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamsRepr {
    Parametrized {
        m: u32,
        n: u32,
        alpha_re: f64,
        alpha_im: f64,
        beta_re: f64,
        beta_im: f64,
    },
    Direct {
        #[serde(rename = "A_re")]
        a_re: f64,
        #[serde(rename = "A_im")]
        a_im: f64,
        #[serde(rename = "B_re")]
        b_re: f64,
        #[serde(rename = "B_im")]
        b_im: f64,
    },
}

impl TryFrom<ParamsRepr> for ScarfParameters {
    type Error = ModelError;

    fn try_from(r: ParamsRepr) -> Result<Self, Self::Error> {
        match r {
            ParamsRepr::Parametrized {
                m,
                n,
                alpha_re,
                alpha_im,
                beta_re,
                beta_im,
            } => Self::from_parametrization(
                m,
                n,
                Complex64::new(alpha_re, alpha_im),
                Complex64::new(beta_re, beta_im),
            ),
            ParamsRepr::Direct { a_re, a_im, b_re, b_im } => {
                Self::direct(Complex64::new(a_re, a_im), Complex64::new(b_re, b_im))
            }
        }
    }
}

impl From<ScarfParameters> for ParamsRepr {
    fn from(p: ScarfParameters) -> Self {
        match p.origin {
            Origin::Parametrized { m, n, alpha, beta } => ParamsRepr::Parametrized {
                m,
                n,
                alpha_re: alpha.re,
                alpha_im: alpha.im,
                beta_re: beta.re,
                beta_im: beta.im,
            },
            Origin::Direct => ParamsRepr::Direct {
                a_re: p.a.re,
                a_im: p.a.im,
                b_re: p.b.re,
                b_im: p.b.im,
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    #[serde(rename = "V1_re")]
    v1_re: f64,
    #[serde(rename = "V1_im")]
    v1_im: f64,
    #[serde(rename = "V2_re")]
    v2_re: f64,
    #[serde(rename = "V2_im")]
    v2_im: f64,
}

impl From<CoeffRepr> for PotentialCoefficients {
    fn from(r: CoeffRepr) -> Self {
        Self::new(Complex64::new(r.v1_re, r.v1_im), Complex64::new(r.v2_re, r.v2_im))
    }
}

impl From<PotentialCoefficients> for CoeffRepr {
    fn from(c: PotentialCoefficients) -> Self {
        Self {
            v1_re: c.v1.re,
            v1_im: c.v1.im,
            v2_re: c.v2.re,
            v2_im: c.v2.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The explicit real/imaginary expansion of V1, V2 for real α, β.
    fn expanded(m: u32, n: u32, al: f64, be: f64) -> (Complex64, Complex64) {
        let (m, n) = (m as f64, n as f64);
        let v1 = c(
            al * al + be * be - (m + 1.0).powi(2) - (n + 0.5).powi(2) + (m + 1.0),
            (2.0 * m + 1.0) * al + (2.0 * n + 1.0) * be,
        );
        let v2 = c(
            -((2.0 * n + 1.0) * al + (2.0 * m + 1.0) * be),
            2.0 * al * be - (m + 1.0) * (2.0 * n + 1.0) + (n + 0.5),
        );
        (v1, v2)
    }

    #[test]
    fn parametrization_examples() {
        let s5 = 5f64.sqrt();
        let p = ScarfParameters::from_real_parametrization(0, 0, SQRT2, s5).unwrap();
        assert_eq!(p.a(), c(-1.0, SQRT2));
        assert_eq!(p.b(), c(s5, 0.5));

        let p = ScarfParameters::from_real_parametrization(0, 0, SQRT2, -SQRT2).unwrap();
        assert_eq!(p.b(), c(-SQRT2, 0.5));
        assert_eq!(p.coefficients().classify(), HamiltonianClass::PtSymmetric);

        let p = ScarfParameters::from_real_parametrization(1, 2, 0.0, 0.0).unwrap();
        assert_eq!(p.a(), c(-2.0, 0.0));
        assert_eq!(p.b(), c(0.0, 2.5));
    }

    #[test]
    fn reference_instance_coefficients() {
        let s5 = 5f64.sqrt();
        let cf = ScarfParameters::from_real_parametrization(0, 0, SQRT2, s5)
            .unwrap()
            .coefficients();
        assert!((cf.v1 - c(6.75, SQRT2 + s5)).norm() < 1e-13);
        assert!((cf.v2 - c(-(SQRT2 + s5), 2.0 * 10f64.sqrt() - 0.5)).norm() < 1e-13);
    }

    #[test]
    fn free_particle() {
        let cf = ScarfParameters::direct(c(0.0, 0.0), c(0.0, 0.0))
            .unwrap()
            .coefficients();
        assert_eq!(cf.v1.norm(), 0.0);
        assert_eq!(cf.v2.norm(), 0.0);
    }

    #[test]
    fn pt_coefficients_vanish() {
        let cf = ScarfParameters::from_real_parametrization(0, 0, SQRT2, -SQRT2)
            .unwrap()
            .coefficients();
        assert!(cf.v1.im.abs() < 1e-15);
        assert!(cf.v2.re.abs() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        let cf = PotentialCoefficients::new(c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(cf.evaluate(0.0), c(1.0, 0.0));
        let cf = PotentialCoefficients::new(c(3.0, -2.0), c(-1.5, 4.0));
        let bound = cf.v1.norm() + cf.v2.norm();
        for x in [-30.0, 30.0] {
            assert!(cf.evaluate(x).norm() < 1e-12 * bound);
            assert!(cf.evaluate(x).norm() <= bound / f64::cosh(30.0));
        }
        // Independent scalar evaluation at x = 1.
        let s5 = 5f64.sqrt();
        let cf = ScarfParameters::from_real_parametrization(0, 0, SQRT2, s5)
            .unwrap()
            .coefficients();
        let (sech, tanh) = (1.0 / 1f64.cosh(), 1f64.tanh());
        let re = 6.75 * sech * sech - (SQRT2 + s5) * sech * tanh;
        let im = (SQRT2 + s5) * sech * sech + (2.0 * 10f64.sqrt() - 0.5) * sech * tanh;
        assert!((cf.evaluate(1.0) - c(re, im)).norm() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            PotentialCoefficients::new(c(-2.0, 0.0), c(1.0, 0.0)).classify(),
            HamiltonianClass::Hermitian
        );
        assert_eq!(
            PotentialCoefficients::new(c(1.0, 2.0), c(0.0, 0.0)).classify(),
            HamiltonianClass::PSymmetric
        );
        assert_eq!(
            PotentialCoefficients::new(c(1.0, 2.0), c(0.3, 0.0)).classify(),
            HamiltonianClass::GeneralNonHermitian
        );
    }

    #[test]
    fn json_keys() {
        let p = ScarfParameters::from_real_parametrization(0, 1, SQRT2, -0.5).unwrap();
        let js = serde_json::to_value(p).unwrap();
        for key in ["m", "n", "alpha_re", "alpha_im", "beta_re", "beta_im"] {
            assert!(js.get(key).is_some(), "missing {key}");
        }
        let back: ScarfParameters = serde_json::from_value(js).unwrap();
        assert_eq!(back, p);

        let q = ScarfParameters::direct(c(1.0, 1.0), c(0.0, -0.5)).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"A_re":1.0,"A_im":1.0,"B_re":0.0,"B_im":-0.5}"#);
        assert_eq!(serde_json::from_str::<ScarfParameters>(&s).unwrap(), q);

        let cf = q.coefficients();
        let s = serde_json::to_string(&cf).unwrap();
        assert!(s.starts_with(r#"{"V1_re""#));
        assert_eq!(serde_json::from_str::<PotentialCoefficients>(&s).unwrap(), cf);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parametrized_coefficients_match_expansion(
            m in 0u32..8, n in 0u32..8, al in -6.0f64..6.0, be in -6.0f64..6.0,
        ) {
            let p = ScarfParameters::from_real_parametrization(m, n, al, be).unwrap();
            prop_assert_eq!(p.a(), c(-(m as f64 + 1.0), al));
            prop_assert_eq!(p.b(), c(be, n as f64 + 0.5));
            let cf = p.coefficients();
            let (v1, v2) = expanded(m, n, al, be);
            let scale = 1.0 + v1.norm() + v2.norm();
            prop_assert!((cf.v1 - v1).norm() < 1e-12 * scale);
            prop_assert!((cf.v2 - v2).norm() < 1e-12 * scale);
            let (a, b) = (p.a(), p.b());
            prop_assert!((cf.v1 - (b * b - a * a - a)).norm() == 0.0);
        }

        #[test]
        fn pt_iff_opposite_alpha_beta(m in 0u32..6, al in 0.1f64..5.0, be in -5.0f64..5.0) {
            prop_assume!(be.abs() > 0.05);
            let p = ScarfParameters::from_real_parametrization(m, m, al, be).unwrap();
            let is_pt = p.coefficients().classify() == HamiltonianClass::PtSymmetric;
            let p_neg = ScarfParameters::from_real_parametrization(m, m, al, -al).unwrap();
            prop_assert_eq!(p_neg.coefficients().classify(), HamiltonianClass::PtSymmetric);
            prop_assert_eq!(is_pt, (al + be).abs() < 1e-12);
        }

        #[test]
        fn pt_instance_satisfies_pt_reflection(m in 0u32..5, al in 0.1f64..4.0) {
            let cf = ScarfParameters::from_real_parametrization(m, m, al, -al).unwrap().coefficients();
            for i in 0..=200 {
                let x = -10.0 + 0.1 * i as f64;
                let d = cf.evaluate(-x) - cf.evaluate(x).conj();
                prop_assert!(d.norm() < 1e-12 * (1.0 + cf.v1.norm() + cf.v2.norm()));
            }
        }
    }
}
