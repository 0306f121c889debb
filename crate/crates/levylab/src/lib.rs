//! Numerical laboratory for Lévy generators.
//!
//! A Lévy process with characteristic exponent ψ (so `E e^{iξ·X_t} = e^{-tψ(ξ)}`)
//! determines a convolution semigroup `P_t f(x) = E f(x + X_t)`, its generator
//! `A`, resolvents `R_λ = (λ - A)^{-1}`, and — when ψ grows fast enough — smooth
//! transition densities. This crate computes all of these at desk scale and
//! verifies the quantitative regularity theory hanging off them: gradient
//! estimates `∫|∇p_t| ≲ t^{-1/α}`, Hölder–Zygmund norms measured through
//! iterated differences, the smoothing action of `R_λ`, the Carré du Champ
//! bilinear form, and two classical counterexamples for the Cauchy process
//! showing where the theory is sharp.
//!
//! Organization:
//! - [`models`]: symbols, Lévy triplets, jump-measure quadrature, symbol checks.
//! - [`grid`]: periodic lattices and the FFT synthesis/analysis pair.
//! - [`spectral`]: transition densities by Fourier inversion and the gradient
//!   L¹ experiments.
//! - [`holder`]: iterated differences, Zygmund norms, exponent estimation.
//! - [`resolvent`]: semigroup/resolvent application by time quadrature, the
//!   potential operator for stable processes, smoothing ratios.
//! - [`generator`]: pointwise generator quadrature, spectral generator,
//!   Carré du Champ, the a-priori-estimate experiment.
//! - [`cauchy`]: the 2D Cauchy counterexamples (a C¹ function outside the
//!   domain; a potential that fails to be Lipschitz).
//!
//! Everything is deterministic: no randomness, no hash-ordered iteration, and
//! fixed-format serialization in [`report`].

pub mod error;
pub mod fit;
pub mod grid;
pub mod models;
pub mod quad;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use fit::ScalingFit;
pub use grid::{GridField, GridSpec};
pub use models::{LevyMeasure, LevyModel, LevyTriplet};
pub use report::VerificationReport;
