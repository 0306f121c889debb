//! Transition densities and their derivatives by Fourier inversion.
//!
//! For a model with symbol ψ, the density of the time-t marginal has Fourier
//! transform e^{−tψ}, so p_t and any ∂^β p_t come out of one spectral
//! synthesis:  p_t = F⁻¹[e^{−tψ}],  ∂^β p_t = F⁻¹[(−iξ)^β e^{−tψ}].
//! On a periodic lattice the synthesis actually yields the 2L-periodization
//! of p_t; mass is conserved exactly (the lattice integral equals the ξ = 0
//! spectral value), heavy tails fold into the window, and the two
//! discretization errors are controlled separately:
//! - aliasing — spectral content at the Nyquist shell — is gated at 1e−6
//!   relative by the synthesis itself;
//! - truncation/folding is kept small by the default window policy below and
//!   surfaced in the `tail_mass_estimate` diagnostic.
//!
//! Window policy ([`default_grid`]): for a model with growth index α the
//! half-width at time t is R·t^{1/α}, where R is the smaller of
//! (a) the largest window whose Nyquist frequency ξ_N still satisfies
//! (1+ξ_N)e^{−ξ_N^α} ≤ 1e−6 × the spectral peak (so densities *and* their
//! first derivatives stay alias-safe), and (b) the radius at which the
//! analytic gradient-tail bound for the matching stable process drops below
//! 1e−4 of the gradient's total mass. Diffusive models (α = 2) use R = 12,
//! i.e. a ±12σ window. Scaling the window as t^{1/α} makes the whole discrete
//! computation *exactly* scale-covariant for α-stable models: every lattice
//! quantity obeys the same power law in t as its continuum counterpart, so
//! fitted scaling exponents are exact even where truncation biases absolute
//! values.
//!
//! The experiments here verify, per model:
//! - the gradient estimate ‖∇p_t‖_{L¹} ≤ M t^{−1/α} via log-log fit
//!   ([`gradient_l1_curve`], [`fit_gradient_exponent`]);
//! - its extension to all positive times with an e^{mt} factor
//!   ([`extend_gradient_estimate`]);
//! - the Fourier-side lower bound sup_ξ |ξ_j e^{−tψ}| ≤ ‖∂_j p_t‖_{L¹}
//!   ([`fourier_lower_bound`]);
//! - the semigroup (Chapman–Kolmogorov) identity p_{2t} = p_t ⋆ p_t through
//!   honest lattice convolution ([`check_chapman_kolmogorov`]);
//! - the product bound ‖∂ᵢ∂ⱼ p_{2t}‖_{L¹} ≤ (max_j ‖∂_j p_t‖_{L¹})²
//!   obtained by routing derivatives through the half-time factors
//!   ([`check_second_derivative_bound`]).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fit::{fit_loglog, ScalingFit};
use crate::grid::{analyze, synthesize, GridField, GridSpec, SpectralField};
use crate::models::{levy_constant, LevyModel};
use crate::report::{Json, VerificationReport};

/// Default points per axis: generous in d = 1, a full-megapoint lattice in d = 2.
pub const DEFAULT_POINTS_D1: usize = 1 << 16;
pub const DEFAULT_POINTS_D2: usize = 1 << 10;

/// Relative budget for gradient mass lost to window truncation.
const TAIL_BUDGET: f64 = 1e-4;
/// Radii used for the smoothness-condition warning in [`density`].
const GROWTH_RADII: [f64; 6] = [1e1, 1e2, 1e3, 1e4, 1e5, 1e6];

/// A synthesized transition density with its quality diagnostics.
#[derive(Debug, Clone)]
pub struct Density {
    pub field: GridField,
    /// Lattice mass minus one. Perfect synthesis keeps this at rounding level
    /// because periodization conserves mass.
    pub mass_error: f64,
    /// Most negative lattice value (FFT ringing floor; ≥ −1e−8 when healthy).
    pub min_value: f64,
    /// Estimated true mass outside the window, extrapolated from the measured
    /// mass in the window's outer half-annulus and the model's tail exponent.
    pub tail_mass_estimate: f64,
    /// Set when the symbol fails the log-growth (smoothness) proxy check; the
    /// density is still computed, but its regularity is not backed by theory.
    pub growth_warning: bool,
}

fn require_symbol(model: &LevyModel) -> Result<()> {
    if model.has_symbol() {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "model '{}' has no evaluable symbol; spectral synthesis needs ψ",
            model.name()
        )))
    }
}

fn validate_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("time must be positive and finite, got {t}")))
    }
}

/// Transition density p_t on the given lattice, by synthesis of e^{−tψ}.
pub fn density(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<Density> {
    require_symbol(model)?;
    validate_time(t)?;
    if spec.dim() != model.dim() {
        return Err(Error::InvalidGrid(format!(
            "grid dimension {} does not match model dimension {}",
            spec.dim(),
            model.dim()
        )));
    }
    let growth_warning = !crate::models::check_hartman_wintner(model, &GROWTH_RADII)?.pass;
    let spectrum = SpectralField::from_symbol(*&spec.clone(), |xi| {
        (-t * model.eval_symbol(xi).expect("symbol presence checked")).exp()
    });
    let synthesis = synthesize(&spectrum, &format!("density of {} at t={t}", model.name()))?;
    let field = synthesis.field;
    let mass_error = field.lattice_integral() - 1.0;
    let min_value = field.min_value();

    // outer half-annulus mass, extrapolated by the tail exponent: for a tail
    // ~ |x|^{−d−α}, mass beyond L is mass(L/2 < |x|∞ < L) / (2^α − 1)
    let half = spec.half_width();
    let mut outer = 0.0;
    for (flat, &v) in field.values().iter().enumerate() {
        let x = spec.point(flat);
        if x[0].abs().max(x[1].abs()) > 0.5 * half {
            outer += v;
        }
    }
    outer *= spec.cell_volume();
    let alpha = model.declared_index().unwrap_or(1.0);
    let tail_mass_estimate = if alpha >= 2.0 { outer } else { outer / (2f64.powf(alpha) - 1.0) };

    Ok(Density { field, mass_error, min_value, tail_mass_estimate, growth_warning })
}

/// ∂^β p_t by synthesis of (−iξ)^β e^{−tψ}, for |β| ≤ 4.
pub fn density_partial(model: &LevyModel, t: f64, beta: [usize; 2], spec: &GridSpec) -> Result<GridField> {
    require_symbol(model)?;
    validate_time(t)?;
    let order = beta[0] + beta[1];
    if order > 4 {
        return Err(Error::OutOfDomain(format!(
            "partial derivatives are supported up to total order 4, got β = ({}, {})",
            beta[0], beta[1]
        )));
    }
    if model.dim() == 1 && beta[1] > 0 {
        return Err(Error::OutOfDomain("d=1 fields have no second coordinate to differentiate".into()));
    }
    // (−i)^order steps through 1, −i, −1, i
    let unit = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
    ][order % 4];
    let (b0, b1) = (beta[0] as i32, beta[1] as i32);
    let spectrum = SpectralField::from_symbol(spec.clone(), |xi| {
        unit * xi[0].powi(b0)
            * xi[1].powi(b1)
            * (-t * model.eval_symbol(xi).expect("symbol presence checked")).exp()
    });
    let context = format!("∂^({},{}) of {} density at t={t}", beta[0], beta[1], model.name());
    Ok(synthesize(&spectrum, &context)?.field)
}

/// L¹ norms of the first partials (∂_1 p_t, …, ∂_d p_t) on the lattice.
pub fn partial_l1_norms(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<Vec<f64>> {
    let mut norms = Vec::with_capacity(model.dim());
    for j in 0..model.dim() {
        let beta = if j == 0 { [1, 0] } else { [0, 1] };
        norms.push(density_partial(model, t, beta, spec)?.l1_norm());
    }
    Ok(norms)
}

/// Gradient experiment: t ↦ Σ_j ‖∂_j p_t‖_{L¹} over a time list.
///
/// `base` is the grid for the *largest* time in the list; grids for smaller
/// times shrink as (t/t_max)^{1/α} with the model's declared index, keeping
/// the computation scale-covariant (models without a declared index reuse the
/// base grid unchanged).
pub fn gradient_l1_curve(model: &LevyModel, t_list: &[f64], base: &GridSpec) -> Result<Vec<(f64, f64)>> {
    if t_list.is_empty() {
        return Err(Error::OutOfDomain("time list is empty".into()));
    }
    for w in t_list.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::OutOfDomain("time list must be strictly increasing".into()));
        }
    }
    validate_time(t_list[0])?;
    let t_max = *t_list.last().unwrap();
    let mut curve = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let spec_t = match model.declared_index() {
            Some(alpha) => GridSpec::new(
                base.dim(),
                base.points_per_axis(),
                base.half_width() * (t / t_max).powf(1.0 / alpha),
            )?,
            None => base.clone(),
        };
        let total: f64 = partial_l1_norms(model, t, &spec_t)?.iter().sum();
        curve.push((t, total));
    }
    Ok(curve)
}

/// Result of fitting log(gradient L¹) against log t.
#[derive(Debug, Clone)]
pub struct GradientFit {
    pub fit: ScalingFit,
    /// α̂ = −1/slope: the scaling index recovered from the decay rate.
    pub index: f64,
    /// M̂ = e^{intercept}: the prefactor of the fitted M t^{−1/α} law.
    pub prefactor: f64,
}

/// Least-squares fit of a gradient curve to the power law M t^{−1/α}.
pub fn fit_gradient_exponent(curve: &[(f64, f64)]) -> Result<GradientFit> {
    let fit = fit_loglog(curve)?;
    if fit.slope >= 0.0 {
        return Err(Error::DegenerateFit(format!(
            "gradient norms must decay in t; fitted slope {}",
            fit.slope
        )));
    }
    Ok(GradientFit { index: -1.0 / fit.slope, prefactor: fit.intercept.exp(), fit })
}

/// Every-t extension of a gradient estimate that holds on (0, T]:
/// ‖∇p_t‖ ≤ M t^{−1/α} on (0,T] propagates to
/// ‖∇p_t‖ ≤ M e^{mt} t^{−1/α} for all t > 0 with m = log 2 / (αT)
/// (halving the time through the semigroup property costs at most a factor
/// 2^{1/α} per step, which the exponential absorbs).
#[derive(Debug, Clone, Copy)]
pub struct ExtendedGradientBound {
    pub prefactor: f64,
    pub horizon: f64,
    pub index: f64,
    /// m = log 2 / (α T).
    pub rate: f64,
}

pub fn extend_gradient_estimate(prefactor: f64, horizon: f64, index: f64) -> Result<ExtendedGradientBound> {
    if !(prefactor > 0.0 && horizon > 0.0) {
        return Err(Error::OutOfDomain("prefactor and horizon must be positive".into()));
    }
    if !(index > 0.0 && index <= 2.0) {
        return Err(Error::OutOfDomain(format!("scaling index must lie in (0,2], got {index}")));
    }
    Ok(ExtendedGradientBound {
        prefactor,
        horizon,
        index,
        rate: 2f64.ln() / (index * horizon),
    })
}

impl ExtendedGradientBound {
    /// Check measured gradient norms against M e^{mt} t^{−1/α} over a time
    /// list (typically extending well beyond the horizon).
    pub fn verify(&self, model: &LevyModel, t_list: &[f64], base: &GridSpec) -> Result<VerificationReport> {
        let curve = gradient_l1_curve(model, t_list, base)?;
        let mut worst = 0.0f64;
        for &(t, v) in &curve {
            let bound = self.prefactor * (self.rate * t).exp() * t.powf(-1.0 / self.index);
            worst = worst.max(v / bound);
        }
        let tol = 1.0 + 1e-9;
        Ok(VerificationReport::new("extended-gradient-bound", tol)
            .input("model", model.name())
            .input("prefactor", self.prefactor)
            .input("horizon", self.horizon)
            .input("rate", self.rate)
            .value("max_ratio_to_bound", worst)
            .passing(worst <= tol))
    }
}

/// max_j sup over the frequency lattice of |ξ_j e^{−tψ(ξ)}| — a lower bound
/// for max_j ‖∂_j p_t‖_{L¹} (the sup of a Fourier transform is at most the
/// L¹ norm of the function).
pub fn fourier_lower_bound(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<f64> {
    Ok(*per_coordinate_fourier_bounds(model, t, spec)?
        .iter()
        .max_by(|a, b| a.total_cmp(b))
        .unwrap())
}

fn per_coordinate_fourier_bounds(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<Vec<f64>> {
    require_symbol(model)?;
    validate_time(t)?;
    let mut sups = vec![0.0f64; model.dim()];
    for flat in 0..spec.total_points() {
        let xi = spec.frequency(flat);
        let damp = (-t * model.eval_symbol(&xi).expect("symbol presence checked").re).exp();
        for (j, sup) in sups.iter_mut().enumerate() {
            *sup = sup.max(xi[j].abs() * damp);
        }
    }
    Ok(sups)
}

/// Verify the Fourier-side lower bound coordinate by coordinate:
/// sup_ξ |ξ_j e^{−tψ}| ≤ ‖∂_j p_t‖_{L¹} + 1e−6.
pub fn check_fourier_lower_bound(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<VerificationReport> {
    let tol = 1e-6;
    let bounds = per_coordinate_fourier_bounds(model, t, spec)?;
    let norms = partial_l1_norms(model, t, spec)?;
    let pass = bounds.iter().zip(&norms).all(|(b, n)| *b <= n + tol);
    Ok(VerificationReport::new("fourier-lower-bound", tol)
        .input("model", model.name())
        .input("t", t)
        .value("spectral_bounds", Json::Arr(bounds.iter().map(|&v| Json::Num(v)).collect()))
        .value("gradient_l1_norms", Json::Arr(norms.iter().map(|&v| Json::Num(v)).collect()))
        .passing(pass))
}

/// Semigroup identity through the lattice: p_{2t} must equal the lattice
/// convolution p_t ⋆ p_t (computed by analysis → pointwise square →
/// synthesis). Any normalization slip in the transform pair would blow the
/// ≤ 1e−6 residual by orders of magnitude.
pub fn check_chapman_kolmogorov(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<VerificationReport> {
    let tol = 1e-6;
    let p_t = density(model, t, spec)?;
    let p_2t = density(model, 2.0 * t, spec)?;
    let spectrum = analyze(&p_t.field);
    let squared = spectrum.product(&spectrum)?;
    let convolution = synthesize(&squared, "semigroup self-convolution")?.field;
    let residual = p_2t.field.linear_combination(1.0, &convolution, -1.0)?.l1_norm();
    Ok(VerificationReport::new("chapman-kolmogorov", tol)
        .input("model", model.name())
        .input("t", t)
        .value("l1_residual", residual)
        .passing(residual <= tol))
}

/// Second-derivative bound obtained by routing each derivative through one
/// half-time factor of p_{2t} = p_t ⋆ p_t:
/// ‖∂ᵢ∂ⱼ p_{2t}‖_{L¹} ≤ (max_j ‖∂_j p_t‖_{L¹})², with 1e−3 relative slack
/// for discretization.
pub fn check_second_derivative_bound(model: &LevyModel, t: f64, spec: &GridSpec) -> Result<VerificationReport> {
    let tol = 1.0 + 1e-3;
    let first = partial_l1_norms(model, t, spec)?;
    let gmax = first.iter().fold(0.0f64, |m, &v| m.max(v));
    let pairs: &[[usize; 2]] = if model.dim() == 1 { &[[2, 0]] } else { &[[2, 0], [1, 1], [0, 2]] };
    let mut seconds = Vec::with_capacity(pairs.len());
    let mut worst = 0.0f64;
    for &beta in pairs {
        let norm = density_partial(model, 2.0 * t, beta, spec)?.l1_norm();
        worst = worst.max(norm / (gmax * gmax));
        seconds.push(norm);
    }
    Ok(VerificationReport::new("second-derivative-bound", tol)
        .input("model", model.name())
        .input("t", t)
        .value("max_first_derivative_l1", gmax)
        .value("second_derivative_l1", Json::Arr(seconds.iter().map(|&v| Json::Num(v)).collect()))
        .value("max_ratio_to_square", worst)
        .passing(worst <= tol))
}

/// Largest window scale R (half-width at t = 1) that keeps densities and
/// first derivatives alias-safe on an N-point axis, for growth index α.
fn alias_safe_scale(points_per_axis: usize, alpha: f64) -> f64 {
    // spectral peak of |ξ_j| e^{−|ξ|^α} over ξ
    let proxy = (1.0 / alpha).powf(1.0 / alpha) * (-1.0 / alpha).exp();
    // smallest ξ_N with (1 + ξ_N) e^{−ξ_N^α} ≤ 1e−6 · proxy, by fixed point
    let mut x = 14f64.powf(1.0 / alpha);
    for _ in 0..60 {
        x = (((1.0 + x) / (1e-6 * proxy)).ln()).powf(1.0 / alpha);
    }
    0.95 * (std::f64::consts::PI * points_per_axis as f64 / 2.0) / x
}

/// Window scale below which the truncated gradient tail would exceed the
/// 1e−4 budget, from the stable-tail asymptotics |∇p_1| ~ (d+α)c|x|^{−d−α−1}.
fn tail_budget_scale(dim: usize, alpha: f64) -> Result<f64> {
    let c = levy_constant(dim, alpha)?;
    let proxy = (1.0 / alpha).powf(1.0 / alpha) * (-1.0 / alpha).exp();
    let (coef, total) = if dim == 1 {
        (2.0 * c, proxy)
    } else {
        (
            std::f64::consts::SQRT_2 * std::f64::consts::TAU * (2.0 + alpha) * c / (1.0 + alpha),
            2.0 * proxy,
        )
    };
    Ok((coef / (TAIL_BUDGET * total)).powf(1.0 / (1.0 + alpha)))
}

/// Default lattice for (model, t) at a chosen resolution: half-width
/// R·t^{1/α} (+ a drift allowance), R as in the module docs.
pub fn default_grid_sized(model: &LevyModel, t: f64, points_per_axis: usize) -> Result<GridSpec> {
    validate_time(t)?;
    let alpha = model.declared_index().ok_or_else(|| {
        Error::OutOfDomain(format!(
            "model '{}' has no declared growth index; choose the grid explicitly",
            model.name()
        ))
    })?;
    let scale = if alpha >= 2.0 {
        12.0
    } else {
        alias_safe_scale(points_per_axis, alpha).min(tail_budget_scale(model.dim(), alpha)?)
    };
    let mut half = scale * t.powf(1.0 / alpha);
    if let Some(triplet) = model.triplet() {
        half += (triplet.drift()[0].hypot(triplet.drift()[1])) * t;
    }
    GridSpec::new(model.dim(), points_per_axis, half)
}

/// [`default_grid_sized`] at the per-dimension default resolution.
pub fn default_grid(model: &LevyModel, t: f64) -> Result<GridSpec> {
    let n = if model.dim() == 1 { DEFAULT_POINTS_D1 } else { DEFAULT_POINTS_D2 };
    default_grid_sized(model, t, n)
}

/// Log-spaced time list at 12 points per decade (at least 4 points).
pub fn default_time_list(t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    if !(t_lo > 0.0 && t_hi > t_lo) {
        return Err(Error::OutOfDomain(format!("time range [{t_lo}, {t_hi}] is invalid")));
    }
    let decades = (t_hi / t_lo).log10();
    let n = ((12.0 * decades).ceil() as usize + 1).max(4);
    Ok((0..n)
        .map(|i| t_lo * (t_hi / t_lo).powf(i as f64 / (n - 1) as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_TAU: f64 = 2.5066282746310002; // √(2π)

    fn standard_normal(x: f64) -> f64 {
        (-0.5 * x * x).exp() / SQRT_TAU
    }

    fn cauchy_density(x: f64) -> f64 {
        1.0 / (std::f64::consts::PI * (1.0 + x * x))
    }

    fn cauchy_density_derivative(x: f64) -> f64 {
        -2.0 * x / (std::f64::consts::PI * (1.0 + x * x).powi(2))
    }

    /// 2L-periodization of a 1-d function (what lattice synthesis converges to).
    fn periodized(f: impl Fn(f64) -> f64, x: f64, period: f64) -> f64 {
        (-64i64..=64).map(|k| f(x + period * k as f64)).sum()
    }

    #[test]
    fn gaussian_density_matches_closed_form() {
        let model = LevyModel::standard_brownian(1).unwrap();
        let spec = default_grid(&model, 1.0).unwrap();
        assert_eq!(spec.points_per_axis(), DEFAULT_POINTS_D1);
        assert!((spec.half_width() - 12.0).abs() < 1e-12);
        let p = density(&model, 1.0, &spec).unwrap();
        assert!(!p.growth_warning);
        assert!(p.mass_error.abs() < 1e-12, "mass error {}", p.mass_error);
        assert!(p.min_value > -1e-8, "min value {}", p.min_value);
        assert!(p.tail_mass_estimate < 1e-10);
        let mut worst = 0.0f64;
        for (flat, &v) in p.field.values().iter().enumerate() {
            let x = spec.point(flat)[0];
            worst = worst.max((v - standard_normal(x)).abs());
        }
        assert!(worst < 1e-6, "sup deviation {worst:.2e}");
    }

    #[test]
    fn gaussian_derivative_matches_closed_form() {
        let model = LevyModel::standard_brownian(1).unwrap();
        let spec = default_grid(&model, 1.0).unwrap();
        let dp = density_partial(&model, 1.0, [1, 0], &spec).unwrap();
        let mut worst = 0.0f64;
        for (flat, &v) in dp.values().iter().enumerate() {
            let x = spec.point(flat)[0];
            worst = worst.max((v - (-x) * standard_normal(x)).abs());
        }
        assert!(worst < 1e-6, "sup deviation {worst:.2e}");
    }

    #[test]
    fn cauchy_density_matches_periodized_closed_form() {
        let model = LevyModel::cauchy(1).unwrap();
        let spec = GridSpec::new(1, 1 << 10, 50.0).unwrap();
        let p = density(&model, 1.0, &spec).unwrap();
        assert!(p.mass_error.abs() < 1e-12);
        // true tail mass outside |x| ≤ 50 is 2/(π·50) ≈ 0.0127
        assert!((p.tail_mass_estimate - 0.0127).abs() < 0.002, "tail estimate {}", p.tail_mass_estimate);
        let mut worst_rel = 0.0f64;
        let mut worst_abs = 0.0f64;
        for (flat, &v) in p.field.values().iter().enumerate() {
            let x = spec.point(flat)[0];
            if x.abs() <= 10.0 {
                let fold = periodized(cauchy_density, x, 100.0);
                worst_rel = worst_rel.max((v - fold).abs() / fold);
                worst_abs = worst_abs.max((v - cauchy_density(x)).abs());
            }
        }
        assert!(worst_rel < 1e-3, "relative deviation from periodization {worst_rel:.2e}");
        // against the raw closed form the folding itself is the error floor
        assert!(worst_abs < 5e-4, "absolute deviation from closed form {worst_abs:.2e}");
    }

    #[test]
    fn cauchy_derivative_matches_periodized_closed_form() {
        let model = LevyModel::cauchy(1).unwrap();
        let spec = GridSpec::new(1, 1 << 10, 50.0).unwrap();
        let dp = density_partial(&model, 1.0, [1, 0], &spec).unwrap();
        let sup = dp.sup_norm();
        let mut worst = 0.0f64;
        for (flat, &v) in dp.values().iter().enumerate() {
            let x = spec.point(flat)[0];
            if x.abs() <= 10.0 {
                let want = periodized(cauchy_density_derivative, x, 100.0);
                worst = worst.max((v - want).abs());
            }
        }
        assert!(worst < 1e-3 * sup, "deviation {worst:.2e} vs scale {sup:.2e}");
        // pointwise relative accuracy away from the zero crossing
        for target in [0.5, 1.0, 3.0, 10.0] {
            let flat = spec.index_of(&[spec.spacing() * (target / spec.spacing()).round()]).unwrap();
            let x = spec.point(flat)[0];
            let got = dp.values()[flat];
            let want = periodized(cauchy_density_derivative, x, 100.0);
            assert!(
                (got - want).abs() < 1e-3 * want.abs(),
                "x={x}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn two_dimensional_density_is_symmetric_and_derivative_odd() {
        let model = LevyModel::cauchy(2).unwrap();
        let spec = GridSpec::new(2, 256, 20.0).unwrap();
        let p = density(&model, 1.0, &spec).unwrap();
        let n = spec.points_per_axis();
        let sup = p.field.sup_norm();
        let dp = density_partial(&model, 1.0, [1, 0], &spec).unwrap();
        let dsup = dp.sup_norm();
        for i in 0..n {
            for j in 0..n {
                // −x partner of index (i,j) is ((N−i) mod N, (N−j) mod N)
                let flat = i * n + j;
                let mirror = ((n - i) % n) * n + (n - j) % n;
                let (a, b) = (p.field.values()[flat], p.field.values()[mirror]);
                assert!((a - b).abs() <= 1e-10 * sup, "density symmetry broken at ({i},{j})");
                let (da, db) = (dp.values()[flat], dp.values()[mirror]);
                assert!((da + db).abs() <= 1e-9 * dsup, "derivative oddness broken at ({i},{j})");
            }
        }
    }

    #[test]
    fn stable_scaling_collapses_densities_on_matched_lattices() {
        let model = LevyModel::isotropic_stable(1, 0.5).unwrap();
        let spec1 = default_grid(&model, 1.0).unwrap();
        let spec4 = default_grid(&model, 4.0).unwrap();
        // t^{1/α} = t² = 16: the t=4 lattice is the t=1 lattice scaled by 16
        assert!((spec4.half_width() - 16.0 * spec1.half_width()).abs() < 1e-9);
        let p1 = density(&model, 1.0, &spec1).unwrap();
        let p4 = density(&model, 4.0, &spec4).unwrap();
        let scale = 4f64.powf(-1.0 / 0.5); // t^{−d/α}
        let mut worst = 0.0f64;
        for (a, b) in p4.field.values().iter().zip(p1.field.values()) {
            worst = worst.max((a - scale * b).abs());
        }
        assert!(worst < 1e-5, "scaling collapse off by {worst:.2e}");
    }

    #[test]
    fn gradient_fit_recovers_index_exactly_for_stables() {
        for (alpha, d) in [(1.0, 1usize), (0.5, 1)] {
            let model = LevyModel::isotropic_stable(d, alpha).unwrap();
            let times = default_time_list(0.5, 2.0).unwrap();
            let base = default_grid(&model, *times.last().unwrap()).unwrap();
            let curve = gradient_l1_curve(&model, &times, &base).unwrap();
            assert!(curve.windows(2).all(|w| w[1].1 < w[0].1), "curve must decrease");
            let fit = fit_gradient_exponent(&curve).unwrap();
            assert!(
                (fit.index - alpha).abs() < 1e-6 * alpha,
                "alpha={alpha} d={d}: recovered {}",
                fit.index
            );
            assert!(fit.fit.residual < 1e-8);
        }
    }

    #[test]
    fn brownian_gradient_prefactor_is_sqrt_two_over_pi() {
        let model = LevyModel::standard_brownian(1).unwrap();
        let times = default_time_list(0.5, 2.0).unwrap();
        let base = default_grid(&model, *times.last().unwrap()).unwrap();
        let fit = fit_gradient_exponent(&gradient_l1_curve(&model, &times, &base).unwrap()).unwrap();
        assert!((fit.index - 2.0).abs() < 1e-6);
        let want = (2.0 / std::f64::consts::PI).sqrt();
        assert!((fit.prefactor - want).abs() < 1e-5, "prefactor {}", fit.prefactor);
    }

    #[test]
    fn chapman_kolmogorov_residual_is_tiny() {
        let model = LevyModel::cauchy(1).unwrap();
        let spec = GridSpec::new(1, 1 << 10, 50.0).unwrap();
        let report = check_chapman_kolmogorov(&model, 0.5, &spec).unwrap();
        assert!(report.pass, "residual {:?}", report.get("l1_residual"));
        assert!(report.get("l1_residual").unwrap() < 1e-10);
    }

    #[test]
    fn second_derivative_bound_holds_with_headroom() {
        let gauss = LevyModel::standard_brownian(1).unwrap();
        let spec = default_grid(&gauss, 1.0).unwrap();
        let report = check_second_derivative_bound(&gauss, 1.0, &spec).unwrap();
        assert!(report.pass);
        // Gaussian ratio E|Z²−1|/(2/π) ≈ 0.760
        let ratio = report.get("max_ratio_to_square").unwrap();
        assert!((ratio - 0.76).abs() < 0.01, "ratio {ratio}");

        let cauchy = LevyModel::cauchy(1).unwrap();
        let spec = GridSpec::new(1, 1 << 12, 100.0).unwrap();
        assert!(check_second_derivative_bound(&cauchy, 1.0, &spec).unwrap().pass);
    }

    #[test]
    fn fourier_bound_sits_below_gradient_norm() {
        let model = LevyModel::standard_brownian(1).unwrap();
        let spec = default_grid(&model, 1.0).unwrap();
        let bound = fourier_lower_bound(&model, 1.0, &spec).unwrap();
        // continuum sup of ξe^{−ξ²/2} is e^{−1/2}
        assert!((bound - (-0.5f64).exp()).abs() < 1e-3, "bound {bound}");
        let report = check_fourier_lower_bound(&model, 1.0, &spec).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn extension_rate_and_verifier() {
        let b = extend_gradient_estimate(1.0, 1.0, 1.0).unwrap();
        assert!((b.rate - 2f64.ln()).abs() < 1e-15);
        let b2 = extend_gradient_estimate(1.0, 0.5, 2.0).unwrap();
        assert!((b2.rate - 2f64.ln()).abs() < 1e-15);

        let model = LevyModel::cauchy(1).unwrap();
        let times = default_time_list(0.5, 2.0).unwrap();
        let base = default_grid(&model, *times.last().unwrap()).unwrap();
        let fit = fit_gradient_exponent(&gradient_l1_curve(&model, &times, &base).unwrap()).unwrap();
        let bound = extend_gradient_estimate(fit.prefactor, 1.0, 1.0).unwrap();
        let long_times = default_time_list(1.0, 8.0).unwrap();
        let long_base = default_grid(&model, 8.0).unwrap();
        let report = bound.verify(&model, &long_times, &long_base).unwrap();
        assert!(report.pass, "ratio {:?}", report.get("max_ratio_to_bound"));
    }

    #[test]
    fn partial_order_cap_and_time_lists() {
        let model = LevyModel::cauchy(1).unwrap();
        let spec = GridSpec::new(1, 256, 20.0).unwrap();
        assert!(density_partial(&model, 1.0, [5, 0], &spec).is_err());
        assert!(density_partial(&model, 1.0, [0, 1], &spec).is_err());

        let times = default_time_list(0.1, 10.0).unwrap();
        assert_eq!(times.len(), 25); // 12 per decade over 2 decades, inclusive
        assert!((times[0] - 0.1).abs() < 1e-15 && (times[24] - 10.0).abs() < 1e-12);
        assert!(default_time_list(1.0, 0.5).is_err());
    }
}
