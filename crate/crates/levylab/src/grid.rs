//! Periodic lattices and the discrete Fourier transform pair.
//!
//! A [`GridSpec`] describes a uniform lattice on the box [-L, L)^d covering
//! d ∈ {1, 2} with N points per axis (N a power of two). Its dual lattice has
//! frequency spacing π/L and Nyquist radius πN/(2L).
//!
//! Conventions (fixed once, everything downstream depends on them):
//!
//! - analysis:   `F f(ξ) = ∫ f(x) e^{+i x·ξ} dx`, approximated by the lattice
//!   sum — so the characteristic function of a density lives at `F p_t(ξ)`.
//! - synthesis:  `f(x) = (2π)^{-d} ∫ e^{-i x·ξ} F f(ξ) dξ`, approximated on
//!   the frequency lattice.
//!
//! Synthesis of samples of a continuum transform produces the 2L-periodization
//! of the underlying function (Poisson summation); window sizes must be chosen
//! so the images are below the accuracy target. Frequency truncation is policed
//! separately by the Nyquist-shell check: synthesis refuses spectra that still
//! carry mass at the lattice edge.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Magnitude threshold at the Nyquist shell above which synthesis refuses to
/// run: spectra larger than this at the lattice edge alias into the result.
pub const ALIAS_THRESHOLD: f64 = 1e-6;

/// Uniform periodic lattice on [-half_width, half_width)^dim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    points_per_axis: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points_per_axis: usize, half_width: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dimension must be 1 or 2, got {dim}")));
        }
        if points_per_axis < 64 || !points_per_axis.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 64, got {points_per_axis}"
            )));
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidGrid(format!("half-width must be positive, got {half_width}")));
        }
        Ok(GridSpec { dim, points_per_axis, half_width })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Lattice spacing 2L/N.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Frequency lattice spacing π/L.
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    /// Nyquist radius πN/(2L) per axis.
    pub fn nyquist(&self) -> f64 {
        self.freq_spacing() * (self.points_per_axis / 2) as f64
    }

    pub fn total_points(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    /// Cell volume Δx^d.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Same box, twice the resolution.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            dim: self.dim,
            points_per_axis: self.points_per_axis * 2,
            half_width: self.half_width,
        }
    }

    #[inline]
    fn axis_indices(&self, flat: usize) -> (usize, usize) {
        match self.dim {
            1 => (flat, 0),
            _ => (flat / self.points_per_axis, flat % self.points_per_axis),
        }
    }

    /// Spatial coordinates of the lattice point with the given flat index.
    /// In d=1 the second coordinate is 0.
    #[inline]
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let (i0, i1) = self.axis_indices(flat);
        let dx = self.spacing();
        let x0 = -self.half_width + i0 as f64 * dx;
        let x1 = if self.dim == 2 { -self.half_width + i1 as f64 * dx } else { 0.0 };
        [x0, x1]
    }

    /// Signed wavenumber index along one axis for raw index i: i for i < N/2,
    /// i - N otherwise.
    #[inline]
    fn wavenumber(&self, i: usize) -> i64 {
        let n = self.points_per_axis;
        if i < n / 2 { i as i64 } else { i as i64 - n as i64 }
    }

    /// Frequency-lattice coordinates of the flat index. In d=1 the second
    /// coordinate is 0.
    #[inline]
    pub fn frequency(&self, flat: usize) -> [f64; 2] {
        let (i0, i1) = self.axis_indices(flat);
        let dxi = self.freq_spacing();
        let f0 = self.wavenumber(i0) as f64 * dxi;
        let f1 = if self.dim == 2 { self.wavenumber(i1) as f64 * dxi } else { 0.0 };
        [f0, f1]
    }

    /// Parity (-1)^(i0+i1) of the raw indices; equals the fftshift modulation
    /// (-1)^(m0+m1) because N is even.
    #[inline]
    fn parity(&self, flat: usize) -> f64 {
        let (i0, i1) = self.axis_indices(flat);
        if (i0 + i1) % 2 == 0 { 1.0 } else { -1.0 }
    }

    /// Flat index of the lattice point closest to x (components wrapped into
    /// the box). Returns None if x is farther than half a cell from the
    /// lattice, i.e. not a lattice point.
    pub fn index_of(&self, x: &[f64]) -> Option<usize> {
        let dx = self.spacing();
        let n = self.points_per_axis;
        let mut flat = 0usize;
        for axis in 0..self.dim {
            let k = (x[axis] + self.half_width) / dx;
            let kr = k.round();
            if (k - kr).abs() > 1e-9 {
                return None;
            }
            let ki = kr as i64;
            if ki < 0 || ki >= n as i64 {
                return None;
            }
            flat = flat * n + ki as usize;
        }
        Some(flat)
    }

    /// True if flat index lies on the Nyquist shell (some axis at wavenumber
    /// -N/2).
    #[inline]
    fn on_nyquist_shell(&self, flat: usize) -> bool {
        let (i0, i1) = self.axis_indices(flat);
        i0 == self.points_per_axis / 2 || (self.dim == 2 && i1 == self.points_per_axis / 2)
    }
}

/// Real-valued samples on a [`GridSpec`] lattice.
#[derive(Debug, Clone)]
pub struct GridField {
    spec: GridSpec,
    values: Vec<f64>,
}

impl GridField {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.total_points() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match lattice size {}",
                values.len(),
                spec.total_points()
            )));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidGrid("field contains NaN".into()));
        }
        Ok(GridField { spec, values })
    }

    /// Sample a function on the lattice.
    pub fn sample(spec: GridSpec, f: impl Fn(&[f64; 2]) -> f64) -> Result<Self> {
        let values: Vec<f64> = (0..spec.total_points()).map(|i| f(&spec.point(i))).collect();
        GridField::new(spec, values)
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    /// Lattice sum times cell volume — the rectangle-rule integral over the box.
    pub fn lattice_integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_volume()
    }

    /// Rectangle-rule L¹ norm over the box.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.spec.cell_volume()
    }

    /// Value at the lattice point nearest to x, if x is a lattice point.
    pub fn value_at(&self, x: &[f64]) -> Option<f64> {
        self.spec.index_of(x).map(|i| self.values[i])
    }

    /// Periodic shift by an integer lattice vector: result(x) = self(x + steps·Δx).
    pub fn shift(&self, steps: &[i64]) -> GridField {
        let n = self.spec.points_per_axis as i64;
        let mut out = vec![0.0; self.values.len()];
        match self.spec.dim {
            1 => {
                let s = steps[0].rem_euclid(n);
                for i in 0..n {
                    out[i as usize] = self.values[((i + s) % n) as usize];
                }
            }
            _ => {
                let s0 = steps[0].rem_euclid(n);
                let s1 = steps.get(1).copied().unwrap_or(0).rem_euclid(n);
                for i0 in 0..n {
                    let j0 = ((i0 + s0) % n) as usize;
                    for i1 in 0..n {
                        let j1 = ((i1 + s1) % n) as usize;
                        out[(i0 * n + i1) as usize] = self.values[j0 * self.spec.points_per_axis + j1];
                    }
                }
            }
        }
        GridField { spec: self.spec, values: out }
    }

    /// Pointwise a·self + b·other on the same lattice.
    pub fn linear_combination(&self, a: f64, other: &GridField, b: f64) -> Result<GridField> {
        if self.spec != other.spec {
            return Err(Error::InvalidGrid("fields live on different lattices".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        GridField::new(self.spec, values)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<GridField> {
        GridField::new(self.spec, self.values.iter().map(|&v| f(v)).collect())
    }
}

/// Complex frequency-domain samples on the dual lattice of a [`GridSpec`].
#[derive(Debug, Clone)]
pub struct SpectralField {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Build from a function of the frequency vector.
    pub fn from_symbol(spec: GridSpec, g: impl Fn(&[f64; 2]) -> Complex64) -> Self {
        let values = (0..spec.total_points()).map(|i| g(&spec.frequency(i))).collect();
        SpectralField { spec, values }
    }

    /// Multiply pointwise by a function of the frequency vector.
    pub fn modulate(&self, g: impl Fn(&[f64; 2]) -> Complex64) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v * g(&self.spec.frequency(i)))
            .collect();
        SpectralField { spec: self.spec, values }
    }

    /// Pointwise product with another spectrum on the same lattice.
    pub fn product(&self, other: &SpectralField) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::InvalidGrid("spectra live on different lattices".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(SpectralField { spec: self.spec, values })
    }

    /// Largest magnitude on the Nyquist shell, relative to the overall
    /// largest magnitude (0 when the spectrum vanishes identically).
    pub fn nyquist_ratio(&self) -> f64 {
        let mut max_all = 0.0f64;
        let mut max_shell = 0.0f64;
        for (i, v) in self.values.iter().enumerate() {
            let m = v.norm();
            max_all = max_all.max(m);
            if self.spec.on_nyquist_shell(i) {
                max_shell = max_shell.max(m);
            }
        }
        if max_all == 0.0 { 0.0 } else { max_shell / max_all }
    }

    fn check_aliasing(&self, context: &str) -> Result<()> {
        let ratio = self.nyquist_ratio();
        if ratio > ALIAS_THRESHOLD {
            return Err(Error::Aliasing {
                edge_magnitude: ratio,
                threshold: ALIAS_THRESHOLD,
                context: context.to_string(),
            });
        }
        Ok(())
    }
}

/// In-place unnormalized DFT along every axis of a row-major d-dim array.
fn dft_nd(values: &mut [Complex64], spec: &GridSpec, forward: bool) {
    let n = spec.points_per_axis;
    let mut planner = FftPlanner::<f64>::new();
    let fft = if forward { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
    match spec.dim {
        1 => fft.process(values),
        _ => {
            // axis 1: contiguous rows
            for row in values.chunks_exact_mut(n) {
                fft.process(row);
            }
            // axis 0: strided columns through a scratch buffer
            let mut col = vec![Complex64::default(); n];
            for j in 0..n {
                for i in 0..n {
                    col[i] = values[i * n + j];
                }
                fft.process(&mut col);
                for i in 0..n {
                    values[i * n + j] = col[i];
                }
            }
        }
    }
}

/// Result of synthesizing a spectrum: the real field plus the largest
/// imaginary residue discarded (an FFT-consistency diagnostic; tiny for
/// spectra with the conjugate symmetry of a real function).
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub field: GridField,
    pub max_imag: f64,
}

/// Field → spectrum: lattice approximation of `∫ f(x) e^{+i x·ξ} dx`.
pub fn analyze(field: &GridField) -> SpectralField {
    let spec = field.spec;
    let mut buf: Vec<Complex64> = field.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft_nd(&mut buf, &spec, false);
    let scale = spec.cell_volume();
    for (i, v) in buf.iter_mut().enumerate() {
        *v *= scale * spec.parity(i);
    }
    SpectralField { spec, values: buf }
}

/// Spectrum → field: lattice approximation of `(2π)^{-d} ∫ e^{-i x·ξ} g(ξ) dξ`.
///
/// Refuses spectra with mass at the Nyquist shell (relative magnitude above
/// [`ALIAS_THRESHOLD`]); `context` names the caller in that error.
pub fn synthesize(spectrum: &SpectralField, context: &str) -> Result<Synthesis> {
    spectrum.check_aliasing(context)?;
    Ok(synthesize_unchecked(spectrum))
}

/// Synthesis without the aliasing gate, for callers that have already
/// validated the spectrum or measure the residue themselves.
pub fn synthesize_unchecked(spectrum: &SpectralField) -> Synthesis {
    let spec = spectrum.spec;
    let mut buf: Vec<Complex64> = spectrum
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| v * spec.parity(i))
        .collect();
    dft_nd(&mut buf, &spec, true);
    let scale = 1.0 / (2.0 * spec.half_width).powi(spec.dim as i32);
    let mut max_imag = 0.0f64;
    let values: Vec<f64> = buf
        .iter()
        .map(|v| {
            max_imag = max_imag.max((v.im * scale).abs());
            v.re * scale
        })
        .collect();
    Synthesis {
        field: GridField { spec, values },
        max_imag,
    }
}
