//! Random source models: channelwise white noise, twisted white noise with a
//! constant channel covariance, and symbol-filtered noise on a periodic grid.
//!
//! Conventions used throughout the crate:
//! - Grid functions use the weighted inner product `<u, v> = sum_g w_g u_g conj(v_g)`.
//! - An operator is stored as the matrix that acts by plain matvec, i.e. the
//!   Schwartz kernel times the quadrature weight of the integrated variable.
//! - Spatial white noise on a grid has covariance `diag(1/w_g)` (the discrete
//!   delta surrogate); temporal white noise has increment variance `dt`.

use crate::error::{invalid, Error, Result};
use crate::modal::ModalModel;
use crate::C64;
use ndarray::{Array1, Array2, Array3};
use ndarray_linalg::{EigValsh, UPLO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// A symbol sampled on a phase-space grid: values `v(x_i, ξ_m)` with the
/// ξ axis stored in DFT frequency order (0, 1, …, n/2-1, -n/2, …, -1 times
/// the dual step).
#[derive(Clone, Debug)]
pub struct SymbolField {
    x_grid: Vec<f64>,
    xi_grid: Vec<f64>,
    epsilon: f64,
    values: Array2<C64>,
}

impl SymbolField {
    pub fn new(x_grid: Vec<f64>, xi_grid: Vec<f64>, epsilon: f64, values: Array2<C64>) -> Result<Self> {
        if x_grid.len() < 2 || xi_grid.len() < 2 {
            return Err(invalid("symbol grids need at least 2 points per axis"));
        }
        if !(epsilon > 0.0) {
            return Err(invalid("symbol scale epsilon must be positive"));
        }
        if values.nrows() != x_grid.len() || values.ncols() != xi_grid.len() {
            return Err(Error::GridMismatch(format!(
                "symbol values {}x{} do not match grids {}x{}",
                values.nrows(),
                values.ncols(),
                x_grid.len(),
                xi_grid.len()
            )));
        }
        Ok(Self { x_grid, xi_grid, epsilon, values })
    }

    /// Sample `f(x, ξ)` on the periodic grid `x_i = i·length/n` with the
    /// ε-scaled dual lattice `ξ_m = ε·2πm/length`, `m` in DFT order.
    pub fn on_torus(
        n: usize,
        length: f64,
        epsilon: f64,
        mut f: impl FnMut(f64, f64) -> C64,
    ) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(invalid("torus symbol grid must be even and >= 2"));
        }
        if !(length > 0.0) || !(epsilon > 0.0) {
            return Err(invalid("torus symbol needs positive length and epsilon"));
        }
        let dx = length / n as f64;
        let dxi = epsilon * 2.0 * std::f64::consts::PI / length;
        let x_grid: Vec<f64> = (0..n).map(|i| i as f64 * dx).collect();
        let xi_grid: Vec<f64> = crate::fftutil::dft_int_freqs(n)
            .into_iter()
            .map(|m| m as f64 * dxi)
            .collect();
        let values = Array2::from_shape_fn((n, n), |(i, m)| f(x_grid[i], xi_grid[m]));
        Self::new(x_grid, xi_grid, epsilon, values)
    }

    pub fn x_grid(&self) -> &[f64] {
        &self.x_grid
    }

    pub fn xi_grid(&self) -> &[f64] {
        &self.xi_grid
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn values(&self) -> &Array2<C64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<C64> {
        &mut self.values
    }

    /// Period of the x grid (spacing times point count), assuming uniformity.
    pub fn x_length(&self) -> f64 {
        let n = self.x_grid.len();
        (self.x_grid[1] - self.x_grid[0]) * n as f64
    }

    /// Largest |value| on the ξ-Nyquist row (the boundary ring of the sampled
    /// dual lattice). Symbols intended for quantization round trips should
    /// keep this at zero; the quantizer treats that row as a cosine.
    pub fn boundary_ring_max(&self) -> f64 {
        let n = self.xi_grid.len();
        let freqs = crate::fftutil::dft_int_freqs(n);
        let mut worst: f64 = 0.0;
        for (m, &fm) in freqs.iter().enumerate() {
            if fm == -(n as i64) / 2 {
                for i in 0..self.values.nrows() {
                    worst = worst.max(self.values[[i, m]].norm());
                }
            }
        }
        worst
    }

    /// True when both symbols live on the same (x, ξ, ε) discretization.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.x_grid.len() == other.x_grid.len()
            && self.xi_grid.len() == other.xi_grid.len()
            && (self.epsilon - other.epsilon).abs() <= 1e-12 * self.epsilon.abs()
            && self
                .x_grid
                .iter()
                .zip(&other.x_grid)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))
            && self
                .xi_grid
                .iter()
                .zip(&other.xi_grid)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))
    }
}

/// A discrete integral operator on a periodic 1D grid: `matrix` acts on grid
/// functions by plain matvec and equals the Schwartz kernel times the weight
/// of the integrated variable (`matrix[g, h] = K(x_g, x_h)·w_h`).
#[derive(Clone, Debug)]
pub struct OperatorKernel {
    points: Vec<f64>,
    weights: Vec<f64>,
    matrix: Array2<C64>,
}

impl OperatorKernel {
    pub fn new(points: Vec<f64>, weights: Vec<f64>, matrix: Array2<C64>) -> Result<Self> {
        let n = points.len();
        if weights.len() != n || matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::GridMismatch(format!(
                "operator dimensions disagree: {} points, {} weights, {}x{} matrix",
                n,
                weights.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(invalid("quadrature weights must be positive"));
        }
        Ok(Self { points, weights, matrix })
    }

    /// Wrap a plain matrix as an operator on the abstract index grid.
    pub fn from_matrix(matrix: Array2<C64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::GridMismatch("operator matrix must be square and nonempty".into()));
        }
        let points = (0..n).map(|i| i as f64).collect();
        let weights = vec![1.0; n];
        Self::new(points, weights, matrix)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Apply to a grid function.
    pub fn apply(&self, u: &Array1<C64>) -> Result<Array1<C64>> {
        if u.len() != self.dim() {
            return Err(Error::GridMismatch(format!(
                "operator of dimension {} applied to vector of length {}",
                self.dim(),
                u.len()
            )));
        }
        Ok(self.matrix.dot(u))
    }

    /// Kernel value `K(x_g, x_h) = matrix[g, h] / w_h`.
    pub fn kernel_value(&self, g: usize, h: usize) -> C64 {
        self.matrix[[g, h]] / self.weights[h]
    }

    /// Weighted inner product `<u, v> = sum_g w_g u_g conj(v_g)`.
    pub fn inner(&self, u: &Array1<C64>, v: &Array1<C64>) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for g in 0..self.dim() {
            acc += self.weights[g] * u[g] * v[g].conj();
        }
        acc
    }
}

/// Triangular time-correlation window of half-width `t0`: the source is
/// stationary in time with correlation profile `ρ(t) = (1 - |t|/t0)/t0`
/// (unit mass, vanishing for |t| ≥ t0) and power spectrum
/// `|h(ω)|² = sinc²(ω t0 / 2)`.
#[derive(Clone, Copy, Debug)]
pub struct OmegaWindow {
    t0: f64,
}

impl OmegaWindow {
    pub fn new(t0: f64) -> Result<Self> {
        if !(t0 > 0.0) {
            return Err(invalid("time-correlation support t0 must be positive"));
        }
        Ok(Self { t0 })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// `ρ(t)`: triangular, unit mass, supported on |t| < t0.
    pub fn time_profile(&self, t: f64) -> f64 {
        let u = 1.0 - t.abs() / self.t0;
        if u > 0.0 {
            u / self.t0
        } else {
            0.0
        }
    }

    /// `|h(ω)|² = sinc²(ω t0/2)`, the Fourier transform of `ρ`.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        crate::special::sinc(0.5 * omega * self.t0).powi(2)
    }
}

/// Which random source drives the dynamics.
#[derive(Clone, Debug)]
pub enum NoiseVariant {
    /// Independent white noise per channel.
    White { channels: usize },
    /// White in space/time, constant Hermitian PSD channel covariance `K₀`.
    Twisted { k0: Array2<C64> },
    /// `f = Op(l) ẇ` on a periodic grid, optionally with a triangular
    /// time-correlation window (product symbol `l(x,ξ)h(ω)`).
    Filtered {
        symbol: SymbolField,
        omega: Option<OmegaWindow>,
    },
}

/// A noise model plus the RNG seed that makes realizations reproducible.
#[derive(Clone, Debug)]
pub struct NoiseSpec {
    pub variant: NoiseVariant,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn white(channels: usize, seed: u64) -> Result<Self> {
        if channels == 0 {
            return Err(invalid("white noise needs at least one channel"));
        }
        Ok(Self { variant: NoiseVariant::White { channels }, seed })
    }

    /// Validates that `K₀` is Hermitian positive semidefinite
    /// (min eigenvalue ≥ -1e-12 relative to the largest).
    pub fn twisted(k0: Array2<C64>, seed: u64) -> Result<Self> {
        if k0.nrows() != k0.ncols() || k0.is_empty() {
            return Err(invalid("channel covariance must be square and nonempty"));
        }
        let hermiticity: f64 = k0
            .indexed_iter()
            .map(|((i, j), z)| (z - k0[[j, i]].conj()).norm())
            .fold(0.0, f64::max);
        let scale: f64 = k0.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
        if hermiticity > 1e-12 * scale {
            return Err(invalid(format!(
                "channel covariance is not Hermitian (asymmetry {hermiticity:.3e})"
            )));
        }
        let eigs = k0
            .eigvalsh(UPLO::Lower)
            .map_err(|e| Error::Numerical(format!("covariance eigensolve failed: {e}")))?;
        let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -1e-12 * scale {
            return Err(invalid(format!(
                "channel covariance has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { variant: NoiseVariant::Twisted { k0 }, seed })
    }

    pub fn filtered(symbol: SymbolField, omega: Option<OmegaWindow>, seed: u64) -> Self {
        Self { variant: NoiseVariant::Filtered { symbol, omega }, seed }
    }

    /// Number of field channels this noise drives.
    pub fn channels(&self) -> usize {
        match &self.variant {
            NoiseVariant::White { channels } => *channels,
            NoiseVariant::Twisted { k0 } => k0.nrows(),
            NoiseVariant::Filtered { .. } => 1,
        }
    }
}

/// RNG for one realization: a fixed seed plus a per-realization stream, so
/// ensembles are reproducible and independent across workers.
pub fn substream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Modal white-noise increments: `[steps × J × channels]` of i.i.d.
/// `N(0, dt)` draws (the discrete surrogate of time-white noise).
pub fn sample_white_noise(
    model: &ModalModel,
    channels: usize,
    dt: f64,
    steps: usize,
    seed: u64,
) -> Result<Array3<f64>> {
    if !(dt > 0.0) {
        return Err(invalid("time step must be positive"));
    }
    if channels == 0 {
        return Err(invalid("need at least one noise channel"));
    }
    let j = model.n_modes();
    let sigma = dt.sqrt();
    let mut rng = substream_rng(seed, 0);
    let mut out = Array3::zeros((steps, j, channels));
    for s in 0..steps {
        for m in 0..j {
            for c in 0..channels {
                let z: f64 = rng.sample(StandardNormal);
                out[[s, m, c]] = sigma * z;
            }
        }
    }
    Ok(out)
}

/// Spatial white-noise grid vector with covariance `diag(1/w_g)` (real draws).
pub fn sample_grid_white(weights: &[f64], rng: &mut ChaCha12Rng) -> Array1<C64> {
    Array1::from_shape_fn(weights.len(), |g| {
        let z: f64 = rng.sample(StandardNormal);
        C64::new(z / weights[g].sqrt(), 0.0)
    })
}

/// One realization of symbol-filtered noise: `f = L·w` with `w` spatial white
/// noise on the operator's grid.
pub fn sample_filtered_noise(l: &OperatorKernel, seed: u64) -> Result<Array1<C64>> {
    let mut rng = substream_rng(seed, 0);
    let w = sample_grid_white(l.weights(), &mut rng);
    l.apply(&w)
}

/// Analytic two-point correlation of the source at spatial points `x`, `y`
/// and time lag `t`, as an N×N channel matrix.
///
/// White and twisted variants are white in space and time: the spatial delta
/// is reported as an indicator (1 when `x == y` exactly; the caller owns the
/// `1/w_g` grid weighting), the temporal delta as the `t == 0` slot. The
/// filtered variant returns the smooth kernel value `[LL*](x, y)` times the
/// time profile (`ρ(t)` with an ω window; a `t == 0` indicator without one),
/// with `x`, `y` required to be grid points.
pub fn correlation_kernel(spec: &NoiseSpec, x: &[f64], y: &[f64], t: f64) -> Result<Array2<C64>> {
    match &spec.variant {
        NoiseVariant::White { channels } => {
            let on_diag = x == y && t == 0.0;
            Ok(Array2::from_shape_fn((*channels, *channels), |(i, j)| {
                if on_diag && i == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }))
        }
        NoiseVariant::Twisted { k0 } => {
            if x == y && t == 0.0 {
                Ok(k0.clone())
            } else {
                Ok(Array2::zeros((k0.nrows(), k0.nrows())))
            }
        }
        NoiseVariant::Filtered { symbol, omega } => {
            let time_factor = match omega {
                Some(win) => win.time_profile(t),
                None => {
                    if t == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            if time_factor == 0.0 {
                return Ok(Array2::zeros((1, 1)));
            }
            let op = crate::quantize::weyl_quantize(symbol)?;
            let locate = |p: &[f64]| -> Result<usize> {
                let &[px] = p else {
                    return Err(invalid("filtered noise lives on a 1D grid"));
                };
                op.points()
                    .iter()
                    .position(|&q| (q - px).abs() <= 1e-9 * (1.0 + px.abs()))
                    .ok_or_else(|| {
                        Error::GridMismatch(format!("point {px} is not on the noise grid"))
                    })
            };
            let (g, h) = (locate(x)?, locate(y)?);
            // [LL*] matrix is M·M^H for uniform weights; kernel value divides
            // by the weight of the integrated variable.
            let m = op.matrix();
            let mut acc = C64::new(0.0, 0.0);
            for q in 0..op.dim() {
                acc += m[[g, q]] * m[[h, q]].conj();
            }
            let kernel = acc / op.weights()[h];
            Ok(Array2::from_elem((1, 1), kernel * time_factor))
        }
    }
}

/// Mean and standard error of one Wigner pairing over an ensemble.
#[derive(Clone, Copy, Debug)]
pub struct WignerEstimate {
    pub mean: C64,
    pub stderr: f64,
}

/// Ensemble-averaged Wigner pairings `<Op(a) f, f>` for each test symbol.
///
/// All realizations must live on the symbols' shared x grid; the standard
/// error combines the real and imaginary inter-realization variances.
pub fn estimate_wigner(
    realizations: &[Array1<C64>],
    symbols: &[SymbolField],
) -> Result<Vec<WignerEstimate>> {
    if realizations.len() < 2 {
        return Err(invalid("wigner estimation needs at least 2 realizations"));
    }
    let mut out = Vec::with_capacity(symbols.len());
    for sym in symbols {
        if let Some(first) = symbols.first() {
            if !sym.same_grid(first) {
                return Err(Error::GridMismatch("test symbols on different grids".into()));
            }
        }
        let op = crate::quantize::weyl_quantize(sym)?;
        let mut pairings = Vec::with_capacity(realizations.len());
        for f in realizations {
            let af = op.apply(f)?;
            pairings.push(op.inner(&af, f));
        }
        let n = pairings.len() as f64;
        let mean = pairings.iter().sum::<C64>() / n;
        let var_re = pairings.iter().map(|p| (p.re - mean.re).powi(2)).sum::<f64>() / (n - 1.0);
        let var_im = pairings.iter().map(|p| (p.im - mean.im).powi(2)).sum::<f64>() / (n - 1.0);
        let stderr = ((var_re + var_im) / n).sqrt();
        out.push(WignerEstimate { mean, stderr });
    }
    Ok(out)
}
