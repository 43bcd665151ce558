//! Modal discretizations of 1D/2D Laplacians and the damped-wave Green kernel.
//!
//! A [`ModalModel`] is a finite orthonormal eigenbasis of `-Δ` on an interval,
//! a flat torus, or a rectangle, together with its eigenvalues. All downstream
//! simulators and analytic formulas consume the same truncated basis, so
//! truncation error cancels when simulated statistics are compared against
//! closed forms evaluated on the same model.

use crate::error::{invalid, Result};
use crate::special::{entire_cos, entire_sinc_sqrt};
use ndarray::Array2;

/// Boundary condition for interval and rectangle models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Clone, Debug)]
enum Domain {
    Interval {
        length: f64,
        bc: BoundaryCondition,
    },
    /// Periodic [0, length); `n_grid` fixes both the grid and the mode count.
    Torus {
        n_grid: usize,
        length: f64,
    },
    Rectangle {
        lx: f64,
        ly: f64,
        /// Sine wavenumber pairs (p, q), sorted by eigenvalue.
        modes: Vec<(usize, usize)>,
    },
}

/// One torus mode: the constant, a cosine/sine pair member, or the Nyquist cosine.
#[derive(Clone, Copy, Debug)]
enum TorusMode {
    Constant,
    Cos(usize),
    Sin(usize),
    NyquistCos(usize),
}

/// Finite orthonormal eigenbasis of `-Δ` with eigenvalues `λ_0 ≤ λ_1 ≤ …`.
#[derive(Clone, Debug)]
pub struct ModalModel {
    domain: Domain,
    lambdas: Vec<f64>,
    torus_modes: Vec<TorusMode>,
}

impl ModalModel {
    /// Sine (Dirichlet) or cosine (Neumann) basis on `(0, length)`.
    ///
    /// Dirichlet: `φ_j(x) = √(2/L) sin(jπx/L)`, `λ_j = (jπ/L)²`, `j = 1..=n`.
    /// Neumann: `φ_0 = √(1/L)`, `φ_j(x) = √(2/L) cos(jπx/L)`, `λ_j = (jπ/L)²`, `j = 0..n`.
    pub fn interval(n_modes: usize, length: f64, bc: BoundaryCondition) -> Result<Self> {
        if n_modes == 0 {
            return Err(invalid("interval model needs at least one mode"));
        }
        if !(length > 0.0) {
            return Err(invalid("interval length must be positive"));
        }
        let lambdas = (0..n_modes)
            .map(|j| {
                let wavenumber = match bc {
                    BoundaryCondition::Dirichlet => (j + 1) as f64,
                    BoundaryCondition::Neumann => j as f64,
                };
                (wavenumber * std::f64::consts::PI / length).powi(2)
            })
            .collect();
        Ok(Self {
            domain: Domain::Interval { length, bc },
            lambdas,
            torus_modes: Vec::new(),
        })
    }

    /// Real Fourier basis on the periodic interval `[0, length)`.
    ///
    /// Modes are ordered by eigenvalue `λ = (2πk/length)²`: the constant,
    /// then cosine/sine pairs for `k = 1..n/2`, closing with the unpaired
    /// Nyquist cosine `k = n/2`. Exactly `n_grid` modes, matching the natural
    /// grid `x_g = g·length/n_grid` on which they are discretely orthonormal.
    pub fn torus(n_grid: usize, length: f64) -> Result<Self> {
        if n_grid % 2 != 0 {
            return Err(invalid("torus grid size must be even"));
        }
        if n_grid < 8 {
            return Err(invalid("torus grid size must be at least 8"));
        }
        if !(length > 0.0) {
            return Err(invalid("torus length must be positive"));
        }
        let mut torus_modes = Vec::with_capacity(n_grid);
        torus_modes.push(TorusMode::Constant);
        for k in 1..n_grid / 2 {
            torus_modes.push(TorusMode::Cos(k));
            torus_modes.push(TorusMode::Sin(k));
        }
        torus_modes.push(TorusMode::NyquistCos(n_grid / 2));
        let lambdas = torus_modes
            .iter()
            .map(|m| {
                let k = match m {
                    TorusMode::Constant => 0,
                    TorusMode::Cos(k) | TorusMode::Sin(k) | TorusMode::NyquistCos(k) => *k,
                };
                (2.0 * std::f64::consts::PI * k as f64 / length).powi(2)
            })
            .collect();
        Ok(Self {
            domain: Domain::Torus { n_grid, length },
            lambdas,
            torus_modes,
        })
    }

    /// Tensor-product Dirichlet sine basis on `(0, lx) × (0, ly)`, sorted by
    /// eigenvalue `λ = (pπ/lx)² + (qπ/ly)²` (ties broken by `(p, q)`).
    pub fn rectangle(nx: usize, ny: usize, lx: f64, ly: f64, bc: BoundaryCondition) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(invalid("rectangle model needs at least one mode per axis"));
        }
        if !(lx > 0.0) || !(ly > 0.0) {
            return Err(invalid("rectangle side lengths must be positive"));
        }
        if bc != BoundaryCondition::Dirichlet {
            return Err(invalid("rectangle model supports Dirichlet conditions only"));
        }
        let pi = std::f64::consts::PI;
        let mut modes: Vec<(f64, usize, usize)> = Vec::with_capacity(nx * ny);
        for p in 1..=nx {
            for q in 1..=ny {
                let lam = (p as f64 * pi / lx).powi(2) + (q as f64 * pi / ly).powi(2);
                modes.push((lam, p, q));
            }
        }
        modes.sort_by(|a, b| (a.0, a.1, a.2).partial_cmp(&(b.0, b.1, b.2)).unwrap());
        let lambdas = modes.iter().map(|m| m.0).collect();
        let modes = modes.into_iter().map(|(_, p, q)| (p, q)).collect();
        Ok(Self {
            domain: Domain::Rectangle { lx, ly, modes },
            lambdas,
            torus_modes: Vec::new(),
        })
    }

    /// Eigenvalues of `-Δ`, nondecreasing.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Number of retained modes.
    pub fn n_modes(&self) -> usize {
        self.lambdas.len()
    }

    /// Spatial dimension of the underlying domain (1 or 2).
    pub fn dim(&self) -> usize {
        match &self.domain {
            Domain::Interval { .. } | Domain::Torus { .. } => 1,
            Domain::Rectangle { .. } => 2,
        }
    }

    /// Period of the torus domain, if this model is a torus.
    pub fn torus_length(&self) -> Option<f64> {
        match &self.domain {
            Domain::Torus { length, .. } => Some(*length),
            _ => None,
        }
    }

    /// Grid size of the torus domain, if this model is a torus.
    pub fn torus_grid(&self) -> Option<usize> {
        match &self.domain {
            Domain::Torus { n_grid, .. } => Some(*n_grid),
            _ => None,
        }
    }

    /// Evaluate mode `j` at a point (1 coordinate for 1D domains, 2 for rectangles).
    pub fn eval_mode(&self, j: usize, point: &[f64]) -> Result<f64> {
        if j >= self.n_modes() {
            return Err(invalid(format!(
                "mode index {j} out of range (model holds {})",
                self.n_modes()
            )));
        }
        match &self.domain {
            Domain::Interval { length, bc } => {
                let &[x] = point else {
                    return Err(invalid("interval model expects 1 coordinate"));
                };
                let pi = std::f64::consts::PI;
                Ok(match bc {
                    BoundaryCondition::Dirichlet => {
                        (2.0 / length).sqrt() * ((j + 1) as f64 * pi * x / length).sin()
                    }
                    BoundaryCondition::Neumann => {
                        if j == 0 {
                            (1.0 / length).sqrt()
                        } else {
                            (2.0 / length).sqrt() * (j as f64 * pi * x / length).cos()
                        }
                    }
                })
            }
            Domain::Torus { length, .. } => {
                let &[x] = point else {
                    return Err(invalid("torus model expects 1 coordinate"));
                };
                let w = 2.0 * std::f64::consts::PI / length;
                Ok(match self.torus_modes[j] {
                    TorusMode::Constant => (1.0 / length).sqrt(),
                    TorusMode::Cos(k) => (2.0 / length).sqrt() * (k as f64 * w * x).cos(),
                    TorusMode::Sin(k) => (2.0 / length).sqrt() * (k as f64 * w * x).sin(),
                    TorusMode::NyquistCos(k) => (1.0 / length).sqrt() * (k as f64 * w * x).cos(),
                })
            }
            Domain::Rectangle { lx, ly, modes } => {
                let &[x, y] = point else {
                    return Err(invalid("rectangle model expects 2 coordinates"));
                };
                let pi = std::f64::consts::PI;
                let (p, q) = modes[j];
                Ok(2.0 / (lx * ly).sqrt()
                    * (p as f64 * pi * x / lx).sin()
                    * (q as f64 * pi * y / ly).sin())
            }
        }
    }

    /// Matrix `Φ[p, j] = φ_j(points[p])` mapping modal coefficients to point values.
    pub fn sample_matrix(&self, points: &[Vec<f64>]) -> Result<Array2<f64>> {
        let mut phi = Array2::zeros((points.len(), self.n_modes()));
        for (p, pt) in points.iter().enumerate() {
            for j in 0..self.n_modes() {
                phi[[p, j]] = self.eval_mode(j, pt)?;
            }
        }
        Ok(phi)
    }

    /// Quadrature grid exact for products of retained modes: `n_per_dim`
    /// midpoints per axis (interval/rectangle) or the left-endpoint periodic
    /// grid (torus). Returns (points, weights); weights sum to the domain volume.
    pub fn quadrature(&self, n_per_dim: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        if n_per_dim == 0 {
            return Err(invalid("quadrature grid must have at least one point"));
        }
        match &self.domain {
            Domain::Interval { length, .. } => {
                let w = length / n_per_dim as f64;
                let points = (0..n_per_dim).map(|g| vec![(g as f64 + 0.5) * w]).collect();
                Ok((points, vec![w; n_per_dim]))
            }
            Domain::Torus { length, .. } => {
                let w = length / n_per_dim as f64;
                let points = (0..n_per_dim).map(|g| vec![g as f64 * w]).collect();
                Ok((points, vec![w; n_per_dim]))
            }
            Domain::Rectangle { lx, ly, .. } => {
                let (wx, wy) = (lx / n_per_dim as f64, ly / n_per_dim as f64);
                let mut points = Vec::with_capacity(n_per_dim * n_per_dim);
                for gx in 0..n_per_dim {
                    for gy in 0..n_per_dim {
                        points.push(vec![(gx as f64 + 0.5) * wx, (gy as f64 + 0.5) * wy]);
                    }
                }
                Ok((points, vec![wx * wy; n_per_dim * n_per_dim]))
            }
        }
    }
}

/// Causal Green kernel of `u_tt + 2a u_t - Δu = f` at `(t, x, y)`:
/// `Σ_j e^{-at} s(λ_j - a², t) φ_j(x) φ_j(y)` for `t ≥ 0`, zero for `t < 0`,
/// with `s(z, t) = sin(t√z)/√z` continued through `z ≤ 0`. Low modes with
/// `λ_j < a²` contribute overdamped `sinh` branches rather than oscillations.
pub fn wave_green(model: &ModalModel, a: f64, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if a < 0.0 {
        return Err(invalid("damping must be nonnegative"));
    }
    if t < 0.0 {
        return Ok(0.0);
    }
    let decay = (-a * t).exp();
    let mut sum = 0.0;
    for (j, &lam) in model.lambdas().iter().enumerate() {
        let s = entire_sinc_sqrt(lam - a * a, t);
        sum += s * model.eval_mode(j, x)? * model.eval_mode(j, y)?;
    }
    Ok(decay * sum)
}

/// Damping-stripped companion of [`wave_green`]: `Σ_j s(λ_j - a², t) φφ` over
/// modes with `λ_j ≥ ω_min²`, zero for `t < 0`. This is the band-limited kernel
/// whose antisymmetric combination drives the lag-derivative identity checks.
pub fn wave_green_undamped_band(
    model: &ModalModel,
    a: f64,
    t: f64,
    x: &[f64],
    y: &[f64],
    omega_min: f64,
) -> Result<f64> {
    if t < 0.0 {
        return Ok(0.0);
    }
    let band_floor = omega_min * omega_min;
    let mut sum = 0.0;
    for (j, &lam) in model.lambdas().iter().enumerate() {
        if lam < band_floor {
            continue;
        }
        sum += entire_sinc_sqrt(lam - a * a, t) * model.eval_mode(j, x)? * model.eval_mode(j, y)?;
    }
    Ok(sum)
}

/// Time derivative of the two-sided (non-causal) wave kernel:
/// `Σ_j e^{-at} [c(λ_j - a², t) - a·s(λ_j - a², t)] φ_j(x) φ_j(y)`.
/// Used by impulse-response checks where the velocity component matters.
pub fn wave_green_dt(model: &ModalModel, a: f64, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if t < 0.0 {
        return Ok(0.0);
    }
    let decay = (-a * t).exp();
    let mut sum = 0.0;
    for (j, &lam) in model.lambdas().iter().enumerate() {
        let z = lam - a * a;
        let deriv = entire_cos(z, t) - a * entire_sinc_sqrt(z, t);
        sum += deriv * model.eval_mode(j, x)? * model.eval_mode(j, y)?;
    }
    Ok(decay * sum)
}
