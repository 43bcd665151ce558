//! Attenuated linear systems `u̇ + Ĥu = f` given by an explicit complex matrix.
//!
//! [`GeneralSystem`] caches the eigendecomposition of `Ĥ` at construction and
//! refuses matrices without a positive attenuation margin (an eigenvalue with
//! nonpositive real part leaves no stationary state) or with a defective
//! eigenvector basis (all downstream solvers work in the eigenbasis).

use crate::error::{invalid, Error, Result};
use crate::C64;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse, Norm};
use std::path::Path;

/// Maximum accepted eigenvector-basis condition estimate.
const MAX_EIGENVECTOR_COND: f64 = 1e8;

/// A complex matrix `Ĥ` whose spectrum lies strictly in the right half plane,
/// together with its cached eigendecomposition `Ĥ = V diag(μ) V⁻¹`.
#[derive(Clone, Debug)]
pub struct GeneralSystem {
    h: Array2<C64>,
    mu: Array1<C64>,
    v: Array2<C64>,
    v_inv: Array2<C64>,
    margin: f64,
}

impl GeneralSystem {
    /// Build from a square matrix; eigendecomposes and validates attenuation.
    pub fn new(h: Array2<C64>) -> Result<Self> {
        if h.nrows() != h.ncols() {
            return Err(Error::FormatError(format!(
                "system matrix must be square, got {}x{}",
                h.nrows(),
                h.ncols()
            )));
        }
        if h.is_empty() {
            return Err(invalid("system matrix must be nonempty"));
        }
        if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("system matrix contains non-finite entries"));
        }
        let (mu, v) = h
            .eig()
            .map_err(|e| Error::Numerical(format!("eigendecomposition failed: {e}")))?;
        let margin = mu.iter().map(|m| m.re).fold(f64::INFINITY, f64::min);
        if margin <= 0.0 {
            return Err(Error::AttenuationViolation { min_real: margin });
        }
        let v_inv = v.inv().map_err(|_| Error::DefectiveSystem { cond: f64::INFINITY })?;
        // Frobenius condition estimate, normalized so a unitary basis scores 1.
        let cond = v.norm_l2() * v_inv.norm_l2() / h.nrows() as f64;
        if !cond.is_finite() || cond > MAX_EIGENVECTOR_COND {
            return Err(Error::DefectiveSystem { cond });
        }
        Ok(Self { h, mu, v, v_inv, margin })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// The system matrix `Ĥ`.
    pub fn matrix(&self) -> &Array2<C64> {
        &self.h
    }

    /// Attenuation margin `k = min Re spec(Ĥ)` (strictly positive).
    pub fn attenuation_margin(&self) -> f64 {
        self.margin
    }

    /// Eigenvalues `μ_j` of `Ĥ`.
    pub fn eigenvalues(&self) -> &Array1<C64> {
        &self.mu
    }

    /// Eigenvector matrix `V` (columns are eigenvectors).
    pub fn eigvecs(&self) -> &Array2<C64> {
        &self.v
    }

    /// Inverse of the eigenvector matrix.
    pub fn eigvecs_inv(&self) -> &Array2<C64> {
        &self.v_inv
    }

    /// Propagator `Ω(t) = exp(-tĤ) = V diag(e^{-tμ}) V⁻¹`.
    ///
    /// Accepts any real `t`; negative times grow like `e^{|t| max Re μ}` and
    /// are only meant for bounded source-window integrals.
    pub fn propagator(&self, t: f64) -> Array2<C64> {
        let n = self.dim();
        let mut scaled = self.v.clone();
        for j in 0..n {
            let factor = (-t * self.mu[j]).exp();
            for i in 0..n {
                scaled[[i, j]] *= factor;
            }
        }
        scaled.dot(&self.v_inv)
    }

    /// Map a vector through the propagator without forming the full matrix.
    pub fn propagate_vec(&self, t: f64, u: &Array1<C64>) -> Array1<C64> {
        let mut coeffs = self.v_inv.dot(u);
        for (c, m) in coeffs.iter_mut().zip(self.mu.iter()) {
            *c *= (-t * m).exp();
        }
        self.v.dot(&coeffs)
    }
}

/// Causal propagator matrix: rejects `t < 0` (use [`GeneralSystem::propagator`]
/// directly for signed-time source integrals).
pub fn propagator_kernel(sys: &GeneralSystem, t: f64) -> Result<Array2<C64>> {
    if t < 0.0 {
        return Err(invalid("causal propagator requires t >= 0"));
    }
    Ok(sys.propagator(t))
}

/// Load a system matrix from the text format (`n` header then `re+imj` rows).
pub fn ingest_system(path: impl AsRef<Path>) -> Result<GeneralSystem> {
    GeneralSystem::new(crate::io::read_matrix_text(path)?)
}
