//! The squared-interaction special case `V = W^2`.
//!
//! With a banded circulant generator `W`, the ground-state covariance is
//! exactly `W^{-1} (+) W`, entanglement localizes at the region boundary,
//! and in d=1 the two surviving symplectic eigenvalues have a closed form.

use crate::circulant::{nearest_neighbor_stencil, BlockCirculant};
use crate::error::{Error, Result};
use crate::gaussian::{self, GroundCovariance};
use crate::lattice::{LatticeSpec, Model, Region};

/// Build the generator `W` (nearest-neighbor stencil) and `V = W^2`.
///
/// In d=1 the squared stencil is `circM(1+2c^2, -2c, c^2, 0, ..., 0, c^2, -2c)`.
pub fn build_squared(spec: &LatticeSpec) -> Result<(BlockCirculant, BlockCirculant)> {
    if spec.model != Model::Squared {
        return Err(Error::InvalidInput(format!(
            "build_squared called with model '{}'",
            spec.model
        )));
    }
    let w = BlockCirculant::from_stencil(*spec, &nearest_neighbor_stencil(spec))?;
    if w.min_symbol() <= 0.0 {
        return Err(Error::ModelInvalid(format!(
            "generator W not positive definite: min symbol = {}",
            w.min_symbol()
        )));
    }
    let squared_symbol = w.symbol().iter().map(|s| s * s).collect();
    let v = BlockCirculant::from_symbol(*spec, squared_symbol);
    Ok((w, v))
}

/// Exact ground covariance for `V = W^2`: `gamma = W^{-1} (+) W`.
pub fn squared_ground_covariance(w: &BlockCirculant) -> Result<GroundCovariance> {
    if w.min_symbol() <= 0.0 {
        return Err(Error::SingularMatrix(format!(
            "generator W singular: min symbol = {}",
            w.min_symbol()
        )));
    }
    Ok(GroundCovariance {
        gamma_x: w.fractional_power(-1.0)?,
        gamma_p: w.fractional_power(1.0)?,
    })
}

/// The d=1, m -> infinity closed form for the two surviving symplectic
/// eigenvalues: `mu = (1 - c^2/q^2)^{-1/2}` with `q = c + 1/2 + sqrt(c + 1/4)`.
///
/// Of the two sign choices for `q`, only the `+` branch keeps `c^2/q^2 < 1`
/// and hence `mu` real and >= 1.
pub fn closed_form_mu(c: f64) -> f64 {
    debug_assert!((0.0..0.5).contains(&c), "valid for 0 <= c < 1/2");
    let q = c + 0.5 + (c + 0.25).sqrt();
    (1.0 - c * c / (q * q)).powf(-0.5)
}

/// Boundary-locality diagnostics for a squared-model region.
#[derive(Debug, Clone)]
pub struct DisentangleReport {
    /// Symplectic eigenvalues exceeding `1 + tol`.
    pub nonunit_mu_count: usize,
    /// Eigenvalues of `Q` exceeding `1 + tol`.
    pub nonunit_q_count: usize,
    pub lambda1_q: f64,
    /// The d=1 bound `2/(1-2c) - 1` on `lambda_1(Q)`; `None` for d > 1.
    pub lambda1_q_bound: Option<f64>,
    pub bound_satisfied: Option<bool>,
    /// The largest symplectic eigenvalues, for convergence checks.
    pub top_mu: Vec<f64>,
}

/// Tolerance used to call an eigenvalue "non-unit" in the report.
pub const NONUNIT_TOL: f64 = 1e-8;

/// Count the modes that stay entangled for a squared-model region and check
/// the d=1 bound on `lambda_1(Q)`.
pub fn disentangle_report(spec: &LatticeSpec, region: &Region) -> Result<DisentangleReport> {
    let (w, v) = build_squared(spec)?;
    let gamma = squared_ground_covariance(&w)?;
    let state = gaussian::reduce(&gamma, region)?;
    let spectrum = gaussian::symplectic_spectrum(&state)?;
    let q_eigs = gaussian::q_eigenvalues(&v, region)?;
    let lambda1_q = q_eigs.first().copied().unwrap_or(1.0);

    let (bound, satisfied) = if spec.d == 1 {
        let b = 2.0 / (1.0 - 2.0 * spec.c) - 1.0;
        (Some(b), Some(lambda1_q <= b + 1e-9 * b.abs()))
    } else {
        (None, None)
    };

    let top_mu = spectrum.mu().iter().take(4).copied().collect();
    Ok(DisentangleReport {
        nonunit_mu_count: spectrum.count_above_unit(NONUNIT_TOL),
        nonunit_q_count: q_eigs.iter().filter(|&&l| l > 1.0 + NONUNIT_TOL).count(),
        lambda1_q,
        lambda1_q_bound: bound,
        bound_satisfied: satisfied,
        top_mu,
    })
}
