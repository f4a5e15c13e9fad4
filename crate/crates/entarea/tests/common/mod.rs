//! Dense reference oracle, independent of the symbol calculus.
//!
//! The potential is assembled entry by entry from the model definition,
//! fractional powers go through a full symmetric eigendecomposition, and
//! product spectra through a square-root symmetrization. Nothing here
//! touches `BlockCirculant` internals, so agreement with the library is a
//! genuine two-route check.

// each test target compiles this module separately and uses a subset
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};

use entarea::lattice::{LatticeSpec, Model, Region};

/// Dense potential matrix straight from the interaction rule: unit diagonal
/// plus `-c` accumulated once per lattice bond (forward and backward along
/// each axis; at n = 2 both directions wrap onto the same neighbor, giving
/// `-2c` there, consistent with the dispersion `1 - 2c sum_r cos`). The
/// squared model multiplies the generator out explicitly.
pub fn dense_potential(spec: &LatticeSpec) -> DMatrix<f64> {
    let total = spec.site_count();
    let (d, n, c) = (spec.d, spec.n, spec.c);
    let mut w = DMatrix::identity(total, total);
    for i in 0..total {
        let mut coords = Vec::with_capacity(d);
        let mut rest = i;
        for _ in 0..d {
            coords.push(rest % n);
            rest /= n;
        }
        for axis in 0..d {
            for step in [1usize, n - 1] {
                let mut neighbor = coords.clone();
                neighbor[axis] = (neighbor[axis] + step) % n;
                let j: usize = neighbor
                    .iter()
                    .rev()
                    .fold(0, |acc, &component| acc * n + component);
                w[(i, j)] += -c;
            }
        }
    }
    match spec.model {
        Model::NearestNeighbor => w,
        Model::Squared => &w * &w,
    }
}

/// Matrix power through a full symmetric eigendecomposition.
pub fn dense_power(matrix: &DMatrix<f64>, p: f64) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(matrix.clone());
    let n = matrix.nrows();
    let mut result = DMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = eig.eigenvalues[k].powf(p);
        let u = eig.eigenvectors.column(k);
        for i in 0..n {
            for j in 0..n {
                result[(i, j)] += lambda * u[i] * u[j];
            }
        }
    }
    result
}

/// Select a sub-block by row/column index lists.
pub fn dense_block(matrix: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| matrix[(rows[i], cols[j])])
}

/// Spectrum of the product `left * right` of two symmetric positive
/// definite matrices, computed as the symmetric eigenproblem of
/// `left^{1/2} right left^{1/2}` (the library uses a Cholesky factor
/// instead, so the two routes share no factorization code). Sorted
/// non-increasingly.
pub fn spd_pair_spectrum(left: &DMatrix<f64>, right: &DMatrix<f64>) -> Vec<f64> {
    let half = dense_power(left, 0.5);
    let symmetrized = &half * right * &half;
    let mut values: Vec<f64> = SymmetricEigen::new(symmetrized)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

/// Oracle symplectic spectrum of a region: `sqrt` of the spectrum of `A D`.
pub fn oracle_symplectic_spectrum(spec: &LatticeSpec, region: &Region) -> Vec<f64> {
    let v = dense_potential(spec);
    let inv_sqrt = dense_power(&v, -0.5);
    let sqrt = dense_power(&v, 0.5);
    let a = dense_block(
        &inv_sqrt,
        region.interior_indices(),
        region.interior_indices(),
    );
    let dd = dense_block(&sqrt, region.interior_indices(), region.interior_indices());
    spd_pair_spectrum(&a, &dd)
        .iter()
        .map(|&l| l.max(1.0).sqrt())
        .collect()
}

/// Oracle entanglement entropy from the oracle symplectic spectrum.
pub fn oracle_entropy(spec: &LatticeSpec, region: &Region) -> f64 {
    oracle_symplectic_spectrum(spec, region)
        .iter()
        .map(|&mu| {
            let minus = (mu - 1.0) / 2.0;
            if minus < 1e-12 {
                0.0
            } else {
                let plus = (mu + 1.0) / 2.0;
                plus * plus.ln() - minus * minus.ln()
            }
        })
        .sum()
}

/// Oracle logarithmic negativity from the spectrum of
/// `Q = V^{-1/2} P V^{1/2} P`, evaluated as the symmetric problem
/// `V^{-1/4} (P V^{1/2} P) V^{-1/4}`.
pub fn oracle_log_negativity(spec: &LatticeSpec, region: &Region) -> f64 {
    let v = dense_potential(spec);
    let quarter = dense_power(&v, -0.25);
    let sqrt = dense_power(&v, 0.5);
    let total = spec.site_count();
    let mut signs = vec![1.0; total];
    for &i in region.interior_indices() {
        signs[i] = -1.0;
    }
    let flipped = DMatrix::from_fn(total, total, |i, j| signs[i] * signs[j] * sqrt[(i, j)]);
    let symmetrized = &quarter * &flipped * &quarter;
    SymmetricEigen::new(symmetrized)
        .eigenvalues
        .iter()
        .map(|&l| if l > 1.0 + 1e-12 { l.ln() } else { 0.0 })
        .sum()
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}
