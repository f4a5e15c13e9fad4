//! Block-circulant matrix calculus.
//!
//! A potential matrix on the periodic lattice is block circulant, so it is
//! fully described by its symbol: the multidimensional discrete transform of
//! its generating stencil. Because every stencil here is symmetric under
//! displacement negation, the symbol is real,
//!
//! ```text
//!   symbol(k') = sum_delta stencil(delta) * cos(2*pi * k'.delta / n),
//! ```
//!
//! and functions of the matrix (inverse, square roots) act pointwise on the
//! symbol. Matrix elements come back through the inverse transform
//!
//! ```text
//!   M[k,l] = (1/n^d) sum_{k'} symbol(k') * prod_j cos(2*pi k'_j (k_j-l_j)/n),
//! ```
//!
//! which depends only on the displacement `k - l mod n`. The direct O(N^2)
//! transform is fine at desk scale; elements are cached per displacement, so
//! each distinct displacement is transformed once.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Model, SiteCoord};

/// Default cap on dense materializations, in matrix elements.
pub const DEFAULT_ELEMENT_BUDGET: usize = 1 << 26;

/// A real symmetric block-circulant matrix on the lattice `n^d`, stored as
/// its symbol. Immutable after construction; the displacement kernel is
/// filled lazily and idempotently, so shared read-only use is safe.
#[derive(Debug)]
pub struct BlockCirculant {
    spec: LatticeSpec,
    symbol: Vec<f64>,
    /// Inverse transform of the symbol, indexed by linear displacement.
    kernel: OnceLock<Vec<f64>>,
}

impl Clone for BlockCirculant {
    fn clone(&self) -> Self {
        let kernel = OnceLock::new();
        if let Some(k) = self.kernel.get() {
            let _ = kernel.set(k.clone());
        }
        BlockCirculant {
            spec: self.spec,
            symbol: self.symbol.clone(),
            kernel,
        }
    }
}

/// Symbol values sorted non-increasingly, with the momentum index of each.
#[derive(Debug, Clone)]
pub struct SymbolSpectrum {
    pub values: Vec<f64>,
    pub momenta: Vec<usize>,
}

impl BlockCirculant {
    /// Build from a finite stencil given as (displacement, coefficient)
    /// pairs. The stencil must be symmetric under displacement negation.
    pub fn from_stencil(spec: LatticeSpec, stencil: &[(Vec<i64>, f64)]) -> Result<Self> {
        let n = spec.n as i64;
        for (delta, coeff) in stencil {
            if delta.len() != spec.d {
                return Err(Error::InvalidInput(format!(
                    "stencil displacement {delta:?} has wrong dimension (expected {})",
                    spec.d
                )));
            }
            let negated: Vec<i64> = delta.iter().map(|&x| (-x).rem_euclid(n)).collect();
            let canonical: Vec<i64> = delta.iter().map(|&x| x.rem_euclid(n)).collect();
            let mirror = stencil.iter().find(|(d2, _)| {
                d2.iter()
                    .map(|&x| x.rem_euclid(n))
                    .eq(negated.iter().copied())
            });
            match mirror {
                Some((_, c2)) if (c2 - coeff).abs() <= 1e-12 * coeff.abs().max(1.0) => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "stencil not symmetric at displacement {canonical:?}"
                    )))
                }
            }
        }
        let symbol = symbol_from_stencil(&spec, stencil);
        Ok(BlockCirculant {
            spec,
            symbol,
            kernel: OnceLock::new(),
        })
    }

    pub(crate) fn from_symbol(spec: LatticeSpec, symbol: Vec<f64>) -> Self {
        debug_assert_eq!(symbol.len(), spec.site_count());
        BlockCirculant {
            spec,
            symbol,
            kernel: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.symbol.len()
    }

    /// The eigenvalues of the matrix, indexed by momentum vector.
    pub fn symbol(&self) -> &[f64] {
        &self.symbol
    }

    pub fn min_symbol(&self) -> f64 {
        self.symbol.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_symbol(&self) -> f64 {
        self.symbol
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Eigenvalues sorted non-increasingly, keeping their momentum indices.
    pub fn spectrum(&self) -> SymbolSpectrum {
        let mut order: Vec<usize> = (0..self.symbol.len()).collect();
        order.sort_by(|&a, &b| {
            self.symbol[b]
                .partial_cmp(&self.symbol[a])
                .expect("symbol values are finite")
        });
        SymbolSpectrum {
            values: order.iter().map(|&i| self.symbol[i]).collect(),
            momenta: order,
        }
    }

    /// Apply a real power to the matrix through its symbol.
    ///
    /// Negative or fractional powers require a strictly positive symbol.
    pub fn fractional_power(&self, p: f64) -> Result<BlockCirculant> {
        let integral = p.fract() == 0.0;
        if (p < 0.0 || !integral) && self.min_symbol() <= 0.0 {
            return Err(Error::SingularMatrix(format!(
                "power {p} needs a positive symbol; min symbol = {}",
                self.min_symbol()
            )));
        }
        let symbol = self.symbol.iter().map(|&s| s.powf(p)).collect();
        Ok(BlockCirculant::from_symbol(self.spec, symbol))
    }

    fn kernel(&self) -> &[f64] {
        self.kernel
            .get_or_init(|| inverse_transform(&self.spec, &self.symbol))
    }

    /// Matrix element for a displacement vector with components in `[0, n)`.
    pub fn element_at_displacement(&self, delta: &[usize]) -> f64 {
        debug_assert_eq!(delta.len(), self.spec.d);
        let mut idx = 0;
        let mut stride = 1;
        for &x in delta {
            idx += x * stride;
            stride *= self.spec.n;
        }
        self.kernel()[idx]
    }

    /// Matrix element `M[k,l]`; depends only on `k - l mod n`.
    pub fn element(&self, k: &SiteCoord, l: &SiteCoord) -> Result<f64> {
        let n = self.spec.n;
        if k.0.len() != self.spec.d || l.0.len() != self.spec.d {
            return Err(Error::InvalidInput("coordinate dimension mismatch".into()));
        }
        if k.0.iter().chain(&l.0).any(|&x| x >= n) {
            return Err(Error::InvalidInput(
                "coordinate component out of range".into(),
            ));
        }
        let delta: Vec<usize> =
            k.0.iter()
                .zip(&l.0)
                .map(|(&a, &b)| (n + a - b) % n)
                .collect();
        Ok(self.element_at_displacement(&delta))
    }

    /// Matrix element by linear site indices.
    pub fn element_linear(&self, row: usize, col: usize) -> f64 {
        let (d, n) = (self.spec.d, self.spec.n);
        let mut idx = 0;
        let mut stride = 1;
        let (mut r, mut c) = (row, col);
        for _ in 0..d {
            let delta = (n + r % n - c % n) % n;
            idx += delta * stride;
            stride *= n;
            r /= n;
            c /= n;
        }
        self.kernel()[idx]
    }

    /// Extract a dense sub-block, rows and columns given as linear indices.
    pub fn materialize(&self, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
        self.materialize_with_budget(rows, cols, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn materialize_with_budget(
        &self,
        rows: &[usize],
        cols: &[usize],
        budget: usize,
    ) -> Result<DMatrix<f64>> {
        let total = self.size();
        if let Some(&bad) = rows.iter().chain(cols).find(|&&i| i >= total) {
            return Err(Error::InvalidInput(format!(
                "index {bad} out of range [0, {total})"
            )));
        }
        let elements = rows.len().saturating_mul(cols.len());
        if elements > budget {
            return Err(Error::Resource(format!(
                "block of {} x {} = {elements} elements exceeds budget {budget}",
                rows.len(),
                cols.len()
            )));
        }
        self.kernel(); // fill once before the tight loop
        Ok(DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.element_linear(rows[i], cols[j])
        }))
    }

    /// The full dense matrix.
    pub fn materialize_full(&self) -> Result<DMatrix<f64>> {
        let all: Vec<usize> = (0..self.size()).collect();
        self.materialize(&all, &all)
    }
}

/// Build the potential matrix of a lattice model.
///
/// Nearest-neighbor: stencil `{0 -> 1, +-e_j -> -c}`, i.e.
/// `circM(1, -c, 0, ..., 0, -c)` in d=1 and the recursive block structure in
/// higher dimensions. Squared: `V = W^2` with `W` the nearest-neighbor
/// stencil, applied on the symbol.
pub fn build_potential(spec: &LatticeSpec) -> Result<BlockCirculant> {
    match spec.model {
        Model::NearestNeighbor => {
            let v = BlockCirculant::from_stencil(*spec, &nearest_neighbor_stencil(spec))?;
            if v.min_symbol() <= 0.0 {
                return Err(Error::ModelInvalid(format!(
                    "potential not positive definite: min symbol = {}",
                    v.min_symbol()
                )));
            }
            Ok(v)
        }
        Model::Squared => Ok(crate::squared::build_squared(spec)?.1),
    }
}

pub(crate) fn nearest_neighbor_stencil(spec: &LatticeSpec) -> Vec<(Vec<i64>, f64)> {
    let mut stencil = vec![(vec![0i64; spec.d], 1.0)];
    for j in 0..spec.d {
        for sign in [1i64, -1] {
            let mut delta = vec![0i64; spec.d];
            delta[j] = sign;
            stencil.push((delta, -spec.c));
        }
    }
    stencil
}

fn symbol_from_stencil(spec: &LatticeSpec, stencil: &[(Vec<i64>, f64)]) -> Vec<f64> {
    let (d, n) = (spec.d, spec.n);
    let total = spec.site_count();
    let mut symbol = vec![0.0; total];
    let mut momentum = vec![0usize; d];
    for entry in symbol.iter_mut() {
        let mut acc = 0.0;
        for (delta, coeff) in stencil {
            let phase: f64 = momentum
                .iter()
                .zip(delta)
                .map(|(&kp, &dx)| kp as f64 * dx as f64)
                .sum::<f64>()
                * TAU
                / n as f64;
            acc += coeff * phase.cos();
        }
        *entry = acc;
        crate::lattice::advance_counter(&mut momentum, n);
    }
    symbol
}

/// Direct inverse transform of the symbol over all displacements.
fn inverse_transform(spec: &LatticeSpec, symbol: &[f64]) -> Vec<f64> {
    let (d, n) = (spec.d, spec.n);
    let total = symbol.len();
    // cos(2 pi t / n) lookup for t in [0, n)
    let cos_table: Vec<f64> = (0..n).map(|t| (TAU * t as f64 / n as f64).cos()).collect();
    let norm = 1.0 / total as f64;

    let mut kernel = vec![0.0; total];
    let mut delta = vec![0usize; d];
    for entry in kernel.iter_mut() {
        let mut acc = 0.0;
        let mut momentum = vec![0usize; d];
        for &sym in symbol {
            let mut weight = sym;
            for (kp, dx) in momentum.iter().zip(&delta) {
                weight *= cos_table[(kp * dx) % n];
            }
            acc += weight;
            crate::lattice::advance_counter(&mut momentum, n);
        }
        *entry = acc * norm;
        crate::lattice::advance_counter(&mut delta, n);
    }
    kernel
}
