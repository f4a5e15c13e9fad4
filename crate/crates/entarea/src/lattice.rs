//! Lattice geometry: site coordinates, periodic step distances, hypercubic
//! regions, and the boundary-shell counting functions used by the bounds.
//!
//! Sites of the `d`-dimensional periodic lattice `n^d` are addressed either
//! by a coordinate vector `k = (k_0, ..., k_{d-1})` with `k_j` in `[0, n)` or
//! by the linear index `sum_j k_j n^j`. Axis 0 has stride 1; this ordering is
//! fixed project-wide.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Interaction model of the potential matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// Nearest-neighbor coupling, stencil `{0 -> 1, +-e_j -> -c}`.
    #[serde(rename = "nn")]
    NearestNeighbor,
    /// Squared interaction `V = W^2` with `W` the nearest-neighbor stencil.
    #[serde(rename = "squared")]
    Squared,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::NearestNeighbor => "nn",
            Model::Squared => "squared",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nn" => Ok(Model::NearestNeighbor),
            "squared" => Ok(Model::Squared),
            other => Err(Error::InvalidInput(format!(
                "unknown model '{other}' (expected 'nn' or 'squared')"
            ))),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters of a harmonic lattice: dimension, side length, coupling, model.
///
/// Both models require `0 <= 2cd < 1`; for the squared model the constraint
/// applies to the generator `W`, which carries the same stencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub d: usize,
    pub n: usize,
    pub c: f64,
    pub model: Model,
}

impl LatticeSpec {
    pub fn new(d: usize, n: usize, c: f64, model: Model) -> Result<Self> {
        if d < 1 {
            return Err(Error::ModelInvalid("dimension d must be >= 1".into()));
        }
        if n < 2 {
            return Err(Error::ModelInvalid("side length n must be >= 2".into()));
        }
        if !c.is_finite() || c < 0.0 {
            return Err(Error::ModelInvalid(format!(
                "coupling c = {c} must be finite and >= 0"
            )));
        }
        let y = 2.0 * c * d as f64;
        if y >= 1.0 {
            return Err(Error::ModelInvalid(format!(
                "2cd = {y} >= 1: potential not positive definite"
            )));
        }
        // n^d must stay addressable; also keeps n^(2d) transforms at desk scale.
        n.checked_pow(d as u32).ok_or_else(|| {
            Error::ModelInvalid(format!("site count n^d overflows usize (n={n}, d={d})"))
        })?;
        Ok(LatticeSpec { d, n, c, model })
    }

    /// Total number of sites `n^d`.
    pub fn site_count(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// The decay parameter `y = 2cd`.
    pub fn y(&self) -> f64 {
        2.0 * self.c * self.d as f64
    }
}

/// Coordinate vector of a lattice site, components in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteCoord(pub Vec<usize>);

impl SiteCoord {
    /// Linear index `sum_j k_j n^j`.
    pub fn to_linear(&self, n: usize) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for &k in &self.0 {
            idx += k * stride;
            stride *= n;
        }
        idx
    }

    /// Inverse of [`to_linear`](Self::to_linear).
    pub fn from_linear(mut idx: usize, d: usize, n: usize) -> Self {
        let mut comps = Vec::with_capacity(d);
        for _ in 0..d {
            comps.push(idx % n);
            idx /= n;
        }
        SiteCoord(comps)
    }

    fn validate(&self, spec: &LatticeSpec) -> Result<()> {
        if self.0.len() != spec.d {
            return Err(Error::InvalidInput(format!(
                "coordinate has {} components, lattice has d = {}",
                self.0.len(),
                spec.d
            )));
        }
        for (j, &k) in self.0.iter().enumerate() {
            if k >= spec.n {
                return Err(Error::InvalidInput(format!(
                    "coordinate component k_{j} = {k} out of range [0, {})",
                    spec.n
                )));
            }
        }
        Ok(())
    }
}

/// Minimal number of lattice steps between two sites under periodic boundary
/// conditions: `s(k,l) = sum_j min(|k_j - l_j|, n - |k_j - l_j|)`.
pub fn lattice_distance(spec: &LatticeSpec, k: &SiteCoord, l: &SiteCoord) -> Result<usize> {
    k.validate(spec)?;
    l.validate(spec)?;
    Ok(k.0
        .iter()
        .zip(&l.0)
        .map(|(&a, &b)| axis_distance(a, b, spec.n))
        .sum())
}

/// Per-axis periodic distance.
pub(crate) fn axis_distance(a: usize, b: usize, n: usize) -> usize {
    let diff = a.abs_diff(b);
    diff.min(n - diff)
}

/// Advance a row-major counter (axis 0 fastest) one step, wrapping each
/// digit at `base`.
pub(crate) fn advance_counter(digits: &mut [usize], base: usize) {
    for digit in digits.iter_mut() {
        *digit += 1;
        if *digit < base {
            return;
        }
        *digit = 0;
    }
}

/// A distinguished hypercube `m^d` inside the lattice.
///
/// Interior sites are listed in row-major order over the region-local
/// coordinates; exterior sites in ascending linear index. Together they
/// partition `[0, n^d)`.
#[derive(Debug, Clone)]
pub struct Region {
    pub m: usize,
    pub offset: SiteCoord,
    d: usize,
    n: usize,
    interior: Vec<usize>,
    exterior: Vec<usize>,
}

impl Region {
    /// Hypercube of side `m` with its corner at the origin.
    pub fn at_origin(spec: &LatticeSpec, m: usize) -> Result<Self> {
        Self::new(spec, m, SiteCoord(vec![0; spec.d]))
    }

    pub fn new(spec: &LatticeSpec, m: usize, offset: SiteCoord) -> Result<Self> {
        if m < 1 || m > spec.n {
            return Err(Error::InvalidInput(format!(
                "region side m = {m} out of range [1, n = {}]",
                spec.n
            )));
        }
        offset.validate(spec)?;
        let (d, n) = (spec.d, spec.n);
        let volume = m.pow(d as u32);
        let total = spec.site_count();

        let mut interior = Vec::with_capacity(volume);
        let mut inside = vec![false; total];
        let mut local = vec![0usize; d];
        for _ in 0..volume {
            let site: Vec<usize> = local
                .iter()
                .zip(&offset.0)
                .map(|(&l, &o)| (l + o) % n)
                .collect();
            let idx = SiteCoord(site).to_linear(n);
            interior.push(idx);
            inside[idx] = true;
            advance_counter(&mut local, m);
        }
        let exterior = (0..total).filter(|&i| !inside[i]).collect();
        Ok(Region {
            m,
            offset,
            d,
            n,
            interior,
            exterior,
        })
    }

    pub fn interior_indices(&self) -> &[usize] {
        &self.interior
    }

    pub fn exterior_indices(&self) -> &[usize] {
        &self.exterior
    }

    pub fn volume(&self) -> usize {
        self.interior.len()
    }

    pub fn lattice_side(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }
}

/// One boundary shell of a region: the interior sites exactly `r` steps from
/// the region's surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shell {
    pub r: usize,
    /// Global linear indices of the member sites.
    pub sites: Vec<usize>,
}

impl Shell {
    pub fn size(&self) -> usize {
        self.sites.len()
    }
}

/// Decompose a region into boundary shells `L_r`.
///
/// `|L_0| = m^d - (m-2)^d` and `|L_r| = (m-2r)^d - (m-2r-2)^d`, with negative
/// bases truncated to zero; the shells exhaust all `m^d` interior sites.
pub fn shells(region: &Region) -> Vec<Shell> {
    let (d, m) = (region.d, region.m);
    let max_r = (m - 1) / 2;
    let mut result: Vec<Shell> = (0..=max_r)
        .map(|r| Shell {
            r,
            sites: Vec::new(),
        })
        .collect();
    // interior was built iterating local coordinates row-major, so walk the
    // same counter alongside it
    let mut local = vec![0usize; d];
    for &idx in &region.interior {
        // depth of this site: min over axes of distance to either face
        let r = local
            .iter()
            .map(|&l| l.min(m - 1 - l))
            .min()
            .expect("d >= 1");
        result[r].sites.push(idx);
        advance_counter(&mut local, m);
    }
    result.retain(|s| !s.sites.is_empty());
    result
}

/// Closed-form size of shell `L_r`: `(m-2r)^d - (m-2r-2)^d`, negative bases
/// truncated to zero.
pub fn shell_size(d: usize, m: usize, r: usize) -> usize {
    let pow = |b: isize| -> usize {
        if b <= 0 {
            0
        } else {
            (b as usize).pow(d as u32)
        }
    };
    let inner = m as isize - 2 * r as isize;
    pow(inner) - pow(inner - 2)
}

/// Counting bound on the exterior sites reachable in `s` steps from the
/// surface of an `m^d` hypercube: `(m+2s)^d - m^d`.
pub fn reachable_exterior_bound(spec: &LatticeSpec, m: usize, s: usize) -> Result<usize> {
    if s < 1 {
        return Err(Error::InvalidInput("step count s must be >= 1".into()));
    }
    let d = spec.d as u32;
    Ok((m + 2 * s).pow(d) - m.pow(d))
}
