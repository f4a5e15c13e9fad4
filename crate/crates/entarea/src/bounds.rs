//! Analytical bounds and their numerical certification: elementwise decay
//! envelopes for `V^{+-1/2}`, the shell-sum upper bound on the logarithmic
//! negativity, the closed-form area-law bound, and the trace chain bounding
//! the entropy from below.

use crate::circulant::BlockCirculant;
use crate::error::{Error, Result};
use crate::gaussian::{ReducedState, SymplecticSpectrum};
use crate::lattice::{LatticeSpec, Model, SiteCoord};

/// Relative tolerance absorbing float noise in strict-inequality checks.
pub const BOUND_REL_TOL: f64 = 1e-9;
/// Absolute cushion for comparisons against exact zeros.
pub const BOUND_ABS_TOL: f64 = 1e-12;

/// `a <= b` up to the shared bound tolerance.
pub fn leq_with_tol(a: f64, b: f64) -> bool {
    a <= b + BOUND_REL_TOL * a.abs().max(b.abs()) + BOUND_ABS_TOL
}

/// Outcome of checking one measured quantity against one bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound_value: f64,
    pub measured_value: f64,
    pub satisfied: bool,
    /// `bound - measured` for upper bounds, `measured - bound` for lower.
    pub margin: f64,
    pub valid: bool,
    pub validity_reason: Option<String>,
}

impl BoundReport {
    /// Check `measured <= bound`.
    pub fn upper(measured_value: f64, bound_value: f64) -> Self {
        BoundReport {
            bound_value,
            measured_value,
            satisfied: leq_with_tol(measured_value, bound_value),
            margin: bound_value - measured_value,
            valid: true,
            validity_reason: None,
        }
    }

    /// Check `measured >= bound`.
    pub fn lower(measured_value: f64, bound_value: f64) -> Self {
        BoundReport {
            bound_value,
            measured_value,
            satisfied: leq_with_tol(bound_value, measured_value),
            margin: measured_value - bound_value,
            valid: true,
            validity_reason: None,
        }
    }

    /// Mark the bound as not applicable (out of its derivation's regime, or
    /// a quantity that was not computed); an invalid report never counts as
    /// a violation.
    pub fn invalidate(mut self, reason: impl Into<String>) -> Self {
        self.valid = false;
        self.validity_reason = Some(reason.into());
        self
    }

    /// A violation is a bound that applies and is not satisfied.
    pub fn violated(&self) -> bool {
        self.valid && !self.satisfied
    }
}

/// Closed-form upper bound on the logarithmic negativity,
/// `[16 d / (sqrt(1-2cd) (1-2cd)^2 |ln(1-2cd)|^2)] * m^{d-1}`.
///
/// The derivation holds for `m > 4d/|ln(2cd)|`; smaller regions get
/// `valid = false` with the threshold in the reason.
pub fn upper_bound_en(c: f64, d: usize, m: usize) -> Result<(f64, bool, Option<String>)> {
    let y = 2.0 * c * d as f64;
    if y <= 0.0 || y >= 1.0 {
        return Err(Error::ModelInvalid(format!(
            "upper bound needs 0 < 2cd < 1, got {y}"
        )));
    }
    let gap = 1.0 - y;
    let constant = 16.0 * d as f64 / (gap.sqrt() * gap * gap * gap.ln().abs().powi(2));
    let value = constant * (m as f64).powi(d as i32 - 1);
    let threshold = 4.0 * d as f64 / y.ln().abs();
    if (m as f64) > threshold {
        Ok((value, true, None))
    } else {
        Ok((
            value,
            false,
            Some(format!("m = {m} below validity threshold {threshold:.4}")),
        ))
    }
}

/// Which side of the elementwise envelope to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Upper,
    Lower,
}

/// Elementwise decay envelope at lattice distance `s`.
///
/// Upper: `y^s / (1-y)` with `y = 2cd`, bounding `|V^{+-1/2}[k,l]|` from
/// above. Lower: `(1/2) (c/2)^s / (1-c^2)`, bounding it from below.
pub fn decay_envelope(c: f64, d: usize, s: usize, kind: EnvelopeKind) -> f64 {
    debug_assert!(s >= 1);
    match kind {
        EnvelopeKind::Upper => {
            let y = 2.0 * c * d as f64;
            y.powi(s as i32) / (1.0 - y)
        }
        EnvelopeKind::Lower => 0.5 * (c / 2.0).powi(s as i32) / (1.0 - c * c),
    }
}

/// Which square root of the potential an envelope check applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPower {
    /// `V^{+1/2}`: off-diagonal elements are non-positive.
    Plus,
    /// `V^{-1/2}`: off-diagonal elements are non-negative.
    Minus,
}

/// One elementwise envelope violation.
#[derive(Debug, Clone)]
pub struct EnvelopeViolation {
    pub displacement: Vec<usize>,
    pub distance: usize,
    pub element: f64,
    pub envelope: f64,
    pub kind: EnvelopeKind,
}

/// Result of checking every off-diagonal element of `V^{+-1/2}` against the
/// sign structure and both envelopes.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub satisfied: bool,
    pub sign_ok: bool,
    pub upper_ok: bool,
    pub lower_ok: bool,
    /// Smallest `envelope - |element|` over the upper checks.
    pub worst_upper_margin: f64,
    /// Smallest `|element| - envelope` over the lower checks.
    pub worst_lower_margin: f64,
    pub first_violation: Option<EnvelopeViolation>,
    pub checked_elements: usize,
}

/// Check the exponential decay of the off-diagonal elements of `V^{+-1/2}`
/// for the nearest-neighbor model. Violations are report content, not errors.
pub fn verify_decay(matrix: &BlockCirculant, power: HalfPower) -> Result<DecayReport> {
    let spec = *matrix.spec();
    if spec.model != Model::NearestNeighbor {
        return Err(Error::InvalidInput(
            "decay envelopes are stated for the nearest-neighbor model".into(),
        ));
    }
    let (d, n, c) = (spec.d, spec.n, spec.c);
    let origin = SiteCoord(vec![0; d]);
    let mut report = DecayReport {
        satisfied: true,
        sign_ok: true,
        upper_ok: true,
        lower_ok: true,
        worst_upper_margin: f64::INFINITY,
        worst_lower_margin: f64::INFINITY,
        first_violation: None,
        checked_elements: 0,
    };

    let total = spec.site_count();
    for idx in 1..total {
        let site = SiteCoord::from_linear(idx, d, n);
        let s = crate::lattice::lattice_distance(&spec, &origin, &site)?;
        let element = matrix.element(&site, &origin)?;
        report.checked_elements += 1;

        let sign_ok = match power {
            HalfPower::Minus => element >= -BOUND_ABS_TOL,
            HalfPower::Plus => element <= BOUND_ABS_TOL,
        };
        if !sign_ok {
            report.sign_ok = false;
        }

        let magnitude = element.abs();
        let upper = decay_envelope(c, d, s, EnvelopeKind::Upper);
        let lower = decay_envelope(c, d, s, EnvelopeKind::Lower);
        report.worst_upper_margin = report.worst_upper_margin.min(upper - magnitude);
        report.worst_lower_margin = report.worst_lower_margin.min(magnitude - lower);

        let upper_ok = leq_with_tol(magnitude, upper);
        let lower_ok = leq_with_tol(lower, magnitude);
        if !upper_ok {
            report.upper_ok = false;
        }
        if !lower_ok {
            report.lower_ok = false;
        }
        if !(sign_ok && upper_ok && lower_ok) && report.first_violation.is_none() {
            report.first_violation = Some(EnvelopeViolation {
                displacement: site.0.clone(),
                distance: s,
                element,
                envelope: if upper_ok { lower } else { upper },
                kind: if upper_ok {
                    EnvelopeKind::Lower
                } else {
                    EnvelopeKind::Upper
                },
            });
        }
    }
    report.satisfied = report.sign_ok && report.upper_ok && report.lower_ok;
    Ok(report)
}

/// Shell-sum upper bound on the logarithmic negativity:
/// `(2/sqrt(1-2cd)) * sum_s ((m+2s)^d - m^d) y^s/(1-y) * sum_{k=0}^{m/2} y^k`.
///
/// The infinite series over `s` is truncated once the term drops below
/// 1e-15 of the running sum.
pub fn shell_sum_bound(spec: &LatticeSpec, m: usize) -> Result<f64> {
    if m > spec.n {
        return Err(Error::InvalidInput(format!(
            "region side m = {m} exceeds lattice side n = {}",
            spec.n
        )));
    }
    let d = spec.d as i32;
    let y = spec.y();
    if y == 0.0 {
        return Ok(0.0);
    }
    let md = (m as f64).powi(d);

    let mut series = 0.0;
    let mut y_pow = 1.0;
    for s in 1..=100_000usize {
        y_pow *= y;
        let term = ((m as f64 + 2.0 * s as f64).powi(d) - md) * y_pow / (1.0 - y);
        series += term;
        if term < 1e-15 * series {
            break;
        }
    }

    let shell_weight: f64 = (0..=m / 2).map(|k| y.powi(k as i32)).sum();
    Ok(2.0 / (1.0 - y).sqrt() * series * shell_weight)
}

/// Dominant eigenvalue of `-B E^T` by power iteration. The matrix is
/// elementwise non-negative with a real non-negative spectrum, so the
/// iteration started from a positive vector converges to the top eigenvalue.
fn top_shift_eigenvalue(state: &ReducedState) -> f64 {
    let matrix = state.minus_be_transpose();
    let size = matrix.nrows();
    let mut v = nalgebra::DVector::from_element(size, (size as f64).sqrt().recip());
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let w = &matrix * &v;
        let norm = w.norm();
        if norm < 1e-300 {
            return 0.0;
        }
        let next = v.dot(&w);
        let converged = (next - lambda).abs() <= 1e-14 * next.abs().max(1e-30);
        lambda = next;
        v = w / norm;
        if converged {
            break;
        }
    }
    lambda
}

fn bracket_factors(lambda1: f64, mu1: f64) -> (f64, f64) {
    let root_factor = if lambda1 <= 1e-12 {
        0.5
    } else {
        ((1.0 + lambda1).sqrt() - 1.0) / lambda1
    };
    let log_factor = if mu1 - 1.0 <= 1e-12 {
        1.0
    } else {
        mu1.ln() / (mu1 - 1.0)
    };
    (root_factor, log_factor)
}

/// Lower bound on the entanglement entropy from the trace chain:
/// `[(sqrt(1+k)-1)/k] * [ln(mu_1)/(mu_1-1)] * tr(-B E^T)` with
/// `k = lambda_1(-B E^T)`; the analytic limits 1/2 and 1 are substituted
/// when `k -> 0` or `mu_1 -> 1`.
pub fn lower_bound_estimate(state: &ReducedState, spectrum: &SymplecticSpectrum) -> Result<f64> {
    let trace = state.minus_be_trace();
    if state.b.ncols() == 0 || trace == 0.0 {
        return Ok(0.0);
    }
    let lambda1 = top_shift_eigenvalue(state);
    if lambda1 < -1e-8 {
        return Err(Error::Numerical(format!(
            "top eigenvalue of -B E^T is {lambda1} < 0"
        )));
    }
    let (root_factor, log_factor) = bracket_factors(lambda1.max(0.0), spectrum.largest());
    Ok(root_factor * log_factor * trace)
}

/// The two prefactors of [`lower_bound_estimate`], both in `(0, 1]`.
pub fn lower_bound_prefactors(
    state: &ReducedState,
    spectrum: &SymplecticSpectrum,
) -> Result<(f64, f64)> {
    let lambda1 = top_shift_eigenvalue(state).max(0.0);
    Ok(bracket_factors(lambda1, spectrum.largest()))
}
