//! Phase-covariant qubit channels `(lambda1, lambda3, lambda_star)` and their
//! structural operations: complete-positivity checks, Bloch-space action,
//! fixed points, non-unitality, and covariance verification.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pauli_decompose, BlochVector, ComplexMatrix2, QubitState};

/// Slack allowed on both complete-positivity conditions, so parameter sets
/// that sit exactly on the boundary (as the decay and oscillation families
/// do) are accepted despite rounding.
pub const CP_TOL: f64 = 1e-9;

/// Sign selector for the non-unital component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(format!("expected '+' or '-', got '{other}'")),
        }
    }
}

/// Parameters of a phase-covariant qubit channel.
///
/// The Bloch action is `(x1, x2, x3) -> (lambda1 x1, lambda1 x2,
/// lambda_star + lambda3 x3)`; the two equatorial directions share
/// `lambda1`, which is what phase covariance enforces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub lambda1: f64,
    pub lambda3: f64,
    pub lambda_star: f64,
}

/// Outcome of the complete-positivity check. Slacks are `RHS - LHS` of the
/// two conditions `|lambda_star| + |lambda3| <= 1` and
/// `4 lambda1^2 + lambda_star^2 <= (1 + lambda3)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpReport {
    pub valid: bool,
    pub slack_a: f64,
    pub slack_b: f64,
}

/// Non-unitality degree `|lambda_star| / (1 - |lambda3|)`, clamped to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonUnitalityDegree(pub f64);

impl ChannelParams {
    pub fn new(lambda1: f64, lambda3: f64, lambda_star: f64) -> Self {
        Self {
            lambda1,
            lambda3,
            lambda_star,
        }
    }

    /// Checks both complete-positivity conditions, boundary-inclusive
    /// within [`CP_TOL`].
    pub fn validate_cp(&self) -> CpReport {
        let slack_a = 1.0 - (self.lambda_star.abs() + self.lambda3.abs());
        let one_plus = 1.0 + self.lambda3;
        let slack_b = one_plus * one_plus
            - (4.0 * self.lambda1 * self.lambda1 + self.lambda_star * self.lambda_star);
        CpReport {
            valid: slack_a >= -CP_TOL && slack_b >= -CP_TOL,
            slack_a,
            slack_b,
        }
    }

    pub fn require_cp(&self) -> Result<()> {
        let report = self.validate_cp();
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidChannel {
                slack_a: report.slack_a,
                slack_b: report.slack_b,
            })
        }
    }

    pub fn is_unital(&self) -> bool {
        self.lambda_star == 0.0
    }

    /// Image of a Bloch vector under the channel.
    pub fn apply_bloch(&self, v: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.lambda1 * v.x1,
            self.lambda1 * v.x2,
            self.lambda_star + self.lambda3 * v.x3,
        )
    }

    /// Applies the channel to a state. Complete positivity keeps the output
    /// inside the Bloch ball, so the result is constructed directly.
    pub fn apply(&self, rho: &QubitState) -> Result<QubitState> {
        self.require_cp()?;
        Ok(QubitState::from_bloch_unchecked(
            self.apply_bloch(&rho.bloch()),
        ))
    }

    /// Extends the Bloch action linearly to a Hermitian matrix
    /// `m = t0*I + v . sigma`. The non-unital shift scales with the trace
    /// component, so the extension agrees with `apply` on states and stays
    /// linear on all of Hermitian space.
    pub(crate) fn apply_matrix(&self, m: &ComplexMatrix2) -> Result<ComplexMatrix2> {
        let (t0, v) = pauli_decompose(m)?;
        let shifted = BlochVector::new(
            self.lambda1 * v.x1,
            self.lambda1 * v.x2,
            t0 * self.lambda_star + self.lambda3 * v.x3,
        );
        Ok(ComplexMatrix2::from_pauli(t0, shifted))
    }

    /// Unique invariant state `(0, 0, lambda_star / (1 - lambda3))`.
    ///
    /// Fails with `DegenerateFixedPoint` when `lambda3 = 1`, where the whole
    /// sigma3 axis is invariant.
    pub fn invariant_state(&self) -> Result<QubitState> {
        self.require_cp()?;
        if (1.0 - self.lambda3).abs() <= 1e-12 {
            return Err(Error::DegenerateFixedPoint);
        }
        let z = self.lambda_star / (1.0 - self.lambda3);
        QubitState::from_bloch(BlochVector::new(0.0, 0.0, z))
    }

    /// Degree of non-unitality `|lambda_star| / (1 - |lambda3|)`.
    ///
    /// Returns 0 when `|lambda3| = 1`: complete positivity then forces
    /// `lambda_star = 0`.
    pub fn non_unitality(&self) -> NonUnitalityDegree {
        let denom = 1.0 - self.lambda3.abs();
        if denom < 1e-12 {
            return NonUnitalityDegree(0.0);
        }
        NonUnitalityDegree((self.lambda_star.abs() / denom).clamp(0.0, 1.0))
    }
}

/// Convex interpolation between the unital channel and the maximally
/// non-unital one at fixed `(lambda1, lambda3)`: returns parameters with
/// `lambda_star = sign * p * (1 - |lambda3|)`.
///
/// Fails with `EndpointNotCp` when the `p = 1` endpoint itself violates the
/// second complete-positivity condition.
pub fn mix_unital_nonunital(
    lambda1: f64,
    lambda3: f64,
    p: f64,
    sign: Sign,
) -> Result<ChannelParams> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    let endpoint = ChannelParams::new(lambda1, lambda3, sign.as_f64() * (1.0 - lambda3.abs()));
    let report = endpoint.validate_cp();
    if !report.valid {
        return Err(Error::EndpointNotCp(report.slack_b));
    }
    Ok(ChannelParams::new(
        lambda1,
        lambda3,
        sign.as_f64() * p * (1.0 - lambda3.abs()),
    ))
}

/// Residual of the covariance identity
/// `Lambda[U rho U^dag] = U Lambda[rho] U^dag` for `U = exp(-i sigma3 phi)`,
/// computed through explicit matrix products. Should vanish to rounding for
/// every phase-covariant channel.
pub fn check_covariance(params: &ChannelParams, rho: &QubitState, phi: f64) -> Result<f64> {
    params.require_cp()?;
    let u = ComplexMatrix2::new([
        [Complex64::from_polar(1.0, -phi), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, phi)],
    ]);
    let u_dag = u.adjoint();
    let r = rho.matrix();
    let rotated_then_mapped = params.apply_matrix(&u.mul(&r).mul(&u_dag))?;
    let mapped_then_rotated = u.mul(&params.apply_matrix(&r)?).mul(&u_dag);
    Ok(rotated_then_mapped.max_abs_diff(&mapped_then_rotated))
}
