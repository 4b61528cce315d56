//! Closed-form performance measures: extremal channel fidelities over pure
//! inputs, maximal output Schatten norms, and a bundled report.
//!
//! Every optimum is reported together with its branch (interior stationary
//! point vs Bloch-sphere pole) and the polar coordinate of the optimizing
//! family of pure states.

use crate::channel::ChannelParams;
use crate::entanglement::{concurrence_closed, entanglement_of_formation};
use crate::error::{Error, Result};
use crate::linalg::BlochVector;

/// Where an extremum is attained on the pure-state sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Stationary point strictly inside the polar interval `(-1, 1)`.
    Interior,
    /// One of the poles `x3 = -1` or `x3 = +1`.
    Endpoint,
}

/// The circle of pure optimizers at fixed polar coordinate `x3`; every
/// azimuth on that circle attains the same value by phase covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalFamily {
    pub x3: f64,
}

impl ExtremalFamily {
    /// Equatorial radius of the circle, i.e. the `x1` coordinate of its
    /// azimuth-zero representative.
    pub fn x1_limit(&self) -> f64 {
        (1.0 - self.x3 * self.x3).max(0.0).sqrt()
    }

    /// Azimuth-zero representative `(x1_limit, 0, x3)` as a Bloch vector.
    pub fn representative(&self) -> BlochVector {
        BlochVector::new(self.x1_limit(), 0.0, self.x3)
    }
}

/// An extremal value together with where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub branch: Branch,
    pub family: ExtremalFamily,
}

/// Channel fidelity `F(rho, Lambda[rho])` for a pure input with Bloch
/// vector `v`:
/// `(1 + lambda1 (x1^2 + x2^2) + lambda3 x3^2 + lambda_star x3) / 2`.
pub fn fidelity_on_pure(params: &ChannelParams, v: &BlochVector) -> Result<f64> {
    params.require_cp()?;
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotPure(norm));
    }
    Ok(0.5
        * (1.0
            + params.lambda1 * (v.x1 * v.x1 + v.x2 * v.x2)
            + params.lambda3 * v.x3 * v.x3
            + params.lambda_star * v.x3))
}

/// Minimal channel fidelity over all pure inputs.
///
/// Interior branch `(1 + lambda1 - lambda_star^2 / (4 (lambda3 - lambda1))) / 2`
/// at `x3 = -lambda_star / (2 (lambda3 - lambda1))` when `lambda3 > lambda1`
/// and `|lambda_star| < 2 (lambda3 - lambda1)` strictly; otherwise the pole
/// `x3 = -sign(lambda_star)` with value `(1 + lambda3 - |lambda_star|) / 2`.
/// Ties go to the pole, where both expressions coincide.
pub fn f_min_closed(params: &ChannelParams) -> Result<Extremum> {
    params.require_cp()?;
    let gap = params.lambda3 - params.lambda1;
    let ls = params.lambda_star;
    if gap > 0.0 && ls.abs() < 2.0 * gap {
        return Ok(Extremum {
            value: 0.5 * (1.0 + params.lambda1 - ls * ls / (4.0 * gap)),
            branch: Branch::Interior,
            family: ExtremalFamily {
                x3: -ls / (2.0 * gap),
            },
        });
    }
    let x3 = if ls > 0.0 { -1.0 } else { 1.0 };
    let x3 = if ls == 0.0 { -1.0 } else { x3 };
    Ok(Extremum {
        value: 0.5 * (1.0 + params.lambda3 - ls.abs()),
        branch: Branch::Endpoint,
        family: ExtremalFamily { x3 },
    })
}

/// Maximal channel fidelity over all pure inputs; mirror image of
/// [`f_min_closed`] with the roles of `lambda1` and `lambda3` reversed.
pub fn f_max_closed(params: &ChannelParams) -> Result<Extremum> {
    params.require_cp()?;
    let gap = params.lambda1 - params.lambda3;
    let ls = params.lambda_star;
    if gap > 0.0 && ls.abs() < 2.0 * gap {
        return Ok(Extremum {
            value: 0.5 * (1.0 + params.lambda1 + ls * ls / (4.0 * gap)),
            branch: Branch::Interior,
            family: ExtremalFamily {
                x3: ls / (2.0 * gap),
            },
        });
    }
    let x3 = if ls < 0.0 { -1.0 } else { 1.0 };
    Ok(Extremum {
        value: 0.5 * (1.0 + params.lambda3 + ls.abs()),
        branch: Branch::Endpoint,
        family: ExtremalFamily { x3 },
    })
}

/// Maximal output purity, i.e. the squared Schatten 2-norm of the output
/// maximized over all inputs.
///
/// Interior branch `(1 + lambda1^2 + lambda1^2 lambda_star^2 /
/// (lambda1^2 - lambda3^2)) / 2` at
/// `x3 = lambda3 lambda_star / (lambda1^2 - lambda3^2)` when
/// `|lambda3 lambda_star| < lambda1^2 - lambda3^2` strictly; otherwise the
/// pole aligned with `sign(lambda3 lambda_star)` (the positive pole on
/// ties) with value
/// `(1 + lambda3^2 + lambda_star^2 + 2 |lambda3 lambda_star|) / 2`.
pub fn nu2_squared_closed(params: &ChannelParams) -> Result<Extremum> {
    params.require_cp()?;
    let l1sq = params.lambda1 * params.lambda1;
    let l3sq = params.lambda3 * params.lambda3;
    let gap = l1sq - l3sq;
    let cross = params.lambda3 * params.lambda_star;
    if gap > 0.0 && cross.abs() < gap {
        return Ok(Extremum {
            value: 0.5 * (1.0 + l1sq + l1sq * params.lambda_star * params.lambda_star / gap),
            branch: Branch::Interior,
            family: ExtremalFamily { x3: cross / gap },
        });
    }
    let x3 = if cross < 0.0 { -1.0 } else { 1.0 };
    Ok(Extremum {
        value: 0.5 * (1.0 + l3sq + params.lambda_star * params.lambda_star + 2.0 * cross.abs()),
        branch: Branch::Endpoint,
        family: ExtremalFamily { x3 },
    })
}

/// Maximal output Bloch norm, attained on the same optimizer as the
/// maximal purity. Computed directly from the parameters per branch;
/// rebuilding it as `sqrt(2 nu2^2 - 1)` would cancel badly when the
/// extremal output sits near the center of the ball.
fn max_output_bloch_norm(params: &ChannelParams) -> Result<(f64, Extremum)> {
    let nu2 = nu2_squared_closed(params)?;
    let ls = params.lambda_star;
    let s = match nu2.branch {
        Branch::Interior => {
            let l1sq = params.lambda1 * params.lambda1;
            let gap = l1sq - params.lambda3 * params.lambda3;
            (l1sq + l1sq * ls * ls / gap).sqrt()
        }
        Branch::Endpoint => params.lambda3.abs() + ls.abs(),
    };
    Ok((s, nu2))
}

/// Maximal output infinity-norm in the three-term form
/// `(1 + max{|lambda1|, |lambda3 + lambda_star|, |lambda3 - lambda_star|}) / 2`.
///
/// This undercounts whenever the purity optimum sits on the interior branch
/// with a non-unital component present; [`nu_inf_bloch`] is the exact value.
pub fn nu_inf_paper(params: &ChannelParams) -> Result<f64> {
    params.require_cp()?;
    let candidates = [
        params.lambda1.abs(),
        (params.lambda3 + params.lambda_star).abs(),
        (params.lambda3 - params.lambda_star).abs(),
    ];
    let m = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(0.5 * (1.0 + m))
}

/// Maximal output infinity-norm `(1 + s) / 2` where `s` is the maximal
/// output Bloch norm. The largest output eigenvalue and the output purity
/// are both increasing in `s`, so this shares its optimizer with
/// [`nu2_squared_closed`] and dominates [`nu_inf_paper`] everywhere.
pub fn nu_inf_bloch(params: &ChannelParams) -> Result<Extremum> {
    let (s, nu2) = max_output_bloch_norm(params)?;
    Ok(Extremum {
        value: 0.5 * (1.0 + s),
        branch: nu2.branch,
        family: nu2.family,
    })
}

/// Maximal output Schatten p-norm for `p >= 1`, including `p = infinity`.
///
/// Evaluated as `a (1 + (b/a)^p)^(1/p)` with `a = (1+s)/2`, `b = (1-s)/2`,
/// which is stable for large `p` where `a^p` alone would underflow.
pub fn nu_p_general(params: &ChannelParams, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let (s, _) = max_output_bloch_norm(params)?;
    let a = 0.5 * (1.0 + s);
    if p == f64::INFINITY {
        return Ok(a);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let b = 0.5 * (1.0 - s);
    Ok(a * (1.0 + (b / a).powf(p)).powf(p.recip()))
}

/// All scalar measures of a channel in one pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub f_min: Extremum,
    pub f_max: Extremum,
    pub nu2_squared: Extremum,
    pub nu_inf_paper: f64,
    pub nu_inf_bloch: f64,
    pub concurrence: f64,
    pub eof: f64,
}

/// Computes every closed-form measure for one channel.
pub fn measure_report(params: &ChannelParams) -> Result<MeasureReport> {
    params.require_cp()?;
    let concurrence = concurrence_closed(params)?;
    Ok(MeasureReport {
        f_min: f_min_closed(params)?,
        f_max: f_max_closed(params)?,
        nu2_squared: nu2_squared_closed(params)?,
        nu_inf_paper: nu_inf_paper(params)?,
        nu_inf_bloch: nu_inf_bloch(params)?.value,
        concurrence,
        eof: entanglement_of_formation(concurrence)?,
    })
}
