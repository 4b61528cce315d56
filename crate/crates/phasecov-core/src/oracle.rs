//! Brute-force oracle: independent grid searches over pure inputs, power
//! iteration for fixed points, seeded channel sampling, and a batch audit
//! that reports the worst gap between every closed form and its oracle.
//!
//! The searches only use the state machinery (channel application, state
//! overlap, output eigenvalues), never the closed-form branch logic they
//! are checking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::entanglement::{
    concurrence_closed, concurrence_spectral, concurrence_spectrum_closed, evolve_one_sided,
    TwoQubitXState,
};
use crate::error::{Error, Result};
use crate::linalg::{state_overlap, BlochVector, QubitState};
use crate::measures::{nu2_squared_closed, nu_inf_bloch, nu_inf_paper, nu_p_general};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Resolution of the brute-force search: polar grid points on `[-1, 1]`,
/// azimuthal points on `[0, 2 pi)`, and golden-section refinement steps
/// around the best polar bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_polar: usize,
    pub n_azimuth: usize,
    pub refinement: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_polar: 4001,
            n_azimuth: 64,
            refinement: 40,
        }
    }
}

impl GridSpec {
    fn polar(&self, i: usize) -> f64 {
        -1.0 + 2.0 * (i as f64) / ((self.n_polar - 1) as f64)
    }

    fn azimuth(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * (j as f64) / (self.n_azimuth as f64)
    }
}

/// One oracle value next to the closed form it checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    /// Best value found by the search.
    pub value: f64,
    /// Polar coordinate `x3` at which the search found it.
    pub argument: f64,
    /// What the closed form predicts.
    pub closed_form_value: f64,
    /// `|value - closed_form_value|`.
    pub absolute_gap: f64,
}

impl OracleReport {
    fn new(value: f64, argument: f64, closed_form_value: f64) -> Self {
        Self {
            value,
            argument,
            closed_form_value,
            absolute_gap: (value - closed_form_value).abs(),
        }
    }
}

/// Which output Schatten norm the search maximizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormOrder {
    /// Squared 2-norm, i.e. the output purity.
    TwoSquared,
    /// General p-norm for finite `p >= 1`.
    P(f64),
    /// Operator norm (largest eigenvalue).
    Inf,
}

fn pure_input(x3: f64, phi: f64) -> QubitState {
    let r = (1.0 - x3 * x3).max(0.0).sqrt();
    QubitState::from_bloch_unchecked(BlochVector::new(r * phi.cos(), r * phi.sin(), x3))
}

fn output_state(params: &ChannelParams, x3: f64, phi: f64) -> QubitState {
    QubitState::from_bloch_unchecked(params.apply_bloch(&pure_input(x3, phi).bloch()))
}

/// Eigenvalues of the output density matrix, smaller first, taken from the
/// matrix entries rather than the Bloch norm.
fn output_eigs(out: &QubitState) -> (f64, f64) {
    let m = out.matrix();
    let a = m.entry(0, 0).re;
    let d = m.entry(1, 1).re;
    let mid = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + m.entry(1, 0).norm_sqr()).sqrt();
    (mid - radius, mid + radius)
}

fn schatten_from_eigs(lo: f64, hi: f64, order: NormOrder) -> f64 {
    let lo = lo.max(0.0);
    match order {
        NormOrder::TwoSquared => lo * lo + hi * hi,
        NormOrder::P(p) => hi * (1.0 + (lo / hi).powf(p)).powf(p.recip()),
        NormOrder::Inf => hi,
    }
}

/// Golden-section search for the maximum of a unimodal function on
/// `[lo, hi]`, never returning anything worse than the supplied seed.
fn golden_max(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    iterations: usize,
    seed_x: f64,
    seed_value: f64,
) -> (f64, f64) {
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = (seed_x, seed_value);
    if fc > best.1 {
        best = (c, fc);
    }
    if fd > best.1 {
        best = (d, fd);
    }
    for _ in 0..iterations {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Full grid scan followed by golden refinement along the polar coordinate
/// at the best azimuth. `objective` is maximized; updates are strict, so
/// ties resolve to the smallest row-major grid index.
fn scan_and_refine(grid: &GridSpec, objective: impl Fn(f64, f64) -> f64) -> (f64, f64) {
    let mut best_value = f64::NEG_INFINITY;
    let mut best_i = 0usize;
    let mut best_j = 0usize;
    for i in 0..grid.n_polar {
        let x3 = grid.polar(i);
        for j in 0..grid.n_azimuth {
            let value = objective(x3, grid.azimuth(j));
            if value > best_value {
                best_value = value;
                best_i = i;
                best_j = j;
            }
        }
    }
    let lo = grid.polar(best_i.saturating_sub(1));
    let hi = grid.polar((best_i + 1).min(grid.n_polar - 1));
    let phi = grid.azimuth(best_j);
    let (x3, value) = golden_max(
        |x3| objective(x3, phi),
        lo,
        hi,
        grid.refinement,
        grid.polar(best_i),
        best_value,
    );
    (value, x3)
}

/// Grid-plus-refinement search for the extremal channel fidelities over
/// pure inputs, returned as `(minimum, maximum)` reports against the two
/// closed forms.
pub fn brute_fidelity_extrema(
    params: &ChannelParams,
    grid: &GridSpec,
) -> Result<(OracleReport, OracleReport)> {
    params.require_cp()?;
    let fidelity = |x3: f64, phi: f64| {
        let input = pure_input(x3, phi);
        state_overlap(&input, &output_state(params, x3, phi))
    };
    let (neg_min, min_x3) = scan_and_refine(grid, |x3, phi| -fidelity(x3, phi));
    let (max_value, max_x3) = scan_and_refine(grid, fidelity);
    let closed_min = crate::measures::f_min_closed(params)?.value;
    let closed_max = crate::measures::f_max_closed(params)?.value;
    Ok((
        OracleReport::new(-neg_min, min_x3, closed_min),
        OracleReport::new(max_value, max_x3, closed_max),
    ))
}

/// Grid-plus-refinement search for the maximal output Schatten norm of the
/// requested order, computed from output eigenvalues.
pub fn brute_output_norm(
    params: &ChannelParams,
    grid: &GridSpec,
    order: NormOrder,
) -> Result<OracleReport> {
    params.require_cp()?;
    if let NormOrder::P(p) = order {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
    }
    let objective = |x3: f64, phi: f64| {
        let (lo, hi) = output_eigs(&output_state(params, x3, phi));
        schatten_from_eigs(lo, hi, order)
    };
    let (value, x3) = scan_and_refine(grid, objective);
    let closed = match order {
        NormOrder::TwoSquared => nu2_squared_closed(params)?.value,
        NormOrder::P(p) => nu_p_general(params, p)?,
        NormOrder::Inf => nu_inf_bloch(params)?.value,
    };
    Ok(OracleReport::new(value, x3, closed))
}

/// Search for the maximal output operator norm where the inner
/// maximization over the output spectrum is done analytically as
/// `(1 + |bloch|) / 2`, leaving only the outer input search to the grid.
pub fn brute_inf_double_max(params: &ChannelParams, grid: &GridSpec) -> Result<OracleReport> {
    params.require_cp()?;
    let objective = |x3: f64, phi: f64| 0.5 * (1.0 + output_state(params, x3, phi).bloch().norm());
    let (value, x3) = scan_and_refine(grid, objective);
    Ok(OracleReport::new(value, x3, nu_inf_bloch(params)?.value))
}

/// Power iteration from the maximally mixed state until successive Bloch
/// vectors differ by less than `1e-14`, capped at `1e4` steps. Channels
/// with `|lambda3|` within `1e-12` of 1 contract too slowly (or not at
/// all) and fail fast.
pub fn brute_fixed_point(params: &ChannelParams) -> Result<QubitState> {
    params.require_cp()?;
    if params.lambda3.abs() >= 1.0 - 1e-12 {
        return Err(Error::NoConvergence);
    }
    let mut current = QubitState::maximally_mixed();
    for _ in 0..10_000 {
        let next = QubitState::from_bloch_unchecked(params.apply_bloch(&current.bloch()));
        if next.bloch().distance(&current.bloch()) < 1e-14 {
            return Ok(next);
        }
        current = next;
    }
    Err(Error::NoConvergence)
}

/// Draws channels uniformly from the parameter cube `[-1, 1]^3` with
/// rejection on the complete-positivity conditions. The stream is fully
/// determined by the seed: one `ChaCha8` generator, three consecutive
/// `f64` draws per candidate (`lambda1`, `lambda3`, `lambda_star`, each
/// mapped as `2 u - 1`), rejected candidates consume their draws.
pub fn sample_cp_channels(count: usize, seed: u64) -> Vec<ChannelParams> {
    sample_cp_channels_where(count, seed, |_| true)
}

/// Same stream as [`sample_cp_channels`], additionally rejecting channels
/// the predicate declines.
pub fn sample_cp_channels_where(
    count: usize,
    seed: u64,
    keep: impl Fn(&ChannelParams) -> bool,
) -> Vec<ChannelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let lambda1 = 2.0 * rng.gen::<f64>() - 1.0;
        let lambda3 = 2.0 * rng.gen::<f64>() - 1.0;
        let lambda_star = 2.0 * rng.gen::<f64>() - 1.0;
        let params = ChannelParams::new(lambda1, lambda3, lambda_star);
        if params.validate_cp().valid && keep(&params) {
            out.push(params);
        }
    }
    out
}

/// Every oracle comparison for a single channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelAudit {
    pub params: ChannelParams,
    pub f_min: OracleReport,
    pub f_max: OracleReport,
    pub nu2_squared: OracleReport,
    /// Operator-norm search against the Bloch-norm closed form.
    pub nu_inf: OracleReport,
    /// Signed gap `search value - three-term formula`; positive when the
    /// three-term formula undercounts.
    pub nu_inf_paper_gap: f64,
    /// Whether the three-term formula is expected to be exact here
    /// (`|lambda3| >= |lambda1|` or no non-unital component).
    pub paper_regime: bool,
    /// `|closed concurrence - spectral concurrence of the evolved pair|`.
    pub concurrence_gap: f64,
    pub spectrum_labels_sorted: bool,
    /// Bloch distance between the iterated and closed-form fixed points;
    /// `None` when `|lambda3| >= 1 - 1e-6` and the check is skipped.
    pub fixed_point_gap: Option<f64>,
}

/// Runs every oracle against every closed form for one channel.
pub fn audit_channel(params: &ChannelParams, grid: &GridSpec) -> Result<ChannelAudit> {
    let (f_min, f_max) = brute_fidelity_extrema(params, grid)?;
    let nu2_squared = brute_output_norm(params, grid, NormOrder::TwoSquared)?;
    let nu_inf = brute_inf_double_max(params, grid)?;
    let nu_inf_paper_gap = nu_inf.value - nu_inf_paper(params)?;
    let paper_regime = params.lambda3.abs() >= params.lambda1.abs() || params.lambda_star == 0.0;

    let evolved = evolve_one_sided(params, &TwoQubitXState::maximally_entangled())?;
    let concurrence_gap = (concurrence_closed(params)? - concurrence_spectral(&evolved)?).abs();
    let spectrum_labels_sorted = concurrence_spectrum_closed(params)?.labels_are_sorted();

    let fixed_point_gap = if params.lambda3.abs() < 1.0 - 1e-6 {
        let iterated = brute_fixed_point(params)?;
        let closed = params.invariant_state()?;
        Some(iterated.bloch().distance(&closed.bloch()))
    } else {
        None
    };

    Ok(ChannelAudit {
        params: *params,
        f_min,
        f_max,
        nu2_squared,
        nu_inf,
        nu_inf_paper_gap,
        paper_regime,
        concurrence_gap,
        spectrum_labels_sorted,
        fixed_point_gap,
    })
}

/// Worst-case gaps across a batch of audited channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditReport {
    pub channels: usize,
    pub max_f_min_gap: f64,
    pub max_f_max_gap: f64,
    pub max_nu2_gap: f64,
    pub max_nu_inf_gap: f64,
    /// Largest signed undercount of the three-term operator-norm formula.
    pub max_nu_inf_paper_gap: f64,
    /// Largest absolute three-term-formula gap on its exactness regime.
    pub max_nu_inf_paper_regime_gap: f64,
    /// Samples where the three-term formula undercounts by more than `1e-3`.
    pub nu_inf_paper_large_gap_count: usize,
    pub max_concurrence_gap: f64,
    /// Samples whose labeled concurrence spectrum is not already sorted.
    pub spectrum_ordering_violations: usize,
    pub max_fixed_point_gap: f64,
    /// How many samples actually ran the fixed-point check.
    pub fixed_point_checked: usize,
}

impl AuditReport {
    pub fn from_audits(audits: &[ChannelAudit]) -> Self {
        let mut report = AuditReport {
            channels: audits.len(),
            max_f_min_gap: 0.0,
            max_f_max_gap: 0.0,
            max_nu2_gap: 0.0,
            max_nu_inf_gap: 0.0,
            max_nu_inf_paper_gap: f64::NEG_INFINITY,
            max_nu_inf_paper_regime_gap: 0.0,
            nu_inf_paper_large_gap_count: 0,
            max_concurrence_gap: 0.0,
            spectrum_ordering_violations: 0,
            max_fixed_point_gap: 0.0,
            fixed_point_checked: 0,
        };
        for audit in audits {
            report.max_f_min_gap = report.max_f_min_gap.max(audit.f_min.absolute_gap);
            report.max_f_max_gap = report.max_f_max_gap.max(audit.f_max.absolute_gap);
            report.max_nu2_gap = report.max_nu2_gap.max(audit.nu2_squared.absolute_gap);
            report.max_nu_inf_gap = report.max_nu_inf_gap.max(audit.nu_inf.absolute_gap);
            report.max_nu_inf_paper_gap = report.max_nu_inf_paper_gap.max(audit.nu_inf_paper_gap);
            if audit.paper_regime {
                report.max_nu_inf_paper_regime_gap = report
                    .max_nu_inf_paper_regime_gap
                    .max(audit.nu_inf_paper_gap.abs());
            }
            if audit.nu_inf_paper_gap > 1e-3 {
                report.nu_inf_paper_large_gap_count += 1;
            }
            report.max_concurrence_gap = report.max_concurrence_gap.max(audit.concurrence_gap);
            if !audit.spectrum_labels_sorted {
                report.spectrum_ordering_violations += 1;
            }
            if let Some(gap) = audit.fixed_point_gap {
                report.max_fixed_point_gap = report.max_fixed_point_gap.max(gap);
                report.fixed_point_checked += 1;
            }
        }
        if report.channels == 0 {
            report.max_nu_inf_paper_gap = 0.0;
        }
        report
    }
}

/// Audits a batch of channels in parallel. Aggregation order is the input
/// order, so the report is deterministic for a fixed channel list.
pub fn run_audit(channels: &[ChannelParams], grid: &GridSpec) -> Result<AuditReport> {
    let audits = channels
        .par_iter()
        .map(|params| audit_channel(params, grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport::from_audits(&audits))
}
