//! Time-parametrized channel families and their trajectory studies: a
//! monotone decay family and an oscillatory family, the piecewise
//! trajectory formulas for each measure, concurrence evolution with its
//! death times, and tabulated samples ready for serialization.

use serde::Serialize;

use crate::channel::{ChannelParams, Sign};
use crate::error::{Error, Result};
use crate::measures::measure_report;

/// Trajectory p values used when the caller does not choose their own.
pub const DEFAULT_P_VALUES: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

/// Which one-parameter family of channels a trajectory walks along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `lambda1 = exp(-t)`, `lambda3 = exp(-2t)`,
    /// `lambda_star = sign * p * (1 - lambda3)`.
    Exp,
    /// `lambda1 = cos t`, `lambda3 = cos^2 t`,
    /// `lambda_star = sign * p * sin^2 t`.
    Osc,
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exp" => Ok(FamilyKind::Exp),
            "osc" => Ok(FamilyKind::Osc),
            other => Err(format!("expected 'exp' or 'osc', got '{other}'")),
        }
    }
}

/// A channel family at fixed non-unitality degree `p` and sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryFamily {
    pub kind: FamilyKind,
    pub p: f64,
    pub sign: Sign,
}

impl TrajectoryFamily {
    pub fn new(kind: FamilyKind, p: f64, sign: Sign) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(p));
        }
        Ok(Self { kind, p, sign })
    }

    /// Channel parameters at time `t`.
    pub fn sample(&self, t: f64) -> ChannelParams {
        match self.kind {
            FamilyKind::Exp => {
                let e2 = (-2.0 * t).exp();
                ChannelParams::new((-t).exp(), e2, self.sign.as_f64() * self.p * (1.0 - e2))
            }
            FamilyKind::Osc => {
                let c = t.cos();
                let s = t.sin();
                let s2 = s * s;
                ChannelParams::new(c, c * c, self.sign.as_f64() * self.p * s2)
            }
        }
    }

    /// The family's own piecewise measure formulas at time `t`.
    pub fn paper_measures(&self, t: f64) -> PaperMeasures {
        match self.kind {
            FamilyKind::Exp => paper_formulas_exp(self.p, t),
            FamilyKind::Osc => paper_formulas_osc(self.p, t),
        }
    }

    /// The family's concurrence law at time `t`.
    pub fn concurrence_formula(&self, t: f64) -> f64 {
        match self.kind {
            FamilyKind::Exp => concurrence_exp(self.p, t),
            FamilyKind::Osc => concurrence_osc(self.p, t),
        }
    }
}

/// Measure values given by the piecewise trajectory formulas. `nu_inf`
/// follows the three-term operator-norm convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperMeasures {
    pub f_min: f64,
    pub f_max: f64,
    pub nu2_squared: f64,
    pub nu_inf: f64,
}

/// Piecewise formulas along the decay family. For `t <= 0` every measure
/// is exactly 1 (the analytic limit); elsewhere the small-`t` regime is
/// kept accurate through `exp_m1`.
pub fn paper_formulas_exp(p: f64, t: f64) -> PaperMeasures {
    if t <= 0.0 {
        return PaperMeasures {
            f_min: 1.0,
            f_max: 1.0,
            nu2_squared: 1.0,
            nu_inf: 1.0,
        };
    }
    let em2 = (-2.0 * t).exp_m1();
    let e2 = 1.0 + em2;
    let e1 = (-t).exp();
    let one_minus_e1 = -(-t).exp_m1();
    let sinh_t = t.sinh();

    let f_min = 1.0 + 0.5 * (1.0 + p) * em2;
    let f_max = if p <= one_minus_e1 / sinh_t {
        (-em2) / (4.0 * one_minus_e1) * (2.0 + p * p * sinh_t)
    } else {
        0.5 * (1.0 + p + (1.0 - p) * e2)
    };
    let nu2_squared = 0.5 * ((1.0 + p * p) + (1.0 - p * p) * e2);
    let nu_inf = if p <= one_minus_e1 / (2.0 * sinh_t) {
        0.5 * (1.0 + e1)
    } else {
        0.5 * (1.0 + p + (1.0 - p) * e2)
    };
    PaperMeasures {
        f_min,
        f_max,
        nu2_squared,
        nu_inf,
    }
}

/// Piecewise formulas along the oscillatory family, evaluated literally:
/// at the degenerate times `t = k pi` the interior conditions fail and
/// every measure lands on its endpoint value 1, even though the fidelity
/// minimum approaches 0 one-sidedly at odd multiples of pi.
pub fn paper_formulas_osc(p: f64, t: f64) -> PaperMeasures {
    let c = t.cos();
    let s = t.sin();
    let s2 = s * s;
    let ps2 = p * s2;

    let f_min = if -1.0 < c && c < 0.0 && ps2 <= 2.0 * c.abs() * (1.0 - c) {
        s2 * (4.0 * c + p * p * s2) / (8.0 * c * (1.0 - c))
    } else {
        0.5 * (1.0 + c * c - ps2)
    };
    let f_max = if 0.0 < c && c < 1.0 && ps2 <= 2.0 * c * (1.0 - c) {
        s2 * (4.0 * c + p * p * s2) / (8.0 * c * (1.0 - c))
    } else {
        0.5 * (1.0 + c * c + ps2)
    };
    let nu2_squared = 0.5 * (1.0 + c * c + p * p * s2);
    let nu_inf = 0.5 * (1.0 + c.abs().max((c * c + ps2).abs()));
    PaperMeasures {
        f_min,
        f_max,
        nu2_squared,
        nu_inf,
    }
}

/// Concurrence along the decay family:
/// `max(0, exp(-t) (1 - sqrt((1-p)(1+p)) sinh t))`.
pub fn concurrence_exp(p: f64, t: f64) -> f64 {
    let root = ((1.0 - p) * (1.0 + p)).max(0.0).sqrt();
    ((-t).exp() * (1.0 - root * t.sinh())).max(0.0)
}

/// Concurrence along the oscillatory family:
/// `max(0, 2 |cos t| - sqrt((1-p)(1+p)) sin^2 t) / 2`.
pub fn concurrence_osc(p: f64, t: f64) -> f64 {
    let root = ((1.0 - p) * (1.0 + p)).max(0.0).sqrt();
    let s = t.sin();
    0.5 * (2.0 * t.cos().abs() - root * s * s).max(0.0)
}

fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    // Invariant: f(lo) > 0 >= f(hi).
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Time at which the decay family's concurrence reaches zero, found by
/// bisection. `None` for `p = 1`, where the concurrence stays `exp(-t) > 0`
/// forever.
pub fn concurrence_death_time_exp(p: f64) -> Result<Option<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    if p == 1.0 {
        return Ok(None);
    }
    let root = ((1.0 - p) * (1.0 + p)).sqrt();
    let vanishing = move |t: f64| 1.0 - root * t.sinh();
    let mut hi = 1.0;
    while vanishing(hi) > 0.0 && hi < 64.0 {
        hi *= 2.0;
    }
    Ok(Some(bisect_root(vanishing, 0.0, hi, 200)))
}

/// The interval around `t = pi/2` on which the oscillatory family's
/// concurrence vanishes, found by bisection on `[0, pi/2]` and reflected
/// to the symmetric right edge. `None` for `p = 1`, where the concurrence
/// `|cos t|` only touches zero at isolated points.
pub fn concurrence_death_interval_osc(p: f64) -> Result<Option<(f64, f64)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    if p == 1.0 {
        return Ok(None);
    }
    let root = ((1.0 - p) * (1.0 + p)).sqrt();
    let vanishing = move |t: f64| {
        let s = t.sin();
        2.0 * t.cos() - root * s * s
    };
    let left = bisect_root(vanishing, 0.0, std::f64::consts::FRAC_PI_2, 200);
    Ok(Some((left, std::f64::consts::PI - left)))
}

/// One trajectory row: closed-form measures next to the family's own
/// piecewise forms. Field order is the serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    #[serde(skip)]
    pub params: ChannelParams,
    pub t: f64,
    pub p: f64,
    pub f_min: f64,
    pub f_max: f64,
    pub nu2_squared: f64,
    pub nu_inf_paper: f64,
    pub nu_inf_bloch: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub f_min_paper: f64,
    pub f_max_paper: f64,
    pub nu2_squared_paper: f64,
    pub nu_inf_trajectory_paper: f64,
}

/// Evaluates every measure along one family at the given times.
pub fn run_trajectory(family: &TrajectoryFamily, times: &[f64]) -> Result<Vec<TrajectorySample>> {
    times
        .iter()
        .map(|&t| {
            let params = family.sample(t);
            let report = measure_report(&params)?;
            let paper = family.paper_measures(t);
            Ok(TrajectorySample {
                params,
                t,
                p: family.p,
                f_min: report.f_min.value,
                f_max: report.f_max.value,
                nu2_squared: report.nu2_squared.value,
                nu_inf_paper: report.nu_inf_paper,
                nu_inf_bloch: report.nu_inf_bloch,
                concurrence: report.concurrence,
                eof: report.eof,
                f_min_paper: paper.f_min,
                f_max_paper: paper.f_max,
                nu2_squared_paper: paper.nu2_squared,
                nu_inf_trajectory_paper: paper.nu_inf,
            })
        })
        .collect()
}

/// Rows where a closed form and the matching piecewise trajectory form
/// disagree beyond `1e-9`. Expected to fire for `f_min` at odd multiples
/// of pi along the oscillatory family, where the literal piecewise form
/// keeps its endpoint value 1 while the closed form reaches 0.
pub fn consistency_flags(samples: &[TrajectorySample]) -> Vec<String> {
    let mut flags = Vec::new();
    for sample in samples {
        for (name, closed, piecewise) in [
            ("f_min", sample.f_min, sample.f_min_paper),
            ("f_max", sample.f_max, sample.f_max_paper),
            ("nu2_squared", sample.nu2_squared, sample.nu2_squared_paper),
            (
                "nu_inf_paper",
                sample.nu_inf_paper,
                sample.nu_inf_trajectory_paper,
            ),
        ] {
            let gap = (closed - piecewise).abs();
            if gap > 1e-9 {
                flags.push(format!(
                    "t={:.12e} p={}: {name}={:.12e} but trajectory form gives {:.12e} (gap {:.3e})",
                    sample.t, sample.p, closed, piecewise, gap
                ));
            }
        }
    }
    flags
}

/// `count` evenly spaced points from `start` to `stop` inclusive, computed
/// in ratio form so the endpoints are hit exactly.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|i| start + (stop - start) * (i as f64) / ((n - 1) as f64))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{f_min_closed, Branch};

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    fn family(kind: FamilyKind, p: f64) -> TrajectoryFamily {
        TrajectoryFamily::new(kind, p, Sign::Plus).unwrap()
    }

    #[test]
    fn linspace_hits_endpoints_and_midpoint_exactly() {
        let times = linspace(0.0, 4.0, 401);
        assert_eq!(times.len(), 401);
        assert_eq!(times[0], 0.0);
        assert_eq!(times[400], 4.0);

        let circle = linspace(0.0, TWO_PI, 629);
        assert_eq!(circle[314], std::f64::consts::PI);
        assert_eq!(circle[314].cos(), -1.0);
        assert_eq!(circle[157], std::f64::consts::FRAC_PI_2);

        assert!(linspace(1.0, 2.0, 0).is_empty());
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn families_stay_completely_positive() {
        for p in DEFAULT_P_VALUES {
            for sign in [Sign::Plus, Sign::Minus] {
                let exp = TrajectoryFamily::new(FamilyKind::Exp, p, sign).unwrap();
                for t in linspace(0.0, 4.0, 81) {
                    assert!(exp.sample(t).validate_cp().valid, "exp p={p} t={t}");
                }
                let osc = TrajectoryFamily::new(FamilyKind::Osc, p, sign).unwrap();
                for t in linspace(0.0, TWO_PI, 157) {
                    assert!(osc.sample(t).validate_cp().valid, "osc p={p} t={t}");
                }
            }
        }
    }

    #[test]
    fn family_rejects_out_of_range_p() {
        assert!(matches!(
            TrajectoryFamily::new(FamilyKind::Exp, 1.5, Sign::Plus),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            TrajectoryFamily::new(FamilyKind::Osc, -0.1, Sign::Plus),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn decay_forms_match_closed_forms_on_grid() {
        for p in linspace(0.0, 1.0, 21) {
            let fam = family(FamilyKind::Exp, p);
            for t in linspace(0.0, 4.0, 401) {
                let report = measure_report(&fam.sample(t)).unwrap();
                let paper = paper_formulas_exp(p, t);
                assert!(
                    (report.f_min.value - paper.f_min).abs() < 1e-9,
                    "f_min p={p} t={t}"
                );
                assert!(
                    (report.f_max.value - paper.f_max).abs() < 1e-9,
                    "f_max p={p} t={t}"
                );
                assert!(
                    (report.nu2_squared.value - paper.nu2_squared).abs() < 1e-9,
                    "nu2 p={p} t={t}"
                );
                assert!(
                    (report.nu_inf_paper - paper.nu_inf).abs() < 1e-9,
                    "nu_inf p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn oscillation_forms_match_closed_forms_off_degenerate_points() {
        for p in linspace(0.0, 1.0, 21) {
            let fam = family(FamilyKind::Osc, p);
            for t in linspace(0.0, TWO_PI, 629) {
                let params = fam.sample(t);
                let report = measure_report(&params).unwrap();
                let paper = paper_formulas_osc(p, t);
                let degenerate_minimum = params.lambda1 < 0.0 && t.sin().abs() < 1e-9;
                if degenerate_minimum {
                    // Literal evaluation keeps the endpoint value 1 here
                    // while the closed form reaches the true value 0.
                    assert!((report.f_min.value - paper.f_min).abs() > 0.5);
                } else {
                    assert!(
                        (report.f_min.value - paper.f_min).abs() < 1e-9,
                        "f_min p={p} t={t}"
                    );
                }
                assert!(
                    (report.f_max.value - paper.f_max).abs() < 1e-9,
                    "f_max p={p} t={t}"
                );
                assert!(
                    (report.nu2_squared.value - paper.nu2_squared).abs() < 1e-9,
                    "nu2 p={p} t={t}"
                );
                assert!(
                    (report.nu_inf_paper - paper.nu_inf).abs() < 1e-9,
                    "nu_inf p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn decay_measures_at_zero_are_exactly_one() {
        let paper = paper_formulas_exp(0.7, 0.0);
        assert_eq!(
            (paper.f_min, paper.f_max, paper.nu2_squared, paper.nu_inf),
            (1.0, 1.0, 1.0, 1.0)
        );
        let report = measure_report(&family(FamilyKind::Exp, 0.7).sample(0.0)).unwrap();
        assert_eq!(report.f_min.value, 1.0);
        assert_eq!(report.f_max.value, 1.0);
        assert_eq!(report.nu2_squared.value, 1.0);
    }

    #[test]
    fn full_non_unitality_keeps_maximal_measures_at_one() {
        let fam = family(FamilyKind::Exp, 1.0);
        for t in linspace(0.0, 4.0, 101) {
            let report = measure_report(&fam.sample(t)).unwrap();
            assert!((report.f_max.value - 1.0).abs() < 1e-12, "t={t}");
            assert!((report.nu2_squared.value - 1.0).abs() < 1e-12, "t={t}");
            assert!((report.nu_inf_bloch - 1.0).abs() < 1e-12, "t={t}");
            assert!((report.nu_inf_paper - 1.0).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn oscillation_frozen_interior_minimum() {
        let t = 2.0 * std::f64::consts::FRAC_PI_3;
        let params = family(FamilyKind::Osc, 0.0).sample(t);
        assert!((params.lambda1 + 0.5).abs() < 1e-15);
        assert!((params.lambda3 - 0.25).abs() < 1e-15);
        let extremum = f_min_closed(&params).unwrap();
        assert_eq!(extremum.branch, Branch::Interior);
        assert!((extremum.value - 0.25).abs() < 1e-14);
        assert!((paper_formulas_osc(0.0, t).f_min - 0.25).abs() < 1e-14);
    }

    #[test]
    fn oscillation_frozen_quarter_period() {
        let t = std::f64::consts::FRAC_PI_2;
        let report = measure_report(&family(FamilyKind::Osc, 0.0).sample(t)).unwrap();
        assert!((report.f_min.value - 0.5).abs() < 1e-15);
        assert!((report.nu_inf_paper - 0.5).abs() < 1e-15);
        assert!((report.nu_inf_bloch - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelities_repeat_each_turn_and_norms_each_half_turn() {
        for p in [0.0, 0.5, 1.0] {
            for t in linspace(0.05, 3.0, 40) {
                let now = paper_formulas_osc(p, t);
                let full_turn = paper_formulas_osc(p, t + TWO_PI);
                assert!((now.f_min - full_turn.f_min).abs() < 1e-12);
                assert!((now.f_max - full_turn.f_max).abs() < 1e-12);

                let half_turn = paper_formulas_osc(p, t + std::f64::consts::PI);
                assert!((now.nu2_squared - half_turn.nu2_squared).abs() < 1e-12);
                assert!((now.nu_inf - half_turn.nu_inf).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn concurrence_formulas_match_closed_route() {
        for p in DEFAULT_P_VALUES {
            let exp_fam = family(FamilyKind::Exp, p);
            for t in linspace(0.0, 4.0, 161) {
                let closed = measure_report(&exp_fam.sample(t)).unwrap().concurrence;
                assert!(
                    (closed - concurrence_exp(p, t)).abs() < 1e-12,
                    "exp p={p} t={t}"
                );
            }
            // At p = 1 the oscillating family sits on the boundary where
            // (1 - lambda3)^2 - lambda_star^2 cancels to rounding noise, so the
            // closed route carries a sqrt-of-noise wobble of order 1e-8 there.
            let osc_tol = if p == 1.0 { 5e-8 } else { 1e-12 };
            let osc_fam = family(FamilyKind::Osc, p);
            for t in linspace(0.0, TWO_PI, 157) {
                let closed = measure_report(&osc_fam.sample(t)).unwrap().concurrence;
                assert!(
                    (closed - concurrence_osc(p, t)).abs() < osc_tol,
                    "osc p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn oscillation_at_full_mixing_keeps_cosine_concurrence() {
        for t in linspace(0.0, TWO_PI, 157) {
            assert!((concurrence_osc(1.0, t) - t.cos().abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn decay_death_time_is_the_known_constant() {
        let death = concurrence_death_time_exp(0.0).unwrap().unwrap();
        assert!((death - 0.881373587019543).abs() < 1e-12);
        assert!(concurrence_exp(0.0, death - 1e-6) > 0.0);
        assert_eq!(concurrence_exp(0.0, death + 1e-6), 0.0);
        // Larger p postpones the death.
        let later = concurrence_death_time_exp(0.5).unwrap().unwrap();
        assert!(later > death);
        assert_eq!(concurrence_death_time_exp(1.0).unwrap(), None);
        assert!(matches!(
            concurrence_death_time_exp(1.5),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn oscillation_death_intervals_shrink_with_p() {
        let mut last_length = f64::INFINITY;
        for p in [0.0, 0.3, 0.5, 0.7] {
            let (lo, hi) = concurrence_death_interval_osc(p).unwrap().unwrap();
            assert!(lo < std::f64::consts::FRAC_PI_2 && std::f64::consts::FRAC_PI_2 < hi);
            assert!(concurrence_osc(p, lo - 1e-6) > 0.0);
            assert_eq!(concurrence_osc(p, 0.5 * (lo + hi)), 0.0);
            let length = hi - lo;
            assert!(length < last_length);
            last_length = length;
        }
        assert_eq!(concurrence_death_interval_osc(1.0).unwrap(), None);
    }

    #[test]
    fn measures_order_strictly_with_p_along_decay() {
        let ps = [0.0, 0.5, 0.7, 1.0];
        for t in linspace(0.1, 4.0, 40) {
            let rows: Vec<_> = ps
                .iter()
                .map(|&p| measure_report(&family(FamilyKind::Exp, p).sample(t)).unwrap())
                .collect();
            for w in rows.windows(2) {
                assert!(w[1].f_max.value > w[0].f_max.value);
                assert!(w[1].nu2_squared.value > w[0].nu2_squared.value);
                assert!(w[1].nu_inf_bloch > w[0].nu_inf_bloch);
                assert!(w[1].nu_inf_paper > w[0].nu_inf_paper);
                assert!(w[1].f_min.value < w[0].f_min.value);
                assert!(w[1].concurrence >= w[0].concurrence);
                if w[1].concurrence > 0.0 {
                    assert!(w[1].concurrence > w[0].concurrence);
                }
            }
        }
    }

    #[test]
    fn trajectory_rows_carry_consistent_fields() {
        let fam = family(FamilyKind::Exp, 0.5);
        let times = linspace(0.0, 2.0, 21);
        let samples = run_trajectory(&fam, &times).unwrap();
        assert_eq!(samples.len(), 21);
        for (sample, &t) in samples.iter().zip(&times) {
            assert_eq!(sample.t, t);
            assert_eq!(sample.p, 0.5);
            assert!(sample.nu_inf_bloch >= sample.nu_inf_paper - 1e-15);
            assert!(sample.f_min <= sample.f_max);
        }
        assert!(consistency_flags(&samples).is_empty());
    }

    #[test]
    fn consistency_flags_catch_the_degenerate_minimum() {
        let fam = family(FamilyKind::Osc, 0.3);
        let samples = run_trajectory(&fam, &linspace(0.0, TWO_PI, 629)).unwrap();
        let flags = consistency_flags(&samples);
        assert_eq!(flags.len(), 1);
        assert!(flags[0].contains("f_min"));
    }

    #[test]
    fn sign_choice_never_changes_measures() {
        for kind in [FamilyKind::Exp, FamilyKind::Osc] {
            let plus = TrajectoryFamily::new(kind, 0.7, Sign::Plus).unwrap();
            let minus = TrajectoryFamily::new(kind, 0.7, Sign::Minus).unwrap();
            for t in linspace(0.0, 4.0, 41) {
                let a = measure_report(&plus.sample(t)).unwrap();
                let b = measure_report(&minus.sample(t)).unwrap();
                assert_eq!(a.f_min.value, b.f_min.value);
                assert_eq!(a.f_max.value, b.f_max.value);
                assert_eq!(a.nu2_squared.value, b.nu2_squared.value);
                assert_eq!(a.nu_inf_paper, b.nu_inf_paper);
                assert_eq!(a.concurrence, b.concurrence);
            }
        }
    }

    #[test]
    fn serialized_rows_use_the_column_names() {
        let fam = family(FamilyKind::Exp, 0.3);
        let sample = run_trajectory(&fam, &[1.0]).unwrap()[0];
        let value = serde_json::to_value(sample).unwrap();
        let object = value.as_object().unwrap();
        let expected = [
            "t",
            "p",
            "f_min",
            "f_max",
            "nu2_squared",
            "nu_inf_paper",
            "nu_inf_bloch",
            "concurrence",
            "eof",
            "f_min_paper",
            "f_max_paper",
            "nu2_squared_paper",
            "nu_inf_trajectory_paper",
        ];
        assert_eq!(object.len(), expected.len());
        for key in expected {
            assert!(object.contains_key(key), "missing column {key}");
        }
        assert!(!object.contains_key("params"));
    }
}
