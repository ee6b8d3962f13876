//! Evolution paths inside the solid rotation ball.
//!
//! A driven maximally entangled state sweeps a continuous path in the
//! covering group while its projection into the ball is only piecewise
//! continuous: whenever the rotation angle passes through pi the projected
//! point leaves the surface and re-enters at the antipode. Those events are
//! the breaks. For commensurate drives the path closes, and the overall sign
//! picked up by the state equals `(-1)^breaks`; this module checks that
//! parity rule.
//!
//! Sheet bookkeeping is delegated to [`mes::axis_angle_from_su2`], so break
//! detection reduces to counting sheet-sign flips between consecutive
//! samples, each localized afterwards by bisection on `Re(alpha)`.

use num_complex::Complex64;

use crate::dynamics::{self, FieldConfig};
use crate::mes::{self, BallPoint, MesState};
use crate::qmath;
use crate::{Error, Result};

/// Default sample count for one half-period trace.
pub const DEFAULT_STEPS: usize = 4096;

/// Refinement ceiling for break-count validation.
pub const MAX_REFINEMENT_STEPS: usize = 1 << 20;

/// Modulus/phase tolerance for classifying the closure overlap.
pub const CLOSURE_TOL: f64 = 1e-6;

/// Bisection width (in time) used to localize a break.
const BISECTION_TOL: f64 = 1e-10;

/// Stored angles below this are treated as sitting at the ball center, where
/// the axis is carried over from the previous sample for continuity.
const CENTER_ANGLE_TOL: f64 = 2e-9;

/// Which evolution is projected into the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionMode {
    /// Only the first qubit is driven: the propagator itself.
    Single,
    /// Both qubits are driven through the same field.
    Dual,
}

/// One sampled instant of an evolution.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub point: BallPoint,
    pub mes: MesState,
}

/// A localized surface break: the path exits the ball at `exit` and re-enters
/// at the antipodal `reentry`, somewhere inside the sampling bracket.
#[derive(Debug, Clone, Copy)]
pub struct BreakEvent {
    /// Sample times enclosing the break.
    pub bracket: (f64, f64),
    /// Bisected crossing time.
    pub t_cross: f64,
    /// Surface point on the sheet the path came from.
    pub exit: [f64; 3],
    /// Antipodal surface point on the sheet the path continues on.
    pub reentry: [f64; 3],
}

/// A sampled evolution path with its break events and closure data.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub cfg: FieldConfig,
    pub mode: EvolutionMode,
    pub t_max: f64,
    pub n_steps: usize,
    pub samples: Vec<TrajectorySample>,
    pub breaks: Vec<BreakEvent>,
    /// Overlap of the final two-qubit state with the initial one.
    pub end_overlap: Complex64,
}

/// Classified closure overlap of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosurePhase {
    Plus,
    Minus,
    Open,
}

impl ClosurePhase {
    /// `+1` or `-1` for closed trajectories, `None` for open ones.
    pub fn sign(&self) -> Option<i32> {
        match self {
            ClosurePhase::Plus => Some(1),
            ClosurePhase::Minus => Some(-1),
            ClosurePhase::Open => None,
        }
    }
}

impl std::fmt::Display for ClosurePhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosurePhase::Plus => "+1",
            ClosurePhase::Minus => "-1",
            ClosurePhase::Open => "open",
        })
    }
}

/// The evolved state at time `t` for the chosen mode.
pub fn mes_at(cfg: &FieldConfig, mode: EvolutionMode, t: f64) -> Result<MesState> {
    match mode {
        EvolutionMode::Single => dynamics::propagator(cfg, t),
        EvolutionMode::Dual => {
            let state = dynamics::dual_evolution(cfg, t)?;
            mes::from_two_qubit(&state).map_err(|e| Error::InternalConsistency {
                reason: format!("dual evolution left the maximally entangled manifold: {e}"),
            })
        }
    }
}

/// Samples an evolution at `n_steps + 1` uniform times in `[0, t_max]`,
/// detecting and localizing every surface break.
///
/// `t_max = 0` produces the single center sample. Axis continuity near the
/// ball center is kept by carrying the previous sample's axis wherever the
/// angle is numerically zero.
pub fn trace(
    cfg: &FieldConfig,
    mode: EvolutionMode,
    t_max: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    if !t_max.is_finite() || t_max < 0.0 {
        return Err(Error::InvalidArgument {
            reason: "t_max must be finite and >= 0".into(),
        });
    }
    if t_max > 0.0 && n_steps < 100 {
        return Err(Error::InvalidArgument {
            reason: "need at least 100 steps".into(),
        });
    }

    let count = if t_max == 0.0 { 0 } else { n_steps };
    let mut samples = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let t = if count == 0 {
            0.0
        } else {
            t_max * i as f64 / count as f64
        };
        let state = mes_at(cfg, mode, t)?;
        let mut point = mes::axis_angle_from_su2(&state);
        if point.angle < CENTER_ANGLE_TOL {
            if let Some(prev) = samples.last() {
                let prev: &TrajectorySample = prev;
                point.axis = prev.point.axis;
            }
        }
        samples.push(TrajectorySample {
            t,
            point,
            mes: state,
        });
    }

    let mut breaks = Vec::new();
    for i in 1..samples.len() {
        if samples[i].point.sheet != samples[i - 1].point.sheet {
            breaks.push(locate_break(
                cfg,
                mode,
                samples[i - 1].t,
                samples[i].t,
                samples[i - 1].point.sheet,
            )?);
        }
    }

    let initial = mes::to_two_qubit(&samples[0].mes);
    let last = mes::to_two_qubit(&samples[samples.len() - 1].mes);
    let end_overlap = qmath::overlap(&initial, &last);

    Ok(Trajectory {
        cfg: *cfg,
        mode,
        t_max,
        n_steps,
        samples,
        breaks,
        end_overlap,
    })
}

/// Bisects `Re(alpha)` to localize the surface crossing inside a bracket and
/// records the two antipodal surface representatives.
fn locate_break(
    cfg: &FieldConfig,
    mode: EvolutionMode,
    t_lo: f64,
    t_hi: f64,
    sheet_lo: i8,
) -> Result<BreakEvent> {
    let re_alpha = |t: f64| -> Result<f64> { Ok(mes_at(cfg, mode, t)?.alpha().re) };
    // sheet = +1 corresponds to Re(alpha) >= 0.
    let lo_positive = re_alpha(t_lo)? >= 0.0;
    let (mut lo, mut hi) = (t_lo, t_hi);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if (re_alpha(mid)? >= 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_cross = 0.5 * (lo + hi);
    let state = mes_at(cfg, mode, t_cross)?;

    // At the crossing Re(alpha) ~ 0, so the raw angle sits at pi and the raw
    // axis is well defined; the two sheets hold the antipodal representatives.
    let alpha = state.alpha();
    let beta = state.beta();
    let sin_half = (alpha.im * alpha.im + beta.norm_sqr()).sqrt();
    let raw_angle = 2.0 * sin_half.atan2(alpha.re);
    let axis = [
        -beta.im / sin_half,
        -beta.re / sin_half,
        -alpha.im / sin_half,
    ];
    let plus_rep = [
        raw_angle * axis[0],
        raw_angle * axis[1],
        raw_angle * axis[2],
    ];
    let folded = 2.0 * std::f64::consts::PI - raw_angle;
    let minus_rep = [-folded * axis[0], -folded * axis[1], -folded * axis[2]];

    let (exit, reentry) = if sheet_lo == 1 {
        (plus_rep, minus_rep)
    } else {
        (minus_rep, plus_rep)
    };
    Ok(BreakEvent {
        bracket: (t_lo, t_hi),
        t_cross,
        exit,
        reentry,
    })
}

/// The number of surface breaks, validated by re-tracing at doubled
/// resolution until two consecutive counts agree.
///
/// Fails with [`Error::InsufficientResolution`] if the count has not
/// stabilized by [`MAX_REFINEMENT_STEPS`] steps.
pub fn count_breaks(traj: &Trajectory) -> Result<usize> {
    if traj.samples.len() <= 1 {
        return Ok(0);
    }
    let mut steps = traj.n_steps;
    let mut previous = traj.breaks.len();
    let mut count = previous;
    while steps * 2 <= MAX_REFINEMENT_STEPS {
        steps *= 2;
        let refined = trace(&traj.cfg, traj.mode, traj.t_max, steps)?;
        if refined.breaks.len() == count {
            return Ok(count);
        }
        previous = count;
        count = refined.breaks.len();
    }
    Err(Error::InsufficientResolution {
        coarse: previous,
        fine: count,
        steps,
    })
}

/// Classifies the end overlap as `+1`, `-1` or open.
///
/// An overlap of unit modulus at any other phase means the path closed in
/// the ball without closing in the state, which signals parameter drift and
/// is reported as [`Error::NonCommensurateClosure`].
pub fn closure_phase(traj: &Trajectory) -> Result<ClosurePhase> {
    let ov = traj.end_overlap;
    if ov.norm() < 1.0 - CLOSURE_TOL {
        Ok(ClosurePhase::Open)
    } else if (ov - Complex64::ONE).norm() <= CLOSURE_TOL {
        Ok(ClosurePhase::Plus)
    } else if (ov + Complex64::ONE).norm() <= CLOSURE_TOL {
        Ok(ClosurePhase::Minus)
    } else {
        Err(Error::NonCommensurateClosure { overlap: ov })
    }
}

/// Checks the parity rule `closure phase = (-1)^breaks` for a closed
/// trajectory.
pub fn parity_theorem_check(traj: &Trajectory) -> Result<bool> {
    let sign = closure_phase(traj)?.sign().ok_or(Error::OpenTrajectory)?;
    let breaks = count_breaks(traj)?;
    let expected = if breaks % 2 == 0 { 1 } else { -1 };
    Ok(sign == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::omega_zero;
    use crate::qmath::concurrence;
    use std::f64::consts::PI;

    fn first_resonance() -> FieldConfig {
        FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.0).unwrap()
    }

    fn second_resonance() -> FieldConfig {
        FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.5).unwrap()
    }

    /// Independent break-count oracle: `Re(alpha)` of the evolved state has
    /// the closed form `cos(w t) cos(2 w0 t) + x sin(w t) sin(2 w0 t)` in
    /// dual mode (halved arguments in single mode), so breaks are its sign
    /// changes. Counted on a fine grid, far finer than any spacing of the
    /// roots for the ratios used here.
    fn oracle_break_count(cfg: &FieldConfig, mode: EvolutionMode, t_max: f64) -> usize {
        let w0 = omega_zero(cfg);
        let x = (cfg.hbar * cfg.omega - 2.0 * cfg.b * cfg.theta.cos()) / (2.0 * cfg.hbar * w0);
        let re_alpha = |t: f64| match mode {
            EvolutionMode::Dual => {
                (cfg.omega * t).cos() * (2.0 * w0 * t).cos()
                    + x * (cfg.omega * t).sin() * (2.0 * w0 * t).sin()
            }
            EvolutionMode::Single => {
                (0.5 * cfg.omega * t).cos() * (w0 * t).cos()
                    + x * (0.5 * cfg.omega * t).sin() * (w0 * t).sin()
            }
        };
        let n = 200_000;
        let mut flips = 0;
        let mut last = re_alpha(0.0) >= 0.0;
        for i in 1..=n {
            let now = re_alpha(t_max * i as f64 / n as f64) >= 0.0;
            if now != last {
                flips += 1;
            }
            last = now;
        }
        flips
    }

    #[test]
    fn zero_time_trace_is_a_center_sample() {
        let traj = trace(&first_resonance(), EvolutionMode::Dual, 0.0, DEFAULT_STEPS).unwrap();
        assert_eq!(traj.samples.len(), 1);
        assert_eq!(count_breaks(&traj).unwrap(), 0);
        assert_eq!(closure_phase(&traj).unwrap(), ClosurePhase::Plus);
        assert!(traj.samples[0].point.angle < 1e-12);
    }

    #[test]
    fn first_resonance_breaks_three_times_with_sign_flip() {
        let traj = trace(&first_resonance(), EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
        assert_eq!(count_breaks(&traj).unwrap(), 3);
        assert_eq!(closure_phase(&traj).unwrap(), ClosurePhase::Minus);
        assert!(parity_theorem_check(&traj).unwrap());
        assert_eq!(
            oracle_break_count(&first_resonance(), EvolutionMode::Dual, PI),
            3
        );
    }

    #[test]
    fn half_integer_resonance_closes_without_sign_flip() {
        let traj = trace(&second_resonance(), EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
        let breaks = count_breaks(&traj).unwrap();
        assert_eq!(breaks % 2, 0);
        assert_eq!(breaks, 4);
        assert_eq!(closure_phase(&traj).unwrap(), ClosurePhase::Plus);
        assert!(parity_theorem_check(&traj).unwrap());
        assert_eq!(
            oracle_break_count(&second_resonance(), EvolutionMode::Dual, PI),
            4
        );
    }

    #[test]
    fn truncated_trajectory_is_open() {
        let traj = trace(
            &first_resonance(),
            EvolutionMode::Dual,
            PI / 2.0,
            DEFAULT_STEPS,
        )
        .unwrap();
        assert_eq!(closure_phase(&traj).unwrap(), ClosurePhase::Open);
        assert!(matches!(
            parity_theorem_check(&traj).unwrap_err(),
            Error::OpenTrajectory
        ));
    }

    #[test]
    fn single_mode_full_cycle_closes_at_minus_one() {
        let traj = trace(
            &first_resonance(),
            EvolutionMode::Single,
            2.0 * PI,
            DEFAULT_STEPS,
        )
        .unwrap();
        assert_eq!(closure_phase(&traj).unwrap(), ClosurePhase::Minus);
        let breaks = count_breaks(&traj).unwrap();
        assert_eq!(breaks % 2, 1);
        assert!(parity_theorem_check(&traj).unwrap());
        assert_eq!(
            breaks,
            oracle_break_count(&first_resonance(), EvolutionMode::Single, 2.0 * PI)
        );
    }

    #[test]
    fn break_counts_match_the_sign_change_oracle_across_ratios() {
        for ratio in [1.0, 1.5, 2.0, 2.5, 3.0] {
            for theta in [PI / 8.0, PI / 5.0, PI / 3.0] {
                let cfg = FieldConfig::for_ratio(theta, 1.0, 1.0, ratio).unwrap();
                let traj = trace(&cfg, EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
                assert_eq!(
                    count_breaks(&traj).unwrap(),
                    oracle_break_count(&cfg, EvolutionMode::Dual, PI),
                    "ratio {ratio} theta {theta}"
                );
                assert!(parity_theorem_check(&traj).unwrap());
            }
        }
    }

    #[test]
    fn breaks_exit_and_reenter_at_antipodes_on_the_surface() {
        let traj = trace(&first_resonance(), EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
        assert_eq!(traj.breaks.len(), 3);
        for event in &traj.breaks {
            let radius = |p: &[f64; 3]| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((radius(&event.exit) - PI).abs() < 1e-6);
            assert!((radius(&event.reentry) - PI).abs() < 1e-6);
            for i in 0..3 {
                assert!((event.exit[i] + event.reentry[i]).abs() < 1e-6);
            }
            assert!(event.bracket.0 <= event.t_cross && event.t_cross <= event.bracket.1);
        }
    }

    #[test]
    fn sheet_flips_happen_only_near_the_surface() {
        let traj = trace(&second_resonance(), EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
        let dt = PI / DEFAULT_STEPS as f64;
        let max_speed = traj
            .samples
            .windows(2)
            .map(|w| (w[1].point.angle - w[0].point.angle).abs() / dt)
            .fold(0.0_f64, f64::max);
        let bound = 10.0 * dt * max_speed;
        for i in 1..traj.samples.len() {
            if traj.samples[i].point.sheet != traj.samples[i - 1].point.sheet {
                assert!(traj.samples[i - 1].point.angle > PI - bound);
                assert!(traj.samples[i].point.angle > PI - bound);
            }
        }
    }

    #[test]
    fn path_refines_continuously_between_breaks() {
        // Away from break brackets the largest step-to-step distance should
        // roughly halve when the resolution doubles.
        let coarse = trace(&first_resonance(), EvolutionMode::Dual, PI, 2048).unwrap();
        let fine = trace(&first_resonance(), EvolutionMode::Dual, PI, 4096).unwrap();
        let max_step = |traj: &Trajectory| {
            traj.samples
                .windows(2)
                .filter(|w| w[1].point.sheet == w[0].point.sheet)
                .map(|w| {
                    let a = w[0].point.coords();
                    let b = w[1].point.coords();
                    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
                })
                .fold(0.0_f64, f64::max)
        };
        let ratio = max_step(&fine) / max_step(&coarse);
        assert!(ratio < 0.6, "step ratio {ratio}");
    }

    #[test]
    fn concurrence_is_one_along_the_whole_path() {
        for mode in [EvolutionMode::Single, EvolutionMode::Dual] {
            let traj = trace(&second_resonance(), mode, PI, 512).unwrap();
            for s in &traj.samples {
                assert!((concurrence(&mes::to_two_qubit(&s.mes)) - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn break_count_equals_recorded_sheet_flips() {
        let traj = trace(&second_resonance(), EvolutionMode::Dual, PI, DEFAULT_STEPS).unwrap();
        let flips = traj
            .samples
            .windows(2)
            .filter(|w| w[1].point.sheet != w[0].point.sheet)
            .count();
        assert_eq!(flips, traj.breaks.len());
    }

    #[test]
    fn too_few_steps_are_rejected() {
        let err = trace(&first_resonance(), EvolutionMode::Dual, PI, 50).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument { .. }));
    }
}
