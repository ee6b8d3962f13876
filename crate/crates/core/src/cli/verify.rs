//! The `verify` subcommand's property sweeps.
//!
//! Every check reports the largest observed error against a fixed tolerance;
//! randomized sweeps draw from a seeded stream so identical flags reproduce
//! identical reports. The fault-injection flag zeroes the first tolerance so
//! the harness demonstrably fails when a property does.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{self, FieldConfig};
use crate::mes::{self, MesState};
use crate::optics;
use crate::qmath::{self, C2Matrix};
use crate::trajectory::{self, EvolutionMode};
use crate::Result;

/// One verified property: largest observed error over `cases` trials.
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    pub max_err: f64,
    pub tol: f64,
}

impl PropertyCheck {
    pub fn pass(&self) -> bool {
        self.max_err <= self.tol
    }
}

fn random_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn random_mes(rng: &mut ChaCha8Rng) -> MesState {
    mes::su2_from_axis_angle(random_axis(rng), rng.random_range(0.0..TAU)).unwrap()
}

fn random_su2(rng: &mut ChaCha8Rng) -> C2Matrix {
    random_mes(rng).to_matrix()
}

/// A generic rotating-field configuration, kept away from the degenerate
/// axes.
fn random_config(rng: &mut ChaCha8Rng) -> FieldConfig {
    FieldConfig::new(
        rng.random_range(0.2..3.0),
        rng.random_range(0.15..PI - 0.15),
        rng.random_range(0.5..2.0),
        1.0,
    )
    .unwrap()
}

fn mes_diff(a: &MesState, b: &MesState) -> f64 {
    (a.alpha() - b.alpha())
        .norm()
        .max((a.beta() - b.beta()).norm())
}

pub fn run_suite(seed: u64, quick: bool, inject_fault: bool) -> Result<Vec<PropertyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = |full: usize, reduced: usize| if quick { reduced } else { full };
    let mut checks = Vec::new();

    // Double-valued cover: lifts of (k, pi + a) and (-k, pi - a) are
    // opposite states.
    {
        let cases = scale(500, 100);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let axis = random_axis(&mut rng);
            let angle: f64 = rng.random_range(1e-6..PI - 1e-6);
            let upper = mes::su2_from_axis_angle(axis, PI + angle)?;
            let lower = mes::su2_from_axis_angle([-axis[0], -axis[1], -axis[2]], PI - angle)?;
            let err = (upper.alpha() + lower.alpha())
                .norm()
                .max((upper.beta() + lower.beta()).norm());
            max_err = max_err.max(err);
        }
        checks.push(PropertyCheck {
            name: "double_valued_representation",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // Local unitaries preserve the norm.
    {
        let cases = scale(200, 50);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let u = random_su2(&mut rng);
            let v = random_su2(&mut rng);
            let s = mes::to_two_qubit(&random_mes(&mut rng));
            let out = qmath::apply_local(&u, &v, &s)?;
            max_err = max_err.max((out.norm() - 1.0).abs());
        }
        checks.push(PropertyCheck {
            name: "local_action_preserves_norm",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // (U (x) V) |phi+> = (U V^T (x) I) |phi+>.
    {
        let cases = scale(200, 50);
        let bell = mes::to_two_qubit(&MesState::identity());
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let u = random_su2(&mut rng);
            let v = random_su2(&mut rng);
            let lhs = qmath::apply_local(&u, &v, &bell)?;
            let rhs = qmath::apply_local(&(u * v.transpose()), &C2Matrix::identity(), &bell)?;
            for (a, b) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
                max_err = max_err.max((a - b).norm());
            }
        }
        checks.push(PropertyCheck {
            name: "transpose_transfer_identity",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // Local unitaries preserve the concurrence.
    {
        let cases = scale(200, 50);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let u = random_su2(&mut rng);
            let v = random_su2(&mut rng);
            let s = mes::to_two_qubit(&random_mes(&mut rng));
            let out = qmath::apply_local(&u, &v, &s)?;
            max_err = max_err.max((qmath::concurrence(&out) - qmath::concurrence(&s)).abs());
        }
        checks.push(PropertyCheck {
            name: "local_action_preserves_concurrence",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // from_two_qubit inverts to_two_qubit.
    {
        let cases = scale(200, 50);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let m = random_mes(&mut rng);
            let back = mes::from_two_qubit(&mes::to_two_qubit(&m))?;
            max_err = max_err.max(mes_diff(&m, &back));
        }
        checks.push(PropertyCheck {
            name: "mes_two_qubit_round_trip",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // Axis-angle round trip away from the degenerate center.
    {
        let cases = scale(200, 50);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let axis = random_axis(&mut rng);
            let angle: f64 = rng.random_range(0.01..PI - 0.01);
            let p = mes::axis_angle_from_su2(&mes::su2_from_axis_angle(axis, angle)?);
            let mut err = (p.angle - angle).abs().max((p.sheet as f64 - 1.0).abs());
            for (a, b) in p.axis.iter().zip(axis) {
                err = err.max((a - b).abs());
            }
            max_err = max_err.max(err);
        }
        checks.push(PropertyCheck {
            name: "axis_angle_round_trip",
            cases,
            max_err,
            tol: 1e-10,
        });
    }

    // Exact solutions satisfy the equation of motion (finite differences).
    {
        let configs = scale(10, 3);
        let times = 5;
        let mut max_err = 0.0_f64;
        for _ in 0..configs {
            let cfg = random_config(&mut rng);
            for _ in 0..times {
                let t: f64 = rng.random_range(0.0..10.0);
                max_err = max_err.max(dynamics::schrodinger_residual(&cfg, t, 1e-6)?);
            }
        }
        checks.push(PropertyCheck {
            name: "schrodinger_residual",
            cases: configs * times,
            max_err,
            tol: 1e-6,
        });
    }

    // The solution pair stays orthonormal at all times.
    {
        let configs = scale(5, 2);
        let times = scale(100, 25);
        let mut max_err = 0.0_f64;
        for _ in 0..configs {
            let cfg = random_config(&mut rng);
            let sol = dynamics::exact_solutions(&cfg)?;
            for i in 0..times {
                let t = 10.0 * i as f64 / times as f64;
                let p = sol.psi_plus(t);
                let m = sol.psi_minus(t);
                let pp = p[0].conj() * p[0] + p[1].conj() * p[1];
                let mm = m[0].conj() * m[0] + m[1].conj() * m[1];
                let pm = p[0].conj() * m[0] + p[1].conj() * m[1];
                max_err = max_err
                    .max((pp.re - 1.0).abs())
                    .max((mm.re - 1.0).abs())
                    .max(pm.norm());
            }
        }
        checks.push(PropertyCheck {
            name: "solution_orthonormality",
            cases: configs * times,
            max_err,
            tol: 1e-10,
        });
    }

    // The propagator is special-unitary.
    {
        let cases = scale(100, 25);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let cfg = random_config(&mut rng);
            let t: f64 = rng.random_range(0.0..12.0);
            max_err = max_err.max(dynamics::propagator_matrix(&cfg, t)?.special_unitary_defect());
        }
        checks.push(PropertyCheck {
            name: "propagator_special_unitary",
            cases,
            max_err,
            tol: 1e-10,
        });
    }

    // Constructive propagator vs the analytic closed form.
    {
        let cases = scale(100, 25);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let cfg = random_config(&mut rng);
            let t: f64 = rng.random_range(0.0..12.0);
            let built = dynamics::propagator(&cfg, t)?;
            let closed = dynamics::closed_form_propagator(&cfg, t)?;
            max_err = max_err.max(mes_diff(&built, &closed));
        }
        checks.push(PropertyCheck {
            name: "propagator_closed_form_agreement",
            cases,
            max_err,
            tol: 1e-10,
        });
    }

    // The propagator does not depend on the eigensolution phase convention.
    {
        let cases = scale(50, 10);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let cfg = random_config(&mut rng);
            let t: f64 = rng.random_range(0.0..12.0);
            let sol = dynamics::exact_solutions(&cfg)?;
            let reference = dynamics::propagator_from_solutions(&sol, t);
            let rephased = sol.rephased(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
            let other = dynamics::propagator_from_solutions(&rephased, t);
            max_err = max_err.max(mes_diff(&reference, &other));
        }
        checks.push(PropertyCheck {
            name: "propagator_phase_convention",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // Exact propagator vs Runge-Kutta integration in the lab frame.
    {
        let configs = scale(20, 5);
        let times = scale(10, 3);
        let mut max_err = 0.0_f64;
        for _ in 0..configs {
            let cfg = random_config(&mut rng);
            let period = TAU / cfg.omega;
            for _ in 0..times {
                let t: f64 = rng.random_range(0.1..2.0) * period;
                let steps = (1e4 * t / period).ceil() as usize;
                let numeric = dynamics::rk4_oracle(&cfg, t, steps)?;
                let exact = dynamics::propagator_lab_frame(&cfg, t)?;
                max_err = max_err.max(numeric.max_abs_diff(&exact));
            }
        }
        checks.push(PropertyCheck {
            name: "propagator_rk4_agreement",
            cases: configs * times,
            max_err,
            tol: 1e-8,
        });
    }

    // Resonance solver round trip.
    {
        let ratios = [0.5, 1.0, 1.5, 2.0, 2.5];
        let thetas = [PI / 8.0, PI / 5.0, PI / 3.0];
        let mut max_err = 0.0_f64;
        for &ratio in &ratios {
            for &theta in &thetas {
                let b = dynamics::solve_field_for_ratio(theta, 1.0, 1.0, ratio)?;
                let cfg = FieldConfig::with_defaults(b, theta)?;
                max_err = max_err.max((dynamics::omega_zero(&cfg) - ratio).abs());
            }
        }
        checks.push(PropertyCheck {
            name: "resonance_solver_round_trip",
            cases: ratios.len() * thetas.len(),
            max_err,
            tol: 1e-9,
        });
    }

    // The doubly driven state never leaves the maximally entangled manifold.
    {
        let configs = scale(5, 2);
        let times = scale(50, 15);
        let mut max_err = 0.0_f64;
        for _ in 0..configs {
            let cfg = random_config(&mut rng);
            for i in 0..times {
                let t = PI * i as f64 / times as f64;
                let s = dynamics::dual_evolution(&cfg, t)?;
                mes::from_two_qubit(&s)?;
                max_err = max_err.max((qmath::concurrence(&s) - 1.0).abs());
            }
        }
        checks.push(PropertyCheck {
            name: "dual_evolution_stays_entangled",
            cases: configs * times,
            max_err,
            tol: 1e-9,
        });
    }

    // Resonant closed trajectories: break antipodality and sample concurrence.
    {
        let mut antipodal_err = 0.0_f64;
        let mut concurrence_err = 0.0_f64;
        let mut events = 0;
        let mut samples = 0;
        for ratio in [1.0, 1.5] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, ratio)?;
            let traj = trajectory::trace(
                &cfg,
                EvolutionMode::Dual,
                PI,
                scale(trajectory::DEFAULT_STEPS, 1024),
            )?;
            for event in &traj.breaks {
                events += 1;
                for i in 0..3 {
                    antipodal_err = antipodal_err.max((event.exit[i] + event.reentry[i]).abs());
                }
            }
            for s in &traj.samples {
                samples += 1;
                concurrence_err = concurrence_err
                    .max((qmath::concurrence(&mes::to_two_qubit(&s.mes)) - 1.0).abs());
            }
        }
        checks.push(PropertyCheck {
            name: "break_antipodality",
            cases: events,
            max_err: antipodal_err,
            tol: 1e-6,
        });
        checks.push(PropertyCheck {
            name: "trajectory_concurrence",
            cases: samples,
            max_err: concurrence_err,
            tol: 1e-10,
        });
    }

    // Parity rule: closure phase equals (-1)^breaks across the sweep.
    {
        let ratios: &[f64] = if quick {
            &[1.0, 1.5, 2.0]
        } else {
            &[1.0, 1.5, 2.0, 2.5, 3.0]
        };
        let thetas: &[f64] = if quick {
            &[PI / 8.0, PI / 5.0]
        } else {
            &[PI / 8.0, PI / 5.0, PI / 3.0]
        };
        let mut failures = 0usize;
        for &ratio in ratios {
            for &theta in thetas {
                let cfg = FieldConfig::for_ratio(theta, 1.0, 1.0, ratio)?;
                let traj = trajectory::trace(
                    &cfg,
                    EvolutionMode::Dual,
                    PI,
                    scale(trajectory::DEFAULT_STEPS, 1024),
                )?;
                if !trajectory::parity_theorem_check(&traj)? {
                    failures += 1;
                }
            }
        }
        checks.push(PropertyCheck {
            name: "parity_theorem",
            cases: ratios.len() * thetas.len(),
            max_err: failures as f64,
            tol: 0.0,
        });
    }

    // Retarder product vs propagator under the parameter map.
    {
        let cases = scale(50, 10);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let cfg = random_config(&mut rng);
            let t: f64 = rng.random_range(0.0..12.0);
            let settings = optics::map_dynamics_to_optics(&cfg, t)?;
            let product =
                optics::u2_matrix(settings.phi2, settings.delta) * optics::u1_matrix(settings.phi1);
            max_err = max_err.max(product.max_abs_diff(&dynamics::propagator_matrix(&cfg, t)?));
        }
        checks.push(PropertyCheck {
            name: "optics_propagator_correspondence",
            cases,
            max_err,
            tol: 1e-10,
        });
    }

    // Interferometer readout at commensurate settings: dark at integer
    // ratios, bright at half-integer ratios.
    {
        let mut max_err = 0.0_f64;
        let mut cases = 0;
        for ratio in [1.0, 2.0, 3.0] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, ratio)?;
            let settings = optics::map_dynamics_to_optics(&cfg, PI)?;
            let (first, second) = optics::dual_arm_transform(&settings);
            max_err = max_err.max(optics::mach_zehnder_intensity(&first, &second, 0.0));
            cases += 1;
        }
        for ratio in [0.5, 1.5, 2.5] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, ratio)?;
            let settings = optics::map_dynamics_to_optics(&cfg, PI)?;
            let (first, second) = optics::dual_arm_transform(&settings);
            max_err = max_err.max(1.0 - optics::mach_zehnder_intensity(&first, &second, 0.0));
            cases += 1;
        }
        checks.push(PropertyCheck {
            name: "mach_zehnder_commensurate_readout",
            cases,
            max_err,
            tol: 1e-6,
        });
    }

    // Complementary ports sum to one when the composed transform is ±1.
    {
        let mut max_err = 0.0_f64;
        let mut cases = 0;
        for ratio in [1.0, 1.5, 2.0, 2.5] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, ratio)?;
            let settings = optics::map_dynamics_to_optics(&cfg, PI)?;
            let (first, second) = optics::dual_arm_transform(&settings);
            for chi in [0.0, 0.7, 2.1] {
                let bright = optics::mach_zehnder_intensity(&first, &second, chi);
                let dark = optics::mach_zehnder_intensity(&first, &second, chi + PI);
                max_err = max_err.max((bright + dark - 1.0).abs());
                cases += 1;
            }
        }
        checks.push(PropertyCheck {
            name: "mach_zehnder_complementarity",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    // Quadratic field law: doubling the field quadruples the retardance,
    // and the retardance is linear in thickness and Kerr constant.
    {
        let cases = scale(50, 10);
        let mut max_err = 0.0_f64;
        for _ in 0..cases {
            let lambda: f64 = rng.random_range(0.3..2.0);
            let k: f64 = rng.random_range(0.2..3.0);
            let d: f64 = rng.random_range(0.1..2.0);
            let e: f64 = rng.random_range(0.1..2.0);
            let base = optics::phase_from_field(lambda, k, d, e)?;
            let quad = optics::phase_from_field(lambda, k, d, 2.0 * e)?;
            let lin_d = optics::phase_from_field(lambda, k, 3.0 * d, e)?;
            let lin_k = optics::phase_from_field(lambda, 3.0 * k, d, e)?;
            let scale_err = (quad - 4.0 * base)
                .abs()
                .max((lin_d - 3.0 * base).abs())
                .max((lin_k - 3.0 * base).abs());
            max_err = max_err.max(scale_err / base.abs().max(1.0));
        }
        checks.push(PropertyCheck {
            name: "kerr_phase_scaling",
            cases,
            max_err,
            tol: 1e-12,
        });
    }

    if inject_fault {
        checks[0].tol = 0.0;
    }
    Ok(checks)
}
