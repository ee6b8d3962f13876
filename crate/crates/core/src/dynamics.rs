//! Spin-1/2 in a rotating magnetic field.
//!
//! The field `B(t) = b (sin(theta) cos(omega t), sin(theta) sin(omega t),
//! cos(theta))` gives the Hamiltonian `H(t) = sigma . B(t)`, whose
//! time-dependent Schroedinger equation has two exact solutions
//!
//! ```text
//! psi_pm(t) = (a_pm e^{-i omega t / 2}, b_pm e^{+i omega t / 2}) e^{∓i omega0 t}
//! ```
//!
//! with quasienergies `±hbar*omega0`. The propagator expressed in the basis
//! of the initial solutions `{psi_+(0), psi_-(0)}` is a special-unitary
//! matrix, i.e. a maximally entangled state of the `mes` module, and it is
//! built here constructively from the solutions rather than from any closed
//! formula. A fourth-order Runge-Kutta integrator provides an independent
//! numerical check, and [`solve_field_for_ratio`] inverts the quasienergy
//! splitting to hit commensurate ratios `omega0 = r * omega` exactly.

use num_complex::Complex64;

use crate::mes::{self, MesState};
use crate::qmath::{self, C2Matrix, TwoQubitState};
use crate::{Error, Result};

/// Unitarity defect above which [`rk4_oracle`] refuses to return a result.
pub const RK4_UNITARITY_LIMIT: f64 = 1e-6;

/// Transverse field component `b*sin(theta)` at or below which the geometry
/// degenerates to a static field along z.
const DEGENERATE_GEOMETRY_TOL: f64 = 1e-12;

/// Rotating-field parameters. `b` is the field strength in energy units
/// (`H = sigma . B`), `theta` the tilt from the z-axis, `omega` the rotation
/// frequency, `hbar` the reduced Planck constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    pub b: f64,
    pub theta: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl FieldConfig {
    pub fn new(b: f64, theta: f64, omega: f64, hbar: f64) -> Result<Self> {
        let reason = if !b.is_finite() || b < 0.0 {
            Some("field strength b must be finite and >= 0")
        } else if !omega.is_finite() || omega <= 0.0 {
            Some("rotation frequency omega must be finite and > 0")
        } else if !hbar.is_finite() || hbar <= 0.0 {
            Some("hbar must be finite and > 0")
        } else if !(0.0..=std::f64::consts::PI).contains(&theta) {
            Some("tilt angle theta must lie in [0, pi]")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidConfig {
                reason: reason.into(),
            }),
            None => Ok(Self {
                b,
                theta,
                omega,
                hbar,
            }),
        }
    }

    /// Convenience constructor with `omega = 1` and `hbar = 1`.
    pub fn with_defaults(b: f64, theta: f64) -> Result<Self> {
        Self::new(b, theta, 1.0, 1.0)
    }

    /// Builds a configuration whose field strength realizes
    /// `omega0 = ratio * omega` exactly.
    pub fn for_ratio(theta: f64, omega: f64, hbar: f64, ratio: f64) -> Result<Self> {
        let b = solve_field_for_ratio(theta, omega, hbar, ratio)?;
        Self::new(b, theta, omega, hbar)
    }

    /// True when the transverse field component vanishes and the exact
    /// solutions' coefficient formula breaks down.
    pub fn is_degenerate(&self) -> bool {
        self.b * self.theta.sin().abs() <= DEGENERATE_GEOMETRY_TOL
    }
}

/// The two exact solutions, held as spinor coefficients plus the frequencies
/// needed to evaluate them at any time.
///
/// The canonical phase convention makes `a_plus` and `a_minus` positive real;
/// [`ExactSolutionPair::rephased`] produces equivalent solutions in a
/// different convention for testing that downstream results do not depend on
/// it.
#[derive(Debug, Clone, Copy)]
pub struct ExactSolutionPair {
    pub omega: f64,
    pub omega0: f64,
    pub a_plus: Complex64,
    pub b_plus: Complex64,
    pub a_minus: Complex64,
    pub b_minus: Complex64,
}

impl ExactSolutionPair {
    /// The positive-quasienergy solution at time `t`.
    pub fn psi_plus(&self, t: f64) -> [Complex64; 2] {
        let rot = 0.5 * self.omega * t;
        let ph = self.omega0 * t;
        [
            self.a_plus * Complex64::cis(-rot - ph),
            self.b_plus * Complex64::cis(rot - ph),
        ]
    }

    /// The negative-quasienergy solution at time `t`.
    pub fn psi_minus(&self, t: f64) -> [Complex64; 2] {
        let rot = 0.5 * self.omega * t;
        let ph = self.omega0 * t;
        [
            self.a_minus * Complex64::cis(-rot + ph),
            self.b_minus * Complex64::cis(rot + ph),
        ]
    }

    /// The same solutions with each spinor multiplied by a global phase.
    pub fn rephased(&self, phase_plus: f64, phase_minus: f64) -> Self {
        let p = Complex64::cis(phase_plus);
        let m = Complex64::cis(phase_minus);
        Self {
            omega: self.omega,
            omega0: self.omega0,
            a_plus: self.a_plus * p,
            b_plus: self.b_plus * p,
            a_minus: self.a_minus * m,
            b_minus: self.b_minus * m,
        }
    }
}

/// The instantaneous Hamiltonian `sigma . B(t)`.
///
/// Hermitian, traceless, determinant `-b^2`, eigenvalues `±b` at every time.
pub fn hamiltonian(cfg: &FieldConfig, t: f64) -> C2Matrix {
    let (sin_t, cos_t) = cfg.theta.sin_cos();
    let phase = Complex64::cis(cfg.omega * t);
    C2Matrix::new(
        Complex64::new(cfg.b * cos_t, 0.0),
        cfg.b * sin_t * phase.conj(),
        cfg.b * sin_t * phase,
        Complex64::new(-cfg.b * cos_t, 0.0),
    )
}

/// Half the quasienergy splitting:
/// `omega0 = sqrt((hbar*omega - 2 b cos(theta))^2 + (2 b sin(theta))^2) / (2 hbar)`.
///
/// The sum-of-squares form is algebraically identical to the discriminant
/// `(hbar*omega)^2 - 4 b hbar omega cos(theta) + 4 b^2` but never cancels.
pub fn omega_zero(cfg: &FieldConfig) -> f64 {
    let axial = cfg.hbar * cfg.omega - 2.0 * cfg.b * cfg.theta.cos();
    let transverse = 2.0 * cfg.b * cfg.theta.sin();
    (axial * axial + transverse * transverse).sqrt() / (2.0 * cfg.hbar)
}

/// The two exact solutions with the canonical (positive real `a_pm`) phase
/// convention.
///
/// Fails with [`Error::DegenerateGeometry`] when `b*sin(theta)` vanishes; the
/// propagator handles that case with a static-field branch instead.
pub fn exact_solutions(cfg: &FieldConfig) -> Result<ExactSolutionPair> {
    if cfg.is_degenerate() {
        return Err(Error::DegenerateGeometry);
    }
    let w0 = omega_zero(cfg);
    let denom = 2.0 * cfg.b * cfg.theta.sin();
    let axial = 2.0 * cfg.b * cfg.theta.cos();
    let r_plus = (cfg.hbar * (cfg.omega + 2.0 * w0) - axial) / denom;
    let r_minus = (cfg.hbar * (cfg.omega - 2.0 * w0) - axial) / denom;
    let a_plus = 1.0 / (1.0 + r_plus * r_plus).sqrt();
    let a_minus = 1.0 / (1.0 + r_minus * r_minus).sqrt();
    Ok(ExactSolutionPair {
        omega: cfg.omega,
        omega0: w0,
        a_plus: Complex64::new(a_plus, 0.0),
        b_plus: Complex64::new(a_plus * r_plus, 0.0),
        a_minus: Complex64::new(a_minus, 0.0),
        b_minus: Complex64::new(a_minus * r_minus, 0.0),
    })
}

/// The propagator `U(t) = |psi_+(t)><psi_+(0)| + |psi_-(t)><psi_-(0)|`
/// expressed in the basis `{psi_+(0), psi_-(0)}` as an amplitude pair.
///
/// Degenerate geometries (`b*sin(theta) = 0`) reduce to a static field along
/// z, for which the first basis vector is taken to be the higher-energy
/// eigenstate, giving `alpha = e^{-i b |cos(theta)| t / hbar}`, `beta = 0`.
pub fn propagator(cfg: &FieldConfig, t: f64) -> Result<MesState> {
    if cfg.is_degenerate() {
        let phase = cfg.b * cfg.theta.cos().abs() * t / cfg.hbar;
        return Ok(MesState::new_unchecked(
            Complex64::cis(-phase),
            Complex64::ZERO,
        ));
    }
    let sol = exact_solutions(cfg)?;
    Ok(propagator_from_solutions(&sol, t))
}

/// Evaluates the basis-change sandwich for a given solution pair.
///
/// The spinor phases are normalized internally, so the result is the same for
/// any phase convention carried by `sol`.
pub fn propagator_from_solutions(sol: &ExactSolutionPair, t: f64) -> MesState {
    let p0 = sol.psi_plus(0.0);
    let pt = sol.psi_plus(t);
    let mt = sol.psi_minus(t);
    let alpha = p0[0].conj() * pt[0] + p0[1].conj() * pt[1];
    let beta_raw = p0[0].conj() * mt[0] + p0[1].conj() * mt[1];
    // <psi_+(0)| . |psi_-(t)> picks up the relative phase of the two spinor
    // conventions; strip it so that a_pm act as if positive real.
    let unit_plus = sol.a_plus / sol.a_plus.norm();
    let unit_minus = sol.a_minus / sol.a_minus.norm();
    let beta = beta_raw * unit_plus * unit_minus.conj();
    MesState::new_unchecked(alpha, beta)
}

/// The propagator as a special-unitary matrix in the initial eigenbasis.
pub fn propagator_matrix(cfg: &FieldConfig, t: f64) -> Result<C2Matrix> {
    Ok(propagator(cfg, t)?.to_matrix())
}

/// Unitary basis change whose columns are `psi_+(0)` and `psi_-(0)`,
/// mapping eigenbasis amplitudes to the lab (spin-z) frame.
pub fn eigenbasis_matrix(cfg: &FieldConfig) -> Result<C2Matrix> {
    if cfg.is_degenerate() {
        // Static field along ±z: the higher-energy eigenstate is |0> for
        // cos(theta) >= 0 and |1> otherwise.
        return Ok(if cfg.theta.cos() >= 0.0 {
            C2Matrix::identity()
        } else {
            C2Matrix::new(
                Complex64::ZERO,
                Complex64::ONE,
                Complex64::ONE,
                Complex64::ZERO,
            )
        });
    }
    let sol = exact_solutions(cfg)?;
    Ok(C2Matrix::new(
        sol.a_plus,
        sol.a_minus,
        sol.b_plus,
        sol.b_minus,
    ))
}

/// The propagator in the lab frame, `S U(t) S^dagger`, comparable entry by
/// entry with [`rk4_oracle`].
pub fn propagator_lab_frame(cfg: &FieldConfig, t: f64) -> Result<C2Matrix> {
    let s = eigenbasis_matrix(cfg)?;
    Ok(s * propagator_matrix(cfg, t)? * s.adjoint())
}

/// Closed-form propagator amplitudes in the initial eigenbasis:
///
/// ```text
/// alpha = (cos(omega t / 2) + i x sin(omega t / 2)) e^{-i omega0 t}
/// beta  = -i y sin(omega t / 2) e^{+i omega0 t}
/// x = (hbar omega - 2 b cos(theta)) / (2 hbar omega0),   y = b sin(theta) / (hbar omega0)
/// ```
///
/// obtained by evaluating the basis-change inner products analytically with
/// the canonical phase convention. Used as an algebraic cross-check of
/// [`propagator`], which stays authoritative.
pub fn closed_form_propagator(cfg: &FieldConfig, t: f64) -> Result<MesState> {
    if cfg.is_degenerate() {
        return Err(Error::DegenerateGeometry);
    }
    let w0 = omega_zero(cfg);
    let x = (cfg.hbar * cfg.omega - 2.0 * cfg.b * cfg.theta.cos()) / (2.0 * cfg.hbar * w0);
    let y = cfg.b * cfg.theta.sin() / (cfg.hbar * w0);
    let (sin_half, cos_half) = (0.5 * cfg.omega * t).sin_cos();
    let alpha = Complex64::new(cos_half, x * sin_half) * Complex64::cis(-w0 * t);
    let beta = Complex64::new(0.0, -y * sin_half) * Complex64::cis(w0 * t);
    Ok(MesState::new_unchecked(alpha, beta))
}

/// Fourth-order Runge-Kutta integration of `i hbar dU/dt = H(t) U` from the
/// identity, in the lab frame.
///
/// Refuses to return a matrix whose unitarity defect exceeds
/// [`RK4_UNITARITY_LIMIT`]; around 10^4 steps per field period keep the
/// defect below 1e-8.
pub fn rk4_oracle(cfg: &FieldConfig, t: f64, steps: usize) -> Result<C2Matrix> {
    if steps == 0 {
        return Err(Error::InvalidArgument {
            reason: "rk4 step count must be positive".into(),
        });
    }
    let h = t / steps as f64;
    let rate = Complex64::new(0.0, -1.0 / cfg.hbar);
    let deriv = |time: f64, u: &C2Matrix| (hamiltonian(cfg, time) * *u).scale(rate);
    let mut u = C2Matrix::identity();
    for k in 0..steps {
        let t0 = t * k as f64 / steps as f64;
        let k1 = deriv(t0, &u);
        let k2 = deriv(t0 + 0.5 * h, &(u + k1.scale(0.5 * h)));
        let k3 = deriv(t0 + 0.5 * h, &(u + k2.scale(0.5 * h)));
        let k4 = deriv(t0 + h, &(u + k3.scale(h)));
        u = u + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
    }
    let defect = u.special_unitary_defect();
    if defect > RK4_UNITARITY_LIMIT {
        return Err(Error::AccuracyLoss {
            defect,
            limit: RK4_UNITARITY_LIMIT,
        });
    }
    Ok(u)
}

/// Solves `omega0(b) = ratio * omega` for the field strength:
/// `b = (hbar omega / 2) (cos(theta) + sqrt(4 ratio^2 - sin(theta)^2))`,
/// the positive root.
///
/// Fails when the square root argument is negative (`ratio < sin(theta)/2`)
/// or the root itself is negative (`theta > pi/2` with small `ratio`).
pub fn solve_field_for_ratio(theta: f64, omega: f64, hbar: f64, ratio: f64) -> Result<f64> {
    let frequencies_valid = omega.is_finite() && omega > 0.0 && hbar.is_finite() && hbar > 0.0;
    if !frequencies_valid || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidArgument {
            reason: "need omega > 0, hbar > 0 and theta in [0, pi]".into(),
        });
    }
    if !ratio.is_finite() || ratio < 0.0 {
        return Err(Error::NoSolution { ratio, theta });
    }
    let s = theta.sin();
    let disc = 4.0 * ratio * ratio - s * s;
    if disc < -1e-12 {
        return Err(Error::NoSolution { ratio, theta });
    }
    let b = 0.5 * hbar * omega * (theta.cos() + disc.max(0.0).sqrt());
    if b < -1e-12 {
        return Err(Error::NoSolution { ratio, theta });
    }
    Ok(b.max(0.0))
}

/// Both qubits driven through the same field: the state
/// `(U(t) (x) U(t)) |(1, 0)>`, which stays maximally entangled for all `t`.
pub fn dual_evolution(cfg: &FieldConfig, t: f64) -> Result<TwoQubitState> {
    let m = propagator_matrix(cfg, t)?;
    qmath::apply_local(&m, &m, &mes::to_two_qubit(&MesState::identity()))
}

/// Finite-difference residual `max_pm |i hbar d/dt psi_pm - H psi_pm|` at
/// time `t`, with a central difference of half-width `h`.
pub fn schrodinger_residual(cfg: &FieldConfig, t: f64, h: f64) -> Result<f64> {
    let sol = exact_solutions(cfg)?;
    let ham = hamiltonian(cfg, t);
    let mut worst = 0.0_f64;
    for pick in [ExactSolutionPair::psi_plus, ExactSolutionPair::psi_minus] {
        let fwd = pick(&sol, t + h);
        let bwd = pick(&sol, t - h);
        let here = pick(&sol, t);
        let hpsi = ham.apply(here);
        for i in 0..2 {
            let deriv = (fwd[i] - bwd[i]) / (2.0 * h);
            let residual = (Complex64::new(0.0, cfg.hbar) * deriv - hpsi[i]).norm();
            worst = worst.max(residual);
        }
    }
    Ok(worst)
}
