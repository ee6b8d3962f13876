//! C ABI for the so3trace library.
//!
//! Every function returns a [`So3traceStatus`]; results come back through
//! out pointers that are written only on `SO3TRACE_STATUS_OK`. Field
//! configurations and trajectories are opaque handles created by the
//! `_new`/`_trace` constructors and released with the matching `_free`
//! function. All other types cross the boundary by value as plain structs
//! of doubles.
//!
//! The C header is generated into `include/so3trace.h` at build time.

use std::ffi::{c_char, c_int};

use num_complex::Complex64;
use so3trace::dynamics::{self, FieldConfig};
use so3trace::mes::{self, MesState};
use so3trace::optics;
use so3trace::qmath::C2Matrix;
use so3trace::trajectory::{self, ClosurePhase, EvolutionMode, Trajectory};
use so3trace::Error;

/// Unitarity slack granted to stage matrices arriving from C callers.
const FFI_UNITARY_TOL: f64 = 1e-9;

/// Status codes returned by every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum So3traceStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument failed validation (range, normalization, unitarity).
    InvalidArgument = 2,
    /// The transverse field component vanishes.
    DegenerateGeometry = 3,
    /// No field strength realizes the requested ratio.
    NoSolution = 4,
    /// A state was not of maximally entangled form.
    NotMaximallyEntangled = 5,
    /// The break count did not stabilize under refinement.
    InsufficientResolution = 6,
    /// The trajectory closed in the ball but not at a +/-1 phase.
    NonCommensurateClosure = 7,
    /// The trajectory is open; the request needs a closed one.
    OpenTrajectory = 8,
    /// Numerical integration lost the required accuracy.
    AccuracyLoss = 9,
    /// Optics parameters are mutually inconsistent.
    InconsistentParameters = 10,
    /// Internal consistency failure.
    InternalError = 11,
}

fn status_of(err: &Error) -> So3traceStatus {
    match err {
        Error::InvalidOperator { .. }
        | Error::NotNormalized { .. }
        | Error::InvalidAxis { .. }
        | Error::InvalidConfig { .. }
        | Error::InvalidArgument { .. }
        | Error::InvalidGeometry { .. } => So3traceStatus::InvalidArgument,
        Error::NotMaximallyEntangled { .. } => So3traceStatus::NotMaximallyEntangled,
        Error::DegenerateGeometry => So3traceStatus::DegenerateGeometry,
        Error::AccuracyLoss { .. } => So3traceStatus::AccuracyLoss,
        Error::NoSolution { .. } => So3traceStatus::NoSolution,
        Error::InsufficientResolution { .. } => So3traceStatus::InsufficientResolution,
        Error::NonCommensurateClosure { .. } => So3traceStatus::NonCommensurateClosure,
        Error::OpenTrajectory => So3traceStatus::OpenTrajectory,
        Error::InconsistentParameters { .. } => So3traceStatus::InconsistentParameters,
        Error::InternalConsistency { .. } => So3traceStatus::InternalError,
    }
}

/// Opaque rotating-field configuration handle.
pub struct So3traceFieldConfig {
    inner: FieldConfig,
}

/// Opaque traced-trajectory handle.
pub struct So3traceTrajectory {
    inner: Trajectory,
}

/// Amplitude pair of a maximally entangled state / special-unitary matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct So3traceMes {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
}

/// A point of the rotation ball with its covering-sheet sign (+1 or -1).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct So3traceBallPoint {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
    pub angle: f64,
    pub sheet: c_int,
}

/// One trajectory sample. `break_flag` is 1 on the sample immediately after
/// a detected surface break.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct So3traceSample {
    pub t: f64,
    pub mes: So3traceMes,
    pub point: So3traceBallPoint,
    pub break_flag: c_int,
}

/// A 2x2 complex matrix in row-major order, split into re/im parts.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct So3traceMatrix {
    pub m00_re: f64,
    pub m00_im: f64,
    pub m01_re: f64,
    pub m01_im: f64,
    pub m10_re: f64,
    pub m10_im: f64,
    pub m11_re: f64,
    pub m11_im: f64,
}

/// Evolution selector for tracing.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum So3traceMode {
    /// Drive only the first qubit.
    Single = 0,
    /// Drive both qubits through the same field.
    Dual = 1,
}

fn mes_out(m: &MesState) -> So3traceMes {
    So3traceMes {
        alpha_re: m.alpha().re,
        alpha_im: m.alpha().im,
        beta_re: m.beta().re,
        beta_im: m.beta().im,
    }
}

fn matrix_out(m: &C2Matrix) -> So3traceMatrix {
    So3traceMatrix {
        m00_re: m.m00.re,
        m00_im: m.m00.im,
        m01_re: m.m01.re,
        m01_im: m.m01.im,
        m10_re: m.m10.re,
        m10_im: m.m10.im,
        m11_re: m.m11.re,
        m11_im: m.m11.im,
    }
}

fn matrix_in(m: &So3traceMatrix) -> C2Matrix {
    C2Matrix::new(
        Complex64::new(m.m00_re, m.m00_im),
        Complex64::new(m.m01_re, m.m01_im),
        Complex64::new(m.m10_re, m.m10_im),
        Complex64::new(m.m11_re, m.m11_im),
    )
}

/// Library version as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn so3trace_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn so3trace_status_message(status: So3traceStatus) -> *const c_char {
    let msg: &'static str = match status {
        So3traceStatus::Ok => "ok\0",
        So3traceStatus::NullArgument => "null pointer argument\0",
        So3traceStatus::InvalidArgument => "invalid argument\0",
        So3traceStatus::DegenerateGeometry => "degenerate field geometry\0",
        So3traceStatus::NoSolution => "no field strength solves the requested ratio\0",
        So3traceStatus::NotMaximallyEntangled => "state is not maximally entangled\0",
        So3traceStatus::InsufficientResolution => "break count unstable under refinement\0",
        So3traceStatus::NonCommensurateClosure => "closure phase is not +/-1\0",
        So3traceStatus::OpenTrajectory => "trajectory is open\0",
        So3traceStatus::AccuracyLoss => "integration accuracy lost\0",
        So3traceStatus::InconsistentParameters => "inconsistent optics parameters\0",
        So3traceStatus::InternalError => "internal error\0",
    };
    msg.as_ptr() as *const c_char
}

/// Creates a field configuration handle.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released with
/// [`so3trace_field_config_free`].
#[no_mangle]
pub unsafe extern "C" fn so3trace_field_config_new(
    b: f64,
    theta: f64,
    omega: f64,
    hbar: f64,
    out: *mut *mut So3traceFieldConfig,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match FieldConfig::new(b, theta, omega, hbar) {
        Ok(cfg) => {
            *out = Box::into_raw(Box::new(So3traceFieldConfig { inner: cfg }));
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Creates a configuration whose field strength realizes
/// `omega0 = ratio * omega` exactly.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released with
/// [`so3trace_field_config_free`].
#[no_mangle]
pub unsafe extern "C" fn so3trace_field_config_for_ratio(
    theta: f64,
    omega: f64,
    hbar: f64,
    ratio: f64,
    out: *mut *mut So3traceFieldConfig,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match FieldConfig::for_ratio(theta, omega, hbar, ratio) {
        Ok(cfg) => {
            *out = Box::into_raw(Box::new(So3traceFieldConfig { inner: cfg }));
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a configuration handle. Null is ignored.
///
/// # Safety
/// `cfg` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn so3trace_field_config_free(cfg: *mut So3traceFieldConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Half the quasienergy splitting of a configuration.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_omega_zero(
    cfg: *const So3traceFieldConfig,
    out: *mut f64,
) -> So3traceStatus {
    if cfg.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    *out = dynamics::omega_zero(&(*cfg).inner);
    So3traceStatus::Ok
}

/// Solves `omega0(b) = ratio * omega` for the field strength.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_solve_field_for_ratio(
    theta: f64,
    omega: f64,
    hbar: f64,
    ratio: f64,
    out: *mut f64,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match dynamics::solve_field_for_ratio(theta, omega, hbar, ratio) {
        Ok(b) => {
            *out = b;
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The propagator amplitudes in the initial eigenbasis at time `t`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_propagator(
    cfg: *const So3traceFieldConfig,
    t: f64,
    out: *mut So3traceMes,
) -> So3traceStatus {
    if cfg.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match dynamics::propagator(&(*cfg).inner, t) {
        Ok(m) => {
            *out = mes_out(&m);
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The amplitudes of the doubly driven state at time `t`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_dual_propagator(
    cfg: *const So3traceFieldConfig,
    t: f64,
    out: *mut So3traceMes,
) -> So3traceStatus {
    if cfg.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    let result = dynamics::dual_evolution(&(*cfg).inner, t).and_then(|s| mes::from_two_qubit(&s));
    match result {
        Ok(m) => {
            *out = mes_out(&m);
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Amplitudes of the rotation by `angle` about the unit axis `(kx, ky, kz)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_su2_from_axis_angle(
    kx: f64,
    ky: f64,
    kz: f64,
    angle: f64,
    out: *mut So3traceMes,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match mes::su2_from_axis_angle([kx, ky, kz], angle) {
        Ok(m) => {
            *out = mes_out(&m);
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Projects an amplitude pair into the rotation ball.
///
/// # Safety
/// `state` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn so3trace_ball_point(
    state: *const So3traceMes,
    out: *mut So3traceBallPoint,
) -> So3traceStatus {
    if state.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    let s = &*state;
    let m = match MesState::new(
        Complex64::new(s.alpha_re, s.alpha_im),
        Complex64::new(s.beta_re, s.beta_im),
    ) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let p = mes::axis_angle_from_su2(&m);
    *out = So3traceBallPoint {
        kx: p.axis[0],
        ky: p.axis[1],
        kz: p.axis[2],
        angle: p.angle,
        sheet: p.sheet as c_int,
    };
    So3traceStatus::Ok
}

/// Traces an evolution into a trajectory handle.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer; the returned
/// handle must be released with [`so3trace_trajectory_free`].
#[no_mangle]
pub unsafe extern "C" fn so3trace_trace(
    cfg: *const So3traceFieldConfig,
    mode: So3traceMode,
    t_max: f64,
    n_steps: usize,
    out: *mut *mut So3traceTrajectory,
) -> So3traceStatus {
    if cfg.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    let mode = match mode {
        So3traceMode::Single => EvolutionMode::Single,
        So3traceMode::Dual => EvolutionMode::Dual,
    };
    match trajectory::trace(&(*cfg).inner, mode, t_max, n_steps) {
        Ok(traj) => {
            *out = Box::into_raw(Box::new(So3traceTrajectory { inner: traj }));
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a trajectory handle. Null is ignored.
///
/// # Safety
/// `traj` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_free(traj: *mut So3traceTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Number of samples held by a trajectory; zero for a null handle.
///
/// # Safety
/// `traj` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_sample_count(
    traj: *const So3traceTrajectory,
) -> usize {
    if traj.is_null() {
        0
    } else {
        (*traj).inner.samples.len()
    }
}

/// Copies out the sample at `index`.
///
/// # Safety
/// `traj` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_sample(
    traj: *const So3traceTrajectory,
    index: usize,
    out: *mut So3traceSample,
) -> So3traceStatus {
    if traj.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    let inner = &(*traj).inner;
    let Some(sample) = inner.samples.get(index) else {
        return So3traceStatus::InvalidArgument;
    };
    let break_flag = index > 0 && inner.samples[index - 1].point.sheet != sample.point.sheet;
    *out = So3traceSample {
        t: sample.t,
        mes: mes_out(&sample.mes),
        point: So3traceBallPoint {
            kx: sample.point.axis[0],
            ky: sample.point.axis[1],
            kz: sample.point.axis[2],
            angle: sample.point.angle,
            sheet: sample.point.sheet as c_int,
        },
        break_flag: break_flag as c_int,
    };
    So3traceStatus::Ok
}

/// Number of surface breaks detected at the trajectory's own resolution.
///
/// # Safety
/// `traj` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_break_count(
    traj: *const So3traceTrajectory,
    out: *mut usize,
) -> So3traceStatus {
    if traj.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    *out = (*traj).inner.breaks.len();
    So3traceStatus::Ok
}

/// Break count validated by re-tracing at doubled resolution until stable.
///
/// # Safety
/// `traj` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_validated_break_count(
    traj: *const So3traceTrajectory,
    out: *mut usize,
) -> So3traceStatus {
    if traj.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match trajectory::count_breaks(&(*traj).inner) {
        Ok(n) => {
            *out = n;
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Closure phase of the trajectory: +1, -1, or 0 for an open path.
///
/// # Safety
/// `traj` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_closure_phase(
    traj: *const So3traceTrajectory,
    out: *mut c_int,
) -> So3traceStatus {
    if traj.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match trajectory::closure_phase(&(*traj).inner) {
        Ok(phase) => {
            *out = match phase {
                ClosurePhase::Plus => 1,
                ClosurePhase::Minus => -1,
                ClosurePhase::Open => 0,
            };
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Checks `closure phase = (-1)^breaks`; writes 1 when the rule holds.
///
/// # Safety
/// `traj` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_trajectory_parity_check(
    traj: *const So3traceTrajectory,
    out: *mut c_int,
) -> So3traceStatus {
    if traj.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match trajectory::parity_theorem_check(&(*traj).inner) {
        Ok(ok) => {
            *out = ok as c_int;
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Retarder settings reproducing the propagator of `cfg` at time `t`.
///
/// # Safety
/// `cfg` must be a live handle; `phi1`, `phi2`, `delta` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn so3trace_map_dynamics_to_optics(
    cfg: *const So3traceFieldConfig,
    t: f64,
    phi1: *mut f64,
    phi2: *mut f64,
    delta: *mut f64,
) -> So3traceStatus {
    if cfg.is_null() || phi1.is_null() || phi2.is_null() || delta.is_null() {
        return So3traceStatus::NullArgument;
    }
    match optics::map_dynamics_to_optics(&(*cfg).inner, t) {
        Ok(settings) => {
            *phi1 = settings.phi1;
            *phi2 = settings.phi2;
            *delta = settings.delta;
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Jones matrix of an axis-aligned retarder.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_u1_matrix(phi1: f64, out: *mut So3traceMatrix) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    *out = matrix_out(&optics::u1_matrix(phi1));
    So3traceStatus::Ok
}

/// Jones matrix of a retarder tilted by `delta` from the z-axis.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_u2_matrix(
    phi2: f64,
    delta: f64,
    out: *mut So3traceMatrix,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    *out = matrix_out(&optics::u2_matrix(phi2, delta));
    So3traceStatus::Ok
}

/// Retardance of a quadratic electro-optic cell.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn so3trace_phase_from_field(
    lambda: f64,
    kerr_k: f64,
    d: f64,
    e: f64,
    out: *mut f64,
) -> So3traceStatus {
    if out.is_null() {
        return So3traceStatus::NullArgument;
    }
    match optics::phase_from_field(lambda, kerr_k, d, e) {
        Ok(phi) => {
            *out = phi;
            So3traceStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Bright-port intensity of the balanced interferometer whose sample arm
/// applies `first` then `second`. Both stages must be special-unitary.
///
/// # Safety
/// `first`, `second` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn so3trace_mach_zehnder_intensity(
    first: *const So3traceMatrix,
    second: *const So3traceMatrix,
    reference_phase: f64,
    out: *mut f64,
) -> So3traceStatus {
    if first.is_null() || second.is_null() || out.is_null() {
        return So3traceStatus::NullArgument;
    }
    let a = matrix_in(&*first);
    let b = matrix_in(&*second);
    if !a.is_special_unitary(FFI_UNITARY_TOL) || !b.is_special_unitary(FFI_UNITARY_TOL) {
        return So3traceStatus::InvalidArgument;
    }
    *out = optics::mach_zehnder_intensity(&a, &b, reference_phase);
    So3traceStatus::Ok
}
