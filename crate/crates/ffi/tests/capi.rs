//! Exercises the C ABI through the exported functions, plus a smoke test
//! that compiles and runs an actual C program against the generated header
//! and the static library.

use std::f64::consts::PI;
use std::ffi::CStr;
use std::path::PathBuf;
use std::ptr;

use so3trace_ffi::*;

fn first_resonance() -> *mut So3traceFieldConfig {
    let mut cfg = ptr::null_mut();
    let status = unsafe { so3trace_field_config_for_ratio(PI / 5.0, 1.0, 1.0, 1.0, &mut cfg) };
    assert_eq!(status, So3traceStatus::Ok);
    assert!(!cfg.is_null());
    cfg
}

#[test]
fn version_and_status_messages_are_c_strings() {
    let version = unsafe { CStr::from_ptr(so3trace_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));

    let msg = unsafe { CStr::from_ptr(so3trace_status_message(So3traceStatus::NoSolution)) };
    assert!(msg.to_str().unwrap().contains("no field strength"));
}

#[test]
fn null_arguments_are_reported() {
    unsafe {
        assert_eq!(
            so3trace_field_config_new(1.0, 0.3, 1.0, 1.0, ptr::null_mut()),
            So3traceStatus::NullArgument
        );
        let mut out = 0.0;
        assert_eq!(
            so3trace_omega_zero(ptr::null(), &mut out),
            So3traceStatus::NullArgument
        );
        assert_eq!(so3trace_trajectory_sample_count(ptr::null()), 0);
        // Freeing null is a no-op.
        so3trace_field_config_free(ptr::null_mut());
        so3trace_trajectory_free(ptr::null_mut());
    }
}

#[test]
fn invalid_configs_and_ratios_map_to_statuses() {
    unsafe {
        let mut cfg = ptr::null_mut();
        assert_eq!(
            so3trace_field_config_new(-1.0, 0.3, 1.0, 1.0, &mut cfg),
            So3traceStatus::InvalidArgument
        );
        let mut b = 0.0;
        assert_eq!(
            so3trace_solve_field_for_ratio(PI / 2.0, 1.0, 1.0, 0.4, &mut b),
            So3traceStatus::NoSolution
        );
    }
}

#[test]
fn resonance_solver_round_trips_through_the_abi() {
    unsafe {
        let mut b = 0.0;
        assert_eq!(
            so3trace_solve_field_for_ratio(PI / 5.0, 1.0, 1.0, 1.0, &mut b),
            So3traceStatus::Ok
        );
        assert!((b - 1.3603).abs() < 5e-4);

        let cfg = first_resonance();
        let mut w0 = 0.0;
        assert_eq!(so3trace_omega_zero(cfg, &mut w0), So3traceStatus::Ok);
        assert!((w0 - 1.0).abs() < 1e-12);
        so3trace_field_config_free(cfg);
    }
}

#[test]
fn propagator_and_ball_point_round_trip() {
    unsafe {
        let cfg = first_resonance();
        let mut state = So3traceMes {
            alpha_re: 0.0,
            alpha_im: 0.0,
            beta_re: 0.0,
            beta_im: 0.0,
        };
        assert_eq!(
            so3trace_propagator(cfg, 0.0, &mut state),
            So3traceStatus::Ok
        );
        assert!((state.alpha_re - 1.0).abs() < 1e-14);

        // Full cycle at resonance: the sign flip.
        assert_eq!(
            so3trace_propagator(cfg, 2.0 * PI, &mut state),
            So3traceStatus::Ok
        );
        assert!((state.alpha_re + 1.0).abs() < 1e-12);

        let mut point = So3traceBallPoint {
            kx: 0.0,
            ky: 0.0,
            kz: 0.0,
            angle: 0.0,
            sheet: 0,
        };
        assert_eq!(so3trace_ball_point(&state, &mut point), So3traceStatus::Ok);
        assert_eq!(point.sheet, -1);
        assert!(point.angle < 1e-5);

        so3trace_field_config_free(cfg);
    }
}

#[test]
fn traced_trajectory_reproduces_the_break_parity_story() {
    unsafe {
        let cfg = first_resonance();
        let mut traj = ptr::null_mut();
        assert_eq!(
            so3trace_trace(cfg, So3traceMode::Dual, PI, 1024, &mut traj),
            So3traceStatus::Ok
        );
        assert_eq!(so3trace_trajectory_sample_count(traj), 1025);

        let mut breaks = 0usize;
        assert_eq!(
            so3trace_trajectory_validated_break_count(traj, &mut breaks),
            So3traceStatus::Ok
        );
        assert_eq!(breaks, 3);

        let mut phase = 0;
        assert_eq!(
            so3trace_trajectory_closure_phase(traj, &mut phase),
            So3traceStatus::Ok
        );
        assert_eq!(phase, -1);

        let mut parity = 0;
        assert_eq!(
            so3trace_trajectory_parity_check(traj, &mut parity),
            So3traceStatus::Ok
        );
        assert_eq!(parity, 1);

        // Sample access, including the out-of-range status.
        let mut sample = std::mem::zeroed::<So3traceSample>();
        assert_eq!(
            so3trace_trajectory_sample(traj, 0, &mut sample),
            So3traceStatus::Ok
        );
        assert_eq!(sample.point.sheet, 1);
        assert_eq!(
            so3trace_trajectory_sample(traj, 9999, &mut sample),
            So3traceStatus::InvalidArgument
        );

        // A break flag appears on exactly three samples.
        let mut flagged = 0;
        for i in 0..so3trace_trajectory_sample_count(traj) {
            assert_eq!(
                so3trace_trajectory_sample(traj, i, &mut sample),
                So3traceStatus::Ok
            );
            flagged += sample.break_flag;
        }
        assert_eq!(flagged, 3);

        so3trace_trajectory_free(traj);
        so3trace_field_config_free(cfg);
    }
}

#[test]
fn open_trajectory_parity_is_rejected() {
    unsafe {
        let cfg = first_resonance();
        let mut traj = ptr::null_mut();
        assert_eq!(
            so3trace_trace(cfg, So3traceMode::Dual, PI / 2.0, 512, &mut traj),
            So3traceStatus::Ok
        );
        let mut parity = 0;
        assert_eq!(
            so3trace_trajectory_parity_check(traj, &mut parity),
            So3traceStatus::OpenTrajectory
        );
        so3trace_trajectory_free(traj);
        so3trace_field_config_free(cfg);
    }
}

#[test]
fn optics_mapping_and_interferometer_through_the_abi() {
    unsafe {
        let cfg = first_resonance();
        let (mut phi1, mut phi2, mut delta) = (0.0, 0.0, 0.0);
        assert_eq!(
            so3trace_map_dynamics_to_optics(cfg, PI, &mut phi1, &mut phi2, &mut delta),
            So3traceStatus::Ok
        );
        assert!((phi1 - 2.0 * PI).abs() < 1e-12);
        assert!((phi2 - PI).abs() < 1e-12);

        let mut u1 = std::mem::zeroed::<So3traceMatrix>();
        let mut u2 = std::mem::zeroed::<So3traceMatrix>();
        assert_eq!(so3trace_u1_matrix(phi1, &mut u1), So3traceStatus::Ok);
        assert_eq!(so3trace_u2_matrix(phi2, delta, &mut u2), So3traceStatus::Ok);

        let mut intensity = 0.0;
        assert_eq!(
            so3trace_mach_zehnder_intensity(&u1, &u1, 0.0, &mut intensity),
            So3traceStatus::Ok
        );
        assert!((intensity - 1.0).abs() < 1e-12, "u1(2 pi)^2 = identity");

        let garbage = So3traceMatrix {
            m00_re: 2.0,
            m00_im: 0.0,
            m01_re: 0.0,
            m01_im: 0.0,
            m10_re: 0.0,
            m10_im: 0.0,
            m11_re: 2.0,
            m11_im: 0.0,
        };
        assert_eq!(
            so3trace_mach_zehnder_intensity(&garbage, &u1, 0.0, &mut intensity),
            So3traceStatus::InvalidArgument
        );

        let mut phase = 0.0;
        assert_eq!(
            so3trace_phase_from_field(1.0, 1.0, 1.0, 1.0, &mut phase),
            So3traceStatus::Ok
        );
        assert!((phase - 2.0 * PI).abs() < 1e-12);

        so3trace_field_config_free(cfg);
    }
}

/// Compiles and runs a C program against include/so3trace.h and the static
/// library, proving the generated header is valid C and the ABI holds.
#[test]
fn c_program_links_against_the_header_and_static_library() {
    let manifest_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest_dir.join("include");
    assert!(include_dir.join("so3trace.h").exists());

    // The static library sits next to the test executable's deps directory.
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop(); // strip test binary name -> target/<profile>/deps
    lib_dir.pop(); // -> target/<profile>
    let static_lib = lib_dir.join("libso3trace_ffi.a");
    assert!(static_lib.exists(), "missing {}", static_lib.display());

    let scratch = std::env::temp_dir().join(format!("so3trace_capi_{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let c_source = scratch.join("smoke.c");
    std::fs::write(
        &c_source,
        r#"
#include <math.h>
#include <stdio.h>
#include "so3trace.h"

int main(void) {
    So3traceFieldConfig *cfg = NULL;
    if (so3trace_field_config_for_ratio(M_PI / 5.0, 1.0, 1.0, 1.0, &cfg) != SO3TRACE_STATUS_OK)
        return 1;

    So3traceTrajectory *traj = NULL;
    if (so3trace_trace(cfg, SO3TRACE_MODE_DUAL, M_PI, 512, &traj) != SO3TRACE_STATUS_OK)
        return 2;

    size_t breaks = 0;
    if (so3trace_trajectory_validated_break_count(traj, &breaks) != SO3TRACE_STATUS_OK)
        return 3;

    int phase = 0;
    if (so3trace_trajectory_closure_phase(traj, &phase) != SO3TRACE_STATUS_OK)
        return 4;

    printf("breaks=%zu phase=%d\n", breaks, phase);
    so3trace_trajectory_free(traj);
    so3trace_field_config_free(cfg);
    return (breaks == 3 && phase == -1) ? 0 : 5;
}
"#,
    )
    .unwrap();

    let binary = scratch.join("smoke");
    let compile = std::process::Command::new("cc")
        .arg(&c_source)
        .arg("-I")
        .arg(&include_dir)
        .arg(static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = std::process::Command::new(&binary).output().unwrap();
    assert!(run.status.success(), "smoke test exited nonzero");
    assert_eq!(
        String::from_utf8_lossy(&run.stdout).trim(),
        "breaks=3 phase=-1"
    );

    let _ = std::fs::remove_dir_all(&scratch);
}
