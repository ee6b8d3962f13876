//! Jones calculus for electrically modulated retarders and the exact map
//! from rotating-field dynamics to retarder settings.
//!
//! Two stage types appear: an axis-aligned retarder shifting the relative
//! phase of the two polarization amplitudes,
//!
//! ```text
//! U1(phi1) = diag(e^{-i phi1/2}, e^{+i phi1/2})
//! ```
//!
//! and a retarder whose optical axis is tilted by `delta` from the z-axis,
//!
//! ```text
//! U2(phi2, delta) = [[A, B], [-B*, A*]],
//! A = cos(phi2/2) + i sin(phi2/2) cos(2 delta),  B = i sin(phi2/2) sin(2 delta).
//! ```
//!
//! In a quadratic electro-optic cell the retardance follows the square of
//! the applied field, `phi = 2 pi k d E^2 / lambda`, so both settings are
//! voltage-programmable. With `phi1 = 2 omega0 t`, `phi2 = omega t` and
//! `cos(2 delta)` matched to the field geometry, the product `U2 U1`
//! reproduces the rotating-field propagator entry for entry, and a balanced
//! Mach-Zehnder interferometer on one photon of an entangled pair reads out
//! the overall sign of the closed evolution.

use num_complex::Complex64;

use crate::dynamics::{self, FieldConfig};
use crate::qmath::C2Matrix;
use crate::{Error, Result};

/// Slack allowed when clamping the `cos(2 delta)` argument to `[-1, 1]`.
const COS_CLAMP_TOL: f64 = 1e-9;

/// Which matrix form a Kerr cell realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    /// Optical axis along z; pure relative-phase retarder.
    AxisAligned,
    /// Optical axis tilted by `delta` from z.
    Rotated,
}

/// Physical cell parameters fixing the retardance through the quadratic
/// field law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrPhysical {
    pub lambda: f64,
    pub kerr_k: f64,
    pub d: f64,
    pub e_field: f64,
}

/// A dimensionless bench: unit wavelength, Kerr constant and thickness,
/// no applied field.
impl Default for KerrPhysical {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            kerr_k: 1.0,
            d: 1.0,
            e_field: 0.0,
        }
    }
}

/// One retarder stage: retardance, axis angle, optional physical origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrStage {
    pub kind: StageKind,
    /// Retardance in radians.
    pub phi: f64,
    /// Optical-axis angle from the z-axis; zero for axis-aligned stages.
    pub delta: f64,
    pub physical: Option<KerrPhysical>,
}

impl KerrStage {
    pub fn axis_aligned(phi: f64) -> Self {
        Self {
            kind: StageKind::AxisAligned,
            phi,
            delta: 0.0,
            physical: None,
        }
    }

    pub fn rotated(phi: f64, delta: f64) -> Self {
        Self {
            kind: StageKind::Rotated,
            phi,
            delta,
            physical: None,
        }
    }

    /// Builds a stage whose retardance is derived from cell parameters.
    pub fn from_physical(kind: StageKind, delta: f64, physical: KerrPhysical) -> Result<Self> {
        let phi = phase_from_field(
            physical.lambda,
            physical.kerr_k,
            physical.d,
            physical.e_field,
        )?;
        Ok(Self {
            kind,
            phi,
            delta: match kind {
                StageKind::AxisAligned => 0.0,
                StageKind::Rotated => delta,
            },
            physical: Some(physical),
        })
    }

    /// The stage's Jones matrix.
    pub fn jones(&self) -> C2Matrix {
        match self.kind {
            StageKind::AxisAligned => u1_matrix(self.phi),
            StageKind::Rotated => u2_matrix(self.phi, self.delta),
        }
    }

    /// Relative difference between the stored retardance and the one
    /// recomputed from the physical parameters; zero when none are attached.
    pub fn phase_consistency(&self) -> f64 {
        match self.physical {
            None => 0.0,
            Some(p) => match phase_from_field(p.lambda, p.kerr_k, p.d, p.e_field) {
                Ok(phi) => {
                    let scale = self.phi.abs().max(1.0);
                    (phi - self.phi).abs() / scale
                }
                Err(_) => f64::INFINITY,
            },
        }
    }
}

/// Axis-aligned retarder `diag(e^{-i phi1/2}, e^{+i phi1/2})`.
pub fn u1_matrix(phi1: f64) -> C2Matrix {
    C2Matrix::new(
        Complex64::cis(-0.5 * phi1),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::cis(0.5 * phi1),
    )
}

/// Tilted retarder `[[A, B], [-B*, A*]]` with
/// `A = cos(phi2/2) + i sin(phi2/2) cos(2 delta)` and
/// `B = i sin(phi2/2) sin(2 delta)`.
pub fn u2_matrix(phi2: f64, delta: f64) -> C2Matrix {
    let (sin_half, cos_half) = (0.5 * phi2).sin_cos();
    let (sin_2d, cos_2d) = (2.0 * delta).sin_cos();
    let a = Complex64::new(cos_half, sin_half * cos_2d);
    let b = Complex64::new(0.0, sin_half * sin_2d);
    C2Matrix::new(a, b, -b.conj(), a.conj())
}

/// Retardance of a quadratic electro-optic cell:
/// `phi = 2 pi kerr_k d e^2 / lambda`.
pub fn phase_from_field(lambda: f64, kerr_k: f64, d: f64, e: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidGeometry {
            reason: "wavelength must be positive".into(),
        });
    }
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidGeometry {
            reason: "cell thickness must be positive".into(),
        });
    }
    Ok(2.0 * std::f64::consts::PI * kerr_k * d * e * e / lambda)
}

/// Retarder settings reproducing a rotating-field propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticsSettings {
    /// Axis-aligned retardance, `2 omega0 t`.
    pub phi1: f64,
    /// Tilted retardance, `omega t`.
    pub phi2: f64,
    /// Axis angle, `-acos((hbar omega - 2 b cos(theta)) / (2 hbar omega0)) / 2`.
    pub delta: f64,
}

/// Maps field parameters and an evolution time to the retarder settings for
/// which `u2_matrix(phi2, delta) * u1_matrix(phi1)` equals the propagator
/// matrix entry for entry.
///
/// The axis angle carries a sign: `cos(2 delta)` matches the field geometry
/// while `sin(2 delta)` must be negative to reproduce the propagator's
/// off-diagonal entries, hence `delta` in `[-pi/2, 0]`. Degenerate field
/// geometries have no tilted-axis counterpart and are rejected.
pub fn map_dynamics_to_optics(cfg: &FieldConfig, t: f64) -> Result<OpticsSettings> {
    if cfg.is_degenerate() {
        return Err(Error::DegenerateGeometry);
    }
    let w0 = dynamics::omega_zero(cfg);
    let value = (cfg.hbar * cfg.omega - 2.0 * cfg.b * cfg.theta.cos()) / (2.0 * cfg.hbar * w0);
    if value.abs() > 1.0 + COS_CLAMP_TOL {
        return Err(Error::InconsistentParameters { value });
    }
    let delta = -0.5 * value.clamp(-1.0, 1.0).acos();
    Ok(OpticsSettings {
        phi1: 2.0 * w0 * t,
        phi2: cfg.omega * t,
        delta,
    })
}

/// The composed stage transforms for the two photons of an entangled pair,
/// folded onto the first qubit.
///
/// Each photon passes an axis-aligned stage followed by a tilted stage, so
/// one arm applies `P = U2 U1`; acting with the same pair on the second
/// qubit is equivalent to acting with `P^T` on the first. Returns
/// `(P^T, P)` in application order, so the composed product `P P^T` is
/// exactly the group element of the doubly driven pair.
pub fn dual_arm_transform(settings: &OpticsSettings) -> (C2Matrix, C2Matrix) {
    let p = u2_matrix(settings.phi2, settings.delta) * u1_matrix(settings.phi1);
    (p.transpose(), p)
}

/// Bright-port detection probability of a balanced Mach-Zehnder
/// interferometer whose sample arm applies `first` then `second` to one
/// photon of the pair `|(1, 0)>`.
///
/// With `v` the overlap of the transformed pair state with the reference,
/// the idealized lossless readout is `|1 + e^{i chi} v|^2 / 4`. Both stage
/// matrices are expected to be special-unitary.
pub fn mach_zehnder_intensity(first: &C2Matrix, second: &C2Matrix, reference_phase: f64) -> f64 {
    let product = *second * *first;
    // <(1,0)| (P (x) I) |(1,0)> is the normalized trace of P.
    let v = 0.5 * product.trace();
    let z = Complex64::ONE + Complex64::cis(reference_phase) * v;
    0.25 * z.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::propagator_matrix;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn u1_examples() {
        assert!(u1_matrix(0.0).max_abs_diff(&C2Matrix::identity()) < 1e-15);

        let quarter = u1_matrix(PI);
        assert!((quarter.m00 - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((quarter.m11 - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let full = u1_matrix(2.0 * PI);
        assert!(full.max_abs_diff(&C2Matrix::identity().scale(-1.0)) < 1e-15);
    }

    #[test]
    fn u2_examples() {
        let aligned = u2_matrix(1.3, 0.0);
        assert!((aligned.m00 - Complex64::cis(0.65)).norm() < 1e-15);
        assert!(aligned.m01.norm() < 1e-15);

        let diagonal_axis = u2_matrix(0.8, PI / 4.0);
        assert!((diagonal_axis.m00 - Complex64::new(0.4_f64.cos(), 0.0)).norm() < 1e-15);
        assert!((diagonal_axis.m01 - Complex64::new(0.0, 0.4_f64.sin())).norm() < 1e-15);

        assert!(u2_matrix(0.0, 1.1).max_abs_diff(&C2Matrix::identity()) < 1e-15);
    }

    #[test]
    fn jones_matrices_are_special_unitary() {
        for (phi, delta) in [(0.3, 0.2), (2.9, -1.0), (5.5, 0.7), (1.0, PI / 4.0)] {
            assert!(u1_matrix(phi).special_unitary_defect() < 1e-12);
            assert!(u2_matrix(phi, delta).special_unitary_defect() < 1e-12);
            assert!(
                KerrStage::rotated(phi, delta)
                    .jones()
                    .special_unitary_defect()
                    < 1e-12
            );
        }
    }

    #[test]
    fn quadratic_field_law() {
        assert!(phase_from_field(1.0, 1.0, 1.0, 0.0).unwrap().abs() < 1e-15);
        assert!((phase_from_field(1.0, 1.0, 1.0, 1.0).unwrap() - 2.0 * PI).abs() < 1e-12);

        let single = phase_from_field(0.5, 2.0, 0.3, 1.1).unwrap();
        let doubled = phase_from_field(0.5, 2.0, 0.3, 2.2).unwrap();
        assert!((doubled - 4.0 * single).abs() < 1e-12);

        assert!(phase_from_field(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(phase_from_field(1.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn phase_from_field_monotone_and_linear() {
        let mut last = -1.0;
        for i in 0..20 {
            let e = 0.1 * i as f64;
            let phi = phase_from_field(1.3, 0.7, 0.4, e).unwrap();
            assert!(phi > last || i == 0);
            last = phi;
        }
        let base = phase_from_field(1.0, 1.0, 1.0, 1.5).unwrap();
        assert!((phase_from_field(1.0, 3.0, 1.0, 1.5).unwrap() - 3.0 * base).abs() < 1e-12);
        assert!((phase_from_field(1.0, 1.0, 2.5, 1.5).unwrap() - 2.5 * base).abs() < 1e-12);
    }

    #[test]
    fn default_bench_has_zero_retardance() {
        let stage =
            KerrStage::from_physical(StageKind::AxisAligned, 0.0, KerrPhysical::default()).unwrap();
        assert!(stage.phi.abs() < 1e-15);
        assert!(stage.jones().max_abs_diff(&C2Matrix::identity()) < 1e-15);
    }

    #[test]
    fn physical_stage_is_consistent() {
        let stage = KerrStage::from_physical(
            StageKind::Rotated,
            -0.4,
            KerrPhysical {
                lambda: 0.8,
                kerr_k: 1.2,
                d: 0.05,
                e_field: 3.0,
            },
        )
        .unwrap();
        assert!(stage.phase_consistency() < 1e-12);
    }

    #[test]
    fn stage_product_reproduces_propagator_for_random_configs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let cfg = FieldConfig::new(
                rng.random_range(0.2..3.0),
                rng.random_range(0.15..PI - 0.15),
                rng.random_range(0.5..2.0),
                1.0,
            )
            .unwrap();
            let t = rng.random_range(0.0..12.0);
            let settings = map_dynamics_to_optics(&cfg, t).unwrap();
            let product = u2_matrix(settings.phi2, settings.delta) * u1_matrix(settings.phi1);
            let exact = propagator_matrix(&cfg, t).unwrap();
            let diff = product.max_abs_diff(&exact);
            assert!(diff < 1e-10, "difference {diff}");
        }
    }

    #[test]
    fn map_at_zero_time_is_the_identity_product() {
        let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.0).unwrap();
        let settings = map_dynamics_to_optics(&cfg, 0.0).unwrap();
        assert!(settings.phi1.abs() < 1e-14 && settings.phi2.abs() < 1e-14);
        let product = u2_matrix(settings.phi2, settings.delta) * u1_matrix(settings.phi1);
        assert!(product.max_abs_diff(&C2Matrix::identity()) < 1e-14);
    }

    #[test]
    fn half_cycle_settings_of_the_first_resonance() {
        let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.0).unwrap();
        let settings = map_dynamics_to_optics(&cfg, PI).unwrap();
        assert!((settings.phi1 - 2.0 * PI).abs() < 1e-12);
        assert!((settings.phi2 - PI).abs() < 1e-12);

        // Doubling over both arms reproduces the sign flip.
        let (first, second) = dual_arm_transform(&settings);
        assert!(mach_zehnder_intensity(&first, &second, 0.0) < 1e-12);
    }

    #[test]
    fn bright_port_swaps_between_commensurate_settings() {
        for n in [1.0, 2.0, 3.0] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, n).unwrap();
            let settings = map_dynamics_to_optics(&cfg, PI).unwrap();
            let (first, second) = dual_arm_transform(&settings);
            assert!(mach_zehnder_intensity(&first, &second, 0.0) < 1e-6);
        }
        for r in [0.5, 1.5, 2.5] {
            let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, r).unwrap();
            let settings = map_dynamics_to_optics(&cfg, PI).unwrap();
            let (first, second) = dual_arm_transform(&settings);
            assert!(mach_zehnder_intensity(&first, &second, 0.0) > 1.0 - 1e-6);
        }
    }

    #[test]
    fn intensity_matches_the_state_route() {
        // The normalized trace shortcut equals the definition through the
        // entangled pair: v = <(1,0)| (P (x) I) |(1,0)>.
        let bell = crate::mes::to_two_qubit(&crate::mes::MesState::identity());
        let id = C2Matrix::identity();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let cfg = FieldConfig::new(
                rng.random_range(0.2..3.0),
                rng.random_range(0.15..PI - 0.15),
                1.0,
                1.0,
            )
            .unwrap();
            let settings = map_dynamics_to_optics(&cfg, rng.random_range(0.0..9.0)).unwrap();
            let (first, second) = dual_arm_transform(&settings);
            let product = second * first;
            let v = crate::qmath::overlap(
                &bell,
                &crate::qmath::apply_local(&product, &id, &bell).unwrap(),
            );
            for chi in [0.0, 1.1, 2.7] {
                let expected = 0.25 * (Complex64::ONE + Complex64::cis(chi) * v).norm_sqr();
                let got = mach_zehnder_intensity(&first, &second, chi);
                assert!((got - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn folded_arms_equal_the_doubly_driven_group_element() {
        let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.0).unwrap();
        for t in [0.4, 1.7, PI] {
            let settings = map_dynamics_to_optics(&cfg, t).unwrap();
            let (first, second) = dual_arm_transform(&settings);
            let pair_state = crate::dynamics::dual_evolution(&cfg, t).unwrap();
            let w = crate::mes::from_two_qubit(&pair_state).unwrap().to_matrix();
            assert!((second * first).max_abs_diff(&w) < 1e-10);
        }
    }

    #[test]
    fn interferometer_basics() {
        let id = C2Matrix::identity();
        assert!((mach_zehnder_intensity(&id, &id, 0.0) - 1.0).abs() < 1e-15);

        let minus = id.scale(-1.0);
        assert!(mach_zehnder_intensity(&minus, &id, 0.0) < 1e-15);
    }

    #[test]
    fn complementary_ports_conserve_energy() {
        // For |v| = 1 the two output ports are exactly complementary;
        // u2(2*pi, .) = -I and a full-turn u1 keep the product at ±I.
        for phi1 in [0.0, 2.0 * PI, 4.0 * PI] {
            let u = u1_matrix(phi1);
            let v = u2_matrix(2.0 * PI, 0.3);
            for chi in [0.0, 0.4, 1.9] {
                let bright = mach_zehnder_intensity(&u, &v, chi);
                let dark = mach_zehnder_intensity(&u, &v, chi + PI);
                assert!((bright + dark - 1.0).abs() < 1e-12);
            }
        }
    }
}
