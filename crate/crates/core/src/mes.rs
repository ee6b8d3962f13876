//! The dictionary between maximally entangled states, special-unitary
//! matrices, and points of the solid rotation ball.
//!
//! A maximally entangled state `|(alpha, beta)>` is the two-qubit state
//!
//! ```text
//! (alpha |00> + beta |01> - beta* |10> + alpha* |11>) / sqrt(2)
//! ```
//!
//! so the pair `(alpha, beta)` is the first row of a special-unitary matrix
//! and every such state is a rotation in disguise. Writing
//!
//! ```text
//! alpha = cos(a/2) - i k_z sin(a/2)
//! beta  = -(k_y + i k_x) sin(a/2)
//! ```
//!
//! places the state at the vector `a*k` of the ball of radius pi, `k` a unit
//! axis. The parameterization covers each rotation twice: `(k, pi + a)` and
//! `(-k, pi - a)` give the same rotation but opposite matrices. The [`BallPoint`]
//! type keeps the representative inside the ball and records which of the two
//! covering sheets it came from.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::qmath::{C2Matrix, TwoQubitState, ALGEBRA_TOL};
use crate::{Error, Result};

/// Form tolerance for recognizing a maximally entangled state. Looser than
/// [`ALGEBRA_TOL`] because inputs may come out of numerical integration.
pub const MES_FORM_TOL: f64 = 1e-9;

/// Below this value of `sin(angle/2)` the rotation axis is numerically
/// undefined and the convention axis `(0, 0, 1)` is reported instead.
pub const DEGENERATE_AXIS_TOL: f64 = 1e-9;

/// The amplitude pair `(alpha, beta)` of a maximally entangled state;
/// equivalently a 2x2 special-unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MesState {
    alpha: Complex64,
    beta: Complex64,
}

impl MesState {
    /// Builds a state, rejecting pairs with `|alpha|^2 + |beta|^2` away from
    /// one by more than [`ALGEBRA_TOL`].
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let defect = (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs();
        if defect > ALGEBRA_TOL {
            Err(Error::NotNormalized { defect })
        } else {
            Ok(Self { alpha, beta })
        }
    }

    pub(crate) fn new_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    /// The state `|(1, 0)>`, sitting at the center of the ball.
    pub fn identity() -> Self {
        Self {
            alpha: Complex64::ONE,
            beta: Complex64::ZERO,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// The special-unitary matrix `[[alpha, beta], [-beta*, alpha*]]`.
    pub fn to_matrix(&self) -> C2Matrix {
        C2Matrix::new(self.alpha, self.beta, -self.beta.conj(), self.alpha.conj())
    }
}

/// A point of the solid ball of radius pi together with its covering sheet.
///
/// `sheet = +1` marks the representative produced directly by the half-angle
/// parameterization (`angle <= pi`); `sheet = -1` marks the antipodal
/// representative of the negated matrix. On the surface (`angle = pi`) the
/// two sheets meet: `(axis, pi, +1)` and `(-axis, pi, -1)` describe the same
/// rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPoint {
    /// Unit rotation axis.
    pub axis: [f64; 3],
    /// Rotation angle in `[0, pi]`.
    pub angle: f64,
    /// Covering sheet, `+1` or `-1`.
    pub sheet: i8,
}

impl BallPoint {
    /// Cartesian coordinates `angle * axis` inside the ball.
    pub fn coords(&self) -> [f64; 3] {
        [
            self.angle * self.axis[0],
            self.angle * self.axis[1],
            self.angle * self.axis[2],
        ]
    }
}

/// Expands `(alpha, beta)` into the four two-qubit amplitudes.
pub fn to_two_qubit(m: &MesState) -> TwoQubitState {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    TwoQubitState::new_unchecked(
        m.alpha() * inv_sqrt2,
        m.beta() * inv_sqrt2,
        -m.beta().conj() * inv_sqrt2,
        m.alpha().conj() * inv_sqrt2,
    )
}

/// Recovers `(alpha, beta)` from a two-qubit state of maximally entangled
/// form.
///
/// The state must satisfy `c11 = c00*` and `c10 = -c01*` to within
/// [`MES_FORM_TOL`]; anything else is rejected.
pub fn from_two_qubit(s: &TwoQubitState) -> Result<MesState> {
    let residual = (s.c11 - s.c00.conj())
        .norm()
        .max((s.c10 + s.c01.conj()).norm());
    if residual > MES_FORM_TOL {
        return Err(Error::NotMaximallyEntangled { residual });
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    Ok(MesState::new_unchecked(s.c00 * sqrt2, s.c01 * sqrt2))
}

/// Half-angle parameterization of a rotation by `angle` about the unit
/// vector `axis`.
///
/// `angle` may run over `[0, 2*pi]`; values above pi land on the second
/// sheet of the cover.
pub fn su2_from_axis_angle(axis: [f64; 3], angle: f64) -> Result<MesState> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > ALGEBRA_TOL {
        return Err(Error::InvalidAxis { norm });
    }
    let (sin_half, cos_half) = (0.5 * angle).sin_cos();
    Ok(MesState::new_unchecked(
        Complex64::new(cos_half, -axis[2] * sin_half),
        Complex64::new(-axis[1] * sin_half, -axis[0] * sin_half),
    ))
}

/// Projects a state into the ball, recording the covering sheet.
///
/// The raw angle `2*atan2(sqrt(Im(alpha)^2 + |beta|^2), Re(alpha))` runs over
/// `[0, 2*pi]`; angles above pi are folded back through the antipodal
/// identification, which negates the axis and flips the sheet sign. When the
/// axis is undefined (angle near 0 or 2*pi) the convention axis `(0, 0, 1)`
/// is reported.
pub fn axis_angle_from_su2(m: &MesState) -> BallPoint {
    let cos_half = m.alpha().re;
    let sin_half = (m.alpha().im * m.alpha().im + m.beta().norm_sqr()).sqrt();
    let raw_angle = 2.0 * sin_half.atan2(cos_half);
    let degenerate = sin_half < DEGENERATE_AXIS_TOL;
    let raw_axis = if degenerate {
        [0.0, 0.0, 1.0]
    } else {
        [
            -m.beta().im / sin_half,
            -m.beta().re / sin_half,
            -m.alpha().im / sin_half,
        ]
    };
    if raw_angle <= PI {
        BallPoint {
            axis: raw_axis,
            angle: raw_angle,
            sheet: 1,
        }
    } else {
        let axis = if degenerate {
            raw_axis
        } else {
            [-raw_axis[0], -raw_axis[1], -raw_axis[2]]
        };
        BallPoint {
            axis,
            angle: 2.0 * PI - raw_angle,
            sheet: -1,
        }
    }
}

/// Checks the two-sheet sign identity of the cover: a rotation by `pi + angle`
/// about `axis` and one by `pi - angle` about `-axis` coincide in the rotation
/// group but lift to opposite matrices.
///
/// Returns true when the two lifted states agree componentwise, after
/// negation, to within [`ALGEBRA_TOL`].
pub fn double_value_check(axis: [f64; 3], angle: f64) -> Result<bool> {
    let upper = su2_from_axis_angle(axis, PI + angle)?;
    let lower = su2_from_axis_angle([-axis[0], -axis[1], -axis[2]], PI - angle)?;
    let diff = (upper.alpha() + lower.alpha())
        .norm()
        .max((upper.beta() + lower.beta()).norm());
    Ok(diff <= ALGEBRA_TOL)
}
