//! Complex linear algebra for single-qubit operators and two-qubit
//! amplitudes.
//!
//! Everything in this crate lives in dimension 2 or 4, so instead of a
//! general matrix type there is one 2x2 complex matrix and one four-amplitude
//! state, both immutable value types. The basis order of [`TwoQubitState`] is
//! fixed as `|00>, |01>, |10>, |11>` throughout the crate.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance for exact-algebra checks (unitarity, normalization).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// A 2x2 complex matrix acting on single-qubit amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C2Matrix {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

impl C2Matrix {
    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    pub fn identity() -> Self {
        Self::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ONE,
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m00.conj(),
            self.m10.conj(),
            self.m01.conj(),
            self.m11.conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m00, self.m10, self.m01, self.m11)
    }

    pub fn det(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn trace(&self) -> Complex64 {
        self.m00 + self.m11
    }

    /// Applies the matrix to a column of two amplitudes.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m00 * v[0] + self.m01 * v[1],
            self.m10 * v[0] + self.m11 * v[1],
        ]
    }

    /// Largest deviation from the special-unitary conditions
    /// `M * M^dagger = I` and `det M = 1`.
    pub fn special_unitary_defect(&self) -> f64 {
        let g = *self * self.adjoint();
        let unitary = [
            (g.m00 - Complex64::ONE).norm(),
            g.m01.norm(),
            g.m10.norm(),
            (g.m11 - Complex64::ONE).norm(),
        ]
        .into_iter()
        .fold(0.0_f64, f64::max);
        unitary.max((self.det() - Complex64::ONE).norm())
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.special_unitary_defect() <= tol
    }

    pub(crate) fn require_special_unitary(&self) -> Result<()> {
        let defect = self.special_unitary_defect();
        if defect > ALGEBRA_TOL {
            Err(Error::InvalidOperator { defect })
        } else {
            Ok(())
        }
    }

    /// Entrywise scaling by a complex factor.
    pub fn scale(&self, k: impl Into<Complex64>) -> Self {
        let k = k.into();
        Self::new(k * self.m00, k * self.m01, k * self.m10, k * self.m11)
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (self.m00 - other.m00).norm(),
            (self.m01 - other.m01).norm(),
            (self.m10 - other.m10).norm(),
            (self.m11 - other.m11).norm(),
        ]
        .into_iter()
        .fold(0.0_f64, f64::max)
    }
}

impl Add for C2Matrix {
    type Output = C2Matrix;

    fn add(self, rhs: C2Matrix) -> C2Matrix {
        C2Matrix::new(
            self.m00 + rhs.m00,
            self.m01 + rhs.m01,
            self.m10 + rhs.m10,
            self.m11 + rhs.m11,
        )
    }
}

impl Mul for C2Matrix {
    type Output = C2Matrix;

    fn mul(self, rhs: C2Matrix) -> C2Matrix {
        C2Matrix::new(
            self.m00 * rhs.m00 + self.m01 * rhs.m10,
            self.m00 * rhs.m01 + self.m01 * rhs.m11,
            self.m10 * rhs.m00 + self.m11 * rhs.m10,
            self.m10 * rhs.m01 + self.m11 * rhs.m11,
        )
    }
}

/// A normalized pure state of two qubits in the basis `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone, Copy)]
pub struct TwoQubitState {
    pub c00: Complex64,
    pub c01: Complex64,
    pub c10: Complex64,
    pub c11: Complex64,
}

impl TwoQubitState {
    /// Builds a state, rejecting amplitude vectors that are not normalized
    /// to within [`ALGEBRA_TOL`].
    pub fn new(c00: Complex64, c01: Complex64, c10: Complex64, c11: Complex64) -> Result<Self> {
        let state = Self::new_unchecked(c00, c01, c10, c11);
        let defect = (state.norm() - 1.0).abs();
        if defect > ALGEBRA_TOL {
            Err(Error::NotNormalized { defect })
        } else {
            Ok(state)
        }
    }

    pub(crate) fn new_unchecked(
        c00: Complex64,
        c01: Complex64,
        c10: Complex64,
        c11: Complex64,
    ) -> Self {
        Self { c00, c01, c10, c11 }
    }

    pub fn norm(&self) -> f64 {
        (self.c00.norm_sqr() + self.c01.norm_sqr() + self.c10.norm_sqr() + self.c11.norm_sqr())
            .sqrt()
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }
}

/// Applies `u_first (x) u_second` to a two-qubit state.
///
/// Both operators must be special-unitary to within [`ALGEBRA_TOL`]; the
/// result keeps the norm of the input.
pub fn apply_local(
    u_first: &C2Matrix,
    u_second: &C2Matrix,
    s: &TwoQubitState,
) -> Result<TwoQubitState> {
    u_first.require_special_unitary()?;
    u_second.require_special_unitary()?;
    let a = u_first;
    let b = u_second;
    let c = s;
    // c'_{jk} = sum_{lm} a_{jl} b_{km} c_{lm}, with the first index on the
    // first qubit.
    let c00 = a.m00 * (b.m00 * c.c00 + b.m01 * c.c01) + a.m01 * (b.m00 * c.c10 + b.m01 * c.c11);
    let c01 = a.m00 * (b.m10 * c.c00 + b.m11 * c.c01) + a.m01 * (b.m10 * c.c10 + b.m11 * c.c11);
    let c10 = a.m10 * (b.m00 * c.c00 + b.m01 * c.c01) + a.m11 * (b.m00 * c.c10 + b.m01 * c.c11);
    let c11 = a.m10 * (b.m10 * c.c00 + b.m11 * c.c01) + a.m11 * (b.m10 * c.c10 + b.m11 * c.c11);
    Ok(TwoQubitState::new_unchecked(c00, c01, c10, c11))
}

/// Inner product `<s1|s2>`.
pub fn overlap(s1: &TwoQubitState, s2: &TwoQubitState) -> Complex64 {
    s1.c00.conj() * s2.c00
        + s1.c01.conj() * s2.c01
        + s1.c10.conj() * s2.c10
        + s1.c11.conj() * s2.c11
}

/// Concurrence of a pure two-qubit state: `2 |c00*c11 - c01*c10|`.
///
/// Zero for product states, one exactly on the maximally entangled manifold.
pub fn concurrence(s: &TwoQubitState) -> f64 {
    2.0 * (s.c00 * s.c11 - s.c01 * s.c10).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mes;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn bell_phi_plus() -> TwoQubitState {
        TwoQubitState::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn identity_leaves_state_unchanged() {
        let s = bell_phi_plus();
        let id = C2Matrix::identity();
        let out = apply_local(&id, &id, &s).unwrap();
        for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn rotation_on_first_qubit_gives_parameterized_state() {
        let m = mes::su2_from_axis_angle([0.6, 0.0, 0.8], 1.3).unwrap();
        let rotated = apply_local(&m.to_matrix(), &C2Matrix::identity(), &bell_phi_plus()).unwrap();
        let expected = mes::to_two_qubit(&m);
        for (a, b) in rotated.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn rotation_on_second_qubit_conjugates_beta() {
        let m = mes::su2_from_axis_angle([0.0, 1.0, 0.0], 0.9).unwrap();
        let rotated = apply_local(&C2Matrix::identity(), &m.to_matrix(), &bell_phi_plus()).unwrap();
        let expected = mes::to_two_qubit(&mes::MesState::new(m.alpha(), -m.beta().conj()).unwrap());
        for (a, b) in rotated.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn non_unitary_operator_is_rejected() {
        let mut bad = C2Matrix::identity();
        bad.m00 = Complex64::new(1.5, 0.0);
        let err = apply_local(&bad, &C2Matrix::identity(), &bell_phi_plus()).unwrap_err();
        assert!(matches!(err, Error::InvalidOperator { .. }));
    }

    #[test]
    fn overlap_basics() {
        let s = bell_phi_plus();
        assert!((overlap(&s, &s) - Complex64::ONE).norm() < 1e-15);

        let minus = TwoQubitState::new_unchecked(-s.c00, -s.c01, -s.c10, -s.c11);
        assert!((overlap(&s, &minus) + Complex64::ONE).norm() < 1e-15);

        // <(1,0)|(0,1)> = 0: direct inner product of the two patterns.
        let singlet_like =
            mes::to_two_qubit(&mes::MesState::new(Complex64::ZERO, Complex64::ONE).unwrap());
        assert!(overlap(&s, &singlet_like).norm() < 1e-15);
    }

    #[test]
    fn concurrence_of_product_and_bell_states() {
        let product = TwoQubitState::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        assert!(concurrence(&product) < 1e-15);
        assert!((concurrence(&bell_phi_plus()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_state_is_rejected() {
        let err = TwoQubitState::new(
            Complex64::ONE,
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    fn axis_strategy() -> impl Strategy<Value = [f64; 3]> {
        (-1.0_f64..1.0, 0.0_f64..(2.0 * PI)).prop_map(|(z, phi)| {
            let r = (1.0 - z * z).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
    }

    fn su2_strategy() -> impl Strategy<Value = C2Matrix> {
        (axis_strategy(), 0.0_f64..(2.0 * PI))
            .prop_map(|(axis, angle)| mes::su2_from_axis_angle(axis, angle).unwrap().to_matrix())
    }

    proptest! {
        #[test]
        fn apply_local_preserves_norm(u in su2_strategy(), v in su2_strategy(),
                                      w in su2_strategy()) {
            let s = apply_local(&w, &C2Matrix::identity(), &bell_phi_plus()).unwrap();
            let out = apply_local(&u, &v, &s).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn transpose_transfer_identity(u in su2_strategy(), v in su2_strategy()) {
            // (U (x) V) |phi+> = (U V^T (x) I) |phi+>
            let lhs = apply_local(&u, &v, &bell_phi_plus()).unwrap();
            let rhs = apply_local(&(u * v.transpose()), &C2Matrix::identity(), &bell_phi_plus())
                .unwrap();
            for (a, b) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn local_unitaries_preserve_concurrence(u in su2_strategy(), v in su2_strategy(),
                                                w in su2_strategy()) {
            let s = apply_local(&w, &C2Matrix::identity(), &bell_phi_plus()).unwrap();
            let out = apply_local(&u, &v, &s).unwrap();
            prop_assert!((concurrence(&out) - concurrence(&s)).abs() < 1e-12);
        }
    }
}
