//! Maximally entangled two-qubit states viewed as rotations.
//!
//! A maximally entangled state (MES) of two qubits is fixed by a pair of
//! complex amplitudes `(alpha, beta)` with `|alpha|^2 + |beta|^2 = 1`, which
//! is exactly the data of a 2x2 special-unitary matrix. Every such state is
//! therefore a point in the double cover of the rotation group, and a
//! continuous evolution of the state draws a path inside the solid ball of
//! radius pi whose points `a*k` encode a rotation by angle `a` about the unit
//! axis `k`, with antipodal surface points identified.
//!
//! This crate evolves such states with the exact solutions of a spin-1/2 in
//! a rotating magnetic field, projects the evolution into the ball, detects
//! the surface breaks where the path jumps to the antipode, and checks the
//! parity rule: an odd number of breaks comes with an overall sign flip of
//! the state, an even number with none. A Jones-calculus module maps the
//! same dynamics onto a pair of electrically modulated retarders and an
//! idealized Mach-Zehnder readout of the sign.
//!
//! The `so3trace` binary exposes the headline computations (trajectory
//! export, resonance solving, verification sweeps, retarder settings) as
//! subcommands; see the README for usage.
//!
//! ```
//! use std::f64::consts::PI;
//! use so3trace::dynamics::FieldConfig;
//! use so3trace::trajectory::{self, ClosurePhase, EvolutionMode};
//!
//! // Drive both qubits for half a field cycle at the first resonance: the
//! // path closes after three surface breaks and the state picks up a sign.
//! let cfg = FieldConfig::for_ratio(PI / 5.0, 1.0, 1.0, 1.0)?;
//! let traj = trajectory::trace(&cfg, EvolutionMode::Dual, PI, 4096)?;
//! assert_eq!(trajectory::count_breaks(&traj)?, 3);
//! assert_eq!(trajectory::closure_phase(&traj)?, ClosurePhase::Minus);
//! assert!(trajectory::parity_theorem_check(&traj)?);
//! # Ok::<(), so3trace::Error>(())
//! ```

pub mod dynamics;
mod error;
pub mod mes;
pub mod optics;
pub mod qmath;
pub mod trajectory;

pub mod cli;

pub use error::{Error, Result};
