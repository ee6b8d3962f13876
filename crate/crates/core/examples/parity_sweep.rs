//! Break-parity sweep over commensurate drives.
//!
//! Traces the doubly driven evolution for half a field cycle at a grid of
//! quasienergy ratios and tilt angles, then prints the break count, the
//! closure phase, and whether the sign matches `(-1)^breaks`.
//!
//! Run with: cargo run --example parity_sweep -p so3trace

use std::f64::consts::PI;

use so3trace::dynamics::FieldConfig;
use so3trace::trajectory::{self, EvolutionMode};

fn main() -> Result<(), so3trace::Error> {
    println!(
        "{:>6} {:>8} {:>7} {:>6} {:>7}",
        "ratio", "theta", "breaks", "phase", "parity"
    );
    for ratio in [1.0, 1.5, 2.0, 2.5, 3.0] {
        for theta in [PI / 8.0, PI / 5.0, PI / 3.0] {
            let cfg = FieldConfig::for_ratio(theta, 1.0, 1.0, ratio)?;
            let traj = trajectory::trace(&cfg, EvolutionMode::Dual, PI, 2048)?;
            let breaks = trajectory::count_breaks(&traj)?;
            let phase = trajectory::closure_phase(&traj)?.to_string();
            let parity = trajectory::parity_theorem_check(&traj)?;
            println!("{ratio:>6.2} {theta:>8.4} {breaks:>7} {phase:>6} {parity:>7}");
        }
    }
    Ok(())
}
