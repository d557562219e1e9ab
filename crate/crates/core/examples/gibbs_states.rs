//! Gibbs states of a degenerate level system, from very hot to very cold,
//! including negative temperatures.
//!
//! ```text
//! cargo run --example gibbs_states
//! ```

use nls_thermo::nls::{entropy, mean_energy};
use nls_thermo::LevelSystem;

fn main() -> nls_thermo::Result<()> {
    let system = LevelSystem::new(vec![0.0, 1.0, 1.5, 4.0], vec![1, 3, 2, 1])?;
    println!(
        "{:>8} {:>10} {:>10} {:>10}  probabilities",
        "beta", "log Z", "<E>", "S"
    );
    for beta in [-3.0, -1.0, 0.0, 0.5, 1.0, 3.0, 40.0] {
        let state = system.gibbs_state(beta)?;
        let p = state.probabilities();
        println!(
            "{beta:>8} {:>10.4} {:>10.4} {:>10.4}  {:.4?}",
            state.log_partition_function(),
            mean_energy(&system, p)?,
            entropy(&system, p)?,
            p.as_slice()
        );
    }
    Ok(())
}
