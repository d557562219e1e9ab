//! For `T = 1 + εt`, the entropy change of a Gibbs state approaches
//! `β ΔE` with an error of order `ε²`.
//!
//! ```text
//! cargo run --example weak_coupling
//! ```

use nls_thermo::genrand::rng_from_seed;
use nls_thermo::response::{weak_coupling_residual, PerturbationGenerator};
use nls_thermo::LevelSystem;

fn main() -> nls_thermo::Result<()> {
    let system = LevelSystem::nondegenerate(vec![0.0, 0.4, 1.1, 1.7])?;
    let mut rng = rng_from_seed(11);
    let generator = PerturbationGenerator::random(&mut rng, 4, 1.0)?;
    let eps = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
    let fit = weak_coupling_residual(&generator, &system, 0.8, &eps)?;
    println!("{:>8}  |<dS> - beta dE|", "eps");
    for (e, r) in &fit.table {
        println!("{e:>8}  {r:.4e}");
    }
    println!("fitted exponent: {:.4}", fit.exponent.unwrap_or(f64::NAN));
    Ok(())
}
