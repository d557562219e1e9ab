//! The heat J-equation `⟨e^{-(β-β₀)ΔQ}⟩ = 1` and the general J-equation on
//! random instances.
//!
//! ```text
//! cargo run --example j_equations
//! ```

use nls_thermo::fluctuation::{general_j_expectation, j_heat_expectation};
use nls_thermo::genrand::{
    random_distribution, random_gibbs_instance, random_stochastic_with, rng_from_seed,
};

fn main() -> nls_thermo::Result<()> {
    let inst = random_gibbs_instance(5, 2024)?;
    println!("random Gibbs matrix, N = 5, beta0 = {}", inst.beta0());
    for beta in [-10.0, -2.0, 0.0, 1.0, 2.5, 10.0] {
        let j = j_heat_expectation(&inst.gibbs, beta)?;
        println!(
            "  beta = {beta:>5}: <exp(-(beta-beta0) dQ)> - 1 = {:+.2e}",
            j - 1.0
        );
    }

    let mut rng = rng_from_seed(7);
    println!("general J-equation, arbitrary stochastic T:");
    for n in [2, 4, 8, 16] {
        let t = random_stochastic_with(&mut rng, n);
        let p = random_distribution(&mut rng, n);
        let p0 = random_distribution(&mut rng, n);
        let ptilde = random_distribution(&mut rng, n);
        let j = general_j_expectation(&t, &p, &p0, &ptilde)?;
        println!("  N = {n:>2}: J - 1 = {:+.2e}", j - 1.0);
    }
    Ok(())
}
