//! Spin 1 coupled to an oscillator bath: the closed-form transition matrix
//! against the one obtained by diagonalizing the Hamiltonian, and the
//! extremum of the entropy change between zero and the bath temperature.
//!
//! ```text
//! cargo run --release --example spin_boson
//! ```

use nls_thermo::spin_boson::{
    analytic_transition_matrix, delta_s_argmax, numerical_transition_matrix, SpinBosonParams,
};

fn main() -> nls_thermo::Result<()> {
    let beta0 = 1.0;
    let t = analytic_transition_matrix(beta0)?;
    println!("closed form at beta0 = {beta0} (levels m = 1, 0, -1):");
    for row in t.to_rows() {
        println!("  {row:.10?}");
    }
    for lambda in [0.1, 1.0, 3.0] {
        let params = SpinBosonParams::from_tail_bound(beta0, lambda)?;
        let numeric = numerical_transition_matrix(&params)?;
        let dev = (numeric.as_matrix() - t.as_matrix()).abs().max();
        println!(
            "lambda = {lambda:<4} n_max = {}: max deviation {dev:.2e}",
            params.n_max
        );
    }
    let best = delta_s_argmax(beta0)?;
    println!(
        "|<dS>| on (0, beta0) peaks at beta = {:.6} with value {:.6}",
        best.beta, best.value
    );
    Ok(())
}
