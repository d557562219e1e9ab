//! Linear response at the bath temperature: the slope of `β⟨ΔQ⟩` computed
//! four ways, the common tangent with `⟨ΔS⟩`, and Newton's law of cooling.
//!
//! ```text
//! cargo run --example slope_response
//! ```

use nls_thermo::genrand::random_gibbs_instance;
use nls_thermo::response::{
    cumulant_check, default_step, entropy_slope_numeric, newton_cooling_coefficient,
    newton_cooling_residual, slope_bundle,
};
use nls_thermo::spin_boson::spin1_gibbs_matrix;
use nls_thermo::GibbsMatrix;

fn report(name: &str, g: &GibbsMatrix) -> nls_thermo::Result<()> {
    let b = slope_bundle(g)?;
    println!("{name}");
    println!("  direct       {:.12}", b.direct);
    println!("  symmetrized  {:.12}", b.symmetrized);
    println!("  fluctuation  {:.12}", b.fluctuation);
    println!("  numeric      {:.12}", b.numeric);
    println!(
        "  dS slope     {:.12}",
        entropy_slope_numeric(g, default_step(g))?
    );
    println!(
        "  cooling coefficient a*beta0 = {:.6}",
        newton_cooling_coefficient(g)?
    );
    for delta in [1e-2, 5e-3, 2.5e-3] {
        println!(
            "    residual at delta = {delta:<7} {:.3e}",
            newton_cooling_residual(g, delta)?
        );
    }
    let c = cumulant_check(g, &[0.1, 0.05, 0.025, -0.1, -0.05, -0.025])?;
    println!(
        "  cumulants k1 = {:.2e}, k2 = {:.6}, residual exponent {:.3}",
        c.kappa1,
        c.kappa2,
        c.exponent.unwrap_or(f64::NAN)
    );
    Ok(())
}

fn main() -> nls_thermo::Result<()> {
    report("spin-1 example, beta0 = 1", &spin1_gibbs_matrix(1.0)?)?;
    report("random N = 8", &random_gibbs_instance(8, 1)?.gibbs)?;
    Ok(())
}
