//! Seeded random Gibbs matrices, saved as instance JSON and verified.
//!
//! ```text
//! cargo run --example random_instances
//! ```

use nls_thermo::genrand::random_gibbs_instance;
use nls_thermo::instance::InstanceFile;
use nls_thermo::report::{run_verification, VerifyOptions};

fn main() -> nls_thermo::Result<()> {
    for (n, seed) in [(2, 0), (4, 42), (9, 7), (16, 123)] {
        let inst = random_gibbs_instance(n, seed)?;
        let file = InstanceFile::from_gibbs(&inst.gibbs);
        let report = run_verification(
            &file,
            &format!("n={n} seed={seed}"),
            &VerifyOptions::default(),
        )?;
        println!(
            "N = {n:>2}, seed = {seed:>3}: {} draw(s), fixed-point residual {:.1e}, {} checks, {}",
            inst.attempts,
            inst.gibbs.certification().fixed_point_residual,
            report.checks.len(),
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    let inst = random_gibbs_instance(3, 5)?;
    print!("{}", InstanceFile::from_gibbs(&inst.gibbs).to_json());
    Ok(())
}
