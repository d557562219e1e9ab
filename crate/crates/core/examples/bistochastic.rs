//! Pure work processes: a mixture of permutations never lowers the
//! entropy, and the entropy gain is bounded by `β⟨w⟩`.
//!
//! ```text
//! cargo run --example bistochastic
//! ```

use nls_thermo::fluctuation::bistochastic_work_check;
use nls_thermo::genrand::{random_bistochastic, rng_from_seed};
use nls_thermo::LevelSystem;

fn main() -> nls_thermo::Result<()> {
    let system = LevelSystem::nondegenerate(vec![0.0, 0.5, 1.0, 2.0, 3.5])?;
    let mut rng = rng_from_seed(3);
    let t = random_bistochastic(&mut rng, 5, 3);
    println!("{:>5} {:>10} {:>10}", "beta", "<dS>", "beta <w>");
    for beta in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let r = bistochastic_work_check(&t, &system, beta)?;
        assert!(r.entropy_nonnegative.holds && r.work_bound.holds);
        println!(
            "{beta:>5} {:>10.6} {:>10.6}",
            r.work_bound.lhs, r.work_bound.rhs
        );
    }
    Ok(())
}
