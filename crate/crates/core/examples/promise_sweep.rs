//! Run the circuit over many promise-satisfying functions in parallel and
//! compare each verdict with brute force.

use mqt::verify::{sweep, SweepConfig};
use mqt::Backend;

fn main() -> mqt::Result<()> {
    let report = sweep(&SweepConfig {
        n_max: 12,
        random_per_n: 64,
        seed: 2024,
        backend: Backend::Dense,
    })?;
    for row in &report.rows {
        let kind = if row.exhaustive { "exhaustive" } else { "random" };
        println!(
            "n={:<2} {:>4} instances {:>2} failures ({kind})",
            row.n, row.instances, row.failures
        );
    }
    println!("{} instances, {} failures", report.instances, report.failures);
    Ok(())
}
