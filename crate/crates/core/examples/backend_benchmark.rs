//! Time the circuit on dense and sparse backends as the input width grows.
//!
//! `cargo run --release --example backend_benchmark -- 20`

use std::time::Instant;

use mqt::{run_unique_sat, Backend, BoolFn, RunOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mqt::Result<()> {
    let n_max: usize = std::env::args().nth(1).map_or(18, |s| s.parse().expect("bad n"));
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    println!("{:>3} {:>12} {:>12}", "n", "dense (s)", "sparse (s)");
    for n in (4..=n_max).step_by(2) {
        let f = BoolFn::point(n, rng.random_range(0..1 << n))?;
        let mut times = [0.0; 2];
        let mut supports = Vec::new();
        for (slot, backend) in Backend::ALL.into_iter().enumerate() {
            let opts = RunOptions {
                backend,
                ..RunOptions::default()
            };
            let start = Instant::now();
            let r = run_unique_sat(&f, &opts)?;
            times[slot] = start.elapsed().as_secs_f64();
            supports.push(r.final_support);
        }
        assert_eq!(supports[0], supports[1]);
        println!("{n:>3} {:>12.6} {:>12.6}", times[0], times[1]);
    }
    Ok(())
}
