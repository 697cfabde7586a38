//! Decide UNIQUE-SAT for a function given as a truth table.
//!
//! `cargo run --example unique_sat -- 3:00000100`

use mqt::{run_unique_sat, BoolFn, RunOptions};

fn main() -> mqt::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "3:00000100".into());
    let (n, bits) = arg.split_once(':').expect("expected n:bits");
    let f = BoolFn::from_bitstring(n.parse().expect("bad arity"), bits)?;

    let result = run_unique_sat(&f, &RunOptions::default())?;
    println!("f = {f}");
    println!("satisfying assignments: {:?}", f.satisfying_assignments());
    println!("verdict: {}", result.verdict.expect("promise was checked"));
    println!("final support: {:?}", result.final_support);
    let c = result.gate_counts;
    println!(
        "{} single-qubit gates, {} oracle call, {} fan-out CNOT, depth {}",
        c.single_qubit, c.oracle_calls, c.fanout_cnots, c.layers
    );
    Ok(())
}
