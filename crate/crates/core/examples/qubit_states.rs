//! Every state of a small GF(2) register, and what measuring it can return.

use mqt::{Backend, FieldSpec, State};

fn main() -> mqt::Result<()> {
    for qubits in 1..=2 {
        let states = State::enumerate(qubits, FieldSpec::GF2, Backend::Dense)?;
        println!("{qubits} qubit(s): {} states", states.len());
        for s in &states {
            let outcomes: Vec<String> = s.support().iter().map(|&i| format!("{i:0qubits$b}")).collect();
            println!("  {:<40} possible outcomes {{{}}}", s.to_string(), outcomes.join(","));
        }
    }

    // Over GF(3) coefficients other than 1 appear.
    let gf3 = FieldSpec::new(3)?;
    let s = State::enumerate(1, gf3, Backend::Sparse)?;
    println!("GF(3), 1 qubit: {} states, e.g. {}", s.len(), s.last().unwrap());

    let plus = State::plus_ket(Backend::Dense);
    let seen: Vec<usize> = (0..8).map(|seed| plus.measure(seed).index).collect();
    println!("measuring {plus} with seeds 0..8: {seen:?}");
    Ok(())
}
