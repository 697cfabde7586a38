//! The 16 linear maps on one GF(2) qubit: which are valid evolutions, and
//! what each does to the three qubit states.

use mqt::{compose, enumerate_1q_maps, Backend, FieldSpec, Gate2, State};

fn main() -> mqt::Result<()> {
    let census = enumerate_1q_maps(FieldSpec::GF2)?;
    let inputs = [
        ("|0⟩", State::zero_ket(Backend::Dense)),
        ("|1⟩", State::one_ket(Backend::Dense)),
        ("|+⟩", State::plus_ket(Backend::Dense)),
    ];

    for (title, maps) in [
        ("invertible", &census.invertible),
        ("non-invertible", &census.non_invertible),
    ] {
        println!("{title}: {}", maps.len());
        for g in maps {
            let images: Vec<String> = inputs
                .iter()
                .map(|(name, s)| g.act(s.as_vector()).map(|v| format!("{name}->{v}")))
                .collect::<mqt::Result<_>>()?;
            println!("  {g}  {}", images.join("  "));
        }
    }

    let (s, s_dag) = (Gate2::s(), Gate2::s_dag());
    println!("S·S = {}", compose(&s, &s)?);
    println!("S·S_DAG = {}", compose(&s, &s_dag)?);
    println!("inverse of S by adjugate = {}", s.inverse()?);
    Ok(())
}
