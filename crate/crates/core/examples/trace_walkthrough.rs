//! Step through the circuit for one function and check each intermediate
//! state against the expected support.

use mqt::{trace, Backend, BoolFn, StepLabel};

fn main() -> mqt::Result<()> {
    let n = 2;
    let f = BoolFn::point(n, 0b10)?;
    let t = trace(&f, Backend::Dense)?;

    println!("f = {f}");
    for step in &t.steps {
        println!("{:<9} {}", step.label.name(), step.state);
    }

    // After the oracle, |0 x⟩ has become |f(x) x⟩ for every input x.
    let expected: Vec<usize> = {
        let mut v: Vec<usize> = (0..1 << n).map(|x| (usize::from(f.eval(x)) << n) | x).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(t.state(StepLabel::Oracle).support(), expected);
    println!("oracle step support matches {{|f(x) x⟩}}");
    Ok(())
}
