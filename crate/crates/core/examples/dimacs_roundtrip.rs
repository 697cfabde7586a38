//! Parse a DIMACS CNF, show diagnostics for malformed input, and decide the
//! formula with the circuit.

use mqt::{format_dimacs, parse_dimacs, parse_dimacs_with, run_unique_sat, BoolFn, ParseOptions, RunOptions};

const FORMULA: &str = "c x1 and not x2 and (x2 or x3)
p cnf 3 3
1 0
-2 0
2 3 0
";

fn main() -> mqt::Result<()> {
    let cnf = parse_dimacs(FORMULA.as_bytes()).expect("well-formed");
    print!("canonical form:\n{}", format_dimacs(&cnf));
    assert_eq!(parse_dimacs(format_dimacs(&cnf).as_bytes()).unwrap(), cnf);

    let f = BoolFn::from_cnf(&cnf)?;
    let result = run_unique_sat(&f, &RunOptions::default())?;
    println!(
        "models: {:?}, verdict: {}",
        f.satisfying_assignments(),
        result.verdict.unwrap()
    );

    for bad in [
        "p cnf 2 1\n1 3 0\n",
        "p cnf 2\n1 0\n",
        "p cnf 2 1\n1 x 0\n",
        "p cnf 2 2\n1 0\n",
    ] {
        let err = parse_dimacs(bad.as_bytes()).unwrap_err();
        println!("{:?} -> {}", bad, err);
    }

    let sloppy = "p cnf 2 1\n1 0\n-2 0\n%\n0\n";
    let lenient = parse_dimacs_with(sloppy.as_bytes(), &ParseOptions { lenient: true }).unwrap();
    println!("lenient parse kept {} clauses", lenient.clauses().len());
    Ok(())
}
