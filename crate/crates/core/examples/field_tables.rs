//! Addition and multiplication tables for a small prime field.
//!
//! `cargo run --example field_tables -- 5`

use mqt::FieldSpec;

fn main() -> mqt::Result<()> {
    let p = std::env::args()
        .nth(1)
        .map_or(Ok(3), |s| s.parse())
        .expect("modulus must be an integer");
    let field = FieldSpec::new(p)?;
    let elems: Vec<_> = field.elements().collect();

    for (name, op) in [("+", 0), ("*", 1)] {
        println!("{field} {name}");
        for &a in &elems {
            let row: Vec<String> = elems
                .iter()
                .map(|&b| if op == 0 { a.add(b) } else { a.mul(b) }.map(|c| c.to_string()))
                .collect::<mqt::Result<_>>()?;
            println!("  {a} | {}", row.join(" "));
        }
    }

    print!("inverses:");
    for &a in elems.iter().skip(1) {
        print!(" {a}^-1={}", a.inv()?);
    }
    println!();
    Ok(())
}
