//! How many vertices of the finite quotient look locally like the group.
use zdforge::algebra::GeneratorAlphabet;
use zdforge::rational::fmt_rational;
use zdforge::spectral::{build_quotient, verify_sofic_fraction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = GeneratorAlphabet::walker_lamp();
    for (n, r) in [(3, 1), (5, 2), (4, 2), (4, 3), (7, 3)] {
        let q = build_quotient(n, 1)?;
        println!("N={n} R={r}: {}", fmt_rational(&verify_sofic_fraction(&q, &alphabet, r)?));
    }
    Ok(())
}
