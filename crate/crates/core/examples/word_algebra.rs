//! Words in Z[(Z/2 wr Z)^d]: parse, multiply, star, trace, normalize.
use zdforge::algebra::{normalize_positive, parse_word, text, to_word, GeneratorAlphabet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = GeneratorAlphabet::lamplighter(1);
    let t = parse_word("1 - t1", &alphabet)?;
    let tt = t.star().mul(&t)?;
    println!("T       = {}", to_word(&t)?);
    println!("T*T     = {}", to_word(&tt)?);
    println!("tr(T*T) = {}", tt.trace_vn());

    let (p, c) = normalize_positive(&t)?;
    // P has rational coefficients, so it is shown in the element file format
    println!("P = T*T / {c}, tr P = {}", p.trace_vn());
    print!("{}", text::to_text(&p));

    // the lamp generator is an involution
    let a = parse_word("a1", &alphabet)?;
    assert_eq!(a.mul(&a)?, parse_word("1", &alphabet)?);

    print!("{}", text::to_text(&parse_word("a1 t1 + a1 t1 - T1", &alphabet)?));
    Ok(())
}
