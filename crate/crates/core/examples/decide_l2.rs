//! The moment test for l2-zero-divisors, with and without a certified exponent.
use zdforge::algebra::{normalize_positive, parse_word, GeneratorAlphabet};
use zdforge::rational::{fmt_rational, rat};
use zdforge::spectral::{decide_l2_zero_divisor, moments, required_exponent, verify_lueck_bound};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = GeneratorAlphabet::lamplighter(1);
    println!("required exponent for C=1, k=1: {}", required_exponent(1, 1));

    // torsion: (1-a)/2 is an idempotent, so the certified run exits early
    let v = decide_l2_zero_divisor(&parse_word("1 - a1", &alphabet)?, 1, None, 100_000)?;
    println!("1 - a1: {}", v.to_json());

    // random walk: moments are central binomials, the run is heuristic
    let t = parse_word("1 - t1", &alphabet)?;
    let v = decide_l2_zero_divisor(&t, 1, Some(40), 100_000)?;
    println!("1 - t1 at n=40: {}", v.to_json());

    let (p, c) = normalize_positive(&t)?;
    let ms = moments(&p, 8, 10_000)?;
    println!("moments: {}", ms.iter().map(fmt_rational).collect::<Vec<_>>().join(" "));
    let report = verify_lueck_bound(&p, &rat(0, 1), &[2, 10, 100, 1000], 100_000)?;
    println!("C={c}, bound holds at n in {{2,10,100,1000}}: {}", report.all_hold());
    Ok(())
}
