//! Eigenvalue histogram of the Laplacian-like element in a finite quotient.
use zdforge::algebra::{parse_word, GeneratorAlphabet};
use zdforge::spectral::{build_quotient, convolution_matrix, spectrum_histogram};
use zdforge::spectral::quotient::DEFAULT_MAX_SIZE;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = parse_word("1 + 1 - t1 - T1", &GeneratorAlphabet::lamplighter(1))?;
    let q = build_quotient(5, 1)?;
    let m = convolution_matrix(&q, &t, DEFAULT_MAX_SIZE)?;
    print!("{}", spectrum_histogram(&m, 8)?.to_csv());
    Ok(())
}
