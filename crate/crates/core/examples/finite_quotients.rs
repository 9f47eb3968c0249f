//! Exact kernels of convolution matrices in Z/2 wr Z/N.
use zdforge::algebra::{parse_word, GeneratorAlphabet};
use zdforge::rational::fmt_rational;
use zdforge::spectral::{build_quotient, convolution_matrix, kernel_dim_exact};
use zdforge::spectral::quotient::DEFAULT_MAX_SIZE;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = parse_word("1 - t1", &GeneratorAlphabet::lamplighter(1))?;
    for n in 2..=8 {
        let q = build_quotient(n, 1)?;
        let m = convolution_matrix(&q, &t, DEFAULT_MAX_SIZE)?;
        println!("N={n}: |G|={:4}  dim ker = {}", m.size, fmt_rational(&kernel_dim_exact(&m)));
    }
    Ok(())
}
