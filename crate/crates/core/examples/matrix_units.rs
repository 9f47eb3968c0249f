//! Matrix units inside Q[Z/2 wr Z] built from cylinder idempotents.
use zdforge::duality::{chi, embed_matrix, matrix_unit, verify_relations};
use zdforge::duality::matrix_units::matrix_unit_trace_scale;
use zdforge::rational::{fmt_rational, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        let (count, failures) = verify_relations(n)?;
        println!("n={n}: {count} relations, {} failures, tr(chi_1) = {}", failures.len(), fmt_rational(&chi(n, 1)?.trace_vn()));
    }

    let e12 = matrix_unit(2, 1, 2)?;
    println!("E_12 has {} terms", e12.len());

    // tr(M) = 2^(n+2) tr_vN(i_n(M))
    let m = vec![vec![rat(1, 2), rat(3, 1)], vec![rat(-1, 1), rat(5, 3)]];
    let image = embed_matrix(&m)?;
    let scale = matrix_unit_trace_scale(2);
    println!("tr M = {}, 2^4 tr_vN = {}", fmt_rational(&(rat(1, 2) + rat(5, 3))), fmt_rational(&(image.trace_vn() * scale)));
    Ok(())
}
