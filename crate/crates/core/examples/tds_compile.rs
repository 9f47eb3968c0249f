//! From a machine to a dynamical system to a structured group-ring operator.
use zdforge::rational::fmt_rational;
use zdforge::tds::{
    build_tds, check_partition, compile_foolproof, estimate_rejection_measure, initial_measure, sample_check_stops,
    static_check_no_restart, CompileMode,
};
use zdforge::turing::corpus::immediate_reject;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = immediate_reject();
    let tds = build_tds(&f)?;
    println!("m={} n={} pieces={}", tds.m, tds.n, tds.pieces.len());
    println!("partition: {}  no restart: {}", check_partition(&tds), static_check_no_restart(&tds));
    println!("mu(I) = {}", fmt_rational(&initial_measure(&tds)));
    println!("stops: {}", sample_check_stops(&tds, 1000, 10, 0)?.all_stop());
    for l in 1..=3 {
        println!("rejected measure, words <= {l}: {}", fmt_rational(&estimate_rejection_measure(&f, l, 10)?.value));
    }

    let c = compile_foolproof(&f, CompileMode::Structured)?;
    println!("{}", serde_json::to_string_pretty(&c.manifest)?);
    print!("{}", c.operator.to_text().lines().take(8).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
