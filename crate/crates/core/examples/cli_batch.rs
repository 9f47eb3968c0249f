//! The batch commands are plain library calls; the binary only prints.
use zdforge::cli::run;

fn main() {
    for args in [
        vec!["zdforge", "quotient-kernel", "-e", "1 - t1", "--N", "4"],
        vec!["zdforge", "sofic-check", "--N", "6", "--R", "2"],
        vec!["zdforge", "tm", "run", "parity", "--input", "x,x,x"],
        vec!["zdforge", "reject-measure", "immediate-reject", "--L", "3"],
        vec!["zdforge", "verify-units", "--n", "2"],
        vec!["zdforge", "parse", "-e", "1 + b1"],
    ] {
        let out = run(&args);
        println!("$ {}\n[exit {}] {}{}", args[1..].join(" "), out.code, out.stdout, out.stderr);
    }
}
