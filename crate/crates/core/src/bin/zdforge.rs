use std::io::Write;

fn main() {
    zdforge::cli::init_threads();
    let out = zdforge::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
