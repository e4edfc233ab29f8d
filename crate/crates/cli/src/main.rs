use std::io::Write;

fn main() {
    let output = freelinks_cli::run_command(std::env::args());
    if !output.stdout.is_empty() {
        print!("{}", output.stdout);
    }
    if !output.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", output.stderr);
    }
    std::process::exit(output.code);
}
