//! Drive the command-line front end in-process and print its JSON report.
use clap::Parser;
use hdiv::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse_from([
        "hdiv",
        "cond",
        "--element",
        "tet",
        "--order",
        "2",
        "--variant",
        "second",
    ]);
    match execute(&cli) {
        Ok(out) => print!("{}", out.json),
        Err(e) => eprintln!("{e}"),
    }
}
