use clap::Parser;
use hforest::cli::{dispatch, Cli};
use std::io::Write;

fn main() {
    let cli = Cli::parse();
    let (code, out) = dispatch(&cli);
    if code == 2 {
        let _ = write!(std::io::stderr(), "{out}");
    } else {
        let _ = write!(std::io::stdout(), "{out}");
    }
    std::process::exit(code);
}
