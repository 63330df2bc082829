//! Binary entry point; all behavior lives in [`firmcat::cli`].

use clap::Parser;

fn main() {
    let cli = firmcat::cli::Cli::parse();
    std::process::exit(firmcat::cli::run(cli));
}
