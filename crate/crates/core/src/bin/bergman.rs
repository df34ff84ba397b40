use clap::Parser;

use bergman_core::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
