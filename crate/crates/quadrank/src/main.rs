use clap::Parser;
use quadrank::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("{}", e.payload);
        std::process::exit(e.code);
    }
}
