use clap::Parser;
use perarfima_cli::{run, Cli, RunConfig};

fn main() {
    let cfg = RunConfig::from_cli(Cli::parse());
    if let Err(e) = run(&cfg) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
