use clap::Parser;
use grl_cli::Cli;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    std::process::exit(grl_cli::run(&cli, argv));
}
