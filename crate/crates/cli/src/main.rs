use clap::Parser;
use hypersieve_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let out = execute(cli);
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
