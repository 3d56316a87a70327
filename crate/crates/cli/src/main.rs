use clap::Parser;

fn main() {
    std::process::exit(waring_cli::run(waring_cli::Cli::parse()));
}
