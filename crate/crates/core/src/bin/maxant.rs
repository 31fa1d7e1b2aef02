use clap::Parser;

fn main() {
    let cli = maxant::cli::Cli::parse();
    std::process::exit(maxant::cli::run(cli));
}
