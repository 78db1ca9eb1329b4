use clap::Parser;

fn main() {
    let cli = lamstir::cli::Cli::parse();
    std::process::exit(lamstir::cli::run(cli));
}
