use clap::Parser;

fn main() {
    let cli = hyperinv::cli::Cli::parse();
    std::process::exit(hyperinv::cli::main_with(cli));
}
