use clap::Parser;

fn main() {
    let cli = convkit_harness::cli::Cli::parse();
    std::process::exit(convkit_harness::cli::run(cli, &mut std::io::stdout().lock()));
}
