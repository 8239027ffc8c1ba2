use clap::Parser;

fn main() {
    let cli = fdb_operad::cli::Cli::parse();
    std::process::exit(fdb_operad::cli::run(&cli));
}
