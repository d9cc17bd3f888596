use clap::Parser;

fn main() {
    let cli = isoaxis::Cli::parse();
    if let Err(e) = isoaxis::run(cli) {
        eprintln!("isoaxis: {e}");
        std::process::exit(e.exit_code());
    }
}
