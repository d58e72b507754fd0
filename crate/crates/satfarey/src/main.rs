use clap::Parser;
use satfarey::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("satfarey: {e}");
        std::process::exit(e.exit_code());
    }
}
