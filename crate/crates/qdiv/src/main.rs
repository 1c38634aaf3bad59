use clap::Parser;
use qdiv::cli::{run, Cli};

fn main() {
    // QDIV_THREADS caps the worker count used by the property suites
    if let Ok(raw) = std::env::var("QDIV_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: QDIV_THREADS must be a positive integer, got {raw:?}");
                std::process::exit(2);
            }
        }
    }
    let cli = Cli::parse();
    std::process::exit(run(cli));
}
