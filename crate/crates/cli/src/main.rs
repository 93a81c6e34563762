use clap::Parser;
use koblab_cli::error::EXIT_USAGE;
use koblab_cli::{run, Cli};

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("KOBLAB_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| format!("KOBLAB_THREADS='{v}' is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        std::process::exit(EXIT_USAGE);
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
