//! Runs every acceptance criterion at zero tolerance and prints one line each.
//! `LOOPSLICE_SEED` and `LOOPSLICE_PRECISION` override the defaults.

use loopslice::acceptance::{run_all, Config};

fn env_or<T: std::str::FromStr>(key: &str, default: T) -> T {
    std::env::var(key)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn main() {
    let defaults = Config::default();
    let cfg = Config {
        seed: env_or("LOOPSLICE_SEED", defaults.seed),
        precision: env_or("LOOPSLICE_PRECISION", defaults.precision),
    };
    println!(
        "acceptance suite, seed {}, precision {}",
        cfg.seed, cfg.precision
    );
    let results = run_all(cfg);
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
