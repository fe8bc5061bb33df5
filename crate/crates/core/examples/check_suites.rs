//! Runs every property battery.
//!
//! cargo run --release --example check_suites -- [instances] [seed]

use periodic_k0::check::{run_suite, Suite};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let instances = args.first().copied().unwrap_or(200) as usize;
    let seed = args.get(1).copied().unwrap_or(0);
    for suite in Suite::ALL {
        let r = run_suite(suite, instances, seed);
        for p in &r.properties {
            let status = if p.failures == 0 { "ok" } else { "FAILED" };
            println!("{suite:?}/{}: {} instances, {status}", p.name, p.instances);
            if let Some(f) = &p.first_failure {
                println!("    {f}");
            }
        }
    }
}
