//! Grothendieck group of the m-periodic derived category of the path algebra of A3.
//!
//! cargo run --release --example k0_a3 -- [m] [count] [seed]

use std::time::Instant;

use periodic_k0::grothendieck::{k0_report, SamplerConfig};
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let m = args.first().copied().unwrap_or(2) as usize;
    let count = args.get(1).copied().unwrap_or(200) as usize;
    let seed = args.get(2).copied().unwrap_or(7);
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::prime(5).unwrap());
    let start = Instant::now();
    let report = k0_report(&alg, m, &SamplerConfig { count, max_dim: 4, seed }).expect("presentation");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    eprintln!("{:.2?}", start.elapsed());
}
