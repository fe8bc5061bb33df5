//! Cohomology of a periodic complex read from JSON.
//!
//! cargo run --example cohomology -- [algebra.json] [complex.json]

use periodic_k0::complex::cohomology;
use periodic_k0::grothendieck::class_of;
use periodic_k0::io::{parse_algebra, parse_complex, parse_json};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/");
    let mut args = std::env::args().skip(1);
    let alg_path = args.next().unwrap_or_else(|| format!("{dir}a3.json"));
    let cx_path = args.next().unwrap_or_else(|| format!("{dir}p2_to_p3_m3.json"));
    let alg = parse_algebra(&std::fs::read_to_string(alg_path).unwrap()).unwrap();
    let v = parse_complex(&alg, &parse_json(&std::fs::read_to_string(cx_path).unwrap()).unwrap()).unwrap();
    for i in 0..v.period() as i64 {
        println!("H^{i}: {:?}", cohomology(&alg, &v, i).module.dims());
    }
    println!("class: {:?}", class_of(&alg, &v));
}
