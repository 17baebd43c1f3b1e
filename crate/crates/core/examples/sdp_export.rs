use kissing_core::sdp::{build_sdp, export_problem};
use std::env;

fn main() {
    let args: Vec<String> = env::args().collect();
    let n: u32 = args[1].parse().unwrap();
    let ct: f64 = args[2].parse().unwrap();
    let d: u32 = args[3].parse().unwrap();
    print!("{}", export_problem(&build_sdp(n, ct, d).unwrap()));
}
