use kissing_core::sdp::{build_sdp, solve, SolverSettings};
use std::env;

fn main() {
    let args: Vec<String> = env::args().collect();
    let n: u32 = args[1].parse().unwrap();
    let ct: f64 = args[2].parse().unwrap();
    let d: u32 = args[3].parse().unwrap();
    let p = build_sdp(n, ct, d).unwrap();
    let st = SolverSettings::default();
    let s = solve(&p, &st);
    println!("status {:?} obj {} iters {} gap {:.3e} pinf {:.3e} dinf {:.3e}",
        s.status, s.objective, s.iterations, s.duality_gap, s.primal_infeasibility, s.dual_infeasibility);
}
