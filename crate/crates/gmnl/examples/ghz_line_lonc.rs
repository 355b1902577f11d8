// The GHZ-line inequality: quantum statistics reach 2 + 2√2 while any
// deterministic strategy with t < n − 1 rounds of one-way neighbour
// communication stays at the bound 4. At t = n − 1 the first input leaks
// all the way across and the algebraic maximum 6 becomes reachable.

use gmnl::behavior::quantum_behavior;
use gmnl::inequality::{ghz_line_functional, ghz_line_lhs, ghz_line_settings};
use gmnl::lonc::{brute_force_lonc_max, ghz_line_lonc_alphabets};
use gmnl::sim::ghz_state;

pub fn run() -> gmnl::Result<()> {
    for n in [3usize, 4, 5] {
        let psi = ghz_state(n, 2)?;
        let behavior = quantum_behavior(&psi, &ghz_line_settings(n)?)?;
        let quantum = ghz_line_lhs(&behavior, gmnl::DEFAULT_TOL)?;
        println!("n = {n}: quantum lhs = {:.9} (bound {})", quantum.lhs, quantum.bound);

        let functional = ghz_line_functional(n)?;
        let alphabets = ghz_line_lonc_alphabets(n);
        for t in 0..n {
            let max = brute_force_lonc_max(&functional, n, t, &alphabets)?;
            let reach = if t < n - 1 { "local" } else { "input reaches across" };
            println!("  t = {t}: deterministic maximum = {max} ({reach})");
        }
        println!();
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
