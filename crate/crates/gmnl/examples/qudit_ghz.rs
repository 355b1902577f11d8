// Qudit GHZ states: perfect pairwise outcome correlations coexist with a
// conditional CGLMP violation for every local dimension, prime or not.

use gmnl::inequality::verify_qudit_ghz;

pub fn run() -> gmnl::Result<()> {
    for (n, d) in [(3usize, 2usize), (4, 2), (3, 3), (3, 4), (3, 6)] {
        let r = verify_qudit_ghz(n, d, gmnl::DEFAULT_TOL)?;
        println!("|GHZ_{n}^{d}⟩:");
        println!(
            "  conditional CGLMP = {:.9} < d − 1 = {} → violated = {}",
            r.conditional_cglmp, r.classical_bound, r.cglmp_violated
        );
        println!("  equality probabilities: {:?}", r.correlation_probs);
        assert!(r.pass);
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
