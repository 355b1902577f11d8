// Qudit cluster states: the stabilizer outcome products are deterministic
// while the CGLMP value conditioned on a_{N−2;0} = 1 drops below the
// classical bound d − 1, for any prime local dimension.

use gmnl::inequality::verify_qudit_cluster;

pub fn run() -> gmnl::Result<()> {
    for (n, d) in [(3usize, 2usize), (3, 3), (4, 3), (3, 5)] {
        let r = verify_qudit_cluster(n, d, gmnl::DEFAULT_TOL)?;
        println!("|C_{n}^{d}⟩:");
        println!(
            "  conditional CGLMP = {:.9} < d − 1 = {} → violated = {}",
            r.conditional_cglmp, r.classical_bound, r.cglmp_violated
        );
        println!("  stabilizer product probabilities: {:?}", r.stabilizer_probs);
        println!("  last-pair probability:            {:.9}", r.last_pair_prob);
        assert!(r.pass);
    }
    // Non-prime dimensions are rejected.
    assert!(verify_qudit_cluster(3, 4, gmnl::DEFAULT_TOL).is_err());
    println!("\nd = 4 rejected: the rescaling to unit weights needs invertible multipliers");
    Ok(())
}

fn main() {
    run().unwrap();
}
