// The caterpillar inequality for an arbitrary spine/leg profile, its exact
// quantum margin 2√2 − 2, and the white-noise visibility threshold
// (2N − L)/(2N − L + √2 − 1).

use gmnl::inequality::{
    caterpillar_behavior, caterpillar_lhs, caterpillar_quantum_margin, noise_threshold,
};

pub fn run() -> gmnl::Result<()> {
    // Spine of 5 with two legs at position 2 and one at position 4 (N = 8).
    let legs = [0usize, 2, 0, 1, 0];
    let spine = legs.len();
    let (labeling, behavior) = caterpillar_behavior(&legs, 1.0)?;
    let n = labeling.vertex_count();
    let report = caterpillar_lhs(&behavior, &labeling, gmnl::DEFAULT_TOL)?;
    println!("caterpillar with legs {legs:?}: N = {n}, L = {spine}");
    println!("  lhs    = {:.9}", report.lhs);
    println!("  bound  = 2(2N − L) = {}", report.bound);
    println!(
        "  margin = {:.9} (exact quantum margin 2√2 − 2 = {:.9})",
        report.margin,
        caterpillar_quantum_margin()
    );

    let threshold = noise_threshold(n, spine)?;
    println!("\nvisibility threshold η* = {threshold:.9}");
    for eta in [threshold - 1e-3, threshold + 1e-3, 1.0] {
        let (lab, noisy) = caterpillar_behavior(&legs, eta)?;
        let r = caterpillar_lhs(&noisy, &lab, gmnl::DEFAULT_TOL)?;
        println!("  η = {eta:.6}: lhs = {:.6}, violated = {}", r.lhs, r.violated);
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
