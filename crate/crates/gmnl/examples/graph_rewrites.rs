// Graph rewrites and their state-level counterparts: local
// complementation (with the per-site Clifford check), vertex
// multiplication, rescaling a weighted line to unit weights, and
// caterpillar classification.

use gmnl::multigraph::Multigraph;
use gmnl::sim::{graph_state, lc_local_clifford_qubit};

pub fn run() -> gmnl::Result<()> {
    // Local complementation at the centre of a 3-path adds the outer edge.
    let path = Multigraph::line(3, 2)?;
    let star = path.local_complementation(1)?;
    println!("3-path edges: {:?}", path.edges());
    println!("after complementing at vertex 1: {:?}", star.edges());

    // The matching local Cliffords map one graph state onto the other.
    let mut moved = graph_state(&path)?;
    for (site, u) in lc_local_clifford_qubit(&path, 1)?.iter().enumerate() {
        moved.apply_single(site, u);
    }
    let target = graph_state(&star)?;
    println!(
        "state overlap after the per-site unitaries: {:.12}",
        moved.overlap_modulus(&target)
    );

    // Vertex multiplication rescales edge multiplicities mod d.
    let g = Multigraph::new(2, 5, &[(0, 1, 1)])?;
    let (doubled, invertible) = g.vertex_multiplication(1, 2)?;
    println!(
        "\nd = 5 edge weight 1, multiply vertex 1 by 2 → weight {} (invertible: {invertible})",
        doubled.weight(0, 1)
    );

    // A weighted qutrit line rescales to unit weights, one vertex at a time.
    let weighted = Multigraph::new(4, 3, &[(0, 1, 2), (1, 2, 2), (2, 3, 1)])?;
    let (unit, log) = weighted.normalize_linear_graph()?;
    println!("weighted qutrit line {:?}", weighted.edges());
    println!("  rescaled to {:?} via multiplications {log:?}", unit.edges());

    // Caterpillar classification recovers the spine/leg labels.
    let cat = Multigraph::caterpillar(2, &[0, 3, 1, 0, 1, 0])?;
    let lab = cat.classify_caterpillar()?;
    println!(
        "\ncaterpillar with {} vertices: spine {:?}, legs per position {:?}",
        lab.vertex_count(),
        lab.spine(),
        lab.leg_counts()
    );

    // Small states export as JSON amplitude arrays for debugging.
    let pair = graph_state(&Multigraph::line(2, 2)?)?;
    println!("\n2-vertex graph state amplitudes: {}", pair.to_json_amplitudes());
    Ok(())
}

fn main() {
    run().unwrap();
}
