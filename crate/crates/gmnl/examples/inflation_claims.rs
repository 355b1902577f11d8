// Subnetwork-equivalence checking: run the shipped claim suites, show how
// a corrupted claim fails with both canonical signatures, and check a
// small hand-written script from JSON.

use gmnl::inflation::{check_claims, parse_claim_script, Claim, Expect, NetRef};
use gmnl::scripts;

pub fn run() -> gmnl::Result<()> {
    for suite in ["appendixB", "appendixC", "appendixD"] {
        let script = scripts::embedded_suite(suite)?;
        let report = check_claims(&script)?;
        println!(
            "suite {suite}: {}/{} claims pass",
            report.results.iter().filter(|r| r.pass).count(),
            report.results.len()
        );
    }

    // A claim the diagrams genuinely falsify: the A-side marginal changes
    // when the B-excluding source splits.
    let corrupted = vec![Claim {
        name: "a_side_untouched".into(),
        net_a: NetRef::family("fig2_I0"),
        subset_a: vec!["A".into(), "C".into(), "D".into()],
        net_b: NetRef::family("fig2_I1"),
        subset_b: vec!["A".into(), "C".into(), "D".into()],
        expect: Expect::Equivalent,
        relabel_b: None,
    }];
    let report = check_claims(&corrupted)?;
    let r = &report.results[0];
    println!("\ncorrupted claim `{}` passes = {}", r.name, r.pass);
    println!("  signature A: {}", r.signature_a.as_deref().unwrap_or("-"));
    println!("  signature B: {}", r.signature_b.as_deref().unwrap_or("-"));

    // Scripts are plain JSON data; new chains need no rebuild.
    let script = parse_claim_script(
        r#"[{
            "name": "two_party_box",
            "netA": {"parties": ["A", "B"], "sources": [{"type": "s", "connected": ["A", "B"]}]},
            "subsetA": ["A", "B"],
            "netB": {"parties": ["X", "Y"], "sources": [{"type": "s", "connected": ["X", "Y"]}]},
            "subsetB": ["X", "Y"],
            "expect": "equivalent"
        }]"#,
    )?;
    let report = check_claims(&script)?;
    println!("\nhand-written script: all pass = {}", report.all_pass);
    Ok(())
}

fn main() {
    run().unwrap();
}
