//! Every example must stay runnable; each is included and executed here.

#[allow(dead_code)]
mod four_cluster {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/four_cluster.rs"));
}

#[allow(dead_code)]
mod caterpillar_noise {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/caterpillar_noise.rs"));
}

#[allow(dead_code)]
mod qudit_cluster {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qudit_cluster.rs"));
}

#[allow(dead_code)]
mod qudit_ghz {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qudit_ghz.rs"));
}

#[allow(dead_code)]
mod ghz_line_lonc {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ghz_line_lonc.rs"));
}

#[allow(dead_code)]
mod prepare_cluster {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prepare_cluster.rs"));
}

#[allow(dead_code)]
mod inflation_claims {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/inflation_claims.rs"));
}

#[allow(dead_code)]
mod graph_rewrites {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graph_rewrites.rs"));
}

#[test]
fn four_cluster_runs() {
    four_cluster::run().expect("example should run");
}

#[test]
fn caterpillar_noise_runs() {
    caterpillar_noise::run().expect("example should run");
}

#[test]
fn qudit_cluster_runs() {
    qudit_cluster::run().expect("example should run");
}

#[test]
fn qudit_ghz_runs() {
    qudit_ghz::run().expect("example should run");
}

#[test]
fn ghz_line_lonc_runs() {
    ghz_line_lonc::run().expect("example should run");
}

#[test]
fn prepare_cluster_runs() {
    prepare_cluster::run().expect("example should run");
}

#[test]
fn inflation_claims_runs() {
    inflation_claims::run().expect("example should run");
}

#[test]
fn graph_rewrites_runs() {
    graph_rewrites::run().expect("example should run");
}
