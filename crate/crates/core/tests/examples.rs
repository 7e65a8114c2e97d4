mod tail_sums_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tail_sums.rs"));
}

mod radius_table_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/radius_table.rs"));
}

mod thresholds_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/thresholds.rs"));
}

mod verify_claims_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_claims.rs"));
}

mod empirical_scan_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/empirical_scan.rs"));
}

mod kernel_identity_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kernel_identity.rs"));
}

mod plot_curves_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/plot_curves.rs"));
}

#[test]
fn tail_sums_example_runs() {
    tail_sums_example::run_example().expect("tail_sums example should run");
}

#[test]
fn radius_table_example_runs() {
    radius_table_example::run_example().expect("radius_table example should run");
}

#[test]
fn thresholds_example_runs() {
    thresholds_example::run_example().expect("thresholds example should run");
}

#[test]
fn verify_claims_example_runs() {
    verify_claims_example::run_example().expect("verify_claims example should run");
}

#[test]
fn empirical_scan_example_runs() {
    empirical_scan_example::run_example().expect("empirical_scan example should run");
}

#[test]
fn kernel_identity_example_runs() {
    kernel_identity_example::run_example().expect("kernel_identity example should run");
}

#[test]
fn plot_curves_example_runs() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var("HSECT_PLOT_DIR", dir.path());
    plot_curves_example::run_example().expect("plot example should run");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 3);
}
