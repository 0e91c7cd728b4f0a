//! Dedicated acceptance gate: runs the same suite as `renorm selftest`
//! and prints one line per criterion, then fails if any criterion did.
//!
//! Run it alone with `cargo test -p renorm-cli --test acceptance -- --nocapture`.

use renorm_cli::acceptance::{render_lines, run_all};

#[test]
fn acceptance_criteria() {
    let outcomes = run_all();
    for line in render_lines(&outcomes) {
        println!("{line}");
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
    assert!(
        failed.is_empty(),
        "{} criterion(s) failed: {}",
        failed.len(),
        failed
            .iter()
            .map(|o| o.index.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
}
