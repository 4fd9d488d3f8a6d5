//! Runs every verification suite and prints one pass/fail line per suite.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines
//! even when everything passes. The seed can be pinned through the
//! `STEINBERG_SEED` environment variable.

use steinberg_core::limits::Limits;
use steinberg_core::verify::run_all;

#[test]
fn acceptance() {
    let limits = Limits::from_env();
    let seed = std::env::var("STEINBERG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xC0FFEE);
    let lines = run_all(&limits, seed);
    let mut all_passed = true;
    for (i, line) in lines.iter().enumerate() {
        println!("criterion {:2}: {}", i + 1, line.render());
        all_passed &= line.passed;
    }
    assert!(all_passed, "at least one verification suite failed");
}
