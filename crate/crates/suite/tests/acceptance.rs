//! One verdict line per acceptance criterion; exits non-zero if any fails.

use cylkit_suite::{run, run_all, CRITERIA};

fn main() {
    // `cargo test` passes harness flags; a filter argument limits the run
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results: Vec<_> = if wanted.is_empty() {
        run_all()
    } else {
        wanted.iter().filter_map(|&id| run(id)).collect()
    };
    for r in &results {
        println!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} passed ({} criteria)", results.len(), CRITERIA);
    if passed != results.len() {
        std::process::exit(1);
    }
}
