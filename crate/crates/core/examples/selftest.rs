//! Runs the randomized self-test suites for a seed.

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let results = polyfactor::cli::selftest_results(seed);
    for r in &results {
        println!("{}", r.summary());
    }
    if results.iter().any(|r| !r.passed()) {
        std::process::exit(1);
    }
}
