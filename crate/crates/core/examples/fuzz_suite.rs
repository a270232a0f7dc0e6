//! A small seeded fuzz run over all suites. Pass a trial count to scale it up.

use critpoly::fuzz::{run, FuzzConfig};

fn main() -> critpoly::error::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let cfg = FuzzConfig { trials, degrees: vec![2, 3, 5, 8, 12], seed: 2024, ..Default::default() };
    let report = run(&cfg)?;
    println!("{:<19} {:>3} {:>7} {:>7} {:>7} {:>8} {:>12}", "suite", "n", "passed", "equal", "anomal", "recheck", "min slack");
    for s in &report.suites {
        println!(
            "{:<19} {:>3} {:>7} {:>7} {:>7} {:>8} {:>12.3e}",
            s.suite.name(),
            s.degree,
            s.passed,
            s.equalities,
            s.anomalies,
            s.rechecked,
            s.min_relative_slack
        );
    }
    println!("hard failures {}, anomalies {}", report.hard_failures(), report.anomalies());
    Ok(())
}
