//! How close the conjectured variance bounds come to failing on random zeros.

use critpoly::fuzz::{run, FuzzConfig, Suite};
use critpoly::geometry::Power;

fn main() -> critpoly::error::Result<()> {
    for p in ["1", "2", "inf"] {
        let cfg = FuzzConfig {
            suites: vec![Suite::Borcea, Suite::GeneralizedBorcea],
            degrees: vec![3, 4, 6, 9],
            trials: 2000,
            seed: 99,
            p: Power::parse(p)?,
            ..Default::default()
        };
        let report = run(&cfg)?;
        for s in &report.suites {
            println!(
                "p = {p:>3}  {:<19} n = {}  max lhs/rhs = {:.6}  violations = {}",
                s.suite.name(),
                s.degree,
                s.max_ratio,
                s.conjecture_violations
            );
        }
    }
    Ok(())
}
