//! Degree-only bounds as CSV, then the asymptotic ratios.

use critpoly::inequalities::{bounds_table, write_bounds_csv};

fn main() -> critpoly::error::Result<()> {
    let ns = [2, 3, 4, 5, 10, 100, 1_000, 10_000, 1_000_000];
    let rows = bounds_table(&ns)?;
    write_bounds_csv(&rows, std::io::stdout().lock()).expect("stdout");
    println!();
    for r in rows.iter().filter(|r| r.n >= 3) {
        println!(
            "n = {:>7}  pawlowski - refined = {:.3e}  pawlowski ratio {:.6}  lower ratio {:.6}",
            r.n,
            r.improvement(),
            r.pawlowski_ratio(),
            r.lower_ratio()
        );
    }
    Ok(())
}
