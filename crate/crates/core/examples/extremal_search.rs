//! Multi-start search for large gamma, written as a CSV table.

use critpoly::search::{sharpness_report, write_sharpness_csv, SearchConfig};

fn main() -> critpoly::error::Result<()> {
    let template = SearchConfig { restarts: 16, ..SearchConfig::new(3, 1) };
    let rows = sharpness_report(&[3, 4, 5, 6, 8], &template)?;
    write_sharpness_csv(&rows, std::io::stdout().lock()).expect("stdout");
    Ok(())
}
