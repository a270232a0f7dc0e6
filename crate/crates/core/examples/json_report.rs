//! The command-line front end driven in-process: a spec file in, a report out.

use critpoly::cli;
use critpoly::poly::{from_roots, RootSet};
use critpoly::report::{to_json_string, PolynomialSpec};

fn main() -> critpoly::error::Result<()> {
    let dir = std::env::temp_dir().join("critpoly-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("z5.json");
    let spec = PolynomialSpec::from_coeffs(&from_roots(&RootSet::z_pow_n_minus_z(5)?));
    std::fs::write(&path, to_json_string(&spec)).expect("write spec");

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["critpoly", "gamma", path.to_str().unwrap()], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
    Ok(())
}
