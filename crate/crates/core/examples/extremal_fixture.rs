//! gamma of z^n - z against n^(-1/(n-1)).

use critpoly::geometry::gamma;
use critpoly::poly::RootSet;
use critpoly::rootfind::RootFindConfig;

fn main() -> critpoly::error::Result<()> {
    let cfg = RootFindConfig::default();
    println!("{:>3}  {:>20}  {:>20}  {:>9}", "n", "gamma", "n^(-1/(n-1))", "error");
    for n in 3..=20 {
        let g = gamma(&RootSet::z_pow_n_minus_z(n)?, &cfg)?.gamma;
        let want = (n as f64).powf(-1.0 / (n as f64 - 1.0));
        println!("{n:>3}  {g:>20.16}  {want:>20.16}  {:>9.2e}", (g - want).abs());
    }
    Ok(())
}
