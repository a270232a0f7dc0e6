//! sigma_p for a handful of exponents, with the minimizing centers.

use critpoly::geometry::{sigma_p, Power};
use critpoly::poly::{Complex, RootSet};

fn main() -> critpoly::error::Result<()> {
    let r = RootSet::new(vec![
        Complex::new(0.9, 0.1),
        Complex::new(-0.4, 0.7),
        Complex::new(-0.5, -0.6),
        Complex::new(0.2, -0.3),
        Complex::new(0.1, 0.2),
    ])?;
    for p in ["1", "1.5", "2", "3", "8", "inf"] {
        let v = sigma_p(&r, Power::parse(p)?)?;
        println!(
            "p = {p:>4}  sigma = {:.12}  center = {:+.8}{:+.8}i  {:?} ({} iterations)",
            v.value, v.center.re, v.center.im, v.solver, v.iterations
        );
    }

    // the minimal enclosing circle of (z+1)^(n-1) (z-1) has radius 1
    for n in [2, 5, 20] {
        let v = sigma_p(&RootSet::extremal_sigma_inf(n)?, Power::Infinite)?;
        println!("(z+1)^{}(z-1): sigma_inf = {}", n - 1, v.value);
    }
    Ok(())
}
