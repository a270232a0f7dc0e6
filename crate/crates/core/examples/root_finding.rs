//! Roots to coefficients and back, then critical points inside the hull.

use critpoly::geometry::{convex_hull, hull_distance};
use critpoly::poly::{from_roots, Complex, RootSet};
use critpoly::rootfind::{critical_points_detailed, find_roots, matching_distance, RootFindConfig};
use rand::{Rng, SeedableRng};

fn main() -> critpoly::error::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let zeros: Vec<Complex> = (0..20)
        .map(|_| Complex::from_polar(2.0 * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>()))
        .collect();
    let r = RootSet::new(zeros)?;
    let p = from_roots(&r);
    let cfg = RootFindConfig::default();

    let found = find_roots(p.coeffs(), &cfg)?;
    let d = matching_distance(r.roots(), found.roots.roots()).expect("same size");
    println!(
        "degree {}: {} Aberth sweeps, residual {:.1e}, matching distance {:.2e}",
        p.degree(),
        found.iterations,
        found.residual,
        d
    );

    let crit = critical_points_detailed(&r, &cfg)?;
    let hull = convex_hull(r.roots());
    let worst = crit.roots.iter().map(|&w| hull_distance(&hull, w)).fold(0.0, f64::max);
    println!(
        "{} critical points, converged = {}, farthest outside the hull of the zeros: {worst:.1e}",
        crit.roots.degree(),
        crit.converged
    );

    // repeated zeros are exact critical points
    let r = RootSet::from_reals(&[1.0, 1.0, 1.0, -2.0])?;
    println!("critical points of (z-1)^3 (z+2): {:?}", critpoly::rootfind::critical_points(&r, &cfg)?.roots());
    Ok(())
}
