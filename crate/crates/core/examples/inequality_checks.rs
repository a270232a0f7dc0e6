//! Every checker on one configuration.

use critpoly::geometry::Power;
use critpoly::inequalities::*;
use critpoly::poly::{Complex, RootSet, WeightVector};
use critpoly::rootfind::RootFindConfig;

fn show(o: &CheckOutcome) {
    println!(
        "{:<20} lhs {:.10}  rhs {:.10}  slack {:+.3e}  passed {}  equality {}",
        o.name, o.lhs, o.rhs, o.slack, o.passed, o.equality
    );
}

fn main() -> critpoly::error::Result<()> {
    let cfg = RootFindConfig::default();
    let r = RootSet::new(vec![
        Complex::new(0.8, 0.1),
        Complex::new(-0.3, 0.6),
        Complex::new(-0.2, -0.9),
        Complex::new(0.4, -0.2),
        Complex::new(-0.6, 0.0),
    ])?;
    let p2 = Power::Finite(2.0);
    show(&check_schoenberg(&r, &cfg)?);
    show(&check_averaging_identity(&r, &cfg)?);
    show(&check_theorem_1_1(&r, &cfg)?);
    show(&check_theorem_mt(&r, &cfg)?);
    show(&check_theorem_mt1(&r, &cfg)?);
    show(&check_pawlowski_upper(&r, &cfg)?);
    show(&check_borcea(&r, p2, &cfg)?);
    show(&check_generalized_borcea(&r, &WeightVector::new(vec![0.4, 0.3, 0.1, 0.1, 0.1])?, p2, &cfg)?);

    // collinear zeros sit on the equality case
    let line = RootSet::from_reals(&[-0.9, -0.2, 0.1, 0.7])?.scaled(Complex::from_polar(1.0, 0.4));
    let o = check_schoenberg(&line, &cfg)?;
    println!("collinear: {:?}, equality {}", o.classification, o.equality);
    Ok(())
}
