//! Inequality checkers and the degree-only bound formulas.
//!
//! Every checker returns a [`CheckOutcome`] carrying both sides, the slack
//! `rhs - lhs` and whether the instance sits on its equality case. Checkers
//! built on critical points share one [`Analysis`] so a fuzz trial runs the
//! root finder once.

use std::io::Write;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::geometry::{classify_configuration, gamma_from, sendov_from, sigma2, sigma_p, Configuration, GammaReport, Power};
use crate::poly::{centroid, weighted_centroid, Complex, RootSet, WeightVector};
use crate::rootfind::{critical_points, RootFindConfig};

/// Slack allowed on `|z_k| <= 1` preconditions.
pub const DISK_SLACK: f64 = 1e-12;
/// Tolerance of the averaging identity, relative to `1 + |rhs|`.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Tolerance policy: relative tolerances `tol * (1 + |rhs|)` for checks that
/// depend on the root finder, absolute ones for closed-form comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub iterative: f64,
    pub formula: f64,
    #[serde(skip)]
    pub rootfind: RootFindConfig,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            iterative: 1e-7,
            formula: 1e-12,
            rootfind: RootFindConfig::default(),
        }
    }
}

impl Tolerances {
    /// Used to re-verify suspicious outcomes.
    pub fn strict() -> Self {
        Self {
            iterative: 1e-12,
            formula: 1e-12,
            rootfind: RootFindConfig::strict(),
        }
    }

    /// Confirms an unpredicted equality. Slack that closes like the squared
    /// distance from collinearity is below rounding at the classifier's
    /// threshold, so anything above rounding is a real strict inequality.
    pub fn anomaly() -> Self {
        Self {
            iterative: 16.0 * f64::EPSILON,
            ..Self::strict()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub slack: f64,
    pub passed: bool,
    pub tol: f64,
    pub equality: bool,
    pub classification: Option<Configuration>,
    /// Whether the equality case is predicted for this configuration, when known.
    pub expected_equality: Option<bool>,
}

impl CheckOutcome {
    fn new(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            slack,
            passed: slack >= -tol,
            tol,
            equality: slack.abs() <= tol,
            classification: None,
            expected_equality: None,
        }
    }

    fn classified(mut self, class: Configuration, expected: Option<bool>) -> Self {
        self.classification = Some(class);
        self.expected_equality = expected;
        self
    }

    /// Equality observed without being predicted.
    pub fn unexpected_equality(&self) -> bool {
        self.equality && self.expected_equality == Some(false)
    }

    /// Equality predicted but not observed.
    pub fn missed_equality(&self) -> bool {
        !self.equality && self.expected_equality == Some(true)
    }
}

/// Zeros together with their critical points, computed once.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub roots: RootSet,
    pub critical: RootSet,
    pub centroid: Complex,
    pub class: Configuration,
}

impl Analysis {
    pub fn new(r: &RootSet, cfg: &RootFindConfig) -> Result<Self> {
        r.require_degree(2)?;
        Ok(Self {
            roots: r.clone(),
            critical: critical_points(r, cfg)?,
            centroid: centroid(r),
            class: classify_configuration(r),
        })
    }

    pub fn degree(&self) -> usize {
        self.roots.degree()
    }

    pub fn gamma(&self) -> GammaReport {
        gamma_from(&self.roots, self.critical.clone())
    }

    fn gamma_value(&self) -> f64 {
        self.critical
            .iter()
            .map(|w| (self.centroid - w).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

fn require_disk(r: &RootSet) -> Result<()> {
    if r.in_unit_disk(DISK_SLACK) {
        Ok(())
    } else {
        Err(invalid(format!(
            "all zeros must satisfy |z| <= 1, max modulus is {}",
            r.max_modulus()
        )))
    }
}

/// `sum |w_j|^2 <= |sum z_k|^2 / n^2 + (n-2)/n sum |z_k|^2`, equality iff collinear.
pub fn schoenberg(a: &Analysis, tol: &Tolerances) -> CheckOutcome {
    let n = a.degree() as f64;
    let lhs: f64 = a.critical.iter().map(|w| w.norm_sqr()).sum();
    let sum: Complex = a.roots.iter().sum();
    let rhs = sum.norm_sqr() / (n * n) + (n - 2.0) / n * a.roots.iter().map(|z| z.norm_sqr()).sum::<f64>();
    CheckOutcome::new("schoenberg", lhs, rhs, tol.iterative * (1.0 + rhs.abs()))
        .classified(a.class, Some(a.class.is_collinear()))
}

/// `gamma <= 1` for zeros in the closed unit disk.
pub fn theorem_1_1(a: &Analysis, tol: &Tolerances) -> Result<CheckOutcome> {
    require_disk(&a.roots)?;
    Ok(CheckOutcome::new("thm11", a.gamma_value(), 1.0, tol.iterative * 2.0).classified(a.class, None))
}

/// `sum |G - w_j|^2 = sum |w_j|^2 - (n-1) |G|^2`; holds by barycenter invariance.
pub fn averaging_identity(a: &Analysis, _tol: &Tolerances) -> CheckOutcome {
    let n = a.degree() as f64;
    let g = a.centroid;
    let lhs: f64 = a.critical.iter().map(|w| (g - w).norm_sqr()).sum();
    let rhs = a.critical.iter().map(|w| w.norm_sqr()).sum::<f64>() - (n - 1.0) * g.norm_sqr();
    CheckOutcome::new("identity", lhs, rhs, IDENTITY_TOL * (1.0 + rhs.abs())).classified(a.class, Some(true))
}

/// Equality case of the centroid bound in terms of `sigma_2`.
pub fn mt_equality_expected(n: usize, class: Configuration) -> bool {
    n == 2 || (n == 3 && class.is_collinear()) || class == Configuration::AllEqual
}

pub fn refined_factor(n: usize) -> f64 {
    ((n as f64 - 2.0) / (n as f64 - 1.0)).sqrt()
}

/// `gamma <= sqrt((n-2)/(n-1)) sigma_2`, no disk constraint.
pub fn theorem_mt(a: &Analysis, tol: &Tolerances) -> CheckOutcome {
    let n = a.degree();
    let expected = Some(mt_equality_expected(n, a.class));
    if n == 2 {
        // the lone critical point is the centroid and the factor vanishes
        return CheckOutcome::new("thm-mt", 0.0, 0.0, 0.0).classified(a.class, expected);
    }
    let rhs = refined_factor(n) * sigma2(&a.roots).value;
    CheckOutcome::new("thm-mt", a.gamma_value(), rhs, tol.iterative * (1.0 + rhs)).classified(a.class, expected)
}

/// `gamma <= sqrt((n-2)/(n-1))` for zeros in the closed unit disk.
pub fn theorem_mt1(a: &Analysis, tol: &Tolerances) -> Result<CheckOutcome> {
    require_disk(&a.roots)?;
    let n = a.degree();
    if n == 2 {
        return Ok(CheckOutcome::new("thm-mt1", 0.0, 0.0, 0.0).classified(a.class, Some(true)));
    }
    let rhs = refined_factor(n);
    Ok(CheckOutcome::new("thm-mt1", a.gamma_value(), rhs, tol.iterative * (1.0 + rhs)).classified(a.class, None))
}

/// `gamma <= 2 n^(1/(n-1)) / (n^(2/(n-1)) + 1)` for zeros in the closed unit disk.
pub fn pawlowski(a: &Analysis, tol: &Tolerances) -> Result<CheckOutcome> {
    require_disk(&a.roots)?;
    let rhs = pawlowski_upper(a.degree() as f64);
    Ok(CheckOutcome::new("pawlowski", a.gamma_value(), rhs, tol.iterative * (1.0 + rhs)).classified(a.class, None))
}

/// Conjectured `max_k min_j |z_k - w_j| <= sigma_p`; reported, never asserted.
pub fn borcea(a: &Analysis, p: Power, tol: &Tolerances) -> Result<CheckOutcome> {
    let rhs = sigma_p(&a.roots, p)?.value;
    let lhs = sendov_from(&a.roots, &a.critical);
    Ok(CheckOutcome::new("borcea", lhs, rhs, tol.iterative * (1.0 + rhs)).classified(a.class, None))
}

/// Conjectured `min_j |sum l_k z_k - w_j| <= sigma_p`; reported, never asserted.
pub fn generalized_borcea(a: &Analysis, l: &WeightVector, p: Power, tol: &Tolerances) -> Result<CheckOutcome> {
    let center = weighted_centroid(&a.roots, l)?;
    let rhs = sigma_p(&a.roots, p)?.value;
    let lhs = a
        .critical
        .iter()
        .map(|w| (center - w).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(CheckOutcome::new("generalized-borcea", lhs, rhs, tol.iterative * (1.0 + rhs)).classified(a.class, None))
}

pub fn check_schoenberg(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    Ok(schoenberg(&Analysis::new(r, cfg)?, &with_cfg(cfg)))
}

pub fn check_theorem_1_1(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    require_disk(r)?;
    theorem_1_1(&Analysis::new(r, cfg)?, &with_cfg(cfg))
}

pub fn check_averaging_identity(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    Ok(averaging_identity(&Analysis::new(r, cfg)?, &with_cfg(cfg)))
}

pub fn check_theorem_mt(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    Ok(theorem_mt(&Analysis::new(r, cfg)?, &with_cfg(cfg)))
}

pub fn check_theorem_mt1(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    require_disk(r)?;
    theorem_mt1(&Analysis::new(r, cfg)?, &with_cfg(cfg))
}

pub fn check_pawlowski_upper(r: &RootSet, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    require_disk(r)?;
    pawlowski(&Analysis::new(r, cfg)?, &with_cfg(cfg))
}

pub fn check_borcea(r: &RootSet, p: Power, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    borcea(&Analysis::new(r, cfg)?, p, &with_cfg(cfg))
}

pub fn check_generalized_borcea(r: &RootSet, l: &WeightVector, p: Power, cfg: &RootFindConfig) -> Result<CheckOutcome> {
    if l.len() != r.degree() {
        return Err(invalid("weight vector length does not match the degree"));
    }
    generalized_borcea(&Analysis::new(r, cfg)?, l, p, &with_cfg(cfg))
}

fn with_cfg(cfg: &RootFindConfig) -> Tolerances {
    Tolerances {
        rootfind: *cfg,
        ..Tolerances::default()
    }
}

// ---- degree-only bounds -------------------------------------------------

/// `n^(-1/(n-1))`, attained by `z^n - z`.
pub fn lower_bound(n: f64) -> f64 {
    (-n.ln() / (n - 1.0)).exp()
}

/// `2 n^(1/(n-1)) / (n^(2/(n-1)) + 1)`.
pub fn pawlowski_upper(n: f64) -> f64 {
    let x = (n.ln() / (n - 1.0)).exp();
    2.0 * x / (x * x + 1.0)
}

/// `1 - pawlowski_upper(n) = (x - 1)^2 / (x^2 + 1)` with `x = n^(1/(n-1))`, free of cancellation.
pub fn pawlowski_gap(n: f64) -> f64 {
    let t = n.ln() / (n - 1.0);
    let xm1 = t.exp_m1();
    xm1 * xm1 / ((2.0 * t).exp() + 1.0)
}

/// `1 - n^(-1/(n-1))`, free of cancellation.
pub fn lower_gap(n: f64) -> f64 {
    -(-n.ln() / (n - 1.0)).exp_m1()
}

/// `sqrt((n-2)/(n-1))`.
pub fn refined_upper(n: f64) -> f64 {
    ((n - 2.0) / (n - 1.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: u64,
    pub lower: f64,
    pub pawlowski_upper: f64,
    pub refined_upper: f64,
    pub lower_asymptote: f64,
    pub pawlowski_asymptote: f64,
}

impl BoundsRow {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("bounds need n >= 2, got {n}")));
        }
        let x = n as f64;
        let q = x.ln() / x;
        Ok(Self {
            n,
            lower: lower_bound(x),
            pawlowski_upper: pawlowski_upper(x),
            refined_upper: refined_upper(x),
            lower_asymptote: 1.0 - q,
            pawlowski_asymptote: 1.0 - 0.5 * q * q,
        })
    }

    /// `(1 - pawlowski_upper) / (1/2 (ln n / n)^2)`, tends to 1.
    pub fn pawlowski_ratio(&self) -> f64 {
        let x = self.n as f64;
        let q = x.ln() / x;
        pawlowski_gap(x) / (0.5 * q * q)
    }

    /// `(1 - lower) / (ln n / n)`, tends to 1.
    pub fn lower_ratio(&self) -> f64 {
        let x = self.n as f64;
        lower_gap(x) / (x.ln() / x)
    }

    /// `pawlowski_upper - refined_upper`, positive for every `n >= 3`.
    pub fn improvement(&self) -> f64 {
        self.pawlowski_upper - self.refined_upper
    }
}

pub fn bounds_table(ns: &[u64]) -> Result<Vec<BoundsRow>> {
    ns.iter().map(|&n| BoundsRow::new(n)).collect()
}

pub const BOUNDS_CSV_HEADER: &str = "n,lower,pawlowski_upper,refined_upper,lower_asymptote,pawlowski_asymptote";

/// Scientific notation with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, x)
}

/// CSV with 15 significant digits, LF line endings.
pub fn write_bounds_csv<W: Write>(rows: &[BoundsRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{BOUNDS_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            sig(r.lower, 15),
            sig(r.pawlowski_upper, 15),
            sig(r.refined_upper, 15),
            sig(r.lower_asymptote, 15),
            sig(r.pawlowski_asymptote, 15)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cfg() -> RootFindConfig {
        RootFindConfig::default()
    }

    fn square() -> RootSet {
        RootSet::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap()
    }

    fn three() -> RootSet {
        RootSet::from_reals(&[0.0, 1.0, -1.0]).unwrap()
    }

    #[test]
    fn schoenberg_examples() {
        let o = check_schoenberg(&three(), &cfg()).unwrap();
        assert!((o.lhs - 2.0 / 3.0).abs() < 1e-14 && (o.rhs - 2.0 / 3.0).abs() < 1e-15);
        assert!(o.equality && o.passed && o.expected_equality == Some(true));

        let o = check_schoenberg(&square(), &cfg()).unwrap();
        assert!(o.lhs < 1e-9);
        assert!((o.rhs - 2.0).abs() < 1e-15);
        assert!(!o.equality && o.passed);
        assert_eq!(o.classification, Some(Configuration::Generic));

        let z = c(0.3, -0.7);
        let o = check_schoenberg(&RootSet::new(vec![z, z]).unwrap(), &cfg()).unwrap();
        assert!((o.lhs - z.norm_sqr()).abs() < 1e-15 && o.equality);
    }

    #[test]
    fn theorem_1_1_examples() {
        let o = check_theorem_1_1(&RootSet::from_reals(&[1.0, -1.0]).unwrap(), &cfg()).unwrap();
        assert_eq!((o.lhs, o.rhs), (0.0, 1.0));
        let o = check_theorem_1_1(&RootSet::z_pow_n_minus_z(5).unwrap(), &cfg()).unwrap();
        assert!((o.lhs - 5f64.powf(-0.25)).abs() < 1e-12);
        assert!((o.lhs - 0.6687403).abs() < 1e-7 && o.passed);
        let o = check_theorem_1_1(&RootSet::from_reals(&[1.0; 6]).unwrap(), &cfg()).unwrap();
        assert_eq!(o.lhs, 0.0);
        assert!(check_theorem_1_1(&RootSet::from_reals(&[1.5, 0.0]).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn averaging_identity_examples() {
        let o = check_averaging_identity(&RootSet::from_reals(&[1.0, -1.0]).unwrap(), &cfg()).unwrap();
        assert_eq!((o.lhs, o.rhs), (0.0, 0.0));
        let o = check_averaging_identity(&three(), &cfg()).unwrap();
        assert!((o.lhs - 2.0 / 3.0).abs() < 1e-14 && o.equality);
        let o = check_averaging_identity(&RootSet::z_pow_n_minus_z(4).unwrap(), &cfg()).unwrap();
        let want = 3.0 * 4f64.powf(-2.0 / 3.0);
        assert!((o.lhs - want).abs() < 1e-12 && (o.rhs - want).abs() < 1e-12 && o.equality);
    }

    #[test]
    fn theorem_mt_examples() {
        let o = check_theorem_mt(&RootSet::new(vec![c(5.0, 0.0), c(-3.0, 2.0)]).unwrap(), &cfg()).unwrap();
        assert_eq!((o.lhs, o.rhs), (0.0, 0.0));
        assert!(o.equality && o.expected_equality == Some(true));

        let o = check_theorem_mt(&three(), &cfg()).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((o.lhs - s).abs() < 1e-14 && (o.rhs - s).abs() < 1e-14);
        assert!(o.equality && !o.unexpected_equality());

        let o = check_theorem_mt(&square(), &cfg()).unwrap();
        assert!(o.lhs < 1e-4);
        assert!((o.rhs - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(!o.equality && o.passed && o.expected_equality == Some(false));

        // collinear but n > 3 and not coincident: strict
        let o = check_theorem_mt(&RootSet::from_reals(&[0.0, 1.0, -1.0, 0.5]).unwrap(), &cfg()).unwrap();
        assert!(o.passed && !o.equality);
        let o = check_theorem_mt(&RootSet::from_reals(&[0.7; 5]).unwrap(), &cfg()).unwrap();
        assert!(o.equality && o.expected_equality == Some(true));
    }

    #[test]
    fn theorem_mt1_examples() {
        let o = check_theorem_mt1(&RootSet::new(vec![c(0.6, 0.8), c(-0.1, 0.2)]).unwrap(), &cfg()).unwrap();
        assert_eq!((o.lhs, o.rhs), (0.0, 0.0));
        let o = check_theorem_mt1(&three(), &cfg()).unwrap();
        assert!((o.rhs - 0.5f64.sqrt()).abs() < 1e-15 && o.passed && !o.equality);
        let o = check_theorem_mt1(&RootSet::z_pow_n_minus_z(10).unwrap(), &cfg()).unwrap();
        assert!((o.lhs - 10f64.powf(-1.0 / 9.0)).abs() < 1e-12);
        assert!((o.lhs - 0.7743).abs() < 1e-4 && (o.rhs - 0.9428).abs() < 1e-4);
        assert!(check_theorem_mt1(&RootSet::from_reals(&[2.0, 0.0, 0.0]).unwrap(), &cfg()).is_err());
    }

    #[test]
    fn pawlowski_examples() {
        let o = check_pawlowski_upper(&three(), &cfg()).unwrap();
        assert!((o.rhs - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let o = check_pawlowski_upper(&RootSet::z_pow_n_minus_z(4).unwrap(), &cfg()).unwrap();
        // 2 * 4^(1/3) / (4^(2/3) + 1)
        let want = 2.0 * 4f64.cbrt() / (4f64.cbrt().powi(2) + 1.0);
        assert!((o.rhs - want).abs() < 1e-15 && (o.rhs - 0.9019728766).abs() < 1e-10);
        assert!((o.lhs - 0.62996).abs() < 1e-5 && o.passed);
        let o = check_pawlowski_upper(&RootSet::from_reals(&[1.0, -1.0]).unwrap(), &cfg()).unwrap();
        assert_eq!(o.lhs, 0.0);
        assert!((o.rhs - 0.8).abs() < 1e-15);
    }

    #[test]
    fn borcea_examples() {
        let p2 = Power::Finite(2.0);
        let o = check_borcea(&RootSet::from_reals(&[1.0, -1.0]).unwrap(), p2, &cfg()).unwrap();
        assert!((o.lhs - 1.0).abs() < 1e-15 && (o.rhs - 1.0).abs() < 1e-15 && o.equality);
        let o = check_borcea(&RootSet::from_reals(&[0.4; 4]).unwrap(), Power::Finite(3.0), &cfg()).unwrap();
        assert_eq!((o.lhs, o.rhs), (0.0, 0.0));
        let o = check_borcea(&three(), p2, &cfg()).unwrap();
        assert!((o.lhs - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((o.rhs - 0.8164965809).abs() < 1e-10 && o.passed);
    }

    #[test]
    fn generalized_borcea_examples() {
        let p2 = Power::Finite(2.0);
        let r = RootSet::new(vec![c(0.2, 0.1), c(-0.5, 0.4), c(0.3, -0.6), c(0.7, 0.2)]).unwrap();
        let u = WeightVector::uniform(4).unwrap();
        let g = check_generalized_borcea(&r, &u, p2, &cfg()).unwrap();
        let mt = check_theorem_mt(&r, &cfg()).unwrap();
        assert!((g.lhs - mt.lhs).abs() < 1e-15);
        assert!(g.rhs >= mt.rhs);

        let v = WeightVector::vertex(4, 0).unwrap();
        let g = check_generalized_borcea(&r, &v, p2, &cfg()).unwrap();
        let w = critical_points(&r, &cfg()).unwrap();
        let want = w.iter().map(|x| (r.roots()[0] - x).norm()).fold(f64::INFINITY, f64::min);
        assert_eq!(g.lhs, want);

        let half = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let g = check_generalized_borcea(&three(), &half, p2, &cfg()).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((g.lhs - (0.5 - s).abs().min(0.5 + s)).abs() < 1e-14);
        assert!((g.lhs - 0.0773503).abs() < 1e-7 && (g.rhs - 0.8165).abs() < 1e-4);
        assert!(check_generalized_borcea(&three(), &v, p2, &cfg()).is_err());
    }

    #[test]
    fn bounds_rows() {
        let r = BoundsRow::new(3).unwrap();
        assert!((r.lower - 0.5773503).abs() < 1e-7);
        assert!((r.pawlowski_upper - 0.8660254).abs() < 1e-7);
        assert!((r.refined_upper - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7);
        let r = BoundsRow::new(2).unwrap();
        assert!((r.lower - 0.5).abs() < 1e-15 && (r.pawlowski_upper - 0.8).abs() < 1e-15);
        assert_eq!(r.refined_upper, 0.0);
        let r = BoundsRow::new(1_000_000).unwrap();
        assert!((r.pawlowski_ratio() - 1.0).abs() < 1e-3);
        let r = BoundsRow::new(1000).unwrap();
        assert!((r.lower_ratio() - 1.0).abs() < 1e-2);
        assert!(BoundsRow::new(1).is_err());
    }

    #[test]
    fn stable_gaps_match_direct_subtraction() {
        for n in [3.0, 10.0, 100.0] {
            assert!((pawlowski_gap(n) - (1.0 - pawlowski_upper(n))).abs() < 1e-14);
            assert!((lower_gap(n) - (1.0 - lower_bound(n))).abs() < 1e-14);
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_bounds_csv(&bounds_table(&[3]).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(BOUNDS_CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "3");
        assert_eq!(row[1], "5.77350269189626e-1");
        assert!(!text.contains('\r'));
    }
}
