//! Simultaneous root finding by Aberth–Ehrlich iteration.
//!
//! Two targets share one iteration engine: a plain coefficient vector
//! evaluated by Horner's scheme, and the derivative of a polynomial given by
//! its zeros, evaluated through the logarithmic derivative so that the
//! coefficients of `F'` never enter the Newton step.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{expand, horner, horner_compensated, horner_with_derivative, Complex, RootSet};

/// Scaled residual an accepted root may not exceed.
pub const RESIDUAL_BOUND: f64 = 1e-8;
/// Residual allowed on the centroid of a cluster approximating a multiple root.
pub const CLUSTER_RESIDUAL_BOUND: f64 = 1e-6;

const CLUSTER_RADIUS: f64 = 1e-2;
// Offset of the starting circle, in radians; irrational multiple of the spacing.
const START_ANGLE: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootFindConfig {
    pub max_iters: usize,
    /// Stop when every Newton correction is at most `tol * (1 + |z|)`.
    pub tol: f64,
    pub polish_iters: usize,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        Self {
            max_iters: 200,
            tol: 1e-12,
            polish_iters: 3,
        }
    }
}

impl RootFindConfig {
    /// Tightened settings used when re-verifying a suspicious outcome.
    pub fn strict() -> Self {
        Self {
            max_iters: 1000,
            tol: 1e-14,
            polish_iters: 6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(invalid("root finder tolerance must be positive"));
        }
        if self.max_iters == 0 {
            return Err(invalid("root finder needs at least one iteration"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootFindResult {
    pub roots: RootSet,
    pub iterations: usize,
    pub converged: bool,
    /// Largest `|f(z)| / sum |c_k| |z|^k` over the returned roots.
    pub residual: f64,
}

trait Target {
    fn degree(&self) -> usize;
    /// Newton correction `f(z) / f'(z)`, `None` when the derivative vanishes.
    fn newton(&self, z: Complex) -> Option<Complex>;
    /// Backward-error style residual.
    fn residual(&self, z: Complex) -> f64;
}

struct CoeffTarget<'a> {
    coeffs: &'a [Complex],
}

impl Target for CoeffTarget<'_> {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn newton(&self, z: Complex) -> Option<Complex> {
        let (_, dp) = horner_with_derivative(self.coeffs, z);
        let p = horner_compensated(self.coeffs, z);
        if p == Complex::new(0.0, 0.0) {
            return Some(p);
        }
        let w = p / dp;
        (w.re.is_finite() && w.im.is_finite()).then_some(w)
    }

    fn residual(&self, z: Complex) -> f64 {
        scaled_residual(self.coeffs, z, horner_compensated)
    }
}

/// Normwise backward error `|f(z)| / (max |c_k| * sum |z|^k)`.
fn scaled_residual(coeffs: &[Complex], z: Complex, eval: fn(&[Complex], Complex) -> Complex) -> f64 {
    let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let r = z.norm();
    let powers = (0..coeffs.len()).fold(0.0, |acc, _| acc * r + 1.0);
    let scale = cmax * powers;
    if scale == 0.0 {
        0.0
    } else {
        eval(coeffs, z).norm() / scale
    }
}

/// `P(z) = sum_i m_i prod_{l != i} (z - a_l)` over the distinct zeros `a_i`:
/// the derivative with every repeated factor divided out.
struct ReducedDerivative {
    distinct: Vec<Complex>,
    mult: Vec<f64>,
    coeffs: Vec<Complex>,
}

impl ReducedDerivative {
    fn new(distinct: Vec<Complex>, mult: Vec<usize>) -> Self {
        let k = distinct.len();
        let mut coeffs = vec![Complex::new(0.0, 0.0); k];
        for i in 0..k {
            let others: Vec<Complex> = (0..k).filter(|&l| l != i).map(|l| distinct[l]).collect();
            for (c, e) in coeffs.iter_mut().zip(expand(&others)) {
                *c += e * mult[i] as f64;
            }
        }
        Self {
            distinct,
            mult: mult.into_iter().map(|m| m as f64).collect(),
            coeffs,
        }
    }
}

impl Target for ReducedDerivative {
    fn degree(&self) -> usize {
        self.distinct.len() - 1
    }

    fn newton(&self, z: Complex) -> Option<Complex> {
        // P = R * S with R = prod (z - a_i), S = sum m_i / (z - a_i);
        // P'/P = H - T/S with H = sum 1/(z - a_i), T = sum m_i/(z - a_i)^2.
        let mut s = Complex::new(0.0, 0.0);
        let mut t = Complex::new(0.0, 0.0);
        let mut h = Complex::new(0.0, 0.0);
        for (a, m) in self.distinct.iter().zip(&self.mult) {
            let d = z - a;
            if d == Complex::new(0.0, 0.0) {
                return None;
            }
            let inv = d.inv();
            h += inv;
            s += inv * m;
            t += inv * inv * m;
        }
        if s == Complex::new(0.0, 0.0) {
            return Some(s);
        }
        let w = s / (h * s - t);
        (w.re.is_finite() && w.im.is_finite()).then_some(w)
    }

    fn residual(&self, z: Complex) -> f64 {
        scaled_residual(&self.coeffs, z, horner)
    }
}

fn roundoff_residual(degree: usize) -> f64 {
    16.0 * (degree as f64 + 1.0) * f64::EPSILON
}

fn start_points(center: Complex, radius: f64, count: usize) -> Vec<Complex> {
    let radius = if radius > 0.0 { radius } else { 1.0 };
    (0..count)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / count as f64 + START_ANGLE;
            center + Complex::from_polar(radius, theta)
        })
        .collect()
}

fn aberth<T: Target>(target: &T, mut z: Vec<Complex>, cfg: &RootFindConfig) -> RootFindResult {
    let n = target.degree();
    debug_assert_eq!(z.len(), n);
    let mut done = vec![false; n];
    let mut iterations = 0;

    while iterations < cfg.max_iters && done.iter().any(|d| !d) {
        iterations += 1;
        for j in 0..n {
            if done[j] {
                continue;
            }
            let zj = z[j];
            let Some(newton) = target.newton(zj) else {
                // sitting on a pole or a critical point of the target: nudge off it
                z[j] = zj + Complex::new(1e-8, 1e-8) * (1.0 + zj.norm());
                continue;
            };
            let mut repulsion = Complex::new(0.0, 0.0);
            for (l, zl) in z.iter().enumerate() {
                if l != j && *zl != zj {
                    repulsion += (zj - zl).inv();
                }
            }
            let mut step = newton / (Complex::new(1.0, 0.0) - newton * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                step = newton;
            }
            z[j] = zj - step;
            if step.norm() <= cfg.tol * (1.0 + z[j].norm()) {
                done[j] = true;
            }
        }
    }

    for j in (0..n).filter(|&j| done[j]) {
        for _ in 0..cfg.polish_iters {
            let Some(step) = target.newton(z[j]) else { break };
            let cand = z[j] - step;
            if target.residual(cand) <= target.residual(z[j]) && cand != z[j] {
                z[j] = cand;
            } else {
                break;
            }
        }
    }

    let residual = z.iter().map(|&zj| target.residual(zj)).fold(0.0, f64::max);
    let converged = residual <= RESIDUAL_BOUND && clusters_resolve(target, &z, &done, roundoff_residual(n));
    RootFindResult {
        roots: RootSet::new(z).expect("Aberth iterates stay finite"),
        iterations,
        converged,
        residual,
    }
}

/// Approximations that never met the step tolerance are accepted only as
/// members of a cluster whose centroid has a small residual, or, when
/// isolated, if their residual is already at rounding level.
fn clusters_resolve<T: Target>(target: &T, z: &[Complex], done: &[bool], floor: f64) -> bool {
    let pending: Vec<usize> = (0..z.len()).filter(|&j| !done[j]).collect();
    if pending.is_empty() {
        return true;
    }
    let mut label: Vec<usize> = (0..pending.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for a in 0..pending.len() {
        for b in a + 1..pending.len() {
            let (za, zb) = (z[pending[a]], z[pending[b]]);
            if (za - zb).norm() <= CLUSTER_RADIUS * (1.0 + za.norm().max(zb.norm())) {
                let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                label[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex>> = Default::default();
    for i in 0..pending.len() {
        let root = find(&mut label, i);
        groups.entry(root).or_default().push(z[pending[i]]);
    }
    groups.values().all(|members| match members.len() {
        1 => target.residual(members[0]) <= floor,
        m => {
            let c = members.iter().sum::<Complex>() / m as f64;
            target.residual(c) <= CLUSTER_RESIDUAL_BOUND
        }
    })
}

/// Fujiwara's bound `2 max_k |c_{n-k} / c_n|^(1/k)` on the root moduli.
fn fujiwara_bound(coeffs: &[Complex]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    (1..=n)
        .map(|k| {
            let ratio = coeffs[n - k].norm() / lead;
            let ratio = if k == n { ratio / 2.0 } else { ratio };
            ratio.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

/// All roots of the polynomial with ascending coefficients `coeffs`.
///
/// Starting points lie on the circle given by Fujiwara's root bound. Multiple
/// roots come back as clusters of nearby approximations. A failure to converge
/// is reported through `converged = false`, never hidden.
pub fn find_roots(coeffs: &[Complex], cfg: &RootFindConfig) -> Result<RootFindResult> {
    cfg.validate()?;
    if coeffs.len() < 2 {
        return Err(invalid("root finding needs degree >= 1"));
    }
    if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(invalid("non-finite coefficient"));
    }
    let lead = coeffs[coeffs.len() - 1];
    if lead == Complex::new(0.0, 0.0) {
        return Err(invalid("leading coefficient is zero"));
    }
    let n = coeffs.len() - 1;
    let start = start_points(Complex::new(0.0, 0.0), fujiwara_bound(coeffs), n);
    Ok(aberth(&CoeffTarget { coeffs }, start, cfg))
}

/// Critical points with full solver diagnostics.
///
/// Exactly repeated zeros are split off first: a zero of multiplicity `m`
/// contributes itself `m - 1` times, and the remaining critical points are the
/// roots of the reduced derivative over the distinct zeros.
pub fn critical_points_detailed(r: &RootSet, cfg: &RootFindConfig) -> Result<RootFindResult> {
    cfg.validate()?;
    r.require_degree(2)?;
    let mut distinct: Vec<Complex> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for &z in r.iter() {
        match distinct.iter().position(|&a| a == z) {
            Some(i) => mult[i] += 1,
            None => {
                distinct.push(z);
                mult.push(1);
            }
        }
    }
    let mut out: Vec<Complex> = Vec::with_capacity(r.degree() - 1);
    for (a, m) in distinct.iter().zip(&mult) {
        out.extend(std::iter::repeat_n(*a, m - 1));
    }
    if distinct.len() == 1 {
        return Ok(RootFindResult {
            roots: RootSet::new(out)?,
            iterations: 0,
            converged: true,
            residual: 0.0,
        });
    }
    let k = distinct.len();
    if k == 2 {
        // P = m1 (z - a2) + m2 (z - a1), written the way the centroid is computed
        let n = r.degree() as f64;
        out.push(distinct[0] + (distinct[1] - distinct[0]) * (mult[0] as f64 / n));
        return Ok(RootFindResult {
            roots: RootSet::new(out)?,
            iterations: 0,
            converged: true,
            residual: 0.0,
        });
    }
    let center = distinct.iter().sum::<Complex>() / k as f64;
    let radius = distinct.iter().map(|a| (a - center).norm()).fold(0.0, f64::max);
    let target = ReducedDerivative::new(distinct, mult);
    let start = start_points(center, radius, k - 1);
    let inner = aberth(&target, start, cfg);
    out.extend(inner.roots.into_vec());
    Ok(RootFindResult {
        roots: RootSet::new(out)?,
        iterations: inner.iterations,
        converged: inner.converged,
        residual: inner.residual,
    })
}

/// The `n - 1` zeros of `F'`, with multiplicity.
pub fn critical_points(r: &RootSet, cfg: &RootFindConfig) -> Result<RootSet> {
    let res = critical_points_detailed(r, cfg)?;
    if !res.converged {
        return Err(Error::RootFinding {
            iterations: res.iterations,
            residual: res.residual,
        });
    }
    Ok(res.roots)
}

/// Bottleneck distance between two equal-size multisets: the smallest `d`
/// admitting a perfect matching whose pairs are all within `d`.
pub fn matching_distance(a: &[Complex], b: &[Complex]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let dist: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let mut cands: Vec<f64> = dist.iter().flatten().copied().collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let feasible = |d: f64| -> bool {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        fn augment(
            i: usize,
            d: f64,
            dist: &[Vec<f64>],
            seen: &mut [bool],
            owner: &mut [Option<usize>],
        ) -> bool {
            for j in 0..dist.len() {
                if dist[i][j] <= d && !seen[j] {
                    seen[j] = true;
                    if owner[j].is_none_or(|o| augment(o, d, dist, seen, owner)) {
                        owner[j] = Some(i);
                        return true;
                    }
                }
            }
            false
        }
        (0..n).all(|i| augment(i, d, &dist, &mut vec![false; n], &mut owner))
    };
    if n == 0 {
        return Some(0.0);
    }
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(cands[lo])
}
