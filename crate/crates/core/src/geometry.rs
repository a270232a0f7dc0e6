//! Point-set functionals of a zero configuration.
//!
//! `sigma_p(r) = min_c ((1/n) sum |z_k - c|^p)^(1/p)` for `p >= 1`, its limit
//! `sigma_inf` (smallest enclosing circle), the centroid radius `gamma`, the
//! Sendov distance, and the collinear / coincident classifier.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::poly::{centroid, pair, Complex, RootSet};
use crate::rootfind::{critical_points, RootFindConfig};

/// Finite exponents above this are computed as `sigma_inf`.
pub const LARGE_P_DISPATCH: f64 = 1024.0;

const WEISZFELD_MAX_ITERS: usize = 500;
const WEISZFELD_STEP_TOL: f64 = 1e-12;
const SNAP_DISTANCE: f64 = 1e-13;
const DESCENT_MAX_ITERS: usize = 500;
const GRADIENT_TOL: f64 = 1e-10;
// local distance to a data point below which the descent tries `vertex_escape`
const ESCAPE_RADIUS: f64 = 1e-3;
const WELZL_SEED: u64 = 0x5eed_c1c1e;

/// Exponent of a power mean; `Infinite` selects the max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Power {
    Finite(f64),
    Infinite,
}

impl Power {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(Power::Infinite),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| invalid(format!("cannot parse exponent {t:?}")))?;
                Power::finite(p)
            }
        }
    }

    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(invalid(format!("exponent must be >= 1, got {p}")));
        }
        Ok(if p.is_infinite() { Power::Infinite } else { Power::Finite(p) })
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Finite(p) => write!(f, "{p}"),
            Power::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Power {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Power::Finite(p) => s.serialize_f64(*p),
            Power::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    ClosedForm,
    Weiszfeld,
    ConvexDescent,
    Welzl,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceResult {
    pub p: Power,
    #[serde(with = "pair")]
    pub center: Complex,
    pub value: f64,
    pub solver: Solver,
    pub iterations: usize,
}

/// `(1/n) sum |z_k - c|^p)^(1/p)`, or the max distance for `Power::Infinite`.
pub fn power_mean_distance(r: &RootSet, c: Complex, p: Power) -> f64 {
    let n = r.degree() as f64;
    match p {
        Power::Infinite => r.iter().map(|z| (z - c).norm()).fold(0.0, f64::max),
        Power::Finite(p) if p == 1.0 => r.iter().map(|z| (z - c).norm()).sum::<f64>() / n,
        Power::Finite(p) if p == 2.0 => {
            (r.iter().map(|z| (z - c).norm_sqr()).sum::<f64>() / n).sqrt()
        }
        Power::Finite(p) => {
            let scale = r.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                return 0.0;
            }
            let s = r.iter().map(|z| ((z - c).norm() / scale).powf(p)).sum::<f64>() / n;
            scale * s.powf(1.0 / p)
        }
    }
}

/// Closed form: the centroid minimizes the mean squared distance.
pub fn sigma2(r: &RootSet) -> VarianceResult {
    let c = centroid(r);
    VarianceResult {
        p: Power::Finite(2.0),
        center: c,
        value: power_mean_distance(r, c, Power::Finite(2.0)),
        solver: Solver::ClosedForm,
        iterations: 0,
    }
}

fn distinct_with_multiplicity(r: &RootSet) -> Vec<(Complex, usize)> {
    let mut out: Vec<(Complex, usize)> = Vec::new();
    for &z in r.iter() {
        match out.iter_mut().find(|(a, _)| *a == z) {
            Some(e) => e.1 += 1,
            None => out.push((z, 1)),
        }
    }
    out
}

/// Sum of unit vectors from `at` towards every point not equal to it.
fn unit_pull(points: &[(Complex, usize)], at: Complex) -> Complex {
    points
        .iter()
        .filter(|(z, _)| *z != at)
        .map(|(z, m)| (z - at) / (z - at).norm() * *m as f64)
        .sum()
}

/// Geometric median by Weiszfeld iteration started at the centroid.
///
/// A data point is the median when the pull of the other points does not
/// exceed its multiplicity; that test runs up front (strictly, so a tie such
/// as a two-point set keeps the midpoint) and again whenever an iterate lands
/// on a data point, in which case the Vardi–Zhang step moves it off. Runs
/// that have not settled after `WEISZFELD_MAX_ITERS` are finished by Newton.
pub fn sigma1(r: &RootSet) -> Result<VarianceResult> {
    let points = distinct_with_multiplicity(r);
    let done = |center: Complex, iterations: usize| VarianceResult {
        p: Power::Finite(1.0),
        center,
        value: power_mean_distance(r, center, Power::Finite(1.0)),
        solver: Solver::Weiszfeld,
        iterations,
    };
    if points.len() == 1 {
        return Ok(done(points[0].0, 0));
    }
    for &(z, m) in &points {
        if unit_pull(&points, z).norm() < m as f64 {
            return Ok(done(z, 0));
        }
    }

    let mut c = centroid(r);
    let scale = 1.0 + r.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
    for it in 1..=WEISZFELD_MAX_ITERS {
        let coincident = points
            .iter()
            .find(|(z, _)| (z - c).norm() <= SNAP_DISTANCE * scale)
            .copied();
        let next = match coincident {
            Some((z, m)) => {
                let pull = unit_pull(&points, z);
                if pull.norm() <= m as f64 * (1.0 + 1e-12) {
                    return Ok(done(z, it));
                }
                // Vardi–Zhang: Weiszfeld map over the other points, damped by the
                // weight sitting at the current iterate.
                let (num, den) = weiszfeld_sums(&points, z, Some(z));
                let t = num / den;
                let ratio = (m as f64 / pull.norm()).min(1.0);
                t * (1.0 - ratio) + z * ratio
            }
            None => {
                let (num, den) = weiszfeld_sums(&points, c, None);
                num / den
            }
        };
        let step = (next - c).norm();
        c = next;
        if step <= WEISZFELD_STEP_TOL * scale {
            return Ok(done(c, it));
        }
    }
    // Weiszfeld slows to a crawl when the median sits close to a data point;
    // finish with Newton on the objective, smooth away from the data points
    let origin = centroid(r);
    let obj = PowerObjective {
        points: r.roots(),
        p: 1.0,
        scale: scale - 1.0,
        origin,
    };
    match descend(&obj, obj.local(c)) {
        Ok((local, it)) => Ok(done(origin + local * obj.scale, WEISZFELD_MAX_ITERS + it)),
        Err((local, it)) => Err(Error::NonConvergence {
            solver: "weiszfeld",
            iterations: WEISZFELD_MAX_ITERS + it,
            best_center: origin + local * obj.scale,
            best_value: power_mean_distance(r, origin + local * obj.scale, Power::Finite(1.0)),
        }),
    }
}

fn weiszfeld_sums(points: &[(Complex, usize)], c: Complex, skip: Option<Complex>) -> (Complex, f64) {
    let mut num = Complex::new(0.0, 0.0);
    let mut den = 0.0;
    for &(z, m) in points {
        if Some(z) == skip {
            continue;
        }
        let w = m as f64 / (z - c).norm();
        num += z * w;
        den += w;
    }
    (num, den)
}

/// Power mean `((1/n) sum |z_k - c|^p)^(1/p)` of the distances in local
/// units, with gradient `[d/dx, d/dy]` and Hessian `[xx, xy, yy]`. Terms are
/// weighted by `(r_k / r_max)^p`, so large exponents cannot overflow.
struct PowerObjective<'a> {
    points: &'a [Complex],
    p: f64,
    scale: f64,
    origin: Complex,
}

impl PowerObjective<'_> {
    // Points are shifted by `origin` and divided by `scale` before use.
    fn local(&self, z: Complex) -> Complex {
        (z - self.origin) / self.scale
    }

    fn value(&self, c: Complex) -> f64 {
        let n = self.points.len() as f64;
        let rmax = self.points.iter().map(|z| (self.local(*z) - c).norm()).fold(0.0, f64::max);
        if rmax == 0.0 {
            return 0.0;
        }
        let s = self
            .points
            .iter()
            .map(|z| ((self.local(*z) - c).norm() / rmax).powf(self.p))
            .sum::<f64>();
        rmax * (s / n).powf(1.0 / self.p)
    }

    fn derivatives(&self, c: Complex) -> (f64, [f64; 2], [f64; 3]) {
        let n = self.points.len() as f64;
        let p = self.p;
        let d: Vec<Complex> = self.points.iter().map(|z| c - self.local(*z)).collect();
        let rmax = d.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if rmax == 0.0 {
            return (0.0, [0.0; 2], [0.0; 3]);
        }
        let w: Vec<f64> = d.iter().map(|x| (x.norm() / rmax).powf(p)).collect();
        let total: f64 = w.iter().sum();
        let psi = rmax * (total / n).powf(1.0 / p);
        let (mut m, mut a) = ([0.0; 2], [0.0; 3]);
        for (x, wk) in d.iter().zip(&w) {
            let r2 = x.norm_sqr();
            if r2 == 0.0 {
                continue;
            }
            let u = wk / total / r2;
            m[0] += u * x.re;
            m[1] += u * x.im;
            let k = u * (p - 2.0) / r2;
            a[0] += u + k * x.re * x.re;
            a[1] += k * x.re * x.im;
            a[2] += u + k * x.im * x.im;
        }
        let h = [
            psi * (a[0] + (1.0 - p) * m[0] * m[0]),
            psi * (a[1] + (1.0 - p) * m[0] * m[1]),
            psi * (a[2] + (1.0 - p) * m[1] * m[1]),
        ];
        (psi, [psi * m[0], psi * m[1]], h)
    }
}

/// General `p >= 1`.
///
/// Exact `p = 1`, `2` and infinity go to their dedicated solvers; finite
/// `p > LARGE_P_DISPATCH` goes to `sigma_inf`. Otherwise the convex objective
/// `(mean |z_k - c|^p)^(1/p)` is minimized from the centroid by Newton steps
/// (gradient steps where the Hessian is unusable) with backtracking line
/// search, stopping when its gradient norm is at most `1e-10`. Exponents below
/// two get special handling next to data points, where the objective is
/// nearly a kink.
pub fn sigma_p(r: &RootSet, p: Power) -> Result<VarianceResult> {
    let p = match p {
        Power::Infinite => return Ok(sigma_inf(r)),
        Power::Finite(p) if p.is_nan() || p < 1.0 => {
            return Err(invalid(format!("exponent must be >= 1, got {p}")))
        }
        Power::Finite(p) if p == 1.0 => return sigma1(r),
        Power::Finite(p) if p == 2.0 => return Ok(sigma2(r)),
        Power::Finite(p) if p > LARGE_P_DISPATCH => {
            let mut res = sigma_inf(r);
            res.p = Power::Finite(p);
            return Ok(res);
        }
        Power::Finite(p) => p,
    };
    let origin = centroid(r);
    let scale = r.iter().map(|z| (z - origin).norm()).fold(0.0, f64::max);
    let finish = |local: Complex, iterations: usize| {
        let center = origin + local * scale;
        VarianceResult {
            p: Power::Finite(p),
            center,
            value: power_mean_distance(r, center, Power::Finite(p)),
            solver: Solver::ConvexDescent,
            iterations,
        }
    };
    if scale == 0.0 {
        return Ok(finish(Complex::new(0.0, 0.0), 0));
    }
    let obj = PowerObjective {
        points: r.roots(),
        p,
        scale,
        origin,
    };

    match descend(&obj, Complex::new(0.0, 0.0)) {
        Ok((c, it)) => Ok(finish(c, it)),
        Err((c, it)) => Err(Error::NonConvergence {
            solver: "convex descent",
            iterations: it,
            best_center: origin + c * scale,
            best_value: power_mean_distance(r, origin + c * scale, Power::Finite(p)),
        }),
    }
}

/// Newton steps (gradient steps where the Hessian is unusable) with
/// backtracking, in the objective's local coordinates. Returns the minimizer
/// and the iteration count, or the last iterate on failure.
fn descend(obj: &PowerObjective<'_>, start: Complex) -> std::result::Result<(Complex, usize), (Complex, usize)> {
    let mut c = start;
    let mut escaped: Vec<Complex> = Vec::new();
    for it in 0..DESCENT_MAX_ITERS {
        let (f, g, h) = obj.derivatives(c);
        let gnorm = g[0].hypot(g[1]);

        if gnorm <= GRADIENT_TOL {
            return Ok((c, it));
        }
        if let Some(v) = vertex_guard(obj, c) {
            return Ok((v, it));
        }
        if obj.p < 2.0 {
            let near = obj.points.iter().map(|z| obj.local(*z)).min_by(|a, b| (a - c).norm().total_cmp(&(b - c).norm()));
            if let Some(v) = near.filter(|v| (v - c).norm() < ESCAPE_RADIUS && !escaped.contains(v)) {
                escaped.push(v);
                if let Some(next) = vertex_escape(obj, c).filter(|x| obj.value(*x) < f) {
                    c = next;
                    continue;
                }
            }
        }
        let det = h[0] * h[2] - h[1] * h[1];
        let newton = (det > 0.0 && h[0] > 0.0 && det.is_finite()).then(|| {
            Complex::new(-(h[2] * g[0] - h[1] * g[1]) / det, -(h[0] * g[1] - h[1] * g[0]) / det)
        });
        let steepest = Complex::new(-g[0], -g[1]);

        if let Some(d) = newton.filter(|d| d.norm() <= 1e-8) {
            if c + d == c {
                return Ok((c, it));
            }
            // inside the quadratic region the decrease drowns in rounding, so
            // Armijo cannot see it; take the full step unless it visibly hurts
            if obj.value(c + d) <= f * (1.0 + 4.0 * f64::EPSILON) {
                c += d;
                continue;
            }
        }
        let moved = [newton, Some(steepest)]
            .into_iter()
            .flatten()
            .find_map(|d| backtrack(obj, c, f, d, g));
        match moved {
            Some(next) => c = next,
            // the predicted Newton decrease is below the rounding of f
            None if newton.is_some_and(|d| 0.5 * (g[0] * d.re + g[1] * d.im).abs() <= 16.0 * f64::EPSILON * f) => {
                return Ok((c, it));
            }
            None => return Err((c, it)),
        }
    }
    Err((c, DESCENT_MAX_ITERS))
}

fn backtrack(obj: &PowerObjective<'_>, c: Complex, f: f64, d: Complex, g: [f64; 2]) -> Option<Complex> {
    let slope = g[0] * d.re + g[1] * d.im;
    if !(slope < 0.0) {
        return None;
    }
    let mut t = 1.0;
    while t * d.norm() > f64::EPSILON * (1.0 + c.norm()) {
        let cand = c + d * t;
        if cand == c {
            break;
        }
        if obj.value(cand) <= f + 1e-4 * t * slope {
            return Some(cand);
        }
        t *= 0.5;
    }
    None
}

/// Data point nearest to `c` in local units, its multiplicity, and the
/// gradient of the mean of `r^p` over the other points, taken at it.
fn vertex_pull(obj: &PowerObjective<'_>, c: Complex) -> Option<VertexPull> {
    let p = obj.p;
    let n = obj.points.len() as f64;
    let local: Vec<Complex> = obj.points.iter().map(|z| obj.local(*z)).collect();
    let v = *local.iter().min_by(|a, b| (*a - c).norm().total_cmp(&(*b - c).norm()))?;
    let mut out = VertexPull { v, mult: 0.0, pull: Complex::new(0.0, 0.0), fv: 0.0, lipschitz: 0.0 };
    for z in &local {
        let r = (v - z).norm();
        if r == 0.0 {
            out.mult += 1.0;
            continue;
        }
        out.fv += r.powf(p) / n;
        out.pull += (v - z) * (p * r.powf(p - 2.0) / n);
        // Hessian norm of r^p is at most p r^(p-2) for p < 2; doubled for
        // the shrinking of r within half its length
        out.lipschitz += 4.0 * p * r.powf(p - 2.0) / n;
    }
    Some(out)
}

struct VertexPull {
    v: Complex,
    mult: f64,
    pull: Complex,
    fv: f64,
    lipschitz: f64,
}

/// For exponents near one the minimizer can sit within rounding distance of
/// a data point, where Newton only creeps. Accepts the data point nearest to
/// `c` when convexity bounds its suboptimality at rounding level.
fn vertex_guard(obj: &PowerObjective<'_>, c: Complex) -> Option<Complex> {
    let p = obj.p;
    if p >= 2.0 {
        return None;
    }
    let n = obj.points.len() as f64;
    let VertexPull { v, mult, pull, fv, lipschitz } = vertex_pull(obj, c)?;
    let pull = pull.norm();
    if p == 1.0 {
        return (pull * n <= mult * (1.0 + 1e-12)).then_some(v);
    }
    // beyond distance rho the own term's slope (mult / n) p rho^(p-1) beats
    // the pull, which moves by at most lipschitz * rho; the mean of r^p then
    // drops by at most pull * rho
    const MARGIN: f64 = 1e-9;
    let base = (1.0 + MARGIN) * pull * n / (mult * p);
    if base >= 1.0 {
        return None;
    }
    let rho = base.powf(1.0 / (p - 1.0));
    (lipschitz * rho <= MARGIN * pull && pull * rho <= 1e-13 * fv).then_some(v)
}

/// Minimizer along the ray leaving the data point nearest to `c` in the
/// direction of steepest descent, by bisection on the directional derivative.
/// Gradient steps near a data point zigzag into it for exponents below two.
fn vertex_escape(obj: &PowerObjective<'_>, c: Complex) -> Option<Complex> {
    let VertexPull { v, pull, .. } = vertex_pull(obj, c)?;
    if pull.norm() == 0.0 {
        return None;
    }
    let e = -pull / pull.norm();
    let slope = |t: f64| {
        let (_, g, _) = obj.derivatives(v + e * t);
        g[0] * e.re + g[1] * e.im
    };
    let mut hi = 1.0;
    while slope(hi) < 0.0 {
        hi *= 2.0;
        if hi > 64.0 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo > 0.0).then(|| v + e * lo)
}

/// Smallest enclosing circle by Welzl's randomized incremental algorithm
/// over a fixed-seed permutation.
pub fn sigma_inf(r: &RootSet) -> VarianceResult {
    let mut pts: Vec<Complex> = r.roots().to_vec();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(WELZL_SEED));
    let outside = |c: Complex, rad: f64, z: Complex| (z - c).norm() > rad + 1e-14 * (1.0 + rad);

    let mut center = pts[0];
    let mut radius = 0.0;
    for i in 1..pts.len() {
        if !outside(center, radius, pts[i]) {
            continue;
        }
        (center, radius) = (pts[i], 0.0);
        for j in 0..i {
            if !outside(center, radius, pts[j]) {
                continue;
            }
            (center, radius) = circle2(pts[i], pts[j]);
            for k in 0..j {
                if outside(center, radius, pts[k]) {
                    (center, radius) = circle3(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    VarianceResult {
        p: Power::Infinite,
        center,
        value: power_mean_distance(r, center, Power::Infinite),
        solver: Solver::Welzl,
        iterations: pts.len(),
    }
}

fn circle2(a: Complex, b: Complex) -> (Complex, f64) {
    let c = (a + b) / 2.0;
    (c, (a - c).norm().max((b - c).norm()))
}

fn circle3(a: Complex, b: Complex, c: Complex) -> (Complex, f64) {
    let (ba, ca) = (b - a, c - a);
    let d = 2.0 * (ba.re * ca.im - ba.im * ca.re);
    let scale = ba.norm_sqr().max(ca.norm_sqr());
    if d.abs() <= 1e-14 * scale {
        // degenerate triangle: the widest pair spans the circle
        return [circle2(a, b), circle2(a, c), circle2(b, c)]
            .into_iter()
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
    }
    let (b2, c2) = (ba.norm_sqr(), ca.norm_sqr());
    let ux = (ca.im * b2 - ba.im * c2) / d;
    let uy = (ba.re * c2 - ca.re * b2) / d;
    let center = a + Complex::new(ux, uy);
    let radius = [a, b, c].iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
    (center, radius)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaReport {
    #[serde(with = "pair")]
    pub centroid: Complex,
    pub critical_points: RootSet,
    pub distances: Vec<f64>,
    pub gamma: f64,
    pub argmin_index: usize,
}

/// Distance from the centroid to the nearest critical point.
pub fn gamma(r: &RootSet, cfg: &RootFindConfig) -> Result<GammaReport> {
    r.require_degree(2)?;
    let w = critical_points(r, cfg)?;
    Ok(gamma_from(r, w))
}

pub(crate) fn gamma_from(r: &RootSet, w: RootSet) -> GammaReport {
    let g = centroid(r);
    let distances: Vec<f64> = w.iter().map(|z| (g - z).norm()).collect();
    let (argmin_index, gamma) = distances
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, d)| if d < best.1 { (i, d) } else { best });
    GammaReport {
        centroid: g,
        critical_points: w,
        distances,
        gamma,
        argmin_index,
    }
}

/// `max_k min_j |z_k - w_j|`.
pub fn sendov_distance(r: &RootSet, cfg: &RootFindConfig) -> Result<f64> {
    r.require_degree(2)?;
    let w = critical_points(r, cfg)?;
    Ok(sendov_from(r, &w))
}

pub(crate) fn sendov_from(r: &RootSet, w: &RootSet) -> f64 {
    r.iter()
        .map(|z| w.iter().map(|x| (z - x).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Configuration {
    AllEqual,
    Collinear,
    Generic,
}

impl Configuration {
    /// Collinear in the wide sense, including coincident points.
    pub fn is_collinear(self) -> bool {
        matches!(self, Configuration::AllEqual | Configuration::Collinear)
    }
}

/// Singular values `(larger, smaller)` of the centered `2 x n` coordinate matrix.
pub fn singular_values(r: &RootSet) -> (f64, f64) {
    let g = centroid(r);
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for z in r.iter() {
        let d = z - g;
        a += d.re * d.re;
        b += d.re * d.im;
        c += d.im * d.im;
    }
    // project on the principal axes instead of forming the determinant,
    // which loses half the digits of the small value
    let theta = 0.5 * (2.0 * b).atan2(a - c);
    let (sin, cos) = theta.sin_cos();
    let (mut major, mut minor) = (0.0, 0.0);
    for z in r.iter() {
        let d = z - g;
        major += (d.re * cos + d.im * sin).powi(2);
        minor += (d.im * cos - d.re * sin).powi(2);
    }
    (major.sqrt(), minor.sqrt())
}

pub fn classify_configuration(r: &RootSet) -> Configuration {
    let g = centroid(r);
    let scale = r.iter().map(|z| (z - g).norm()).fold(0.0, f64::max);
    let zs = r.roots();
    let spread = zs
        .iter()
        .enumerate()
        .flat_map(|(i, a)| zs[i + 1..].iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    if spread <= 1e-10 * (1.0 + scale) {
        return Configuration::AllEqual;
    }
    let (big, small) = singular_values(r);
    if small <= 1e-9 * (big + 1e-30) {
        Configuration::Collinear
    } else {
        Configuration::Generic
    }
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain).
pub fn convex_hull(points: &[Complex]) -> Vec<Complex> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Complex, a: Complex, b: Complex| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut hull: Vec<Complex> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(a: Complex, b: Complex, z: Complex) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Euclidean distance from `z` to the convex hull of `points` (0 inside).
pub fn hull_distance(points: &[Complex], z: Complex) -> f64 {
    let hull = convex_hull(points);
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(hull[0], hull[1], z),
        m => {
            let inside = (0..m).all(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % m]);
                (b - a).re * (z - a).im - (b - a).im * (z - a).re >= 0.0
            });
            if inside {
                0.0
            } else {
                (0..m)
                    .map(|i| segment_distance(hull[i], hull[(i + 1) % m], z))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}
