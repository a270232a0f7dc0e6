//! Monic complex polynomials held primarily as root multisets.
//!
//! Every quantity this crate reports is a function of the zeros, so a
//! [`RootSet`] is the source of truth and coefficients are derived from it
//! by incremental multiplication with linear factors.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use num_complex::Complex64 as Complex;

/// Largest degree accepted anywhere in the library.
pub const MAX_DEGREE: usize = 128;

/// Tolerance on the sum of a [`WeightVector`].
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Serde adapter writing complex numbers as `[re, im]` pairs.
pub mod pair {
    use super::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }

    pub mod vec {
        use super::Complex;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(zs: &[Complex], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(zs.iter().map(|z| [z.re, z.im]))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex>, D::Error> {
            let raw = Vec::<[f64; 2]>::deserialize(d)?;
            Ok(raw.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
        }
    }
}

fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A multiset of complex points; multiplicity is repetition, order is storage only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSet(#[serde(with = "pair::vec")] Vec<Complex>);

impl RootSet {
    pub fn new(roots: Vec<Complex>) -> Result<Self> {
        if roots.is_empty() {
            return Err(invalid("root set must contain at least one point"));
        }
        if roots.len() > MAX_DEGREE {
            return Err(invalid(format!(
                "degree {} exceeds the hard cap of {MAX_DEGREE}",
                roots.len()
            )));
        }
        if let Some(z) = roots.iter().find(|z| !is_finite(**z)) {
            return Err(invalid(format!("non-finite root {z}")));
        }
        Ok(Self(roots))
    }

    /// Real-axis convenience constructor.
    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Zeros of `z^n - z`: the origin and the `(n-1)`-th roots of unity.
    pub fn z_pow_n_minus_z(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid("z^n - z needs n >= 2"));
        }
        let m = n - 1;
        let mut roots = vec![Complex::new(0.0, 0.0)];
        roots.extend((0..m).map(|k| unit_root(k, m)));
        Self::new(roots)
    }

    /// Zeros of `(z+1)^(n-1) (z-1)`.
    pub fn extremal_sigma_inf(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid("(z+1)^(n-1)(z-1) needs n >= 2"));
        }
        let mut roots = vec![Complex::new(-1.0, 0.0); n - 1];
        roots.push(Complex::new(1.0, 0.0));
        Self::new(roots)
    }

    pub fn roots(&self) -> &[Complex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex> {
        self.0.iter()
    }

    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True when every point satisfies `|z| <= 1 + slack`.
    pub fn in_unit_disk(&self, slack: f64) -> bool {
        self.0.iter().all(|z| z.norm() <= 1.0 + slack)
    }

    pub fn translated(&self, t: Complex) -> Self {
        Self(self.0.iter().map(|z| z + t).collect())
    }

    /// Multiplies every point by `lambda` (rotation plus scaling).
    pub fn scaled(&self, lambda: Complex) -> Self {
        Self(self.0.iter().map(|z| z * lambda).collect())
    }

    pub(crate) fn require_degree(&self, min: usize) -> Result<()> {
        if self.degree() < min {
            Err(invalid(format!(
                "degree {} is below the required minimum {min}",
                self.degree()
            )))
        } else {
            Ok(())
        }
    }
}

fn unit_root(k: usize, m: usize) -> Complex {
    // Exact values on the axes keep symmetric fixtures symmetric.
    match (4 * k) % (4 * m) {
        0 => return Complex::new(1.0, 0.0),
        r if r == m => return Complex::new(0.0, 1.0),
        r if r == 2 * m => return Complex::new(-1.0, 0.0),
        r if r == 3 * m => return Complex::new(0.0, -1.0),
        _ => {}
    }
    Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64)
}

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(invalid("weight vector is empty"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(invalid("weights must be finite and non-negative"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(invalid(format!("weights sum to {sum}, expected 1")));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("weight vector is empty"));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    /// Unit mass on index `k`.
    pub fn vertex(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(invalid(format!("vertex index {k} out of range for length {n}")));
        }
        let mut w = vec![0.0; n];
        w[k] = 1.0;
        Ok(Self(w))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Monic polynomial with ascending coefficients (`coeffs[n] == 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
    origin: Option<RootSet>,
}

impl Polynomial {
    /// Builds a monic polynomial from ascending coefficients; the last entry must be exactly 1.
    pub fn from_coeffs(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(invalid("polynomial must have degree >= 1"));
        }
        if coeffs.len() - 1 > MAX_DEGREE {
            return Err(invalid(format!(
                "degree {} exceeds the hard cap of {MAX_DEGREE}",
                coeffs.len() - 1
            )));
        }
        if coeffs.iter().any(|c| !is_finite(*c)) {
            return Err(invalid("non-finite coefficient"));
        }
        if coeffs[coeffs.len() - 1] != Complex::new(1.0, 0.0) {
            return Err(invalid("leading coefficient must be exactly 1 (monic)"));
        }
        Ok(Self { coeffs, origin: None })
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn origin(&self) -> Option<&RootSet> {
        self.origin.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `F'`, leading coefficient `n` (not renormalized).
    pub fn derivative(&self) -> Vec<Complex> {
        derivative_coeffs(&self.coeffs)
    }

    /// Compensated Horner; plain `horner` loses everything to cancellation
    /// near a zero of large modulus.
    pub fn evaluate(&self, z: Complex) -> Complex {
        horner_compensated(&self.coeffs, z)
    }
}

/// Expands `prod (z - r_k)` by repeated multiplication with linear factors.
pub fn from_roots(r: &RootSet) -> Polynomial {
    Polynomial {
        coeffs: expand(r.roots()),
        origin: Some(r.clone()),
    }
}

pub(crate) fn expand(roots: &[Complex]) -> Vec<Complex> {
    // Double-double accumulation: the result is close to the correctly
    // rounded coefficients, which matters for round trips at n ~ 30.
    let mut c: Vec<[Dd; 2]> = Vec::with_capacity(roots.len() + 1);
    c.push([Dd(1.0, 0.0), Dd(0.0, 0.0)]);
    for &r in roots {
        // multiply by (z - r), in place from the top
        c.push([Dd(0.0, 0.0); 2]);
        for k in (1..c.len()).rev() {
            let [re, im] = c[k];
            let pr = re.mul(r.re).add(im.mul(-r.im));
            let pi = re.mul(r.im).add(im.mul(r.re));
            c[k] = [c[k - 1][0].add(pr.neg()), c[k - 1][1].add(pi.neg())];
        }
        let [re, im] = c[0];
        c[0] = [re.mul(r.re).add(im.mul(-r.im)).neg(), re.mul(r.im).add(im.mul(r.re)).neg()];
    }
    c.iter().map(|[re, im]| Complex::new(re.0 + re.1, im.0 + im.1)).collect()
}

/// Unevaluated sum `hi + lo`.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let e = (self.0 - (s - bb)) + (o.0 - bb);
        quick_two_sum(s, e + self.1 + o.1)
    }

    fn mul(self, d: f64) -> Dd {
        let p = self.0 * d;
        let e = self.0.mul_add(d, -p);
        quick_two_sum(p, e + self.1 * d)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }
}

/// Horner in double-double arithmetic, rounded once at the end. Accurate
/// as if evaluated with twice the working precision.
pub(crate) fn horner_compensated(coeffs: &[Complex], z: Complex) -> Complex {
    let mut re = Dd(0.0, 0.0);
    let mut im = Dd(0.0, 0.0);
    for c in coeffs.iter().rev() {
        let nr = re.mul(z.re).add(im.mul(-z.im)).add(Dd(c.re, 0.0));
        let ni = re.mul(z.im).add(im.mul(z.re)).add(Dd(c.im, 0.0));
        re = nr;
        im = ni;
    }
    Complex::new(re.0 + re.1, im.0 + im.1)
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

pub fn derivative_coeffs(coeffs: &[Complex]) -> Vec<Complex> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// Horner evaluation of ascending coefficients.
pub fn horner(coeffs: &[Complex], z: Complex) -> Complex {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Value and first derivative in one pass.
pub(crate) fn horner_with_derivative(coeffs: &[Complex], z: Complex) -> (Complex, Complex) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn centroid(r: &RootSet) -> Complex {
    mean(r.roots())
}

/// Mean taken relative to the first point, so coincident points average exactly.
pub(crate) fn mean(zs: &[Complex]) -> Complex {
    let a = zs[0];
    a + zs.iter().map(|z| z - a).sum::<Complex>() / zs.len() as f64
}

/// `sum l_k z_k`.
pub fn weighted_centroid(r: &RootSet, l: &WeightVector) -> Result<Complex> {
    if l.len() != r.degree() {
        return Err(invalid(format!(
            "weight vector has length {}, root set has {} points",
            l.len(),
            r.degree()
        )));
    }
    Ok(r.iter().zip(l.weights()).map(|(z, w)| z * *w).sum())
}
