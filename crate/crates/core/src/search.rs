//! Multi-start local search for configurations in the unit disk with large
//! `gamma`.
//!
//! Each restart walks in polar coordinates `(r_k, theta_k)` with `r_k`
//! clamped to `[0, 1]`, so every evaluated configuration is feasible.
//! Restart 0 always starts at the zeros of `z^n - z`.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fuzz::sub_seed;
use crate::geometry::gamma;
use crate::inequalities::{lower_bound, refined_upper, sig};
use crate::poly::{Complex, RootSet};
use crate::rootfind::RootFindConfig;

/// Slack on the proven bounds before a result is treated as a bug.
pub const BOUND_SLACK: f64 = 1e-6;
const STREAM: u64 = 0x5ea7c4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub restarts: usize,
    pub local_iters: usize,
    pub seed: u64,
    pub step_init: f64,
    pub step_min: f64,
    /// Search only `{a} ∪ {b ω^k}` with `ω` a primitive `(n-1)`-th root of unity.
    pub symmetric: bool,
    pub rootfind: RootFindConfig,
}

impl SearchConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            restarts: 64,
            local_iters: 2000,
            seed,
            step_init: 0.1,
            step_min: 1e-7,
            symmetric: false,
            rootfind: RootFindConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(invalid(format!("search needs n >= 3, got {}", self.n)));
        }
        if self.n > crate::poly::MAX_DEGREE {
            return Err(invalid(format!("degree {} exceeds {}", self.n, crate::poly::MAX_DEGREE)));
        }
        if self.restarts == 0 || self.local_iters == 0 {
            return Err(invalid("restarts and local_iters must be positive"));
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return Err(invalid("need 0 < step_min < step_init"));
        }
        self.rootfind.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub best_gamma: f64,
    pub best_roots: RootSet,
    pub best_restart: usize,
    pub lower_bound: f64,
    pub refined_upper: f64,
    pub restarts_run: usize,
    pub evaluations: usize,
    /// Evaluations scored as `-inf` because the root finder failed.
    pub failed_evaluations: usize,
    /// `(restart, gamma)` at the start of each restart and after every accepted move.
    pub history: Vec<(usize, f64)>,
}

impl SearchResult {
    /// `(1 - best) n / ln n`.
    pub fn c_hat(&self) -> f64 {
        let n = self.n as f64;
        (1.0 - self.best_gamma) * n / n.ln()
    }
}

struct Walk {
    best: f64,
    roots: Vec<Complex>,
    evaluations: usize,
    failed: usize,
    history: Vec<f64>,
}

fn score(roots: &[Complex], cfg: &RootFindConfig, failed: &mut usize) -> f64 {
    let r = RootSet::new(roots.to_vec()).expect("polar points are finite");
    match gamma(&r, cfg) {
        Ok(g) => g.gamma,
        Err(_) => {
            *failed += 1;
            f64::NEG_INFINITY
        }
    }
}

fn build(params: &[(f64, f64)], n: usize, symmetric: bool) -> Vec<Complex> {
    if !symmetric {
        return params.iter().map(|&(r, t)| Complex::from_polar(r, t)).collect();
    }
    let a = Complex::from_polar(params[0].0, params[0].1);
    let m = n - 1;
    let mut roots = vec![a];
    roots.extend((0..m).map(|k| Complex::from_polar(params[1].0, params[1].1 + std::f64::consts::TAU * k as f64 / m as f64)));
    roots
}

fn restart(cfg: &SearchConfig, index: usize) -> Walk {
    let tau = std::f64::consts::TAU;
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, STREAM ^ ((cfg.n as u64) << 32), index as u64));
    let free = if cfg.symmetric { 2 } else { cfg.n };
    let (mut params, start): (Vec<(f64, f64)>, Vec<Complex>) = if index == 0 {
        let params = if cfg.symmetric {
            vec![(0.0, 0.0), (1.0, 0.0)]
        } else {
            RootSet::z_pow_n_minus_z(cfg.n)
                .expect("n >= 3")
                .iter()
                .map(|z| (z.norm(), z.arg()))
                .collect()
        };
        let exact = if cfg.symmetric { build(&params, cfg.n, true) } else { RootSet::z_pow_n_minus_z(cfg.n).expect("n >= 3").into_vec() };
        (params, exact)
    } else {
        let params: Vec<(f64, f64)> = (0..free).map(|_| (rng.gen::<f64>().sqrt(), tau * rng.gen::<f64>())).collect();
        let roots = build(&params, cfg.n, cfg.symmetric);
        (params, roots)
    };

    let mut failed = 0;
    let mut best = score(&start, &cfg.rootfind, &mut failed);
    let mut walk = Walk { best, roots: start, evaluations: 1, failed: 0, history: vec![best] };
    let mut step = cfg.step_init;
    let mut misses = 0;
    // a full sweep of 2 * free coordinates without progress halves the step
    let patience = 2 * free;
    while walk.evaluations < cfg.local_iters && step >= cfg.step_min {
        let k = rng.gen_range(0..free);
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let mut cand = params.clone();
        if rng.gen::<bool>() {
            cand[k].0 = (cand[k].0 + sign * step).clamp(0.0, 1.0);
        } else {
            cand[k].1 = (cand[k].1 + sign * step * std::f64::consts::PI).rem_euclid(tau);
        }
        let roots = build(&cand, cfg.n, cfg.symmetric);
        let value = score(&roots, &cfg.rootfind, &mut failed);
        walk.evaluations += 1;
        if value > best {
            best = value;
            params = cand;
            walk.roots = roots;
            walk.history.push(best);
            misses = 0;
        } else {
            misses += 1;
            if misses >= patience {
                step *= 0.5;
                misses = 0;
            }
        }
    }
    walk.best = best;
    walk.failed = failed;
    walk
}

pub fn maximize_gamma(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let walks: Vec<Walk> = (0..cfg.restarts).into_par_iter().map(|i| restart(cfg, i)).collect();

    let mut best_restart = 0;
    for (i, w) in walks.iter().enumerate() {
        // strict comparison keeps the lowest index on ties
        if w.best > walks[best_restart].best {
            best_restart = i;
        }
    }
    let n = cfg.n as f64;
    let result = SearchResult {
        n: cfg.n,
        best_gamma: walks[best_restart].best,
        best_roots: RootSet::new(walks[best_restart].roots.clone())?,
        best_restart,
        lower_bound: lower_bound(n),
        refined_upper: refined_upper(n),
        restarts_run: walks.len(),
        evaluations: walks.iter().map(|w| w.evaluations).sum(),
        failed_evaluations: walks.iter().map(|w| w.failed).sum(),
        history: walks
            .iter()
            .enumerate()
            .flat_map(|(i, w)| w.history.iter().map(move |&g| (i, g)))
            .collect(),
    };
    if !(result.best_gamma <= result.refined_upper + BOUND_SLACK) {
        return Err(Error::Soundness(format!(
            "gamma {} exceeds the proven bound {} at n = {} for zeros {:?}",
            result.best_gamma,
            result.refined_upper,
            cfg.n,
            result.best_roots.roots()
        )));
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub n: usize,
    pub best_gamma: f64,
    pub lower: f64,
    pub refined_upper: f64,
    pub c_hat: f64,
    pub evaluations: usize,
}

/// Runs the search at every `n`, reusing everything else from `template`.
pub fn sharpness_report(ns: &[usize], template: &SearchConfig) -> Result<Vec<SharpnessRow>> {
    ns.iter()
        .map(|&n| {
            let r = maximize_gamma(&SearchConfig { n, ..*template })?;
            Ok(SharpnessRow {
                n,
                best_gamma: r.best_gamma,
                lower: r.lower_bound,
                refined_upper: r.refined_upper,
                c_hat: r.c_hat(),
                evaluations: r.evaluations,
            })
        })
        .collect()
}

pub const SHARPNESS_CSV_HEADER: &str = "n,best_gamma,lower,refined_upper,c_hat,evaluations";

pub fn write_sharpness_csv<W: Write>(rows: &[SharpnessRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SHARPNESS_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            sig(r.best_gamma, 17),
            sig(r.lower, 17),
            sig(r.refined_upper, 17),
            sig(r.c_hat, 17),
            r.evaluations
        )?;
    }
    Ok(())
}
