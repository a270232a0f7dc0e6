//! Seeded fuzzing of the checkers.
//!
//! Trial `t` at degree `n` draws its configuration from a ChaCha8 stream
//! seeded by [`sub_seed`], so outcomes do not depend on how rayon schedules
//! the work. Results are merged in trial order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geometry::Power;
use crate::inequalities::{self as ineq, Analysis, CheckOutcome, Tolerances};
use crate::poly::{Complex, RootSet, WeightVector};

/// Findings kept per suite and degree; counts are always complete.
pub const MAX_FINDINGS: usize = 16;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent seed for item `index` of stream `stream` under `master`.
pub fn sub_seed(master: u64, stream: u64, index: u64) -> u64 {
    mix(mix(mix(master) ^ stream) ^ index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Schoenberg,
    Thm11,
    Identity,
    ThmMt,
    ThmMt1,
    Pawlowski,
    Borcea,
    GeneralizedBorcea,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Schoenberg,
        Suite::Thm11,
        Suite::Identity,
        Suite::ThmMt,
        Suite::ThmMt1,
        Suite::Pawlowski,
        Suite::Borcea,
        Suite::GeneralizedBorcea,
    ];

    /// Parses a suite name. `borcea` selects both conjecture checks and
    /// `all` selects everything.
    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        Ok(match name {
            "schoenberg" => vec![Suite::Schoenberg],
            "thm11" => vec![Suite::Thm11],
            "identity" => vec![Suite::Identity],
            "thm-mt" => vec![Suite::ThmMt],
            "thm-mt1" => vec![Suite::ThmMt1],
            "pawlowski" => vec![Suite::Pawlowski],
            "borcea" => vec![Suite::Borcea, Suite::GeneralizedBorcea],
            "generalized-borcea" => vec![Suite::GeneralizedBorcea],
            "all" => Suite::ALL.to_vec(),
            other => return Err(invalid(format!("unknown suite {other:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Schoenberg => "schoenberg",
            Suite::Thm11 => "thm11",
            Suite::Identity => "identity",
            Suite::ThmMt => "thm-mt",
            Suite::ThmMt1 => "thm-mt1",
            Suite::Pawlowski => "pawlowski",
            Suite::Borcea => "borcea",
            Suite::GeneralizedBorcea => "generalized-borcea",
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, Suite::Borcea | Suite::GeneralizedBorcea)
    }

    /// Zeros in the unit disk, except the centroid bound, which is scale free.
    fn default_corpus(self) -> Corpus {
        match self {
            Suite::ThmMt => Corpus::Disk(3.0),
            _ => Corpus::Disk(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corpus {
    /// Uniform in the closed disk of the given radius.
    Disk(f64),
    /// Random line through the disk of radius 1/2 with offsets in [-1/2, 1/2].
    Collinear,
    /// One point of the unit disk repeated.
    AllEqual,
}

impl Corpus {
    fn tag(self) -> u64 {
        match self {
            Corpus::Disk(r) => r.to_bits(),
            Corpus::Collinear => 1,
            Corpus::AllEqual => 2,
        }
    }

    pub fn sample<R: Rng>(self, n: usize, rng: &mut R) -> RootSet {
        let tau = std::f64::consts::TAU;
        let roots = match self {
            Corpus::Disk(radius) => (0..n)
                .map(|_| Complex::from_polar(radius * rng.gen::<f64>().sqrt(), tau * rng.gen::<f64>()))
                .collect(),
            Corpus::Collinear => {
                let base = Complex::from_polar(0.5 * rng.gen::<f64>().sqrt(), tau * rng.gen::<f64>());
                let dir = Complex::from_polar(1.0, tau * rng.gen::<f64>());
                (0..n).map(|_| base + dir * (rng.gen::<f64>() - 0.5)).collect()
            }
            Corpus::AllEqual => {
                let z = Complex::from_polar(rng.gen::<f64>().sqrt(), tau * rng.gen::<f64>());
                vec![z; n]
            }
        };
        RootSet::new(roots).expect("sampled zeros are finite")
    }
}

/// Dirichlet(1, ..., 1) weights.
pub fn sample_weights<R: Rng>(n: usize, rng: &mut R) -> WeightVector {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    WeightVector::new(raw.iter().map(|x| x / total).collect()).expect("normalized weights")
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub suites: Vec<Suite>,
    pub degrees: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Exponent for the conjecture checks.
    pub p: Power,
    /// Replaces every suite's default corpus.
    pub corpus: Option<Corpus>,
    pub tolerances: Tolerances,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            degrees: (2..=12).collect(),
            trials: 1000,
            seed: 0,
            p: Power::Finite(2.0),
            corpus: None,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    /// A proven inequality failed at the strict root-finder settings.
    Violation,
    /// A predicted equality case did not register.
    MissedEquality,
    /// Equality down to rounding, with the strict root finder, where none is predicted.
    Anomaly,
    /// A conjectured inequality failed at the strict root-finder settings.
    ConjectureViolation,
    /// Critical points could not be computed.
    SolverFailure,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub trial: usize,
    pub roots: RootSet,
    /// Weights of the generalized conjecture check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub outcome: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub degree: usize,
    pub corpus: Corpus,
    pub trials: usize,
    pub passed: usize,
    pub equalities: usize,
    pub violations: usize,
    pub missed_equalities: usize,
    pub anomalies: usize,
    pub conjecture_violations: usize,
    pub solver_failures: usize,
    /// Outcomes that needed the strict re-check.
    pub rechecked: usize,
    /// Smallest `slack / (1 + |rhs|)`.
    pub min_relative_slack: f64,
    /// Largest `lhs / rhs` over outcomes with `rhs > 0`.
    pub max_ratio: f64,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    fn new(suite: Suite, degree: usize, corpus: Corpus) -> Self {
        Self {
            suite,
            degree,
            corpus,
            trials: 0,
            passed: 0,
            equalities: 0,
            violations: 0,
            missed_equalities: 0,
            anomalies: 0,
            conjecture_violations: 0,
            solver_failures: 0,
            rechecked: 0,
            min_relative_slack: f64::INFINITY,
            max_ratio: 0.0,
            findings: Vec::new(),
        }
    }

    fn absorb(&mut self, trial: usize, roots: &RootSet, weights: &WeightVector, v: Verdict) {
        self.trials += 1;
        let (kind, outcome, detail) = match v {
            Verdict::Failed(detail) => (FindingKind::SolverFailure, None, Some(detail)),
            Verdict::Checked { outcome, rechecked, kind } => {
                self.passed += outcome.passed as usize;
                self.equalities += outcome.equality as usize;
                self.rechecked += rechecked as usize;
                self.min_relative_slack = self.min_relative_slack.min(outcome.slack / (1.0 + outcome.rhs.abs()));
                if outcome.rhs > 0.0 {
                    self.max_ratio = self.max_ratio.max(outcome.lhs / outcome.rhs);
                }
                match kind {
                    Some(kind) => (kind, Some(outcome), None),
                    None => return,
                }
            }
        };
        *match kind {
            FindingKind::Violation => &mut self.violations,
            FindingKind::MissedEquality => &mut self.missed_equalities,
            FindingKind::Anomaly => &mut self.anomalies,
            FindingKind::ConjectureViolation => &mut self.conjecture_violations,
            FindingKind::SolverFailure => &mut self.solver_failures,
        } += 1;
        if self.findings.len() < MAX_FINDINGS {
            let weights = (self.suite == Suite::GeneralizedBorcea).then(|| weights.weights().to_vec());
            self.findings.push(Finding { kind, trial, roots: roots.clone(), weights, outcome, detail });
        }
    }

    /// Failures that count against a proven statement.
    pub fn hard_failures(&self) -> usize {
        self.violations + self.missed_equalities + self.solver_failures
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteReport>,
    /// Rows where `refined <= pawlowski <= 1` or `gamma <= 1` failed,
    /// counted when thm11, thm-mt1 and pawlowski ran together.
    pub ordering_failures: usize,
}

impl FuzzReport {
    pub fn hard_failures(&self) -> usize {
        self.ordering_failures + self.suites.iter().filter(|s| !s.suite.is_conjecture()).map(SuiteReport::hard_failures).sum::<usize>()
    }

    pub fn conjecture_violations(&self) -> usize {
        self.suites.iter().map(|s| s.conjecture_violations).sum()
    }

    pub fn anomalies(&self) -> usize {
        self.suites.iter().map(|s| s.anomalies).sum()
    }

    pub fn get(&self, suite: Suite, degree: usize) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite && s.degree == degree)
    }
}

#[derive(Debug, Clone)]
enum Verdict {
    Checked {
        outcome: CheckOutcome,
        rechecked: bool,
        kind: Option<FindingKind>,
    },
    Failed(String),
}

/// Runs one checker on precomputed critical points.
pub fn evaluate(suite: Suite, a: &Analysis, tol: &Tolerances, p: Power, weights: &WeightVector) -> Result<CheckOutcome> {
    match suite {
        Suite::Schoenberg => Ok(ineq::schoenberg(a, tol)),
        Suite::Thm11 => ineq::theorem_1_1(a, tol),
        Suite::Identity => Ok(ineq::averaging_identity(a, tol)),
        Suite::ThmMt => Ok(ineq::theorem_mt(a, tol)),
        Suite::ThmMt1 => ineq::theorem_mt1(a, tol),
        Suite::Pawlowski => ineq::pawlowski(a, tol),
        Suite::Borcea => ineq::borcea(a, p, tol),
        Suite::GeneralizedBorcea => ineq::generalized_borcea(a, weights, p, tol),
    }
}

/// Checks every suite against one configuration, re-verifying as the fuzz
/// driver does. Used for single-spec runs.
pub fn check_one(roots: &RootSet, suites: &[Suite], p: Power, tol: &Tolerances) -> Vec<(Suite, Result<CheckOutcome>)> {
    let weights = WeightVector::uniform(roots.degree()).expect("degree >= 1");
    let analysis = Analysis::new(roots, &tol.rootfind).or_else(|_| Analysis::new(roots, &Tolerances::strict().rootfind));
    suites
        .iter()
        .map(|&s| {
            let out = match &analysis {
                Ok(a) => evaluate(s, a, tol, p, &weights),
                Err(e) => Err(e.clone()),
            };
            (s, out)
        })
        .collect()
}

struct Trial<'a> {
    roots: RootSet,
    weights: WeightVector,
    tol: &'a Tolerances,
    p: Power,
    analysis: std::result::Result<Analysis, Error>,
    strict: Option<std::result::Result<Analysis, Error>>,
}

impl Trial<'_> {
    fn strict(&mut self) -> &std::result::Result<Analysis, Error> {
        let roots = &self.roots;
        self.strict.get_or_insert_with(|| Analysis::new(roots, &Tolerances::strict().rootfind))
    }

    fn strict_outcome(&mut self, suite: Suite, tol: &Tolerances) -> Result<CheckOutcome> {
        self.strict();
        match self.strict.as_ref().expect("just computed") {
            Ok(a) => evaluate(suite, a, tol, self.p, &self.weights),
            Err(e) => Err(e.clone()),
        }
    }

    fn verdict(&mut self, suite: Suite) -> Verdict {
        let outcome = match &self.analysis {
            Ok(a) => evaluate(suite, a, self.tol, self.p, &self.weights),
            Err(e) => Err(e.clone()),
        };
        // retry everything with the strict root finder
        let outcome = match outcome.or_else(|_| self.strict_outcome(suite, &{ *self.tol })) {
            Ok(o) => o,
            Err(e) => return Verdict::Failed(e.to_string()),
        };
        if outcome.passed && !outcome.unexpected_equality() && !outcome.missed_equality() {
            return Verdict::Checked { outcome, rechecked: false, kind: None };
        }
        let strict_rootfind = Tolerances { rootfind: Tolerances::strict().rootfind, ..*self.tol };
        let kind = (|| -> Result<Option<FindingKind>> {
            let again = self.strict_outcome(suite, &strict_rootfind)?;
            if !again.passed {
                return Ok(Some(if suite.is_conjecture() {
                    FindingKind::ConjectureViolation
                } else {
                    FindingKind::Violation
                }));
            }
            if again.missed_equality() {
                return Ok(Some(FindingKind::MissedEquality));
            }
            if outcome.unexpected_equality() && self.strict_outcome(suite, &Tolerances::anomaly())?.unexpected_equality() {
                return Ok(Some(FindingKind::Anomaly));
            }
            Ok(None)
        })();
        match kind {
            Ok(kind) => Verdict::Checked { outcome, rechecked: true, kind },
            Err(e) => Verdict::Failed(e.to_string()),
        }
    }
}

fn ordering_ok(a: &Analysis) -> bool {
    let n = a.degree() as f64;
    let g = a.gamma().gamma;
    ineq::refined_upper(n) <= ineq::pawlowski_upper(n) + 1e-12 && ineq::pawlowski_upper(n) <= 1.0 && g <= 1.0 + 1e-7
}

pub fn run(cfg: &FuzzConfig) -> Result<FuzzReport> {
    if cfg.suites.is_empty() || cfg.degrees.is_empty() {
        return Err(invalid("no suites or degrees selected"));
    }
    if let Some(&n) = cfg.degrees.iter().find(|&&n| n < 2) {
        return Err(invalid(format!("degrees must be >= 2, got {n}")));
    }
    cfg.tolerances.rootfind.validate()?;

    // suites sharing a corpus share their configurations and critical points
    let mut groups: Vec<(Corpus, Vec<Suite>)> = Vec::new();
    for &s in &cfg.suites {
        let corpus = cfg.corpus.unwrap_or(s.default_corpus());
        match groups.iter_mut().find(|(c, _)| *c == corpus) {
            Some((_, v)) if !v.contains(&s) => v.push(s),
            Some(_) => {}
            None => groups.push((corpus, vec![s])),
        }
    }

    let mut report = FuzzReport { seed: cfg.seed, trials: cfg.trials, suites: Vec::new(), ordering_failures: 0 };
    for &n in &cfg.degrees {
        for (corpus, suites) in &groups {
            let ordering = [Suite::Thm11, Suite::ThmMt1, Suite::Pawlowski].iter().all(|s| suites.contains(s));
            let stream = corpus.tag() ^ ((n as u64) << 48);
            let results: Vec<(RootSet, WeightVector, Vec<Verdict>, bool)> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, stream, t as u64));
                    let roots = corpus.sample(n, &mut rng);
                    let weights = sample_weights(n, &mut rng);
                    let analysis = Analysis::new(&roots, &cfg.tolerances.rootfind);
                    let ordered = !ordering || analysis.as_ref().map_or(true, ordering_ok);
                    let mut trial = Trial { roots, weights, tol: &cfg.tolerances, p: cfg.p, analysis, strict: None };
                    let verdicts = suites.iter().map(|&s| trial.verdict(s)).collect();
                    (trial.roots, trial.weights, verdicts, ordered)
                })
                .collect();

            let mut rows: Vec<SuiteReport> = suites.iter().map(|&s| SuiteReport::new(s, n, *corpus)).collect();
            for (t, (roots, weights, verdicts, ordered)) in results.into_iter().enumerate() {
                report.ordering_failures += !ordered as usize;
                for (row, v) in rows.iter_mut().zip(verdicts) {
                    row.absorb(t, &roots, &weights, v);
                }
            }
            report.suites.extend(rows);
        }
    }
    Ok(report)
}
