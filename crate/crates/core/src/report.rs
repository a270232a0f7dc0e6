//! Input documents and machine-readable reports.
//!
//! Every float in a report is written with 17 significant digits, which
//! round-trips any `f64` exactly.

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{invalid, Result};
use crate::poly::{pair, Complex, Polynomial, RootSet};
use crate::rootfind::{find_roots, RootFindConfig};

/// Largest degree accepted from input documents.
pub const CLI_MAX_DEGREE: usize = 64;

/// A polynomial given by exactly one of its zeros or its ascending monic
/// coefficients, each as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_pairs")]
    pub roots: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_pairs")]
    pub coeffs: Option<Vec<Complex>>,
}

mod opt_pairs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Complex>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => pair::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Complex>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "pair::vec")] Vec<Complex>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

impl PolynomialSpec {
    pub fn from_roots(r: &RootSet) -> Self {
        Self { roots: Some(r.roots().to_vec()), coeffs: None }
    }

    pub fn from_coeffs(p: &Polynomial) -> Self {
        Self { roots: None, coeffs: Some(p.coeffs().to_vec()) }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed polynomial spec: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn degree(&self) -> usize {
        match (&self.roots, &self.coeffs) {
            (Some(r), _) => r.len(),
            (None, Some(c)) => c.len().saturating_sub(1),
            (None, None) => 0,
        }
    }

    /// Zeros of the described polynomial; coefficients go through the root finder.
    pub fn resolve(&self, cfg: &RootFindConfig) -> Result<RootSet> {
        let r = match (&self.roots, &self.coeffs) {
            (Some(_), Some(_)) => return Err(invalid("give either roots or coeffs, not both")),
            (None, None) => return Err(invalid("spec needs roots or coeffs")),
            (Some(r), None) => RootSet::new(r.clone())?,
            (None, Some(c)) => {
                let p = Polynomial::from_coeffs(c.clone())?;
                if p.degree() > CLI_MAX_DEGREE {
                    return Err(invalid(format!("degree {} exceeds the limit {CLI_MAX_DEGREE}", p.degree())));
                }
                let found = find_roots(p.coeffs(), cfg)?;
                if !found.converged {
                    return Err(invalid(format!("root finder did not converge (residual {:e})", found.residual)));
                }
                found.roots
            }
        };
        if r.degree() < 2 {
            return Err(invalid("degree must be at least 2"));
        }
        if r.degree() > CLI_MAX_DEGREE {
            return Err(invalid(format!("degree {} exceeds the limit {CLI_MAX_DEGREE}", r.degree())));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: serde_json::Value,
    pub results: serde_json::Value,
    pub seed: u64,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new<T: Serialize>(command: &str, input: serde_json::Value, results: &T, seed: u64) -> Result<Self> {
        Ok(Self {
            command: command.to_string(),
            input,
            results: serde_json::to_value(results).map_err(|e| invalid(e.to_string()))?,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: None,
        })
    }

    /// Seconds since the Unix epoch.
    pub fn stamp(mut self) -> Self {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }
}

/// Pretty JSON whose floats carry 17 significant digits.
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Writes `value` as pretty JSON with 17-digit floats and a trailing newline.
pub fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    write_json(value, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
