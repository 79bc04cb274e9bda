//! Declarative run configuration, read from a JSON file and overridden by flags.

use super::CliError;
use crate::asymptotics::{max_order, RegimeLabel};
use crate::monodromy::{Case, MonodromyPoint, SymmetryLabel};
use crate::params::{BranchIndex, Parameters, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Sub-command selected by a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// Coefficient tables.
    Coeffs,
    /// Trans-series evaluation.
    Eval,
    /// Case classification of a monodromy point.
    Classify,
    /// Symmetry labels and their action.
    Symmetry,
    /// Verification checks.
    Verify,
    /// Parallel evaluation over regimes and a τ ladder.
    Sweep,
}

/// Output serialization.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Pretty-printed JSON with sorted keys.
    #[default]
    Json,
    /// Comment header block followed by a CSV table.
    Csv,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format {s:?}; use json or csv"))),
        }
    }
}

/// Where and how results are written.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    /// Destination file; standard output when absent.
    pub path: Option<PathBuf>,
    /// Serialization format.
    pub format: Option<Format>,
}

/// Evaluation points: a single `τ` or a geometric ladder of `|τ|` along the ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauSpec {
    /// One point, given as `[re, im]`.
    Single(C64),
    /// `count` points from `start` to `stop` in geometric progression.
    Ladder {
        /// First `|τ|`.
        start: f64,
        /// Last `|τ|`.
        stop: f64,
        /// Number of points, at least one.
        count: usize,
    },
}

impl TauSpec {
    /// Moduli of the ladder, or the single point itself.
    pub fn moduli(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            TauSpec::Single(t) => Ok(vec![t.norm()]),
            TauSpec::Ladder { start, stop, count } => {
                if !(start > 0.0 && stop > 0.0) || count == 0 {
                    return Err(CliError::Usage(format!(
                        "tau ladder needs positive end points and count >= 1, got {start}, {stop}, {count}"
                    )));
                }
                if count == 1 {
                    return Ok(vec![start]);
                }
                let r = (stop / start).ln() / (count - 1) as f64;
                Ok((0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start * (r * i as f64).exp()
                        }
                    })
                    .collect())
            }
        }
    }

    /// The evaluation points along `regime`: the single point as given, or the
    /// ladder placed on the ray.
    pub fn points(&self, regime: &RegimeLabel) -> Result<Vec<C64>, CliError> {
        match *self {
            TauSpec::Single(t) => Ok(vec![t]),
            TauSpec::Ladder { .. } => Ok(self
                .moduli()?
                .into_iter()
                .map(|t| regime.lambda() * t)
                .collect()),
        }
    }
}

/// Every setting a run can take; all fields are optional so that a file and the
/// flags can be merged field by field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Sub-command, when the file fixes it.
    pub command: Option<CommandKind>,
    /// Formal monodromy parameter.
    pub a: Option<C64>,
    /// Coupling `b`.
    pub b: Option<C64>,
    /// Sign `ε`.
    pub epsilon: Option<i8>,
    /// Real-axis phase label of `εb`.
    pub eps2: Option<i8>,
    /// Imaginary-axis phase label of `εb`.
    pub eps2_hat: Option<i8>,
    /// Branch index.
    pub k: Option<i8>,
    /// Regime as a symmetry label, e.g. `(0,0,0|0)` or `^(1,0,1|0)`.
    pub regime: Option<String>,
    /// Regimes of a sweep; every admissible regime when absent.
    pub regimes: Option<Vec<String>>,
    /// `ε₁` (or `ε̂₁`) for the coefficient tables.
    pub eps1: Option<i8>,
    /// Monodromy point.
    pub point: Option<MonodromyPoint>,
    /// Case of a sampled point: `i`, `ii` or `iii`.
    pub case: Option<String>,
    /// Stokes multiplier `s⁰₀`.
    pub s00: Option<C64>,
    /// Truncation order.
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Evaluation points.
    pub tau: Option<TauSpec>,
    /// Coefficient family name.
    pub family: Option<String>,
    /// Quantity name.
    pub quantity: Option<String>,
    /// Verification check name.
    pub check: Option<String>,
    /// Symmetry label to apply.
    pub label: Option<String>,
    /// List all symmetry labels.
    pub enumerate: Option<bool>,
    /// Seed of every sampled quantity.
    pub seed: Option<u64>,
    /// Output destination and format.
    pub output: Option<OutputSpec>,
    /// Named tolerances overriding the defaults of the checks.
    pub tolerances: BTreeMap<String, f64>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($field:ident),*) => {
        $( if $src.$field.is_some() { $dst.$field = $src.$field.clone(); } )*
    };
}

impl RunConfig {
    /// Reads a configuration file.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn merged_with(mut self, flags: RunConfig) -> Self {
        overlay!(self, flags; command, a, b, epsilon, eps2, eps2_hat, k, regime, regimes,
            eps1, point, case, s00, n, tau, family, quantity, check, label, enumerate, seed);
        if let Some(out) = flags.output {
            let mut merged = self.output.take().unwrap_or_default();
            if out.path.is_some() {
                merged.path = out.path;
            }
            if out.format.is_some() {
                merged.format = out.format;
            }
            self.output = Some(merged);
        }
        self.tolerances.extend(flags.tolerances);
        self
    }

    /// Validated parameters; `a = 0`, `b = 1`, `ε = 1` unless given.
    pub fn parameters(&self) -> Result<Parameters, CliError> {
        let a = self.a.unwrap_or_default();
        let b = self.b.unwrap_or(C64::new(1.0, 0.0));
        let eps = self.epsilon.unwrap_or(1);
        let p = Parameters::new(a, b, eps)?;
        Ok(Parameters::with_labels(
            a,
            b,
            eps,
            self.eps2.unwrap_or(p.eps2),
            self.eps2_hat.unwrap_or(p.eps2_hat),
        )?)
    }

    /// Branch index; `+1` unless given.
    pub fn branch(&self) -> Result<BranchIndex, CliError> {
        Ok(BranchIndex::new(self.k.unwrap_or(1))?)
    }

    /// Truncation order, checked against the cap.
    pub fn order(&self, default: usize) -> Result<usize, CliError> {
        let n = self.n.unwrap_or(default);
        let cap = max_order();
        if n > cap {
            return Err(CliError::Usage(format!(
                "N = {n} exceeds the cap {cap} (set DP3_MAX_N to raise it)"
            )));
        }
        Ok(n)
    }

    /// The regime named by `regime`, or the first admissible regime for the
    /// sign of `εb`.
    pub fn regime_label(&self, params: &Parameters, k: BranchIndex) -> Result<RegimeLabel, CliError> {
        match &self.regime {
            Some(s) => parse_regime(s, params, k),
            None => RegimeLabel::all_for(params, k)
                .into_iter()
                .next()
                .ok_or_else(|| CliError::Usage("no admissible regime".into())),
        }
    }

    /// Case of a sampled point.
    pub fn sample_case(&self) -> Result<Option<Case>, CliError> {
        self.case.as_deref().map(parse_case).transpose()
    }

    /// Tolerance `name`, or `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Output format; JSON unless given.
    pub fn format(&self) -> Format {
        self.output.as_ref().and_then(|o| o.format).unwrap_or_default()
    }
}

/// Parses a regime label and checks it against the parameters.
pub fn parse_regime(s: &str, params: &Parameters, k: BranchIndex) -> Result<RegimeLabel, CliError> {
    let label: SymmetryLabel = s.parse()?;
    let regime = RegimeLabel::from_label(label, k);
    regime.check_params(params)?;
    Ok(regime)
}

/// Parses `i`, `ii` or `iii`.
pub fn parse_case(s: &str) -> Result<Case, CliError> {
    match s {
        "i" => Ok(Case::CaseI),
        "ii" => Ok(Case::CaseIiKplus),
        "iii" => Ok(Case::CaseIiiKminus),
        _ => Err(CliError::Usage(format!("unknown case {s:?}; use i, ii or iii"))),
    }
}

/// Parses `x`, `x+yi`, `x-yi`, `yi` or `x,y`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse {s:?} as a complex number");
    if let Some((re, im)) = t.split_once(',') {
        return Ok(C64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| {
            (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i)
        .last();
    let imag = |x: &str| -> Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => Ok(C64::new(body[..i].parse().map_err(|_| bad())?, imag(&body[i..])?)),
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| C64::new(re, im);
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), c(0.3, 0.1));
        assert_eq!(parse_complex("-0.3-0.1i").unwrap(), c(-0.3, -0.1));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
        assert_eq!(parse_complex("2e-1-3e-2i").unwrap(), c(0.2, -0.03));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1.5, -2").unwrap(), c(1.5, -2.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let file = RunConfig {
            n: Some(4),
            seed: Some(1),
            output: Some(OutputSpec {
                path: Some("a.json".into()),
                format: Some(Format::Csv),
            }),
            ..Default::default()
        };
        let flags = RunConfig {
            n: Some(8),
            output: Some(OutputSpec {
                path: None,
                format: Some(Format::Json),
            }),
            ..Default::default()
        };
        let m = file.merged_with(flags);
        assert_eq!(m.n, Some(8));
        assert_eq!(m.seed, Some(1));
        let out = m.output.unwrap();
        assert_eq!(out.path, Some("a.json".into()));
        assert_eq!(out.format, Some(Format::Json));
    }

    #[test]
    fn geometric_ladder_hits_both_ends() {
        let l = TauSpec::Ladder {
            start: 40.0,
            stop: 160.0,
            count: 3,
        };
        let m = l.moduli().unwrap();
        assert_eq!(m[2], 160.0);
        assert!((m[1] - 80.0).abs() < 1e-12);
    }
}
