//! Command layer for the `gf2ramsey` binary: run configurations, reports,
//! and one function per subcommand.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use gf2ramsey::forms::{FormError, SpaceSpec};
use gf2ramsey::gf2::Subspace;
use gf2ramsey::par::Parallelism;
use gf2ramsey::ramsey::{Budget, CopyNotion, FlatVariant, Method, Pattern, RamseyError};

pub mod commands;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 2,
            _ => 3,
        }
    }
}

impl From<RamseyError> for CliError {
    fn from(e: RamseyError) -> Self {
        match e {
            RamseyError::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<gf2ramsey::colorings::ColoringError> for CliError {
    fn from(e: gf2ramsey::colorings::ColoringError) -> Self {
        CliError::Config(e.to_string())
    }
}

/// A pattern plus the notion used to recognise its copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSpec {
    #[serde(flatten)]
    pub pattern: Pattern,
    #[serde(default = "isometric")]
    pub notion: CopyNotion,
}

fn isometric() -> CopyNotion {
    CopyNotion::Isometric
}

impl PatternSpec {
    /// `dim,rad` (isometric) or `dim,rad,meet` (ambient orbit), or JSON.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| CliError::Config(format!("pattern: {e}")));
        }
        let nums: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Config(format!("pattern `{s}`: {e}")))?;
        match nums[..] {
            [dim, rad_dim] => Ok(Self {
                pattern: Pattern {
                    dim,
                    rad_dim,
                    rad_meet: None,
                },
                notion: CopyNotion::Isometric,
            }),
            [dim, rad_dim, meet] => Ok(Self {
                pattern: Pattern {
                    dim,
                    rad_dim,
                    rad_meet: Some(meet),
                },
                notion: CopyNotion::AmbientOrbit,
            }),
            _ => Err(CliError::Config(format!(
                "pattern `{s}`: expected dim,rad[,meet]"
            ))),
        }
    }
}

/// `symplectic:k`, `bounded:k,m`, or a JSON space.
pub fn parse_space(s: &str) -> Result<SpaceSpec, CliError> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| CliError::Config(format!("space: {e}")));
    }
    let bad = || CliError::Config(format!("space `{s}`: expected symplectic:k or bounded:k,m"));
    let (kind, args) = s.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let json = match (kind, &nums[..]) {
        ("symplectic", [k]) => serde_json::json!({"kind": "symplectic", "k": k}),
        ("bounded", [k, m]) => serde_json::json!({"kind": "bounded", "k": k, "m": m}),
        _ => return Err(bad()),
    };
    serde_json::from_value(json).map_err(|e| CliError::Config(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedColoring {
    Rwb,
    Independence,
    ProjectionFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section3Check {
    Lemma,
    Independence,
    Pram,
    Dim1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandSpec {
    VerifySection2 {
        k: usize,
    },
    VerifySection3 {
        which: Section3Check,
        k: usize,
        m: usize,
        #[serde(default = "two")]
        colors: u32,
        /// `dim A0` for pram and dim1.
        #[serde(default)]
        a0_dim: Option<usize>,
        /// Radical part of B for pram and dim1.
        #[serde(default)]
        b0_dim: Option<usize>,
    },
    Arrow {
        space: SpaceSpec,
        #[serde(default)]
        c: Option<Subspace>,
        pattern_a: PatternSpec,
        pattern_b: PatternSpec,
        colors: u32,
        #[serde(default)]
        hint: Option<NamedColoring>,
    },
    Degree {
        spaces: Vec<SpaceSpec>,
        pattern_a: PatternSpec,
        pattern_b: PatternSpec,
        colors: u32,
        #[serde(default)]
        hint: Option<NamedColoring>,
    },
    Tuples {
        m: usize,
        t: usize,
        k: usize,
        n: usize,
        colors: u32,
    },
    Vector {
        t: usize,
        k: usize,
        colors: u32,
        max_n: usize,
        variant: FlatVariant,
    },
    ExportCnf {
        space: SpaceSpec,
        #[serde(default)]
        c: Option<Subspace>,
        pattern_a: PatternSpec,
        pattern_b: PatternSpec,
        colors: u32,
        #[serde(default = "one")]
        threshold: u32,
    },
}

fn one() -> u32 {
    1
}

fn two() -> u32 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandSpec,
    #[serde(default = "auto")]
    pub method: Method,
    #[serde(default)]
    pub budget: Budget,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn auto() -> Method {
    Method::Auto
}

impl RunConfig {
    pub fn new(command: CommandSpec) -> Self {
        Self {
            command,
            method: Method::Auto,
            budget: Budget::default(),
            threads: None,
        }
    }

    /// Parses a JSON config; errors carry line and column.
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("{origin}:{}:{}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the compact JSON form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let b = &self.budget;
        if b.max_copies == 0 || b.max_colorings == 0 || b.max_decisions == 0 || b.max_variables == 0
        {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("thread count must be positive".into()));
        }
        Ok(())
    }

    pub fn parallelism(&self) -> Parallelism {
        if self.threads == Some(1) {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Unknown,
    /// A completed computation that asserts nothing.
    Computed,
    /// Computed for a case with no known answer to compare against.
    Exploration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub status: ClaimStatus,
    /// Finite parameters the verdict is relative to.
    pub truncation: Value,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub config: RunConfig,
    pub claims: Vec<Claim>,
    /// Paths relative to the output directory.
    pub artifacts: Vec<String>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == ClaimStatus::Fail) {
            1
        } else if self.claims.iter().any(|c| c.status == ClaimStatus::Unknown) {
            2
        } else {
            0
        }
    }

    /// JSON with every `elapsed_ms` field removed.
    pub fn without_timing(&self) -> Value {
        fn strip(v: &mut Value) {
            match v {
                Value::Object(map) => {
                    map.remove("elapsed_ms");
                    map.values_mut().for_each(strip);
                }
                Value::Array(items) => items.iter_mut().for_each(strip),
                _ => {}
            }
        }
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip(&mut v);
        v
    }

    /// One CSV row per claim.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("config_hash,claim,status,truncation\n");
        for c in &self.claims {
            let status = serde_json::to_value(c.status).expect("status serializes");
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                self.config_hash,
                c.name,
                status.as_str().unwrap_or_default(),
                c.truncation.to_string().replace('"', "\"\"")
            ));
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(dir.join("report.json"), json + "\n")?;
        std::fs::write(dir.join("report.csv"), self.to_csv())?;
        Ok(())
    }
}

/// Runs a command inside a worker pool sized by the config. Artifacts go
/// to `out` when given.
pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<Report, CliError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let start = std::time::Instant::now();
    let (claims, artifacts) = pool.install(|| commands::dispatch(config, out))?;
    let report = Report {
        tool: "gf2ramsey".into(),
        version: VERSION.into(),
        config_hash: config.hash(),
        config: config.clone(),
        claims,
        artifacts,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if let Some(dir) = out {
        report.write_to(dir)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_parsing() {
        let p = PatternSpec::parse("5,1").unwrap();
        assert_eq!(p.notion, CopyNotion::Isometric);
        let p = PatternSpec::parse("1,1,0").unwrap();
        assert_eq!(p.notion, CopyNotion::AmbientOrbit);
        assert_eq!(p.pattern.rad_meet, Some(0));
        assert!(PatternSpec::parse("1").is_err());
        let p =
            PatternSpec::parse(r#"{"dim":1,"rad_dim":1,"rad_meet":0,"notion":"ambient_orbit"}"#)
                .unwrap();
        assert_eq!(p.notion, CopyNotion::AmbientOrbit);
        assert!(parse_space("symplectic:3").is_ok());
        assert!(parse_space("bounded:1,2").is_ok());
        assert!(parse_space("bounded:1").is_err());
        assert!(parse_space(r#"{"kind":"symplectic","k":2}"#).is_ok());
    }

    #[test]
    fn config_round_trip_and_hash() {
        let c = RunConfig::new(CommandSpec::Tuples {
            m: 2,
            t: 0,
            k: 1,
            n: 1,
            colors: 2,
        });
        let back = RunConfig::from_json(&c.to_json(), "inline").unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
        assert_eq!(c.hash().len(), 64);
        let err = RunConfig::from_json("{\n  \"command\": 3\n}", "cfg.json").unwrap_err();
        assert!(err.to_string().contains("cfg.json:2:"), "{err}");
    }
}
