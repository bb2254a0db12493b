//! Run configuration: flat `key = value` text merged with command-line
//! overrides, validated in one place.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use matrixwell_core::{FockBasis, InteriorBlockSpec, Statistics, WellConfig};
use serde::{Deserialize, Serialize};

/// Every key accepted in a config file or as a flag.
pub const KEYS: [&str; 17] = [
    "scenario",
    "L",
    "m",
    "hbar",
    "N",
    "t-start",
    "t-end",
    "steps",
    "state",
    "block",
    "modes",
    "statistics",
    "cutoff",
    "particles",
    "positions",
    "out",
    "format",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: &str, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Elements,
    Commutator,
    Evolve,
    Spread,
    Ehrenfest,
    Revival,
    FockDensity,
    FockAlgebra,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Elements,
        Scenario::Commutator,
        Scenario::Evolve,
        Scenario::Spread,
        Scenario::Ehrenfest,
        Scenario::Revival,
        Scenario::FockDensity,
        Scenario::FockAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Elements => "elements",
            Scenario::Commutator => "commutator",
            Scenario::Evolve => "evolve",
            Scenario::Spread => "spread",
            Scenario::Ehrenfest => "ehrenfest",
            Scenario::Revival => "revival",
            Scenario::FockDensity => "fock-density",
            Scenario::FockAlgebra => "fock-algebra",
        }
    }

    fn uses(self, key: &str) -> bool {
        use Scenario::*;
        match key {
            "scenario" | "L" | "m" | "hbar" | "out" | "format" => true,
            "N" => self != FockAlgebra,
            "t-start" | "t-end" | "steps" => matches!(self, Evolve | Spread | Ehrenfest | FockDensity),
            "state" => matches!(self, Spread | Ehrenfest | Revival),
            "block" => matches!(self, Commutator | Evolve),
            "modes" | "statistics" | "cutoff" => matches!(self, FockDensity | FockAlgebra),
            "particles" | "positions" => self == FockDensity,
            _ => false,
        }
    }
}

impl FromStr for Scenario {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| ConfigError::new("scenario", format!("unknown scenario `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParticleKind {
    Boson,
    Fermion,
}

impl From<ParticleKind> for Statistics {
    fn from(k: ParticleKind) -> Self {
        match k {
            ParticleKind::Boson => Statistics::Boson,
            ParticleKind::Fermion => Statistics::Fermion,
        }
    }
}

/// Initial state of the single-particle scenarios.
///
/// Text forms: `eigen:n`, `superpose:n1,n2,...` (equal weights),
/// `packet:center,width[,p0]`, `random:count,seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Eigen { n: usize },
    Superpose { modes: Vec<usize> },
    Packet { center: f64, width: f64, momentum: f64 },
    Random { count: usize, seed: u64 },
}

impl StateSpec {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let bad = |msg: &str| ConfigError::new("state", format!("{msg} in `{text}`"));
        let (kind, args) = text.split_once(':').ok_or_else(|| bad("expected kind:args"))?;
        let list: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad("malformed integer"));
        let num = |s: &str| parse_f64("state", s);
        match (kind.trim(), list.as_slice()) {
            ("eigen", [n]) => Ok(StateSpec::Eigen { n: int(n)? }),
            ("superpose", modes) if !modes.is_empty() => Ok(StateSpec::Superpose {
                modes: modes.iter().map(|s| int(s)).collect::<Result<_, _>>()?,
            }),
            ("packet", [c, w]) => Ok(StateSpec::Packet {
                center: num(c)?,
                width: num(w)?,
                momentum: 0.0,
            }),
            ("packet", [c, w, p]) => Ok(StateSpec::Packet {
                center: num(c)?,
                width: num(w)?,
                momentum: num(p)?,
            }),
            ("random", [count, seed]) => Ok(StateSpec::Random {
                count: int(count)?,
                seed: seed.parse().map_err(|_| bad("malformed seed"))?,
            }),
            _ => Err(bad("unrecognised state")),
        }
    }

    fn validate(&self, dim: usize, width: f64) -> Result<(), ConfigError> {
        let mode_ok = |n: usize| (1..=dim).contains(&n);
        let ok = match self {
            StateSpec::Eigen { n } => mode_ok(*n),
            StateSpec::Superpose { modes } => modes.iter().all(|&n| mode_ok(n)),
            StateSpec::Random { count, .. } => mode_ok(*count),
            StateSpec::Packet {
                center,
                width: w,
                momentum,
            } => {
                if !(*center > 0.0 && *center < width && *w > 0.0 && *w < width / 4.0) {
                    return Err(ConfigError::new(
                        "state",
                        format!("packet needs 0 < center < {width} and 0 < width < {}", width / 4.0),
                    ));
                }
                momentum.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ConfigError::new("state", format!("mode indices must lie in 1..={dim}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Positions {
    /// `count` evenly spaced points on `[0, L]`, endpoints included.
    Grid { count: usize },
    List { values: Vec<f64> },
}

impl Positions {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        if let Some(count) = text.strip_prefix("grid:") {
            let count = count
                .trim()
                .parse()
                .map_err(|_| ConfigError::new("positions", format!("malformed count `{count}`")))?;
            return Ok(Positions::Grid { count });
        }
        let values = text
            .split(',')
            .map(|s| parse_f64("positions", s.trim()))
            .collect::<Result<_, _>>()?;
        Ok(Positions::List { values })
    }

    pub fn points(&self, width: f64) -> Vec<f64> {
        match self {
            Positions::Grid { count } => (0..*count)
                .map(|i| {
                    if i + 1 == *count {
                        width
                    } else {
                        width * i as f64 / (*count - 1) as f64
                    }
                })
                .collect(),
            Positions::List { values } => values.clone(),
        }
    }
}

/// Physical and scenario parameters. This is what reports echo back, so it
/// excludes the output destination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub scenario: Scenario,
    #[serde(rename = "L")]
    pub width: f64,
    pub m: f64,
    pub hbar: f64,
    #[serde(rename = "N")]
    pub dim: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    pub state: Option<StateSpec>,
    pub block: Option<usize>,
    pub modes: usize,
    pub statistics: ParticleKind,
    pub cutoff: usize,
    pub particles: usize,
    pub positions: Positions,
}

impl Params {
    pub fn well(&self) -> WellConfig {
        WellConfig::new(self.width, self.m, self.hbar, self.dim)
            .expect("parameters are validated at parse time")
    }

    pub fn fock_basis(&self) -> FockBasis {
        FockBasis::new(self.modes, self.statistics.into(), self.cutoff)
            .expect("parameters are validated at parse time")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn parse_f64(field: &str, s: &str) -> Result<f64, ConfigError> {
    let v: f64 = s
        .parse()
        .map_err(|_| ConfigError::new(field, format!("malformed number `{s}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::new(field, format!("must be finite, got `{s}`")))
    }
}

fn parse_usize(field: &str, s: &str) -> Result<usize, ConfigError> {
    s.parse()
        .map_err(|_| ConfigError::new(field, format!("malformed integer `{s}`")))
}

/// Parses flat `key = value` lines. Blank lines and lines starting with `#`
/// are skipped; unknown and repeated keys are errors.
pub fn parse_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::new("config", format!("line {}: expected `key = value`", i + 1))
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(key, "unknown key"));
        }
        if map.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(ConfigError::new(key, "given more than once"));
        }
    }
    Ok(map)
}

/// Builds a validated [`RunConfig`] from config-file text (if any) and flag
/// overrides. Overrides win over file values.
pub fn parse_config(
    text: Option<&str>,
    overrides: &[(&str, String)],
) -> Result<RunConfig, ConfigError> {
    let mut map = match text {
        Some(t) => parse_text(t)?,
        None => BTreeMap::new(),
    };
    for (key, value) in overrides {
        if !KEYS.contains(key) {
            return Err(ConfigError::new(key, "unknown key"));
        }
        map.insert(key.to_string(), value.clone());
    }
    from_map(&map)
}

fn from_map(map: &BTreeMap<String, String>) -> Result<RunConfig, ConfigError> {
    let scenario: Scenario = map
        .get("scenario")
        .ok_or_else(|| ConfigError::new("scenario", "no scenario given"))?
        .parse()?;
    for key in map.keys() {
        if !scenario.uses(key) {
            log::warn!("{key} is not used by scenario {}", scenario.name());
        }
    }
    let get = |key: &str| map.get(key).map(String::as_str);
    let defaulted = |key: &str, default: &str| -> String {
        match get(key) {
            Some(v) => v.to_string(),
            None => {
                if scenario.uses(key) {
                    log::info!("{key} not set, using {default}");
                }
                default.to_string()
            }
        }
    };
    let positive = |key: &str, default: &str| -> Result<f64, ConfigError> {
        let v = parse_f64(key, &defaulted(key, default))?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(ConfigError::new(key, format!("must be positive, got {v}")))
        }
    };

    let width = positive("L", "1")?;
    let m = positive("m", "1")?;
    let hbar = positive("hbar", "1")?;
    let dim = parse_usize("N", &defaulted("N", "64"))?;
    if dim < 2 {
        return Err(ConfigError::new("N", "need at least two modes"));
    }
    let t_start = parse_f64("t-start", &defaulted("t-start", "0"))?;
    let t_end = parse_f64("t-end", &defaulted("t-end", "0.1"))?;
    let steps = parse_usize("steps", &defaulted("steps", "11"))?;
    if scenario.uses("t-end") {
        if t_end <= t_start {
            return Err(ConfigError::new("t-end", "must exceed t-start"));
        }
        if steps < 2 {
            return Err(ConfigError::new("steps", "need at least two samples"));
        }
    }

    let state = match get("state") {
        Some(s) => Some(StateSpec::parse(s)?),
        None if scenario == Scenario::Revival => {
            let default = StateSpec::Packet {
                center: width / 2.0,
                width: 0.05 * width,
                momentum: 0.0,
            };
            log::info!("state not set, using a centred packet of width {}", 0.05 * width);
            Some(default)
        }
        None if scenario.uses("state") => {
            return Err(ConfigError::new(
                "state",
                format!("scenario {} needs an initial state", scenario.name()),
            ))
        }
        None => None,
    };
    if let Some(s) = &state {
        s.validate(dim, width)?;
    }

    let block = get("block").map(|b| parse_usize("block", b)).transpose()?;
    match (scenario, block) {
        (Scenario::Commutator, Some(b)) => {
            InteriorBlockSpec::new(b)
                .and_then(|spec| spec.validate(dim))
                .map_err(|e| ConfigError::new("block", e.to_string()))?;
        }
        (Scenario::Commutator, None) => {
            if dim < 4 {
                return Err(ConfigError::new("N", "commutator diagnostics need N >= 4"));
            }
            log::info!("block not set, using N/4 = {}", dim / 4);
        }
        (Scenario::Evolve, Some(b)) if b == 0 || b > dim => {
            return Err(ConfigError::new("block", format!("must lie in 1..={dim}")));
        }
        _ => {}
    }

    let statistics = match defaulted("statistics", "boson").as_str() {
        "boson" | "bosons" => ParticleKind::Boson,
        "fermion" | "fermions" => ParticleKind::Fermion,
        other => {
            return Err(ConfigError::new(
                "statistics",
                format!("expected boson or fermion, got `{other}`"),
            ))
        }
    };
    let modes = parse_usize("modes", &defaulted("modes", "3"))?;
    let particles = parse_usize("particles", &defaulted("particles", "1"))?;
    let cutoff = match (statistics, get("cutoff")) {
        (ParticleKind::Fermion, _) => 1,
        (ParticleKind::Boson, Some(c)) => parse_usize("cutoff", c)?,
        (ParticleKind::Boson, None) => {
            let c = particles.max(1);
            if scenario.uses("cutoff") {
                log::info!("cutoff not set, using {c}");
            }
            c
        }
    };
    let positions = Positions::parse(&defaulted("positions", "grid:51"))?;
    if scenario.uses("modes") {
        FockBasis::new(modes, statistics.into(), cutoff)
            .map_err(|e| ConfigError::new("modes", e.to_string()))?;
        if scenario == Scenario::FockDensity {
            if modes > dim {
                return Err(ConfigError::new("modes", format!("must not exceed N = {dim}")));
            }
            let capacity = match statistics {
                ParticleKind::Boson => cutoff,
                ParticleKind::Fermion => modes,
            };
            if particles > capacity {
                return Err(ConfigError::new(
                    "particles",
                    format!("at most {capacity} fit this basis"),
                ));
            }
            let points = positions.points(width);
            if points.is_empty() || points.iter().any(|x| !(0.0..=width).contains(x)) {
                return Err(ConfigError::new(
                    "positions",
                    format!("need at least one point inside [0, {width}]"),
                ));
            }
        }
    }

    let out = get("out").map(PathBuf::from);
    let format = match get("format") {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => {
            return Err(ConfigError::new("format", format!("expected csv or json, got `{other}`")))
        }
        None => match out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        },
    };

    Ok(RunConfig {
        params: Params {
            scenario,
            width,
            m,
            hbar,
            dim,
            t_start,
            t_end,
            steps,
            state,
            block,
            modes,
            statistics,
            cutoff,
            particles,
            positions,
        },
        out,
        format,
    })
}
