use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Invalid configuration; reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ybe,
    Rtt,
    Gauss,
    Drinfeld,
    Hopf,
    Eval,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Ybe, Suite::Rtt, Suite::Gauss, Suite::Drinfeld, Suite::Hopf, Suite::Eval];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Rtt => "rtt",
            Suite::Gauss => "gauss",
            Suite::Drinfeld => "drinfeld",
            Suite::Hopf => "hopf",
            Suite::Eval => "eval",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Eval,
    Symbolic,
    Both,
}

impl Layer {
    pub fn includes(self, l: CheckLayer) -> bool {
        match (self, l) {
            (_, CheckLayer::Exact) | (Layer::Both, _) => true,
            (Layer::Eval, CheckLayer::Eval) | (Layer::Symbolic, CheckLayer::Symbolic) => true,
            (_, CheckLayer::Mixed) => self == Layer::Both,
            _ => false,
        }
    }

    pub fn has_symbolic(self) -> bool {
        self != Layer::Eval
    }
}

impl FromStr for Layer {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "eval" => Ok(Layer::Eval),
            "symbolic" => Ok(Layer::Symbolic),
            "both" => Ok(Layer::Both),
            _ => Err(ConfigError(format!("unknown layer `{s}` (expected eval, symbolic or both)"))),
        }
    }
}

/// Layer a single check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckLayer {
    /// Plain rational-function identities with no representation involved.
    Exact,
    Eval,
    Symbolic,
    /// Compares the two layers.
    Mixed,
}

impl fmt::Display for CheckLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CheckLayer::Exact => "exact",
            CheckLayer::Eval => "eval",
            CheckLayer::Symbolic => "symbolic",
            CheckLayer::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(ConfigError(format!("unknown format `{s}` (expected text or json)"))),
        }
    }
}

/// Largest supported mode window.
pub const MAX_WINDOW: u32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suites: BTreeSet<Suite>,
    pub window: u32,
    pub order: u32,
    pub layer: Layer,
    pub seed: u64,
    pub output: Format,
    /// Mode window of the evaluation-layer mode checks.
    pub eval_window: u32,
    /// Runs negative controls as ordinary checks, so they fail.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub negative_controls_as_checks: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.into_iter().collect(),
            window: 2,
            order: 6,
            layer: Layer::Both,
            seed: 0,
            output: Format::Text,
            eval_window: 3,
            negative_controls_as_checks: false,
        }
    }
}

/// Expands `all` and validates names.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<BTreeSet<Suite>, ConfigError> {
    let mut out = BTreeSet::new();
    for raw in names {
        for n in raw.as_ref().split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if n == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            let s = Suite::ALL
                .into_iter()
                .find(|s| s.name() == n)
                .ok_or_else(|| ConfigError(format!("unknown suite `{n}`")))?;
            out.insert(s);
        }
    }
    if out.is_empty() {
        return Err(ConfigError("no suite selected".into()));
    }
    Ok(out)
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| ConfigError(format!("`{key}` expects a nonnegative integer, got `{v}`")))
}

impl SuiteConfig {
    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "suite" | "suites" => self.suites = parse_suites(&[value])?,
            "window" => self.window = parse_num(key, value)?,
            "order" => self.order = parse_num(key, value)?,
            "layer" => self.layer = value.parse()?,
            "seed" => self.seed = parse_num(key, value)?,
            "format" | "output" => self.output = value.parse()?,
            "eval-window" | "eval_window" => self.eval_window = parse_num(key, value)?,
            _ => return Err(ConfigError(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key=value", n + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.window > MAX_WINDOW {
            return Err(ConfigError(format!("window {} exceeds the supported maximum {MAX_WINDOW}", self.window)));
        }
        if self.eval_window > 6 {
            return Err(ConfigError(format!("eval window {} exceeds the supported maximum 6", self.eval_window)));
        }
        if self.layer.has_symbolic() && self.order < 2 * self.window + 2 {
            return Err(ConfigError(format!(
                "order {} is below 2*window+2 = {} required by the symbolic layer",
                self.order,
                2 * self.window + 2
            )));
        }
        if self.suites.is_empty() {
            return Err(ConfigError("no suite selected".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_bound() {
        let mut c = SuiteConfig {
            order: 5,
            ..SuiteConfig::default()
        };
        assert!(c.validate().is_err());
        c.layer = Layer::Eval;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn file_and_all() {
        let mut c = SuiteConfig::default();
        c.apply_file("# comment\nsuite = ybe,rtt\nwindow=1\norder = 4\n").unwrap();
        assert_eq!(c.suites.len(), 2);
        assert_eq!((c.window, c.order), (1, 4));
        assert!(c.apply_file("bogus=1").is_err());
        assert_eq!(parse_suites(&["all"]).unwrap().len(), 6);
        assert!(parse_suites(&["nope"]).is_err());
    }
}
