//! Run manifests: a TOML document with a `[ring]`, an `[ideals]` and a
//! `[task]` table.
//!
//! ```toml
//! format-version = 1
//!
//! [ring]
//! catalog = "remark-2-4"      # optional fixture; fills p, vars, relations, f and J
//! p = 5
//! vars = ["x", "y", "z"]
//! relations = ["x*y", "x*z"]
//! order = "auto"              # or an integer truncation order
//!
//! [ideals]
//! f = ["x+y", "z"]
//! J = ["x", "y", "z"]
//!
//! [task]
//! command = "find-min-n"
//! sequence = "f"              # an ideal name or an inline list
//! j = "J"                     # defaults to J when defined, else m
//! n-max = 8
//! n-range = [1, 6]
//! samples = 20
//! seed = 2024
//! ```
//!
//! The name `m` always denotes the maximal ideal.

use std::collections::BTreeMap;
use std::fmt;

use filtreg::harness::{catalog_entry, ExperimentConfig};
use filtreg::verify::Claim;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

pub const COMMANDS: [&str; 8] = [
    "check-filter-regular",
    "hilbert",
    "ar-number",
    "koszul",
    "bound-n",
    "verify",
    "find-min-n",
    "experiment",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Manifest {
    pub format_version: u32,
    pub ring: RingBlock,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, Vec<String>>,
    pub task: Task,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RingBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default)]
    pub order: OrderSpec,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OrderSpec {
    #[default]
    Auto,
    Fixed(usize),
}

impl Serialize for OrderSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrderSpec::Auto => s.serialize_str("auto"),
            OrderSpec::Fixed(d) => s.serialize_u64(*d as u64),
        }
    }
}

impl<'de> Deserialize<'de> for OrderSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(OrderSpec::Fixed(n as usize)),
            Raw::Text(t) if t == "auto" => Ok(OrderSpec::Auto),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "order must be an integer or \"auto\", got \"{t}\""
            ))),
        }
    }
}

/// A reference to a named ideal or an inline generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealRef {
    Name(String),
    Inline(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Task {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<IdealRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IdealRef>,
    /// Base ideal for `check-filter-regular`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulo: Option<IdealRef>,
    /// `gr` or `hilbert-samuel`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    /// Claim checked by `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    /// Claims run by `find-min-n` and `experiment`; all by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<String>>,
    /// Explicit perturbation for `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Vec<String>>,
    /// Single Koszul degree; all degrees by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_range: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<usize>,
}

impl Task {
    pub fn new(command: &str) -> Self {
        Task {
            command: command.to_string(),
            sequence: None,
            j: None,
            modulo: None,
            convention: None,
            claim: None,
            claims: None,
            perturbation: None,
            degree: None,
            n_max: None,
            n_range: None,
            samples: None,
            seed: None,
            delta: None,
            lift: None,
        }
    }
}

/// A manifest parse failure located in the source text (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn key_position(text: &str, section: &str, key: &str) -> (usize, usize) {
    let mut in_section = section.is_empty();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('[') {
            in_section = trimmed.trim_matches(|c| c == '[' || c == ']').trim() == section;
            continue;
        }
        if in_section && trimmed.split('=').next().map(str::trim) == Some(key) {
            return (i + 1, line.len() - line.trim_start().len() + 1);
        }
    }
    (1, 1)
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ParseError> {
        let manifest: Manifest = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| locate(text, s.start));
            ParseError {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        let at = |section: &str, key: &str, message: String| {
            let (line, column) = key_position(text, section, key);
            ParseError { line, column, message }
        };
        if manifest.format_version != FORMAT_VERSION {
            return Err(at(
                "",
                "format-version",
                format!(
                    "unsupported format-version {} (expected {FORMAT_VERSION})",
                    manifest.format_version
                ),
            ));
        }
        if !COMMANDS.contains(&manifest.task.command.as_str()) {
            return Err(at(
                "task",
                "command",
                format!(
                    "unknown command `{}`; expected one of {}",
                    manifest.task.command,
                    COMMANDS.join(", ")
                ),
            ));
        }
        if let Some(id) = &manifest.ring.catalog {
            if catalog_entry(id).is_none() {
                return Err(at("ring", "catalog", format!("unknown catalog entry `{id}`")));
            }
        } else if manifest.ring.vars.is_none() {
            return Err(at("ring", "vars", "ring needs `vars` or `catalog`".into()));
        }
        Ok(manifest)
    }

    /// Canonical TOML rendering.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    fn catalog(&self) -> Option<&'static filtreg::harness::CatalogEntry> {
        self.ring.catalog.as_deref().and_then(catalog_entry)
    }

    /// Named ideals, with the catalog's `f` and `J` as fallbacks.
    fn ideal(&self, name: &str) -> Option<Vec<String>> {
        if let Some(g) = self.ideals.get(name) {
            return Some(g.clone());
        }
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match (name, self.catalog()) {
            ("m", _) => Some(self.vars()),
            ("f", Some(e)) => Some(own(e.sequence)),
            ("J", Some(e)) => Some(own(e.j)),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<String> {
        match (&self.ring.vars, self.catalog()) {
            (Some(v), _) => v.clone(),
            (None, Some(e)) => e.vars.iter().map(|s| s.to_string()).collect(),
            (None, None) => Vec::new(),
        }
    }

    pub fn resolve(&self, r: &IdealRef) -> Result<Vec<String>, CliError> {
        match r {
            IdealRef::Inline(g) => Ok(g.clone()),
            IdealRef::Name(n) => self
                .ideal(n)
                .ok_or_else(|| CliError::Manifest(format!("ideal `{n}` is not defined"))),
        }
    }

    pub fn sequence(&self) -> Result<Vec<String>, CliError> {
        let r = self.task.sequence.clone().unwrap_or(IdealRef::Name("f".into()));
        self.resolve(&r)
    }

    pub fn j(&self) -> Result<Vec<String>, CliError> {
        match &self.task.j {
            Some(r) => self.resolve(r),
            None => Ok(self.ideal("J").unwrap_or_else(|| self.vars())),
        }
    }

    pub fn claims(&self) -> Result<Vec<Claim>, CliError> {
        let names: Vec<String> = match (&self.task.claims, &self.task.claim) {
            (Some(c), _) => c.clone(),
            (None, Some(c)) => vec![c.clone()],
            (None, None) => return Ok(Claim::ALL.to_vec()),
        };
        names
            .iter()
            .map(|n| Claim::parse(n).ok_or_else(|| CliError::Manifest(format!("unknown claim `{n}`"))))
            .collect()
    }

    /// The experiment configuration this manifest describes.
    pub fn config(&self) -> Result<ExperimentConfig, CliError> {
        let mut c = match self.catalog() {
            Some(e) => e.config(),
            None => ExperimentConfig::default(),
        };
        if let Some(p) = self.ring.p {
            c.p = p;
        }
        c.vars = self.vars();
        if let Some(r) = &self.ring.relations {
            c.relations = r.clone();
        }
        c.sequence = self.sequence()?;
        c.j = self.j()?;
        c.order = match self.ring.order {
            OrderSpec::Auto => None,
            OrderSpec::Fixed(d) => Some(d),
        };
        let t = &self.task;
        if let Some(n) = t.n_max {
            c.n_max = n;
        }
        if let Some([a, b]) = t.n_range {
            c.n_range = a..=b;
        }
        if let Some(s) = t.samples {
            c.samples = s;
        }
        if let Some(s) = t.seed {
            c.seed = s;
        }
        if let Some(d) = t.delta {
            c.delta = d;
        }
        if let Some(l) = t.lift {
            c.lift = l;
        }
        c.claims = self.claims()?;
        Ok(c)
    }
}
