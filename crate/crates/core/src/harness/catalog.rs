use crate::error::Result;
use crate::ring::RingSpec;

use super::ExperimentConfig;

/// A fixture ring with a sequence and a filtration ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub p: u64,
    pub vars: &'static [&'static str],
    pub relations: &'static [&'static str],
    pub sequence: &'static [&'static str],
    pub j: &'static [&'static str],
    /// The sequence is filter-regular; otherwise the entry is a negative control.
    pub genuine: bool,
    pub description: &'static str,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "regular-plane-x",
        p: 5,
        vars: &["x", "y"],
        relations: &[],
        sequence: &["x"],
        j: &["x", "y"],
        genuine: true,
        description: "nonzerodivisor in a regular ring",
    },
    CatalogEntry {
        id: "regular-plane-xy",
        p: 5,
        vars: &["x", "y"],
        relations: &[],
        sequence: &["x", "y"],
        j: &["x", "y"],
        genuine: true,
        description: "regular sequence in a regular ring",
    },
    CatalogEntry {
        id: "remark-2-4",
        p: 5,
        vars: &["x", "y", "z"],
        relations: &["x*y", "x*z"],
        sequence: &["x+y", "z"],
        j: &["x", "y", "z"],
        genuine: true,
        description: "line union plane; x+y, z is filter-regular but z, x+y is not",
    },
    CatalogEntry {
        id: "node-sum",
        p: 5,
        vars: &["x", "y"],
        relations: &["x*y"],
        sequence: &["x+y"],
        j: &["x", "y"],
        genuine: true,
        description: "filter-regular element on a reducible curve",
    },
    CatalogEntry {
        id: "node-negative",
        p: 5,
        vars: &["x", "y"],
        relations: &["x*y"],
        sequence: &["y"],
        j: &["x", "y"],
        genuine: false,
        description: "y kills x on the node",
    },
    CatalogEntry {
        id: "double-line-negative",
        p: 5,
        vars: &["x", "y"],
        relations: &["x^2"],
        sequence: &["x"],
        j: &["x", "y"],
        genuine: false,
        description: "nilpotent element on a double line",
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

impl CatalogEntry {
    pub fn spec(&self) -> Result<RingSpec> {
        RingSpec::new(self.p, self.vars, self.relations)
    }

    /// Default experiment over this entry: empty sweep, `n_max = 8`.
    pub fn config(&self) -> ExperimentConfig {
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        ExperimentConfig {
            p: self.p,
            vars: own(self.vars),
            relations: own(self.relations),
            sequence: own(self.sequence),
            j: own(self.j),
            catalog: Some(self.id.to_string()),
            ..ExperimentConfig::default()
        }
    }
}
