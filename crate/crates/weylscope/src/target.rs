//! Resolution of a command-line target to a metric patch.

use std::path::Path;

use sha2::{Digest, Sha256};
use weylscope_core::catalog::{self, CatalogEntry, ENTRY_NAMES};
use weylscope_core::tensor::MetricPatch;

use crate::error::{AppError, AppResult};
use crate::metric_lang::parse_metric;

/// Definition-language source of every catalog entry, in listing order.
pub const CATALOG_SOURCES: [(&str, &str); 7] = [
    ("t4_flat", include_str!("../metrics/t4_flat.metric")),
    ("s4_round", include_str!("../metrics/s4_round.metric")),
    ("h4_hyperbolic", include_str!("../metrics/h4_hyperbolic.metric")),
    ("cp2_fubini_study", include_str!("../metrics/cp2_fubini_study.metric")),
    ("ch2_complex_hyperbolic", include_str!("../metrics/ch2_complex_hyperbolic.metric")),
    ("s2xs2", include_str!("../metrics/s2xs2.metric")),
    ("warped_probe", include_str!("../metrics/warped_probe.metric")),
];

pub fn catalog_source(name: &str) -> Option<&'static str> {
    CATALOG_SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Catalog,
    File,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Catalog => "catalog",
            Origin::File => "file",
        }
    }
}

/// A resolved target.
#[derive(Debug, Clone)]
pub struct Target {
    pub name: String,
    pub origin: Origin,
    pub source: String,
    pub sha256: String,
    pub patch: MetricPatch,
    /// Ground truth, for catalog targets.
    pub entry: Option<CatalogEntry>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// A catalog name selects the built-in entry (after its self-test); anything
/// else is read as a metric-definition file.
pub fn resolve(target: &str) -> AppResult<Target> {
    if ENTRY_NAMES.contains(&target) {
        let entry = catalog::load(target)?;
        let source = catalog_source(target).expect("every entry has a source").to_string();
        return Ok(Target {
            name: target.to_string(),
            origin: Origin::Catalog,
            sha256: sha256_hex(&source),
            source,
            patch: entry.patch.clone(),
            entry: Some(entry),
        });
    }
    let path = Path::new(target);
    let source = std::fs::read_to_string(path).map_err(|source| AppError::Io { path: path.into(), source })?;
    let def = parse_metric(&source).map_err(|source| AppError::Lang { path: path.into(), source })?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(target).to_string();
    Ok(Target {
        patch: def.to_patch(&name),
        name,
        origin: Origin::File,
        sha256: sha256_hex(&source),
        source,
        entry: None,
    })
}
