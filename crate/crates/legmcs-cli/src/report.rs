//! The invariant report: one JSON document per front, persisted to flat
//! files keyed by the SHA-256 of the canonical front word.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use legmcs::augment;
use legmcs::dga::GeneratorKind;
use legmcs::linhom;
use legmcs::mcs::ruling::{self, Ruling};
use legmcs::mcs::{sweep, Mcs};
use legmcs::Error;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checks::FrontContext;

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorRow {
    pub name: String,
    pub kind: String,
    pub event: usize,
    pub degree: i64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
#[serde(rename_all = "camelCase")]
pub struct ClassRow {
    /// Augmentation labels, smallest member first.
    pub members: Vec<String>,
    pub poincare: String,
    pub ruling: String,
}

/// The full report for one front. Field order is the serialization order,
/// so identical inputs give byte-identical JSON.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub front_word: String,
    pub generators: Vec<GeneratorRow>,
    pub augmentation_count: usize,
    pub homotopy_class_count: usize,
    pub mcs_class_count: usize,
    pub classes: Vec<ClassRow>,
    /// Which verification suites ran while building the report. Every entry
    /// is true: a failed suite aborts the report instead.
    pub verification: BTreeMap<String, bool>,
}

/// A short deterministic fingerprint of a ruling: the switch events plus a
/// digest of all slot pairings.
pub fn ruling_fingerprint(r: &Ruling) -> String {
    let body = serde_json::json!({ "pairings": r.pairings, "switches": r.switches });
    let digest = Sha256::digest(body.to_string().as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{:02x}", b)).collect();
    format!("switches:{:?} digest:{}", r.switches, hex)
}

/// Builds the report, running (and recording) the verification suites that
/// the invariants command promises: the bijection between homotopy classes
/// and MCS classes is enforced, not just reported.
pub fn build(cx: &FrontContext) -> Result<InvariantReport> {
    let dga = &cx.dga;
    let generators = dga
        .generators()
        .iter()
        .map(|g| GeneratorRow {
            name: g.name.clone(),
            kind: match g.kind {
                GeneratorKind::Crossing => "crossing".into(),
                GeneratorKind::RightCusp => "rightCusp".into(),
            },
            event: g.event,
            degree: g.degree,
        })
        .collect();

    let mut verification = BTreeMap::new();
    let mut ran = |id: &str| {
        verification.insert(id.to_string(), true);
    };

    if !dga.d_squared_vanishes() {
        return Err(anyhow::Error::new(Error::Property(format!(
            "{}: ∂² does not vanish",
            cx.name
        ))));
    }
    ran("dSquared");

    let homotopy = augment::homotopy_classes(dga, &cx.augs)?;
    ran("homotopyAudit");
    let mcs = sweep::mcs_classes(dga, &cx.augs)?;
    if homotopy != mcs {
        return Err(anyhow::Error::new(Error::Property(format!(
            "bijection-counts: {} homotopy classes but {} MCS classes on {}",
            homotopy.len(),
            mcs.len(),
            cx.name
        ))));
    }
    ran("bijectionCounts");

    let mut classes = Vec::with_capacity(homotopy.len());
    for class in &homotopy {
        let poincare = linhom::linearize(dga, &cx.augs[class[0]])?.poincare();
        let ruling = ruling::ruling_of(&Mcs::from_augmentation(dga, &cx.augs[class[0]])?)?;
        ruling.is_normal(dga)?;
        for &m in &class[1..] {
            let p = linhom::linearize(dga, &cx.augs[m])?.poincare();
            if p != poincare {
                return Err(anyhow::Error::new(Error::Property(format!(
                    "poincare-constancy: class of {} is not constant on {}",
                    cx.augs[class[0]].label(dga),
                    cx.name
                ))));
            }
            let r = ruling::ruling_of(&Mcs::from_augmentation(dga, &cx.augs[m])?)?;
            if r != ruling {
                return Err(anyhow::Error::new(Error::Property(format!(
                    "ruling-constancy: class of {} is not constant on {}",
                    cx.augs[class[0]].label(dga),
                    cx.name
                ))));
            }
        }
        classes.push(ClassRow {
            members: class.iter().map(|&m| cx.augs[m].label(dga)).collect(),
            poincare: linhom::poincare_polynomial_string(&poincare),
            ruling: ruling_fingerprint(&ruling),
        });
    }
    ran("poincareConstancy");
    ran("rulingConstancy");
    ran("rulingNormality");

    Ok(InvariantReport {
        front_word: dga.front().word(),
        generators,
        augmentation_count: cx.augs.len(),
        homotopy_class_count: homotopy.len(),
        mcs_class_count: mcs.len(),
        classes,
        verification,
    })
}

/// Deterministic rendering: pretty JSON with a trailing newline.
pub fn to_json_string(report: &InvariantReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// The store path for a front word: `<dir>/<sha256(word)>.json`.
pub fn store_path(dir: &Path, front_word: &str) -> PathBuf {
    let digest = Sha256::digest(front_word.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
    dir.join(format!("{}.json", hex))
}

/// Persists the report under its front-word hash. If a report is already
/// stored for this front, the fresh one must match it byte for byte;
/// anything else is drift and fails as a property violation.
pub fn persist(dir: &Path, report: &InvariantReport) -> Result<PathBuf> {
    let path = store_path(dir, &report.front_word);
    let fresh = to_json_string(report);
    if path.exists() {
        let stored = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        if stored != fresh {
            return Err(anyhow::Error::new(Error::Property(format!(
                "report-drift: stored report {} no longer matches a fresh computation",
                path.display()
            ))));
        }
        return Ok(path);
    }
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    std::fs::write(&path, fresh).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
