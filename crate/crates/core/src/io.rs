//! JSON interchange formats.
//!
//! A gluing is `{"n": 2, "pairs": [[[0, 0], [1, 3]], ...]}` with 0-based
//! hexagon and edge indices; edge `k` runs from corner `k` to corner
//! `k + 1` counterclockwise. Batch files hold one gluing per line with
//! extra `stage` and `canonical_code` fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, HexComplex, HexEdge};
use crate::enumerate::{GluingBatch, Stage};
use crate::flat::{FlatShape, PolygonType};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}")]
    Complex { line: usize, source: ComplexError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingJson {
    pub n: usize,
    pub pairs: Vec<[[usize; 2]; 2]>,
}

impl GluingJson {
    pub fn from_complex(c: &HexComplex) -> Self {
        let pairs = c
            .pairs()
            .into_iter()
            .map(|(x, y)| [[x.hexagon, x.edge], [y.hexagon, y.edge]])
            .collect();
        GluingJson { n: c.hexagon_count(), pairs }
    }

    pub fn to_complex(&self) -> Result<HexComplex, ComplexError> {
        let pairs: Vec<(HexEdge, HexEdge)> = self
            .pairs
            .iter()
            .map(|[x, y]| (HexEdge::new(x[0], x[1]), HexEdge::new(y[0], y[1])))
            .collect();
        HexComplex::new(self.n, &pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchLine {
    pub n: usize,
    pub pairs: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<Stage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_code: Option<String>,
}

impl BatchLine {
    pub fn gluing(&self) -> GluingJson {
        GluingJson { n: self.n, pairs: self.pairs.clone() }
    }
}

pub fn gluing_to_json(c: &HexComplex) -> String {
    serde_json::to_string(&GluingJson::from_complex(c)).expect("gluings serialize")
}

pub fn gluing_from_json(s: &str) -> Result<HexComplex, IoError> {
    let g: GluingJson = serde_json::from_str(s).map_err(|source| IoError::Json { line: 1, source })?;
    g.to_complex().map_err(|source| IoError::Complex { line: 1, source })
}

/// One line per gluing, in batch order.
pub fn batch_to_jsonl(batch: &GluingBatch) -> String {
    let mut out = String::new();
    for item in &batch.items {
        let g = GluingJson::from_complex(&item.complex);
        let line = BatchLine {
            n: g.n,
            pairs: g.pairs,
            stage: Some(batch.stage),
            canonical_code: Some(item.code.to_string()),
        };
        out.push_str(&serde_json::to_string(&line).expect("batch lines serialize"));
        out.push('\n');
    }
    out
}

/// Reads gluings from JSON Lines; blank lines are skipped. A single JSON
/// object spread over several lines is accepted as well.
pub fn gluings_from_jsonl(text: &str) -> Result<Vec<HexComplex>, IoError> {
    let mut out = Vec::new();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(out);
    }
    if !trimmed.lines().any(|l| l.trim_start().starts_with('{') && l.trim_end().ends_with('}')) {
        let line: BatchLine = serde_json::from_str(trimmed).map_err(|source| IoError::Json { line: 1, source })?;
        let c = line.gluing().to_complex().map_err(|source| IoError::Complex { line: 1, source })?;
        return Ok(vec![c]);
    }
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            continue;
        }
        let line: BatchLine = serde_json::from_str(l).map_err(|source| IoError::Json { line: i + 1, source })?;
        let c = line.gluing().to_complex().map_err(|source| IoError::Complex { line: i + 1, source })?;
        out.push(c);
    }
    Ok(out)
}

/// Polygon description `{"type", "angles", "squared_sides", "n"}`;
/// angles are in units of π/3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSpec {
    #[serde(rename = "type")]
    pub polygon_type: PolygonType,
    pub angles: Vec<u8>,
    pub squared_sides: Vec<i64>,
    pub n: usize,
}

impl From<&FlatShape> for FlatSpec {
    fn from(s: &FlatShape) -> Self {
        FlatSpec {
            polygon_type: s.polygon_type,
            angles: s.angles.clone(),
            squared_sides: s.squared_sides.clone(),
            n: s.n,
        }
    }
}

/// Polygon input: angles and squared sides, with optional type and size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonInput {
    pub angles: Vec<u8>,
    pub squared_sides: Vec<i64>,
    #[serde(default, rename = "type")]
    pub polygon_type: Option<PolygonType>,
    #[serde(default)]
    pub n: Option<usize>,
}
