//! End-to-end classification of gluings and the reference table.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::HexComplex;
use crate::enumerate::GluingBatch;
use crate::flat::{default_geodesic_bound, flat_shape};
use crate::io::{FlatSpec, GluingJson};
use crate::realize::{realize, RealizeError, RealizeOptions, Realization};
use crate::skeleton::{curvature_assignment, extract_skeleton, match_type, ApexVariant, ShapeType, SkeletonGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub realize: RealizeOptions,
    /// Facet merging tolerance in radians.
    pub merge_tolerance: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { realize: RealizeOptions::default(), merge_tolerance: 1e-4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    /// Hexagon corners meeting here.
    pub corners: u8,
    /// Curvature in units of π/3.
    pub curvature: u8,
    pub position: [f64; 3],
    /// Sum of the face angles around the point on the realization.
    pub embedded_angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationSummary {
    pub residual: f64,
    pub convexity_margin: f64,
    pub restart: usize,
    pub cone_points: Vec<ConePoint>,
    pub skeleton: SkeletonGraph,
    /// Lengths of the skeleton edges, in skeleton edge order.
    pub edge_lengths: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<ApexVariant>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub n: usize,
    pub canonical_code: String,
    pub gluing: GluingJson,
    /// Cone points of curvature 4π/3 and 2π/3.
    pub profile: [usize; 2],
    pub flat: bool,
    #[serde(rename = "type")]
    pub shape: ShapeType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<FlatSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Sums of face angles at each cone point of an embedded triangulation.
pub fn embedded_angles(r: &Realization) -> Vec<f64> {
    let x: Vec<Vector3<f64>> = r.cone_positions.iter().map(|p| Vector3::new(p[0], p[1], p[2])).collect();
    let mut sums = vec![0.0; x.len()];
    for f in &r.triangulation.faces {
        for i in 0..3 {
            let (a, b, c) = (f[i], f[(i + 1) % 3], f[(i + 2) % 3]);
            sums[a] += (x[b] - x[a]).angle(&(x[c] - x[a]));
        }
    }
    sums
}

/// Summary of a realization with its matched skeleton.
pub fn summarize(r: &Realization, merge_tolerance: f64) -> Result<(ShapeType, RealizationSummary), String> {
    let skeleton = extract_skeleton(r, merge_tolerance).map_err(|e| e.to_string())?;
    let shape = match_type(&skeleton).map_err(|e| e.to_string())?;
    let assignment = curvature_assignment(&skeleton, &r.corner_counts);
    let angles = embedded_angles(r);
    let cone_points = (0..r.cone_points.len())
        .map(|i| ConePoint {
            corners: r.corner_counts[i],
            curvature: assignment.curvature[i],
            position: r.cone_positions[i],
            embedded_angle: angles[i],
        })
        .collect();
    let edge_lengths = skeleton.edges.iter().map(|&(u, v)| r.distance(u, v)).collect();
    Ok((
        shape,
        RealizationSummary {
            residual: r.residual,
            convexity_margin: r.convexity_margin,
            restart: r.restart,
            cone_points,
            skeleton,
            edge_lengths,
            apex: assignment.apex,
        },
    ))
}

/// Classifies one sphere gluing: flat polygon, catalog type, or
/// unresolved with a reason.
pub fn classify(c: &HexComplex, opts: &ClassifyOptions) -> CatalogEntry {
    classify_with_realization(c, opts).0
}

/// Like [`classify`], also returning the realization when there is one.
pub fn classify_with_realization(c: &HexComplex, opts: &ClassifyOptions) -> (CatalogEntry, Option<Realization>) {
    let n = c.hexagon_count();
    let profile = c.curvature_profile().map(|p| [p.n1, p.n2]).unwrap_or([0, 0]);
    let mut entry = CatalogEntry {
        n,
        canonical_code: c.canonical_code().to_string(),
        gluing: GluingJson::from_complex(c),
        profile,
        flat: false,
        shape: ShapeType::Unresolved,
        polygon: None,
        realization: None,
        note: None,
    };
    if !c.is_sphere() {
        entry.note = Some("not a sphere".into());
        return (entry, None);
    }
    let bound = opts.realize.geodesic_bound.unwrap_or_else(|| default_geodesic_bound(n));
    if let Some(shape) = flat_shape(c, bound) {
        entry.flat = true;
        entry.shape = ShapeType::Flat;
        entry.polygon = Some(FlatSpec::from(&shape));
        return (entry, None);
    }
    match realize(c, &opts.realize) {
        Ok(r) => {
            match summarize(&r, opts.merge_tolerance) {
                Ok((shape, summary)) => {
                    entry.shape = shape;
                    entry.realization = Some(summary);
                }
                Err(e) => entry.note = Some(e),
            }
            return (entry, Some(r));
        }
        Err(RealizeError::FlatInput) => {
            entry.flat = true;
            entry.shape = ShapeType::Flat;
            entry.note = Some("three cone points; polygon not recovered".into());
        }
        Err(e) => entry.note = Some(e.to_string()),
    }
    (entry, None)
}

/// Classifies a batch in parallel, keeping batch order.
pub fn classify_batch(batch: &GluingBatch, opts: &ClassifyOptions) -> Vec<CatalogEntry> {
    classify_all(&batch.items.iter().map(|i| i.complex.clone()).collect::<Vec<_>>(), opts)
}

pub fn classify_all(complexes: &[HexComplex], opts: &ClassifyOptions) -> Vec<CatalogEntry> {
    complexes.par_iter().map(|c| classify(c, opts)).collect()
}

/// Reference row: gluing count, non-flat count and non-flat types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub gluings: usize,
    pub non_flat: Option<usize>,
    pub types: Option<&'static [(ShapeType, usize)]>,
}

/// Published counts for up to seven hexagons. Non-flat data is only
/// available for two to five hexagons.
pub const EXPECTED: [TableRow; 7] = [
    TableRow { n: 1, gluings: 2, non_flat: Some(0), types: Some(&[]) },
    TableRow { n: 2, gluings: 4, non_flat: Some(1), types: Some(&[(ShapeType::I, 1)]) },
    TableRow {
        n: 3,
        gluings: 6,
        non_flat: Some(3),
        types: Some(&[(ShapeType::I, 1), (ShapeType::II, 1), (ShapeType::VI, 1)]),
    },
    TableRow {
        n: 4,
        gluings: 11,
        non_flat: Some(6),
        types: Some(&[(ShapeType::I, 2), (ShapeType::II, 1), (ShapeType::IV, 2), (ShapeType::V, 1)]),
    },
    TableRow {
        n: 5,
        gluings: 10,
        non_flat: Some(6),
        types: Some(&[(ShapeType::I, 2), (ShapeType::II, 2), (ShapeType::V, 1), (ShapeType::VI, 1)]),
    },
    TableRow { n: 6, gluings: 17, non_flat: None, types: None },
    TableRow { n: 7, gluings: 18, non_flat: None, types: None },
];

pub fn expected(n: usize) -> Option<TableRow> {
    EXPECTED.iter().copied().find(|r| r.n == n)
}

/// Computed table row from classified entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedRow {
    pub n: usize,
    pub gluings: usize,
    pub non_flat: usize,
    pub types: BTreeMap<ShapeType, usize>,
}

pub fn tabulate(n: usize, entries: &[CatalogEntry]) -> ComputedRow {
    let mut types = BTreeMap::new();
    for e in entries.iter().filter(|e| !e.flat) {
        *types.entry(e.shape).or_insert(0) += 1;
    }
    ComputedRow { n, gluings: entries.len(), non_flat: entries.iter().filter(|e| !e.flat).count(), types }
}

/// `(i)×2, (ii), ...` style rendering of a type multiset.
pub fn format_types(types: &BTreeMap<ShapeType, usize>) -> String {
    let parts: Vec<String> = types
        .iter()
        .map(|(t, &k)| if k == 1 { format!("({t})") } else { format!("({t})×{k}") })
        .collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Count(String),
    Types(String),
}

impl Mismatch {
    pub fn is_count(&self) -> bool {
        matches!(self, Mismatch::Count(_))
    }
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mismatch::Count(m) | Mismatch::Types(m) => f.write_str(m),
        }
    }
}

/// Discrepancies between a computed row and the reference values.
/// Unresolved entries never count as wrong labels.
pub fn check_row(row: &ComputedRow) -> Vec<Mismatch> {
    let Some(exp) = expected(row.n) else {
        return Vec::new();
    };
    let mut problems = Vec::new();
    if row.gluings != exp.gluings {
        problems.push(Mismatch::Count(format!("n = {}: {} gluings, expected {}", row.n, row.gluings, exp.gluings)));
    }
    if let Some(k) = exp.non_flat {
        if row.non_flat != k {
            problems.push(Mismatch::Count(format!("n = {}: {} non-flat shapes, expected {}", row.n, row.non_flat, k)));
        }
    }
    if let Some(types) = exp.types {
        for (t, &k) in &row.types {
            if *t == ShapeType::Unresolved {
                continue;
            }
            let want = types.iter().find(|(u, _)| u == t).map_or(0, |p| p.1);
            if k > want {
                problems.push(Mismatch::Types(format!("n = {}: type ({t}) found {} times, expected {want}", row.n, k)));
            }
        }
    }
    problems
}

/// Reference multiset as a map.
pub fn expected_types(n: usize) -> Option<BTreeMap<ShapeType, usize>> {
    expected(n)?.types.map(|t| t.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::triple_corner_fold;
    use crate::enumerate::enumerate_all;
    use crate::flat::PolygonType;

    #[test]
    fn flat_entry() {
        let e = classify(&triple_corner_fold(), &ClassifyOptions::default());
        assert!(e.flat);
        assert_eq!(e.shape, ShapeType::Flat);
        assert_eq!(e.polygon.unwrap().polygon_type, PolygonType::A);
    }

    #[test]
    fn two_hexagons() {
        let entries = classify_batch(&enumerate_all(2), &ClassifyOptions::default());
        let row = tabulate(2, &entries);
        assert_eq!(row.gluings, 4);
        assert_eq!(row.non_flat, 1);
        assert_eq!(format_types(&row.types), "(i)");
        assert!(check_row(&row).is_empty());
        let solid = entries.iter().find(|e| !e.flat).unwrap();
        assert_eq!(solid.profile, [2, 2]);
        let json = serde_json::to_string(solid).unwrap();
        let back: CatalogEntry = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, solid);
    }

    #[test]
    fn mismatches_are_reported() {
        let row = ComputedRow { n: 4, gluings: 10, non_flat: 6, types: BTreeMap::from([(ShapeType::III, 1)]) };
        let problems = check_row(&row);
        assert_eq!(problems.len(), 2);
        assert!(problems[0].is_count() && !problems[1].is_count());
        assert!(check_row(&ComputedRow { n: 9, gluings: 0, non_flat: 0, types: BTreeMap::new() }).is_empty());
    }
}
