//! Enumeration of sphere gluings of `n` hexagons.
//!
//! Three stages: disk gluings whose dual graph is a tree (generated by
//! canonical augmentation), forced zips at boundary vertices that already
//! carry three corners, and completion of the remaining boundary by
//! non-crossing edge matchings under the 2π angle bound.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{CanonicalCode, ComplexError, HexComplex, HexEdge, MAX_CORNERS, SIDES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Trees,
    Zipped,
    Full,
}

impl std::str::FromStr for Stage {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trees" => Ok(Stage::Trees),
            "zipped" => Ok(Stage::Zipped),
            "full" => Ok(Stage::Full),
            other => Err(format!("unknown stage `{other}` (expected trees, zipped or full)")),
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Trees => "trees",
            Stage::Zipped => "zipped",
            Stage::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchItem {
    pub code: CanonicalCode,
    /// Canonical representative, rebuilt from `code`.
    pub complex: HexComplex,
}

/// Pairwise non-isomorphic complexes, sorted by canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingBatch {
    pub n: usize,
    pub stage: Stage,
    pub items: Vec<BatchItem>,
}

impl GluingBatch {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn from_complexes(n: usize, stage: Stage, complexes: impl IntoIterator<Item = HexComplex>) -> Self {
        let mut by_code = BTreeMap::new();
        for c in complexes {
            by_code.entry(c.canonical_code()).or_insert(());
        }
        let items = by_code
            .into_keys()
            .map(|code| {
                let complex = HexComplex::from_code(&code).expect("canonical code decodes");
                BatchItem { code, complex }
            })
            .collect();
        GluingBatch { n, stage, items }
    }
}

pub fn enumerate_stage(n: usize, stage: Stage) -> GluingBatch {
    match stage {
        Stage::Trees => enumerate_tree_complexes(n),
        Stage::Zipped => enumerate_zipped(n),
        Stage::Full => enumerate_all(n),
    }
}

/// All tree-dual disk gluings of `n` hexagons up to isomorphism.
///
/// A child is kept only when the hexagon just added is the last leaf of
/// some canonical labeling of the child, so every isomorphism class is
/// produced from exactly one parent class.
pub fn enumerate_tree_complexes(n: usize) -> GluingBatch {
    assert!(n >= 1, "need at least one hexagon");
    let mut level = vec![HexComplex::new(1, &[]).expect("bare hexagon")];
    for _ in 1..n {
        let mut next: Vec<(CanonicalCode, HexComplex)> =
            level.par_iter().flat_map_iter(canonical_children).collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(next.windows(2).all(|w| w[0].0 != w[1].0), "augmentation produced a duplicate");
        level = next.into_iter().map(|(_, c)| c).collect();
    }
    GluingBatch::from_complexes(n, Stage::Trees, level)
}

fn canonical_children(parent: &HexComplex) -> Vec<(CanonicalCode, HexComplex)> {
    let added = parent.hexagon_count();
    let mut local = BTreeMap::new();
    let mut pairs = parent.pairs();
    for i in 0..SIDES * added {
        if parent.partner_table()[i].is_some() {
            continue;
        }
        pairs.push((HexEdge::from_index(i), HexEdge::new(added, 0)));
        let child = HexComplex::new(added + 1, &pairs).expect("attaching a leaf keeps a disk");
        pairs.pop();
        let form = child.canonical_form();
        let accepted = form.optimal_orders.iter().any(|order| last_leaf(&child, order) == added);
        if accepted {
            local.entry(form.code).or_insert(child);
        }
    }
    local.into_iter().collect()
}

fn last_leaf(c: &HexComplex, order: &[usize]) -> usize {
    *order
        .iter()
        .rev()
        .find(|&&h| (0..SIDES).filter(|&e| c.partner(HexEdge::new(h, e)).is_some()).count() == 1)
        .expect("a tree with two or more hexagons has a leaf")
}

/// Glues the two boundary edges at every boundary vertex that already has
/// three corners, until none is left. Such edges are glued to each other in
/// every completion, so this never loses a sphere.
pub fn forced_zips(c: &HexComplex) -> Result<HexComplex, ComplexError> {
    if c.is_sphere() {
        return Err(ComplexError::NotADisk);
    }
    let mut cur = c.clone();
    while !cur.is_sphere() {
        let word = cur.boundary_word()?;
        let m = word.len();
        match (0..m).find(|&i| word.corners[i] == MAX_CORNERS) {
            None => break,
            Some(i) => {
                let before = word.edges[(i + m - 1) % m];
                cur = cur.with_pair(before, word.edges[i])?;
            }
        }
    }
    Ok(cur)
}

/// Every sphere completing the disk `c` by a non-crossing matching of its
/// boundary edges in which no vertex gets more than three corners.
///
/// Interval dynamic program over the boundary. For an interval of edges
/// `a..b` matched among themselves, its end vertices `v_a` and `v_b` become
/// one point; the table stores which corner totals (1..=3) that point can
/// reach. Vertices strictly inside closed sub-intervals are final and are
/// bounded when their sub-interval closes.
pub fn complete_gluings(c: &HexComplex) -> Result<Vec<HexComplex>, ComplexError> {
    let word = c.boundary_word()?;
    let m = word.len();
    if m % 2 == 1 {
        return Ok(Vec::new());
    }
    let dp = MatchingTable::new(&word.corners);
    let matchings = dp.all_cyclic();
    let mut pairs = c.pairs();
    let base = pairs.len();
    let mut out = Vec::with_capacity(matchings.len());
    for matching in matchings {
        pairs.truncate(base);
        pairs.extend(matching.iter().map(|&(i, j)| (word.edges[i], word.edges[j % m])));
        out.push(HexComplex::new(c.hexagon_count(), &pairs)?);
    }
    Ok(out)
}

/// Feasibility table for non-crossing matchings of a cyclic boundary.
pub struct MatchingTable {
    corners: Vec<u8>,
    m: usize,
    /// `feasible[a][b]`: bitmask of reachable corner totals, bit `t` for total `t`.
    feasible: Vec<Vec<u8>>,
}

const TOTAL_MASK: u8 = 0b1110;

impl MatchingTable {
    pub fn new(corners: &[u8]) -> Self {
        let m = corners.len();
        let mut feasible = vec![vec![0u8; m + 1]; m + 1];
        if m == 0 {
            return MatchingTable { corners: Vec::new(), m, feasible };
        }
        let c = |i: usize| corners[i % m];
        for a in 0..=m {
            if c(a) <= MAX_CORNERS {
                feasible[a][a] = 1 << c(a);
            }
        }
        for len in (2..=m).step_by(2) {
            for a in 0..=m - len {
                let b = a + len;
                let mut mask = 0u8;
                for k in (a + 1..b).step_by(2) {
                    if feasible[a + 1][k] & TOTAL_MASK == 0 {
                        continue;
                    }
                    for rest in 1..=MAX_CORNERS {
                        if feasible[k + 1][b] & (1 << rest) != 0 {
                            let total = c(a) + rest;
                            if total <= MAX_CORNERS {
                                mask |= 1 << total;
                            }
                        }
                    }
                }
                feasible[a][b] = mask;
            }
        }
        MatchingTable { corners: corners.to_vec(), m, feasible }
    }

    fn corner(&self, i: usize) -> u8 {
        self.corners[i % self.m]
    }

    /// Whether the whole cycle admits at least one valid matching.
    pub fn has_completion(&self) -> bool {
        let m = self.m;
        m % 2 == 0
            && m > 0
            && (1..m)
                .step_by(2)
                .any(|k| self.feasible[1][k] & TOTAL_MASK != 0 && self.feasible[k + 1][m] & TOTAL_MASK != 0)
    }

    /// All valid matchings of the cycle, as pairs `(i, j)` with `i < j ≤ m − 1`.
    /// Edge 0 is matched with edge `k`; the vertex `v_0 = v_m` closes up with
    /// the total of the interval `k + 1..m`.
    pub fn all_cyclic(&self) -> Vec<Vec<(usize, usize)>> {
        let m = self.m;
        let mut out = Vec::new();
        if m == 0 || m % 2 == 1 {
            return out;
        }
        for k in (1..m).step_by(2) {
            for inner in 1..=MAX_CORNERS {
                if self.feasible[1][k] & (1 << inner) == 0 {
                    continue;
                }
                for rest in 1..=MAX_CORNERS {
                    if self.feasible[k + 1][m] & (1 << rest) == 0 {
                        continue;
                    }
                    let lefts = self.interval(1, k, inner);
                    let rights = self.interval(k + 1, m, rest);
                    for l in &lefts {
                        for r in &rights {
                            let mut v = Vec::with_capacity(m / 2);
                            v.push((0, k));
                            v.extend_from_slice(l);
                            v.extend_from_slice(r);
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matchings of edges `a..b` whose end vertex reaches exactly `total` corners.
    fn interval(&self, a: usize, b: usize, total: u8) -> Vec<Vec<(usize, usize)>> {
        if a == b {
            return if self.corner(a) == total { vec![Vec::new()] } else { Vec::new() };
        }
        let own = self.corner(a);
        if total <= own {
            return Vec::new();
        }
        let rest = total - own;
        let mut out = Vec::new();
        for k in (a + 1..b).step_by(2) {
            if self.feasible[k + 1][b] & (1 << rest) == 0 {
                continue;
            }
            for inner in 1..=MAX_CORNERS {
                if self.feasible[a + 1][k] & (1 << inner) == 0 {
                    continue;
                }
                let lefts = self.interval(a + 1, k, inner);
                let rights = self.interval(k + 1, b, rest);
                for l in &lefts {
                    for r in &rights {
                        let mut v = Vec::with_capacity(1 + l.len() + r.len());
                        v.push((a, k));
                        v.extend_from_slice(l);
                        v.extend_from_slice(r);
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}

/// Tree gluings after forced zips, deduplicated. Trees whose zips break the
/// angle bound have no completion and are dropped.
pub fn enumerate_zipped(n: usize) -> GluingBatch {
    let trees = enumerate_tree_complexes(n);
    zip_batch(&trees)
}

fn zip_batch(trees: &GluingBatch) -> GluingBatch {
    let zipped: Vec<HexComplex> = trees
        .items
        .par_iter()
        .filter_map(|item| forced_zips(&item.complex).ok())
        .collect();
    GluingBatch::from_complexes(trees.n, Stage::Zipped, zipped)
}

/// All non-isomorphic sphere gluings of `n` hexagons.
pub fn enumerate_all(n: usize) -> GluingBatch {
    let zipped = enumerate_zipped(n);
    complete_batch(&zipped)
}

fn complete_batch(zipped: &GluingBatch) -> GluingBatch {
    let spheres: Vec<HexComplex> = zipped
        .items
        .par_iter()
        .flat_map_iter(|item| {
            if item.complex.is_sphere() {
                vec![item.complex.clone()]
            } else {
                complete_gluings(&item.complex).expect("completions of a valid disk are valid")
            }
        })
        .collect();
    let batch = GluingBatch::from_complexes(zipped.n, Stage::Full, spheres);
    for item in &batch.items {
        assert_eq!(item.complex.euler_characteristic(), 2);
    }
    batch
}

/// Full enumeration without the zip stage, for checking that zips lose nothing.
pub fn enumerate_all_without_zips(n: usize) -> GluingBatch {
    let trees = enumerate_tree_complexes(n);
    let spheres: Vec<HexComplex> = trees
        .items
        .par_iter()
        .flat_map_iter(|item| complete_gluings(&item.complex).expect("valid disk"))
        .collect();
    GluingBatch::from_complexes(n, Stage::Full, spheres)
}
