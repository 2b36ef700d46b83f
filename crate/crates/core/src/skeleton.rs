//! Convex hull skeletons and the catalog of small polyhedral graphs.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::realize::Realization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("points do not span a 3-dimensional hull")]
    DegenerateHull,
    #[error("skeleton is not in the catalog")]
    NotInCatalog,
}

/// Vertices, edges and faces of a convex hull.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Faces as cyclically ordered vertex lists.
    pub faces: Vec<Vec<usize>>,
}

impl SkeletonGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; self.vertex_count]; self.vertex_count];
        for &(u, v) in &self.edges {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    }
}

/// The hull of the cone points of a realization, with coplanar triangles
/// merged when their normals differ by less than `merge_tol` radians.
pub fn extract_skeleton(r: &Realization, merge_tol: f64) -> Result<SkeletonGraph, SkeletonError> {
    let points: Vec<Vector3<f64>> = r.cone_positions.iter().map(|p| Vector3::new(p[0], p[1], p[2])).collect();
    hull_skeleton(&points, merge_tol)
}

/// Brute-force hull: every supporting plane through three points is a
/// facet candidate, and candidates with parallel normals are merged.
pub fn hull_skeleton(points: &[Vector3<f64>], merge_tol: f64) -> Result<SkeletonGraph, SkeletonError> {
    let k = points.len();
    if k < 4 {
        return Err(SkeletonError::DegenerateHull);
    }
    let diameter = points
        .iter()
        .flat_map(|p| points.iter().map(move |q| (p - q).norm()))
        .fold(0.0, f64::max);
    let dist_tol = merge_tol * diameter.max(1.0);
    let mut facets: Vec<(Vector3<f64>, BTreeSet<usize>)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let n = (points[j] - points[i]).cross(&(points[l] - points[i]));
                if n.norm() < dist_tol * diameter.max(1.0) {
                    continue;
                }
                let n = n.normalize();
                let d: Vec<f64> = points.iter().map(|p| n.dot(&(p - points[i]))).collect();
                let below = d.iter().all(|&x| x <= dist_tol);
                let above = d.iter().all(|&x| x >= -dist_tol);
                if below && above {
                    return Err(SkeletonError::DegenerateHull);
                }
                if !below && !above {
                    continue;
                }
                let outward = if below { n } else { -n };
                let on: BTreeSet<usize> = (0..k).filter(|&m| d[m].abs() <= dist_tol).collect();
                match facets.iter_mut().find(|(m, _)| m.angle(&outward) < merge_tol) {
                    Some((_, set)) => set.extend(on),
                    None => facets.push((outward, on)),
                }
            }
        }
    }
    let mut faces = Vec::new();
    let mut edges = BTreeSet::new();
    for (normal, set) in &facets {
        let vs: Vec<usize> = set.iter().copied().collect();
        let centroid = vs.iter().map(|&v| points[v]).sum::<Vector3<f64>>() / vs.len() as f64;
        let e1 = (points[vs[0]] - centroid).normalize();
        let e2 = normal.cross(&e1);
        let mut ordered = vs.clone();
        ordered.sort_by(|&a, &b| {
            let ang = |v: usize| {
                let d = points[v] - centroid;
                d.dot(&e2).atan2(d.dot(&e1))
            };
            ang(a).total_cmp(&ang(b))
        });
        for w in 0..ordered.len() {
            let (a, b) = (ordered[w], ordered[(w + 1) % ordered.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
        faces.push(ordered);
    }
    faces.sort();
    let g = SkeletonGraph { vertex_count: k, edges: edges.into_iter().collect(), faces };
    let used: BTreeSet<usize> = g.faces.iter().flatten().copied().collect();
    if used.len() != k || k + g.faces.len() != g.edges.len() + 2 {
        return Err(SkeletonError::DegenerateHull);
    }
    Ok(g)
}

/// Shape classes: the six polyhedral types seen in small gluings, the
/// remaining polyhedral graphs on at most six vertices, and the two
/// non-polyhedral outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    Open(u8),
    Flat,
    Unresolved,
}

impl fmt::Display for ShapeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeType::I => write!(f, "i"),
            ShapeType::II => write!(f, "ii"),
            ShapeType::III => write!(f, "iii"),
            ShapeType::IV => write!(f, "iv"),
            ShapeType::V => write!(f, "v"),
            ShapeType::VI => write!(f, "vi"),
            ShapeType::Open(k) => write!(f, "open{k}"),
            ShapeType::Flat => write!(f, "flat"),
            ShapeType::Unresolved => write!(f, "unresolved"),
        }
    }
}

impl std::str::FromStr for ShapeType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "i" => ShapeType::I,
            "ii" => ShapeType::II,
            "iii" => ShapeType::III,
            "iv" => ShapeType::IV,
            "v" => ShapeType::V,
            "vi" => ShapeType::VI,
            "flat" => ShapeType::Flat,
            "unresolved" => ShapeType::Unresolved,
            _ => match s.strip_prefix("open").and_then(|k| k.parse().ok()) {
                Some(k @ 1..=4) => ShapeType::Open(k),
                _ => return Err(format!("unknown shape type {s:?}")),
            },
        })
    }
}

impl Serialize for ShapeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ShapeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A catalog graph: vertex count and edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogGraph {
    pub shape: ShapeType,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CatalogGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }
}

fn adjacency(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; k]; k];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    fn go(i: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            go(i + 1, p, out);
            p.swap(i, j);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn isomorphic(k: usize, a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    permutations(k)
        .iter()
        .any(|p| (0..k).all(|u| (0..k).all(|v| a[u][v] == b[p[u]][p[v]])))
}

fn three_connected(k: usize, a: &[Vec<bool>]) -> bool {
    if k < 4 {
        return false;
    }
    for x in 0..k {
        for y in x + 1..k {
            let alive: Vec<usize> = (0..k).filter(|&v| v != x && v != y).collect();
            let mut seen = vec![false; k];
            let mut stack = vec![alive[0]];
            seen[alive[0]] = true;
            while let Some(u) = stack.pop() {
                for &v in &alive {
                    if a[u][v] && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            if alive.iter().any(|&v| !seen[v]) {
                return false;
            }
        }
    }
    true
}

/// Maximal planar graphs on 4, 5 and 6 vertices, up to isomorphism.
fn triangulations() -> Vec<(usize, Vec<(usize, usize)>)> {
    let k4 = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    // triangular bipyramid: equator 0,1,2 and poles 3,4
    let bipyramid = vec![(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)];
    // octahedron: antipodal pairs (0,1), (2,3), (4,5)
    let octahedron: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .filter(|&(u, v)| u / 2 != v / 2)
        .collect();
    // a degree-3 vertex 5 stacked on face (0, 2, 4) of the bipyramid
    let mut stacked = bipyramid.clone();
    stacked.extend([(0, 5), (2, 5), (4, 5)]);
    vec![(4, k4), (5, bipyramid), (6, octahedron), (6, stacked)]
}

/// The ten 3-connected planar graphs on at most six vertices.
pub fn catalog() -> Vec<CatalogGraph> {
    let mut found: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for (k, full) in triangulations() {
        let m = full.len();
        for mask in 0u32..(1 << m) {
            let edges: Vec<(usize, usize)> = (0..m).filter(|&i| mask & (1 << i) == 0).map(|i| full[i]).collect();
            let a = adjacency(k, &edges);
            if !three_connected(k, &a) {
                continue;
            }
            if found.iter().any(|(k2, e2)| *k2 == k && e2.len() == edges.len() && isomorphic(k, &a, &adjacency(k, e2))) {
                continue;
            }
            found.push((k, edges));
        }
    }
    let mut open: Vec<(usize, Vec<usize>, Vec<(usize, usize)>)> = Vec::new();
    let mut out = Vec::new();
    for (k, edges) in found {
        let mut degrees = CatalogGraph { shape: ShapeType::Flat, vertex_count: k, edges: edges.clone() }.degrees();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let shape = match (k, edges.len(), degrees.as_slice()) {
            (4, _, _) => ShapeType::I,
            (5, 9, _) => ShapeType::II,
            (5, 8, _) => ShapeType::III,
            (6, _, [4, 4, 4, 4, 4, 4]) => ShapeType::IV,
            (6, _, [5, 5, 4, 4, 3, 3]) => ShapeType::V,
            (6, 9, [3, 3, 3, 3, 3, 3]) => ShapeType::VI,
            _ => {
                open.push((edges.len(), degrees, edges));
                continue;
            }
        };
        out.push(CatalogGraph { shape, vertex_count: k, edges });
    }
    open.sort();
    for (i, (_, _, edges)) in open.into_iter().enumerate() {
        out.push(CatalogGraph { shape: ShapeType::Open(i as u8 + 1), vertex_count: 6, edges });
    }
    out.sort_by_key(|g| g.shape);
    out
}

/// Catalog type of a skeleton, by graph isomorphism.
pub fn match_type(g: &SkeletonGraph) -> Result<ShapeType, SkeletonError> {
    let a = g.adjacency();
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    catalog()
        .into_iter()
        .filter(|c| c.vertex_count == g.vertex_count && c.edges.len() == g.edges.len())
        .filter(|c| {
            let mut d = c.degrees();
            d.sort_unstable();
            d == degrees
        })
        .find(|c| isomorphic(g.vertex_count, &a, &adjacency(c.vertex_count, &c.edges)))
        .map(|c| c.shape)
        .ok_or(SkeletonError::NotInCatalog)
}

/// Where the larger curvature sits on a square pyramid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApexVariant {
    /// Curvature 4π/3 at the apex, off the quadrilateral face.
    Apex,
    /// Curvature 4π/3 on the quadrilateral face; the apex has 2π/3.
    Base,
}

/// Curvature of each skeleton vertex in units of π/3 (4 or 2), with the
/// apex variant when the skeleton is a square pyramid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureAssignment {
    pub curvature: Vec<u8>,
    pub apex: Option<ApexVariant>,
}

/// Pairs skeleton vertices with their curvature; `corner_counts[v]` is the
/// number of hexagon corners meeting at cone point `v`.
pub fn curvature_assignment(g: &SkeletonGraph, corner_counts: &[u8]) -> CurvatureAssignment {
    let curvature: Vec<u8> = corner_counts.iter().map(|&c| 6 - 2 * c).collect();
    let quad = g.faces.iter().find(|f| f.len() == 4);
    let apex = match (g.vertex_count, g.edges.len(), quad) {
        (5, 8, Some(q)) => {
            let top = (0..5).find(|v| !q.contains(v)).expect("a pyramid has an apex");
            Some(if curvature[top] == 4 { ApexVariant::Apex } else { ApexVariant::Base })
        }
        _ => None,
    };
    CurvatureAssignment { curvature, apex }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_catalog_graphs() {
        let cat = catalog();
        assert_eq!(cat.len(), 10);
        let by_size: Vec<usize> = (4..=6).map(|k| cat.iter().filter(|g| g.vertex_count == k).count()).collect();
        assert_eq!(by_size, vec![1, 2, 7]);
        let shapes: Vec<String> = cat.iter().map(|g| g.shape.to_string()).collect();
        assert_eq!(shapes, ["i", "ii", "iii", "iv", "v", "vi", "open1", "open2", "open3", "open4"]);
        let open_edges: Vec<usize> = cat[6..].iter().map(|g| g.edges.len()).collect();
        assert_eq!(open_edges, vec![10, 10, 11, 11]);
    }

    fn cube_corners() -> Vec<Vector3<f64>> {
        (0..8).map(|i| Vector3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect()
    }

    #[test]
    fn hull_merges_coplanar_triangles() {
        let g = hull_skeleton(&cube_corners(), 1e-4).unwrap();
        assert_eq!(g.faces.len(), 6);
        assert_eq!(g.edges.len(), 12);
        assert!(g.face_sizes().iter().all(|&s| s == 4));
        assert_eq!(match_type(&g), Err(SkeletonError::NotInCatalog));
    }

    #[test]
    fn square_pyramid() {
        let mut p: Vec<Vector3<f64>> = cube_corners().into_iter().filter(|v| v.z == 0.0).collect();
        p.push(Vector3::new(0.5, 0.5, 0.8));
        let g = hull_skeleton(&p, 1e-4).unwrap();
        assert_eq!(match_type(&g), Ok(ShapeType::III));
        let mut corners = vec![2, 2, 2, 2, 1];
        assert_eq!(curvature_assignment(&g, &corners).apex, Some(ApexVariant::Apex));
        corners.swap(0, 4);
        assert_eq!(curvature_assignment(&g, &corners).apex, Some(ApexVariant::Base));
    }

    #[test]
    fn octahedron_and_prism() {
        let mut oct = Vec::new();
        for axis in 0..3 {
            for s in [-1.0, 1.0] {
                let mut v = Vector3::zeros();
                v[axis] = s;
                oct.push(v);
            }
        }
        assert_eq!(match_type(&hull_skeleton(&oct, 1e-4).unwrap()), Ok(ShapeType::IV));
        let tri = [Vector3::new(0.0, 0.0, 0.0), Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.5, 0.8, 0.0)];
        let prism: Vec<Vector3<f64>> = tri.iter().flat_map(|&v| [v, v + Vector3::new(0.0, 0.0, 2.0)]).collect();
        let g = hull_skeleton(&prism, 1e-4).unwrap();
        assert_eq!(g.face_sizes(), vec![3, 3, 4, 4, 4]);
        assert_eq!(match_type(&g), Ok(ShapeType::VI));
    }

    #[test]
    fn degenerate_hulls() {
        let flat: Vec<Vector3<f64>> = cube_corners().into_iter().filter(|v| v.z == 0.0).collect();
        assert_eq!(hull_skeleton(&flat, 1e-4), Err(SkeletonError::DegenerateHull));
        assert_eq!(hull_skeleton(&flat[..3], 1e-4), Err(SkeletonError::DegenerateHull));
    }

    #[test]
    fn shape_names_round_trip() {
        for s in ["i", "ii", "iii", "iv", "v", "vi", "open1", "open4", "flat", "unresolved"] {
            assert_eq!(s.parse::<ShapeType>().unwrap().to_string(), s);
        }
        assert!("open5".parse::<ShapeType>().is_err());
    }
}
