//! Doubly covered polygons.
//!
//! A sphere gluing is flat exactly when a closed chain of geodesics through
//! all cone points halves the cone angle at each of them. Cutting along the
//! chain leaves two congruent convex polygons whose angles are π/3 or 2π/3.
//!
//! Polygons use turtle order: side `i` ends at vertex `i`, and `angles[i]`
//! is the interior angle at vertex `i` in units of π/3.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, HexComplex, HexEdge, SIDES};
use crate::enumerate::enumerate_all;
use crate::geometry::{
    enumerate_geodesics, is_simple, segments_cross, split, trace, triangulate, Direction, GeodesicSegment,
    SectorAngle, TriMesh,
};
use crate::lattice::{is_loeschian, vectors_of_norm, LatticePoint, RatPoint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("seam angles sum to {sum}π/3 over {vertices} vertices")]
    MalformedSeam { sum: i64, vertices: usize },
    #[error("invalid polygon: {0}")]
    InvalidSpec(String),
    #[error("polygon is not on the hexagonal grid: {0}")]
    NotOnGrid(String),
    #[error("polygon covers {area} unit triangles, not a multiple of 3")]
    AreaMismatch { area: i64 },
    #[error("grid cells do not close up into a gluing: {0}")]
    Unmatched(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Squared geodesic length bound used when none is given: `(3n)²`.
pub fn default_geodesic_bound(n: usize) -> i64 {
    let l = 3 * n as i64;
    l * l
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonType {
    /// Equilateral triangle.
    A,
    /// Parallelogram with angles π/3, 2π/3, π/3, 2π/3.
    B,
    /// Trapezoid with angles π/3, π/3, 2π/3, 2π/3.
    C,
    /// Pentagon with one angle π/3.
    D,
    /// Hexagon with all angles 2π/3.
    E,
}

impl fmt::Display for PolygonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PolygonType::A => "a",
            PolygonType::B => "b",
            PolygonType::C => "c",
            PolygonType::D => "d",
            PolygonType::E => "e",
        };
        f.write_str(s)
    }
}

/// Polygon type from the cyclic angle sequence, if the angles sum correctly.
pub fn polygon_type(angles: &[u8]) -> Result<PolygonType, FlatError> {
    let k = angles.len();
    let sum: i64 = angles.iter().map(|&a| a as i64).sum();
    if k < 3 || sum != 3 * (k as i64 - 2) || angles.iter().any(|&a| a != 1 && a != 2) {
        return Err(FlatError::MalformedSeam { sum, vertices: k });
    }
    Ok(match k {
        3 => PolygonType::A,
        4 => {
            if angles[0] == angles[2] {
                PolygonType::B
            } else {
                PolygonType::C
            }
        }
        5 => PolygonType::D,
        _ => PolygonType::E,
    })
}

/// Convex polygon with vertices on hexagon corners of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPolygon {
    pub vertices: Vec<LatticePoint>,
    pub angles: Vec<u8>,
}

impl GridPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Side `i`, from vertex `i − 1` to vertex `i`.
    pub fn side(&self, i: usize) -> LatticePoint {
        let k = self.len();
        self.vertices[i] - self.vertices[(i + k - 1) % k]
    }

    pub fn squared_sides(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.side(i).norm2()).collect()
    }

    /// Area in unit triangles.
    pub fn area(&self) -> i64 {
        let k = self.len();
        (0..k).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % k])).sum()
    }

    /// Number of hexagons in the doubly covered polygon.
    pub fn hexagons(&self) -> Option<usize> {
        let a = self.area();
        (a > 0 && a % 3 == 0).then_some((a / 3) as usize)
    }

    pub fn on_grid(&self) -> bool {
        self.vertices.iter().all(|v| !v.is_center())
    }

    /// Whether the turn at every vertex matches its angle.
    pub fn angles_match(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| {
            let a = self.angles[i];
            (a == 1 || a == 2) && {
                let (h, _) = self.side(i).primitive();
                let (g, _) = self.side((i + 1) % k).primitive();
                h.rotate(3 - a as i64) == g
            }
        })
    }

    pub fn polygon_type(&self) -> Result<PolygonType, FlatError> {
        polygon_type(&self.angles)
    }

    fn rational_vertices(&self) -> Vec<RatPoint> {
        self.vertices.iter().map(|&v| v.into()).collect()
    }
}

/// Closed geodesic chain through all cone points that halves every cone
/// angle.
#[derive(Clone, Debug)]
pub struct Seam {
    pub cycle: Vec<usize>,
    /// `sides[i]` runs from `cycle[i]` to `cycle[i + 1]`.
    pub sides: Vec<GeodesicSegment>,
    /// Split of the cone angle at `cycle[i]` between `sides[i − 1]` and `sides[i]`.
    pub splits: Vec<(SectorAngle, SectorAngle)>,
    /// One of the two halves, developed with `polygon.vertices[i]` at `cycle[i]`.
    pub polygon: GridPolygon,
}

impl Seam {
    pub fn max_squared_side(&self) -> i64 {
        self.sides.iter().map(|s| s.squared_length).max().unwrap_or(0)
    }
}

/// Searches for a seam using geodesics of squared length at most
/// `squared_bound`. Sides leaving the least cone point are tried shortest
/// first; every later side is forced by the halving condition.
pub fn find_seam(mesh: &TriMesh, squared_bound: i64) -> Option<Seam> {
    let cones = mesh.cone_points();
    let &v0 = cones.first()?;
    enumerate_geodesics(mesh, v0, squared_bound)
        .into_iter()
        .filter(|g| g.target != v0)
        .find_map(|g| seam_from(mesh, &cones, g, squared_bound))
}

fn seam_from(mesh: &TriMesh, cones: &[usize], first: GeodesicSegment, bound: i64) -> Option<Seam> {
    let k = cones.len();
    let v0 = first.source;
    let mut cycle = vec![v0];
    let mut sides = vec![first];
    loop {
        let last = sides.last().unwrap();
        let u = last.target;
        if u == v0 {
            break;
        }
        if cycle.contains(&u) || cycle.len() == k {
            return None;
        }
        cycle.push(u);
        let c = mesh.angle(u) / 2;
        let out = Direction { wedge: (last.end.wedge + c) % mesh.angle(u), d: last.end.d };
        sides.push(trace(mesh, u, out, bound)?);
    }
    if cycle.len() != k {
        return None;
    }
    let mut splits = Vec::with_capacity(k);
    for i in 0..k {
        let v = cycle[i];
        let total = mesh.angle(v) as i64;
        let s = split(total, sides[(i + k - 1) % k].end, sides[i].start);
        let half = Rational::from_integer(total / 2);
        if s.0.units() != Some(half) || s.1.units() != Some(half) {
            return None;
        }
        splits.push(s);
    }
    if !sides.iter().all(is_simple) {
        return None;
    }
    for i in 0..k {
        for j in i + 1..k {
            if segments_cross(&sides[i], &sides[j]) {
                return None;
            }
        }
    }
    let polygon = develop_seam(mesh, &cycle, &sides)?;
    Some(Seam { cycle, sides, splits, polygon })
}

/// Lays out the half of the surface to the left of the seam.
fn develop_seam(mesh: &TriMesh, cycle: &[usize], sides: &[GeodesicSegment]) -> Option<GridPolygon> {
    let k = cycle.len();
    let (_, s) = mesh.fan(cycle[0])[sides[0].start.wedge];
    let reference = [LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(0, 1)];
    let origin = reference[s];
    let u = reference[(s + 1) % 3] - origin;
    let w = reference[(s + 2) % 3] - origin;
    let d = sides[0].start.d;
    let mut heading = u * d.a + w * d.b;
    let angles: Vec<u8> = cycle.iter().map(|&v| (mesh.angle(v) / 2) as u8).collect();
    let mut vertices = vec![origin];
    let mut at = origin;
    for i in 0..k {
        at = at + heading * sides[i].multiple;
        let next = (i + 1) % k;
        if next == 0 {
            if at != origin {
                return None;
            }
        } else {
            vertices.push(at);
        }
        heading = heading.rotate(3 - angles[next] as i64);
    }
    let p = GridPolygon { vertices, angles };
    (p.angles_match() && p.on_grid()).then_some(p)
}

/// A flat gluing together with its polygon.
#[derive(Clone, Debug)]
pub struct FlatShape {
    pub n: usize,
    pub polygon_type: PolygonType,
    pub angles: Vec<u8>,
    pub squared_sides: Vec<i64>,
    pub polygon: GridPolygon,
    pub witness: Seam,
}

/// Reads off the polygon type from a seam.
pub fn classify_flat(seam: &Seam) -> Result<FlatShape, FlatError> {
    let angles = seam.polygon.angles.clone();
    let polygon_type = polygon_type(&angles)?;
    let n = seam.polygon.hexagons().ok_or(FlatError::AreaMismatch { area: seam.polygon.area() })?;
    Ok(FlatShape {
        n,
        polygon_type,
        angles,
        squared_sides: seam.polygon.squared_sides(),
        polygon: seam.polygon.clone(),
        witness: seam.clone(),
    })
}

/// Flat shape of a sphere gluing, if it is a doubly covered polygon.
pub fn flat_shape(c: &HexComplex, squared_bound: i64) -> Option<FlatShape> {
    let mesh = triangulate(c);
    let seam = find_seam(&mesh, squared_bound)?;
    classify_flat(&seam).ok()
}

/// Whether a sphere gluing is a doubly covered polygon.
pub fn is_flat(c: &HexComplex) -> bool {
    is_flat_within(c, default_geodesic_bound(c.hexagon_count()))
}

pub fn is_flat_within(c: &HexComplex, squared_bound: i64) -> bool {
    if let Ok(p) = c.curvature_profile() {
        if p.cone_points() == 3 {
            return true;
        }
    }
    find_seam(&triangulate(c), squared_bound).is_some()
}

/// All flat shapes among the gluings of `n` hexagons, ordered by the
/// canonical code of their gluing.
pub fn enumerate_flat_shapes(n: usize) -> Vec<FlatShape> {
    let batch = enumerate_all(n);
    let bound = default_geodesic_bound(n);
    batch.items.par_iter().filter_map(|item| flat_shape(&item.complex, bound)).collect()
}

/// Counts of flat shapes by type.
pub fn count_by_type(shapes: &[FlatShape]) -> BTreeMap<PolygonType, usize> {
    let mut out = BTreeMap::new();
    for s in shapes {
        *out.entry(s.polygon_type).or_insert(0) += 1;
    }
    out
}

/// Places a polygon with the given angles and squared side lengths on the
/// grid, vertex 0 at `(1, 0)`.
pub fn polygon_on_grid(angles: &[u8], squared_sides: &[i64]) -> Result<Option<GridPolygon>, FlatError> {
    let k = angles.len();
    if squared_sides.len() != k {
        return Err(FlatError::InvalidSpec(format!("{} angles but {} sides", k, squared_sides.len())));
    }
    if k < 3 {
        return Err(FlatError::InvalidSpec("fewer than three vertices".into()));
    }
    if angles.iter().any(|&a| a != 1 && a != 2) {
        return Err(FlatError::InvalidSpec("angles must be π/3 or 2π/3".into()));
    }
    let sum: i64 = angles.iter().map(|&a| a as i64).sum();
    if sum != 3 * (k as i64 - 2) {
        return Err(FlatError::InvalidSpec(format!("angles sum to {sum}π/3, expected {}π/3", 3 * (k as i64 - 2))));
    }
    if let Some(&s) = squared_sides.iter().find(|&&s| s <= 0 || !is_loeschian(s)) {
        return Err(FlatError::InvalidSpec(format!("squared side {s} is not a lattice length")));
    }
    for v in vectors_of_norm(squared_sides[0]) {
        let (h0, _) = v.primitive();
        let unit = h0.norm2();
        let mut multiples = Vec::with_capacity(k);
        for &s in squared_sides {
            let m = integer_sqrt_exact(s, unit);
            match m {
                Some(m) => multiples.push(m),
                None => break,
            }
        }
        if multiples.len() != k {
            continue;
        }
        let mut at = LatticePoint::ORIGIN;
        let mut heading = h0;
        let mut rel = Vec::with_capacity(k);
        for i in 0..k {
            if i > 0 {
                heading = heading.rotate(3 - angles[i - 1] as i64);
            }
            at = at + heading * multiples[i];
            rel.push(at);
        }
        if at != LatticePoint::ORIGIN {
            continue;
        }
        let shift = LatticePoint::new(1, 0) - rel[0];
        let p = GridPolygon { vertices: rel.iter().map(|&x| x + shift).collect(), angles: angles.to_vec() };
        if p.on_grid() && p.hexagons().is_some() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn integer_sqrt_exact(s: i64, unit: i64) -> Option<i64> {
    if s % unit != 0 {
        return None;
    }
    let q = s / unit;
    let r = num_integer::Roots::sqrt(&q);
    (r * r == q).then_some(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Sheet {
    Front,
    Back,
    Seam,
}

/// A point of the doubly covered polygon.
type SurfacePoint = (Sheet, RatPoint);

struct Doubled {
    v: Vec<RatPoint>,
}

impl Doubled {
    fn side(&self, j: usize) -> (RatPoint, RatPoint) {
        let k = self.v.len();
        (self.v[(j + k - 1) % k], self.v[j])
    }

    fn inside_closed(&self, x: RatPoint) -> bool {
        (0..self.v.len()).all(|j| {
            let (a, b) = self.side(j);
            (b - a).cross(x - a) >= Rational::from_integer(0)
        })
    }

    fn inside_open(&self, x: RatPoint) -> bool {
        (0..self.v.len()).all(|j| {
            let (a, b) = self.side(j);
            (b - a).cross(x - a) > Rational::from_integer(0)
        })
    }

    /// Follows the straight path from `x` on `sheet` to `y`, folding over
    /// the polygon boundary whenever it is crossed.
    fn locate(&self, mut x: RatPoint, mut sheet: Sheet, mut y: RatPoint) -> Result<SurfacePoint, FlatError> {
        let zero = Rational::from_integer(0);
        for _ in 0..=self.v.len() {
            let mut exit: Option<(Rational, usize)> = None;
            let mut tie = false;
            for j in 0..self.v.len() {
                let (a, b) = self.side(j);
                let cy = (b - a).cross(y - a);
                if cy >= zero {
                    continue;
                }
                let cx = (b - a).cross(x - a);
                let tau = cx / (cx - cy);
                match exit {
                    Some((t, _)) if t < tau => {}
                    Some((t, _)) if t == tau => tie = true,
                    _ => {
                        exit = Some((tau, j));
                        tie = false;
                    }
                }
            }
            let Some((tau, j)) = exit else {
                let on_seam = !self.inside_open(y);
                return Ok((if on_seam { Sheet::Seam } else { sheet }, y));
            };
            if tie {
                return Err(FlatError::NotOnGrid("a cell path leaves through a polygon vertex".into()));
            }
            let (a, b) = self.side(j);
            x = x + (y - x).scale(tau);
            y = y.reflect(a, b);
            sheet = match sheet {
                Sheet::Front => Sheet::Back,
                _ => Sheet::Front,
            };
        }
        Err(FlatError::NotOnGrid("a cell path keeps folding".into()))
    }
}

/// Builds the doubly covered gluing of a grid polygon: hexagon cells of the
/// grid on the front copy, and cells of the grid mirrored across side 0 on
/// the back copy.
pub fn polygon_to_gluing(p: &GridPolygon) -> Result<HexComplex, FlatError> {
    if p.len() < 3 || p.angles.len() != p.len() {
        return Err(FlatError::InvalidSpec("polygon needs at least three vertices with angles".into()));
    }
    polygon_type(&p.angles).map_err(|_| FlatError::InvalidSpec("angles do not form a convex grid polygon".into()))?;
    if !p.angles_match() {
        return Err(FlatError::InvalidSpec("vertex turns do not match the angles".into()));
    }
    if !p.on_grid() {
        return Err(FlatError::NotOnGrid("a vertex is a hexagon center".into()));
    }
    let area = p.area();
    let n = p.hexagons().ok_or(FlatError::AreaMismatch { area })?;

    let doubled = Doubled { v: p.rational_vertices() };
    let (s0a, s0b) = doubled.side(0);
    let mirror = Doubled { v: doubled.v.iter().map(|x| x.reflect(s0a, s0b)).rev().collect() };

    let units: Vec<RatPoint> = (0..SIDES as i64).map(|k| LatticePoint::UNIT.rotate(k).into()).collect();
    // (sheet of the center, center, corners in surface order)
    let mut cells: Vec<(Sheet, RatPoint, Vec<RatPoint>)> = Vec::new();
    for c in lattice_box(&doubled.v) {
        let x: RatPoint = c.into();
        if c.is_center() && doubled.inside_closed(x) {
            cells.push((Sheet::Front, x, units.iter().map(|&u| x + u).collect()));
        }
    }
    let mut back = Vec::new();
    for c in lattice_box(&mirror.v) {
        let x: RatPoint = c.into();
        if c.is_center() && mirror.inside_open(x) {
            let center = x.reflect(s0a, s0b);
            back.push((Sheet::Back, center, units.iter().map(|&u| (x + u).reflect(s0a, s0b)).collect::<Vec<_>>()));
        }
    }
    back.sort_by(|a, b| a.1.cmp(&b.1));
    cells.extend(back);
    if cells.len() != n {
        return Err(FlatError::Unmatched(format!("{} grid cells for area {} ({} hexagons)", cells.len(), area, n)));
    }

    let half = Rational::new(1, 2);
    let mut corner_at = Vec::with_capacity(n);
    let mut by_midpoint: BTreeMap<SurfacePoint, Vec<HexEdge>> = BTreeMap::new();
    for (h, (sheet, center, corners)) in cells.iter().enumerate() {
        let mut located = Vec::with_capacity(SIDES);
        for k in 0..SIDES {
            located.push(doubled.locate(*center, *sheet, corners[k])?);
            let mid = (corners[k] + corners[(k + 1) % SIDES]).scale(half);
            let key = doubled.locate(*center, *sheet, mid)?;
            by_midpoint.entry(key).or_default().push(HexEdge::new(h, k));
        }
        corner_at.push(located);
    }
    let mut pairs = Vec::with_capacity(3 * n);
    for (key, edges) in &by_midpoint {
        let [x, y] = edges[..] else {
            return Err(FlatError::Unmatched(format!("{} edges meet at {:?}", edges.len(), key.1.to_f64())));
        };
        let agree = corner_at[x.hexagon][x.edge] == corner_at[y.hexagon][(y.edge + 1) % SIDES]
            && corner_at[x.hexagon][(x.edge + 1) % SIDES] == corner_at[y.hexagon][y.edge];
        if !agree {
            return Err(FlatError::Unmatched(format!("edges {x} and {y} meet with the same orientation")));
        }
        pairs.push((x, y));
    }
    let c = HexComplex::new(n, &pairs)?;
    if !c.is_sphere() {
        return Err(FlatError::Unmatched("the construction left open edges".into()));
    }
    Ok(c)
}

/// Lattice points in the bounding box of a polygon.
fn lattice_box(v: &[RatPoint]) -> impl Iterator<Item = LatticePoint> {
    let floor = |r: Rational| r.floor().to_integer();
    let ceil = |r: Rational| r.ceil().to_integer();
    let a0 = v.iter().map(|p| floor(p.a)).min().unwrap_or(0);
    let a1 = v.iter().map(|p| ceil(p.a)).max().unwrap_or(0);
    let b0 = v.iter().map(|p| floor(p.b)).min().unwrap_or(0);
    let b1 = v.iter().map(|p| ceil(p.b)).max().unwrap_or(0);
    (a0..=a1).flat_map(move |a| (b0..=b1).map(move |b| LatticePoint::new(a, b)))
}
