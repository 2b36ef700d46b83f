//! Triangulated surfaces and exact geodesics between cone points.
//!
//! Every hexagon is split into six unit triangles around its center.
//! Triangle `6h + k` has slots `[center, corner k, corner k+1]` in
//! counterclockwise order, and its reference placement puts them at the
//! lattice points `(0,0)`, `(1,0)`, `(0,1)`. Edge `i` of a triangle runs from
//! slot `i` to slot `i+1`.
//!
//! Geodesics are traced as straight rays through successive developments,
//! so every coordinate stays on the lattice or on a rational point of a
//! lattice edge.

use std::collections::HashMap;
use std::fmt;

use num_integer::Roots;
use thiserror::Error;

use crate::complex::{HexComplex, SIDES};
use crate::lattice::{LatticePoint, RatPoint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("strip triangles {0} and {1} do not share an edge")]
    NonAdjacentStrip(usize, usize),
    #[error("segment is not incident to vertex {0}")]
    NotIncident(usize),
    #[error("vertex {0} is not a cone point")]
    NotAConePoint(usize),
}

/// A triangle slot `(triangle, slot)`.
pub type Wedge = (usize, usize);

/// Placement of a triangle's three slots in the plane.
pub type Placement = [LatticePoint; 3];

const REFERENCE: Placement = [LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(0, 1)];

/// The unit-triangle refinement of a gluing.
#[derive(Clone, Debug)]
pub struct TriMesh {
    hexagons: usize,
    corner_vertices: usize,
    vertex: Vec<[usize; 3]>,
    neighbor: Vec<[Option<Wedge>; 3]>,
    angle: Vec<usize>,
    interior: Vec<bool>,
    fans: Vec<Vec<Wedge>>,
    fan_index: Vec<[usize; 3]>,
}

/// Splits every hexagon of `c` into six triangles.
pub fn triangulate(c: &HexComplex) -> TriMesh {
    let n = c.hexagon_count();
    let cv = c.vertex_count();
    let mut vertex = Vec::with_capacity(SIDES * n);
    let mut neighbor = Vec::with_capacity(SIDES * n);
    for h in 0..n {
        for k in 0..SIDES {
            vertex.push([cv + h, c.corner_vertex(h, k), c.corner_vertex(h, (k + 1) % SIDES)]);
            let outer = c
                .partner(crate::HexEdge::new(h, k))
                .map(|p| (SIDES * p.hexagon + p.edge, 1));
            neighbor.push([
                Some((SIDES * h + (k + SIDES - 1) % SIDES, 2)),
                outer,
                Some((SIDES * h + (k + 1) % SIDES, 0)),
            ]);
        }
    }
    let mut angle = Vec::with_capacity(cv + n);
    let mut interior = Vec::with_capacity(cv + n);
    for orbit in c.vertex_orbits() {
        angle.push(orbit.total_angle());
        interior.push(!orbit.on_boundary);
    }
    angle.extend(std::iter::repeat_n(6, n));
    interior.extend(std::iter::repeat_n(true, n));

    let mut mesh = TriMesh {
        hexagons: n,
        corner_vertices: cv,
        vertex,
        neighbor,
        angle,
        interior,
        fans: vec![Vec::new(); cv + n],
        fan_index: vec![[usize::MAX; 3]; SIDES * n],
    };
    let mut first: Vec<Option<Wedge>> = vec![None; cv + n];
    for t in 0..SIDES * n {
        for s in 0..3 {
            let v = mesh.vertex[t][s];
            first[v].get_or_insert((t, s));
        }
    }
    for v in 0..cv + n {
        if !mesh.interior[v] {
            continue;
        }
        let start = first[v].expect("every vertex lies on a triangle");
        let mut fan = vec![start];
        let mut cur = start;
        loop {
            cur = mesh.next_wedge(cur).expect("interior fans are closed");
            if cur == start {
                break;
            }
            fan.push(cur);
        }
        debug_assert_eq!(fan.len(), mesh.angle[v]);
        for (i, &(t, s)) in fan.iter().enumerate() {
            mesh.fan_index[t][s] = i;
        }
        mesh.fans[v] = fan;
    }
    mesh
}

impl TriMesh {
    pub fn hexagon_count(&self) -> usize {
        self.hexagons
    }

    pub fn triangle_count(&self) -> usize {
        self.vertex.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.angle.len()
    }

    /// Unit edges, counting each glued pair once.
    pub fn edge_count(&self) -> usize {
        let half_edges: usize = self.neighbor.iter().flatten().filter(|x| x.is_some()).count();
        let open: usize = self.neighbor.iter().flatten().filter(|x| x.is_none()).count();
        half_edges / 2 + open
    }

    /// Vertices `0..corner_vertex_count()` are the corner orbits of the
    /// complex; hexagon `h` has its center at `corner_vertex_count() + h`.
    pub fn corner_vertex_count(&self) -> usize {
        self.corner_vertices
    }

    pub fn center(&self, hexagon: usize) -> usize {
        self.corner_vertices + hexagon
    }

    pub fn triangle_vertices(&self, t: usize) -> [usize; 3] {
        self.vertex[t]
    }

    /// Triangle and slot across edge `edge` of triangle `t`.
    pub fn neighbor(&self, t: usize, edge: usize) -> Option<Wedge> {
        self.neighbor[t][edge]
    }

    /// Total angle at a vertex in units of π/3.
    pub fn angle(&self, v: usize) -> usize {
        self.angle[v]
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn is_cone_point(&self, v: usize) -> bool {
        self.interior[v] && self.angle[v] < 6
    }

    pub fn cone_points(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_cone_point(v)).collect()
    }

    /// Triangle wedges around an interior vertex, counterclockwise, each of
    /// angle π/3.
    pub fn fan(&self, v: usize) -> &[Wedge] {
        &self.fans[v]
    }

    fn next_wedge(&self, (t, s): Wedge) -> Option<Wedge> {
        self.neighbor[t][(s + 2) % 3]
    }

    fn wedge_position(&self, (t, s): Wedge) -> usize {
        self.fan_index[t][s]
    }
}

/// Placement of the triangle across edge `i` of a triangle placed at `p`,
/// entered through its own edge `j`.
pub fn unfold(p: &Placement, i: usize, j: usize) -> Placement {
    let mut q = [LatticePoint::ORIGIN; 3];
    q[j] = p[(i + 1) % 3];
    q[(j + 1) % 3] = p[i];
    q[(j + 2) % 3] = p[i] + p[(i + 1) % 3] - p[(i + 2) % 3];
    q
}

/// Placement of a wedge with its vertex at the origin and its two sides
/// along `(1,0)` and `(0,1)`.
fn wedge_frame(s: usize) -> Placement {
    let mut p = [LatticePoint::ORIGIN; 3];
    p[(s + 1) % 3] = LatticePoint::new(1, 0);
    p[(s + 2) % 3] = LatticePoint::new(0, 1);
    p
}

/// Develops a sequence of edge-adjacent triangles into the plane, the first
/// one at its reference placement.
pub fn develop_strip(mesh: &TriMesh, strip: &[usize]) -> Result<Vec<Placement>, GeometryError> {
    let mut out: Vec<Placement> = Vec::with_capacity(strip.len());
    for (i, &t) in strip.iter().enumerate() {
        if i == 0 {
            out.push(REFERENCE);
            continue;
        }
        let prev = strip[i - 1];
        let step = (0..3).find_map(|e| match mesh.neighbor(prev, e) {
            Some((u, j)) if u == t => Some((e, j)),
            _ => None,
        });
        match step {
            Some((e, j)) => {
                let next = unfold(&out[i - 1], e, j);
                out.push(next);
            }
            None => return Err(GeometryError::NonAdjacentStrip(prev, t)),
        }
    }
    Ok(out)
}

/// Coordinates of `x` relative to a placement, i.e. in the triangle's
/// reference frame.
fn to_reference(p: &Placement, x: RatPoint) -> RatPoint {
    let o = RatPoint::from(p[0]);
    let u = RatPoint::from(p[1] - p[0]);
    let w = RatPoint::from(p[2] - p[0]);
    let y = x - o;
    RatPoint::new(y.cross(w), u.cross(y))
}

fn reference_slot(s: usize) -> RatPoint {
    REFERENCE[s].into()
}

/// A direction leaving a cone point: a fan wedge and a primitive vector
/// `d` with `d.a > 0`, `d.b ≥ 0` in that wedge's frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub wedge: usize,
    pub d: LatticePoint,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.d, self.wedge)
    }
}

/// Part of a geodesic inside one triangle, in reference coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub triangle: usize,
    pub from: RatPoint,
    pub to: RatPoint,
}

/// A straight segment of the surface between two cone points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicSegment {
    pub source: usize,
    pub target: usize,
    pub start: Direction,
    /// Direction back along the segment, seen from the target.
    pub end: Direction,
    /// The segment is `multiple · start.d` in the start wedge's frame.
    pub multiple: i64,
    pub developed_vector: LatticePoint,
    pub squared_length: i64,
    /// Triangles crossed, in order.
    pub strip: Vec<usize>,
    pub pieces: Vec<Piece>,
    /// Flat vertices the segment passes through.
    pub through: Vec<usize>,
}

impl GeodesicSegment {
    /// Direction of the segment leaving `v`, if `v` is an endpoint.
    pub fn direction_at(&self, v: usize, arriving: bool) -> Option<Direction> {
        match (self.source == v, self.target == v) {
            (true, true) => Some(if arriving { self.end } else { self.start }),
            (true, false) => Some(self.start),
            (false, true) => Some(self.end),
            _ => None,
        }
    }
}

enum Walk {
    AtVertex { t: usize, s: usize, p: Placement },
    Crossing { t: usize, j: usize, p: Placement, at: RatPoint },
}

struct Tracer<'a> {
    mesh: &'a TriMesh,
    d: LatticePoint,
    max_multiple: i64,
    strip: Vec<usize>,
    pieces: Vec<Piece>,
    through: Vec<usize>,
}

impl Tracer<'_> {
    fn piece(&mut self, t: usize, p: &Placement, from: RatPoint, to: RatPoint) {
        self.strip.push(t);
        self.pieces.push(Piece { triangle: t, from: to_reference(p, from), to: to_reference(p, to) });
    }

    /// Parameter `τ` with `x = τ·d`.
    fn parameter(&self, x: RatPoint) -> Rational {
        x.a / Rational::from_integer(self.d.a)
    }

    /// Finds the wedge around a flat vertex that contains the ray direction.
    fn wedge_containing(&self, mut t: usize, mut s: usize, mut p: Placement) -> (usize, usize, Placement) {
        let d = self.d;
        for _ in 0..6 {
            let u = p[(s + 1) % 3] - p[s];
            let w = p[(s + 2) % 3] - p[s];
            if u.cross(d) >= 0 && d.cross(w) > 0 {
                return (t, s, p);
            }
            let e = (s + 2) % 3;
            let (nt, j) = self.mesh.neighbor(t, e).expect("flat vertices are interior");
            p = unfold(&p, e, j);
            t = nt;
            s = j;
        }
        unreachable!("a flat vertex has six wedges covering every direction")
    }

    /// Walks from `start` until a cone point is reached or the bound passed.
    fn run(&mut self, start: Walk) -> Option<(usize, usize, Placement, LatticePoint)> {
        let mesh = self.mesh;
        let d = self.d;
        let mut state = start;
        loop {
            state = match state {
                Walk::AtVertex { t, s, p } => {
                    let x = p[s];
                    let u = p[(s + 1) % 3] - x;
                    if u.cross(d) == 0 {
                        // along the edge from slot s to slot s+1
                        let y = p[(s + 1) % 3];
                        self.strip.push(t);
                        self.pieces.push(Piece { triangle: t, from: reference_slot(s), to: reference_slot((s + 1) % 3) });
                        if let Some((nt, j)) = mesh.neighbor(t, s) {
                            self.pieces.push(Piece { triangle: nt, from: reference_slot((j + 1) % 3), to: reference_slot(j) });
                        }
                        match self.arrive(t, (s + 1) % 3, p, y) {
                            Ok(done) => return done,
                            Err(next) => next,
                        }
                    } else {
                        let e = (s + 1) % 3;
                        let at = ray_hit(d, p[e], p[(e + 1) % 3]);
                        self.piece(t, &p, x.into(), at);
                        let (nt, j) = mesh.neighbor(t, e)?;
                        Walk::Crossing { t: nt, j, p: unfold(&p, e, j), at }
                    }
                }
                Walk::Crossing { t, j, p, at } => {
                    if self.parameter(at) > Rational::from_integer(self.max_multiple) {
                        return None;
                    }
                    let zs = (j + 2) % 3;
                    let z = p[zs];
                    let side = d.cross(z);
                    if side == 0 {
                        self.piece(t, &p, at, z.into());
                        match self.arrive(t, zs, p, z) {
                            Ok(done) => return done,
                            Err(next) => next,
                        }
                    } else {
                        let e = if side > 0 { (j + 1) % 3 } else { (j + 2) % 3 };
                        let next = ray_hit(d, p[e], p[(e + 1) % 3]);
                        self.piece(t, &p, at, next);
                        let (nt, nj) = mesh.neighbor(t, e)?;
                        Walk::Crossing { t: nt, j: nj, p: unfold(&p, e, nj), at: next }
                    }
                }
            };
        }
    }

    /// Handles reaching vertex slot `s` of `t` at position `y`. Returns the
    /// final result at a cone point (or past the bound), or the next state.
    #[allow(clippy::type_complexity)]
    fn arrive(
        &mut self,
        t: usize,
        s: usize,
        p: Placement,
        y: LatticePoint,
    ) -> Result<Option<(usize, usize, Placement, LatticePoint)>, Walk> {
        let (_, k) = y.primitive();
        if k > self.max_multiple {
            return Ok(None);
        }
        let v = self.mesh.vertex[t][s];
        if !self.mesh.is_interior(v) {
            return Ok(None);
        }
        if self.mesh.is_cone_point(v) {
            return Ok(Some((t, s, p, y)));
        }
        self.through.push(v);
        let (t, s, p) = self.wedge_containing(t, s, p);
        Err(Walk::AtVertex { t, s, p })
    }
}

/// Intersection of the ray through the origin along `d` with segment `ab`.
fn ray_hit(d: LatticePoint, a: LatticePoint, b: LatticePoint) -> RatPoint {
    let mu = Rational::new(-d.cross(a), d.cross(b - a));
    RatPoint::from(a) + RatPoint::from(b - a).scale(mu)
}

/// Traces the geodesic leaving `source` in direction `start` up to squared
/// length `squared_bound`. Returns `None` if no cone point is reached.
pub fn trace(mesh: &TriMesh, source: usize, start: Direction, squared_bound: i64) -> Option<GeodesicSegment> {
    let fan = mesh.fan(source);
    if !mesh.is_cone_point(source) || start.wedge >= fan.len() || start.d.a <= 0 || start.d.b < 0 {
        return None;
    }
    let d = start.d;
    let norm = d.norm2();
    if norm > squared_bound || d.gcd() != 1 {
        return None;
    }
    let (t, s) = fan[start.wedge];
    let mut tracer = Tracer {
        mesh,
        d,
        max_multiple: (squared_bound / norm).sqrt(),
        strip: Vec::new(),
        pieces: Vec::new(),
        through: Vec::new(),
    };
    let (t, s, p, y) = tracer.run(Walk::AtVertex { t, s, p: wedge_frame(s) })?;
    let target = mesh.vertex[t][s];
    let back = -d;
    let u = p[(s + 1) % 3] - y;
    let w = p[(s + 2) % 3] - y;
    let alpha = back.cross(w);
    let beta = u.cross(back);
    let pos = mesh.wedge_position((t, s));
    let end = if alpha > 0 {
        Direction { wedge: pos, d: LatticePoint::new(alpha, beta) }
    } else {
        Direction { wedge: (pos + 1) % mesh.fan(target).len(), d: LatticePoint::new(beta, 0) }
    };
    let (_, multiple) = y.primitive();
    Some(GeodesicSegment {
        source,
        target,
        start,
        end,
        multiple,
        developed_vector: y,
        squared_length: y.norm2(),
        strip: tracer.strip,
        pieces: tracer.pieces,
        through: tracer.through,
    })
}

/// Primitive directions of one wedge with squared length at most `bound`.
pub fn wedge_directions(bound: i64) -> Vec<LatticePoint> {
    let r = bound.max(0).sqrt() + 1;
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 0..=r {
            let d = LatticePoint::new(a, b);
            if d.norm2() <= bound && d.gcd() == 1 {
                out.push(d);
            }
        }
    }
    out.sort_by_key(|d| (d.norm2(), *d));
    out
}

/// All geodesic segments from `source` to cone points with squared length
/// at most `squared_bound`, sorted by length then start direction. A loop
/// back to `source` is listed once, in the orientation with the smaller
/// start direction.
pub fn enumerate_geodesics(mesh: &TriMesh, source: usize, squared_bound: i64) -> Vec<GeodesicSegment> {
    if !mesh.is_cone_point(source) {
        return Vec::new();
    }
    let dirs = wedge_directions(squared_bound);
    let mut out = Vec::new();
    for wedge in 0..mesh.fan(source).len() {
        for &d in &dirs {
            if let Some(g) = trace(mesh, source, Direction { wedge, d }, squared_bound) {
                if g.target == source && g.end < g.start {
                    continue;
                }
                out.push(g);
            }
        }
    }
    out.sort_by(|x, y| (x.squared_length, x.start).cmp(&(y.squared_length, y.start)));
    out
}

/// The same segment traversed from its target.
pub fn reversed(mesh: &TriMesh, g: &GeodesicSegment) -> Option<GeodesicSegment> {
    trace(mesh, g.target, g.end, g.squared_length)
}

fn is_reference_vertex(x: RatPoint) -> bool {
    REFERENCE.iter().any(|&v| RatPoint::from(v) == x)
}

/// Whether two segments in one triangle share a point other than a
/// triangle vertex.
fn pieces_meet(p: &Piece, q: &Piece) -> bool {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    let r = p.to - p.from;
    let s = q.to - q.from;
    let qp = q.from - p.from;
    let denom = r.cross(s);
    if denom != zero {
        let t = qp.cross(s) / denom;
        let u = qp.cross(r) / denom;
        if t < zero || t > one || u < zero || u > one {
            return false;
        }
        return !is_reference_vertex(p.from + r.scale(t));
    }
    if qp.cross(r) != zero {
        return false;
    }
    let rr = r.dot2(r);
    let t0 = qp.dot2(r) / rr;
    let t1 = (q.to - p.from).dot2(r) / rr;
    let lo = t0.min(t1).max(zero);
    let hi = t0.max(t1).min(one);
    if lo > hi {
        return false;
    }
    lo < hi || !is_reference_vertex(p.from + r.scale(lo))
}

/// Whether two segments meet at a point interior to at least one of them.
pub fn segments_cross(s1: &GeodesicSegment, s2: &GeodesicSegment) -> bool {
    if s1.through.iter().any(|v| s2.through.contains(v)) {
        return true;
    }
    let mut by_triangle: HashMap<usize, Vec<&Piece>> = HashMap::new();
    for p in &s2.pieces {
        by_triangle.entry(p.triangle).or_default().push(p);
    }
    s1.pieces.iter().any(|p| {
        by_triangle
            .get(&p.triangle)
            .is_some_and(|qs| qs.iter().any(|q| pieces_meet(p, q)))
    })
}

/// Whether a segment never meets itself away from its endpoints.
pub fn is_simple(g: &GeodesicSegment) -> bool {
    for (i, v) in g.through.iter().enumerate() {
        if g.through[i + 1..].contains(v) {
            return false;
        }
    }
    for (i, p) in g.pieces.iter().enumerate() {
        for q in &g.pieces[i + 1..] {
            if p.triangle == q.triangle && pieces_meet(p, q) {
                return false;
            }
        }
    }
    true
}

/// An angle at a cone point: `whole` wedges of π/3, plus the turn from
/// direction `from` to direction `to` measured inside a single wedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorAngle {
    pub whole: i64,
    pub from: LatticePoint,
    pub to: LatticePoint,
}

impl SectorAngle {
    /// The angle in units of π/3 when it is a whole number of wedges.
    pub fn units(&self) -> Option<Rational> {
        (self.from == self.to).then(|| Rational::from_integer(self.whole))
    }
}

impl fmt::Display for SectorAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.units() {
            Some(u) => write!(f, "{u}π/3"),
            None => write!(f, "{}π/3 + ∠({}, {})", self.whole, self.from, self.to),
        }
    }
}

/// Splits the cone angle at `at` into the sector to the left of the path
/// `incoming` then `outgoing` and the sector to its right.
pub fn angle_between(
    mesh: &TriMesh,
    at: usize,
    incoming: &GeodesicSegment,
    outgoing: &GeodesicSegment,
) -> Result<(SectorAngle, SectorAngle), GeometryError> {
    if !mesh.is_cone_point(at) {
        return Err(GeometryError::NotAConePoint(at));
    }
    let din = incoming.direction_at(at, true).ok_or(GeometryError::NotIncident(at))?;
    let dout = outgoing.direction_at(at, false).ok_or(GeometryError::NotIncident(at))?;
    Ok(split(mesh.angle(at) as i64, din, dout))
}

/// Left and right sectors between two directions at a vertex of total
/// angle `total` (units of π/3).
pub fn split(total: i64, din: Direction, dout: Direction) -> (SectorAngle, SectorAngle) {
    if din == dout {
        return (
            SectorAngle { whole: 0, from: dout.d, to: din.d },
            SectorAngle { whole: total, from: din.d, to: dout.d },
        );
    }
    let sector = |from: Direction, to: Direction| {
        let mut whole = (to.wedge as i64 - from.wedge as i64).rem_euclid(total);
        if whole == 0 && from.d.cross(to.d) < 0 {
            whole = total;
        }
        SectorAngle { whole, from: from.d, to: to.d }
    };
    (sector(dout, din), sector(din, dout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{double_hexagon, half_fold, pairs_of, triple_corner_fold};

    fn euler(mesh: &TriMesh) -> i64 {
        mesh.vertex_count() as i64 - mesh.edge_count() as i64 + mesh.triangle_count() as i64
    }

    #[test]
    fn triangulations() {
        let m = triangulate(&triple_corner_fold());
        assert_eq!(m.triangle_count(), 6);
        let cones = m.cone_points();
        assert_eq!(cones.len(), 3);
        assert!(cones.iter().all(|&v| m.angle(v) == 2));
        assert_eq!(euler(&m), 2);

        let m = triangulate(&double_hexagon());
        assert_eq!(m.triangle_count(), 12);
        let cones = m.cone_points();
        assert_eq!(cones.len(), 6);
        assert!(cones.iter().all(|&v| m.angle(v) == 4));
        assert_eq!(euler(&m), 2);
        for v in 0..m.vertex_count() {
            assert_eq!(m.fan(v).len(), m.angle(v));
        }
    }

    #[test]
    fn strip_development() {
        let m = triangulate(&double_hexagon());
        assert_eq!(develop_strip(&m, &[3]).unwrap(), vec![REFERENCE]);

        let fan: Vec<usize> = (0..6).collect();
        let placed = develop_strip(&m, &fan).unwrap();
        let mut corners: Vec<LatticePoint> = placed.iter().map(|p| p[1]).collect();
        for p in &placed {
            assert_eq!(p[0], LatticePoint::ORIGIN);
        }
        corners.sort();
        let mut expected: Vec<LatticePoint> = (0..6).map(|k| LatticePoint::UNIT.rotate(k)).collect();
        expected.sort();
        assert_eq!(corners, expected);

        // across the glued edge 0 of hexagon 0 into hexagon 1
        let placed = develop_strip(&m, &[0, 6 + 5]).unwrap();
        assert_eq!(placed[1][0], LatticePoint::new(1, 1));
        for p in &placed {
            for i in 0..3 {
                assert_eq!((p[i] - p[(i + 1) % 3]).norm2(), 1);
            }
        }
        assert_eq!(develop_strip(&m, &[0, 3]), Err(GeometryError::NonAdjacentStrip(0, 3)));
    }

    #[test]
    fn geodesics_on_the_double_hexagon() {
        let c = double_hexagon();
        let m = triangulate(&c);
        let v0 = c.corner_vertex(0, 0);
        let v1 = c.corner_vertex(0, 1);
        let gs = enumerate_geodesics(&m, v0, 36);
        let unit: Vec<_> = gs.iter().filter(|g| g.squared_length == 1).collect();
        assert_eq!(unit.len(), 2);
        assert!(unit.iter().any(|g| g.target == v1));
        assert!(unit.iter().all(|g| g.through.is_empty()));
        for g in &gs {
            assert!(m.is_cone_point(g.target));
            assert!(g.through.iter().all(|&v| !m.is_cone_point(v)));
            assert!(crate::lattice::is_loeschian(g.squared_length));
        }
    }

    #[test]
    fn geodesics_on_the_triple_fold() {
        let c = triple_corner_fold();
        let m = triangulate(&c);
        let cones = m.cone_points();
        for &a in &cones {
            let gs = enumerate_geodesics(&m, a, 3);
            for &b in &cones {
                if a != b {
                    assert!(gs.iter().any(|g| g.target == b && g.squared_length == 3));
                }
            }
            assert!(gs.iter().all(|g| g.squared_length == 3));
        }
    }

    #[test]
    fn bound_monotonicity_and_reversal() {
        for c in [double_hexagon(), half_fold(), triple_corner_fold()] {
            let m = triangulate(&c);
            for v in m.cone_points() {
                let big = enumerate_geodesics(&m, v, 49);
                let small = enumerate_geodesics(&m, v, 12);
                let cut: Vec<_> = big.iter().filter(|g| g.squared_length <= 12).cloned().collect();
                assert_eq!(cut, small);
                for g in &big {
                    let r = reversed(&m, g).expect("reverse segment exists");
                    assert_eq!(r.target, g.source);
                    assert_eq!(r.end, g.start);
                    assert_eq!(r.squared_length, g.squared_length);
                }
            }
        }
    }

    #[test]
    fn crossing_tests() {
        let c = double_hexagon();
        let m = triangulate(&c);
        let v0 = c.corner_vertex(0, 0);
        let v1 = c.corner_vertex(0, 1);
        let v2 = c.corner_vertex(0, 2);
        let v3 = c.corner_vertex(0, 3);
        let gs = enumerate_geodesics(&m, v0, 4);
        assert!(segments_cross(&gs[0], &gs[0]));

        // the rhombus center, c0, c1, c2 of hexagon 0: c0-c2 against the
        // segment from c1 through the center
        let in_front = |g: &&GeodesicSegment| g.strip.iter().all(|&t| t < 6);
        let diag = gs.iter().filter(in_front).find(|g| g.target == v2 && g.squared_length == 3).unwrap();
        let behind = gs.iter().find(|g| g.target == v2 && g.squared_length == 3 && g.strip.iter().all(|&t| t >= 6)).unwrap();
        let through = enumerate_geodesics(&m, v1, 4)
            .into_iter()
            .find(|g| g.through == vec![m.center(0)])
            .unwrap();
        assert!(segments_cross(diag, &through));
        assert!(segments_cross(&through, diag));
        assert!(!segments_cross(behind, &through));

        // sharing only the endpoint c2
        let edge = enumerate_geodesics(&m, v2, 1).into_iter().find(|g| g.target == v3).unwrap();
        assert!(!segments_cross(diag, &edge));
        assert!(is_simple(diag));
    }

    #[test]
    fn piece_intersection_rules() {
        let h = Rational::new(1, 2);
        let mid = RatPoint::new(h, h);
        let a = Piece { triangle: 0, from: reference_slot(1), to: reference_slot(2) };
        let b = Piece { triangle: 0, from: reference_slot(0), to: mid };
        assert!(pieces_meet(&a, &b));
        let c = Piece { triangle: 0, from: reference_slot(0), to: reference_slot(1) };
        assert!(!pieces_meet(&a, &c));
        assert!(pieces_meet(&c, &c));
    }

    #[test]
    fn angles_at_cone_points() {
        let c = double_hexagon();
        let m = triangulate(&c);
        let v = c.corner_vertex(0, 0);
        let gs = enumerate_geodesics(&m, v, 1);
        assert_eq!(gs.len(), 2);
        let (l, r) = angle_between(&m, v, &reversed(&m, &gs[0]).unwrap(), &gs[0]).unwrap();
        assert_eq!(l.units(), Some(Rational::from_integer(0)));
        assert_eq!(r.units(), Some(Rational::from_integer(4)));
        let (l, r) = angle_between(&m, v, &reversed(&m, &gs[0]).unwrap(), &gs[1]).unwrap();
        assert_eq!(l.units(), Some(Rational::from_integer(2)));
        assert_eq!(r.units(), Some(Rational::from_integer(2)));
        let other = c.corner_vertex(0, 3);
        let far = enumerate_geodesics(&m, other, 1);
        assert_eq!(angle_between(&m, v, &far[0], &gs[0]), Err(GeometryError::NotIncident(v)));
    }

    #[test]
    fn disk_meshes_have_boundary() {
        let c = HexComplex::new(2, &pairs_of(&[(0, 0, 1, 0)])).unwrap();
        let m = triangulate(&c);
        assert_eq!(m.triangle_count(), 12);
        assert!(m.cone_points().is_empty());
        assert_eq!(euler(&m), 1);
    }
}
