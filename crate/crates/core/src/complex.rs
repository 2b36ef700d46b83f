//! Gluings of unit regular hexagons as combinatorial maps.
//!
//! Corner `k` of a hexagon is the start of edge `k`; edges and corners are
//! numbered counterclockwise. Gluing edge `(h, e)` to `(h', e')` always
//! reverses orientation, so corner `e` of `h` is identified with corner
//! `e' + 1` of `h'` and corner `e + 1` with corner `e'`.
//!
//! Angles are tracked as integer corner counts: each hexagon corner
//! contributes 2π/3, so a vertex with `c` corners has total angle `2c·π/3`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of edges (and corners) of a hexagon.
pub const SIDES: usize = 6;

/// Largest legal corner count of an interior vertex (total angle 2π).
pub const MAX_CORNERS: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a gluing needs at least one hexagon")]
    NoHexagons,
    #[error("edge ({hexagon}, {edge}) is out of range")]
    IndexOutOfRange { hexagon: usize, edge: usize },
    #[error("edge {0} appears in more than one pair")]
    DuplicateEdge(HexEdge),
    #[error("edge {0} is paired with itself")]
    SelfPairing(HexEdge),
    #[error("the hexagons do not form a connected complex")]
    Disconnected,
    #[error("interior vertex {vertex} has {corners} corners (total angle over 2π)")]
    AngleViolation { vertex: usize, corners: usize },
    #[error("not a disk or sphere: {0}")]
    NotSurface(String),
    #[error("operation needs a disk (partial gluing)")]
    NotADisk,
    #[error("operation needs a sphere (complete gluing)")]
    NotASphere,
}

/// One side of one hexagon, `edge` counted counterclockwise from corner 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HexEdge {
    pub hexagon: usize,
    pub edge: usize,
}

impl HexEdge {
    pub const fn new(hexagon: usize, edge: usize) -> Self {
        HexEdge { hexagon, edge }
    }

    pub fn index(self) -> usize {
        SIDES * self.hexagon + self.edge
    }

    pub fn from_index(i: usize) -> Self {
        HexEdge::new(i / SIDES, i % SIDES)
    }

    pub fn next(self) -> Self {
        HexEdge::new(self.hexagon, (self.edge + 1) % SIDES)
    }

    pub fn prev(self) -> Self {
        HexEdge::new(self.hexagon, (self.edge + SIDES - 1) % SIDES)
    }
}

impl fmt::Display for HexEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.hexagon, self.edge)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Traversed counterclockwise around its hexagon.
    Head,
    /// Traversed clockwise.
    Tail,
}

/// An oriented hexagon edge. Every edge carries two darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub hexagon: usize,
    pub edge: usize,
    pub side: Side,
}

impl Dart {
    pub fn index(self) -> usize {
        2 * (SIDES * self.hexagon + self.edge) + (self.side == Side::Tail) as usize
    }

    pub fn from_index(i: usize) -> Self {
        let e = HexEdge::from_index(i / 2);
        let side = if i % 2 == 0 { Side::Head } else { Side::Tail };
        Dart { hexagon: e.hexagon, edge: e.edge, side }
    }

    pub fn hex_edge(self) -> HexEdge {
        HexEdge::new(self.hexagon, self.edge)
    }
}

/// A hexagon corner `(hexagon, corner)`.
pub type Corner = (usize, usize);

/// Corners identified to one point of the glued surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrbit {
    pub corners: Vec<Corner>,
    pub on_boundary: bool,
}

impl VertexOrbit {
    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }

    /// Total angle in units of π/3.
    pub fn total_angle(&self) -> usize {
        2 * self.corners.len()
    }

    /// Interior point with total angle below 2π.
    pub fn is_cone_point(&self) -> bool {
        !self.on_boundary && self.corners.len() < MAX_CORNERS as usize
    }
}

/// Counts of cone points by curvature, plus flat points at hexagon corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurvatureProfile {
    /// Cone points of curvature 4π/3 (one corner).
    pub n1: usize,
    /// Cone points of curvature 2π/3 (two corners).
    pub n2: usize,
    /// Interior points where three corners meet.
    pub flat_points: usize,
}

impl CurvatureProfile {
    /// Total curvature in units of 2π/3; Gauss-Bonnet demands 6.
    pub fn total_curvature(&self) -> usize {
        2 * self.n1 + self.n2
    }

    pub fn cone_points(&self) -> usize {
        self.n1 + self.n2
    }
}

impl fmt::Display for CurvatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

/// Cyclic boundary of a disk complex, traversed with the disk on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWord {
    pub edges: Vec<HexEdge>,
    /// `corners[i]` is the corner count of the vertex where `edges[i]` starts.
    pub corners: Vec<u8>,
}

impl BoundaryWord {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Isomorphism-invariant code of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<i32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            if *c < 0 {
                f.write_str("_")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Minimal code together with the hexagon orders that realize it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// For every optimal starting dart, the hexagons in breadth-first order.
    pub optimal_orders: Vec<Vec<usize>>,
}

/// `n` hexagons with an orientation-reversing partial pairing of their edges.
///
/// Values are validated on construction and immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexComplex {
    n: usize,
    partner: Vec<Option<usize>>,
    corner_vertex: Vec<usize>,
    vertices: Vec<VertexOrbit>,
}

impl HexComplex {
    /// Validates and builds a complex from glued edge pairs.
    pub fn new(n: usize, pairs: &[(HexEdge, HexEdge)]) -> Result<Self, ComplexError> {
        if n == 0 {
            return Err(ComplexError::NoHexagons);
        }
        let mut partner = vec![None; SIDES * n];
        for &(x, y) in pairs {
            for e in [x, y] {
                if e.hexagon >= n || e.edge >= SIDES {
                    return Err(ComplexError::IndexOutOfRange { hexagon: e.hexagon, edge: e.edge });
                }
            }
            if x == y {
                return Err(ComplexError::SelfPairing(x));
            }
            for e in [x, y] {
                if partner[e.index()].is_some() {
                    return Err(ComplexError::DuplicateEdge(e));
                }
            }
            partner[x.index()] = Some(y.index());
            partner[y.index()] = Some(x.index());
        }
        Self::from_partner(n, partner)
    }

    /// Builds from a dense partner table indexed by `6·hexagon + edge`.
    pub fn from_partner(n: usize, partner: Vec<Option<usize>>) -> Result<Self, ComplexError> {
        if n == 0 {
            return Err(ComplexError::NoHexagons);
        }
        assert_eq!(partner.len(), SIDES * n, "partner table has wrong length");
        for (i, p) in partner.iter().enumerate() {
            if let Some(j) = *p {
                if j >= partner.len() {
                    let e = HexEdge::from_index(j);
                    return Err(ComplexError::IndexOutOfRange { hexagon: e.hexagon, edge: e.edge });
                }
                if j == i {
                    return Err(ComplexError::SelfPairing(HexEdge::from_index(i)));
                }
                if partner[j] != Some(i) {
                    return Err(ComplexError::DuplicateEdge(HexEdge::from_index(j)));
                }
            }
        }

        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(h) = queue.pop_front() {
            for e in 0..SIDES {
                if let Some(p) = partner[SIDES * h + e] {
                    let g = p / SIDES;
                    if !seen[g] {
                        seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ComplexError::Disconnected);
        }

        let (corner_vertex, vertices) = trace_vertices(n, &partner);

        for (v, orbit) in vertices.iter().enumerate() {
            if !orbit.on_boundary && orbit.corner_count() > MAX_CORNERS as usize {
                return Err(ComplexError::AngleViolation { vertex: v, corners: orbit.corner_count() });
            }
        }

        let c = HexComplex { n, partner, corner_vertex, vertices };
        let chi = c.euler_characteristic();
        if c.is_sphere() {
            if chi != 2 {
                return Err(ComplexError::NotSurface(format!(
                    "closed surface with Euler characteristic {chi}"
                )));
            }
        } else {
            let cycles = c.boundary_cycle_count();
            if cycles != 1 || chi != 1 {
                return Err(ComplexError::NotSurface(format!(
                    "{cycles} boundary cycles, Euler characteristic {chi}"
                )));
            }
        }
        Ok(c)
    }

    pub fn hexagon_count(&self) -> usize {
        self.n
    }

    pub fn partner(&self, e: HexEdge) -> Option<HexEdge> {
        self.partner[e.index()].map(HexEdge::from_index)
    }

    pub fn partner_table(&self) -> &[Option<usize>] {
        &self.partner
    }

    /// Glued pairs, each listed once with the smaller edge first, sorted.
    pub fn pairs(&self) -> Vec<(HexEdge, HexEdge)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| match p {
                Some(j) if i < *j => Some((HexEdge::from_index(i), HexEdge::from_index(*j))),
                _ => None,
            })
            .collect()
    }

    pub fn matched_pairs(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    pub fn is_sphere(&self) -> bool {
        self.partner.iter().all(|p| p.is_some())
    }

    pub fn is_disk(&self) -> bool {
        !self.is_sphere()
    }

    /// Vertex id of a hexagon corner.
    pub fn corner_vertex(&self, hexagon: usize, corner: usize) -> usize {
        self.corner_vertex[SIDES * hexagon + corner]
    }

    /// Corner orbits, ordered by their smallest corner.
    pub fn vertex_orbits(&self) -> &[VertexOrbit] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Ids of cone points (interior vertices with one or two corners).
    pub fn cone_points(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].is_cone_point()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let e = (SIDES * self.n - self.matched_pairs()) as i64;
        v - e + self.n as i64
    }

    pub fn curvature_profile(&self) -> Result<CurvatureProfile, ComplexError> {
        if !self.is_sphere() {
            return Err(ComplexError::NotASphere);
        }
        let mut p = CurvatureProfile { n1: 0, n2: 0, flat_points: 0 };
        for orbit in &self.vertices {
            match orbit.corner_count() {
                1 => p.n1 += 1,
                2 => p.n2 += 1,
                _ => p.flat_points += 1,
            }
        }
        Ok(p)
    }

    /// The next boundary edge after `e`, walking with the surface on the left.
    fn next_boundary(&self, e: HexEdge) -> HexEdge {
        let mut d = e.next();
        while let Some(p) = self.partner(d) {
            d = p.next();
        }
        d
    }

    fn boundary_cycle_count(&self) -> usize {
        let mut seen = vec![false; self.partner.len()];
        let mut cycles = 0;
        for i in 0..self.partner.len() {
            if self.partner[i].is_some() || seen[i] {
                continue;
            }
            cycles += 1;
            let start = HexEdge::from_index(i);
            let mut e = start;
            loop {
                seen[e.index()] = true;
                e = self.next_boundary(e);
                if e == start {
                    break;
                }
            }
        }
        cycles
    }

    /// Boundary cycle starting at the smallest unmatched edge.
    pub fn boundary_word(&self) -> Result<BoundaryWord, ComplexError> {
        let start = match self.partner.iter().position(|p| p.is_none()) {
            Some(i) => HexEdge::from_index(i),
            None => return Err(ComplexError::NotADisk),
        };
        let mut edges = Vec::new();
        let mut corners = Vec::new();
        let mut e = start;
        loop {
            edges.push(e);
            let v = self.corner_vertex(e.hexagon, e.edge);
            corners.push(self.vertices[v].corner_count() as u8);
            e = self.next_boundary(e);
            if e == start {
                break;
            }
        }
        Ok(BoundaryWord { edges, corners })
    }

    /// Dual adjacency: glued hexagon pairs (with multiplicity).
    pub fn dual_edge_count(&self) -> usize {
        self.matched_pairs()
    }

    /// Whether the dual graph is a tree (exactly `n − 1` glued pairs).
    pub fn is_tree(&self) -> bool {
        self.matched_pairs() + 1 == self.n
    }

    /// Breadth-first code from one starting dart. Returns `None` as soon as
    /// the code exceeds `bound`.
    fn code_from(&self, start: Dart, bound: Option<&[i32]>, order: &mut Vec<usize>) -> Option<Vec<i32>> {
        let n = self.n;
        let ccw = start.side == Side::Head;
        let mut label = vec![usize::MAX; n];
        let mut first_edge = vec![0usize; n];
        order.clear();
        label[start.hexagon] = 0;
        first_edge[start.hexagon] = start.edge;
        order.push(start.hexagon);
        let mut code = Vec::with_capacity(SIDES * n);
        let mut qi = 0;
        let mut tight = bound.is_some();
        while qi < order.len() {
            let h = order[qi];
            qi += 1;
            for k in 0..SIDES {
                let e = if ccw {
                    (first_edge[h] + k) % SIDES
                } else {
                    (first_edge[h] + SIDES - k) % SIDES
                };
                let sym = match self.partner[SIDES * h + e] {
                    None => -1,
                    Some(p) => {
                        let (g, f) = (p / SIDES, p % SIDES);
                        if label[g] == usize::MAX {
                            label[g] = order.len();
                            first_edge[g] = f;
                            order.push(g);
                        }
                        let pos = if ccw {
                            (f + SIDES - first_edge[g]) % SIDES
                        } else {
                            (first_edge[g] + SIDES - f) % SIDES
                        };
                        (SIDES * label[g] + pos) as i32
                    }
                };
                if tight {
                    let b = bound.unwrap()[code.len()];
                    if sym > b {
                        return None;
                    }
                    if sym < b {
                        tight = false;
                    }
                }
                code.push(sym);
            }
        }
        Some(code)
    }

    fn canonical_form_with(&self, mirror: bool) -> CanonicalForm {
        let mut best: Option<Vec<i32>> = None;
        let mut orders: Vec<Vec<usize>> = Vec::new();
        let mut order = Vec::with_capacity(self.n);
        for i in 0..2 * SIDES * self.n {
            let dart = Dart::from_index(i);
            if !mirror && dart.side == Side::Tail {
                continue;
            }
            if let Some(code) = self.code_from(dart, best.as_deref(), &mut order) {
                match &best {
                    Some(b) if *b == code => orders.push(order.clone()),
                    _ => {
                        best = Some(code);
                        orders.clear();
                        orders.push(order.clone());
                    }
                }
            }
        }
        CanonicalForm { code: CanonicalCode(best.expect("complex has darts")), optimal_orders: orders }
    }

    /// Code invariant under hexagon relabeling, rotation of each hexagon's
    /// edge numbering, and global reflection.
    pub fn canonical_code(&self) -> CanonicalCode {
        self.canonical_form().code
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.canonical_form_with(true)
    }

    /// Code that distinguishes a gluing from its mirror image.
    pub fn oriented_canonical_code(&self) -> CanonicalCode {
        self.canonical_form_with(false).code
    }

    pub fn is_isomorphic(&self, other: &HexComplex) -> bool {
        self.n == other.n
            && self.matched_pairs() == other.matched_pairs()
            && self.canonical_code() == other.canonical_code()
    }

    /// Applies a relabeling: hexagon `h` becomes `perm[h]`, its edge `e`
    /// becomes `(shift[h] ± e) mod 6`, with the sign flipped (and edges
    /// reversed) when `mirror` is set.
    pub fn relabeled(&self, perm: &[usize], shift: &[usize], mirror: bool) -> HexComplex {
        let map = |e: HexEdge| {
            let edge = if mirror {
                (shift[e.hexagon] + 2 * SIDES - 1 - e.edge) % SIDES
            } else {
                (shift[e.hexagon] + e.edge) % SIDES
            };
            HexEdge::new(perm[e.hexagon], edge)
        };
        let pairs: Vec<_> = self.pairs().into_iter().map(|(x, y)| (map(x), map(y))).collect();
        HexComplex::new(self.n, &pairs).expect("relabeling preserves validity")
    }

    /// Rebuilds the complex whose breadth-first labeling produced `code`.
    /// Isomorphic to every complex with that code (possibly as the mirror
    /// image), and identical for equal codes.
    pub fn from_code(code: &CanonicalCode) -> Result<HexComplex, ComplexError> {
        let n = code.0.len() / SIDES;
        let partner = code
            .0
            .iter()
            .map(|&s| (s >= 0).then_some(s as usize))
            .collect();
        HexComplex::from_partner(n, partner)
    }

    /// Adds one glued pair, revalidating.
    pub fn with_pair(&self, x: HexEdge, y: HexEdge) -> Result<HexComplex, ComplexError> {
        let mut pairs = self.pairs();
        pairs.push((x, y));
        HexComplex::new(self.n, &pairs)
    }
}

/// Walks every corner orbit. Each corner has two incident edges, so the
/// identification graph on corners is a disjoint union of paths (boundary
/// vertices) and cycles (interior vertices).
fn trace_vertices(n: usize, partner: &[Option<usize>]) -> (Vec<usize>, Vec<VertexOrbit>) {
    let total = SIDES * n;
    let mut corner_vertex = vec![usize::MAX; total];
    let mut vertices = Vec::new();
    // Crossing edge k of corner (h, k) leads to corner (h', e' + 1).
    let forward = |c: usize| -> Option<usize> {
        partner[c].map(|p| SIDES * (p / SIDES) + (p % SIDES + 1) % SIDES)
    };
    // Crossing edge k − 1 of corner (h, k) leads to corner (h', e').
    let backward = |c: usize| -> Option<usize> {
        let (h, k) = (c / SIDES, c % SIDES);
        partner[SIDES * h + (k + SIDES - 1) % SIDES]
    };
    for start in 0..total {
        if corner_vertex[start] != usize::MAX {
            continue;
        }
        let id = vertices.len();
        let mut members = vec![start];
        corner_vertex[start] = id;
        let mut on_boundary = false;
        let mut c = start;
        loop {
            match forward(c) {
                Some(next) if next == start => break,
                Some(next) => {
                    corner_vertex[next] = id;
                    members.push(next);
                    c = next;
                }
                None => {
                    on_boundary = true;
                    break;
                }
            }
        }
        if on_boundary {
            let mut c = start;
            while let Some(prev) = backward(c) {
                corner_vertex[prev] = id;
                members.push(prev);
                c = prev;
            }
        }
        members.sort_unstable();
        vertices.push(VertexOrbit {
            corners: members.into_iter().map(|c| (c / SIDES, c % SIDES)).collect(),
            on_boundary,
        });
    }
    (corner_vertex, vertices)
}

/// Pairs folding a single hexagon into a doubly covered equilateral triangle.
pub fn triple_corner_fold() -> HexComplex {
    HexComplex::new(1, &pairs_of(&[(0, 0, 0, 1), (0, 2, 0, 3), (0, 4, 0, 5)])).unwrap()
}

/// Pairs folding a single hexagon in half along a long diagonal.
pub fn half_fold() -> HexComplex {
    HexComplex::new(1, &pairs_of(&[(0, 0, 0, 5), (0, 1, 0, 4), (0, 2, 0, 3)])).unwrap()
}

/// Two hexagons glued along all corresponding edges.
pub fn double_hexagon() -> HexComplex {
    let pairs: Vec<_> = (0..SIDES).map(|e| (HexEdge::new(0, e), HexEdge::new(1, 5 - e))).collect();
    HexComplex::new(2, &pairs).unwrap()
}

/// Convenience for literal `(h, e, h', e')` pair lists.
pub fn pairs_of(list: &[(usize, usize, usize, usize)]) -> Vec<(HexEdge, HexEdge)> {
    list.iter()
        .map(|&(h, e, g, f)| (HexEdge::new(h, e), HexEdge::new(g, f)))
        .collect()
}
