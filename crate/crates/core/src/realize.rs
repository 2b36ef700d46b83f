//! Convex realizations of non-flat gluings.
//!
//! The surface is cut into flat triangles by pairwise non-crossing shortest
//! geodesics between cone points. Edges of a convex polyhedron, and
//! diagonals of its faces, are shortest paths, so some such triangulation
//! consists of edges and face diagonals of the realization. Each candidate
//! triangulation is embedded by matching its edge lengths with a damped
//! Gauss-Newton solve; the first embedding that is convex is kept.

use std::cmp::Ordering;
use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::HexComplex;
use crate::flat::{default_geodesic_bound, is_flat_within};
use crate::geometry::{
    enumerate_geodesics, is_simple, segments_cross, triangulate, unfold, Direction, GeodesicSegment, Placement, TriMesh,
};
use crate::lattice::LatticePoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RealizeError {
    #[error("gluing is not a sphere")]
    NotASphere,
    #[error("gluing is a doubly covered polygon")]
    FlatInput,
    #[error("no convex realization found ({triangulations} triangulations tried, best residual {best_residual:.3e})")]
    Unresolved { triangulations: usize, best_residual: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizeOptions {
    /// Each unit triangle is split into `subdivision²` triangles for export.
    pub subdivision: usize,
    /// Target edge-length residual of the solver.
    pub tolerance: f64,
    /// Largest residual and convexity violation of an accepted realization.
    pub acceptance: f64,
    pub restarts: usize,
    pub seed: u64,
    /// Squared geodesic length bound; `(3n)²` when absent.
    pub geodesic_bound: Option<i64>,
    pub max_iterations: usize,
    /// Cap on the number of candidate triangulations.
    pub max_triangulations: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            subdivision: 3,
            tolerance: 1e-8,
            acceptance: 1e-6,
            restarts: 32,
            seed: 0,
            geodesic_bound: None,
            max_iterations: 400,
            max_triangulations: 5000,
        }
    }
}

/// A triangulation of the surface by geodesics between cone points.
#[derive(Clone, Debug)]
pub struct GeodesicTriangulation {
    /// Mesh vertex ids of the cone points; local indices refer to this list.
    pub cone_points: Vec<usize>,
    pub edges: Vec<GeodesicSegment>,
    /// Local endpoints of each edge.
    pub pairs: Vec<(usize, usize)>,
    /// Faces as local vertex triples, counterclockwise on the surface.
    pub faces: Vec<[usize; 3]>,
    /// For each face corner, the edge leaving it toward the next corner.
    pub face_edges: Vec<[(usize, bool); 3]>,
}

impl GeodesicTriangulation {
    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| (e.squared_length as f64).sqrt()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub cone_points: Vec<usize>,
    /// Hexagon corners meeting at each cone point (1 or 2).
    pub corner_counts: Vec<u8>,
    pub cone_positions: Vec<[f64; 3]>,
    pub triangulation: GeodesicTriangulation,
    /// Largest absolute edge-length error over the triangulation edges.
    pub residual: f64,
    /// Smallest signed distance of a cone point inside the planes of the
    /// triangulation faces (negative means a reflex edge).
    pub convexity_margin: f64,
    pub restart: usize,
    pub subdivision: usize,
    /// Positions of the refined mesh vertices.
    pub positions: Vec<[f64; 3]>,
    pub refined_triangles: Vec<[usize; 3]>,
}

impl Realization {
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        (v3(self.cone_positions[i]) - v3(self.cone_positions[j])).norm()
    }

    /// Vertex and face lines of the refined mesh.
    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for p in &self.positions {
            s.push_str(&format!("v {:.9} {:.9} {:.9}\n", p[0], p[1], p[2]));
        }
        for t in &self.refined_triangles {
            s.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
        s
    }
}

fn v3(p: [f64; 3]) -> Vector3<f64> {
    Vector3::new(p[0], p[1], p[2])
}

/// Shortest geodesics between every pair of cone points, ties included.
pub fn shortest_geodesics(mesh: &TriMesh, squared_bound: i64) -> Vec<GeodesicSegment> {
    let cones = mesh.cone_points();
    let mut out = Vec::new();
    for &u in &cones {
        let mut best: HashMap<usize, i64> = HashMap::new();
        let gs: Vec<GeodesicSegment> = enumerate_geodesics(mesh, u, squared_bound)
            .into_iter()
            .filter(|g| g.target > u)
            .collect();
        for g in &gs {
            let b = best.entry(g.target).or_insert(g.squared_length);
            *b = (*b).min(g.squared_length);
        }
        out.extend(gs.into_iter().filter(|g| best[&g.target] == g.squared_length && is_simple(g)));
    }
    out.sort_by(|a, b| (a.squared_length, a.source, a.target, a.start).cmp(&(b.squared_length, b.source, b.target, b.start)));
    out
}

/// Angular order of directions around a vertex.
fn direction_order(x: &Direction, y: &Direction) -> Ordering {
    x.wedge.cmp(&y.wedge).then_with(|| {
        let c = x.d.cross(y.d);
        0.cmp(&c)
    })
}

fn faces_of(k: usize, cones: &[usize], edges: &[GeodesicSegment]) -> Option<(Vec<[usize; 3]>, Vec<[(usize, bool); 3]>)> {
    let local = |v: usize| cones.iter().position(|&c| c == v).unwrap();
    // half-edge (edge, forward) leaves the source when forward
    let mut rot: Vec<Vec<(usize, bool, Direction)>> = vec![Vec::new(); k];
    for (i, e) in edges.iter().enumerate() {
        rot[local(e.source)].push((i, true, e.start));
        rot[local(e.target)].push((i, false, e.end));
    }
    for r in &mut rot {
        r.sort_by(|a, b| direction_order(&a.2, &b.2));
    }
    let head = |(i, fwd): (usize, bool)| if fwd { local(edges[i].target) } else { local(edges[i].source) };
    let tail = |(i, fwd): (usize, bool)| if fwd { local(edges[i].source) } else { local(edges[i].target) };
    let mut seen = HashMap::new();
    let mut faces = Vec::new();
    let mut face_edges = Vec::new();
    for (i, _) in edges.iter().enumerate() {
        for fwd in [true, false] {
            if seen.contains_key(&(i, fwd)) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = (i, fwd);
            loop {
                if seen.insert(h, faces.len()).is_some() {
                    return None;
                }
                cycle.push(h);
                let v = head(h);
                let back = (h.0, !h.1);
                let p = rot[v].iter().position(|&(j, f, _)| (j, f) == back)?;
                let q = (p + rot[v].len() - 1) % rot[v].len();
                h = (rot[v][q].0, rot[v][q].1);
                if h == (i, fwd) {
                    break;
                }
                if cycle.len() > 3 {
                    return None;
                }
            }
            if cycle.len() != 3 {
                return None;
            }
            faces.push([tail(cycle[0]), tail(cycle[1]), tail(cycle[2])]);
            face_edges.push([cycle[0], cycle[1], cycle[2]]);
        }
    }
    (faces.len() == 2 * k - 4).then_some((faces, face_edges))
}

/// Candidate triangulations by pairwise non-crossing shortest geodesics,
/// in a deterministic order.
pub fn geodesic_triangulations(mesh: &TriMesh, squared_bound: i64, limit: usize) -> Vec<GeodesicTriangulation> {
    let cones = mesh.cone_points();
    let k = cones.len();
    if k < 4 {
        return Vec::new();
    }
    let cands = shortest_geodesics(mesh, squared_bound);
    let m = cands.len();
    let mut crosses = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = segments_cross(&cands[i], &cands[j]);
            crosses[i][j] = c;
            crosses[j][i] = c;
        }
    }
    let target = 3 * k - 6;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    search(&cands, &crosses, target, 0, &mut chosen, &mut |set| {
        let edges: Vec<GeodesicSegment> = set.iter().map(|&i| cands[i].clone()).collect();
        if let Some((faces, face_edges)) = faces_of(k, &cones, &edges) {
            let local = |v: usize| cones.iter().position(|&c| c == v).unwrap();
            let pairs = edges.iter().map(|e| (local(e.source), local(e.target))).collect();
            out.push(GeodesicTriangulation { cone_points: cones.clone(), edges, pairs, faces, face_edges });
        }
        out.len() < limit
    });
    out
}

fn search(
    cands: &[GeodesicSegment],
    crosses: &[Vec<bool>],
    target: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == target {
        return emit(chosen);
    }
    if cands.len() - from < target - chosen.len() {
        return true;
    }
    for i in from..cands.len() {
        let g = &cands[i];
        let ok = chosen.iter().all(|&j| {
            !crosses[i][j] && !(cands[j].source == g.source && cands[j].target == g.target)
        });
        if ok {
            chosen.push(i);
            let go_on = search(cands, crosses, target, i + 1, chosen, emit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

struct Solve {
    positions: Vec<Vector3<f64>>,
    residual: f64,
    margin: f64,
}

/// Places points so that edge `pairs[e]` has length `lengths[e]`. The
/// points `gauge = [a, b, c]` are pinned to the origin, the positive x axis
/// and the upper xy half plane.
fn embed(
    k: usize,
    pairs: &[(usize, usize)],
    lengths: &[f64],
    gauge: [usize; 3],
    start: &[Vector3<f64>],
    opts: &RealizeOptions,
) -> Vec<Vector3<f64>> {
    // variable slots: (point, coordinate) pairs not fixed by the gauge
    let mut slots = Vec::new();
    for p in 0..k {
        let free = if p == gauge[0] {
            0
        } else if p == gauge[1] {
            1
        } else if p == gauge[2] {
            2
        } else {
            3
        };
        for c in 0..free {
            slots.push((p, c));
        }
    }
    let x0 = gauge_frame(start, gauge);
    let mut z = DVector::from_iterator(slots.len(), slots.iter().map(|&(p, c)| x0[p][c]));
    let place = |z: &DVector<f64>| {
        let mut x = vec![Vector3::zeros(); k];
        for (s, &(p, c)) in slots.iter().enumerate() {
            x[p][c] = z[s];
        }
        x
    };
    let eval = |z: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let x = place(z);
        let mut r = DVector::zeros(pairs.len());
        let mut jac = DMatrix::zeros(pairs.len(), slots.len());
        for (e, &(i, j)) in pairs.iter().enumerate() {
            let d = x[i] - x[j];
            let l = lengths[e];
            r[e] = (d.norm_squared() - l * l) / (2.0 * l);
            for (s, &(p, c)) in slots.iter().enumerate() {
                if p == i {
                    jac[(e, s)] = d[c] / l;
                } else if p == j {
                    jac[(e, s)] = -d[c] / l;
                }
            }
        }
        (r, jac)
    };
    let mut lambda = 1e-3;
    let (mut r, mut jac) = eval(&z);
    let mut cost = r.norm_squared();
    for _ in 0..opts.max_iterations {
        if r.amax() < opts.tolerance * 1e-4 {
            break;
        }
        let a = jac.transpose() * &jac;
        let g = jac.transpose() * &r;
        let mut improved = false;
        while lambda < 1e12 {
            let mut m = a.clone();
            for i in 0..m.nrows() {
                m[(i, i)] += lambda * (a[(i, i)] + 1e-9);
            }
            let Some(step) = m.lu().solve(&(-&g)) else {
                lambda *= 4.0;
                continue;
            };
            let cand = &z + &step;
            let (r2, j2) = eval(&cand);
            let c2 = r2.norm_squared();
            if c2 < cost {
                z = cand;
                r = r2;
                jac = j2;
                cost = c2;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    place(&z)
}

/// Rigidly moves `x` so that the gauge points sit on the axes.
fn gauge_frame(x: &[Vector3<f64>], gauge: [usize; 3]) -> Vec<Vector3<f64>> {
    let o = x[gauge[0]];
    let mut e1 = x[gauge[1]] - o;
    if e1.norm() < 1e-12 {
        e1 = Vector3::x();
    }
    e1 = e1.normalize();
    let mut e2 = x[gauge[2]] - o;
    e2 -= e1 * e1.dot(&e2);
    if e2.norm() < 1e-12 {
        e2 = e1.cross(&Vector3::z());
        if e2.norm() < 1e-12 {
            e2 = e1.cross(&Vector3::y());
        }
    }
    e2 = e2.normalize();
    let e3 = e1.cross(&e2);
    x.iter()
        .map(|p| {
            let d = p - o;
            Vector3::new(d.dot(&e1), d.dot(&e2), d.dot(&e3))
        })
        .collect()
}

/// Smallest inward distance of any point from the planes of the faces.
/// Inward is fixed by the sign of the enclosed volume; configurations with
/// almost no volume get `-inf`.
fn convexity_margin(x: &[Vector3<f64>], faces: &[[usize; 3]], scale: f64) -> f64 {
    let volume: f64 = faces.iter().map(|f| x[f[0]].dot(&x[f[1]].cross(&x[f[2]]))).sum::<f64>() / 6.0;
    if volume.abs() < 1e-6 * scale.powi(3) {
        return f64::NEG_INFINITY;
    }
    let sign = volume.signum();
    let mut margin = f64::INFINITY;
    for f in faces {
        let n = (x[f[1]] - x[f[0]]).cross(&(x[f[2]] - x[f[0]]));
        let len = n.norm();
        if len < 1e-12 {
            return f64::NEG_INFINITY;
        }
        for (m, p) in x.iter().enumerate() {
            if !f.contains(&m) {
                margin = margin.min(-sign * n.dot(&(p - x[f[0]])) / len);
            }
        }
    }
    margin
}

fn max_residual(x: &[Vector3<f64>], pairs: &[(usize, usize)], lengths: &[f64]) -> f64 {
    pairs
        .iter()
        .zip(lengths)
        .map(|(&(i, j), &l)| ((x[i] - x[j]).norm() - l).abs())
        .fold(0.0, f64::max)
}

/// Starting points from the low eigenvectors of the graph Laplacian,
/// scaled to the mean edge length.
fn spectral_start(k: usize, pairs: &[(usize, usize)], lengths: &[f64]) -> Vec<Vector3<f64>> {
    let mut lap = DMatrix::<f64>::zeros(k, k);
    for &(i, j) in pairs {
        lap[(i, j)] -= 1.0;
        lap[(j, i)] -= 1.0;
        lap[(i, i)] += 1.0;
        lap[(j, j)] += 1.0;
    }
    let eig = lap.symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let mut x: Vec<Vector3<f64>> = (0..k)
        .map(|p| Vector3::new(eig.eigenvectors[(p, order[1])], eig.eigenvectors[(p, order[2])], eig.eigenvectors[(p, order[3])]))
        .collect();
    let mean: f64 = pairs.iter().map(|&(i, j)| (x[i] - x[j]).norm()).sum::<f64>() / pairs.len() as f64;
    let target: f64 = lengths.iter().sum::<f64>() / lengths.len() as f64;
    let scale = if mean > 1e-9 { target / mean } else { 1.0 };
    for p in &mut x {
        *p *= scale;
    }
    x
}

fn solve_triangulation(t: &GeodesicTriangulation, opts: &RealizeOptions) -> Option<(Solve, usize)> {
    let k = t.cone_points.len();
    let lengths = t.lengths();
    let gauge = t.faces[0];
    let base = spectral_start(k, &t.pairs, &lengths);
    let scale: f64 = lengths.iter().sum::<f64>() / lengths.len() as f64;
    let mut best: Option<(Solve, usize)> = None;
    for restart in 0..opts.restarts.max(1) {
        let start: Vec<Vector3<f64>> = if restart == 0 {
            base.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
            let amp = 0.5 * scale * (1.0 + restart as f64 / opts.restarts as f64);
            base.iter()
                .map(|p| {
                    let noise = Vector3::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                    p + noise * (2.0 * amp)
                })
                .collect()
        };
        let x = embed(k, &t.pairs, &lengths, gauge, &start, opts);
        let residual = max_residual(&x, &t.pairs, &lengths);
        let margin = convexity_margin(&x, &t.faces, scale);
        if residual <= opts.acceptance && margin >= -opts.acceptance {
            let better = match &best {
                None => true,
                Some((b, _)) => residual < b.residual,
            };
            if better {
                best = Some((Solve { positions: x, residual, margin }, restart));
            }
        }
    }
    best
}

/// Embeds a non-flat sphere gluing as a convex polyhedron.
pub fn realize(c: &HexComplex, opts: &RealizeOptions) -> Result<Realization, RealizeError> {
    if !c.is_sphere() {
        return Err(RealizeError::NotASphere);
    }
    let bound = opts.geodesic_bound.unwrap_or_else(|| default_geodesic_bound(c.hexagon_count()));
    if is_flat_within(c, bound) {
        return Err(RealizeError::FlatInput);
    }
    let mesh = triangulate(c);
    let candidates = geodesic_triangulations(&mesh, bound, opts.max_triangulations);
    for t in &candidates {
        if let Some((solve, restart)) = solve_triangulation(t, opts) {
            let (positions, refined_triangles) = refine(&mesh, t, &solve.positions, opts.subdivision.max(1));
            return Ok(Realization {
                corner_counts: t.cone_points.iter().map(|&v| (mesh.angle(v) / 2) as u8).collect(),
                cone_points: t.cone_points.clone(),
                cone_positions: solve.positions.iter().map(|p| [p.x, p.y, p.z]).collect(),
                triangulation: t.clone(),
                residual: solve.residual,
                convexity_margin: solve.margin,
                restart,
                subdivision: opts.subdivision.max(1),
                positions,
                refined_triangles,
            });
        }
    }
    Err(RealizeError::Unresolved { triangulations: candidates.len(), best_residual: f64::INFINITY })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum RefinedKey {
    Vertex(usize),
    Edge(usize, usize, usize),
    Inner(usize, usize, usize),
}

fn refined_key(mesh: &TriMesh, s: usize, t: usize, i: usize, j: usize) -> RefinedKey {
    let verts = mesh.triangle_vertices(t);
    match (i, j) {
        (0, 0) => return RefinedKey::Vertex(verts[0]),
        (a, 0) if a == s => return RefinedKey::Vertex(verts[1]),
        (0, b) if b == s => return RefinedKey::Vertex(verts[2]),
        _ => {}
    }
    let on_edge = if j == 0 {
        Some((0, i))
    } else if i + j == s {
        Some((1, j))
    } else if i == 0 {
        Some((2, s - j))
    } else {
        None
    };
    match on_edge {
        None => RefinedKey::Inner(t, i, j),
        Some((e, p)) => match mesh.neighbor(t, e) {
            Some((u, f)) => RefinedKey::Edge(t, e, p).min(RefinedKey::Edge(u, f, s - p)),
            None => RefinedKey::Edge(t, e, p),
        },
    }
}

/// Strict separating-axis test between two counterclockwise triangles.
fn overlaps(p: &[LatticePoint; 3], q: &[LatticePoint; 3]) -> bool {
    let separated = |a: &[LatticePoint; 3], b: &[LatticePoint; 3]| {
        (0..3).any(|e| {
            let u = a[(e + 1) % 3] - a[e];
            b.iter().all(|&x| u.cross(x - a[e]) <= 0)
        })
    };
    !separated(p, q) && !separated(q, p)
}

/// Maps every vertex of the `s`-fold refinement of the unit triangles onto
/// the embedded geodesic triangles.
fn refine(
    mesh: &TriMesh,
    t: &GeodesicTriangulation,
    x: &[Vector3<f64>],
    s: usize,
) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let si = s as i64;
    let mut index: HashMap<RefinedKey, usize> = HashMap::new();
    let mut keys: Vec<Vec<usize>> = Vec::with_capacity(mesh.triangle_count());
    let mut count = 0;
    for tri in 0..mesh.triangle_count() {
        let mut ks = Vec::new();
        for i in 0..=s {
            for j in 0..=s - i {
                let key = refined_key(mesh, s, tri, i, j);
                let id = *index.entry(key).or_insert_with(|| {
                    count += 1;
                    count - 1
                });
                ks.push(id);
            }
        }
        keys.push(ks);
    }
    let slot = |i: usize, j: usize| -> usize {
        // position of (i, j) in the row-major listing above
        let before: usize = (0..i).map(|r| s + 1 - r).sum();
        before + j
    };
    let mut pos: Vec<Option<[f64; 3]>> = vec![None; count];

    for (f, face) in t.faces.iter().enumerate() {
        let [(e_ab, fwd_ab), _, (e_ca, fwd_ca)] = t.face_edges[f];
        let a = face[0];
        let dir_ab = if fwd_ab { t.edges[e_ab].start } else { t.edges[e_ab].end };
        // the edge from c to a, seen from a
        let dir_ac = if fwd_ca { t.edges[e_ca].end } else { t.edges[e_ca].start };
        let total = mesh.angle(t.cone_points[a]);
        let turn = (dir_ac.wedge + total - dir_ab.wedge) % total;
        let vb = dir_ab.d * t.edges[e_ab].multiple;
        let vc = (dir_ac.d * t.edges[e_ca].multiple).rotate(turn as i64);
        let tri_f = [LatticePoint::ORIGIN, vb, vc];
        let scaled_f = [tri_f[0] * si, tri_f[1] * si, tri_f[2] * si];
        let area = vb.cross(vc) as f64;
        let (xa, xb, xc) = (x[face[0]], x[face[1]], x[face[2]]);

        let (t0, s0) = mesh.fan(t.cone_points[a])[dir_ab.wedge];
        let mut p0 = [LatticePoint::ORIGIN; 3];
        p0[(s0 + 1) % 3] = LatticePoint::new(1, 0);
        p0[(s0 + 2) % 3] = LatticePoint::new(0, 1);
        let mut queue: Vec<(usize, Placement)> = vec![(t0, p0)];
        let mut seen: std::collections::HashSet<(usize, Placement)> = std::collections::HashSet::new();
        seen.insert((t0, p0));
        while let Some((tri, p)) = queue.pop() {
            if !overlaps(&p, &tri_f) {
                continue;
            }
            let u = p[1] - p[0];
            let w = p[2] - p[0];
            for i in 0..=s {
                for j in 0..=s - i {
                    let id = keys[tri][slot(i, j)];
                    if pos[id].is_some() {
                        continue;
                    }
                    let q = p[0] * si + u * i as i64 + w * j as i64;
                    let inside = (0..3).all(|e| (scaled_f[(e + 1) % 3] - scaled_f[e]).cross(q - scaled_f[e]) >= 0);
                    if !inside {
                        continue;
                    }
                    let lb = (q - scaled_f[0]).cross(scaled_f[2] - scaled_f[0]) as f64 / (si * si) as f64 / area;
                    let lc = (scaled_f[1] - scaled_f[0]).cross(q - scaled_f[0]) as f64 / (si * si) as f64 / area;
                    let la = 1.0 - lb - lc;
                    let y = xa * la + xb * lb + xc * lc;
                    pos[id] = Some([y.x, y.y, y.z]);
                }
            }
            for e in 0..3 {
                if let Some((nt, j)) = mesh.neighbor(tri, e) {
                    let np = unfold(&p, e, j);
                    if seen.insert((nt, np)) {
                        queue.push((nt, np));
                    }
                }
            }
        }
    }

    let positions: Vec<[f64; 3]> = pos.into_iter().map(|p| p.unwrap_or([f64::NAN; 3])).collect();
    let mut triangles = Vec::with_capacity(mesh.triangle_count() * s * s);
    for ks in &keys {
        for i in 0..s {
            for j in 0..s - i {
                triangles.push([ks[slot(i, j)], ks[slot(i + 1, j)], ks[slot(i, j + 1)]]);
                if i + j + 1 < s {
                    triangles.push([ks[slot(i + 1, j)], ks[slot(i + 1, j + 1)], ks[slot(i, j + 1)]]);
                }
            }
        }
    }
    (positions, triangles)
}
