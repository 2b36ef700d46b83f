//! SVG nets: hexagons laid out along a spanning tree of the dual graph,
//! glued-edge labels, and crease lines.

use std::collections::VecDeque;
use std::fmt::Write;

use crate::complex::{HexComplex, SIDES};
use crate::geometry::{unfold, GeodesicSegment, Placement};
use crate::lattice::{cartesian, LatticePoint, RatPoint};

const SCALE: f64 = 40.0;

/// Lattice placement of every hexagon of `c`: center and the index of the
/// unit direction toward corner 0. Tree edges of the layout are returned
/// as `(hexagon, edge)` pairs.
pub fn net_layout(c: &HexComplex) -> (Vec<(LatticePoint, i64)>, Vec<(usize, usize)>) {
    let n = c.hexagon_count();
    let mut placed: Vec<Option<(LatticePoint, i64)>> = vec![None; n];
    let mut tree = Vec::new();
    let mut next_origin = LatticePoint::ORIGIN;
    for root in 0..n {
        if placed[root].is_some() {
            continue;
        }
        placed[root] = Some((next_origin, 0));
        let mut queue = VecDeque::from([root]);
        while let Some(h) = queue.pop_front() {
            for k in 0..SIDES {
                let Some(other) = c.partner(crate::complex::HexEdge::new(h, k)) else { continue };
                if placed[other.hexagon].is_some() {
                    continue;
                }
                let p = triangle_placement(placed[h].unwrap(), k);
                let q = unfold(&p, 1, 1);
                let dir = (q[1] - q[0]).unit_direction().expect("corners are unit steps from centers");
                placed[other.hexagon] = Some((q[0], (dir - other.edge as i64).rem_euclid(6)));
                tree.push((h, k));
                queue.push_back(other.hexagon);
            }
        }
        let extent = placed.iter().flatten().map(|(p, _)| p.a).max().unwrap_or(0);
        next_origin = LatticePoint::new(extent + 4, 0);
    }
    (placed.into_iter().map(|p| p.expect("every hexagon placed")).collect(), tree)
}

fn corner(center: LatticePoint, rotation: i64, k: usize) -> LatticePoint {
    center + LatticePoint::UNIT.rotate(rotation + k as i64)
}

/// Placement of triangle `6h + k` given the placement of hexagon `h`.
pub fn triangle_placement((center, rotation): (LatticePoint, i64), k: usize) -> Placement {
    [center, corner(center, rotation, k), corner(center, rotation, k + 1)]
}

fn xy(p: RatPoint) -> (f64, f64) {
    let (a, b) = p.to_f64();
    let (x, y) = cartesian(a, b);
    (x * SCALE, -y * SCALE)
}

fn map_piece(p: &Placement, q: RatPoint) -> RatPoint {
    let o = RatPoint::from(p[0]);
    let u = RatPoint::from(p[1]) - o;
    let w = RatPoint::from(p[2]) - o;
    o + u.scale(q.a) + w.scale(q.b)
}

/// The net of `c` with the given crease lines drawn on top.
pub fn net_svg(c: &HexComplex, creases: &[GeodesicSegment]) -> String {
    let (layout, tree) = net_layout(c);
    let mut lines = Vec::new();
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut body = String::new();

    for (h, &(center, rot)) in layout.iter().enumerate() {
        let pts: Vec<(f64, f64)> = (0..SIDES).map(|k| xy(corner(center, rot, k).into())).collect();
        xs.extend(pts.iter().map(|p| p.0));
        ys.extend(pts.iter().map(|p| p.1));
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        writeln!(body, r##"<polygon points="{}" fill="#f4f1e8" stroke="#888" stroke-width="0.5"/>"##, list.join(" ")).unwrap();
        let (cx, cy) = xy(center.into());
        writeln!(body, r##"<text x="{cx:.2}" y="{cy:.2}" font-size="9" text-anchor="middle" fill="#555">{h}</text>"##).unwrap();
    }

    let mut label = 0;
    for (x, y) in c.pairs() {
        let in_tree = tree.iter().any(|&(h, k)| (h, k) == (x.hexagon, x.edge) || (h, k) == (y.hexagon, y.edge));
        if in_tree {
            continue;
        }
        label += 1;
        for e in [x, y] {
            let (center, rot) = layout[e.hexagon];
            let a = corner(center, rot, e.edge);
            let b = corner(center, rot, e.edge + 1);
            let (ax, ay) = xy(a.into());
            let (bx, by) = xy(b.into());
            let (cx, cy) = xy(center.into());
            let mx = 0.8 * (ax + bx) / 2.0 + 0.2 * cx;
            let my = 0.8 * (ay + by) / 2.0 + 0.2 * cy;
            writeln!(body, r##"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#000" stroke-width="1.2"/>"##).unwrap();
            writeln!(body, r##"<text x="{mx:.2}" y="{my:.2}" font-size="8" text-anchor="middle" dominant-baseline="middle">{label}</text>"##).unwrap();
        }
    }

    for g in creases {
        for piece in &g.pieces {
            let (h, k) = (piece.triangle / SIDES, piece.triangle % SIDES);
            let p = triangle_placement(layout[h], k);
            let (x1, y1) = xy(map_piece(&p, piece.from));
            let (x2, y2) = xy(map_piece(&p, piece.to));
            lines.push(format!(
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#c0392b" stroke-width="1.5"/>"##
            ));
        }
    }

    let pad = 10.0;
    let (min_x, max_x) = xs.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let (min_y, max_y) = ys.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        min_x - pad,
        min_y - pad,
        max_x - min_x + 2.0 * pad,
        max_y - min_y + 2.0 * pad
    )
    .unwrap();
    out.push_str(&body);
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str("</svg>\n");
    out
}
