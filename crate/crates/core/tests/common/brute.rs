//! Brute-force gluing enumeration by perfect matchings, shared by the
//! integration tests and the acceptance run.

use std::collections::BTreeSet;

use hexglue::HexComplex;

pub type Pairing = Vec<(usize, usize)>;

pub fn matchings(free: &mut Vec<usize>, acc: &mut Pairing, out: &mut Vec<Pairing>) {
    let Some(&first) = free.first() else {
        out.push(acc.clone());
        return;
    };
    for i in 1..free.len() {
        let other = free[i];
        let mut rest: Vec<usize> = free.iter().copied().filter(|&x| x != first && x != other).collect();
        acc.push((first, other));
        matchings(&mut rest, acc, out);
        acc.pop();
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// True when at most three corners meet at every point and the surface is a
/// connected sphere.
pub fn convex_sphere(n: usize, pairing: &Pairing) -> bool {
    let corner = |h: usize, k: usize| 6 * h + k % 6;
    let mut parent: Vec<usize> = (0..6 * n).collect();
    let mut hexes: Vec<usize> = (0..n).collect();
    for &(x, y) in pairing {
        let (h, e, g, f) = (x / 6, x % 6, y / 6, y % 6);
        for (a, b) in [(corner(h, e), corner(g, f + 1)), (corner(h, e + 1), corner(g, f))] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let (rh, rg) = (find(&mut hexes, h), find(&mut hexes, g));
        hexes[rh] = rg;
    }
    let roots: Vec<usize> = (0..6 * n).map(|c| find(&mut parent, c)).collect();
    let classes: BTreeSet<usize> = roots.iter().copied().collect();
    let too_many = classes.iter().any(|r| roots.iter().filter(|x| *x == r).count() > 3);
    let connected = (0..n).map(|h| find(&mut hexes, h)).collect::<BTreeSet<_>>().len() == 1;
    // V - E + F with E = 3n and F = n
    let euler = classes.len() as i64 - 3 * n as i64 + n as i64;
    !too_many && connected && euler == 2
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest sorted pair list over hexagon permutations, rotations and the
/// global reflection.
pub fn brute_canonical(n: usize, pairing: &Pairing) -> Pairing {
    let mut best: Option<Pairing> = None;
    for perm in permutations(n) {
        for rot in 0..6usize.pow(n as u32) {
            let shift: Vec<usize> = (0..n).map(|h| rot / 6usize.pow(h as u32) % 6).collect();
            for mirror in [false, true] {
                let map = |x: usize| {
                    let (h, e) = (x / 6, x % 6);
                    let e = if mirror { 5 - e } else { e };
                    6 * perm[h] + (e + shift[h]) % 6
                };
                let mut image: Pairing = pairing
                    .iter()
                    .map(|&(x, y)| {
                        let (a, b) = (map(x), map(y));
                        (a.min(b), a.max(b))
                    })
                    .collect();
                image.sort();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
    }
    best.unwrap()
}

pub fn pairing_of(c: &HexComplex) -> Pairing {
    c.pairs().into_iter().map(|(x, y)| (x.index(), y.index())).collect()
}

pub fn brute_force(n: usize) -> BTreeSet<Pairing> {
    let mut all = Vec::new();
    matchings(&mut (0..6 * n).collect(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|p| convex_sphere(n, p))
        .map(|p| brute_canonical(n, &p))
        .collect()
}
