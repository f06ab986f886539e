//! Complex generators and brute-force oracles shared by the integration
//! tests. Nothing here calls into the code paths it is used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use polycomm::{Graph, SimplicialComplex, VertexSet};
use rand::Rng;

/// Every simplicial complex on vertex set `{1..m}` (all singletons present),
/// `m <= 6`. Faces are tracked as a bitmask over the `2^m` subsets.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= 6);
    let mut candidates: Vec<u32> = (0u32..1 << m).filter(|s| s.count_ones() >= 2).collect();
    candidates.sort_by_key(|&s| (s.count_ones(), s));
    let mut base: u64 = 1; // empty face
    for v in 0..m {
        base |= 1 << (1u32 << v);
    }
    let mut out = Vec::new();
    fn rec(idx: usize, faces: u64, candidates: &[u32], m: usize, out: &mut Vec<SimplicialComplex>) {
        if idx == candidates.len() {
            let list: Vec<VertexSet> = (0u32..1 << m)
                .filter(|&s| faces >> s & 1 == 1)
                .map(VertexSet::from_mask)
                .collect();
            out.push(SimplicialComplex::from_faces(m, &list).unwrap());
            return;
        }
        let s = candidates[idx];
        rec(idx + 1, faces, candidates, m, out);
        let closed = (0..32).filter(|b| s >> b & 1 == 1).all(|b| faces >> (s & !(1 << b)) & 1 == 1);
        if closed {
            rec(idx + 1, faces | 1 << s, candidates, m, out);
        }
    }
    rec(0, base, &candidates, m, &mut out);
    out
}

/// A random complex given by up to `m` random faces of random size.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(0..=m + 2);
    let faces: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(2..=m.clamp(2, 4));
            let mut f: Vec<usize> = (1..=m).collect();
            for i in (1..f.len()).rev() {
                f.swap(i, rng.gen_range(0..=i));
            }
            f.truncate(size);
            f
        })
        .collect();
    SimplicialComplex::from_maximal_faces(m, &faces).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, m: usize, p: f64) -> Graph {
    let mut g = Graph::empty(m).unwrap();
    for a in 1..=m {
        for b in a + 1..=m {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

pub fn graph_from_mask(m: usize, mask: u32) -> Graph {
    let mut g = Graph::empty(m).unwrap();
    let mut bit = 0;
    for a in 1..=m {
        for b in a + 1..=m {
            if mask >> bit & 1 == 1 {
                g.add_edge(a, b).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Some vertex subset of size at least 4 induces a cycle.
pub fn has_chordless_cycle_brute_force(g: &Graph) -> bool {
    let m = g.vertex_count();
    (0u32..1 << m).filter(|s| s.count_ones() >= 4).any(|s| {
        let set = VertexSet::from_mask(s);
        let two_regular = set.iter().all(|v| (g.neighbours(v) & set).len() == 2);
        if !two_regular {
            return false;
        }
        // connected
        let start = set.min().unwrap();
        let mut comp = VertexSet::singleton(start);
        loop {
            let mut next = comp;
            for v in comp.iter() {
                next = next | (g.neighbours(v) & set);
            }
            if next == comp {
                break;
            }
            comp = next;
        }
        comp == set
    })
}

/// Brute-force flagness: every non-face of size >= 3 contains a non-edge.
pub fn is_flag_brute_force(k: &SimplicialComplex) -> bool {
    let m = k.ambient_dim();
    (0u32..1 << m).map(VertexSet::from_mask).all(|s| {
        if k.contains(s) {
            return true;
        }
        let vs = s.to_vec();
        vs.iter()
            .enumerate()
            .any(|(x, &a)| vs[x + 1..].iter().any(|&b| !k.contains(VertexSet::from_vertices([a, b]))))
    })
}

fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * determinant(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Determinantal divisors `gcd of all k x k minors`, `k = 1..=min(r, c)`,
/// stopping at the first zero.
pub fn determinantal_divisors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in combinations(r, k) {
            for cs in combinations(c, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect())
                    .collect();
                g = g.gcd(&determinant(&sub).abs());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// The 6-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let faces = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    SimplicialComplex::from_maximal_faces(6, &faces).unwrap()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Genus of the surface obtained from the `m`-cycle.
pub fn cycle_genus(m: usize) -> usize {
    (m - 4) * (1 << (m - 3)) + 1
}
