//! Deterministic corpus generators. Vertex labels equal vertex indices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::planar::{PlanarMap, RootedTriangulation};
use crate::rng::Rng;

fn rooted(n: usize, faces: &[[usize; 3]], root: usize) -> RootedTriangulation {
    let map = PlanarMap::from_triangles((0..n as u32).collect(), faces).expect("generator builds a disk");
    RootedTriangulation::new(map, root as u32).expect("generator builds a valid triangulation")
}

/// Hub 0 surrounded by the cycle 1..=k. `wheel(3)` is K4.
pub fn wheel(k: usize) -> RootedTriangulation {
    assert!(k >= 3);
    let faces: Vec<[usize; 3]> = (0..k).map(|j| [0, 1 + j, 1 + (j + 1) % k]).collect();
    rooted(k + 1, &faces, 0)
}

/// Hub plus `layers` concentric `k`-cycles joined by triangle strips.
pub fn stacked_wheel(k: usize, layers: usize) -> RootedTriangulation {
    assert!(k >= 3 && layers >= 1);
    let ring = |i: usize, j: usize| 1 + i * k + j % k;
    let mut faces: Vec<[usize; 3]> = (0..k).map(|j| [0, ring(0, j), ring(0, j + 1)]).collect();
    for i in 0..layers - 1 {
        for j in 0..k {
            faces.push([ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)]);
            faces.push([ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)]);
        }
    }
    rooted(1 + k * layers, &faces, 0)
}

/// Equilateral triangle cut into `n * n` small triangles (n >= 3), rooted at
/// the vertex closest to the centroid.
pub fn triangle_mesh(n: usize) -> RootedTriangulation {
    assert!(n >= 3);
    let mut index = BTreeMap::new();
    for j in 0..=n {
        for i in 0..=n - j {
            let id = index.len();
            index.insert((i, j), id);
        }
    }
    let at = |i: usize, j: usize| index[&(i, j)];
    let mut faces = Vec::new();
    for j in 0..n {
        for i in 0..n - j {
            faces.push([at(i, j), at(i + 1, j), at(i, j + 1)]);
            if i + j + 2 <= n {
                faces.push([at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]);
            }
        }
    }
    let c = n / 3;
    rooted(index.len(), &faces, at(c, c))
}

/// Triangular-lattice hexagon of side `n` (3n^2 + 3n + 1 vertices), rooted
/// at its center.
pub fn hex_disk(n: usize) -> RootedTriangulation {
    assert!(n >= 1);
    let r = n as i64;
    let mut index = BTreeMap::new();
    for q in -r..=r {
        for s in -r..=r {
            if (q + s).abs() <= r {
                let id = index.len();
                index.insert((q, s), id);
            }
        }
    }
    let mut faces = Vec::new();
    for (&(q, s), &a) in &index {
        // Axial lattice with basis (1, 0) and (1/2, sqrt(3)/2).
        if let (Some(&b), Some(&c)) = (index.get(&(q + 1, s)), index.get(&(q, s + 1))) {
            faces.push([a, b, c]);
        }
        if let (Some(&b), Some(&c)) = (index.get(&(q + 1, s)), index.get(&(q + 1, s - 1))) {
            faces.push([a, c, b]);
        }
    }
    let root = index[&(0, 0)];
    rooted(index.len(), &faces, root)
}

/// Triangle 0,1,2 with `n` vertices inserted one at a time into uniformly
/// chosen faces. Rooted at vertex 3.
pub fn random_insertion(n: usize, rng: &mut Rng) -> RootedTriangulation {
    assert!(n >= 1);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..3 + n {
        let f = rng.random_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    rooted(3 + n, &faces, 3)
}

/// Applies up to `flips` random combinatorial edge flips to interior edges,
/// skipping flips that would create a parallel edge or leave a vertex with
/// too few neighbors. The root and the outer boundary are unchanged.
pub fn random_flips(tri: &RootedTriangulation, flips: usize, rng: &mut Rng) -> RootedTriangulation {
    let n = tri.num_vertices();
    let mut faces: Vec<[usize; 3]> = tri.faces().to_vec();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            edge_faces.entry(key(f[k], f[(k + 1) % 3])).or_default().push(i);
        }
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tri.neighbors(v).len()).collect();
    let min_degree = |v: usize| if tri.is_outer(v) { 2 } else { 3 };
    let mut interior_edges: Vec<(usize, usize)> =
        edge_faces.iter().filter(|(_, fs)| fs.len() == 2).map(|(&e, _)| e).collect();
    if interior_edges.is_empty() {
        return tri.clone();
    }
    for _ in 0..flips {
        let slot = rng.random_range(0..interior_edges.len());
        let (u, v) = interior_edges[slot];
        let fs = edge_faces[&(u, v)].clone();
        // Orient: face1 contains u -> v, face2 contains v -> u.
        let directed = |f: &[usize; 3], x: usize, y: usize| (0..3).any(|k| f[k] == x && f[(k + 1) % 3] == y);
        let (f1, f2) = if directed(&faces[fs[0]], u, v) { (fs[0], fs[1]) } else { (fs[1], fs[0]) };
        let apex = |f: &[usize; 3]| f.iter().copied().find(|&w| w != u && w != v).unwrap();
        let (a, b) = (apex(&faces[f1]), apex(&faces[f2]));
        if a == b || edge_faces.contains_key(&key(a, b)) {
            continue;
        }
        if degree[u] <= min_degree(u) || degree[v] <= min_degree(v) {
            continue;
        }
        faces[f1] = [a, u, b];
        faces[f2] = [b, v, a];
        edge_faces.remove(&(u, v));
        for (e, from, to) in [(key(a, v), f1, f2), (key(b, u), f2, f1)] {
            for f in edge_faces.get_mut(&e).unwrap().iter_mut() {
                if *f == from {
                    *f = to;
                }
            }
        }
        edge_faces.insert(key(a, b), vec![f1, f2]);
        degree[u] -= 1;
        degree[v] -= 1;
        degree[a] += 1;
        degree[b] += 1;
        interior_edges[slot] = key(a, b);
    }
    rooted(n, &faces, tri.root())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn sizes() {
        assert_eq!(wheel(6).num_vertices(), 7);
        assert_eq!(stacked_wheel(6, 3).num_vertices(), 19);
        assert_eq!(triangle_mesh(4).num_vertices(), 15);
        assert_eq!(hex_disk(2).num_vertices(), 19);
        assert_eq!(hex_disk(2).outer_cycle().len(), 12);
        assert_eq!(triangle_mesh(4).faces().len(), 16);
    }

    #[test]
    fn random_generators_are_valid_and_deterministic() {
        let a = random_insertion(25, &mut rng_from_seed(5));
        let b = random_insertion(25, &mut rng_from_seed(5));
        assert_eq!(a.map(), b.map());
        let f = random_flips(&hex_disk(4), 200, &mut rng_from_seed(9));
        assert_eq!(f.num_vertices(), hex_disk(4).num_vertices());
        assert_ne!(f.map(), hex_disk(4).map());
        assert_eq!(f.outer_cycle().len(), 24);
    }
}
