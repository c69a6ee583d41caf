use alloc::vec;
use alloc::vec::Vec;

use super::{validate_map, validate_triangulation, PlanarMap, ValidationReport};

/// A validated triangulation with boundary, with adjacency cached for the
/// numerical code.
#[derive(Debug, Clone)]
pub struct Triangulation {
    map: PlanarMap,
    nbrs: Vec<Vec<usize>>,
    sorted_nbrs: Vec<Vec<usize>>,
    on_outer: Vec<bool>,
    outer_cycle: Vec<usize>,
    faces: Vec<[usize; 3]>,
}

impl Triangulation {
    pub fn new(map: PlanarMap) -> Result<Self, ValidationReport> {
        let report = validate_map(&map);
        if !report.ok() {
            return Err(report);
        }
        Ok(Self::build(map))
    }

    fn build(map: PlanarMap) -> Self {
        let n = map.num_vertices();
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| map.neighbors(v).collect()).collect();
        let sorted_nbrs = nbrs
            .iter()
            .map(|l| {
                let mut s = l.clone();
                s.sort_unstable();
                s
            })
            .collect();
        let outer_cycle = map.outer_walk();
        let mut on_outer = vec![false; n];
        for &v in &outer_cycle {
            on_outer[v] = true;
        }
        let (face_of, nf) = map.face_indices();
        let outer_face = map.outer().map(|h| face_of[h]);
        let mut seen = vec![false; nf];
        let mut faces = Vec::with_capacity(nf.saturating_sub(1));
        for h in 0..map.num_half_edges() {
            let f = face_of[h];
            if seen[f] || Some(f) == outer_face {
                continue;
            }
            seen[f] = true;
            let g = map.face_next(h);
            faces.push([map.origin(h), map.origin(g), map.origin(map.face_next(g))]);
        }
        Self { map, nbrs, sorted_nbrs, on_outer, outer_cycle, faces }
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn num_vertices(&self) -> usize {
        self.nbrs.len()
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.sorted_nbrs[u].binary_search(&v).is_ok()
    }

    pub fn is_outer(&self, v: usize) -> bool {
        self.on_outer[v]
    }

    /// Outer boundary walk (clockwise in the plane: the outer face is on the left).
    pub fn outer_cycle(&self) -> &[usize] {
        &self.outer_cycle
    }

    /// Inner faces as counterclockwise vertex triples.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vertices()).filter(|&v| !self.on_outer[v])
    }

    pub fn label(&self, v: usize) -> u32 {
        self.map.label(v)
    }

    pub fn vertex_by_label(&self, label: u32) -> Option<usize> {
        self.map.vertex_by_label(label)
    }
}

/// A triangulation with boundary together with an interior root vertex.
#[derive(Debug, Clone)]
pub struct RootedTriangulation {
    tri: Triangulation,
    root: usize,
}

impl RootedTriangulation {
    /// Validates `map` and roots it at the vertex labelled `root`.
    pub fn new(map: PlanarMap, root: u32) -> Result<Self, ValidationReport> {
        let report = validate_triangulation(&map, root);
        if !report.ok() {
            return Err(report);
        }
        let root = map.vertex_by_label(root).expect("validated");
        Ok(Self { tri: Triangulation::build(map), root })
    }

    /// Roots an already validated triangulation at vertex index `root`.
    pub fn from_triangulation(tri: Triangulation, root: usize) -> Result<Self, ValidationReport> {
        if root >= tri.num_vertices() || tri.is_outer(root) {
            let label = if root < tri.num_vertices() { tri.label(root) } else { root as u32 };
            return Err(validate_triangulation(tri.map(), label));
        }
        Ok(Self { tri, root })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn tri(&self) -> &Triangulation {
        &self.tri
    }

    pub fn into_parts(self) -> (Triangulation, usize) {
        (self.tri, self.root)
    }
}

impl core::ops::Deref for RootedTriangulation {
    type Target = Triangulation;

    fn deref(&self) -> &Triangulation {
        &self.tri
    }
}
