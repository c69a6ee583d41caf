use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{PlanarMap, UnionFind};

/// Rule ids reported by [`validate_triangulation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Disconnected,
    NoOuterFace,
    NotPlanar,
    Loop,
    NotSimple,
    InnerFaceNotTriangle,
    OuterNotSimpleCycle,
    RootMissing,
    RootOnOuter,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Disconnected => "disconnected",
            Rule::NoOuterFace => "no outer face",
            Rule::NotPlanar => "euler characteristic",
            Rule::Loop => "loop",
            Rule::NotSimple => "not simple",
            Rule::InnerFaceNotTriangle => "inner face not a triangle",
            Rule::OuterNotSimpleCycle => "outer boundary not a simple cycle",
            Rule::RootMissing => "root missing",
            Rule::RootOnOuter => "root on outer face",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Element that demonstrates a violation, in labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    Vertex(u32),
    /// Edge given by endpoint labels and edge id.
    Edge {
        a: u32,
        b: u32,
        id: u32,
    },
    /// Two parallel edges between the same endpoints.
    EdgePair {
        a: u32,
        b: u32,
        ids: [u32; 2],
    },
    /// Boundary walk of a face, as vertex labels.
    Face(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Witness,
}

/// Outcome of a validation pass. `ok()` holds iff there are no violations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, witness: Witness) {
        self.violations.push(Violation { rule, witness });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} ({:?})", v.rule, v.witness)?;
        }
        Ok(())
    }
}

/// Checks the triangulation-with-boundary rules (no root requirement).
pub fn validate_map(map: &PlanarMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    let nv = map.num_vertices();
    if nv == 0 {
        report.push(Rule::NoOuterFace, Witness::None);
        return report;
    }

    let mut uf = UnionFind::new(nv);
    for e in 0..map.num_edges() {
        uf.union(map.origin(2 * e), map.dest(2 * e));
    }
    let r0 = uf.find(0);
    if let Some(v) = (0..nv).find(|&v| uf.find(v) != r0) {
        report.push(Rule::Disconnected, Witness::Vertex(map.label(v)));
    }

    let Some(outer) = map.outer() else {
        report.push(Rule::NoOuterFace, Witness::None);
        return report;
    };

    let (face_of, nf) = map.face_indices();
    let components = map.component_count();
    if nv as i64 - map.num_edges() as i64 + nf as i64 != 1 + components as i64 {
        report.push(Rule::NotPlanar, Witness::None);
    }

    let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..map.num_edges() {
        let (a, b) = (map.origin(2 * e), map.dest(2 * e));
        if a == b {
            report.push(Rule::Loop, Witness::Edge { a: map.label(a), b: map.label(b), id: map.edge_id(e) });
            continue;
        }
        pairs.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    for (&(a, b), es) in &pairs {
        if es.len() > 1 {
            report.push(
                Rule::NotSimple,
                Witness::EdgePair { a: map.label(a), b: map.label(b), ids: [map.edge_id(es[0]), map.edge_id(es[1])] },
            );
        }
    }

    let outer_face = face_of[outer];
    let mut done = vec![false; nf];
    for h in 0..map.num_half_edges() {
        let f = face_of[h];
        if done[f] {
            continue;
        }
        done[f] = true;
        if f == outer_face {
            continue;
        }
        let cycle = map.face_cycle(h);
        if cycle.len() != 3 {
            report.push(
                Rule::InnerFaceNotTriangle,
                Witness::Face(cycle.iter().map(|&g| map.label(map.origin(g))).collect()),
            );
        }
    }

    let walk = map.outer_walk();
    let mut seen = vec![false; nv];
    for &v in &walk {
        if seen[v] {
            report.push(Rule::OuterNotSimpleCycle, Witness::Vertex(map.label(v)));
            break;
        }
        seen[v] = true;
    }
    if walk.len() < 3 && !report.has(Rule::OuterNotSimpleCycle) {
        report.push(Rule::OuterNotSimpleCycle, Witness::Face(walk.iter().map(|&v| map.label(v)).collect()));
    }
    report
}

/// Checks every rooted-triangulation rule; `root` is a vertex label.
pub fn validate_triangulation(map: &PlanarMap, root: u32) -> ValidationReport {
    let mut report = validate_map(map);
    match map.vertex_by_label(root) {
        None => report.push(Rule::RootMissing, Witness::Vertex(root)),
        Some(r) => {
            if map.outer_walk().contains(&r) {
                report.push(Rule::RootOnOuter, Witness::Vertex(root));
            }
        }
    }
    report
}
