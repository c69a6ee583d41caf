//! The three map surgeries used to turn a mated-CRT window into a
//! triangulation with boundary: restrict to a block, fill enclosed holes,
//! collapse parallel edges.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{MapError, PlanarMap, UnionFind, NONE};

/// Edge index -> biconnected block index (`NONE` for loops), and block count.
fn biconnected_blocks(map: &PlanarMap) -> (Vec<usize>, usize) {
    let n = map.num_vertices();
    let out: Vec<Vec<usize>> = (0..n).map(|v| map.out_half_edges(v).collect()).collect();
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut block = vec![NONE; map.num_edges()];
    let mut nblocks = 0;
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    // Frame: (vertex, edge to parent, next rotation position).
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for s in 0..n {
        if disc[s] != NONE {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        frames.push((s, NONE, 0));
        while let Some(&mut (v, pe, ref mut i)) = frames.last_mut() {
            if *i < out[v].len() {
                let h = out[v][*i];
                *i += 1;
                let e = h / 2;
                let w = map.dest(h);
                if e == pe || w == v {
                    continue;
                }
                if disc[w] == NONE {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        while let Some(e) = edge_stack.pop() {
                            block[e] = nblocks;
                            if e == pe {
                                break;
                            }
                        }
                        nblocks += 1;
                    }
                }
            }
        }
    }
    (block, nblocks)
}

/// The maximal 2-connected submap containing every seed (given by label).
///
/// When several blocks qualify (the seeds are a single cut vertex) the block
/// with the most edges is returned, ties going to the block found first.
pub fn block_containing(map: &PlanarMap, seeds: &[u32]) -> Result<PlanarMap, MapError> {
    if seeds.is_empty() {
        return Err(MapError::BadSeeds);
    }
    let index = map.label_index();
    let mut seed_idx = Vec::with_capacity(seeds.len());
    for l in seeds {
        seed_idx.push(*index.get(l).ok_or(MapError::BadSeeds)?);
    }
    let (block, nblocks) = biconnected_blocks(map);
    let mut size = vec![0usize; nblocks];
    for &b in &block {
        if b != NONE {
            size[b] += 1;
        }
    }
    // Count, per block, how many distinct seeds it touches.
    let mut touched = vec![0usize; nblocks];
    let mut stamp = vec![NONE; nblocks];
    let mut distinct = seed_idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for (k, &v) in distinct.iter().enumerate() {
        for h in map.out_half_edges(v) {
            let b = block[h / 2];
            if b != NONE && stamp[b] != k {
                stamp[b] = k;
                touched[b] += 1;
            }
        }
    }
    let best =
        (0..nblocks).filter(|&b| touched[b] == distinct.len()).max_by(|&a, &b| size[a].cmp(&size[b]).then(b.cmp(&a)));
    match best {
        Some(b) => {
            let keep: Vec<bool> = block.iter().map(|&x| x == b).collect();
            Ok(map.submap(&keep, &[]))
        }
        None if distinct.len() == 1 && map.degree(distinct[0]) == 0 => {
            Ok(map.submap(&vec![false; map.num_edges()], &distinct))
        }
        None => Err(MapError::SeedsNotCoBlocked),
    }
}

/// Locates `sub` inside `host`: returns the host edge mask of sub's edges and
/// the host half-edge matching sub's outer half-edge.
fn embed_submap(host: &PlanarMap, sub: &PlanarMap) -> Result<(Vec<bool>, Option<usize>), MapError> {
    let index = host.label_index();
    for &l in sub.labels() {
        if !index.contains_key(&l) {
            return Err(MapError::NotSubmap);
        }
    }
    let by_id: BTreeMap<u32, usize> = host.edge_ids().iter().enumerate().map(|(e, &id)| (id, e)).collect();
    let mut keep = vec![false; host.num_edges()];
    let mut sub_to_host = vec![NONE; sub.num_half_edges()];
    for e in 0..sub.num_edges() {
        let he = *by_id.get(&sub.edge_id(e)).ok_or(MapError::NotSubmap)?;
        let (sa, sb) = (sub.label(sub.origin(2 * e)), sub.label(sub.dest(2 * e)));
        let (ha, hb) = (host.label(host.origin(2 * he)), host.label(host.dest(2 * he)));
        if (sa, sb) == (ha, hb) {
            sub_to_host[2 * e] = 2 * he;
            sub_to_host[2 * e + 1] = 2 * he + 1;
        } else if (sa, sb) == (hb, ha) {
            sub_to_host[2 * e] = 2 * he + 1;
            sub_to_host[2 * e + 1] = 2 * he;
        } else {
            return Err(MapError::NotSubmap);
        }
        keep[he] = true;
    }
    Ok((keep, sub.outer().map(|h| sub_to_host[h])))
}

/// `sub` plus every host vertex and edge lying in a bounded face of `sub`.
///
/// A host element is enclosed when the face of `sub` containing it is not the
/// outer face of `sub`. Faces of `sub` are unions of host faces glued across
/// host edges missing from `sub`, so containment is read off a union-find over
/// host faces; no coordinates are involved.
pub fn fill_enclosed(host: &PlanarMap, sub: &PlanarMap) -> Result<PlanarMap, MapError> {
    let (mut keep, outer) = embed_submap(host, sub)?;
    let (face_of, nf) = host.face_indices();
    let mut uf = UnionFind::new(nf);
    for e in 0..host.num_edges() {
        if !keep[e] {
            uf.union(face_of[2 * e], face_of[2 * e + 1]);
        }
    }
    let outer_class = outer.map(|h| uf.find(face_of[h]));
    for e in 0..host.num_edges() {
        if !keep[e] && Some(uf.find(face_of[2 * e])) != outer_class {
            keep[e] = true;
        }
    }
    let index = host.label_index();
    let extra: Vec<usize> = sub.labels().iter().map(|l| index[l]).collect();
    Ok(host.submap_with_outer(&keep, &extra, outer))
}

/// Merges every pair of parallel edges into one and deletes everything
/// strictly enclosed by the 2-cycle they form. The enclosed side is the one
/// not containing the outer face.
pub fn collapse_parallel(map: &PlanarMap) -> Result<PlanarMap, MapError> {
    let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..map.num_edges() {
        let (a, b) = (map.origin(2 * e), map.dest(2 * e));
        if a == b {
            return Err(MapError::Loop(map.label(a)));
        }
        pairs.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut doubles = Vec::new();
    for (&(a, b), es) in &pairs {
        if es.len() > 2 {
            return Err(MapError::MultiplicityExceeds2(map.label(a), map.label(b)));
        }
        if es.len() == 2 {
            doubles.push((es[0], es[1]));
        }
    }
    if doubles.is_empty() {
        return Ok(map.clone());
    }

    let (face_of, nf) = map.face_indices();
    // Half-edges grouped by face.
    let mut start = vec![0usize; nf + 1];
    for &f in &face_of {
        start[f + 1] += 1;
    }
    for f in 0..nf {
        start[f + 1] += start[f];
    }
    let mut fill = start.clone();
    let mut by_face = vec![0usize; face_of.len()];
    for (h, &f) in face_of.iter().enumerate() {
        by_face[fill[f]] = h;
        fill[f] += 1;
    }
    let outer_face = map.outer().map(|h| face_of[h]);

    let mut deleted_face = vec![false; nf];
    let mut mark = vec![0u32; nf];
    let mut gen = 0u32;
    for &(e1, e2) in &doubles {
        let (fa, fb) = (face_of[2 * e1], face_of[2 * e1 + 1]);
        if deleted_face[fa] && deleted_face[fb] {
            continue;
        }
        gen += 2;
        let (ma, mb) = (gen, gen + 1);
        let mut sides = [(VecDeque::from([fa]), Vec::from([fa]), ma), (VecDeque::from([fb]), Vec::from([fb]), mb)];
        mark[fa] = ma;
        mark[fb] = mb;
        let reaches_outer = |f: usize| Some(f) == outer_face;
        let mut outside = [reaches_outer(fa), reaches_outer(fb)];
        // Interleave the two searches; the side that exhausts first without
        // touching the outer face is the enclosed one.
        let mut interior = None;
        let mut turn = 0;
        while interior.is_none() {
            let s = turn % 2;
            turn += 1;
            if outside[s] {
                // The other side is enclosed; finish it below.
                interior = Some(1 - s);
                break;
            }
            let (queue, seen, m) = &mut sides[s];
            match queue.pop_front() {
                None => interior = Some(s),
                Some(f) => {
                    for &h in &by_face[start[f]..start[f + 1]] {
                        let e = h / 2;
                        if e == e1 || e == e2 {
                            continue;
                        }
                        let g = face_of[h ^ 1];
                        if mark[g] != *m {
                            mark[g] = *m;
                            seen.push(g);
                            queue.push_back(g);
                            if reaches_outer(g) {
                                outside[s] = true;
                            }
                        }
                    }
                }
            }
        }
        let s = interior.expect("loop exits with a side");
        let (queue, seen, m) = &mut sides[s];
        while let Some(f) = queue.pop_front() {
            for &h in &by_face[start[f]..start[f + 1]] {
                let e = h / 2;
                if e == e1 || e == e2 {
                    continue;
                }
                let g = face_of[h ^ 1];
                if mark[g] != *m {
                    mark[g] = *m;
                    seen.push(g);
                    queue.push_back(g);
                }
            }
        }
        for &f in seen.iter() {
            deleted_face[f] = true;
        }
    }

    let mut keep = vec![true; map.num_edges()];
    let mut first_of_pair = vec![false; map.num_edges()];
    for &(e1, e2) in &doubles {
        first_of_pair[e1] = true;
        keep[e2] = false;
    }
    for e in 0..map.num_edges() {
        let (da, db) = (deleted_face[face_of[2 * e]], deleted_face[face_of[2 * e + 1]]);
        if first_of_pair[e] {
            if da && db {
                keep[e] = false;
            }
        } else if da || db {
            keep[e] = false;
        }
    }
    Ok(map.submap(&keep, &[]))
}
