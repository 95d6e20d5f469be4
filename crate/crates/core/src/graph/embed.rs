//! Sphere embeddings for graphs given without a rotation system.
//!
//! The underlying simple graph is split into biconnected blocks, each block
//! is embedded with the Demoucron–Malgrange–Pertuiset path-addition
//! algorithm, and the block rotations are concatenated at cut vertices.
//! Parallel edges are then nested next to their representative and loops
//! appended as adjacent dart pairs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Dart, Edge, EdgeId, VertexId};
use crate::error::{Error, Result};

pub(super) fn planar_rotations(
    vertices: &BTreeMap<VertexId, i64>,
    edges: &BTreeMap<EdgeId, Edge>,
) -> Result<BTreeMap<VertexId, Vec<Dart>>> {
    // Group non-loop edges by unordered endpoint pair; the lowest id stands
    // for the pair in the simple graph.
    let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for (&id, edge) in edges {
        if !edge.is_loop() {
            let key = (edge.ends[0].min(edge.ends[1]), edge.ends[0].max(edge.ends[1]));
            by_pair.entry(key).or_default().push(id);
        }
    }

    let index: BTreeMap<VertexId, usize> = vertices.keys().enumerate().map(|(i, &v)| (v, i)).collect();
    let ids: Vec<VertexId> = vertices.keys().copied().collect();
    let n = ids.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in by_pair.keys() {
        adj[index[&a]].insert(index[&b]);
        adj[index[&b]].insert(index[&a]);
    }

    let simple_rot = simple_rotations(&adj)?;

    let dart_to = |v: VertexId, w: VertexId| -> Dart {
        let key = (v.min(w), v.max(w));
        let rep = by_pair[&key][0];
        let end = if edges[&rep].ends[0] == v { 0 } else { 1 };
        Dart::new(rep, end)
    };

    let mut rotations: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        let mut rot = Vec::new();
        for &j in &simple_rot[i] {
            let w = ids[j];
            let key = (v.min(w), v.max(w));
            let group = &by_pair[&key];
            let rep = dart_to(v, w);
            // The lower endpoint lists the parallel class in increasing id
            // order, the higher one in decreasing order; consecutive members
            // then bound digons.
            let mut class: Vec<Dart> = group
                .iter()
                .map(|&e| {
                    let end = if edges[&e].ends[0] == v { 0 } else { 1 };
                    Dart::new(e, end)
                })
                .collect();
            if v > w {
                class.reverse();
            }
            debug_assert!(class.contains(&rep));
            rot.extend(class);
        }
        rotations.insert(v, rot);
    }
    for (&id, edge) in edges {
        if edge.is_loop() {
            let rot = rotations.get_mut(&edge.ends[0]).unwrap();
            rot.push(Dart::new(id, 0));
            rot.push(Dart::new(id, 1));
        }
    }
    Ok(rotations)
}

/// Rotation (as cyclic neighbour order) of every vertex of a simple graph.
fn simple_rotations(adj: &[BTreeSet<usize>]) -> Result<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(adj) {
        let local = if block.len() == 1 {
            let (a, b) = block[0];
            BTreeMap::from([(a, vec![b]), (b, vec![a])])
        } else {
            embed_block(&block)?
        };
        for (v, order) in local {
            rot[v].extend(order);
        }
    }
    Ok(rot)
}

/// Edge sets of the biconnected blocks, by Tarjan's lowpoint algorithm.
fn biconnected_blocks(adj: &[BTreeSet<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [BTreeSet<usize>],
        disc: Vec<Option<usize>>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }

    fn dfs(s: &mut State<'_>, u: usize, parent: Option<usize>) {
        s.disc[u] = Some(s.time);
        s.low[u] = s.time;
        s.time += 1;
        let neighbours: Vec<usize> = s.adj[u].iter().copied().collect();
        for w in neighbours {
            match s.disc[w] {
                None => {
                    s.stack.push((u, w));
                    dfs(s, w, Some(u));
                    s.low[u] = s.low[u].min(s.low[w]);
                    if s.low[w] >= s.disc[u].unwrap() {
                        let mut block = Vec::new();
                        while let Some(e) = s.stack.pop() {
                            block.push(e);
                            if e == (u, w) {
                                break;
                            }
                        }
                        s.blocks.push(block);
                    }
                }
                Some(dw) if Some(w) != parent && dw < s.disc[u].unwrap() => {
                    s.stack.push((u, w));
                    s.low[u] = s.low[u].min(dw);
                }
                _ => {}
            }
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        disc: vec![None; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v].is_none() {
            dfs(&mut s, v, None);
        }
    }
    s.blocks
}

/// Planar embedding of a 2-connected simple block by path addition.
/// Returns the rotation at each block vertex.
fn embed_block(block: &[(usize, usize)]) -> Result<BTreeMap<usize, Vec<usize>>> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in block {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let total_edges = block.len();

    let cycle = find_cycle(&adj);
    let mut placed_v: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut placed_e: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        placed_e.insert((a.min(b), a.max(b)));
    }
    let mut reversed = cycle.clone();
    reversed.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, reversed];

    while placed_e.len() < total_edges {
        let fragments = fragments(&adj, &placed_v, &placed_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return Err(Error::Nonplanar),
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment while edges remain");
        let path = fragments[fi].path(&adj, &placed_v);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            placed_e.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        placed_v.extend(path.iter().copied());
    }

    // Face traversal arrives at `cur` from `prev` and leaves towards `next`,
    // so `next` follows `prev` in the rotation at `cur`.
    let mut succ: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let prev = face[(i + k - 1) % k];
            let cur = face[i];
            let next = face[(i + 1) % k];
            succ.entry(cur).or_default().insert(prev, next);
        }
    }
    let mut rot = BTreeMap::new();
    for (&v, nbrs) in &adj {
        let s = &succ[&v];
        let start = *nbrs.iter().next().unwrap();
        let mut order = vec![start];
        let mut cur = s[&start];
        while cur != start {
            order.push(cur);
            cur = s[&cur];
        }
        if order.len() != nbrs.len() {
            return Err(Error::Internal(format!(
                "planar embedding produced a split rotation at block vertex {v}"
            )));
        }
        rot.insert(v, order);
    }
    Ok(rot)
}

fn find_cycle(adj: &BTreeMap<usize, BTreeSet<usize>>) -> Vec<usize> {
    // Iterative DFS from the smallest vertex; the first back edge closes a
    // cycle along the tree path.
    let root = *adj.keys().next().unwrap();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut stack = vec![(root, adj[&root].iter().copied().collect::<Vec<_>>(), 0usize)];
    while let Some((u, nbrs, idx)) = stack.last_mut() {
        let u = *u;
        if *idx >= nbrs.len() {
            stack.pop();
            continue;
        }
        let w = nbrs[*idx];
        *idx += 1;
        if parent.get(&u) == Some(&w) {
            continue;
        }
        if let Some(&dw) = depth.get(&w) {
            if dw < depth[&u] {
                let mut cycle = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[&x];
                    cycle.push(x);
                }
                cycle.reverse();
                return cycle;
            }
            continue;
        }
        parent.insert(w, u);
        depth.insert(w, depth[&u] + 1);
        let next: Vec<usize> = adj[&w].iter().copied().collect();
        stack.push((w, next, 0));
    }
    unreachable!("a 2-connected block with two or more edges has a cycle")
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// Unplaced interior vertices (empty for a single chord).
    interior: BTreeSet<usize>,
}

impl Fragment {
    /// A path through the fragment joining two distinct attachments.
    fn path(&self, adj: &BTreeMap<usize, BTreeSet<usize>>, placed: &BTreeSet<usize>) -> Vec<usize> {
        let mut att = self.attachments.iter().copied();
        let a = att.next().unwrap();
        let b = att.next().unwrap();
        if self.interior.is_empty() {
            return vec![a, b];
        }
        // Breadth-first search from a through interior vertices to b.
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &w in &adj[&a] {
            if self.interior.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, a);
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            if adj[&x].contains(&b) {
                let mut path = vec![b, x];
                let mut cur = x;
                while prev[&cur] != a {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            for &w in &adj[&x] {
                if self.interior.contains(&w) && !placed.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, x);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment is connected through its interior")
    }
}

fn fragments(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    placed_v: &BTreeSet<usize>,
    placed_e: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&a, nbrs) in adj {
        for &b in nbrs {
            if a < b && placed_v.contains(&a) && placed_v.contains(&b) && !placed_e.contains(&(a, b)) {
                out.push(Fragment {
                    attachments: BTreeSet::from([a, b]),
                    interior: BTreeSet::new(),
                });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in adj.keys() {
        if placed_v.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut interior = BTreeSet::from([start]);
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            for &w in &adj[&x] {
                if placed_v.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    interior.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments, interior });
    }
    out
}

/// Split a face (cyclic vertex list) along a path between two of its
/// vertices. Both halves keep the face's orientation.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut t = i;
    loop {
        f1.push(face[t]);
        if t == j {
            break;
        }
        t = (t + 1) % k;
    }
    f1.extend(inner.iter().rev());

    let mut f2 = Vec::new();
    let mut t = j;
    loop {
        f2.push(face[t]);
        if t == i {
            break;
        }
        t = (t + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use crate::error::Error;
    use crate::graph::ChainmailGraph;

    fn complete(n: u32) -> Vec<(u32, u32, u32, i64)> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                edges.push((edges.len() as u32, a, b, -1));
            }
        }
        edges
    }

    #[test]
    fn k4_embeds() {
        let vs: Vec<_> = (0..4).map(|i| (i, 0)).collect();
        let g = ChainmailGraph::from_lists(&vs, &complete(4)).unwrap();
        assert!(g.validate().valid);
    }

    #[test]
    fn k5_and_k33_are_rejected() {
        let vs: Vec<_> = (0..5).map(|i| (i, 0)).collect();
        assert_eq!(
            ChainmailGraph::from_lists(&vs, &complete(5)).unwrap_err(),
            Error::Nonplanar
        );
        let vs: Vec<_> = (0..6).map(|i| (i, 0)).collect();
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((edges.len() as u32, a, b, -1));
            }
        }
        assert_eq!(ChainmailGraph::from_lists(&vs, &edges).unwrap_err(), Error::Nonplanar);
    }

    #[test]
    fn octahedron_and_cube_embed() {
        let vs: Vec<_> = (0..6).map(|i| (i, 0)).collect();
        let mut edges = Vec::new();
        for a in 0..6u32 {
            for b in (a + 1)..6 {
                if a / 2 != b / 2 {
                    edges.push((edges.len() as u32, a, b, -1));
                }
            }
        }
        let g = ChainmailGraph::from_lists(&vs, &edges).unwrap();
        assert!(g.validate().valid);

        let vs: Vec<_> = (0..8).map(|i| (i, 0)).collect();
        let mut edges = Vec::new();
        for a in 0..8u32 {
            for bit in 0..3 {
                let b = a ^ (1 << bit);
                if a < b {
                    edges.push((edges.len() as u32, a, b, -1));
                }
            }
        }
        let g = ChainmailGraph::from_lists(&vs, &edges).unwrap();
        assert!(g.validate().valid);
    }

    #[test]
    fn blocks_multiedges_and_loops_embed() {
        // Two triangles sharing a cut vertex, a pendant path, a doubled edge
        // and a loop.
        let vs: Vec<_> = (0..7).map(|i| (i, 0)).collect();
        let edges = [
            (0, 0, 1, -1),
            (1, 1, 2, -1),
            (2, 2, 0, -1),
            (3, 2, 3, -1),
            (4, 3, 4, -1),
            (5, 4, 2, -1),
            (6, 4, 5, -1),
            (7, 5, 6, -1),
            (8, 5, 6, -2),
            (9, 6, 6, -1),
            (10, 0, 1, -1),
        ];
        let g = ChainmailGraph::from_lists(&vs, &edges).unwrap();
        assert!(g.validate().valid);
    }

    #[test]
    fn wheel_embeds() {
        let n = 7u32;
        let mut vs = vec![(0, 1)];
        let mut edges = Vec::new();
        for i in 1..=n {
            vs.push((i, 0));
            edges.push((edges.len() as u32, 0, i, -1));
            edges.push((edges.len() as u32, i, i % n + 1, -1));
        }
        let g = ChainmailGraph::from_lists(&vs, &edges).unwrap();
        assert!(g.validate().valid);
    }
}
