//! Independent oracles and corpus helpers shared by the integration tests.
//! Nothing here calls the library's linear algebra or graph algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use chainmail::generate::{random_graph, GeneratorParams, Profile};
use chainmail::io::GraphInput;
use chainmail::{ChainmailGraph, IntMatrix, VertexId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let sub: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][j] * cofactor_det(&sub);
            }
            total
        }
    }
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().expect("small entries")).collect())
        .collect()
}

pub fn from_i128(rows: &[Vec<i128>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors (including units and zeros) from determinantal
/// divisors: d_k = gcd of all k×k minors, s_k = d_k / d_{k−1}.
pub fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let r = rows.min(cols);
    let mut d = vec![BigInt::from(1)];
    for k in 1..=r {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&BigInt::from(cofactor_det(&sub)));
            }
        }
        d.push(g);
    }
    let mut out = Vec::new();
    for k in 1..=r {
        if d[k].is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&d[k] / &d[k - 1]);
        }
    }
    out
}

/// Adjacency lists over non-loop edges, with multiplicity.
pub fn adjacency(g: &ChainmailGraph) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = g.vertex_ids().map(|v| (v, Vec::new())).collect();
    for (_, e) in g.edges() {
        if !e.is_loop() {
            adj.get_mut(&e.ends[0]).unwrap().push(e.ends[1]);
            adj.get_mut(&e.ends[1]).unwrap().push(e.ends[0]);
        }
    }
    adj
}

/// Components by breadth-first search, ignoring the edges in `skip`.
pub fn component_count(g: &ChainmailGraph, skip: &BTreeSet<chainmail::EdgeId>) -> usize {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = g.vertex_ids().map(|v| (v, Vec::new())).collect();
    for (id, e) in g.edges() {
        if !skip.contains(&id) {
            adj.get_mut(&e.ends[0]).unwrap().push(e.ends[1]);
            adj.get_mut(&e.ends[1]).unwrap().push(e.ends[0]);
        }
    }
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for v in g.vertex_ids() {
        if seen.insert(v) {
            count += 1;
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
    }
    count
}

/// Edges whose removal increases the component count.
pub fn brute_bridges(g: &ChainmailGraph) -> BTreeSet<chainmail::EdgeId> {
    let base = component_count(g, &BTreeSet::new());
    g.edge_ids()
        .filter(|&e| component_count(g, &BTreeSet::from([e])) > base)
        .collect()
}

pub fn brute_has_triangle(g: &ChainmailGraph) -> bool {
    let adj = adjacency(g);
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate().skip(i + 1) {
            for c in vs.iter().skip(j + 1) {
                if adj[a].contains(b) && adj[b].contains(c) && adj[a].contains(c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Acyclic orientations among all 2^|E| orientations (loop-free graphs).
pub fn brute_acyclic_orientations(g: &ChainmailGraph) -> usize {
    let edges: Vec<[VertexId; 2]> = g.edges().map(|(_, e)| e.ends).collect();
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << edges.len()) {
        let mut indeg: BTreeMap<VertexId, usize> = vs.iter().map(|&v| (v, 0)).collect();
        let mut out: BTreeMap<VertexId, Vec<VertexId>> = vs.iter().map(|&v| (v, Vec::new())).collect();
        for (i, ends) in edges.iter().enumerate() {
            let (a, b) = if mask >> i & 1 == 0 {
                (ends[0], ends[1])
            } else {
                (ends[1], ends[0])
            };
            out.get_mut(&a).unwrap().push(b);
            *indeg.get_mut(&b).unwrap() += 1;
        }
        // Kahn's algorithm.
        let mut ready: Vec<VertexId> = vs.iter().copied().filter(|v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for &w in &out[&v] {
                let d = indeg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(w);
                }
            }
        }
        if removed == vs.len() {
            count += 1;
        }
    }
    count
}

/// Σ over spanning trees of Π |ε|, enumerating (|V|−1)-subsets of edges.
pub fn brute_spanning_trees(g: &ChainmailGraph) -> BigInt {
    let edges: Vec<([VertexId; 2], i64)> = g
        .edges()
        .filter(|(_, e)| !e.is_loop())
        .map(|(_, e)| (e.ends, e.weight.abs()))
        .collect();
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    let idx: BTreeMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let need = vs.len().saturating_sub(1);
    let mut total = BigInt::zero();
    for subset in subsets(edges.len(), need) {
        let mut parent: Vec<usize> = (0..vs.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut ok = true;
        let mut product = BigInt::from(1);
        for &i in &subset {
            let (ends, w) = edges[i];
            let (a, b) = (find(&mut parent, idx[&ends[0]]), find(&mut parent, idx[&ends[1]]));
            if a == b {
                ok = false;
                break;
            }
            parent[a] = b;
            product *= w;
        }
        if ok {
            total += product;
        }
    }
    total
}

/// Λ(G) straight from the framing formula.
pub fn oracle_linking(g: &ChainmailGraph) -> Vec<Vec<i128>> {
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    let n = vs.len();
    let mut w = vec![vec![0i128; n]; n];
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate() {
            if i != j {
                w[i][j] = g
                    .edges()
                    .filter(|(_, e)| !e.is_loop() && e.joins(a, b))
                    .map(|(_, e)| e.weight as i128)
                    .sum();
            }
        }
    }
    for (i, &v) in vs.iter().enumerate() {
        let off: i128 = w[i].iter().sum();
        w[i][i] = g.vertex_weight(v).unwrap() as i128 - off;
    }
    w
}

pub fn params(seed: u64, profile: Profile, max_edges: usize) -> GeneratorParams {
    let mut p = GeneratorParams::new(seed, profile);
    p.edges = (0, max_edges);
    p
}

/// `n` seeded graphs of a profile, seeds `first..first + n`.
pub fn corpus(profile: Profile, first: u64, n: u64, max_edges: usize) -> Vec<GraphInput> {
    (first..first + n)
        .map(|s| random_graph(&params(s, profile, max_edges)).unwrap())
        .collect()
}

pub fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
