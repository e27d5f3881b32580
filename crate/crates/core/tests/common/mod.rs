//! Graph generators and brute-force oracles shared by the integration tests.
//! Nothing here calls the decision procedures it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use quiverlab::{EdgeId, EdgeSpec, Graph, GraphSpec, Path};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph on `n` vertices `v0..` with edges `e0..` given as index pairs.
pub fn graph_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let spec = GraphSpec {
        vertices: (0..n).map(|i| format!("v{i}")).collect(),
        edges: pairs
            .iter()
            .enumerate()
            .map(|(i, &(s, d))| EdgeSpec::new(format!("e{i}"), format!("v{s}"), format!("v{d}")))
            .collect(),
    };
    Graph::from_spec(&spec).unwrap()
}

pub fn pairs_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edge_ids()
        .map(|e| (g.src(e).index(), g.dst(e).index()))
        .collect()
}

pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let pairs: Vec<_> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    graph_from_pairs(n, &pairs)
}

fn has_sinks_or_sources(n: usize, pairs: &[(usize, usize)]) -> bool {
    (0..n).any(|v| !pairs.iter().any(|p| p.0 == v) || !pairs.iter().any(|p| p.1 == v))
}

/// Random graph with no sinks and no sources. A third of the draws start
/// from a permutation, so disjoint unions of cycles are well represented.
pub fn random_no_sinks_no_sources(
    rng: &mut impl Rng,
    max_vertices: usize,
    max_edges: usize,
) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        if rng.gen_bool(1.0 / 3.0) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            pairs.extend((0..n).map(|i| (i, perm[i])));
            let extra = rng.gen_range(0..=max_edges.saturating_sub(n).min(2));
            for _ in 0..extra {
                pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
        } else {
            let m = rng.gen_range(n..=max_edges.max(n));
            pairs.extend((0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
        }
        if pairs.len() <= max_edges && !has_sinks_or_sources(n, &pairs) {
            pairs.shuffle(rng);
            return graph_from_pairs(n, &pairs);
        }
    }
}

/// Random strongly connected graph: a Hamiltonian cycle on a shuffled
/// vertex order plus up to `max_extra` random edges.
pub fn random_strongly_connected(
    rng: &mut impl Rng,
    min_vertices: usize,
    max_vertices: usize,
    max_extra: usize,
) -> Graph {
    let n = rng.gen_range(min_vertices..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<_> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let extra = if rng.gen_bool(0.25) {
        0
    } else {
        rng.gen_range(0..=max_extra)
    };
    for _ in 0..extra {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    pairs.shuffle(rng);
    graph_from_pairs(n, &pairs)
}

/// Every multigraph on `n` vertices with at most `max_edges` edges, one
/// representative per isomorphism class. Edges are listed in sorted order.
pub fn small_family(n: usize, max_edges: usize) -> Vec<Graph> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |d| (s, d))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut current = Vec::new();
    multisets(&cells, 0, max_edges, &mut current, &mut |pairs| {
        let canonical = perms
            .iter()
            .map(|p| {
                let mut relabelled: Vec<_> = pairs.iter().map(|&(s, d)| (p[s], p[d])).collect();
                relabelled.sort();
                relabelled
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canonical.clone()) {
            out.push(graph_from_pairs(n, &canonical));
        }
    });
    out
}

fn multisets(
    cells: &[(usize, usize)],
    start: usize,
    remaining: usize,
    current: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    visit(current);
    if remaining == 0 {
        return;
    }
    for i in start..cells.len() {
        current.push(cells[i]);
        multisets(cells, i, remaining - 1, current, visit);
        current.pop();
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All paths of length `n` by brute force over edge tuples, abandoning a
/// tuple as soon as two neighbouring edges fail to compose.
pub fn brute_paths(g: &Graph, n: usize) -> Vec<Path> {
    fn go(g: &Graph, edges: &[EdgeId], n: usize, tuple: &mut Vec<EdgeId>, out: &mut Vec<Path>) {
        if tuple.len() == n {
            out.push(g.path(tuple).expect("tuple composes"));
            return;
        }
        for &e in edges {
            if tuple.last().is_some_and(|&prev| g.dst(prev) != g.src(e)) {
                continue;
            }
            tuple.push(e);
            go(g, edges, n, tuple, out);
            tuple.pop();
        }
    }
    let edges: Vec<_> = g.edge_ids().collect();
    let mut out = Vec::new();
    if n > 0 {
        go(g, &edges, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Elementary circuits by brute force: every cycle of length at most
/// `|E^0|` visiting no vertex twice, rotated to its smallest vertex.
pub fn brute_elementary_cycles(g: &Graph) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for len in 1..=g.vertex_count() {
        for p in g.paths_of_length(len, None, None) {
            if !p.is_cycle() {
                continue;
            }
            let verts = p.vertices(g);
            let inner: BTreeSet<_> = verts[..len].iter().collect();
            if inner.len() != len {
                continue;
            }
            let base = verts[..len].iter().min().unwrap();
            if p.source() == *base {
                out.insert(p.edges().iter().map(|e| e.index()).collect());
            }
        }
    }
    out
}

/// Brute-force exitless check straight from the definition: a cycle lacks
/// an exit when no other edge leaves any of its edges' sources.
pub fn brute_has_exitless_cycle(g: &Graph) -> bool {
    brute_elementary_cycles(g).iter().any(|edges| {
        edges.iter().all(|&e| {
            let src = g.src(EdgeId(e));
            g.edge_ids().filter(|&f| g.src(f) == src).count() == 1
        })
    })
}

/// Plain matrix power of adjacency counts, written out independently.
pub fn matrix_power_total(g: &Graph, n: usize) -> u128 {
    let size = g.vertex_count();
    let mut adj = vec![vec![0u128; size]; size];
    for (s, d) in pairs_of(g) {
        adj[s][d] += 1;
    }
    let mut acc: Vec<Vec<u128>> = (0..size)
        .map(|i| (0..size).map(|j| u128::from(i == j)).collect())
        .collect();
    for _ in 0..n {
        let mut next = vec![vec![0u128; size]; size];
        for i in 0..size {
            for k in 0..size {
                for j in 0..size {
                    next[i][j] += acc[i][k] * adj[k][j];
                }
            }
        }
        acc = next;
    }
    acc.iter().flatten().sum()
}
