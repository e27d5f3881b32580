//! Elementary circuits of a multigraph and their exits.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// Default cap on the number of simple cycles enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// All elementary circuits of `g`, one per rotation class.
///
/// Circuits are found on the underlying simple digraph with Johnson's
/// blocking search and then expanded over parallel edges, so two cycles that
/// differ only in the choice of a parallel edge are reported separately.
/// Each cycle starts at its smallest vertex; output is sorted by base
/// vertex, then lexicographically by edge sequence.
pub fn simple_cycles(g: &Graph, cap: usize) -> Result<Vec<Path>> {
    let n = g.vertex_count();
    // successor lists without self-loops or duplicates
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.out_edges(VertexId(v))
                .iter()
                .map(|&e| g.dst(e).0)
                .filter(|&w| w != v)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    for e in g.edge_ids() {
        if g.src(e) == g.dst(e) {
            push_capped(&mut out, g.path(&[e])?, cap)?;
        }
    }

    let mut search = Johnson {
        succ: &succ,
        blocked: vec![false; n],
        block_map: vec![BTreeSet::new(); n],
        stack: Vec::new(),
        circuits: Vec::new(),
    };
    for start in 0..n {
        search.blocked.iter_mut().for_each(|b| *b = false);
        search.block_map.iter_mut().for_each(|b| b.clear());
        search.circuit(start, start);
        for circuit in std::mem::take(&mut search.circuits) {
            expand_parallel(g, &circuit, &mut out, cap)?;
        }
    }
    out.sort_by(|a, b| (a.source(), a.edges()).cmp(&(b.source(), b.edges())));
    Ok(out)
}

fn push_capped(out: &mut Vec<Path>, p: Path, cap: usize) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::TooManyCycles { cap });
    }
    out.push(p);
    Ok(())
}

struct Johnson<'a> {
    succ: &'a [Vec<usize>],
    blocked: Vec<bool>,
    block_map: Vec<BTreeSet<usize>>,
    stack: Vec<usize>,
    circuits: Vec<Vec<usize>>,
}

impl Johnson<'_> {
    /// Searches circuits through `start` using only vertices `>= start`.
    fn circuit(&mut self, v: usize, start: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in &self.succ[v] {
            if w < start {
                continue;
            }
            if w == start {
                self.circuits.push(self.stack.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w, start) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &self.succ[v] {
                if w >= start {
                    self.block_map[w].insert(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        let waiting = std::mem::take(&mut self.block_map[v]);
        for w in waiting {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// Turns a vertex circuit `v_0 v_1 ... v_{k-1}` into every edge-level cycle
/// over it, in lexicographic edge order.
fn expand_parallel(g: &Graph, circuit: &[usize], out: &mut Vec<Path>, cap: usize) -> Result<()> {
    let k = circuit.len();
    let choices: Vec<Vec<EdgeId>> = (0..k)
        .map(|i| {
            let (from, to) = (VertexId(circuit[i]), VertexId(circuit[(i + 1) % k]));
            g.out_edges(from)
                .iter()
                .copied()
                .filter(|&e| g.dst(e) == to)
                .collect()
        })
        .collect();
    let mut pick = vec![0usize; k];
    loop {
        let edges: Vec<EdgeId> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        push_capped(out, g.path(&edges)?, cap)?;
        // odometer increment, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// Edges `f` with `s(f) = s(e_i)` and `f ≠ e_i` for some edge `e_i` of `c`.
pub fn cycle_exits(g: &Graph, c: &Path) -> Result<Vec<EdgeId>> {
    if !c.is_cycle() {
        return Err(Error::NotACycle);
    }
    let mut exits = BTreeSet::new();
    for &e in c.edges() {
        exits.extend(g.out_edges(g.src(e)).iter().copied().filter(|&f| f != e));
    }
    Ok(exits.into_iter().collect())
}

/// True when `p` is a cycle whose base point is not revisited before the end.
pub fn is_simple_cycle(g: &Graph, p: &Path) -> bool {
    p.is_cycle()
        && p.edges()[..p.len() - 1]
            .iter()
            .all(|&e| g.dst(e) != p.source())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(g: &Graph, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| g.path_label(p)).collect()
    }

    #[test]
    fn three_cycle_has_one_cycle() {
        let g = fixtures::cycle(3);
        let cycles = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(labels(&g, &cycles), ["(e1,e2,e3)"]);
    }

    #[test]
    fn two_loops_has_two_loops() {
        let g = fixtures::two_loops();
        let cycles = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(labels(&g, &cycles), ["(a)", "(c)"]);
    }

    #[test]
    fn acyclic_graph_has_none() {
        let g = Graph::build(&["u", "w"], &[("e", "u", "w")]).unwrap();
        assert!(simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap().is_empty());
    }

    #[test]
    fn parallel_edges_give_distinct_cycles() {
        let g = fixtures::doubled_two_cycle();
        let cycles = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(labels(&g, &cycles), ["(p,r)", "(p,s)", "(q,r)", "(q,s)"]);
    }

    #[test]
    fn canonical_rotation_starts_at_smallest_vertex() {
        let g = Graph::build(
            &["a", "b", "c"],
            &[("z", "c", "a"), ("y", "b", "c"), ("x", "a", "b")],
        )
        .unwrap();
        let cycles = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(labels(&g, &cycles), ["(x,y,z)"]);
    }

    #[test]
    fn chorded_triangle_cycles() {
        let g = fixtures::chorded_triangle();
        let cycles = simple_cycles(&g, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(labels(&g, &cycles), ["(a,b,c)", "(a,d)"]);
    }

    #[test]
    fn cycle_cap_is_enforced() {
        let g = fixtures::doubled_two_cycle();
        assert_eq!(
            simple_cycles(&g, 3).unwrap_err(),
            Error::TooManyCycles { cap: 3 }
        );
    }

    #[test]
    fn exits_of_loops() {
        let g = fixtures::two_loops();
        let loop_u = g.path_by_names(&["a"]).unwrap();
        assert_eq!(
            cycle_exits(&g, &loop_u).unwrap(),
            vec![g.edge_id("b").unwrap()]
        );

        let g = fixtures::source_loop();
        let loop_w = g.path_by_names(&["c"]).unwrap();
        assert!(cycle_exits(&g, &loop_w).unwrap().is_empty());
    }

    #[test]
    fn full_cycle_has_no_exits() {
        for n in 1..6 {
            let g = fixtures::cycle(n);
            let c = g.path(&g.edge_ids().collect::<Vec<_>>()).unwrap();
            assert!(cycle_exits(&g, &c).unwrap().is_empty());
        }
    }

    #[test]
    fn exits_reject_non_cycles() {
        let g = fixtures::source_loop();
        let p = g.path_by_names(&["b"]).unwrap();
        assert_eq!(cycle_exits(&g, &p).unwrap_err(), Error::NotACycle);
    }
}
