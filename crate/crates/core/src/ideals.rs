//! Hereditary and saturated vertex subsets.
//!
//! An ideal of `C(E^0)` is `C_0(H)` for a vertex set `H`. Invariance of the
//! ideal under the correspondence becomes a closure condition on `H`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSubset};

/// Default cap on the vertex count for exhaustive lattice enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 16;

/// Hard ceiling: subsets are enumerated as 64-bit masks.
pub const MAX_VERTEX_CAP: usize = 63;

/// Every edge leaving `h` lands in `h`.
pub fn is_hereditary(g: &Graph, h: &VertexSubset) -> bool {
    h.iter()
        .all(|v| g.out_edges(v).iter().all(|&e| h.contains(g.dst(e))))
}

/// Every regular vertex outside `h` has an edge landing outside `h`.
pub fn is_saturated(g: &Graph, h: &VertexSubset) -> bool {
    g.vertex_ids()
        .filter(|&v| !h.contains(v) && g.is_regular(v))
        .all(|v| g.out_edges(v).iter().any(|&e| !h.contains(g.dst(e))))
}

/// Smallest hereditary set containing `s`: everything reachable from it.
pub fn hereditary_closure(g: &Graph, s: &VertexSubset) -> VertexSubset {
    let mut out = s.clone();
    let mut stack: Vec<VertexId> = s.iter().collect();
    while let Some(v) = stack.pop() {
        for &e in g.out_edges(v) {
            if out.insert(g.dst(e)) {
                stack.push(g.dst(e));
            }
        }
    }
    out
}

/// Smallest saturated hereditary set containing `s`.
///
/// Alternates the hereditary closure with one saturation sweep until
/// nothing changes.
pub fn saturated_hereditary_closure(g: &Graph, s: &VertexSubset) -> VertexSubset {
    let mut current = hereditary_closure(g, s);
    loop {
        let saturate: Vec<VertexId> = g
            .vertex_ids()
            .filter(|&v| {
                !current.contains(v)
                    && g.is_regular(v)
                    && g.out_edges(v).iter().all(|&e| current.contains(g.dst(e)))
            })
            .collect();
        if saturate.is_empty() {
            return current;
        }
        let grown = current.union(&VertexSubset::from_ids(saturate));
        current = hereditary_closure(g, &grown);
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Hereditary,
    SaturatedHereditary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetLattice {
    pub kind: LatticeKind,
    /// Sorted by size, then by members.
    pub elements: Vec<VertexSubset>,
    vertex_count: usize,
}

impl SubsetLattice {
    pub fn contains(&self, s: &VertexSubset) -> bool {
        self.elements.contains(s)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Only `∅` and the full vertex set.
    pub fn is_trivial(&self) -> bool {
        self.elements
            .iter()
            .all(|s| s.is_empty() || s.len() == self.vertex_count)
    }

    /// Elements other than `∅` and the full vertex set.
    pub fn nontrivial(&self) -> impl Iterator<Item = &VertexSubset> {
        self.elements
            .iter()
            .filter(|s| !s.is_empty() && s.len() != self.vertex_count)
    }
}

/// Every subset of the requested kind, by exhaustive enumeration.
///
/// Refuses graphs with more than `cap` vertices instead of returning a
/// partial lattice.
pub fn lattice(g: &Graph, kind: LatticeKind, cap: usize) -> Result<SubsetLattice> {
    let n = g.vertex_count();
    let cap = cap.min(MAX_VERTEX_CAP);
    if n > cap {
        return Err(Error::LatticeCapExceeded { vertices: n, cap });
    }
    let out_mask: Vec<u64> = g
        .vertex_ids()
        .map(|v| {
            g.out_edges(v)
                .iter()
                .fold(0u64, |m, &e| m | 1u64 << g.dst(e).index())
        })
        .collect();
    let hereditary = |m: u64| (0..n).all(|v| m >> v & 1 == 0 || out_mask[v] & !m == 0);
    let saturated =
        |m: u64| (0..n).all(|v| m >> v & 1 == 1 || out_mask[v] == 0 || out_mask[v] & !m != 0);
    let mut elements: Vec<VertexSubset> = (0..1u64 << n)
        .filter(|&m| hereditary(m) && (kind == LatticeKind::Hereditary || saturated(m)))
        .map(VertexSubset::from_mask)
        .collect();
    elements.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(SubsetLattice {
        kind,
        elements,
        vertex_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(g: &Graph, l: &SubsetLattice) -> Vec<Vec<String>> {
        l.elements.iter().map(|s| g.subset_names(s)).collect()
    }

    #[test]
    fn hereditary_predicate() {
        let g = fixtures::two_loops();
        assert!(is_hereditary(&g, &g.subset_by_names(&["w"]).unwrap()));
        let g = fixtures::source_loop();
        assert!(!is_hereditary(&g, &g.subset_by_names(&["u"]).unwrap()));
        assert!(is_hereditary(&g, &VertexSubset::empty()));
        assert!(is_hereditary(&g, &g.all_vertices()));
    }

    #[test]
    fn saturated_predicate() {
        let g = fixtures::source_loop();
        assert!(!is_saturated(&g, &g.subset_by_names(&["w"]).unwrap()));
        assert!(is_saturated(&g, &g.all_vertices()));
        let g = fixtures::two_loops();
        assert!(is_saturated(&g, &g.subset_by_names(&["w"]).unwrap()));
    }

    #[test]
    fn sinks_impose_no_saturation_constraint() {
        let g = Graph::build(&["u", "w"], &[("e", "u", "w")]).unwrap();
        // w is a sink: not regular, so {} stays saturated
        assert!(is_saturated(&g, &VertexSubset::empty()));
        assert!(!is_saturated(&g, &g.subset_by_names(&["w"]).unwrap()));
    }

    #[test]
    fn closures() {
        let g = fixtures::source_loop();
        let w = g.subset_by_names(&["w"]).unwrap();
        assert_eq!(saturated_hereditary_closure(&g, &w), g.all_vertices());
        let g = fixtures::two_loops();
        let w = g.subset_by_names(&["w"]).unwrap();
        assert_eq!(saturated_hereditary_closure(&g, &w), w);
        for (_, g) in fixtures::all() {
            assert!(saturated_hereditary_closure(&g, &VertexSubset::empty()).is_empty());
        }
    }

    #[test]
    fn lattices_of_fixtures() {
        let g = fixtures::source_loop();
        let l = lattice(&g, LatticeKind::SaturatedHereditary, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(
            names(&g, &l),
            vec![vec![], vec!["u".to_string(), "w".into()]]
        );
        assert!(l.is_trivial());
        let l = lattice(&g, LatticeKind::Hereditary, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(
            names(&g, &l),
            vec![vec![], vec!["w".to_string()], vec!["u".into(), "w".into()]]
        );

        let g = fixtures::two_loops();
        let l = lattice(&g, LatticeKind::SaturatedHereditary, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(
            names(&g, &l),
            vec![vec![], vec!["w".to_string()], vec!["u".into(), "w".into()]]
        );
        assert!(!l.is_trivial());
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let g = fixtures::cycle(5);
        assert_eq!(
            lattice(&g, LatticeKind::Hereditary, 4).unwrap_err(),
            Error::LatticeCapExceeded {
                vertices: 5,
                cap: 4
            }
        );
    }
}
