//! Finite directed multigraphs, paths and power graphs.
//!
//! Every edge `e` runs from its source `s(e)` to its range `r(e)`. Paths
//! compose left to right: `e_1 e_2 ... e_n` requires `r(e_i) = s(e_{i+1})`.
//! Vertex and edge declaration order is fixed at construction and decides
//! every tie-break in the crate.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of edges a power graph may carry.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Unvalidated graph description, as read from a document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Src,
    Dst,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Src => f.write_str("src"),
            Endpoint::Dst => f.write_str("dst"),
        }
    }
}

/// One broken graph invariant. Positions index into the [`GraphSpec`] lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingEndpoint {
        edge: String,
        position: usize,
        endpoint: Endpoint,
        vertex: String,
    },
    DuplicateVertex {
        id: String,
        position: usize,
    },
    DuplicateEdge {
        id: String,
        position: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEndpoint {
                edge,
                endpoint,
                vertex,
                ..
            } => write!(
                f,
                "dangling endpoint: edge `{edge}` {endpoint} references absent vertex `{vertex}`"
            ),
            Violation::DuplicateVertex { id, .. } => write!(f, "duplicate id: vertex `{id}`"),
            Violation::DuplicateEdge { id, .. } => write!(f, "duplicate id: edge `{id}`"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every graph invariant and reports all violations, not just the first.
pub fn validate(spec: &GraphSpec) -> ValidationReport {
    let mut violations = Vec::new();
    let mut vertices = HashSet::new();
    for (position, v) in spec.vertices.iter().enumerate() {
        if !vertices.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex {
                id: v.clone(),
                position,
            });
        }
    }
    let mut edges = HashSet::new();
    for (position, e) in spec.edges.iter().enumerate() {
        if !edges.insert(e.id.as_str()) {
            violations.push(Violation::DuplicateEdge {
                id: e.id.clone(),
                position,
            });
        }
        for (endpoint, vertex) in [(Endpoint::Src, &e.src), (Endpoint::Dst, &e.dst)] {
            if !vertices.contains(vertex.as_str()) {
                violations.push(Violation::DanglingEndpoint {
                    edge: e.id.clone(),
                    position,
                    endpoint,
                    vertex: vertex.clone(),
                });
            }
        }
    }
    ValidationReport { violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub dst: VertexId,
}

/// A validated finite directed multigraph. Immutable once built.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl TryFrom<GraphSpec> for Graph {
    type Error = Error;

    fn try_from(spec: GraphSpec) -> Result<Self> {
        Graph::from_spec(&spec)
    }
}

impl Graph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let report = validate(spec);
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report));
        }
        let vertex_index: HashMap<_, _> = spec
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i)))
            .collect();
        let edges: Vec<Edge> = spec
            .edges
            .iter()
            .map(|e| Edge {
                name: e.id.clone(),
                src: vertex_index[&e.src],
                dst: vertex_index[&e.dst],
            })
            .collect();
        Ok(Self::assemble(spec.vertices.clone(), edges, vertex_index))
    }

    /// Shorthand for literal graphs: vertex names and `(id, src, dst)` triples.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::from_spec(&GraphSpec {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, d)| EdgeSpec::new(*id, *s, *d))
                .collect(),
        })
    }

    fn assemble(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, VertexId>,
    ) -> Self {
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src.0].push(EdgeId(i));
            in_edges[e.dst.0].push(EdgeId(i));
            edge_index.insert(e.name.clone(), EdgeId(i));
        }
        Self {
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        }
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec::new(&e.name, self.vertex_name(e.src), self.vertex_name(e.dst)))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn dst(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Edges emitted by `v`, in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Edges received by `v`, in edge order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v.0].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.0].is_empty()
    }

    /// A vertex is regular when it emits at least one edge. In a finite graph
    /// every emitter is a finite emitter, so this is the whole condition.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn has_sinks(&self) -> bool {
        self.vertex_ids().any(|v| self.is_sink(v))
    }

    pub fn has_sources(&self) -> bool {
        self.vertex_ids().any(|v| self.is_source(v))
    }

    pub fn vertex_classes(&self) -> VertexClasses {
        let pick = |pred: &dyn Fn(VertexId) -> bool| {
            VertexSubset::from_ids(self.vertex_ids().filter(|&v| pred(v)))
        };
        VertexClasses {
            sinks: pick(&|v| self.is_sink(v)),
            sources: pick(&|v| self.is_source(v)),
            regular: pick(&|v| self.is_regular(v)),
        }
    }

    pub fn path(&self, edges: &[EdgeId]) -> Result<Path> {
        Path::new(self, edges.to_vec())
    }

    pub fn path_by_names(&self, names: &[&str]) -> Result<Path> {
        let edges = names
            .iter()
            .map(|n| self.edge_id(n))
            .collect::<Result<Vec<_>>>()?;
        Path::new(self, edges)
    }

    /// Renders a path as `(e1,e2,...)` using edge names.
    pub fn path_label(&self, p: &Path) -> String {
        let names: Vec<&str> = p.edges().iter().map(|&e| self.edge_name(e)).collect();
        format!("({})", names.join(","))
    }

    pub fn subset_by_names(&self, names: &[&str]) -> Result<VertexSubset> {
        names
            .iter()
            .map(|n| self.vertex(n))
            .collect::<Result<BTreeSet<_>>>()
            .map(VertexSubset::new)
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset::from_ids(self.vertex_ids())
    }

    pub fn subset_names(&self, s: &VertexSubset) -> Vec<String> {
        s.iter().map(|v| self.vertex_name(v).to_string()).collect()
    }

    /// `A[v][w]` = number of edges from `v` to `w`.
    pub fn adjacency_counts<N: Num + Copy>(&self) -> Vec<Vec<N>> {
        let n = self.vertex_count();
        let mut m = vec![vec![N::zero(); n]; n];
        for e in &self.edges {
            m[e.src.0][e.dst.0] = m[e.src.0][e.dst.0] + N::one();
        }
        m
    }

    /// `n`-th power of the adjacency-count matrix; entry `(v, w)` counts the
    /// paths of length `n` from `v` to `w`.
    pub fn path_count_matrix<N: Num + Copy>(&self, n: usize) -> Vec<Vec<N>> {
        let size = self.vertex_count();
        let adj = self.adjacency_counts::<N>();
        let mut acc: Vec<Vec<N>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { N::one() } else { N::zero() })
                    .collect()
            })
            .collect();
        for _ in 0..n {
            acc = mat_mul(&acc, &adj);
        }
        acc
    }

    /// Number of paths of length `n`, saturating at `u128::MAX`.
    pub fn count_paths(&self, n: usize) -> u128 {
        // Dynamic programme over ranges; saturating so that caps can be checked
        // without materialising anything.
        let mut ending = vec![1u128; self.vertex_count()];
        for _ in 0..n {
            let mut next = vec![0u128; self.vertex_count()];
            for e in &self.edges {
                next[e.dst.0] = next[e.dst.0].saturating_add(ending[e.src.0]);
            }
            ending = next;
        }
        ending.into_iter().fold(0u128, |a, b| a.saturating_add(b))
    }

    /// All paths of length `n`, filtered by source and range, in
    /// lexicographic edge order. `n = 0` yields nothing.
    pub fn paths_of_length(
        &self,
        n: usize,
        from: Option<&VertexSubset>,
        to: Option<&VertexSubset>,
    ) -> Vec<Path> {
        let mut out = Vec::new();
        self.for_each_path(n, from, |p| {
            if to.is_none_or(|t| t.contains(p.range())) {
                out.push(p.clone());
            }
        });
        out
    }

    /// Visits every path of length `n` starting in `from`, in lexicographic
    /// edge order, without collecting them.
    pub fn for_each_path(
        &self,
        n: usize,
        from: Option<&VertexSubset>,
        mut visit: impl FnMut(&Path),
    ) {
        self.try_for_each_path::<()>(n, from, |p| {
            visit(p);
            ControlFlow::Continue(())
        });
    }

    /// Like [`Graph::for_each_path`] but stops at the first `Break`.
    pub fn try_for_each_path<B>(
        &self,
        n: usize,
        from: Option<&VertexSubset>,
        mut visit: impl FnMut(&Path) -> ControlFlow<B>,
    ) -> Option<B> {
        if n == 0 {
            return None;
        }
        let mut stack: Vec<EdgeId> = Vec::with_capacity(n);
        for e in self.edge_ids() {
            if from.is_some_and(|f| !f.contains(self.src(e))) {
                continue;
            }
            stack.push(e);
            let flow = self.extend_paths(n, &mut stack, &mut visit);
            stack.pop();
            if let ControlFlow::Break(b) = flow {
                return Some(b);
            }
        }
        None
    }

    fn extend_paths<B>(
        &self,
        n: usize,
        stack: &mut Vec<EdgeId>,
        visit: &mut impl FnMut(&Path) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if stack.len() == n {
            let p = Path {
                edges: stack.clone(),
                source: self.src(stack[0]),
                range: self.dst(stack[n - 1]),
            };
            return visit(&p);
        }
        let tip = self.dst(*stack.last().expect("nonempty stack"));
        for &e in self.out_edges(tip) {
            stack.push(e);
            let flow = self.extend_paths(n, stack, visit);
            stack.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Builds `E^{×n}`: same vertices, one edge per path of length `n`.
    ///
    /// Edge ids are the constituent ids joined with `.`. Refuses with
    /// [`Error::PowerGraphTooLarge`] rather than truncating.
    pub fn power_graph(&self, n: usize, cap: usize) -> Result<PowerGraph> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let count = self.count_paths(n);
        if count > cap as u128 {
            return Err(Error::PowerGraphTooLarge {
                length: n,
                count,
                cap,
            });
        }
        let paths = self.paths_of_length(n, None, None);
        let mut edges = Vec::with_capacity(paths.len());
        let mut seen = HashSet::with_capacity(paths.len());
        for p in &paths {
            let name = p
                .edges()
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(".");
            if !seen.insert(name.clone()) {
                return Err(Error::EdgeIdCollision(name));
            }
            edges.push(Edge {
                name,
                src: p.source(),
                dst: p.range(),
            });
        }
        let graph = Self::assemble(self.vertices.clone(), edges, self.vertex_index.clone());
        Ok(PowerGraph { graph, paths })
    }

    pub fn connectivity(&self) -> Result<Connectivity> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let start = VertexId(0);
        let all = self.vertex_count();
        let weakly = self.reach(start, true, true).len() == all;
        let strongly = weakly
            && self.reach(start, true, false).len() == all
            && self.reach(start, false, true).len() == all;
        Ok(Connectivity { weakly, strongly })
    }

    /// Vertices reachable from `start` by paths (including the empty path).
    pub fn reachable_from(&self, start: VertexId) -> BTreeSet<VertexId> {
        self.reach(start, true, false)
    }

    fn reach(&self, start: VertexId, forward: bool, backward: bool) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let fwd = forward
                .then(|| self.out_edges(v).iter().map(|&e| self.dst(e)))
                .into_iter()
                .flatten();
            let bwd = backward
                .then(|| self.in_edges(v).iter().map(|&e| self.src(e)))
                .into_iter()
                .flatten();
            for w in fwd.chain(bwd) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

fn mat_mul<N: Num + Copy>(a: &[Vec<N>], b: &[Vec<N>]) -> Vec<Vec<N>> {
    let n = a.len();
    let mut c = vec![vec![N::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == N::zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// `E^{×n}` together with the path of `E` behind each of its edges.
#[derive(Clone, Debug)]
pub struct PowerGraph {
    pub graph: Graph,
    /// `paths[i]` is the length-`n` path forming edge `i` of `graph`.
    pub paths: Vec<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub sinks: VertexSubset,
    pub sources: VertexSubset,
    pub regular: VertexSubset,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub weakly: bool,
    pub strongly: bool,
}

/// A nonempty composable edge sequence.
///
/// Ordering is lexicographic in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    source: VertexId,
    range: VertexId,
}

impl Path {
    pub fn new(g: &Graph, edges: Vec<EdgeId>) -> Result<Self> {
        let (&first, &last) = match (edges.first(), edges.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::EmptyPath),
        };
        for &e in &edges {
            if e.0 >= g.edge_count() {
                return Err(Error::UnknownEdge(format!("#{}", e.0)));
            }
        }
        for w in edges.windows(2) {
            if g.dst(w[0]) != g.src(w[1]) {
                return Err(Error::NotComposable {
                    first: g.edge_name(w[0]).to_string(),
                    second: g.edge_name(w[1]).to_string(),
                });
            }
        }
        Ok(Self {
            source: g.src(first),
            range: g.dst(last),
            edges,
        })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s(α) = s(e_1)`.
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// `r(α) = r(e_n)`.
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn last_edge(&self) -> EdgeId {
        self.edges[self.edges.len() - 1]
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.range
    }

    /// The first `k` edges, `1 ≤ k ≤ len`.
    pub fn prefix(&self, g: &Graph, k: usize) -> Path {
        assert!(k >= 1 && k <= self.len(), "prefix length out of range");
        Path {
            source: self.source,
            range: g.dst(self.edges[k - 1]),
            edges: self.edges[..k].to_vec(),
        }
    }

    /// The last `k` edges, `1 ≤ k ≤ len`.
    pub fn suffix(&self, g: &Graph, k: usize) -> Path {
        assert!(k >= 1 && k <= self.len(), "suffix length out of range");
        let start = self.len() - k;
        Path {
            source: g.src(self.edges[start]),
            range: self.range,
            edges: self.edges[start..].to_vec(),
        }
    }

    /// Vertices visited, `s(e_1), r(e_1), ..., r(e_n)`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        std::iter::once(self.source)
            .chain(self.edges.iter().map(|&e| g.dst(e)))
            .collect()
    }
}

/// A set of vertices of one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    members: BTreeSet<VertexId>,
}

impl VertexSubset {
    pub fn new(members: BTreeSet<VertexId>) -> Self {
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_ids(ids: impl IntoIterator<Item = VertexId>) -> Self {
        Self {
            members: ids.into_iter().collect(),
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        Self::from_ids([v])
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.members.insert(v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn is_subset(&self, other: &VertexSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &VertexSubset) -> VertexSubset {
        Self::new(self.members.union(&other.members).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSubset) -> VertexSubset {
        Self::new(self.members.intersection(&other.members).copied().collect())
    }

    /// Bitmask view; only valid for graphs with fewer than 64 vertices.
    pub fn to_mask(&self) -> u64 {
        self.members.iter().fold(0u64, |m, v| m | (1u64 << v.0))
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::from_ids((0..64).filter(|i| mask >> i & 1 == 1).map(VertexId))
    }
}

impl FromIterator<VertexId> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}
