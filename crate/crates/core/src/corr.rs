//! Path-weight model of the graph correspondence and its tensor powers.
//!
//! An element of the `m`-th tensor power is a finitely supported function
//! on paths of length `m`. Vertex functions act on the left through the
//! source of a path, and the vertex-valued inner product sums over paths
//! with a given range (counting measure on each fibre).

use std::collections::BTreeMap;
use std::ptr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, VertexSubset};
use crate::scalar::{max_of, RealScalar, Scalar};

/// Nonnegative function on vertices, i.e. a positive element of `C(E^0)`.
#[derive(Clone, Debug)]
pub struct VertexWeights<'g, T> {
    graph: &'g Graph,
    weights: Vec<T>,
}

impl<'g, T: Scalar> VertexWeights<'g, T> {
    /// Weights from `(vertex, value)` pairs; unlisted vertices get zero.
    pub fn new(graph: &'g Graph, pairs: impl IntoIterator<Item = (VertexId, T)>) -> Result<Self> {
        let mut weights = vec![T::zero(); graph.vertex_count()];
        for (v, w) in pairs {
            if w < T::zero() {
                return Err(Error::NegativeWeight(graph.vertex_name(v).to_string()));
            }
            weights[v.index()] = w;
        }
        Ok(Self { graph, weights })
    }

    pub fn from_names(graph: &'g Graph, pairs: &[(&str, T)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(n, w)| graph.vertex(n).map(|v| (v, w)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, ids)
    }

    /// Indicator function of a vertex subset.
    pub fn indicator(graph: &'g Graph, support: &VertexSubset) -> Self {
        let weights = graph
            .vertex_ids()
            .map(|v| {
                if support.contains(v) {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        Self { graph, weights }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn get(&self, v: VertexId) -> T {
        self.weights[v.index()]
    }

    /// `‖a‖ = max_v a(v)`, zero for an empty graph.
    pub fn sup_norm(&self) -> T {
        max_of(self.weights.iter().copied()).unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }

    /// `{v : a(v) > threshold}`, strict.
    pub fn strictly_above(&self, threshold: T) -> VertexSubset {
        self.graph
            .vertex_ids()
            .filter(|&v| self.get(v) > threshold)
            .collect()
    }
}

/// Finitely supported complex function on paths of a fixed length `m`.
///
/// Exact zeros are never stored, so two vectors are equal exactly when their
/// supports and coefficients agree.
#[derive(Clone, Debug)]
pub struct PathVector<'g, T> {
    graph: &'g Graph,
    length: usize,
    weights: BTreeMap<Path, Complex<T>>,
}

impl<T: Scalar> PartialEq for PathVector<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        ptr::eq(self.graph, other.graph)
            && self.length == other.length
            && self.weights == other.weights
    }
}

impl<'g, T: Scalar> PathVector<'g, T> {
    pub fn zero(graph: &'g Graph, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(Self {
            graph,
            length,
            weights: BTreeMap::new(),
        })
    }

    /// The basis vector `δ_α`.
    pub fn delta(graph: &'g Graph, path: &Path) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(path.clone(), Complex::new(T::one(), T::zero()));
        Self {
            graph,
            length: path.len(),
            weights,
        }
    }

    pub fn from_terms(
        graph: &'g Graph,
        length: usize,
        terms: impl IntoIterator<Item = (Path, Complex<T>)>,
    ) -> Result<Self> {
        let mut v = Self::zero(graph, length)?;
        for (p, w) in terms {
            v.add_term(p, w)?;
        }
        Ok(v)
    }

    /// Adds `w·δ_p`. The path must have the vector's length.
    pub fn add_term(&mut self, p: Path, w: Complex<T>) -> Result<()> {
        if p.len() != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length,
                found: p.len(),
            });
        }
        let entry = self.weights.entry(p).or_insert_with(Complex::zero);
        *entry = *entry + w;
        self.weights.retain(|_, w| !w.is_zero());
        Ok(())
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn get(&self, p: &Path) -> Complex<T> {
        self.weights.get(p).copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Path, &Complex<T>)> {
        self.weights.iter()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let weights = self
            .weights
            .iter()
            .map(|(p, w)| (p.clone(), *w * c))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        Self {
            graph: self.graph,
            length: self.length,
            weights,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let mut out = self.clone();
        for (p, w) in &other.weights {
            out.add_term(p.clone(), *w)?;
        }
        Ok(out)
    }
}

fn check_compatible<T>(x: &PathVector<'_, T>, y: &PathVector<'_, T>) -> Result<()> {
    if !ptr::eq(x.graph, y.graph) {
        return Err(Error::GraphMismatch);
    }
    if x.length != y.length {
        return Err(Error::LengthMismatch {
            expected: x.length,
            found: y.length,
        });
    }
    Ok(())
}

/// `⟨x, y⟩(v) = Σ_{r(α)=v} conj(x(α))·y(α)`. Vertices absent from the map
/// carry zero.
pub fn inner_product<T: Scalar>(
    x: &PathVector<'_, T>,
    y: &PathVector<'_, T>,
) -> Result<BTreeMap<VertexId, Complex<T>>> {
    check_compatible(x, y)?;
    let mut out: BTreeMap<VertexId, Complex<T>> = BTreeMap::new();
    for (p, xw) in &x.weights {
        if let Some(yw) = y.weights.get(p) {
            let slot = out.entry(p.range()).or_insert_with(Complex::zero);
            *slot = *slot + xw.conj() * *yw;
        }
    }
    Ok(out)
}

/// `(a·x)(α) = a(s(α))·x(α)`.
pub fn left_action<'g, T: Scalar>(
    a: &VertexWeights<'g, T>,
    x: &PathVector<'g, T>,
) -> Result<PathVector<'g, T>> {
    if !ptr::eq(a.graph, x.graph) {
        return Err(Error::GraphMismatch);
    }
    let weights = x
        .weights
        .iter()
        .map(|(p, w)| (p.clone(), w.scale(a.get(p.source()))))
        .filter(|(_, w)| !w.is_zero())
        .collect();
    Ok(PathVector {
        graph: x.graph,
        length: x.length,
        weights,
    })
}

/// `‖x‖² = max_v Σ_{r(α)=v} |x(α)|²`, computed exactly in `T`.
pub fn norm_squared<T: Scalar>(x: &PathVector<'_, T>) -> T {
    let mut fibres: BTreeMap<VertexId, T> = BTreeMap::new();
    for (p, w) in &x.weights {
        let slot = fibres.entry(p.range()).or_insert_with(T::zero);
        *slot = *slot + w.norm_sqr();
    }
    max_of(fibres.into_values()).unwrap_or_else(T::zero)
}

pub fn norm<T: RealScalar>(x: &PathVector<'_, T>) -> T {
    norm_squared(x).sqrt()
}

/// Combinatorial shadow of `S_α* S_β S_α` for a path `α` of length `m` and a
/// shorter path `β` of length `k`.
///
/// `S_β S_α = S_{βα}` when `r(β) = s(α)` and vanishes otherwise, and
/// `S_α* S_μ` is `S_γ` when `μ = αγ` and zero otherwise. So the sandwich is
/// `S_γ` exactly when the first `m` edges of `βα` spell `α`, and `γ` is then
/// the last `k` edges of `βα`.
pub fn operator_sandwich(g: &Graph, alpha: &Path, beta: &Path) -> Result<Option<Path>> {
    let (m, k) = (alpha.len(), beta.len());
    if k >= m {
        return Err(Error::SandwichLength {
            middle: k,
            outer: m,
        });
    }
    if beta.range() != alpha.source() {
        return Ok(None);
    }
    let a = alpha.edges();
    let b = beta.edges();
    // (βα)_i is b[i] for i < k and a[i - k] afterwards
    let overlaps = (0..m).all(|i| {
        let product_edge = if i < k { b[i] } else { a[i - k] };
        product_edge == a[i]
    });
    if !overlaps {
        return Ok(None);
    }
    Ok(Some(alpha.suffix(g, k)))
}

/// Whether `δ_α` kills every sandwich `S_α* S_β S_α` with `1 ≤ |β| < |α|`.
///
/// A nonzero sandwich forces `β` to be the length-`k` prefix of `α`, so only
/// those `m - 1` candidates are checked. Length-one paths pass vacuously.
pub fn is_nonreturning_vector(g: &Graph, alpha: &Path) -> bool {
    (1..alpha.len()).all(|k| {
        let beta = alpha.prefix(g, k);
        matches!(operator_sandwich(g, alpha, &beta), Ok(None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_rational::Ratio;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn inner_product_of_delta_with_itself() {
        let g = fixtures::exit_graph();
        let alpha = g.path_by_names(&["a", "b"]).unwrap();
        let d = PathVector::<f64>::delta(&g, &alpha);
        let ip = inner_product(&d, &d).unwrap();
        assert_eq!(ip, BTreeMap::from([(g.vertex("w").unwrap(), c(1.0))]));
    }

    #[test]
    fn distinct_deltas_are_orthogonal() {
        let g = fixtures::exit_graph();
        let x = PathVector::<f64>::delta(&g, &g.path_by_names(&["a", "b"]).unwrap());
        let y = PathVector::<f64>::delta(&g, &g.path_by_names(&["b", "c"]).unwrap());
        assert!(inner_product(&x, &y).unwrap().values().all(|z| z.is_zero()));
    }

    #[test]
    fn inner_product_sums_over_range() {
        let g = fixtures::exit_graph();
        let a = g.path_by_names(&["a"]).unwrap();
        let b = g.path_by_names(&["b"]).unwrap();
        let x = PathVector::from_terms(&g, 1, [(a, c(1.0)), (b.clone(), c(1.0))]).unwrap();
        let y = PathVector::delta(&g, &b);
        let ip = inner_product(&x, &y).unwrap();
        assert_eq!(ip, BTreeMap::from([(g.vertex("w").unwrap(), c(1.0))]));
    }

    #[test]
    fn inner_product_conjugates_first_argument() {
        let g = fixtures::cycle(2);
        let p = g.path_by_names(&["e1"]).unwrap();
        let x = PathVector::from_terms(&g, 1, [(p.clone(), Complex::new(0.0, 2.0))]).unwrap();
        let y = PathVector::from_terms(&g, 1, [(p, Complex::new(0.0, 3.0))]).unwrap();
        let ip = inner_product(&x, &y).unwrap();
        assert_eq!(ip[&g.vertex("v2").unwrap()], c(6.0));
    }

    #[test]
    fn inner_product_rejects_mismatches() {
        let g = fixtures::exit_graph();
        let h = fixtures::exit_graph();
        let x = PathVector::<f64>::delta(&g, &g.path_by_names(&["a"]).unwrap());
        let y = PathVector::<f64>::delta(&g, &g.path_by_names(&["a", "a"]).unwrap());
        let z = PathVector::<f64>::delta(&h, &h.path_by_names(&["a"]).unwrap());
        assert!(matches!(
            inner_product(&x, &y),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(inner_product(&x, &z).unwrap_err(), Error::GraphMismatch);
    }

    #[test]
    fn left_action_by_indicators_and_scalars() {
        let g = fixtures::exit_graph();
        let alpha = g.path_by_names(&["b", "d"]).unwrap();
        let d = PathVector::<f64>::delta(&g, &alpha);
        let at_u = VertexWeights::indicator(&g, &g.subset_by_names(&["u"]).unwrap());
        let at_w = VertexWeights::indicator(&g, &g.subset_by_names(&["w"]).unwrap());
        assert_eq!(left_action(&at_u, &d).unwrap(), d);
        assert!(left_action(&at_w, &d).unwrap().is_zero());
        let half = VertexWeights::from_names(&g, &[("u", 0.5)]).unwrap();
        assert_eq!(left_action(&half, &d).unwrap(), d.scale(c(0.5)));
    }

    #[test]
    fn negative_weights_are_rejected() {
        let g = fixtures::exit_graph();
        assert_eq!(
            VertexWeights::from_names(&g, &[("u", -1.0)]).unwrap_err(),
            Error::NegativeWeight("u".into())
        );
    }

    #[test]
    fn norms() {
        let g = fixtures::exit_graph();
        let ab = g.path_by_names(&["a", "b"]).unwrap();
        let bc = g.path_by_names(&["b", "c"]).unwrap();
        assert_eq!(norm(&PathVector::<f64>::delta(&g, &ab)), 1.0);
        assert_eq!(norm(&PathVector::<f64>::zero(&g, 2).unwrap()), 0.0);
        let two = PathVector::from_terms(&g, 2, [(ab, c(1.0)), (bc, c(1.0))]).unwrap();
        assert_eq!(norm(&two), 2f64.sqrt());
    }

    #[test]
    fn exact_norm_squared_with_rationals() {
        let g = fixtures::exit_graph();
        let ab = g.path_by_names(&["a", "b"]).unwrap();
        let da = g.path_by_names(&["d", "a"]).unwrap();
        let third = Complex::new(Ratio::new(1i64, 3), Ratio::new(0, 1));
        let x = PathVector::from_terms(&g, 2, [(ab, third), (da, third)]).unwrap();
        assert_eq!(norm_squared(&x), Ratio::new(1, 9));
    }

    #[test]
    fn sandwich_on_two_cycle() {
        let g = fixtures::cycle(2);
        let alpha = g.path_by_names(&["e1", "e2", "e1"]).unwrap();
        let beta = g.path_by_names(&["e1", "e2"]).unwrap();
        let gamma = operator_sandwich(&g, &alpha, &beta).unwrap();
        assert_eq!(gamma, Some(g.path_by_names(&["e2", "e1"]).unwrap()));
    }

    #[test]
    fn sandwich_vanishes_on_exit_graph() {
        let g = fixtures::exit_graph();
        let alpha = g.path_by_names(&["a", "a", "b"]).unwrap();
        for k in 1..3 {
            for beta in g.paths_of_length(k, None, None) {
                assert_eq!(operator_sandwich(&g, &alpha, &beta).unwrap(), None);
            }
        }
    }

    #[test]
    fn sandwich_vanishes_when_not_composable() {
        let g = fixtures::exit_graph();
        let alpha = g.path_by_names(&["a", "a", "a"]).unwrap();
        let beta = g.path_by_names(&["c"]).unwrap();
        assert_eq!(operator_sandwich(&g, &alpha, &beta).unwrap(), None);
    }

    #[test]
    fn sandwich_rejects_long_middle() {
        let g = fixtures::cycle(2);
        let alpha = g.path_by_names(&["e1", "e2"]).unwrap();
        assert_eq!(
            operator_sandwich(&g, &alpha, &alpha).unwrap_err(),
            Error::SandwichLength {
                middle: 2,
                outer: 2
            }
        );
    }

    #[test]
    fn nonreturning_vectors() {
        let g = fixtures::exit_graph();
        assert!(is_nonreturning_vector(
            &g,
            &g.path_by_names(&["a", "a", "b"]).unwrap()
        ));
        let g = fixtures::cycle(2);
        assert!(!is_nonreturning_vector(
            &g,
            &g.path_by_names(&["e1", "e2", "e1"]).unwrap()
        ));
        assert!(is_nonreturning_vector(
            &g,
            &g.path_by_names(&["e1"]).unwrap()
        ));
    }
}
