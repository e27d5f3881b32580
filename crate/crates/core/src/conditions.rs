//! Condition (L), Condition (S), returning paths, periodicity and the
//! constructive search for Condition (S) witnesses.

use std::ops::ControlFlow;

use num_complex::Complex;
use num_integer::Integer;
use serde::Serialize;

use crate::corr::{inner_product, is_nonreturning_vector, left_action, PathVector, VertexWeights};
use crate::cycles::{cycle_exits, simple_cycles};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, VertexSubset};
use crate::scalar::{max_of, Scalar};

/// A path is returning when its last edge already occurs earlier in it.
pub fn is_returning(p: &Path) -> bool {
    let (last, rest) = p.edges().split_last().expect("paths are nonempty");
    rest.contains(last)
}

/// For every ordered pair `(α, β)` of the set, the last edge of `α` differs
/// from every non-final edge of `β`.
pub fn is_nonreturning_set(paths: &[Path]) -> Result<bool> {
    let first = paths.first().ok_or(Error::EmptySet)?;
    let n = first.len();
    if let Some(p) = paths.iter().find(|p| p.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: p.len(),
        });
    }
    Ok(paths.iter().all(|alpha| {
        let last = alpha.last_edge();
        paths
            .iter()
            .all(|beta| !beta.edges()[..n - 1].contains(&last))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionL {
    pub holds: bool,
    /// Canonical exitless cycle when the condition fails.
    pub violating_cycle: Option<Path>,
}

/// Every cycle without an exit, one per rotation class, each starting at its
/// smallest vertex and sorted by that vertex.
///
/// A cycle has no exit exactly when every vertex on it emits one edge, so
/// these are the cycles of the functional graph on out-degree-one vertices.
/// They are pairwise vertex-disjoint.
pub fn exitless_cycles(g: &Graph) -> Vec<Path> {
    let n = g.vertex_count();
    let next = |v: VertexId| -> Option<VertexId> {
        match g.out_edges(v) {
            [e] => Some(g.dst(*e)),
            _ => None,
        }
    };
    // 0 = unvisited, 1 = on the current walk, 2 = finished
    let mut state = vec![0u8; n];
    let mut found = Vec::new();
    for start in g.vertex_ids() {
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            match state[v.index()] {
                0 => {
                    state[v.index()] = 1;
                    walk.push(v);
                    cur = next(v);
                }
                1 => {
                    let pos = walk.iter().position(|&w| w == v).expect("on walk");
                    let cycle_vertices = &walk[pos..];
                    let base_pos = (0..cycle_vertices.len())
                        .min_by_key(|&i| cycle_vertices[i])
                        .expect("nonempty cycle");
                    let edges = (0..cycle_vertices.len())
                        .map(|i| {
                            let v = cycle_vertices[(base_pos + i) % cycle_vertices.len()];
                            g.out_edges(v)[0]
                        })
                        .collect::<Vec<_>>();
                    found.push(g.path(&edges).expect("functional graph cycle composes"));
                    break;
                }
                _ => break,
            }
        }
        for v in walk {
            state[v.index()] = 2;
        }
    }
    found.sort_by_key(|p| p.source());
    found
}

/// Condition (L): every cycle has an exit.
pub fn condition_l(g: &Graph) -> ConditionL {
    let violating_cycle = exitless_cycles(g).into_iter().next();
    ConditionL {
        holds: violating_cycle.is_none(),
        violating_cycle,
    }
}

/// Brute-force Condition (L): enumerate elementary circuits and inspect
/// their exits. Any exitless cycle only visits out-degree-one vertices, so it
/// repeats an elementary circuit and checking those suffices.
pub fn condition_l_by_enumeration(g: &Graph, cycle_cap: usize) -> Result<ConditionL> {
    for c in simple_cycles(g, cycle_cap)? {
        if cycle_exits(g, &c)?.is_empty() {
            return Ok(ConditionL {
                holds: false,
                violating_cycle: Some(c),
            });
        }
    }
    Ok(ConditionL {
        holds: true,
        violating_cycle: None,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SReason {
    Ok,
    /// A sink makes the left action non-injective, which rules out (S).
    HasSinks,
    /// (S) implies (L) unconditionally.
    FailsL,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ConditionS {
    pub holds: bool,
    pub reason: SReason,
}

/// Condition (S) for a finite graph: no sinks and Condition (L).
///
/// When both fail, the sink is reported.
pub fn condition_s(g: &Graph) -> ConditionS {
    let reason = if g.has_sinks() {
        SReason::HasSinks
    } else if !condition_l(g).holds {
        SReason::FailsL
    } else {
        SReason::Ok
    };
    ConditionS {
        holds: reason == SReason::Ok,
        reason,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodicityMethod {
    Structural,
    DirectPower,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityVerdict {
    pub periodic: bool,
    pub minimal_period: Option<u64>,
    pub method: PeriodicityMethod,
}

/// Structural periodicity: periodic exactly when every vertex emits and
/// receives one edge, i.e. the graph is a disjoint union of simple cycles.
/// The minimal period is the lcm of the cycle lengths.
pub fn periodicity(g: &Graph) -> Result<PeriodicityVerdict> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let unit = g
        .vertex_ids()
        .all(|v| g.out_degree(v) == 1 && g.in_degree(v) == 1);
    let minimal_period = if unit {
        Some(cycle_length_lcm(g))
    } else {
        None
    };
    Ok(PeriodicityVerdict {
        periodic: unit,
        minimal_period,
        method: PeriodicityMethod::Structural,
    })
}

/// lcm of cycle lengths of a graph whose edges form a permutation of the
/// vertices. Saturates at `u64::MAX`.
fn cycle_length_lcm(g: &Graph) -> u64 {
    let mut seen = vec![false; g.vertex_count()];
    let mut acc = 1u64;
    for start in g.vertex_ids() {
        if seen[start.index()] {
            continue;
        }
        let mut len = 0u64;
        let mut v = start;
        while !seen[v.index()] {
            seen[v.index()] = true;
            len += 1;
            v = g.dst(g.out_edges(v)[0]);
        }
        acc = (acc / acc.gcd(&len)).saturating_mul(len);
    }
    acc
}

/// Outcome of the direct-power oracle.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectPowerVerdict {
    pub verdict: PeriodicityVerdict,
    pub bound: usize,
    /// No power up to `bound` was one loop per vertex. This is not a proof of
    /// nonperiodicity on its own.
    pub exhausted: bool,
}

/// Default search bound for the direct-power oracle.
pub fn default_power_bound(g: &Graph) -> usize {
    match periodicity(g) {
        Ok(PeriodicityVerdict {
            minimal_period: Some(p),
            ..
        }) => usize::try_from(p).unwrap_or(usize::MAX),
        _ => 2 * g.vertex_count(),
    }
}

/// Searches `n = 1..=bound` for a power graph consisting of exactly one
/// self-loop at every vertex.
pub fn periodicity_by_powers(
    g: &Graph,
    bound: usize,
    path_cap: usize,
) -> Result<DirectPowerVerdict> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    for n in 1..=bound {
        // one loop per vertex needs exactly |E^0| paths; skip building otherwise
        if g.count_paths(n) != g.vertex_count() as u128 {
            continue;
        }
        let power = g.power_graph(n, path_cap)?.graph;
        let one_loop_each = power.vertex_ids().all(|v| match power.out_edges(v) {
            [e] => power.dst(*e) == v,
            _ => false,
        });
        if one_loop_each {
            return Ok(DirectPowerVerdict {
                verdict: PeriodicityVerdict {
                    periodic: true,
                    minimal_period: Some(n as u64),
                    method: PeriodicityMethod::DirectPower,
                },
                bound,
                exhausted: false,
            });
        }
    }
    Ok(DirectPowerVerdict {
        verdict: PeriodicityVerdict {
            periodic: false,
            minimal_period: None,
            method: PeriodicityMethod::DirectPower,
        },
        bound,
        exhausted: true,
    })
}

/// Parameters of one Condition (S) instance: a positive vertex function,
/// the degree `n` to beat, the slack `epsilon` and a search horizon.
#[derive(Clone, Debug)]
pub struct WitnessRequest<'g, T> {
    pub a: VertexWeights<'g, T>,
    pub n: usize,
    pub epsilon: T,
    pub max_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub m: usize,
    pub alpha: Path,
}

impl<T: Scalar> WitnessRequest<'_, T> {
    fn check(&self) -> Result<()> {
        if self.a.is_zero() {
            return Err(Error::ZeroWeights);
        }
        if self.max_length <= self.n {
            return Err(Error::InvalidMaxLength {
                n: self.n,
                max_length: self.max_length,
            });
        }
        if self.epsilon <= T::zero() || self.epsilon > self.a.sup_norm() {
            return Err(Error::InvalidEpsilon);
        }
        Ok(())
    }

    /// `V = {v : a(v) > ‖a‖ − ε}`.
    pub fn target_vertices(&self) -> VertexSubset {
        self.a.strictly_above(self.a.sup_norm() - self.epsilon)
    }
}

/// Looks for a nonreturning path `α` of length `m > n` with `s(α) ∈ V`.
///
/// Lengths are tried in increasing order and paths of each length in
/// lexicographic edge order, so the first hit is reproducible. `δ_α` is then
/// a unit nonreturning vector with `‖⟨δ_α, a·δ_α⟩‖ = a(s(α)) > ‖a‖ − ε`.
/// `Ok(None)` only means the horizon was exhausted.
pub fn find_witness<T: Scalar>(g: &Graph, req: &WitnessRequest<'_, T>) -> Result<Option<Witness>> {
    if !std::ptr::eq(g, req.a.graph()) {
        return Err(Error::GraphMismatch);
    }
    req.check()?;
    let targets = req.target_vertices();
    for m in req.n + 1..=req.max_length {
        let hit = g.try_for_each_path(m, Some(&targets), |p| {
            if !is_returning(p) && is_nonreturning_vector(g, p) {
                ControlFlow::Break(p.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(alpha) = hit {
            return Ok(Some(Witness { m, alpha }));
        }
    }
    Ok(None)
}

/// The post-conditions a returned witness must satisfy, each evaluated
/// independently of the search.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub longer_than_n: bool,
    pub source_in_targets: bool,
    pub nonreturning_path: bool,
    pub nonreturning_vector: bool,
    pub inequality: bool,
}

impl WitnessCheck {
    pub fn all(&self) -> bool {
        self.longer_than_n
            && self.source_in_targets
            && self.nonreturning_path
            && self.nonreturning_vector
            && self.inequality
    }
}

pub fn check_witness<T: Scalar>(
    g: &Graph,
    req: &WitnessRequest<'_, T>,
    w: &Witness,
) -> Result<WitnessCheck> {
    let delta = PathVector::delta(g, &w.alpha);
    let acted = left_action(&req.a, &delta)?;
    let ip = inner_product(&delta, &acted)?;
    let threshold = req.a.sup_norm() - req.epsilon;
    Ok(WitnessCheck {
        longer_than_n: w.m > req.n && w.alpha.len() == w.m,
        source_in_targets: req.target_vertices().contains(w.alpha.source()),
        nonreturning_path: !is_returning(&w.alpha),
        nonreturning_vector: is_nonreturning_vector(g, &w.alpha),
        inequality: sup_modulus_exceeds(ip.values().copied(), threshold),
    })
}

/// `max |z| > t`, decided without square roots.
fn sup_modulus_exceeds<T: Scalar>(values: impl IntoIterator<Item = Complex<T>>, t: T) -> bool {
    let sup_sq = max_of(values.into_iter().map(|z| z.norm_sqr())).unwrap_or_else(T::zero);
    t < T::zero() || sup_sq > t * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::DEFAULT_CYCLE_CAP;
    use crate::fixtures;
    use crate::graph::DEFAULT_PATH_CAP;
    use num_rational::Ratio;

    #[test]
    fn returning_paths() {
        let g = fixtures::cycle(2);
        assert!(is_returning(&g.path_by_names(&["e1", "e2", "e1"]).unwrap()));
        assert!(!is_returning(&g.path_by_names(&["e1"]).unwrap()));
        let g = fixtures::exit_graph();
        assert!(!is_returning(&g.path_by_names(&["a", "a", "b"]).unwrap()));
    }

    #[test]
    fn nonreturning_sets() {
        let g = fixtures::exit_graph();
        let aab = g.path_by_names(&["a", "a", "b"]).unwrap();
        assert!(is_nonreturning_set(std::slice::from_ref(&aab)).unwrap());

        let g2 = fixtures::cycle(2);
        let pair = [
            g2.path_by_names(&["e1", "e2"]).unwrap(),
            g2.path_by_names(&["e2", "e1"]).unwrap(),
        ];
        assert!(!is_nonreturning_set(&pair).unwrap());

        assert_eq!(is_nonreturning_set(&[]).unwrap_err(), Error::EmptySet);
        let ab = g.path_by_names(&["a", "b"]).unwrap();
        assert!(matches!(
            is_nonreturning_set(&[aab, ab]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn condition_l_fixtures() {
        let g = fixtures::cycle(5);
        let l = condition_l(&g);
        assert!(!l.holds);
        assert_eq!(
            g.path_label(&l.violating_cycle.unwrap()),
            "(e1,e2,e3,e4,e5)"
        );

        let g = fixtures::two_loops();
        let l = condition_l(&g);
        assert!(!l.holds);
        assert_eq!(g.path_label(&l.violating_cycle.unwrap()), "(c)");

        assert_eq!(
            condition_l(&fixtures::exit_graph()),
            ConditionL {
                holds: true,
                violating_cycle: None
            }
        );
    }

    #[test]
    fn condition_l_oracle_agrees_on_fixtures() {
        for (name, g) in fixtures::all() {
            assert_eq!(
                condition_l(&g),
                condition_l_by_enumeration(&g, DEFAULT_CYCLE_CAP).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn exitless_cycle_rotation_is_canonical() {
        let g = Graph::build(
            &["a", "b", "c", "d"],
            &[
                ("x", "d", "b"),
                ("y", "b", "c"),
                ("z", "c", "b"),
                ("t", "a", "d"),
            ],
        )
        .unwrap();
        let cycles = exitless_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(g.path_label(&cycles[0]), "(y,z)");
    }

    #[test]
    fn condition_s_fixtures() {
        assert_eq!(
            condition_s(&fixtures::exit_graph()),
            ConditionS {
                holds: true,
                reason: SReason::Ok
            }
        );
        assert_eq!(
            condition_s(&fixtures::source_loop()).reason,
            SReason::FailsL
        );
        assert_eq!(
            condition_s(&fixtures::isolated_vertex()).reason,
            SReason::HasSinks
        );
    }

    #[test]
    fn periodicity_fixtures() {
        let v = periodicity(&fixtures::lcm()).unwrap();
        assert_eq!((v.periodic, v.minimal_period), (true, Some(12)));
        for n in 1..=8 {
            let v = periodicity(&fixtures::cycle(n)).unwrap();
            assert_eq!((v.periodic, v.minimal_period), (true, Some(n as u64)));
        }
        assert!(!periodicity(&fixtures::two_loops()).unwrap().periodic);
        assert!(!periodicity(&fixtures::source_loop()).unwrap().periodic);
        assert_eq!(
            periodicity(&Graph::build(&[], &[]).unwrap()).unwrap_err(),
            Error::EmptyGraph
        );
    }

    #[test]
    fn direct_power_oracle_agrees_on_fixtures() {
        for (name, g) in fixtures::all() {
            let structural = periodicity(&g).unwrap();
            let direct =
                periodicity_by_powers(&g, default_power_bound(&g), DEFAULT_PATH_CAP).unwrap();
            assert_eq!(structural.periodic, direct.verdict.periodic, "{name}");
            assert_eq!(
                structural.minimal_period, direct.verdict.minimal_period,
                "{name}"
            );
            assert_eq!(direct.exhausted, !structural.periodic, "{name}");
        }
    }

    #[test]
    fn witness_on_exit_graph() {
        let g = fixtures::exit_graph();
        let req = WitnessRequest {
            a: VertexWeights::indicator(&g, &g.subset_by_names(&["u"]).unwrap()),
            n: 2,
            epsilon: 0.5,
            max_length: 6,
        };
        let w = find_witness(&g, &req).unwrap().unwrap();
        assert_eq!(w.m, 3);
        assert_eq!(g.path_label(&w.alpha), "(a,a,b)");
        assert!(check_witness(&g, &req, &w).unwrap().all());
    }

    #[test]
    fn witness_on_two_cycle() {
        let g = fixtures::cycle(2);
        let a = VertexWeights::indicator(&g, &g.subset_by_names(&["v1"]).unwrap());
        let mut req = WitnessRequest {
            a,
            n: 2,
            epsilon: 0.5,
            max_length: 10,
        };
        assert_eq!(find_witness(&g, &req).unwrap(), None);
        req.n = 1;
        let w = find_witness(&g, &req).unwrap().unwrap();
        assert_eq!((w.m, g.path_label(&w.alpha)), (2, "(e1,e2)".to_string()));
    }

    #[test]
    fn witness_with_exact_weights() {
        let g = fixtures::exit_graph();
        let a =
            VertexWeights::from_names(&g, &[("u", Ratio::new(1i64, 2)), ("w", Ratio::new(1, 3))])
                .unwrap();
        // V = {v : a(v) > 1/2 - 1/6 = 1/3} = {u}; the boundary vertex w is excluded
        let req = WitnessRequest {
            a,
            n: 0,
            epsilon: Ratio::new(1, 6),
            max_length: 3,
        };
        assert_eq!(req.target_vertices(), g.subset_by_names(&["u"]).unwrap());
        let w = find_witness(&g, &req).unwrap().unwrap();
        assert_eq!(g.path_label(&w.alpha), "(a)");
        assert!(check_witness(&g, &req, &w).unwrap().all());
    }

    #[test]
    fn witness_request_errors() {
        let g = fixtures::exit_graph();
        let zero = VertexWeights::<f64>::new(&g, []).unwrap();
        let req = WitnessRequest {
            a: zero,
            n: 1,
            epsilon: 0.5,
            max_length: 3,
        };
        assert_eq!(find_witness(&g, &req).unwrap_err(), Error::ZeroWeights);

        let a = VertexWeights::from_names(&g, &[("u", 1.0)]).unwrap();
        let req = WitnessRequest {
            a: a.clone(),
            n: 3,
            epsilon: 0.5,
            max_length: 3,
        };
        assert!(matches!(
            find_witness(&g, &req),
            Err(Error::InvalidMaxLength { .. })
        ));
        let req = WitnessRequest {
            a,
            n: 1,
            epsilon: 0.0,
            max_length: 3,
        };
        assert_eq!(find_witness(&g, &req).unwrap_err(), Error::InvalidEpsilon);
    }
}
