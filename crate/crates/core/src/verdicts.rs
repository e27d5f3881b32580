//! Simplicity verdicts, the nonperiodicity-based criterion for full
//! correspondences, and the counterexample taxonomy.

use serde::Serialize;

use crate::conditions::{
    condition_l, condition_l_by_enumeration, condition_s, default_power_bound, exitless_cycles,
    periodicity, periodicity_by_powers, PeriodicityVerdict, SReason,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ideals::{lattice, LatticeKind, SubsetLattice};
use crate::limits::Limits;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Simplicity {
    Simple,
    NotSimple,
}

/// Named results a verdict leans on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Citation {
    /// `C*(E)` is simple iff (L) holds and there is no nontrivial saturated
    /// hereditary subset.
    GraphSimplicityCriterion,
    /// Condition (S) plus no nontrivial invariant ideals gives simplicity.
    ConditionSSimplicity,
    /// Condition (S) forces an injective left action, hence no sinks.
    ConditionSNeedsNoSinks,
    /// Condition (S) implies Condition (L).
    ConditionSImpliesL,
    /// For full, unital, injective correspondences: simple iff nonperiodic
    /// and no nontrivial hereditary ideals.
    NonperiodicSimplicity,
    /// Finite, no sinks, no sources: periodic iff disjoint union of simple
    /// cycles.
    DisjointCyclesPeriodicity,
    /// Strongly connected, finitely many vertices: nonperiodic iff (L) iff
    /// not a simple cycle.
    StronglyConnectedEquivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub verdict: Simplicity,
    pub citations: Vec<Citation>,
}

/// Simple iff Condition (L) holds and the saturated hereditary lattice is
/// trivial. When Condition (S) also holds the second route is cited, and the
/// two must agree.
pub fn simplicity_verdict(g: &Graph, limits: &Limits) -> Result<SimplicityVerdict> {
    let sat_her = lattice(g, LatticeKind::SaturatedHereditary, limits.vertices)?;
    verdict_from_parts(g, condition_l(g).holds, &sat_her)
}

fn verdict_from_parts(
    g: &Graph,
    l_holds: bool,
    sat_her: &SubsetLattice,
) -> Result<SimplicityVerdict> {
    let mut citations = vec![Citation::GraphSimplicityCriterion];
    let verdict = if l_holds && sat_her.is_trivial() {
        Simplicity::Simple
    } else {
        Simplicity::NotSimple
    };
    let s = condition_s(g);
    if s.holds && sat_her.is_trivial() {
        if verdict != Simplicity::Simple {
            return Err(Error::InvariantViolation(
                "Condition (S) with trivial invariant ideals but verdict not simple".into(),
            ));
        }
        citations.push(Citation::ConditionSSimplicity);
    }
    Ok(SimplicityVerdict { verdict, citations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "failures")]
pub enum SchweizerStatus {
    HypothesesHold,
    HypothesesFail(Vec<SchweizerFailure>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "vertices")]
pub enum SchweizerFailure {
    /// Not full: these vertices receive no edge.
    Sources(Vec<String>),
    /// Left action not injective: these vertices emit no edge.
    Sinks(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchweizerCheck {
    pub hypotheses: SchweizerStatus,
    pub predicted: Option<Simplicity>,
}

/// Checks fullness (no sources) and injectivity (no sinks); finiteness and
/// unitality hold for every finite graph. Under those hypotheses the
/// prediction is simple iff nonperiodic with a trivial hereditary lattice.
pub fn schweizer_check(g: &Graph, limits: &Limits) -> Result<SchweizerCheck> {
    let her = lattice(g, LatticeKind::Hereditary, limits.vertices)?;
    let nonperiodic = !periodicity(g)?.periodic;
    Ok(schweizer_from_parts(g, nonperiodic, &her))
}

fn schweizer_from_parts(g: &Graph, nonperiodic: bool, her: &SubsetLattice) -> SchweizerCheck {
    let classes = g.vertex_classes();
    let mut failures = Vec::new();
    if !classes.sources.is_empty() {
        failures.push(SchweizerFailure::Sources(g.subset_names(&classes.sources)));
    }
    if !classes.sinks.is_empty() {
        failures.push(SchweizerFailure::Sinks(g.subset_names(&classes.sinks)));
    }
    if !failures.is_empty() {
        return SchweizerCheck {
            hypotheses: SchweizerStatus::HypothesesFail(failures),
            predicted: None,
        };
    }
    let predicted = if nonperiodic && her.is_trivial() {
        Simplicity::Simple
    } else {
        Simplicity::NotSimple
    };
    SchweizerCheck {
        hypotheses: SchweizerStatus::HypothesesHold,
        predicted: Some(predicted),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleFlag {
    /// No sinks, no sources, nonperiodic, yet Condition (L) fails.
    NonperiodicButNotL,
    /// Nonperiodic with no nontrivial invariant ideals, yet not simple.
    NonperiodicTrivialInvariantNotSimple,
    /// Periodic: a disjoint union of simple cycles.
    PeriodicDisjointCycles,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub no_sinks: bool,
    pub no_sources: bool,
    pub finite: bool,
    pub full: bool,
    pub unital: bool,
    pub injective_left_action: bool,
    pub condition_l: bool,
    pub condition_s: bool,
    pub nonperiodic: bool,
    pub trivial_hereditary: bool,
    pub trivial_saturated_hereditary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Agreed,
    /// The oracle would exceed a cap; nothing was compared.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub status: OracleStatus,
}

/// Everything known about one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub vertices: usize,
    pub edges: usize,
    pub flags: Flags,
    pub simplicity: Simplicity,
    pub schweizer: SchweizerCheck,
    pub counterexample_flags: Vec<CounterexampleFlag>,
    pub citations: Vec<Citation>,
    pub periodicity: PeriodicityVerdict,
    pub condition_s_reason: SReason,
    pub weakly_connected: bool,
    pub strongly_connected: bool,
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    /// Edge ids of every cycle without an exit.
    pub exitless_cycles: Vec<Vec<String>>,
    pub hereditary: Vec<Vec<String>>,
    pub saturated_hereditary: Vec<Vec<String>>,
    pub oracle_checks: Vec<OracleCheck>,
}

impl AnalysisReport {
    /// The relations every report must satisfy, as `(name, holds)` pairs.
    pub fn consistency(&self) -> Vec<(&'static str, bool)> {
        let f = &self.flags;
        vec![
            (
                "injective_left_action <=> no_sinks",
                f.injective_left_action == f.no_sinks,
            ),
            ("full <=> no_sources", f.full == f.no_sources),
            (
                "condition_s <=> condition_l && no_sinks",
                f.condition_s == (f.condition_l && f.no_sinks),
            ),
            (
                "simple <=> condition_l && trivial_saturated_hereditary",
                (self.simplicity == Simplicity::Simple)
                    == (f.condition_l && f.trivial_saturated_hereditary),
            ),
        ]
    }
}

/// Full analysis: flags, verdicts, lattices, counterexample patterns and
/// the standing oracle cross-checks. A failed cross-check is an
/// [`Error::InvariantViolation`].
pub fn classify(g: &Graph, limits: &Limits) -> Result<AnalysisReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let classes = g.vertex_classes();
    let connectivity = g.connectivity()?;
    let l = condition_l(g);
    let s = condition_s(g);
    let period = periodicity(g)?;
    let her = lattice(g, LatticeKind::Hereditary, limits.vertices)?;
    let sat_her = lattice(g, LatticeKind::SaturatedHereditary, limits.vertices)?;
    let simplicity = verdict_from_parts(g, l.holds, &sat_her)?;
    let schweizer = schweizer_from_parts(g, !period.periodic, &her);

    let flags = Flags {
        no_sinks: classes.sinks.is_empty(),
        no_sources: classes.sources.is_empty(),
        finite: true,
        full: classes.sources.is_empty(),
        unital: true,
        injective_left_action: classes.sinks.is_empty(),
        condition_l: l.holds,
        condition_s: s.holds,
        nonperiodic: !period.periodic,
        trivial_hereditary: her.is_trivial(),
        trivial_saturated_hereditary: sat_her.is_trivial(),
    };

    let mut citations = simplicity.citations.clone();
    match s.reason {
        SReason::HasSinks => citations.push(Citation::ConditionSNeedsNoSinks),
        SReason::FailsL => citations.push(Citation::ConditionSImpliesL),
        SReason::Ok => {}
    }
    if schweizer.predicted.is_some() {
        citations.push(Citation::NonperiodicSimplicity);
    }
    if flags.no_sinks && flags.no_sources {
        citations.push(Citation::DisjointCyclesPeriodicity);
    }
    if connectivity.strongly {
        citations.push(Citation::StronglyConnectedEquivalence);
    }
    citations.sort();
    citations.dedup();

    let mut counterexample_flags = Vec::new();
    if flags.nonperiodic && !flags.condition_l && flags.no_sinks && flags.no_sources {
        counterexample_flags.push(CounterexampleFlag::NonperiodicButNotL);
    }
    if flags.nonperiodic
        && flags.trivial_saturated_hereditary
        && simplicity.verdict == Simplicity::NotSimple
    {
        counterexample_flags.push(CounterexampleFlag::NonperiodicTrivialInvariantNotSimple);
    }
    if period.periodic {
        counterexample_flags.push(CounterexampleFlag::PeriodicDisjointCycles);
    }

    let oracle_checks = run_oracles(
        g,
        limits,
        &l,
        &period,
        &schweizer,
        simplicity.verdict,
        connectivity.strongly,
    )?;

    let names = |l: &SubsetLattice| l.elements.iter().map(|s| g.subset_names(s)).collect();
    let report = AnalysisReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        flags,
        simplicity: simplicity.verdict,
        schweizer,
        counterexample_flags,
        citations,
        periodicity: period,
        condition_s_reason: s.reason,
        weakly_connected: connectivity.weakly,
        strongly_connected: connectivity.strongly,
        sinks: g.subset_names(&classes.sinks),
        sources: g.subset_names(&classes.sources),
        exitless_cycles: exitless_cycles(g)
            .iter()
            .map(|c| {
                c.edges()
                    .iter()
                    .map(|&e| g.edge_name(e).to_string())
                    .collect()
            })
            .collect(),
        hereditary: names(&her),
        saturated_hereditary: names(&sat_her),
        oracle_checks,
    };
    if let Some((name, _)) = report.consistency().into_iter().find(|(_, ok)| !ok) {
        return Err(Error::InvariantViolation(format!("report flags: {name}")));
    }
    Ok(report)
}

fn run_oracles(
    g: &Graph,
    limits: &Limits,
    l: &crate::conditions::ConditionL,
    period: &PeriodicityVerdict,
    schweizer: &SchweizerCheck,
    verdict: Simplicity,
    strongly_connected: bool,
) -> Result<Vec<OracleCheck>> {
    let mut checks = Vec::new();
    let disagree = |what: &str| {
        Err(Error::InvariantViolation(format!(
            "{what} disagrees with its oracle"
        )))
    };

    match condition_l_by_enumeration(g, limits.cycles) {
        Ok(oracle) if oracle == *l => checks.push(OracleCheck {
            name: "condition_l_by_enumeration",
            status: OracleStatus::Agreed,
        }),
        Ok(_) => return disagree("condition_l"),
        Err(e @ Error::TooManyCycles { .. }) => checks.push(OracleCheck {
            name: "condition_l_by_enumeration",
            status: OracleStatus::Skipped(e.to_string()),
        }),
        Err(e) => return Err(e),
    }

    match periodicity_by_powers(g, default_power_bound(g), limits.paths) {
        Ok(direct)
            if direct.verdict.periodic == period.periodic
                && direct.verdict.minimal_period == period.minimal_period =>
        {
            checks.push(OracleCheck {
                name: "periodicity_by_powers",
                status: OracleStatus::Agreed,
            })
        }
        Ok(_) => return disagree("periodicity"),
        Err(e @ Error::PowerGraphTooLarge { .. }) => checks.push(OracleCheck {
            name: "periodicity_by_powers",
            status: OracleStatus::Skipped(e.to_string()),
        }),
        Err(e) => return Err(e),
    }

    if let Some(predicted) = schweizer.predicted {
        if predicted != verdict {
            return disagree("simplicity_verdict vs nonperiodicity criterion");
        }
        checks.push(OracleCheck {
            name: "nonperiodicity_criterion",
            status: OracleStatus::Agreed,
        });
    }

    if strongly_connected {
        let single_cycle =
            g.vertex_ids().all(|v| g.out_degree(v) == 1) && g.edge_count() == g.vertex_count();
        let nonperiodic = !period.periodic;
        if nonperiodic != l.holds || l.holds == single_cycle {
            return disagree("strongly connected equivalence");
        }
        checks.push(OracleCheck {
            name: "strongly_connected_equivalence",
            status: OracleStatus::Agreed,
        });
    }
    Ok(checks)
}
