//! Decision procedures for finite directed multigraphs and their graph
//! correspondences: Condition (L), Condition (S), nonreturning paths,
//! hereditary and saturated vertex sets, periodicity and simplicity of the
//! associated Cuntz-Pimsner algebra.
//!
//! ```
//! use quiverlab::{classify, fixtures, Limits, Simplicity};
//!
//! let report = classify(&fixtures::exit_graph(), &Limits::default()).unwrap();
//! assert_eq!(report.simplicity, Simplicity::Simple);
//! assert!(report.flags.condition_s);
//! ```
//!
//! Weighted objects are generic over the scalar type; the aliases below fix
//! the common choices.

pub mod cli;
pub mod conditions;
pub mod corr;
pub mod cycles;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideals;
pub mod io;
pub mod limits;
pub mod scalar;
pub mod verdicts;

use num_rational::Ratio;

pub use conditions::{
    condition_l, condition_l_by_enumeration, condition_s, find_witness, is_nonreturning_set,
    is_returning, periodicity, periodicity_by_powers, ConditionL, ConditionS, PeriodicityVerdict,
    Witness, WitnessRequest,
};
pub use corr::{
    inner_product, is_nonreturning_vector, left_action, norm, norm_squared, operator_sandwich,
    PathVector, VertexWeights,
};
pub use cycles::{cycle_exits, simple_cycles};
pub use error::{Error, Result};
pub use graph::{
    validate, Connectivity, EdgeId, EdgeSpec, Graph, GraphSpec, Path, PowerGraph, ValidationReport,
    VertexClasses, VertexId, VertexSubset,
};
pub use ideals::{
    is_hereditary, is_saturated, lattice, saturated_hereditary_closure, LatticeKind, SubsetLattice,
};
pub use limits::Limits;
pub use scalar::{RealScalar, Scalar};
pub use verdicts::{
    classify, schweizer_check, simplicity_verdict, AnalysisReport, CounterexampleFlag, Simplicity,
};

/// Exact rational scalar.
pub type Rational = Ratio<i64>;

pub type VertexWeightsF32<'g> = VertexWeights<'g, f32>;
pub type VertexWeightsF64<'g> = VertexWeights<'g, f64>;
pub type VertexWeightsQ<'g> = VertexWeights<'g, Rational>;

pub type PathVectorF32<'g> = PathVector<'g, f32>;
pub type PathVectorF64<'g> = PathVector<'g, f64>;
pub type PathVectorQ<'g> = PathVector<'g, Rational>;

pub type WitnessRequestF64<'g> = WitnessRequest<'g, f64>;
pub type WitnessRequestQ<'g> = WitnessRequest<'g, Rational>;
