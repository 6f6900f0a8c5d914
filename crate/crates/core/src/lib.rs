//! Minimum-cost covariate adjustment via graph surgery and max-flow.
//!
//! Given an acyclic causal graph with hidden variables, a treatment, an
//! outcome, a set of policy covariates that must be adjusted for, and a
//! positive cost per observed vertex, this crate computes the valid
//! adjustment set of minimum total cost that, among all minimum-cost sets,
//! yields the nonparametric estimator with the smallest asymptotic variance.
//!
//! The computation reduces adjustment-set search to vertex cuts of an
//! undirected graph ([`adjustment::build_h1`]) and solves the cut problem
//! exactly with integral max-flow on a node-split network ([`flow`]). The
//! source-side residual cut is the unique minimal minimum cut and its
//! crossing vertices form the answer ([`optimizer::optimal_min_cost`]).

pub mod adjustment;
pub mod cost;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod optimizer;
pub mod parse;
pub mod problem;

pub use adjustment::{build_h1, dominates, EfficiencyGraph};
pub use cost::{format_cost, parse_cost, Cost};
pub use error::{Error, Result};
pub use flow::{build_network, Capacity, Cut, FlowNetwork, FlowState, Solver};
pub use graph::{DirectedGraph, UndirectedGraph, VertexId};
pub use optimizer::{
    optimal_min_cardinality, optimal_min_cost, validate_adjustment, AdjustmentResult,
    ValidationReport,
};
pub use parse::{parse_document, serialize_problem, ParsedProblem};
pub use problem::CausalProblem;
