//! The causal problem instance: DAG, roles, observability and costs.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};

/// A validated problem instance.
///
/// Invariants enforced at construction:
/// - the graph is acyclic;
/// - treatment and outcome differ, and the outcome is a descendant of the
///   treatment;
/// - treatment, outcome and every policy vertex are observed;
/// - no policy vertex is a descendant of the treatment;
/// - every observed vertex other than treatment and outcome carries a
///   strictly positive cost.
#[derive(Clone, Debug)]
pub struct CausalProblem {
    graph: DirectedGraph,
    treatment: VertexId,
    outcome: VertexId,
    policy: BTreeSet<VertexId>,
    observed: BTreeSet<VertexId>,
    costs: BTreeMap<VertexId, Cost>,
}

impl CausalProblem {
    pub fn new(
        graph: DirectedGraph,
        treatment: VertexId,
        outcome: VertexId,
        policy: BTreeSet<VertexId>,
        observed: BTreeSet<VertexId>,
        costs: BTreeMap<VertexId, Cost>,
    ) -> Result<Self> {
        if !graph.is_acyclic() {
            return Err(Error::Cyclic);
        }
        graph.idx(&treatment)?;
        graph.idx(&outcome)?;
        if treatment == outcome {
            return Err(Error::InvalidProblem(
                "treatment and outcome must be distinct".to_string(),
            ));
        }
        for w in policy.iter().chain(observed.iter()) {
            graph.idx(w)?;
        }
        let treated: BTreeSet<VertexId> = [treatment.clone()].into();
        let de_a = graph.descendants(&treated)?;
        if !de_a.contains(&outcome) {
            return Err(Error::InvalidProblem(format!(
                "outcome `{outcome}` is not a descendant of treatment `{treatment}`"
            )));
        }
        if !observed.contains(&treatment) || !observed.contains(&outcome) {
            return Err(Error::InvalidProblem(
                "treatment and outcome must be observed".to_string(),
            ));
        }
        for l in &policy {
            if !observed.contains(l) {
                return Err(Error::InvalidProblem(format!(
                    "policy vertex `{l}` must be observed"
                )));
            }
            if de_a.contains(l) {
                return Err(Error::InvalidProblem(format!(
                    "policy vertex `{l}` is a descendant of the treatment"
                )));
            }
        }
        for (w, c) in &costs {
            if !observed.contains(w) {
                return Err(Error::InvalidProblem(format!(
                    "cost given for unobserved or unknown vertex `{w}`"
                )));
            }
            if *w == treatment || *w == outcome {
                return Err(Error::InvalidProblem(format!(
                    "cost given for treatment/outcome vertex `{w}`"
                )));
            }
            if *c <= Cost::zero() {
                return Err(Error::InvalidProblem(format!(
                    "cost of `{w}` must be strictly positive"
                )));
            }
        }
        for w in &observed {
            if *w != treatment && *w != outcome && !costs.contains_key(w) {
                return Err(Error::InvalidProblem(format!(
                    "missing cost for observed vertex `{w}`"
                )));
            }
        }
        Ok(CausalProblem {
            graph,
            treatment,
            outcome,
            policy,
            observed,
            costs,
        })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn treatment(&self) -> &VertexId {
        &self.treatment
    }

    pub fn outcome(&self) -> &VertexId {
        &self.outcome
    }

    pub fn policy(&self) -> &BTreeSet<VertexId> {
        &self.policy
    }

    pub fn observed(&self) -> &BTreeSet<VertexId> {
        &self.observed
    }

    pub fn costs(&self) -> &BTreeMap<VertexId, Cost> {
        &self.costs
    }

    /// Hidden vertices, i.e. the complement of the observed set.
    pub fn hidden(&self) -> BTreeSet<VertexId> {
        self.graph
            .vertex_set()
            .difference(&self.observed)
            .cloned()
            .collect()
    }
}
