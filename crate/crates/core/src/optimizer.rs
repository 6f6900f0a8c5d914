//! End-to-end computation of the optimal minimum-cost adjustment set, plus
//! the mappings between separators and network cuts used by the tests.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::adjustment::{build_h1, EfficiencyGraph};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{build_network, Capacity, Cut, FlowNetwork, Solver};
use crate::graph::VertexId;
use crate::problem::CausalProblem;

/// Outcome of the optimization pipeline.
#[derive(Clone, Debug)]
pub struct AdjustmentResult {
    /// The optimal set; empty when `exists` is false.
    pub optimal_set: BTreeSet<VertexId>,
    /// Total cost of the optimal set in the caller's rational units.
    pub total_cost: Cost,
    /// The minimal min-cut the set was extracted from.
    pub min_cut: Cut,
    /// Vertex and edge count of the efficiency graph.
    pub h1_size: (usize, usize),
    /// Max-flow value at the network's integer scale.
    pub flow_value: u64,
    /// Scale threshold signalling nonexistence.
    pub big_m: u64,
    /// Whether any valid adjustment set exists.
    pub exists: bool,
}

/// Separator vertices whose internal arc crosses the cut.
pub fn map_h(n: &FlowNetwork, s: &Cut) -> Result<BTreeSet<VertexId>> {
    if n.cut_capacity(s) == Capacity::Infinite {
        return Err(Error::NoFiniteCut);
    }
    let mut out = BTreeSet::new();
    for arc in n.arcs() {
        if s.contains(arc.from) && !s.contains(arc.to) && arc.from % 2 == 0 && arc.to == arc.from + 1
        {
            out.insert(n.origin(arc.from).0.clone());
        }
    }
    Ok(out)
}

/// The cut associated with a minimal separator: every node reachable from
/// the source once the internal arcs of the separator's members are deleted.
///
/// Being a reachability closure, the only arcs that can leave the set are
/// the deleted ones, so the crossing arcs are exactly the internal arcs of
/// the separator (each member's inlet is reachable because the separator is
/// minimal) and the cut's capacity is the separator's scaled cost.
pub fn map_d(e: &EfficiencyGraph, z: &BTreeSet<VertexId>) -> Result<Cut> {
    if !e.h1().is_minimal_separator(e.treatment(), e.outcome(), z)? {
        return Err(Error::NotMinimalSeparator);
    }
    let n = build_network(e)?;
    let mut deleted = vec![false; n.node_count()];
    for w in z {
        deleted[n.inlet(w)?] = true;
    }
    let mut visited = vec![false; n.node_count()];
    visited[n.source()] = true;
    let mut stack = vec![n.source()];
    while let Some(u) = stack.pop() {
        for arc in n.arcs() {
            // deleting a member's internal arc means not stepping from its
            // inlet to its outlet
            if arc.from == u
                && !visited[arc.to]
                && !(deleted[arc.from] && arc.to == arc.from + 1)
            {
                visited[arc.to] = true;
                stack.push(arc.to);
            }
        }
    }
    n.cut_from_nodes((0..n.node_count()).filter(|&node| visited[node]))
}

/// Algorithm: build the efficiency graph, build the network, max-flow,
/// residual reachability, then read the separator off the cut.
pub fn optimal_min_cost(p: &CausalProblem) -> Result<AdjustmentResult> {
    let e = build_h1(p)?;
    optimal_for_efficiency_graph(&e, Solver::HighestLabelPreflowPush)
}

/// Same pipeline with all candidate costs forced to one, so the answer has
/// minimum cardinality (and is the most efficient set of that cardinality).
pub fn optimal_min_cardinality(p: &CausalProblem) -> Result<AdjustmentResult> {
    let e = build_h1(p)?;
    let unit_costs: BTreeMap<VertexId, Cost> = e
        .candidate_costs()
        .keys()
        .map(|w| (w.clone(), Cost::from(1)))
        .collect();
    let unit = EfficiencyGraph::from_parts(
        e.h1().clone(),
        e.treatment().clone(),
        e.outcome().clone(),
        unit_costs,
    )?;
    optimal_for_efficiency_graph(&unit, Solver::HighestLabelPreflowPush)
}

/// Run the flow stage of the pipeline on an already-built efficiency graph.
pub fn optimal_for_efficiency_graph(
    e: &EfficiencyGraph,
    solver: Solver,
) -> Result<AdjustmentResult> {
    let n = build_network(e)?;
    let f = n.max_flow_with(solver);
    let cut = n.residual_reachable(&f)?;
    let h1_size = (e.h1().vertex_count(), e.h1().edge_count());
    if f.value() >= n.big_m() {
        return Ok(AdjustmentResult {
            optimal_set: BTreeSet::new(),
            total_cost: Cost::from(0),
            min_cut: cut,
            h1_size,
            flow_value: f.value(),
            big_m: n.big_m(),
            exists: false,
        });
    }
    let optimal_set = map_h(&n, &cut)?;
    let total_cost = Ratio::new(f.value() as i64, n.scale());
    Ok(AdjustmentResult {
        optimal_set,
        total_cost,
        min_cut: cut,
        h1_size,
        flow_value: f.value(),
        big_m: n.big_m(),
        exists: true,
    })
}

/// What a candidate set validation reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    /// The candidate set uses vertices outside the efficiency graph, so the
    /// separator characterization does not apply to it.
    NotCheckable { outside: BTreeSet<VertexId> },
    Checked {
        valid: bool,
        minimal: bool,
        cost: Cost,
        /// An open back-door path witnessing invalidity, when there is one.
        witness: Option<Vec<VertexId>>,
    },
}

/// Check a candidate set against the separator characterization: valid
/// minimal adjustment sets are exactly minimal treatment-outcome separators
/// of the efficiency graph.
pub fn validate_adjustment(
    p: &CausalProblem,
    z: &BTreeSet<VertexId>,
) -> Result<ValidationReport> {
    for w in z {
        p.graph().idx(w)?;
        if w == p.treatment() || w == p.outcome() {
            return Err(Error::InvalidProblem(format!(
                "candidate set contains endpoint `{w}`"
            )));
        }
        if !p.observed().contains(w) {
            return Err(Error::InvalidProblem(format!(
                "candidate set contains unobserved vertex `{w}`"
            )));
        }
    }
    let e = build_h1(p)?;
    let outside: BTreeSet<VertexId> = z
        .iter()
        .filter(|w| !e.h1().contains(w))
        .cloned()
        .collect();
    if !outside.is_empty() {
        return Ok(ValidationReport::NotCheckable { outside });
    }
    let h = e.h1();
    let a = e.treatment();
    let y = e.outcome();
    let contains_policy = p.policy().is_subset(z);
    let witness = h.path_avoiding(a, y, z)?;
    let separates = witness.is_none();
    let valid = separates && contains_policy;
    let minimal = valid && h.is_minimal_separator(a, y, z)?;
    Ok(ValidationReport::Checked {
        valid,
        minimal,
        cost: e.cost_of_set(z)?,
        witness,
    })
}
