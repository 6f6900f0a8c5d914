//! Construction of the adjustment efficiency graph and the graphical
//! efficiency comparison between separators.
//!
//! The pipeline is: restrict the proper back-door graph to the ancestors of
//! treatment, outcome and policy vertices, moralize, project out the hidden
//! and forbidden vertices, then wire every policy vertex to both endpoints.
//! Minimal valid adjustment sets are exactly the minimal treatment-outcome
//! separators of the resulting undirected graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph, VertexId};
use crate::problem::CausalProblem;

/// The undirected graph in which adjustment-set search happens, together
/// with the data needed downstream: endpoints, the projected-out vertex set
/// and the candidate costs.
#[derive(Clone, Debug)]
pub struct EfficiencyGraph {
    h1: UndirectedGraph,
    treatment: VertexId,
    outcome: VertexId,
    ignore: BTreeSet<VertexId>,
    candidate_costs: BTreeMap<VertexId, Cost>,
}

impl EfficiencyGraph {
    pub fn h1(&self) -> &UndirectedGraph {
        &self.h1
    }

    pub fn treatment(&self) -> &VertexId {
        &self.treatment
    }

    pub fn outcome(&self) -> &VertexId {
        &self.outcome
    }

    pub fn ignore(&self) -> &BTreeSet<VertexId> {
        &self.ignore
    }

    /// Costs for exactly the vertices of the graph other than treatment and
    /// outcome.
    pub fn candidate_costs(&self) -> &BTreeMap<VertexId, Cost> {
        &self.candidate_costs
    }

    /// Candidate vertices in sorted order.
    pub fn candidates(&self) -> Vec<VertexId> {
        self.candidate_costs.keys().cloned().collect()
    }

    pub fn cost_of_set(&self, z: &BTreeSet<VertexId>) -> Result<Cost> {
        let mut total = Cost::from(0);
        for w in z {
            total += self
                .candidate_costs
                .get(w)
                .ok_or_else(|| Error::UnknownVertex(w.to_string()))?;
        }
        Ok(total)
    }

    /// Build an efficiency graph directly from an undirected graph and
    /// candidate costs. Used by synthetic benchmarks and tests that want to
    /// bypass the causal construction.
    pub fn from_parts(
        h1: UndirectedGraph,
        treatment: VertexId,
        outcome: VertexId,
        candidate_costs: BTreeMap<VertexId, Cost>,
    ) -> Result<Self> {
        h1.idx(&treatment)?;
        h1.idx(&outcome)?;
        for w in h1.vertices() {
            if *w != treatment && *w != outcome && !candidate_costs.contains_key(w) {
                return Err(Error::InvalidProblem(format!("missing cost for `{w}`")));
            }
        }
        Ok(EfficiencyGraph {
            h1,
            treatment,
            outcome,
            ignore: BTreeSet::new(),
            candidate_costs,
        })
    }
}

/// Vertices lying on a directed path from the treatment to the outcome,
/// excluding the treatment itself.
pub fn causal_nodes(p: &CausalProblem) -> Result<BTreeSet<VertexId>> {
    let g = p.graph();
    let a: BTreeSet<VertexId> = [p.treatment().clone()].into();
    let y: BTreeSet<VertexId> = [p.outcome().clone()].into();
    let de_a = g.descendants(&a)?;
    let an_y = g.ancestors(&y)?;
    Ok(de_a
        .intersection(&an_y)
        .filter(|w| *w != p.treatment())
        .cloned()
        .collect())
}

/// Descendants of the causal nodes, plus the treatment. No vertex in this
/// set may belong to an adjustment set.
pub fn forbidden(p: &CausalProblem) -> Result<BTreeSet<VertexId>> {
    let cn = causal_nodes(p)?;
    let mut out = p.graph().descendants(&cn)?;
    out.insert(p.treatment().clone());
    Ok(out)
}

/// The graph with the first edge of every directed treatment-to-outcome path
/// removed, i.e. every edge from the treatment into a causal node.
pub fn proper_backdoor(p: &CausalProblem) -> Result<DirectedGraph> {
    let cn = causal_nodes(p)?;
    let a = p.treatment();
    let edges = p
        .graph()
        .edges()
        .into_iter()
        .filter(|(u, w)| !(u == a && cn.contains(w)));
    DirectedGraph::new(p.graph().vertex_set(), edges)
}

/// Moral graph: drop directions and marry every pair of vertices sharing a
/// common child.
pub fn moralize(g: &DirectedGraph) -> Result<UndirectedGraph> {
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut push = |u: &VertexId, w: &VertexId| {
        let pair = if u < w {
            (u.clone(), w.clone())
        } else {
            (w.clone(), u.clone())
        };
        edges.insert(pair);
    };
    for (u, w) in g.edges() {
        push(&u, &w);
    }
    for i in 0..g.vertex_count() {
        let parents = g.parents_idx(i);
        for (a, &pi) in parents.iter().enumerate() {
            for &pj in &parents[a + 1..] {
                push(g.label(pi), g.label(pj));
            }
        }
    }
    UndirectedGraph::new(g.vertex_set(), edges)
}

/// The vertices dropped before building the efficiency graph: ancestors of
/// `{A,Y} ∪ L` other than the endpoints that are hidden or forbidden.
pub fn ignore_set(p: &CausalProblem) -> Result<BTreeSet<VertexId>> {
    let mut roots = p.policy().clone();
    roots.insert(p.treatment().clone());
    roots.insert(p.outcome().clone());
    let anc = p.graph().ancestors(&roots)?;
    let forb = forbidden(p)?;
    let hidden = p.hidden();
    Ok(anc
        .into_iter()
        .filter(|w| w != p.treatment() && w != p.outcome())
        .filter(|w| hidden.contains(w) || forb.contains(w))
        .collect())
}

/// Latent projection: remove `drop`, connecting any surviving pair joined by
/// a path whose interior lies entirely inside `drop`.
pub fn project_out(h: &UndirectedGraph, drop: &BTreeSet<VertexId>) -> Result<UndirectedGraph> {
    let n = h.vertex_count();
    let mut dropped = vec![false; n];
    for w in drop {
        dropped[h.idx(w)?] = true;
    }
    if drop.is_empty() {
        return Ok(h.clone());
    }
    let keep: Vec<VertexId> = h
        .vertices()
        .filter(|w| !drop.contains(w))
        .cloned()
        .collect();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut visited = vec![usize::MAX; n];
    for u in &keep {
        let ui = h.idx(u)?;
        // walk outward from u through dropped vertices only; every surviving
        // vertex we touch is a neighbor in the projection
        let mut stack: Vec<usize> = vec![ui];
        visited[ui] = ui;
        while let Some(x) = stack.pop() {
            for &w in h.neighbors_idx(x) {
                if visited[w] == ui {
                    continue;
                }
                visited[w] = ui;
                if dropped[w] {
                    stack.push(w);
                } else if w != ui && h.label(w) > u {
                    edges.push((u.clone(), h.label(w).clone()));
                }
            }
        }
        // reset marker trick: visited stores the source index, so no reset
        // pass is needed between sources as long as sources are distinct
        visited[ui] = ui;
    }
    UndirectedGraph::new(keep, edges)
}

/// Build the efficiency graph for a problem instance.
pub fn build_h1(p: &CausalProblem) -> Result<EfficiencyGraph> {
    let mut roots = p.policy().clone();
    roots.insert(p.treatment().clone());
    roots.insert(p.outcome().clone());
    let anc = p.graph().ancestors(&roots)?;
    let pbd = proper_backdoor(p)?;
    let h0 = moralize(&pbd.induced_subgraph(&anc)?)?;
    let ignore = ignore_set(p)?;
    let projected = project_out(&h0, &ignore)?;
    let mut edges = projected.edges();
    for l in p.policy() {
        edges.push((p.treatment().clone(), l.clone()));
        edges.push((p.outcome().clone(), l.clone()));
    }
    let h1 = UndirectedGraph::new(projected.vertex_set(), edges)?;
    let candidate_costs: BTreeMap<VertexId, Cost> = h1
        .vertices()
        .filter(|w| *w != p.treatment() && *w != p.outcome())
        .map(|w| {
            p.costs()
                .get(w)
                .cloned()
                .map(|c| (w.clone(), c))
                .ok_or_else(|| Error::Internal(format!("candidate `{w}` has no cost")))
        })
        .collect::<Result<_>>()?;
    Ok(EfficiencyGraph {
        h1,
        treatment: p.treatment().clone(),
        outcome: p.outcome().clone(),
        ignore,
        candidate_costs,
    })
}

/// Graphical efficiency comparison between two separators: `z1` dominates
/// `z2` when the outcome is separated from `z2 \ z1` by `z1` and the
/// treatment is separated from `z1 \ z2` by `z2`.
pub fn dominates(
    e: &EfficiencyGraph,
    z1: &BTreeSet<VertexId>,
    z2: &BTreeSet<VertexId>,
) -> Result<bool> {
    let h = e.h1();
    let a = e.treatment();
    let y = e.outcome();
    if !h.is_separator(a, y, z1)? {
        return Err(Error::NotSeparator { arg: "z1".to_string() });
    }
    if !h.is_separator(a, y, z2)? {
        return Err(Error::NotSeparator { arg: "z2".to_string() });
    }
    let y_side: BTreeSet<VertexId> = [y.clone()].into();
    let a_side: BTreeSet<VertexId> = [a.clone()].into();
    let z2_minus_z1: BTreeSet<VertexId> = z2.difference(z1).cloned().collect();
    let z1_minus_z2: BTreeSet<VertexId> = z1.difference(z2).cloned().collect();
    Ok(h.sets_separated(&y_side, &z2_minus_z1, z1)?
        && h.sets_separated(&a_side, &z1_minus_z2, z2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{worked_example_h1, worked_example_problem, ordering_example_h1, ordering_example_problem, set, v};
    use crate::graph::DirectedGraph;

    fn simple_problem(edges: &[(&str, &str)], verts: &[&str]) -> CausalProblem {
        let g = DirectedGraph::new(
            verts.iter().map(|l| v(l)),
            edges.iter().map(|(a, b)| (v(a), v(b))),
        )
        .unwrap();
        let observed = g.vertex_set();
        let costs = verts
            .iter()
            .filter(|l| **l != "A" && **l != "Y")
            .map(|l| (v(l), Cost::from(1)))
            .collect();
        CausalProblem::new(g, v("A"), v("Y"), BTreeSet::new(), observed, costs).unwrap()
    }

    #[test]
    fn causal_nodes_examples() {
        let p = simple_problem(&[("A", "Y")], &["A", "Y"]);
        assert_eq!(causal_nodes(&p).unwrap(), set(["Y"]));
        assert_eq!(causal_nodes(&worked_example_problem()).unwrap(), set(["M", "Y"]));
    }

    #[test]
    fn forbidden_examples() {
        assert_eq!(forbidden(&worked_example_problem()).unwrap(), set(["A", "Y", "M"]));
        assert_eq!(forbidden(&ordering_example_problem()).unwrap(), set(["A", "Y"]));
        let p = simple_problem(&[("A", "Y")], &["A", "Y", "W"]);
        assert_eq!(forbidden(&p).unwrap(), set(["A", "Y"]));
    }

    #[test]
    fn proper_backdoor_removes_first_edges() {
        let p = simple_problem(&[("A", "Y")], &["A", "Y"]);
        assert_eq!(proper_backdoor(&p).unwrap().edge_count(), 0);

        let worked_example = worked_example_problem();
        let pbd = proper_backdoor(&worked_example).unwrap();
        assert_eq!(pbd.edge_count(), worked_example.graph().edge_count() - 1);
        assert!(!pbd
            .edges()
            .contains(&(v("A"), v("M"))));

        let ordering_example = ordering_example_problem();
        let pbd3 = proper_backdoor(&ordering_example).unwrap();
        assert!(!pbd3.edges().contains(&(v("A"), v("Y"))));
        assert_eq!(pbd3.edge_count(), ordering_example.graph().edge_count() - 1);
    }

    #[test]
    fn moralize_collider() {
        let g = DirectedGraph::new(
            set(["U", "C", "W"]),
            [(v("U"), v("C")), (v("W"), v("C"))],
        )
        .unwrap();
        let m = moralize(&g).unwrap();
        assert!(m.has_edge(&v("U"), &v("C")));
        assert!(m.has_edge(&v("W"), &v("C")));
        assert!(m.has_edge(&v("U"), &v("W")));
        assert_eq!(m.edge_count(), 3);

        let single = DirectedGraph::new(set(["A", "Y"]), [(v("A"), v("Y"))]).unwrap();
        let m = moralize(&single).unwrap();
        assert!(m.has_edge(&v("A"), &v("Y")));
        assert_eq!(m.edge_count(), 1);
    }

    #[test]
    fn ignore_set_examples() {
        assert_eq!(ignore_set(&worked_example_problem()).unwrap(), set(["U", "M"]));
        assert_eq!(ignore_set(&ordering_example_problem()).unwrap(), BTreeSet::new());
    }

    #[test]
    fn project_out_identity_and_contraction() {
        let h = UndirectedGraph::new(
            set(["A", "U", "Y"]),
            [(v("A"), v("U")), (v("U"), v("Y"))],
        )
        .unwrap();
        assert_eq!(project_out(&h, &BTreeSet::new()).unwrap(), h);
        let projected = project_out(&h, &set(["U"])).unwrap();
        assert!(projected.has_edge(&v("A"), &v("Y")));
        assert_eq!(projected.edge_count(), 1);
    }

    #[test]
    fn build_h1_matches_fixture_graphs() {
        let e = build_h1(&worked_example_problem()).unwrap();
        assert_eq!(e.h1().vertex_set(), worked_example_h1().vertex_set());
        assert_eq!(e.h1().edges(), worked_example_h1().edges());
        assert_eq!(e.ignore(), &set(["U", "M"]));
        assert_eq!(
            e.candidates(),
            vec![v("B"), v("K"), v("Q"), v("R"), v("T"), v("X")]
        );

        let e3 = build_h1(&ordering_example_problem()).unwrap();
        assert_eq!(e3.h1().edges(), ordering_example_h1().edges());
    }

    #[test]
    fn build_h1_single_edge() {
        // the only path is the causal one, which the proper back-door graph
        // removes, so the empty set separates: nothing needs adjusting
        let p = simple_problem(&[("A", "Y")], &["A", "Y"]);
        let e = build_h1(&p).unwrap();
        assert!(e.h1().edges().is_empty());
        assert!(e.candidates().is_empty());
        assert!(e
            .h1()
            .is_separator(&v("A"), &v("Y"), &BTreeSet::new())
            .unwrap());
    }

    #[test]
    fn policy_vertices_adjacent_to_both_endpoints() {
        let e = build_h1(&worked_example_problem()).unwrap();
        assert!(e.h1().has_edge(&v("X"), &v("A")));
        assert!(e.h1().has_edge(&v("X"), &v("Y")));
    }

    #[test]
    fn dominates_worked_example() {
        let e = build_h1(&worked_example_problem()).unwrap();
        assert!(dominates(&e, &set(["X", "T", "R"]), &set(["X", "Q", "R"])).unwrap());
        assert!(dominates(&e, &set(["X", "T", "R"]), &set(["X", "K"])).unwrap());
        // reflexive
        assert!(dominates(&e, &set(["X", "K"]), &set(["X", "K"])).unwrap());
    }

    #[test]
    fn dominates_rejects_non_separator() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let err = dominates(&e, &set(["X"]), &set(["X", "K"])).unwrap_err();
        assert_eq!(err, Error::NotSeparator { arg: "z1".into() });
        let err = dominates(&e, &set(["X", "K"]), &set(["Q"])).unwrap_err();
        assert_eq!(err, Error::NotSeparator { arg: "z2".into() });
    }
}
