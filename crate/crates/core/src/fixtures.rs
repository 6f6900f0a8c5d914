//! Small example instances used across tests, benches and documentation.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::cost::Cost;
use crate::graph::{DirectedGraph, UndirectedGraph, VertexId};
use crate::problem::CausalProblem;

/// Shorthand constructor for a vertex label.
pub fn v(label: &str) -> VertexId {
    VertexId::new(label).expect("fixture labels are non-empty")
}

/// Shorthand constructor for a label set.
pub fn set<'a, I: IntoIterator<Item = &'a str>>(labels: I) -> BTreeSet<VertexId> {
    labels.into_iter().map(v).collect()
}

fn costs<'a, I: IntoIterator<Item = (&'a str, i64)>>(items: I) -> BTreeMap<VertexId, Cost> {
    items.into_iter().map(|(l, c)| (v(l), Cost::from(c))).collect()
}

/// Ten-vertex example with one hidden variable `U` and policy set `{X}`.
pub fn worked_example_graph() -> DirectedGraph {
    let verts = set(["X", "A", "K", "M", "B", "Q", "R", "T", "Y", "U", "F"]);
    let edges = [
        ("X", "A"),
        ("K", "A"),
        ("B", "K"),
        ("Q", "K"),
        ("A", "M"),
        ("B", "R"),
        ("Q", "T"),
        ("R", "Y"),
        ("T", "Y"),
        ("M", "Y"),
        ("U", "Y"),
        ("U", "F"),
    ];
    DirectedGraph::new(verts, edges.into_iter().map(|(a, b)| (v(a), v(b)))).unwrap()
}

/// The standard costing of the ten-vertex example.
pub fn worked_example_problem() -> CausalProblem {
    let mut observed = worked_example_graph().vertex_set();
    observed.remove(&v("U"));
    CausalProblem::new(
        worked_example_graph(),
        v("A"),
        v("Y"),
        set(["X"]),
        observed,
        costs([("X", 1), ("K", 4), ("B", 2), ("Q", 1), ("R", 1), ("T", 1), ("F", 1), ("M", 1)]),
    )
    .unwrap()
}

/// Cost variant of the ten-vertex example: `B` cheap, `R` expensive.
pub fn worked_example_problem_cost_variant() -> CausalProblem {
    let mut observed = worked_example_graph().vertex_set();
    observed.remove(&v("U"));
    CausalProblem::new(
        worked_example_graph(),
        v("A"),
        v("Y"),
        set(["X"]),
        observed,
        costs([("X", 1), ("K", 4), ("B", 1), ("Q", 1), ("R", 2), ("T", 1), ("F", 1), ("M", 1)]),
    )
    .unwrap()
}

/// The efficiency graph the ten-vertex example reduces to.
pub fn worked_example_h1() -> UndirectedGraph {
    let verts = set(["X", "A", "K", "B", "Q", "R", "T", "Y"]);
    let edges = [
        ("B", "R"),
        ("B", "Q"),
        ("B", "K"),
        ("Q", "K"),
        ("K", "A"),
        ("K", "X"),
        ("Q", "T"),
        ("R", "Y"),
        ("R", "T"),
        ("T", "Y"),
        ("X", "A"),
        ("X", "Y"),
    ];
    UndirectedGraph::new(verts, edges.into_iter().map(|(a, b)| (v(a), v(b)))).unwrap()
}

/// Six-vertex fully observed example where the minimum-cardinality answer
/// beats the minimum-cost answer on efficiency.
pub fn ordering_example_graph() -> DirectedGraph {
    let verts = set(["A", "B", "Q", "T", "R", "Y"]);
    let edges = [
        ("B", "A"),
        ("Q", "A"),
        ("B", "T"),
        ("Q", "R"),
        ("T", "Y"),
        ("R", "Y"),
        ("A", "Y"),
    ];
    DirectedGraph::new(verts, edges.into_iter().map(|(a, b)| (v(a), v(b)))).unwrap()
}

pub fn ordering_example_problem() -> CausalProblem {
    CausalProblem::new(
        ordering_example_graph(),
        v("A"),
        v("Y"),
        BTreeSet::new(),
        ordering_example_graph().vertex_set(),
        costs([("B", 1), ("Q", 1), ("T", 2), ("R", 2)]),
    )
    .unwrap()
}

pub fn ordering_example_h1() -> UndirectedGraph {
    let verts = set(["A", "B", "Q", "T", "R", "Y"]);
    let edges = [
        ("B", "A"),
        ("Q", "A"),
        ("B", "Q"),
        ("B", "T"),
        ("Q", "R"),
        ("T", "Y"),
        ("T", "R"),
        ("R", "Y"),
    ];
    UndirectedGraph::new(verts, edges.into_iter().map(|(a, b)| (v(a), v(b)))).unwrap()
}

/// A layered confounding structure: `depth` layers of `width` vertices
/// between the treatment's parents and the outcome's parents, three parents
/// per vertex, unit costs. Used for scaling tests and benchmarks.
pub fn layered_problem(width: usize, depth: usize) -> CausalProblem {
    let name = |layer: usize, i: usize| v(&format!("L{layer:03}N{i:02}"));
    let mut vertices = vec![v("A"), v("Y")];
    let mut edges = vec![(v("A"), v("Y"))];
    for layer in 0..depth {
        for i in 0..width {
            let w = name(layer, i);
            vertices.push(w.clone());
            if layer == 0 {
                edges.push((w.clone(), v("A")));
            } else {
                for k in 0..3 {
                    edges.push((w.clone(), name(layer - 1, (i + k) % width)));
                }
            }
            if layer == depth - 1 {
                edges.push((w.clone(), v("Y")));
            }
        }
    }
    let g = DirectedGraph::new(vertices.iter().cloned(), edges).unwrap();
    let observed: BTreeSet<VertexId> = vertices.iter().cloned().collect();
    let costs = vertices
        .iter()
        .filter(|w| **w != v("A") && **w != v("Y"))
        .map(|w| (w.clone(), Cost::from(1)))
        .collect();
    CausalProblem::new(g, v("A"), v("Y"), BTreeSet::new(), observed, costs).unwrap()
}

/// The ten-vertex example in the input document format.
pub fn worked_example_document() -> &'static str {
    "\
# ten-vertex example, one hidden variable
edge X A
edge K A
edge B K
edge Q K
edge A M
edge B R
edge Q T
edge R Y
edge T Y
edge M Y
edge U Y
edge U F
treatment A
outcome Y
policy X
latent U
cost X 1
cost K 4
cost B 2
cost Q 1
cost R 1
cost T 1
cost F 1
"
}

pub fn ordering_example_document() -> &'static str {
    "\
edge B A
edge Q A
edge B T
edge Q R
edge T Y
edge R Y
edge A Y
treatment A
outcome Y
cost B 1
cost Q 1
cost T 2
cost R 2
"
}
