//! The node-split flow network and exact integral max-flow.
//!
//! Every vertex `W` of the efficiency graph becomes an internal arc
//! `W' -> W''` whose capacity is the (integer-scaled) cost of `W`; every
//! undirected edge `{U, W}` becomes the two external arcs `U'' -> W'` and
//! `W'' -> U'`. The source is the outcome's outlet `Y''`, the sink the
//! treatment's inlet `A'`. Vertex cuts of the undirected graph then
//! correspond to arc cuts of the network, so a min-cut computed by max-flow
//! yields a minimum-cost separator.
//!
//! Infinite capacities are materialized inside the solvers as a big-M value
//! strictly larger than the total candidate cost. A finite cut always
//! exists (cut all candidate internal arcs), so whenever a valid adjustment
//! set exists the max-flow value stays below big-M; a value at or above it
//! signals nonexistence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::adjustment::EfficiencyGraph;
use crate::cost::{common_denominator, Cost};
use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Which half of a split vertex a network node is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    /// `W'`: receives external arcs.
    Inlet,
    /// `W''`: emits external arcs.
    Outlet,
}

/// Arc capacity: a scaled non-negative integer or the infinite sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

/// A directed arc of the network.
#[derive(Clone, Debug)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// The node-split network built from an efficiency graph.
///
/// Node ids are canonical: the graph's vertices are sorted by label and
/// vertex `i` owns nodes `2i` (inlet, `W'`) and `2i + 1` (outlet, `W''`).
/// Two networks built from the same efficiency graph are identical, so cuts
/// from different computations are directly comparable.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    vertices: Vec<VertexId>, // sorted labels of the underlying graph
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<usize>>, // arc ids leaving each node
    in_arcs: Vec<Vec<usize>>,  // arc ids entering each node
    source: usize,
    sink: usize,
    big_m: u64,
    scale: i64, // common denominator used to make costs integral
}

/// A source-side node set: contains the source, excludes the sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    members: BTreeSet<usize>,
}

impl Cut {
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.contains(&node)
    }

    pub fn is_subset_of(&self, other: &Cut) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// A feasible flow: per-arc values plus the total into the sink.
#[derive(Clone, Debug)]
pub struct FlowState {
    flow: Vec<u64>,
    value: u64,
}

impl FlowState {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn arc_flow(&self, arc: usize) -> u64 {
        self.flow[arc]
    }
}

/// Max-flow solver selection. The preflow-push solver is the production
/// default; the shortest-augmenting-path solver exists for differential
/// testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    HighestLabelPreflowPush,
    ShortestAugmentingPath,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        2 * self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn big_m(&self) -> u64 {
        self.big_m
    }

    /// Common denominator by which rational costs were multiplied to become
    /// integer capacities.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// The underlying vertex and side of a node id.
    pub fn origin(&self, node: usize) -> (&VertexId, Side) {
        let side = if node % 2 == 0 { Side::Inlet } else { Side::Outlet };
        (&self.vertices[node / 2], side)
    }

    pub fn inlet(&self, v: &VertexId) -> Result<usize> {
        self.vertex_index(v).map(|i| 2 * i)
    }

    pub fn outlet(&self, v: &VertexId) -> Result<usize> {
        self.vertex_index(v).map(|i| 2 * i + 1)
    }

    fn vertex_index(&self, v: &VertexId) -> Result<usize> {
        self.vertices
            .binary_search(v)
            .map_err(|_| Error::UnknownVertex(v.to_string()))
    }

    /// Human-readable node name, `X'` or `X''`.
    pub fn node_name(&self, node: usize) -> String {
        let (v, side) = self.origin(node);
        match side {
            Side::Inlet => format!("{v}'"),
            Side::Outlet => format!("{v}''"),
        }
    }

    fn materialized(&self, cap: Capacity) -> u64 {
        match cap {
            Capacity::Finite(c) => c,
            Capacity::Infinite => self.big_m,
        }
    }

    /// Total capacity of the arcs leaving `s`; infinite if any of them is.
    pub fn cut_capacity(&self, s: &Cut) -> Capacity {
        let mut total: u64 = 0;
        for arc in &self.arcs {
            if s.contains(arc.from) && !s.contains(arc.to) {
                match arc.capacity {
                    Capacity::Infinite => return Capacity::Infinite,
                    Capacity::Finite(c) => total += c,
                }
            }
        }
        Capacity::Finite(total)
    }

    /// Solve max-flow with the requested solver. The returned flow is
    /// integral, feasible and conserves at every non-terminal node.
    pub fn max_flow_with(&self, solver: Solver) -> FlowState {
        match solver {
            Solver::HighestLabelPreflowPush => self.preflow_push(),
            Solver::ShortestAugmentingPath => self.shortest_augmenting_path(),
        }
    }

    /// Solve max-flow with the default (preflow-push) solver.
    pub fn max_flow(&self) -> FlowState {
        self.max_flow_with(Solver::HighestLabelPreflowPush)
    }

    /// The source side of the residual graph under `f`: every node reachable
    /// from the source by an augmenting path, plus the source itself. For a
    /// maximum flow this is the unique inclusion-minimal min-cut.
    pub fn residual_reachable(&self, f: &FlowState) -> Result<Cut> {
        let mut visited = vec![false; self.node_count()];
        visited[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(u) = stack.pop() {
            for &a in &self.out_arcs[u] {
                let arc = &self.arcs[a];
                if !visited[arc.to] && f.flow[a] < self.materialized(arc.capacity) {
                    visited[arc.to] = true;
                    stack.push(arc.to);
                }
            }
            for &a in &self.in_arcs[u] {
                let arc = &self.arcs[a];
                if !visited[arc.from] && f.flow[a] > 0 {
                    visited[arc.from] = true;
                    stack.push(arc.from);
                }
            }
        }
        if visited[self.sink] {
            return Err(Error::Internal(
                "sink is residual-reachable: flow is not maximum".to_string(),
            ));
        }
        Ok(Cut {
            members: visited
                .iter()
                .enumerate()
                .filter(|(_, &v)| v)
                .map(|(i, _)| i)
                .collect(),
        })
    }

    /// Build a cut value from explicit node ids. Validates the source/sink
    /// membership invariant.
    pub fn cut_from_nodes<I: IntoIterator<Item = usize>>(&self, nodes: I) -> Result<Cut> {
        let members: BTreeSet<usize> = nodes.into_iter().collect();
        if !members.contains(&self.source) {
            return Err(Error::Internal("cut must contain the source".to_string()));
        }
        if members.contains(&self.sink) {
            return Err(Error::Internal("cut must not contain the sink".to_string()));
        }
        if let Some(&max) = members.iter().max() {
            if max >= self.node_count() {
                return Err(Error::Internal(format!("node id {max} out of range")));
            }
        }
        Ok(Cut { members })
    }

    /// Render the network in DOT format with capacities as labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
        for node in 0..self.node_count() {
            let name = self.node_name(node);
            let role = if node == self.source {
                " [shape=doublecircle]"
            } else if node == self.sink {
                " [shape=doubleoctagon]"
            } else {
                ""
            };
            out.push_str(&format!("  \"{name}\"{role};\n"));
        }
        for arc in &self.arcs {
            let label = match arc.capacity {
                Capacity::Finite(c) => c.to_string(),
                Capacity::Infinite => "inf".to_string(),
            };
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{label}\"];\n",
                self.node_name(arc.from),
                self.node_name(arc.to)
            ));
        }
        out.push_str("}\n");
        out
    }

    // Highest-label preflow-push with the gap heuristic. Runs to a full
    // valid max flow (excess is returned to the source), not just to the
    // min-cut phase, because callers assert conservation everywhere.
    fn preflow_push(&self) -> FlowState {
        let n = self.node_count();
        let (first, edges) = self.residual_edges();
        let mut cap: Vec<u64> = edges.iter().map(|e| e.cap).collect();
        let mut excess: Vec<i128> = vec![0; n];
        let mut height: Vec<usize> = vec![0; n];
        height[self.source] = n;
        // heights never exceed 2n while a node still has excess
        let max_h = 2 * n + 1;
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_h + 1];
        let mut height_count: Vec<usize> = vec![0; max_h + 1];
        for &h in &height {
            height_count[h] += 1;
        }
        let mut cur: Vec<usize> = (0..n).map(|u| first[u]).collect();
        let mut highest = 0usize;

        let activate = |buckets: &mut Vec<Vec<usize>>, highest: &mut usize, node: usize, h: usize| {
            buckets[h].push(node);
            if h > *highest {
                *highest = h;
            }
        };

        // saturate source out-edges
        for e in first[self.source]..first[self.source + 1] {
            let c = cap[e];
            if c == 0 {
                continue;
            }
            let to = edges[e].to;
            cap[e] = 0;
            cap[edges[e].rev] += c;
            excess[to] += c as i128;
            excess[self.source] -= c as i128;
            if to != self.source && to != self.sink {
                activate(&mut buckets, &mut highest, to, height[to]);
            }
        }

        loop {
            while highest > 0 && buckets[highest].is_empty() {
                highest -= 1;
            }
            let u = match buckets[highest].pop() {
                Some(u) => u,
                None => break, // every bucket empty
            };
            // lazy deletion of stale queue entries
            if u == self.source || u == self.sink || excess[u] <= 0 || height[u] != highest {
                continue;
            }
            // discharge u completely
            while excess[u] > 0 {
                if cur[u] == first[u + 1] {
                    // relabel
                    let old = height[u];
                    let mut min_h = usize::MAX;
                    for e in first[u]..first[u + 1] {
                        if cap[e] > 0 {
                            min_h = min_h.min(height[edges[e].to]);
                        }
                    }
                    debug_assert!(min_h < max_h, "active node with no residual arc");
                    if min_h >= max_h {
                        break;
                    }
                    height_count[old] -= 1;
                    if height_count[old] == 0 && old < n {
                        // gap: nothing left at height `old`, so nodes
                        // stranded above it can never reach the sink
                        for w in 0..n {
                            if w != self.source && height[w] > old && height[w] < n {
                                height_count[height[w]] -= 1;
                                height[w] = n + 1;
                                height_count[n + 1] += 1;
                                if excess[w] > 0 && w != self.sink {
                                    activate(&mut buckets, &mut highest, w, n + 1);
                                }
                            }
                        }
                    }
                    height[u] = min_h + 1;
                    height_count[min_h + 1] += 1;
                    cur[u] = first[u];
                    continue;
                }
                let e = cur[u];
                let to = edges[e].to;
                if cap[e] > 0 && height[u] == height[to] + 1 {
                    let delta = (cap[e] as i128).min(excess[u]) as u64;
                    cap[e] -= delta;
                    cap[edges[e].rev] += delta;
                    excess[u] -= delta as i128;
                    excess[to] += delta as i128;
                    if to != self.source && to != self.sink && excess[to] > 0 {
                        activate(&mut buckets, &mut highest, to, height[to]);
                    }
                } else {
                    cur[u] += 1;
                }
            }
            if excess[u] > 0 {
                activate(&mut buckets, &mut highest, u, height[u]);
            }
        }

        self.flow_from_residual(&first, &edges, &cap)
    }

    // Edmonds-Karp: repeatedly augment along a shortest residual path.
    fn shortest_augmenting_path(&self) -> FlowState {
        let n = self.node_count();
        let (first, edges) = self.residual_edges();
        let mut cap: Vec<u64> = edges.iter().map(|e| e.cap).collect();
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; n]; // edge used to reach node
            let mut visited = vec![false; n];
            visited[self.source] = true;
            let mut queue = std::collections::VecDeque::from([self.source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for e in first[u]..first[u + 1] {
                    let to = edges[e].to;
                    if cap[e] > 0 && !visited[to] {
                        visited[to] = true;
                        pred[to] = Some(e);
                        if to == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !visited[self.sink] {
                break;
            }
            let mut bottleneck = u64::MAX;
            let mut node = self.sink;
            while node != self.source {
                let e = pred[node].unwrap();
                bottleneck = bottleneck.min(cap[e]);
                node = edges[edges[e].rev].to;
            }
            let mut node = self.sink;
            while node != self.source {
                let e = pred[node].unwrap();
                cap[e] -= bottleneck;
                cap[edges[e].rev] += bottleneck;
                node = edges[edges[e].rev].to;
            }
        }
        self.flow_from_residual(&first, &edges, &cap)
    }

    // CSR residual representation: each stored arc contributes a forward
    // edge at materialized capacity and a zero-capacity reverse edge.
    fn residual_edges(&self) -> (Vec<usize>, Vec<ResidualEdge>) {
        let n = self.node_count();
        let mut degree = vec![0usize; n];
        for arc in &self.arcs {
            degree[arc.from] += 1;
            degree[arc.to] += 1;
        }
        let mut first = vec![0usize; n + 1];
        for u in 0..n {
            first[u + 1] = first[u] + degree[u];
        }
        let mut slot = first.clone();
        let mut edges = vec![
            ResidualEdge {
                to: 0,
                rev: 0,
                cap: 0,
                arc: usize::MAX,
                forward: false,
            };
            2 * self.arcs.len()
        ];
        for (i, arc) in self.arcs.iter().enumerate() {
            let fwd = slot[arc.from];
            slot[arc.from] += 1;
            let bwd = slot[arc.to];
            slot[arc.to] += 1;
            edges[fwd] = ResidualEdge {
                to: arc.to,
                rev: bwd,
                cap: self.materialized(arc.capacity),
                arc: i,
                forward: true,
            };
            edges[bwd] = ResidualEdge {
                to: arc.from,
                rev: fwd,
                cap: 0,
                arc: i,
                forward: false,
            };
        }
        (first, edges)
    }

    fn flow_from_residual(
        &self,
        first: &[usize],
        edges: &[ResidualEdge],
        cap: &[u64],
    ) -> FlowState {
        let mut flow = vec![0u64; self.arcs.len()];
        for u in 0..self.node_count() {
            for e in first[u]..first[u + 1] {
                let edge = &edges[e];
                if edge.forward {
                    let original = self.materialized(self.arcs[edge.arc].capacity);
                    flow[edge.arc] = original - cap[e];
                }
            }
        }
        let mut value: i128 = 0;
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.to == self.sink {
                value += flow[i] as i128;
            }
            if arc.from == self.sink {
                value -= flow[i] as i128;
            }
        }
        debug_assert!(value >= 0);
        FlowState {
            flow,
            value: value.max(0) as u64,
        }
    }
}

#[derive(Clone)]
struct ResidualEdge {
    to: usize,
    rev: usize,
    cap: u64,
    arc: usize,
    forward: bool,
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Infinite => write!(f, "inf"),
        }
    }
}

/// One more than the total scaled candidate cost: the finite stand-in for
/// infinity. Any legitimate cut is strictly cheaper.
pub fn big_m(e: &EfficiencyGraph) -> Result<u64> {
    let costs: Vec<Cost> = e.candidate_costs().values().cloned().collect();
    let denom = common_denominator(&costs)?;
    let mut total: u64 = 1;
    for c in &costs {
        let scaled = c
            .numer()
            .checked_mul(denom / c.denom())
            .ok_or(Error::CostOverflow)?;
        total = total
            .checked_add(u64::try_from(scaled).map_err(|_| Error::CostOverflow)?)
            .ok_or(Error::CostOverflow)?;
    }
    Ok(total)
}

/// Build the node-split network for an efficiency graph.
pub fn build_network(e: &EfficiencyGraph) -> Result<FlowNetwork> {
    let h = e.h1();
    let vertices: Vec<VertexId> = h.vertices().cloned().collect();
    let costs: Vec<Cost> = e.candidate_costs().values().cloned().collect();
    let denom = common_denominator(&costs)?;
    let scaled: BTreeMap<&VertexId, u64> = e
        .candidate_costs()
        .iter()
        .map(|(w, c)| {
            let s = c
                .numer()
                .checked_mul(denom / c.denom())
                .ok_or(Error::CostOverflow)?;
            Ok((w, u64::try_from(s).map_err(|_| Error::CostOverflow)?))
        })
        .collect::<Result<_>>()?;
    let big = 1 + scaled.values().try_fold(0u64, |acc, &c| {
        acc.checked_add(c).ok_or(Error::CostOverflow)
    })?;

    let n = 2 * vertices.len();
    let mut arcs = Vec::with_capacity(vertices.len() + 2 * h.edge_count());
    for (i, w) in vertices.iter().enumerate() {
        let capacity = match scaled.get(w) {
            Some(&c) => Capacity::Finite(c),
            None => Capacity::Infinite, // treatment and outcome
        };
        arcs.push(Arc {
            from: 2 * i,
            to: 2 * i + 1,
            capacity,
        });
    }
    for (u, w) in h.edges() {
        let ui = vertices.binary_search(&u).expect("vertex present");
        let wi = vertices.binary_search(&w).expect("vertex present");
        arcs.push(Arc {
            from: 2 * ui + 1,
            to: 2 * wi,
            capacity: Capacity::Infinite,
        });
        arcs.push(Arc {
            from: 2 * wi + 1,
            to: 2 * ui,
            capacity: Capacity::Infinite,
        });
    }
    let mut out_arcs = vec![Vec::new(); n];
    let mut in_arcs = vec![Vec::new(); n];
    for (i, arc) in arcs.iter().enumerate() {
        out_arcs[arc.from].push(i);
        in_arcs[arc.to].push(i);
    }
    let source = 2 * vertices.binary_search(e.outcome()).map_err(|_| {
        Error::Internal("outcome missing from efficiency graph".to_string())
    })? + 1;
    let sink = 2 * vertices.binary_search(e.treatment()).map_err(|_| {
        Error::Internal("treatment missing from efficiency graph".to_string())
    })?;
    Ok(FlowNetwork {
        vertices,
        arcs,
        out_arcs,
        in_arcs,
        source,
        sink,
        big_m: big,
        scale: denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjustment::build_h1;
    use crate::fixtures::{worked_example_problem, set, v};
    use crate::graph::UndirectedGraph;
    use std::collections::BTreeMap;

    fn path_graph(cost_w: i64) -> EfficiencyGraph {
        let h = UndirectedGraph::new(
            set(["A", "W", "Y"]),
            [(v("A"), v("W")), (v("W"), v("Y"))],
        )
        .unwrap();
        let mut costs = BTreeMap::new();
        costs.insert(v("W"), Cost::from(cost_w));
        EfficiencyGraph::from_parts(h, v("A"), v("Y"), costs).unwrap()
    }

    fn edge_graph() -> EfficiencyGraph {
        let h = UndirectedGraph::new(set(["A", "Y"]), [(v("A"), v("Y"))]).unwrap();
        EfficiencyGraph::from_parts(h, v("A"), v("Y"), BTreeMap::new()).unwrap()
    }

    #[test]
    fn network_shape_worked_example() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        assert_eq!(n.node_count(), 16);
        assert_eq!(n.arc_count(), 8 + 24);
        assert_eq!(n.source(), n.outlet(&v("Y")).unwrap());
        assert_eq!(n.sink(), n.inlet(&v("A")).unwrap());
        // one internal arc per vertex
        let internal: Vec<&Arc> = n.arcs().iter().filter(|a| a.from % 2 == 0).collect();
        assert_eq!(internal.len(), 8);
    }

    #[test]
    fn network_single_edge() {
        let n = build_network(&edge_graph()).unwrap();
        assert_eq!(n.node_count(), 4);
        assert_eq!(n.arc_count(), 2 + 2);
        assert!(n
            .arcs()
            .iter()
            .all(|a| a.capacity == Capacity::Infinite));
    }

    #[test]
    fn network_single_candidate() {
        let e = path_graph(5);
        let n = build_network(&e).unwrap();
        let finite: Vec<&Arc> = n
            .arcs()
            .iter()
            .filter(|a| matches!(a.capacity, Capacity::Finite(_)))
            .collect();
        assert_eq!(finite.len(), 1);
        assert_eq!(finite[0].capacity, Capacity::Finite(5));
        assert_eq!(finite[0].from, n.inlet(&v("W")).unwrap());
        assert_eq!(finite[0].to, n.outlet(&v("W")).unwrap());
    }

    #[test]
    fn big_m_values() {
        let e = build_h1(&worked_example_problem()).unwrap();
        assert_eq!(big_m(&e).unwrap(), 11); // 1 + (1+4+2+1+1+1)
        assert_eq!(big_m(&path_graph(5)).unwrap(), 6);
        assert_eq!(big_m(&edge_graph()).unwrap(), 1);
    }

    #[test]
    fn max_flow_worked_example_is_three() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        for solver in [Solver::HighestLabelPreflowPush, Solver::ShortestAugmentingPath] {
            let f = n.max_flow_with(solver);
            assert_eq!(f.value(), 3, "{solver:?}");
        }
    }

    #[test]
    fn max_flow_single_bottleneck() {
        let n = build_network(&path_graph(5)).unwrap();
        assert_eq!(n.max_flow().value(), 5);
    }

    #[test]
    fn max_flow_no_finite_cut() {
        let n = build_network(&edge_graph()).unwrap();
        assert!(n.max_flow().value() >= n.big_m());
    }

    #[test]
    fn residual_reachable_worked_example() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        for solver in [Solver::HighestLabelPreflowPush, Solver::ShortestAugmentingPath] {
            let f = n.max_flow_with(solver);
            let cut = n.residual_reachable(&f).unwrap();
            let expected: BTreeSet<usize> = [
                n.outlet(&v("Y")).unwrap(),
                n.inlet(&v("X")).unwrap(),
                n.inlet(&v("T")).unwrap(),
                n.inlet(&v("R")).unwrap(),
            ]
            .into();
            assert_eq!(cut.members(), &expected, "{solver:?}");
        }
    }

    #[test]
    fn residual_reachable_single_candidate() {
        let n = build_network(&path_graph(5)).unwrap();
        let f = n.max_flow();
        let cut = n.residual_reachable(&f).unwrap();
        let expected: BTreeSet<usize> =
            [n.outlet(&v("Y")).unwrap(), n.inlet(&v("W")).unwrap()].into();
        assert_eq!(cut.members(), &expected);
    }

    #[test]
    fn cut_capacity_worked_example() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        let f = n.max_flow();
        let cut = n.residual_reachable(&f).unwrap();
        assert_eq!(n.cut_capacity(&cut), Capacity::Finite(3));
        // source alone: every out-arc is external, hence infinite
        let solo = n.cut_from_nodes([n.source()]).unwrap();
        assert_eq!(n.cut_capacity(&solo), Capacity::Infinite);
        // everything but the sink: the sink's in-arcs are infinite
        let all_but_sink = n
            .cut_from_nodes((0..n.node_count()).filter(|&x| x != n.sink()))
            .unwrap();
        assert_eq!(n.cut_capacity(&all_but_sink), Capacity::Infinite);
    }

    #[test]
    fn flow_is_feasible_and_conserving() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        for solver in [Solver::HighestLabelPreflowPush, Solver::ShortestAugmentingPath] {
            let f = n.max_flow_with(solver);
            let mut net = vec![0i128; n.node_count()];
            for (i, arc) in n.arcs().iter().enumerate() {
                let cap = match arc.capacity {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => n.big_m(),
                };
                assert!(f.arc_flow(i) <= cap);
                net[arc.from] -= f.arc_flow(i) as i128;
                net[arc.to] += f.arc_flow(i) as i128;
            }
            for u in 0..n.node_count() {
                if u != n.source() && u != n.sink() {
                    assert_eq!(net[u], 0, "conservation at {}", n.node_name(u));
                }
            }
            assert_eq!(net[n.sink()], f.value() as i128);
        }
    }

    #[test]
    fn saturation_on_the_min_cut() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        let f = n.max_flow();
        let cut = n.residual_reachable(&f).unwrap();
        for (i, arc) in n.arcs().iter().enumerate() {
            if cut.contains(arc.from) && !cut.contains(arc.to) {
                let cap = match arc.capacity {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => n.big_m(),
                };
                assert_eq!(f.arc_flow(i), cap);
            }
            if !cut.contains(arc.from) && cut.contains(arc.to) {
                assert_eq!(f.arc_flow(i), 0);
            }
        }
    }

    #[test]
    fn dot_dump_mentions_every_arc() {
        let e = build_h1(&worked_example_problem()).unwrap();
        let n = build_network(&e).unwrap();
        let dot = n.to_dot();
        assert!(dot.contains("digraph"));
        assert_eq!(dot.matches(" -> ").count(), n.arc_count());
        assert!(dot.contains("\"Y''\""));
    }
}
