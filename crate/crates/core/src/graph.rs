//! Directed and undirected graph primitives.
//!
//! Vertices are identified by string labels; all public operations take and
//! return label sets. Traversals iterate neighbors in sorted label order so
//! results and diagnostics are deterministic. Graph values are immutable
//! after construction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier: a non-empty label, unique within a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(VertexId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite directed graph with no self-loops and set-semantics edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    labels: Vec<VertexId>, // sorted
    index: BTreeMap<VertexId, usize>,
    children: Vec<Vec<usize>>, // sorted
    parents: Vec<Vec<usize>>,  // sorted
}

impl DirectedGraph {
    pub fn new<I, J>(vertices: I, edges: J) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        J: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut labels: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        labels.sort();
        let index: BTreeMap<VertexId, usize> = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let n = labels.len();
        let mut children_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut parents_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (u, w) in edges {
            if u == w {
                return Err(Error::SelfLoop(u.to_string()));
            }
            let ui = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let wi = *index.get(&w).ok_or_else(|| Error::UnknownVertex(w.to_string()))?;
            children_sets[ui].insert(wi);
            parents_sets[wi].insert(ui);
        }
        Ok(DirectedGraph {
            labels,
            index,
            children: children_sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            parents: parents_sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|c| c.len()).sum()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.labels.iter()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.labels.iter().cloned().collect()
    }

    /// Edges as ordered label pairs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, cs) in self.children.iter().enumerate() {
            for &w in cs {
                out.push((self.labels[u].clone(), self.labels[w].clone()));
            }
        }
        out
    }

    pub fn children_of(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.idx(v)?;
        Ok(self.children[i].iter().map(|&j| self.labels[j].clone()).collect())
    }

    pub fn parents_of(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.idx(v)?;
        Ok(self.parents[i].iter().map(|&j| self.labels[j].clone()).collect())
    }

    pub(crate) fn idx(&self, v: &VertexId) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub(crate) fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub(crate) fn children_idx(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub(crate) fn parents_idx(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    /// True iff the graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.parents.iter().map(|p| p.len()).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0usize;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for &w in &self.children[u] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == n
    }

    /// All vertices with a directed path into some member of `s`, including
    /// the members themselves.
    pub fn ancestors(&self, s: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        self.reach(s, |g, i| g.parents_idx(i))
    }

    /// All vertices reachable by directed paths from members of `s`,
    /// including the members themselves.
    pub fn descendants(&self, s: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        self.reach(s, |g, i| g.children_idx(i))
    }

    fn reach<'a, F>(&'a self, s: &BTreeSet<VertexId>, step: F) -> Result<BTreeSet<VertexId>>
    where
        F: Fn(&'a DirectedGraph, usize) -> &'a [usize],
    {
        let mut visited = vec![false; self.vertex_count()];
        let mut stack = Vec::new();
        for v in s {
            let i = self.idx(v)?;
            if !visited[i] {
                visited[i] = true;
                stack.push(i);
            }
        }
        while let Some(u) = stack.pop() {
            for &w in step(self, u) {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(visited
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| self.labels[i].clone())
            .collect())
    }

    /// Subgraph on `keep` with the edges whose endpoints both survive.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<DirectedGraph> {
        for v in keep {
            self.idx(v)?;
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|(u, w)| keep.contains(u) && keep.contains(w));
        DirectedGraph::new(keep.iter().cloned(), edges)
    }
}

/// A finite undirected graph with no self-loops; `{U,W}` and `{W,U}` are the
/// same edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    labels: Vec<VertexId>, // sorted
    index: BTreeMap<VertexId, usize>,
    neighbors: Vec<Vec<usize>>, // sorted
}

impl UndirectedGraph {
    pub fn new<I, J>(vertices: I, edges: J) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        J: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut labels: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        labels.sort();
        let index: BTreeMap<VertexId, usize> = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let n = labels.len();
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (u, w) in edges {
            if u == w {
                return Err(Error::SelfLoop(u.to_string()));
            }
            let ui = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let wi = *index.get(&w).ok_or_else(|| Error::UnknownVertex(w.to_string()))?;
            sets[ui].insert(wi);
            sets[wi].insert(ui);
        }
        Ok(UndirectedGraph {
            labels,
            index,
            neighbors: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.labels.iter()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.labels.iter().cloned().collect()
    }

    /// Edges as unordered pairs, normalized so the smaller label comes first.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.neighbors.iter().enumerate() {
            for &w in ns {
                if u < w {
                    out.push((self.labels[u].clone(), self.labels[w].clone()));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: &VertexId, w: &VertexId) -> bool {
        match (self.index.get(u), self.index.get(w)) {
            (Some(&ui), Some(&wi)) => self.neighbors[ui].binary_search(&wi).is_ok(),
            _ => false,
        }
    }

    pub fn neighbors_of(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.idx(v)?;
        Ok(self.neighbors[i].iter().map(|&j| self.labels[j].clone()).collect())
    }

    pub(crate) fn idx(&self, v: &VertexId) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub(crate) fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub(crate) fn neighbors_idx(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// True iff removing `z` disconnects `a` from `y`. Disconnected `a`, `y`
    /// with empty `z` counts: the path condition is vacuously true.
    pub fn is_separator(&self, a: &VertexId, y: &VertexId, z: &BTreeSet<VertexId>) -> Result<bool> {
        Ok(self.path_avoiding(a, y, z)?.is_none())
    }

    /// A path from `a` to `y` avoiding `z`, if one exists. Used both for
    /// separator checks and to report witness paths in diagnostics.
    pub fn path_avoiding(
        &self,
        a: &VertexId,
        y: &VertexId,
        z: &BTreeSet<VertexId>,
    ) -> Result<Option<Vec<VertexId>>> {
        if a == y {
            return Err(Error::InvalidProblem(format!(
                "endpoints coincide: `{a}`"
            )));
        }
        if z.contains(a) {
            return Err(Error::SeparatorContainsEndpoint(a.to_string()));
        }
        if z.contains(y) {
            return Err(Error::SeparatorContainsEndpoint(y.to_string()));
        }
        let ai = self.idx(a)?;
        let yi = self.idx(y)?;
        let mut blocked = vec![false; self.vertex_count()];
        for v in z {
            blocked[self.idx(v)?] = true;
        }
        let mut prev: Vec<Option<usize>> = vec![None; self.vertex_count()];
        let mut visited = vec![false; self.vertex_count()];
        visited[ai] = true;
        let mut queue = VecDeque::from([ai]);
        while let Some(u) = queue.pop_front() {
            if u == yi {
                let mut path = vec![yi];
                let mut cur = yi;
                while let Some(p) = prev[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Ok(Some(path.into_iter().map(|i| self.labels[i].clone()).collect()));
            }
            for &w in &self.neighbors[u] {
                if !visited[w] && !blocked[w] {
                    visited[w] = true;
                    prev[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    /// True iff `z` separates and no single-vertex deletion of `z` still
    /// separates.
    pub fn is_minimal_separator(
        &self,
        a: &VertexId,
        y: &VertexId,
        z: &BTreeSet<VertexId>,
    ) -> Result<bool> {
        if !self.is_separator(a, y, z)? {
            return Ok(false);
        }
        for w in z {
            let mut smaller = z.clone();
            smaller.remove(w);
            if self.is_separator(a, y, &smaller)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Set-to-set separation: every path between `from` and `to` intersects
    /// `cond`. Endpoints inside `cond` are trivially blocked.
    pub(crate) fn sets_separated(
        &self,
        from: &BTreeSet<VertexId>,
        to: &BTreeSet<VertexId>,
        cond: &BTreeSet<VertexId>,
    ) -> Result<bool> {
        let mut blocked = vec![false; self.vertex_count()];
        for v in cond {
            blocked[self.idx(v)?] = true;
        }
        let mut target = vec![false; self.vertex_count()];
        for v in to {
            let i = self.idx(v)?;
            if !blocked[i] {
                target[i] = true;
            }
        }
        let mut visited = vec![false; self.vertex_count()];
        let mut stack = Vec::new();
        for v in from {
            let i = self.idx(v)?;
            if !blocked[i] {
                if target[i] {
                    return Ok(false);
                }
                visited[i] = true;
                stack.push(i);
            }
        }
        while let Some(u) = stack.pop() {
            for &w in &self.neighbors[u] {
                if !visited[w] && !blocked[w] {
                    if target[w] {
                        return Ok(false);
                    }
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{set, v};

    fn chain() -> DirectedGraph {
        DirectedGraph::new(
            [v("A"), v("B"), v("C")],
            [(v("A"), v("B")), (v("B"), v("C"))],
        )
        .unwrap()
    }

    #[test]
    fn acyclicity() {
        assert!(chain().is_acyclic());
        let two_cycle =
            DirectedGraph::new([v("A"), v("B")], [(v("A"), v("B")), (v("B"), v("A"))]).unwrap();
        assert!(!two_cycle.is_acyclic());
        assert!(crate::fixtures::worked_example_graph().is_acyclic());
    }

    #[test]
    fn rejects_self_loops_and_unknown_endpoints() {
        assert_eq!(
            DirectedGraph::new([v("A")], [(v("A"), v("A"))]).unwrap_err(),
            Error::SelfLoop("A".into())
        );
        assert!(matches!(
            DirectedGraph::new([v("A")], [(v("A"), v("B"))]).unwrap_err(),
            Error::UnknownVertex(_)
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = DirectedGraph::new(
            [v("A"), v("B")],
            [(v("A"), v("B")), (v("A"), v("B"))],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn ancestors_basics() {
        let g = DirectedGraph::new([v("A"), v("Y")], [(v("A"), v("Y"))]).unwrap();
        assert_eq!(g.ancestors(&set(["Y"])).unwrap(), set(["A", "Y"]));
        assert_eq!(g.ancestors(&set(["A"])).unwrap(), set(["A"]));
        assert!(matches!(
            g.ancestors(&set(["Z"])).unwrap_err(),
            Error::UnknownVertex(_)
        ));
    }

    #[test]
    fn worked_example_ancestors_of_a_y_l() {
        let g = crate::fixtures::worked_example_graph();
        let anc = g.ancestors(&set(["A", "Y", "X"])).unwrap();
        let mut expected = g.vertex_set();
        expected.remove(&v("F"));
        assert_eq!(anc, expected);
    }

    #[test]
    fn descendants_basics() {
        let g = DirectedGraph::new([v("A"), v("Y")], [(v("A"), v("Y"))]).unwrap();
        assert_eq!(g.descendants(&set(["A"])).unwrap(), set(["A", "Y"]));
        assert_eq!(g.descendants(&BTreeSet::new()).unwrap(), BTreeSet::new());
        let worked_example = crate::fixtures::worked_example_graph();
        assert_eq!(worked_example.descendants(&set(["M"])).unwrap(), set(["M", "Y"]));
    }

    #[test]
    fn induced_subgraph_identity_and_empty() {
        let g = chain();
        assert_eq!(g.induced_subgraph(&g.vertex_set()).unwrap(), g);
        let empty = g.induced_subgraph(&BTreeSet::new()).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_worked_example_drops_f() {
        let g = crate::fixtures::worked_example_graph();
        let mut keep = g.vertex_set();
        keep.remove(&v("F"));
        let sub = g.induced_subgraph(&keep).unwrap();
        assert_eq!(sub.vertex_count(), g.vertex_count() - 1);
        // the only incident edge was U -> F
        assert_eq!(sub.edge_count(), g.edge_count() - 1);
        assert!(!sub.contains(&v("F")));
    }

    #[test]
    fn separator_direct_edge() {
        let h = UndirectedGraph::new([v("A"), v("Y")], [(v("A"), v("Y"))]).unwrap();
        assert!(!h.is_separator(&v("A"), &v("Y"), &BTreeSet::new()).unwrap());
    }

    #[test]
    fn separator_worked_example_h1() {
        let h = crate::fixtures::worked_example_h1();
        assert!(h.is_separator(&v("A"), &v("Y"), &set(["X", "T", "R"])).unwrap());
        // path A-K-B-R-Y dodges {X, Q}
        assert!(!h.is_separator(&v("A"), &v("Y"), &set(["X", "Q"])).unwrap());
        let witness = h.path_avoiding(&v("A"), &v("Y"), &set(["X", "Q"])).unwrap().unwrap();
        assert_eq!(witness.first().unwrap(), &v("A"));
        assert_eq!(witness.last().unwrap(), &v("Y"));
        for step in &witness {
            assert!(!set(["X", "Q"]).contains(step));
        }
    }

    #[test]
    fn separator_rejects_endpoint_in_z() {
        let h = crate::fixtures::worked_example_h1();
        assert_eq!(
            h.is_separator(&v("A"), &v("Y"), &set(["A"])).unwrap_err(),
            Error::SeparatorContainsEndpoint("A".into())
        );
    }

    #[test]
    fn minimal_separator_worked_example() {
        let h = crate::fixtures::worked_example_h1();
        assert!(h.is_minimal_separator(&v("A"), &v("Y"), &set(["X", "T", "R"])).unwrap());
        // {X, K} already separates, so this superset is not minimal
        assert!(h.is_separator(&v("A"), &v("Y"), &set(["X", "K", "Q", "R"])).unwrap());
        assert!(!h.is_minimal_separator(&v("A"), &v("Y"), &set(["X", "K", "Q", "R"])).unwrap());
    }

    #[test]
    fn empty_set_separates_disconnected_vertices() {
        let h = UndirectedGraph::new([v("A"), v("Y")], []).unwrap();
        assert!(h.is_separator(&v("A"), &v("Y"), &BTreeSet::new()).unwrap());
        assert!(h.is_minimal_separator(&v("A"), &v("Y"), &BTreeSet::new()).unwrap());
    }
}
