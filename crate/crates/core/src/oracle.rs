//! Slow, independent reference implementations used to cross-check the flow
//! pipeline, plus a seeded random instance generator.
//!
//! Nothing here shares code with the production path: separators are found
//! by brute-force subset enumeration and min-cuts by enumerating closed node
//! sets, so agreement between the two sides is meaningful evidence.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adjustment::EfficiencyGraph;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::flow::{Capacity, Cut, FlowNetwork};
use crate::graph::{DirectedGraph, VertexId};
use crate::problem::CausalProblem;

/// Largest candidate count the separator oracle will enumerate.
pub const SEPARATOR_CAP: usize = 20;

/// Largest number of free components the min-cut oracle will enumerate.
pub const CUT_CAP: usize = 24;

/// Everything the brute-force separator enumeration knows about an
/// efficiency graph.
#[derive(Clone, Debug)]
pub struct SeparatorCatalog {
    /// Every candidate subset that separates treatment from outcome.
    pub all_separators: Vec<BTreeSet<VertexId>>,
    /// The inclusion-minimal separators.
    pub minimal: Vec<BTreeSet<VertexId>>,
    /// All separators of minimum total cost.
    pub minimum_cost: Vec<BTreeSet<VertexId>>,
    /// All separators of minimum cardinality.
    pub minimum_cardinality: Vec<BTreeSet<VertexId>>,
    /// The minimum total cost, when any separator exists.
    pub min_cost_value: Option<Cost>,
}

/// Enumerate every subset of the candidate vertices and classify it.
/// Refuses graphs with more than [`SEPARATOR_CAP`] candidates.
pub fn separator_catalog(e: &EfficiencyGraph) -> Result<SeparatorCatalog> {
    let candidates = e.candidates();
    if candidates.len() > SEPARATOR_CAP {
        return Err(Error::OracleCapExceeded {
            limit: SEPARATOR_CAP,
            actual: candidates.len(),
        });
    }
    let h = e.h1();
    let a = e.treatment();
    let y = e.outcome();
    let mut all_separators = Vec::new();
    for mask in 0u32..(1u32 << candidates.len()) {
        let z: BTreeSet<VertexId> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, w)| w.clone())
            .collect();
        if h.is_separator(a, y, &z)? {
            all_separators.push(z);
        }
    }
    let mut minimal = Vec::new();
    for z in &all_separators {
        if h.is_minimal_separator(a, y, z)? {
            minimal.push(z.clone());
        }
    }
    let mut min_cost_value = None;
    let mut minimum_cost = Vec::new();
    let mut minimum_cardinality = Vec::new();
    if !all_separators.is_empty() {
        let costs: Vec<Cost> = all_separators
            .iter()
            .map(|z| e.cost_of_set(z))
            .collect::<Result<_>>()?;
        let best_cost = costs.iter().min().cloned().unwrap();
        minimum_cost = all_separators
            .iter()
            .zip(&costs)
            .filter(|(_, c)| **c == best_cost)
            .map(|(z, _)| z.clone())
            .collect();
        let best_card = all_separators.iter().map(|z| z.len()).min().unwrap();
        minimum_cardinality = all_separators
            .iter()
            .filter(|z| z.len() == best_card)
            .cloned()
            .collect();
        min_cost_value = Some(best_cost);
    }
    Ok(SeparatorCatalog {
        all_separators,
        minimal,
        minimum_cost,
        minimum_cardinality,
        min_cost_value,
    })
}

/// All finite cuts of minimum capacity, found without running max-flow.
///
/// A finite cut must be closed under the infinite arcs: if it contains a
/// node with an infinite out-arc it must contain that arc's head. Closed
/// sets respect the strongly connected components of the infinite-arc
/// digraph, so the search runs over the components that are neither forced
/// in (infinite-reachable from the source) nor forced out (able to reach
/// the sink along infinite arcs). Returns an empty list when the source
/// reaches the sink through infinite arcs, i.e. when no finite cut exists.
pub fn enumerate_min_cuts(n: &FlowNetwork) -> Result<Vec<Cut>> {
    let nodes = n.node_count();
    let mut inf_out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut inf_in: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for arc in n.arcs() {
        if arc.capacity == Capacity::Infinite {
            inf_out[arc.from].push(arc.to);
            inf_in[arc.to].push(arc.from);
        }
    }
    let comp = strongly_connected_components(&inf_out, &inf_in);
    let comp_count = comp.iter().max().map_or(0, |&c| c + 1);
    let mut comp_nodes: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (node, &c) in comp.iter().enumerate() {
        comp_nodes[c].push(node);
    }
    let mut comp_succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comp_count];
    for (u, outs) in inf_out.iter().enumerate() {
        for &w in outs {
            if comp[u] != comp[w] {
                comp_succ[comp[u]].insert(comp[w]);
            }
        }
    }
    // forced in: closure of the source component under successors
    let mut forced_in = vec![false; comp_count];
    let mut stack = vec![comp[n.source()]];
    forced_in[comp[n.source()]] = true;
    while let Some(c) = stack.pop() {
        for &d in &comp_succ[c] {
            if !forced_in[d] {
                forced_in[d] = true;
                stack.push(d);
            }
        }
    }
    // forced out: everything with an infinite path to the sink component
    let mut forced_out = vec![false; comp_count];
    let mut stack = vec![comp[n.sink()]];
    forced_out[comp[n.sink()]] = true;
    while let Some(c) = stack.pop() {
        for (d, succ) in comp_succ.iter().enumerate() {
            if !forced_out[d] && succ.contains(&c) {
                forced_out[d] = true;
                stack.push(d);
            }
        }
    }
    if forced_in[comp[n.sink()]] {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..comp_count)
        .filter(|&c| !forced_in[c] && !forced_out[c])
        .collect();
    if free.len() > CUT_CAP {
        return Err(Error::OracleCapExceeded {
            limit: CUT_CAP,
            actual: free.len(),
        });
    }
    let free_pos: BTreeMap<usize, usize> =
        free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut best: Option<u64> = None;
    let mut winners: Vec<Cut> = Vec::new();
    'subset: for mask in 0u32..(1u32 << free.len()) {
        let chosen = |c: usize| -> bool {
            forced_in[c] || free_pos.get(&c).is_some_and(|&i| mask >> i & 1 == 1)
        };
        // closure: every successor of a chosen component is chosen
        for (i, &c) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &d in &comp_succ[c] {
                    if !chosen(d) {
                        continue 'subset;
                    }
                }
            }
        }
        let members: BTreeSet<usize> =
            (0..nodes).filter(|&node| chosen(comp[node])).collect();
        let cut = n.cut_from_nodes(members)?;
        match n.cut_capacity(&cut) {
            Capacity::Infinite => {
                return Err(Error::Internal(
                    "closed set produced an infinite cut".to_string(),
                ))
            }
            Capacity::Finite(cap) => {
                if best.is_none_or(|b| cap < b) {
                    best = Some(cap);
                    winners = vec![cut];
                } else if best == Some(cap) {
                    winners.push(cut);
                }
            }
        }
    }
    Ok(winners)
}

// Kosaraju's algorithm, iterative on adjacency lists.
fn strongly_connected_components(out: &[Vec<usize>], inn: &[Vec<usize>]) -> Vec<usize> {
    let n = out.len();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < out[u].len() {
                let w = out[u][*next];
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &inn[u] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    comp
}

/// Parameters for the seeded random instance generator.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub n_vertices: usize,
    pub edge_prob: f64,
    pub hidden_frac: f64,
    pub policy_prob: f64,
    /// Inclusive integer cost range.
    pub cost_range: (i64, i64),
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n_vertices: 10,
            edge_prob: 0.3,
            hidden_frac: 0.2,
            policy_prob: 0.2,
            cost_range: (1, 5),
        }
    }
}

const RETRY_BUDGET: usize = 64;

/// Deterministically generate a valid problem instance from a seed. The
/// vertex labels `V0, V1, ...` form a topological order. Resamples a bounded
/// number of times when a draw violates an invariant (e.g. no vertex is a
/// proper descendant of the chosen treatment).
pub fn random_instance(seed: u64, config: &GeneratorConfig) -> Result<CausalProblem> {
    if config.n_vertices < 3 {
        return Err(Error::InvalidProblem(
            "generator needs at least three vertices".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        if let Some(p) = try_instance(&mut rng, config)? {
            return Ok(p);
        }
    }
    Err(Error::RetryBudgetExhausted { seed })
}

fn try_instance(rng: &mut ChaCha8Rng, config: &GeneratorConfig) -> Result<Option<CausalProblem>> {
    let n = config.n_vertices;
    let labels: Vec<VertexId> = (0..n)
        .map(|i| VertexId::new(format!("V{i}")).expect("label is non-empty"))
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(config.edge_prob) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let g = DirectedGraph::new(labels.iter().cloned(), edges)?;
    let a = labels[rng.gen_range(0..n)].clone();
    let de_a = g.descendants(&[a.clone()].into())?;
    let proper: Vec<&VertexId> = de_a.iter().filter(|w| **w != a).collect();
    if proper.is_empty() {
        return Ok(None);
    }
    let y = proper[rng.gen_range(0..proper.len())].clone();
    let mut observed: BTreeSet<VertexId> = [a.clone(), y.clone()].into();
    for w in &labels {
        if *w != a && *w != y && !rng.gen_bool(config.hidden_frac) {
            observed.insert(w.clone());
        }
    }
    let mut policy = BTreeSet::new();
    for w in &labels {
        let eligible = observed.contains(w) && !de_a.contains(w);
        if eligible && rng.gen_bool(config.policy_prob) {
            policy.insert(w.clone());
        }
    }
    let (lo, hi) = config.cost_range;
    let costs: BTreeMap<VertexId, Cost> = observed
        .iter()
        .filter(|w| **w != a && **w != y)
        .map(|w| (w.clone(), Cost::from(rng.gen_range(lo..=hi))))
        .collect();
    Ok(Some(CausalProblem::new(g, a, y, policy, observed, costs)?))
}
