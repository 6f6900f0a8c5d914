//! The line-oriented input document format.
//!
//! One directive per line: `edge U W`, `treatment A`, `outcome Y`,
//! `policy L...`, `latent U...`, `cost W 2.5`. Blank lines are skipped and
//! `#` starts a comment. The vertex universe is everything mentioned by any
//! directive. Observed vertices without a `cost` line default to cost one; a
//! warning is emitted when such a vertex could actually appear in an
//! adjustment set.

use std::collections::{BTreeMap, BTreeSet};

use crate::adjustment::ignore_set;
use crate::cost::{format_cost, parse_cost, Cost};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::problem::CausalProblem;

/// A parsed problem plus non-fatal diagnostics.
#[derive(Clone, Debug)]
pub struct ParsedProblem {
    pub problem: CausalProblem,
    pub warnings: Vec<String>,
}

/// Parse a problem document. Errors carry the one-based line number.
pub fn parse_document(text: &str) -> Result<ParsedProblem> {
    let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut treatment: Option<(usize, VertexId)> = None;
    let mut outcome: Option<(usize, VertexId)> = None;
    let mut policy: BTreeSet<VertexId> = BTreeSet::new();
    let mut latent: BTreeSet<VertexId> = BTreeSet::new();
    let mut costs: BTreeMap<VertexId, (usize, Cost)> = BTreeMap::new();

    let fail = |line: usize, message: String| Error::Parse { line, message };
    let vertex = |line: usize, token: &str| {
        VertexId::new(token).map_err(|_| fail(line, "empty vertex label".to_string()))
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim_end_matches('\r');
        let content = match content.find('#') {
            Some(pos) => &content[..pos],
            None => content,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        match directive {
            "edge" => {
                let [u, w] = args else {
                    return Err(fail(line, format!("`edge` takes two labels, got {}", args.len())));
                };
                let u = vertex(line, u)?;
                let w = vertex(line, w)?;
                vertices.insert(u.clone());
                vertices.insert(w.clone());
                edges.push((u, w));
            }
            "treatment" | "outcome" => {
                let [label] = args else {
                    return Err(fail(line, format!("`{directive}` takes one label")));
                };
                let v = vertex(line, label)?;
                vertices.insert(v.clone());
                let slot = if directive == "treatment" { &mut treatment } else { &mut outcome };
                if let Some((prev, _)) = slot {
                    return Err(fail(
                        line,
                        format!("duplicate `{directive}` (first given on line {prev})"),
                    ));
                }
                *slot = Some((line, v));
            }
            "policy" | "latent" => {
                if args.is_empty() {
                    return Err(fail(line, format!("`{directive}` needs at least one label")));
                }
                let target = if directive == "policy" { &mut policy } else { &mut latent };
                for label in args {
                    let v = vertex(line, label)?;
                    vertices.insert(v.clone());
                    target.insert(v);
                }
            }
            "cost" => {
                let [label, literal] = args else {
                    return Err(fail(line, "`cost` takes a label and a value".to_string()));
                };
                let v = vertex(line, label)?;
                let c = parse_cost(literal).map_err(|m| fail(line, m))?;
                vertices.insert(v.clone());
                if let Some((prev, _)) = costs.get(&v) {
                    return Err(fail(
                        line,
                        format!("duplicate cost for `{v}` (first given on line {prev})"),
                    ));
                }
                costs.insert(v, (line, c));
            }
            other => {
                return Err(fail(line, format!("unknown directive `{other}`")));
            }
        }
    }

    let (_, treatment) = treatment.ok_or_else(|| fail(0, "missing `treatment` directive".to_string()))?;
    let (_, outcome) = outcome.ok_or_else(|| fail(0, "missing `outcome` directive".to_string()))?;
    let mut warnings = Vec::new();
    let observed: BTreeSet<VertexId> = vertices.difference(&latent).cloned().collect();
    let mut final_costs: BTreeMap<VertexId, Cost> = BTreeMap::new();
    let mut defaulted: BTreeSet<VertexId> = BTreeSet::new();
    for (w, (_, c)) in &costs {
        if *w == treatment || *w == outcome {
            warnings.push(format!("ignoring cost for `{w}`: treatment and outcome have no cost"));
        } else if latent.contains(w) {
            warnings.push(format!("ignoring cost for `{w}`: vertex is latent"));
        } else {
            final_costs.insert(w.clone(), *c);
        }
    }
    for w in &observed {
        if *w != treatment && *w != outcome && !final_costs.contains_key(w) {
            final_costs.insert(w.clone(), Cost::from(1));
            defaulted.insert(w.clone());
        }
    }
    let graph = DirectedGraph::new(vertices.iter().cloned(), edges)?;
    let problem = CausalProblem::new(graph, treatment, outcome, policy, observed, final_costs)?;
    if !defaulted.is_empty() {
        // only warn for defaulted vertices that can actually end up in an
        // adjustment set
        let mut roots = problem.policy().clone();
        roots.insert(problem.treatment().clone());
        roots.insert(problem.outcome().clone());
        let anc = problem.graph().ancestors(&roots)?;
        let ignored = ignore_set(&problem)?;
        for w in &defaulted {
            if anc.contains(w) && !ignored.contains(w) {
                warnings.push(format!("no cost given for candidate `{w}`; defaulting to 1"));
            }
        }
    }
    Ok(ParsedProblem { problem, warnings })
}

/// Render a problem in the document format, canonically ordered. Parsing the
/// output reproduces the problem.
pub fn serialize_problem(p: &CausalProblem) -> String {
    // every vertex is mentioned by some directive: edges cover connected
    // vertices, role/latent/cost lines cover the rest
    let mut out = String::new();
    for (u, w) in p.graph().edges() {
        out.push_str(&format!("edge {u} {w}\n"));
    }
    out.push_str(&format!("treatment {}\n", p.treatment()));
    out.push_str(&format!("outcome {}\n", p.outcome()));
    if !p.policy().is_empty() {
        let labels: Vec<String> = p.policy().iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("policy {}\n", labels.join(" ")));
    }
    let hidden = p.hidden();
    if !hidden.is_empty() {
        let labels: Vec<String> = hidden.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("latent {}\n", labels.join(" ")));
    }
    for (w, c) in p.costs() {
        out.push_str(&format!("cost {w} {}\n", format_cost(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{worked_example_document, worked_example_problem, ordering_example_document, set, v};

    #[test]
    fn parses_the_example_documents() {
        let parsed = parse_document(worked_example_document()).unwrap();
        let p = &parsed.problem;
        assert_eq!(p.treatment(), &v("A"));
        assert_eq!(p.outcome(), &v("Y"));
        assert_eq!(p.policy(), &set(["X"]));
        assert_eq!(p.hidden(), set(["U"]));
        assert_eq!(p.graph().edge_count(), 12);
        // M has no cost line but is projected out, so no warning
        assert_eq!(p.costs().get(&v("M")), Some(&Cost::from(1)));
        assert!(parsed.warnings.is_empty(), "{:?}", parsed.warnings);

        let parsed3 = parse_document(ordering_example_document()).unwrap();
        assert_eq!(parsed3.problem.graph().edge_count(), 7);
        assert!(parsed3.warnings.is_empty());
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let text = "edge A Y\r\n\r\n# full line comment\ntreatment A # trailing comment\noutcome Y\r\n";
        let parsed = parse_document(text).unwrap();
        assert_eq!(parsed.problem.graph().edge_count(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_document("edge A Y\nbogus Z\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "unknown directive `bogus`".into() });

        let err = parse_document("edge A\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = parse_document("edge A Y\ntreatment A\ntreatment A\noutcome Y\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));

        let err = parse_document("edge A Y\ntreatment A\noutcome Y\ncost A x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));

        let err =
            parse_document("edge A Y\nedge W Y\ntreatment A\noutcome Y\ncost W 1\ncost W 2\n")
                .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }));
    }

    #[test]
    fn missing_role_directives() {
        assert!(parse_document("edge A Y\noutcome Y\n").is_err());
        assert!(parse_document("edge A Y\ntreatment A\n").is_err());
    }

    #[test]
    fn semantic_errors_surface() {
        // cycle
        let err = parse_document("edge A Y\nedge Y A\ntreatment A\noutcome Y\n").unwrap_err();
        assert_eq!(err, Error::Cyclic);
        // policy vertex downstream of treatment
        let err = parse_document(
            "edge A M\nedge M Y\nedge A Y\ntreatment A\noutcome Y\npolicy M\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidProblem(_)));
    }

    #[test]
    fn warnings_for_discarded_and_defaulted_costs() {
        let text = "edge W A\nedge W Y\nedge A Y\nedge U Y\ntreatment A\noutcome Y\nlatent U\ncost A 2\ncost U 3\n";
        let parsed = parse_document(text).unwrap();
        assert_eq!(parsed.warnings.len(), 3);
        assert!(parsed.warnings.iter().any(|w| w.contains("`A`")));
        assert!(parsed.warnings.iter().any(|w| w.contains("`U`")));
        // W is a real candidate with no cost line
        assert!(parsed.warnings.iter().any(|w| w.contains("`W`") && w.contains("defaulting")));
        assert_eq!(parsed.problem.costs().get(&v("W")), Some(&Cost::from(1)));
    }

    #[test]
    fn round_trip() {
        for p in [worked_example_problem(), crate::fixtures::ordering_example_problem()] {
            let text = serialize_problem(&p);
            let back = parse_document(&text).unwrap().problem;
            assert_eq!(back.graph().edges(), p.graph().edges());
            assert_eq!(back.treatment(), p.treatment());
            assert_eq!(back.outcome(), p.outcome());
            assert_eq!(back.policy(), p.policy());
            assert_eq!(back.observed(), p.observed());
            assert_eq!(back.costs(), p.costs());
        }
    }

    #[test]
    fn rational_costs_round_trip_through_text() {
        let text = "edge W A\nedge W Y\nedge A Y\ntreatment A\noutcome Y\ncost W 2.5\n";
        let p = parse_document(text).unwrap().problem;
        assert_eq!(p.costs().get(&v("W")), Some(&Cost::new(5, 2)));
        let back = parse_document(&serialize_problem(&p)).unwrap().problem;
        assert_eq!(back.costs(), p.costs());
    }
}
