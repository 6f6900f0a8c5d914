//! Command-line front end for the adjustment-set optimizer.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use adjflow::oracle::{enumerate_min_cuts, random_instance, separator_catalog, GeneratorConfig};
use adjflow::optimizer::map_h;
use adjflow::{
    build_h1, build_network, format_cost, optimal_min_cardinality, optimal_min_cost,
    parse_document, serialize_problem, validate_adjustment, AdjustmentResult, CausalProblem,
    ValidationReport, VertexId,
};

#[derive(Parser)]
#[command(name = "adjflow", version, about = "Minimum-cost covariate adjustment sets")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the optimal minimum-cost adjustment set.
    Optimal(InputArgs),
    /// Compute the optimal minimum-cardinality adjustment set.
    MinCard(InputArgs),
    /// Check whether a candidate set is a valid adjustment set.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated vertex labels of the candidate set.
        #[arg(long, value_delimiter = ',', num_args = 0.., required = true)]
        set: Vec<String>,
    },
    /// Run the brute-force reference enumeration and report its catalog.
    Oracle {
        #[command(flatten)]
        input: OptionalInputArgs,
        /// Generate a random instance instead of reading a file.
        #[arg(long)]
        random: bool,
        /// Seed for the random instance.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of vertices in the random instance.
        #[arg(long, default_value_t = 10)]
        vertices: usize,
        /// Probability of each forward edge.
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        /// Probability that a non-endpoint vertex is hidden.
        #[arg(long, default_value_t = 0.2)]
        hidden_frac: f64,
        /// Probability that an eligible vertex joins the policy set.
        #[arg(long, default_value_t = 0.2)]
        policy_prob: f64,
        /// Smallest integer cost.
        #[arg(long, default_value_t = 1)]
        cost_min: i64,
        /// Largest integer cost.
        #[arg(long, default_value_t = 5)]
        cost_max: i64,
    },
    /// Print the efficiency graph the search runs on.
    DumpH1(InputArgs),
    /// Print the flow network in DOT format.
    DumpNetwork(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input document; `-` reads standard input.
    file: PathBuf,
}

#[derive(Args)]
struct OptionalInputArgs {
    /// Input document; `-` reads standard input.
    file: Option<PathBuf>,
}

fn main() -> ExitCode {
    // die quietly when the consumer of a pipe goes away, e.g. `... | head`
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    match &cli.command {
        Command::Optimal(input) => {
            let p = load(&input.file)?;
            let r = optimal_min_cost(&p).map_err(|e| e.to_string())?;
            print_result(&r, cli.json);
        }
        Command::MinCard(input) => {
            let p = load(&input.file)?;
            let r = optimal_min_cardinality(&p).map_err(|e| e.to_string())?;
            print_result(&r, cli.json);
        }
        Command::Validate { input, set } => {
            let p = load(&input.file)?;
            let z: BTreeSet<VertexId> = set
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| VertexId::new(s.clone()).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let report = validate_adjustment(&p, &z).map_err(|e| e.to_string())?;
            print_validation(&report, cli.json);
        }
        Command::Oracle {
            input,
            random,
            seed,
            vertices,
            edge_prob,
            hidden_frac,
            policy_prob,
            cost_min,
            cost_max,
        } => {
            let p = if *random {
                let config = GeneratorConfig {
                    n_vertices: *vertices,
                    edge_prob: *edge_prob,
                    hidden_frac: *hidden_frac,
                    policy_prob: *policy_prob,
                    cost_range: (*cost_min, *cost_max),
                };
                random_instance(*seed, &config).map_err(|e| e.to_string())?
            } else {
                let file = input
                    .file
                    .as_ref()
                    .ok_or("oracle needs an input file or --random")?;
                load(file)?
            };
            run_oracle(&p, *random, cli.json)?;
        }
        Command::DumpH1(input) => {
            let p = load(&input.file)?;
            let e = build_h1(&p).map_err(|err| err.to_string())?;
            if cli.json {
                let edges: Vec<[String; 2]> = e
                    .h1()
                    .edges()
                    .into_iter()
                    .map(|(u, w)| [u.to_string(), w.to_string()])
                    .collect();
                let costs: serde_json::Map<String, serde_json::Value> = e
                    .candidate_costs()
                    .iter()
                    .map(|(w, c)| (w.to_string(), json!(format_cost(c))))
                    .collect();
                let out = json!({
                    "vertices": labels(e.h1().vertices()),
                    "edges": edges,
                    "treatment": e.treatment().to_string(),
                    "outcome": e.outcome().to_string(),
                    "projected_out": labels(e.ignore().iter()),
                    "candidate_costs": costs,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("treatment: {}", e.treatment());
                println!("outcome: {}", e.outcome());
                println!("projected out: {}", join(e.ignore().iter()));
                for (u, w) in e.h1().edges() {
                    println!("edge {u} {w}");
                }
                for (w, c) in e.candidate_costs() {
                    println!("cost {w} {}", format_cost(c));
                }
            }
        }
        Command::DumpNetwork(input) => {
            let p = load(&input.file)?;
            let e = build_h1(&p).map_err(|err| err.to_string())?;
            let n = build_network(&e).map_err(|err| err.to_string())?;
            print!("{}", n.to_dot());
        }
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<CausalProblem, String> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
    };
    let parsed = parse_document(&text).map_err(|e| e.to_string())?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.problem)
}

fn labels<'a, I: Iterator<Item = &'a VertexId>>(iter: I) -> Vec<String> {
    iter.map(|w| w.to_string()).collect()
}

fn join<'a, I: Iterator<Item = &'a VertexId>>(iter: I) -> String {
    labels(iter).join(" ")
}

fn print_result(r: &AdjustmentResult, as_json: bool) {
    if as_json {
        let out = json!({
            "exists": r.exists,
            "optimal_set": labels(r.optimal_set.iter()),
            "total_cost": if r.exists { Some(format_cost(&r.total_cost)) } else { None },
            "flow_value": r.flow_value,
            "h1_vertices": r.h1_size.0,
            "h1_edges": r.h1_size.1,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if r.exists {
        println!("exists: true");
        println!("set: {}", join(r.optimal_set.iter()));
        println!("cost: {}", format_cost(&r.total_cost));
    } else {
        println!("exists: false");
        println!("no valid adjustment set exists for this instance");
    }
}

fn print_validation(report: &ValidationReport, as_json: bool) {
    match report {
        ValidationReport::NotCheckable { outside } => {
            if as_json {
                let out = json!({
                    "checkable": false,
                    "outside": labels(outside.iter()),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("checkable: false");
                println!("outside the efficiency graph: {}", join(outside.iter()));
            }
        }
        ValidationReport::Checked {
            valid,
            minimal,
            cost,
            witness,
        } => {
            if as_json {
                let out = json!({
                    "checkable": true,
                    "valid": valid,
                    "minimal": minimal,
                    "cost": format_cost(cost),
                    "witness": witness.as_ref().map(|p| labels(p.iter())),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("valid: {valid}");
                println!("minimal: {minimal}");
                println!("cost: {}", format_cost(cost));
                if let Some(path) = witness {
                    println!("open path: {}", join(path.iter()));
                }
            }
        }
    }
}

fn run_oracle(p: &CausalProblem, echo_instance: bool, as_json: bool) -> Result<(), String> {
    let e = build_h1(p).map_err(|err| err.to_string())?;
    let catalog = separator_catalog(&e).map_err(|err| err.to_string())?;
    let n = build_network(&e).map_err(|err| err.to_string())?;
    let cuts = enumerate_min_cuts(&n).map_err(|err| err.to_string())?;
    // distinct node cuts can cross the same internal arcs; report each
    // resulting set once
    let cut_sets: Vec<BTreeSet<VertexId>> = cuts
        .iter()
        .map(|c| map_h(&n, c).map_err(|err| err.to_string()))
        .collect::<Result<BTreeSet<_>, _>>()?
        .into_iter()
        .collect();
    if as_json {
        let sets = |v: &[BTreeSet<VertexId>]| -> Vec<Vec<String>> {
            v.iter().map(|z| labels(z.iter())).collect()
        };
        let out = json!({
            "instance": if echo_instance { Some(serialize_problem(p)) } else { None },
            "separators": catalog.all_separators.len(),
            "minimal": sets(&catalog.minimal),
            "minimum_cost": sets(&catalog.minimum_cost),
            "minimum_cardinality": sets(&catalog.minimum_cardinality),
            "min_cost_value": catalog.min_cost_value.as_ref().map(format_cost),
            "min_cut_sets": sets(&cut_sets),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        if echo_instance {
            print!("{}", serialize_problem(p));
            println!("---");
        }
        println!("separators: {}", catalog.all_separators.len());
        println!("minimal separators: {}", catalog.minimal.len());
        match &catalog.min_cost_value {
            Some(value) => {
                println!("minimum cost: {}", format_cost(value));
                for z in &catalog.minimum_cost {
                    println!("minimum-cost set: {}", join(z.iter()));
                }
                for z in &catalog.minimum_cardinality {
                    println!("minimum-cardinality set: {}", join(z.iter()));
                }
                for z in &cut_sets {
                    println!("min-cut set: {}", join(z.iter()));
                }
            }
            None => println!("no valid adjustment set exists for this instance"),
        }
    }
    Ok(())
}
