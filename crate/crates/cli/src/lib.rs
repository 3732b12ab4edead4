//! Command-line shell for the embedded-parameter tools.
//!
//! Every command reads JSON files (see [`io`]), prints a plain-text report
//! or, with `--json`, a machine-readable object, and exits 0 on success,
//! 1 when validation or verification fails, and 2 on usage errors
//! (unreadable or malformed files, bad flags). All output is deterministic:
//! the same inputs produce the same bytes.

pub mod io;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use ising_embed::cuts::{connected_cuts, tree_edge_cuts};
use ising_embed::embedding::{build_embedded_structure, validate_embedding, Embedding};
use ising_embed::graph::Graph;
use ising_embed::ising::{brute_force_minimum, c_max, evaluate, IsingModel, SpinAssignment};
use ising_embed::lp::{build_lp, dump_lp};
use ising_embed::oracle::{
    is_synchronized, majority_vote, representative, verify_equivalence, verify_solution_gap,
};
use ising_embed::preprocess::preprocess;
use ising_embed::setter::{baseline_uniform, set_parameters, SetterOptions};
use ising_embed::subproblem::{assign_outer_strengths, extract_instance, OuterStrategy};
use ising_embed::testgen::{
    random_connected_graph, random_embedding, random_model, random_tree, rng_from_seed,
};

use io::{EmbeddingFile, ProblemFile, ResultFile, SamplesFile};

/// A command failure: the message for stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    /// 1 for semantic failures (invalid models, failed verification),
    /// 2 for usage failures (unreadable files, malformed JSON, bad flags).
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ising_embed::Error> for Failure {
    fn from(e: ising_embed::Error) -> Failure {
        Failure::semantic(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "ising-embed",
    version,
    about = "Equivalent Ising parameters for minor embeddings"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of the plain report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check that an embedding maps a problem correctly onto hardware.
    Validate {
        /// Problem file (vertices, weighted edges, weights).
        #[arg(short = 'p', long)]
        problem: PathBuf,
        /// Embedding file (hardware graph and image map).
        #[arg(short = 'e', long)]
        embedding: PathBuf,
    },
    /// Fix dominated vertices and fold their weights into the neighbors.
    Preprocess {
        #[arg(short = 'p', long)]
        problem: PathBuf,
        /// Fix only on strict domination (|weight| > incident strength).
        #[arg(long)]
        strict: bool,
        /// Write the reduced problem here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Compute per-qubit weights and the minimal uniform inner coupling.
    SetParams {
        #[arg(short = 'p', long)]
        problem: PathBuf,
        #[arg(short = 'e', long)]
        embedding: PathBuf,
        /// Half-gap: spin flips along any inner cut cost at least 2*gamma.
        #[arg(long)]
        gamma: f64,
        /// Replace the half-gap for one vertex (repeatable).
        #[arg(long, value_name = "VERTEX=GAMMA")]
        gamma_override: Vec<String>,
        /// How logical edge strengths spread over their couplers.
        #[arg(long, default_value = "uniform-split", value_parser = ["uniform-split", "single-edge"])]
        strategy: String,
        /// Couple each image along its full subgraph, not a spanning tree.
        #[arg(long)]
        no_tree: bool,
        /// Write each vertex's cut program to DIR/<vertex>.lp.
        #[arg(long, value_name = "DIR")]
        dump_lp: Option<PathBuf>,
        /// Write the result file here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a result file with the exhaustive oracles.
    Verify {
        #[arg(short = 'r', long)]
        result: PathBuf,
        /// Also brute-force both models and check full equivalence.
        #[arg(long)]
        end_to_end: bool,
    },
    /// Brute-force the exact minimum of a problem file.
    Solve {
        #[arg(short = 'p', long)]
        problem: PathBuf,
    },
    /// Map hardware samples from a result file back to logical spins.
    Deembed {
        #[arg(short = 'r', long)]
        result: PathBuf,
        /// Samples file: one spin map per sample over the hardware vertices.
        #[arg(short = 's', long)]
        samples: PathBuf,
        /// Resolve broken images by majority vote instead of rejecting them.
        #[arg(long)]
        majority: bool,
    },
    /// Put optimal parameters side by side with the uniform baseline.
    Compare {
        #[arg(short = 'p', long)]
        problem: PathBuf,
        #[arg(short = 'e', long)]
        embedding: PathBuf,
        #[arg(long)]
        gamma: f64,
        /// Baseline couples every inner edge at -factor * C_max.
        #[arg(long, default_value_t = 2.0)]
        factor: f64,
    },
    /// Generate a random tree problem.
    GenTree {
        #[arg(long)]
        seed: u64,
        #[arg(short = 'n', long, default_value_t = 8)]
        vertices: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Generate a random problem together with a random chain embedding.
    GenInstance {
        #[arg(long)]
        seed: u64,
        #[arg(short = 'n', long, default_value_t = 4)]
        vertices: usize,
        /// Extra edges beyond a spanning tree.
        #[arg(long, default_value_t = 2)]
        extra: usize,
        /// Longest hardware chain per vertex.
        #[arg(long, default_value_t = 2)]
        max_chain: usize,
        #[arg(short = 'p', long)]
        problem_out: PathBuf,
        #[arg(short = 'e', long)]
        embedding_out: PathBuf,
    },
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { problem, embedding } => cmd_validate(cli.json, problem, embedding),
        Command::Preprocess {
            problem,
            strict,
            output,
        } => cmd_preprocess(cli.json, problem, *strict, output.as_deref()),
        Command::SetParams {
            problem,
            embedding,
            gamma,
            gamma_override,
            strategy,
            no_tree,
            dump_lp,
            output,
        } => cmd_set_params(
            cli.json,
            problem,
            embedding,
            *gamma,
            gamma_override,
            strategy,
            *no_tree,
            dump_lp.as_deref(),
            output.as_deref(),
        ),
        Command::Verify { result, end_to_end } => cmd_verify(cli.json, result, *end_to_end),
        Command::Solve { problem } => cmd_solve(cli.json, problem),
        Command::Deembed {
            result,
            samples,
            majority,
        } => cmd_deembed(cli.json, result, samples, *majority),
        Command::Compare {
            problem,
            embedding,
            gamma,
            factor,
        } => cmd_compare(cli.json, problem, embedding, *gamma, *factor),
        Command::GenTree {
            seed,
            vertices,
            output,
        } => cmd_gen_tree(*seed, *vertices, output.as_deref()),
        Command::GenInstance {
            seed,
            vertices,
            extra,
            max_chain,
            problem_out,
            embedding_out,
        } => cmd_gen_instance(
            *seed,
            *vertices,
            *extra,
            *max_chain,
            problem_out,
            embedding_out,
        ),
    }
}

fn load_problem(path: &Path, require_nonzero: bool) -> Result<IsingModel, Failure> {
    io::load::<ProblemFile>(path)?.to_model(require_nonzero)
}

fn load_embedding(path: &Path) -> Result<(Graph, Embedding), Failure> {
    io::load::<EmbeddingFile>(path)?.to_parts()
}

fn format_spins(assignment: &SpinAssignment) -> String {
    assignment
        .iter()
        .map(|(id, spin)| format!("{id}={spin:+}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn spins_json(assignment: &SpinAssignment) -> serde_json::Value {
    json!(assignment.iter().collect::<BTreeMap<_, _>>())
}

fn cmd_validate(as_json: bool, problem: &Path, embedding: &Path) -> Result<i32, Failure> {
    let model = load_problem(problem, true)?;
    let (hardware, phi) = load_embedding(embedding)?;
    let report = validate_embedding(model.graph(), &hardware, &phi)?;
    let failures: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
    if as_json {
        print!(
            "{}",
            io::to_pretty(&json!({
                "valid": report.is_valid(),
                "failures": failures,
            }))
        );
    } else if report.is_valid() {
        println!(
            "embedding valid: {} vertices onto {} qubits",
            model.graph().vertex_count(),
            hardware.vertex_count()
        );
    } else {
        for f in &failures {
            println!("invalid: {f}");
        }
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_preprocess(
    as_json: bool,
    problem: &Path,
    strict: bool,
    output: Option<&Path>,
) -> Result<i32, Failure> {
    let model = load_problem(problem, true)?;
    let result = preprocess(&model, strict)?;
    let reduced = ProblemFile::from_model(&result.reduced);
    if let Some(path) = output {
        io::save(path, &reduced)?;
    }
    if as_json {
        let events: Vec<_> = result
            .events
            .iter()
            .map(|e| {
                json!({
                    "vertex": e.vertex,
                    "weight_at_fix": e.weight_at_fix,
                    "spin": e.spin,
                    "folds": e.folds,
                })
            })
            .collect();
        print!(
            "{}",
            io::to_pretty(&json!({
                "strict": result.strict,
                "fixed": result.fixed,
                "offset": result.offset,
                "events": events,
                "reduced": reduced,
            }))
        );
    } else {
        if result.events.is_empty() {
            println!("nothing to fix");
        }
        for e in &result.events {
            println!(
                "fix {} = {:+} (weight {} at fixing time)",
                e.vertex, e.spin, e.weight_at_fix
            );
            for (id, delta) in &e.folds {
                println!("  fold {delta:+} into {id}");
            }
        }
        println!("offset {}", result.offset);
        println!(
            "reduced problem: {} vertices, {} edges",
            result.reduced.graph().vertex_count(),
            result.reduced.graph().edge_count()
        );
        if let Some(path) = output {
            println!("wrote {}", path.display());
        }
    }
    Ok(0)
}

fn parse_gamma_overrides(specs: &[String]) -> Result<BTreeMap<String, f64>, Failure> {
    let mut overrides = BTreeMap::new();
    for spec in specs {
        let (vertex, value) = spec
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected VERTEX=GAMMA, got `{spec}`")))?;
        let gamma: f64 = value
            .parse()
            .map_err(|_| Failure::usage(format!("`{value}` is not a number in `{spec}`")))?;
        if overrides.insert(vertex.to_string(), gamma).is_some() {
            return Err(Failure::usage(format!(
                "half-gap for `{vertex}` given twice"
            )));
        }
    }
    Ok(overrides)
}

/// Rebuilds each vertex's cut program exactly as the setter solves it and
/// writes it to `dir/<vertex>.lp`.
fn dump_programs(
    dir: &Path,
    model: &IsingModel,
    hardware: &Graph,
    phi: &Embedding,
    opts: &SetterOptions,
) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
    let structure = build_embedded_structure(model.graph(), hardware, phi)?;
    let assignment = assign_outer_strengths(model, &structure, opts.strategy)?;
    for v in model.graph().ids() {
        let gamma = opts.gamma_overrides.get(v).copied().unwrap_or(opts.gamma);
        let inst = extract_instance(
            v,
            model,
            &structure,
            &assignment,
            gamma,
            opts.use_spanning_tree,
        )?;
        let family = if inst.graph.is_tree() {
            tree_edge_cuts(&inst.graph)?
        } else {
            connected_cuts(&inst.graph)?
        };
        let lp = build_lp(&inst, &family)?;
        let name: String = v
            .chars()
            .map(|c| {
                if c.is_alphanumeric() || c == '-' || c == '_' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        let path = dir.join(format!("{name}.lp"));
        std::fs::write(&path, dump_lp(&lp))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_set_params(
    as_json: bool,
    problem: &Path,
    embedding: &Path,
    gamma: f64,
    gamma_override: &[String],
    strategy: &str,
    no_tree: bool,
    dump_dir: Option<&Path>,
    output: Option<&Path>,
) -> Result<i32, Failure> {
    let model = load_problem(problem, true)?;
    let (hardware, phi) = load_embedding(embedding)?;
    let opts = SetterOptions {
        gamma,
        strategy: OuterStrategy::from_name(strategy)
            .ok_or_else(|| Failure::usage(format!("unknown strategy `{strategy}`")))?,
        use_spanning_tree: !no_tree,
        gamma_overrides: parse_gamma_overrides(gamma_override)?,
    };
    let embedded = set_parameters(&model, &hardware, &phi, &opts).map_err(|e| match e {
        ising_embed::Error::PreprocessableVertex { .. } => {
            Failure::semantic(format!("{e}; run `ising-embed preprocess` first"))
        }
        e => e.into(),
    })?;
    if let Some(dir) = dump_dir {
        dump_programs(dir, &model, &hardware, &phi, &opts)?;
    }
    let result = ResultFile::from_embedded(&embedded);
    if let Some(path) = output {
        io::save(path, &result)?;
    }
    if as_json {
        print!("{}", io::to_pretty(&result));
    } else {
        println!(
            "strategy {}, gamma {}, spanning tree: {}",
            opts.strategy.name(),
            gamma,
            if no_tree { "no" } else { "yes" }
        );
        for (v, r) in &embedded.per_vertex {
            match r.theta {
                Some(theta) => println!(
                    "{v}: {} qubits, theta {theta}, gamma {}, {} cuts, {} constraints",
                    r.omega.len(),
                    r.gamma,
                    r.family_size,
                    r.lp_constraints
                ),
                None => println!("{v}: 1 qubit, no inner coupling"),
            }
        }
        println!("offset c = {}", embedded.offset_c);
        println!("embedded C_max = {}", result.c_max);
        match embedded.max_theta() {
            Some(t) => println!("max theta = {t}"),
            None => println!("max theta = - (all images are single qubits)"),
        }
        if let Some(path) = output {
            println!("wrote {}", path.display());
        }
    }
    Ok(0)
}

fn cmd_verify(as_json: bool, result: &Path, end_to_end: bool) -> Result<i32, Failure> {
    let file: ResultFile = io::load(result)?;
    let embedded = file.to_embedded()?;
    let reports = verify_solution_gap(&embedded)?;
    let mut all_pass = reports.iter().all(|(_, r)| r.pass);

    let equivalence = if end_to_end {
        let eq = verify_equivalence(&embedded)?;
        all_pass = all_pass && eq.pass();
        Some(eq)
    } else {
        None
    };

    if as_json {
        let per_vertex: Vec<_> = reports
            .iter()
            .map(|(v, r)| {
                json!({
                    "vertex": v,
                    "pass": r.pass,
                    "worst_margin": r.worst_margin,
                    "required_gap": r.required_gap,
                    "pairs_checked": r.pairs_checked,
                })
            })
            .collect();
        let equivalence_json = equivalence.as_ref().map(|eq| {
            json!({
                "original_minimum": eq.original_minimum,
                "embedded_minimum": eq.embedded_minimum,
                "offset_c": eq.offset_c,
                "minima_agree": eq.minima_agree,
                "original_minimizers": eq.original_minimizers,
                "embedded_minimizers": eq.embedded_minimizers,
                "all_minimizers_synchronized": eq.all_minimizers_synchronized,
                "minimizer_sets_match": eq.minimizer_sets_match,
                "pass": eq.pass(),
            })
        });
        print!(
            "{}",
            io::to_pretty(&json!({
                "per_vertex": per_vertex,
                "equivalence": equivalence_json,
                "pass": all_pass,
            }))
        );
    } else {
        for (v, r) in &reports {
            if r.pass {
                println!(
                    "{v}: PASS margin {} >= {} ({} pairs)",
                    r.worst_margin, r.required_gap, r.pairs_checked
                );
            } else {
                println!("{v}: FAIL margin {} < {}", r.worst_margin, r.required_gap);
                if let Some(w) = &r.witness {
                    println!(
                        "  witness: {} with fields {} (margin {})",
                        format_spins(&w.assignment),
                        format_spins(&w.field_signs),
                        w.margin
                    );
                }
            }
        }
        if let Some(eq) = &equivalence {
            println!(
                "original minimum {} ({} minimizers)",
                eq.original_minimum, eq.original_minimizers
            );
            println!(
                "embedded minimum {} + c {} ({} minimizers)",
                eq.embedded_minimum, eq.offset_c, eq.embedded_minimizers
            );
            println!("minima agree: {}", yes_no(eq.minima_agree));
            println!(
                "all embedded minimizers synchronized: {}",
                yes_no(eq.all_minimizers_synchronized)
            );
            println!(
                "minimizer sets correspond: {}",
                yes_no(eq.minimizer_sets_match)
            );
        }
        println!("verification: {}", if all_pass { "PASS" } else { "FAIL" });
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_solve(as_json: bool, problem: &Path) -> Result<i32, Failure> {
    let model = load_problem(problem, false)?;
    let result = brute_force_minimum(&model)?;
    const SHOWN: usize = 16;
    if as_json {
        let minimizers: Vec<_> = result
            .minimizers
            .iter()
            .take(SHOWN)
            .map(spins_json)
            .collect();
        print!(
            "{}",
            io::to_pretty(&json!({
                "minimum": result.value,
                "minimizer_count": result.minimizers.len(),
                "minimizers": minimizers,
                "truncated": result.minimizers.len() > SHOWN,
            }))
        );
    } else {
        println!("minimum {}", result.value);
        println!("minimizers: {}", result.minimizers.len());
        for m in result.minimizers.iter().take(SHOWN) {
            println!("  {}", format_spins(m));
        }
        if result.minimizers.len() > SHOWN {
            println!("  ... ({} total)", result.minimizers.len());
        }
    }
    Ok(0)
}

fn cmd_deembed(
    as_json: bool,
    result: &Path,
    samples: &Path,
    majority: bool,
) -> Result<i32, Failure> {
    let file: ResultFile = io::load(result)?;
    let embedded = file.to_embedded()?;
    let original = embedded.reconstruct_original()?;
    let samples: SamplesFile = io::load(samples)?;

    let mut all_mapped = true;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (i, sample) in samples.samples.iter().enumerate() {
        let hw = SpinAssignment::new(sample.iter().map(|(id, &s)| (id.clone(), s)))?;
        let synchronized = is_synchronized(&embedded, &hw)?;
        let method = if synchronized {
            Some("representative")
        } else if majority {
            Some("majority")
        } else {
            None
        };
        match method {
            Some(name) => {
                let logical = if synchronized {
                    representative(&embedded, &hw)?
                } else {
                    majority_vote(&embedded, &hw)?
                };
                let logical_value = evaluate(&original, &logical)?;
                let embedded_value = evaluate(&embedded.model, &hw)?;
                // For synchronized samples the embedded value plus the offset
                // must reproduce the logical value exactly.
                let consistent = !synchronized
                    || (embedded_value + embedded.offset_c - logical_value).abs()
                        <= 1e-9 * (1.0 + logical_value.abs());
                if !consistent {
                    all_mapped = false;
                }
                if as_json {
                    rows.push(json!({
                        "index": i,
                        "synchronized": synchronized,
                        "method": name,
                        "logical": spins_json(&logical),
                        "logical_value": logical_value,
                        "embedded_value": embedded_value,
                        "offset_consistent": consistent,
                    }));
                } else if consistent {
                    lines.push(format!(
                        "sample {i}: {name}, value {logical_value}, {}",
                        format_spins(&logical)
                    ));
                } else {
                    lines.push(format!(
                        "sample {i}: offset mismatch (embedded {embedded_value} + c {} != logical {logical_value})",
                        embedded.offset_c
                    ));
                }
            }
            None => {
                all_mapped = false;
                if as_json {
                    rows.push(json!({
                        "index": i,
                        "synchronized": false,
                        "method": null,
                        "logical": null,
                    }));
                } else {
                    lines.push(format!("sample {i}: not synchronized"));
                }
            }
        }
    }

    if as_json {
        print!(
            "{}",
            io::to_pretty(&json!({
                "samples": rows,
                "pass": all_mapped,
            }))
        );
    } else {
        for line in &lines {
            println!("{line}");
        }
        println!(
            "deembedded {} of {} samples",
            samples.samples.len()
                - lines
                    .iter()
                    .filter(|l| l.contains("not synchronized"))
                    .count(),
            samples.samples.len()
        );
    }
    Ok(if all_mapped { 0 } else { 1 })
}

fn fmt_theta(theta: Option<f64>) -> String {
    match theta {
        Some(t) => t.to_string(),
        None => "-".to_string(),
    }
}

fn cmd_compare(
    as_json: bool,
    problem: &Path,
    embedding: &Path,
    gamma: f64,
    factor: f64,
) -> Result<i32, Failure> {
    let model = load_problem(problem, true)?;
    let (hardware, phi) = load_embedding(embedding)?;
    let opts = SetterOptions {
        gamma,
        ..SetterOptions::default()
    };
    let optimal = set_parameters(&model, &hardware, &phi, &opts).map_err(|e| match e {
        ising_embed::Error::PreprocessableVertex { .. } => {
            Failure::semantic(format!("{e}; run `ising-embed preprocess` first"))
        }
        e => e.into(),
    })?;
    let baseline = baseline_uniform(&model, &hardware, &phi, factor, &opts)?;

    let optimal_pass: BTreeMap<String, bool> = verify_solution_gap(&optimal)?
        .into_iter()
        .map(|(v, r)| (v, r.pass))
        .collect();
    let baseline_pass: BTreeMap<String, bool> = verify_solution_gap(&baseline)?
        .into_iter()
        .map(|(v, r)| (v, r.pass))
        .collect();

    let logical_c_max = c_max(&model);
    let bound = 2.0 * logical_c_max + 2.0 * gamma;

    if as_json {
        let per_vertex: Vec<_> = model
            .graph()
            .ids()
            .iter()
            .map(|v| {
                let opt = &optimal.per_vertex[v];
                let base = &baseline.per_vertex[v];
                json!({
                    "vertex": v,
                    "qubits": opt.omega.len(),
                    "theta_optimal": opt.theta,
                    "theta_baseline": base.theta,
                    "optimal_pass": optimal_pass[v],
                    "baseline_pass": baseline_pass[v],
                })
            })
            .collect();
        print!(
            "{}",
            io::to_pretty(&json!({
                "logical_c_max": logical_c_max,
                "gamma": gamma,
                "factor": factor,
                "per_vertex": per_vertex,
                "optimal_max_theta": optimal.max_theta(),
                "baseline_max_theta": baseline.max_theta(),
                "embedded_c_max_optimal": c_max(&optimal.model),
                "embedded_c_max_baseline": c_max(&baseline.model),
                "sufficiency_bound": bound,
            }))
        );
    } else {
        let idw = model
            .graph()
            .ids()
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("vertex".len());
        println!(
            "{:<idw$}  {:>6}  {:>22}  {:>22}  {:>8}  {:>8}",
            "vertex", "qubits", "optimal theta", "baseline theta", "optimal", "baseline"
        );
        for v in model.graph().ids() {
            let opt = &optimal.per_vertex[v];
            let base = &baseline.per_vertex[v];
            let verdict = |pass: bool| if pass { "pass" } else { "FAIL" };
            println!(
                "{:<idw$}  {:>6}  {:>22}  {:>22}  {:>8}  {:>8}",
                v,
                opt.omega.len(),
                fmt_theta(opt.theta),
                fmt_theta(base.theta),
                verdict(optimal_pass[v]),
                verdict(baseline_pass[v]),
            );
        }
        println!("logical C_max = {logical_c_max}");
        println!(
            "embedded C_max: optimal {} vs baseline {}",
            c_max(&optimal.model),
            c_max(&baseline.model)
        );
        println!("sufficiency bound 2*C_max + 2*gamma = {bound}");
    }
    Ok(0)
}

fn cmd_gen_tree(seed: u64, vertices: usize, output: Option<&Path>) -> Result<i32, Failure> {
    if vertices == 0 {
        return Err(Failure::usage("need at least one vertex"));
    }
    let mut rng = rng_from_seed(seed);
    let graph = random_tree(vertices, &mut rng);
    let model = random_model(&graph, &mut rng);
    let file = ProblemFile::from_model(&model);
    match output {
        Some(path) => {
            io::save(path, &file)?;
            println!(
                "wrote {} ({} vertices, {} edges)",
                path.display(),
                graph.vertex_count(),
                graph.edge_count()
            );
        }
        None => print!("{}", io::to_pretty(&file)),
    }
    Ok(0)
}

fn cmd_gen_instance(
    seed: u64,
    vertices: usize,
    extra: usize,
    max_chain: usize,
    problem_out: &Path,
    embedding_out: &Path,
) -> Result<i32, Failure> {
    if vertices == 0 {
        return Err(Failure::usage("need at least one vertex"));
    }
    let mut rng = rng_from_seed(seed);
    let logical = random_connected_graph(vertices, extra, &mut rng);
    let model = random_model(&logical, &mut rng);
    let (hardware, phi) = random_embedding(&logical, max_chain, &mut rng);
    io::save(problem_out, &ProblemFile::from_model(&model))?;
    io::save(embedding_out, &EmbeddingFile::from_parts(&hardware, &phi))?;
    println!(
        "wrote {} ({} vertices, {} edges) and {} ({} qubits)",
        problem_out.display(),
        logical.vertex_count(),
        logical.edge_count(),
        embedding_out.display(),
        hardware.vertex_count()
    );
    Ok(0)
}
