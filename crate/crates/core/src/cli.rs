//! The `ugames` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dot::lift_dot;
use crate::equiv::{are_equivalent, EquivConfig};
use crate::error::{Error, Result};
use crate::gen::{GenSpec, LabelSource, Model};
use crate::graph::{LabeledGraph, Mode, VertexAssignment};
use crate::io;
use crate::lift::{build_lift, component_analysis, Classification};
use crate::perm::{LatinFamily, LatinKind};
use crate::solve::{self, SolverConfig, Strategy};
use crate::special;
use crate::xform::{check_identify_bounds, identify, ConflictPolicy, IdentifySpec};

/// Exit code for a negative analytic result such as inequivalent instances.
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ugames",
    version,
    about = "Unique games on permutation-labeled graphs"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the summary line (JSON output is never suppressed).
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads for the parallel solver.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on enumerated assignments and search nodes.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Tree,
    Cycle,
    Bnb,
    Lift,
    Brute,
}

impl From<MethodArg> for Strategy {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Strategy::Auto,
            MethodArg::Tree => Strategy::TreeClosedForm,
            MethodArg::Cycle => Strategy::CycleClosedForm,
            MethodArg::Bnb => Strategy::BranchAndBound,
            MethodArg::Lift => Strategy::Lift,
            MethodArg::Brute => Strategy::BruteForce,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum PolicyArg {
    PreferV1,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ModelArg {
    Gnp,
    Cycle,
    Tree,
    CompleteBipartite,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Contradiction number, assignment number and value of an instance.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Build the lift graph and summarize its components.
    Lift {
        file: PathBuf,
        /// Write the lift as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for a switching equivalence between two instances.
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Minimum edge deletions leaving the underlying graph bipartite.
    Bipartize { file: PathBuf },
    /// Balance of an n = 2 instance read as a signed graph.
    Signed { file: PathBuf },
    /// Laws for instances labeled from a Latin-square family.
    Latin { file: PathBuf },
    /// Identify two vertices and check the resulting bounds.
    Identify {
        file: PathBuf,
        v1: String,
        v2: String,
        /// Name of the merged vertex (default `v1+v2`).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "prefer_v1")]
        policy: PolicyArg,
        /// Write the identified instance here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive enumeration of all assignments.
    Oracle { file: PathBuf },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 5)]
        len: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value = "uniform_involutions")]
        labels: LabelSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an instance file for structural problems.
    Validate { file: PathBuf },
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    json: bool,
    quiet: bool,
    seed: u64,
}

impl Printer<'_> {
    /// Prints `summary` (always, unless JSON) then `detail` lines (unless quiet),
    /// or the JSON object with the seed added.
    fn emit(&mut self, summary: &str, detail: &[String], mut value: Value) -> Result<()> {
        if self.json {
            value["seed"] = json!(self.seed);
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?;
        } else {
            writeln!(self.out, "{summary}")?;
            if !self.quiet {
                for line in detail {
                    writeln!(self.out, "{line}")?;
                }
                writeln!(self.out, "seed={}", self.seed)?;
            }
        }
        Ok(())
    }
}

fn solver_config(cli: &Cli) -> SolverConfig {
    let mut config = SolverConfig::default();
    if let Some(cap) = cli.cap {
        config.brute_force_cap = cap;
        config.node_cap = cap;
    }
    config
}

fn assignment_line(g: &LabeledGraph, k: &VertexAssignment) -> String {
    (0..g.vertex_count())
        .map(|v| format!("{}={}", g.vertex_name(v), k.get(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn edge_text(g: &LabeledGraph, idx: usize) -> String {
    let e = &g.edges()[idx];
    let arrow = if g.mode() == Mode::Directed {
        "->"
    } else {
        "--"
    };
    format!(
        "{} {} {} {}",
        g.vertex_name(e.from),
        arrow,
        g.vertex_name(e.to),
        e.label.to_cycle_string()
    )
}

fn omega_text(g: &LabeledGraph, beta_c: usize) -> Result<String> {
    if g.edge_count() == 0 {
        return Err(Error::precondition(
            "instance has no edges; its value is undefined",
        ));
    }
    Ok(g.game_value(beta_c)?.omega.to_string())
}

fn cmd_solve(cli: &Cli, p: &mut Printer<'_>, file: &Path, method: MethodArg) -> Result<i32> {
    let g = io::load(file)?;
    g.ensure_valid()?;
    omega_text(&g, 0)?;
    let r = solve::solve_with(&g, method.into(), &solver_config(cli))?;
    let omega = omega_text(&g, r.beta_c)?;
    let summary = format!(
        "beta_c={} beta_c_prime={} omega={omega}",
        r.beta_c, r.beta_c_prime
    );
    let mut detail = vec![
        format!("method={}", r.method.as_str()),
        format!("optimal: {}", assignment_line(&g, &r.optimal)),
        format!("contradictions: {}", r.contradiction_edges.len()),
    ];
    detail.extend(
        r.contradiction_edges
            .iter()
            .map(|&i| format!("  edge {i}: {}", edge_text(&g, i))),
    );
    p.emit(
        &summary,
        &detail,
        json!({
            "command": "solve",
            "beta_c": r.beta_c,
            "beta_c_prime": r.beta_c_prime,
            "component_beta_c_prime": r.component_beta_c_prime,
            "omega": omega,
            "optimal": r.optimal.named(&g),
            "contradiction_edges": r.contradiction_edges,
            "method": r.method.as_str(),
        }),
    )?;
    Ok(0)
}

fn class_text(c: Option<Classification>, per: &[Classification]) -> String {
    match c {
        Some(c) => c.as_str().to_string(),
        None => format!(
            "[{}]",
            per.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",")
        ),
    }
}

fn cmd_lift(p: &mut Printer<'_>, file: &Path, dot: Option<&Path>) -> Result<i32> {
    let g = io::load(file)?;
    g.ensure_valid()?;
    let lift = build_lift(&g);
    let summary = component_analysis(&lift);
    if let Some(path) = dot {
        std::fs::write(path, lift_dot(&lift))?;
    }
    let per: Vec<Classification> = summary
        .per_base_component
        .iter()
        .map(|b| b.classification)
        .collect();
    let sizes = summary.sizes();
    let line = format!(
        "components={} sizes=[{}] class={}",
        sizes.len(),
        sizes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
        class_text(summary.classification, &per)
    );
    let detail = vec![
        format!(
            "lift_vertices={} lift_edges={}",
            lift.vertex_count(),
            lift.edges().len()
        ),
        format!("isomorphic_to_base={}", summary.isomorphic_to_base_count),
        format!("fiber_degree_ok={}", lift.fiber_degree_check()),
    ];
    p.emit(
        &line,
        &detail,
        json!({
            "command": "lift",
            "lift_vertices": lift.vertex_count(),
            "lift_edges": lift.edges().len(),
            "component_sizes": sizes,
            "isomorphic_to_base": summary.isomorphic_to_base_count,
            "classification": summary.classification,
            "per_base_component": summary.per_base_component,
            "fibers_uniform": summary.fibers_uniform,
            "fiber_degree_ok": lift.fiber_degree_check(),
        }),
    )?;
    Ok(0)
}

fn cmd_equiv(p: &mut Printer<'_>, a: &Path, b: &Path) -> Result<i32> {
    let g1 = io::load(a)?;
    let g2 = io::load(b)?;
    match are_equivalent(&g1, &g2, &EquivConfig::default())? {
        Some(w) => {
            let wj = w.to_json(&g1, &g2);
            p.emit(
                "equivalent=true",
                &[serde_json::to_string(&wj)?],
                json!({"command": "equiv", "equivalent": true, "witness": wj}),
            )?;
            Ok(0)
        }
        None => {
            p.emit(
                "equivalent=false",
                &[],
                json!({"command": "equiv", "equivalent": false}),
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn cmd_bipartize(cli: &Cli, p: &mut Printer<'_>, file: &Path) -> Result<i32> {
    let g = io::load(file)?;
    let r = special::edge_bipartization_of(&g, &solver_config(cli))?;
    let mut detail = vec![format!("deleted: {}", r.deleted_edges.len())];
    detail.extend(r.deleted_edges.iter().map(|&i| {
        let e = &g.edges()[i];
        format!(
            "  edge {i}: {} {}",
            g.vertex_name(e.from),
            g.vertex_name(e.to)
        )
    }));
    detail.push(format!(
        "bipartition: {} | {}",
        set_text(&r.residual_bipartition.0),
        set_text(&r.residual_bipartition.1)
    ));
    p.emit(
        &format!("beta_c2={}", r.beta_c2),
        &detail,
        json!({"command": "bipartize", "result": r}),
    )?;
    Ok(0)
}

fn cmd_signed(cli: &Cli, p: &mut Printer<'_>, file: &Path) -> Result<i32> {
    let g = io::load(file)?;
    let r = special::signed_analyze(&g, &solver_config(cli))?;
    let mut detail = vec![format!("frustration={}", r.frustration)];
    if let Some((a, b)) = &r.harary_partition {
        detail.push(format!("partition: {} | {}", set_text(a), set_text(b)));
    }
    p.emit(
        &format!("balanced={}", r.balanced),
        &detail,
        json!({"command": "signed", "result": r}),
    )?;
    Ok(0)
}

fn latin_kind(g: &LabeledGraph) -> Result<LatinKind> {
    let in_family = |kind| -> Result<bool> {
        let f = LatinFamily::new(g.n(), kind)?;
        Ok(g.edges().iter().all(|e| f.contains(&e.label)))
    };
    if g.mode() == Mode::Directed && in_family(LatinKind::Lprime)? {
        Ok(LatinKind::Lprime)
    } else if in_family(LatinKind::L)? {
        Ok(LatinKind::L)
    } else {
        Err(Error::precondition(
            "labels are not all from L_n (or L'_n on a directed graph)",
        ))
    }
}

fn cmd_latin(cli: &Cli, p: &mut Printer<'_>, file: &Path) -> Result<i32> {
    let g = io::load(file)?;
    g.ensure_valid()?;
    let config = solver_config(cli);
    let kind = latin_kind(&g)?;
    let props = g.underlying_properties();
    let mut detail = Vec::new();
    let mut value = json!({"command": "latin"});
    let summary = match kind {
        LatinKind::Lprime => {
            let r = special::directed_lprime_classify(&g, &config)?;
            let line = format!(
                "kind=Lprime component_counts={:?} class={}",
                r.component_counts,
                r.verdict.as_str()
            );
            value["kind"] = json!("Lprime");
            value["lprime"] = json!(r);
            line
        }
        LatinKind::L => {
            let counts = special::latin_component_counts(&g, &config)?;
            value["kind"] = json!("L");
            value["component_counts"] = json!(counts);
            if solve::cycle_permutation(&g).is_ok() {
                let c = special::classify_cycle_latin(&g, kind)?;
                detail.push(format!(
                    "cycle length={} pi_c={} count={} verdict={}",
                    c.cycle.len(),
                    c.pi_c.to_cycle_string(),
                    c.assignment_count,
                    c.verdict.as_str()
                ));
                value["cycle"] = json!(c);
            }
            if props.bipartite && props.bipartition.is_some() && g.vertex_count() > 0 {
                let w = special::bipartite_bad_witness(&g, &config)?;
                match &w {
                    Some(w) => detail.push(format!(
                        "bad chordless cycle: {} pi_c={}",
                        w.cycle.join(" "),
                        w.pi_c.to_cycle_string()
                    )),
                    None => detail.push("bad chordless cycle: none".into()),
                }
                value["bad_cycle"] = json!(w);
            } else if props.connected && g.n() >= 3 {
                let b = special::nonbipartite_latin_bound(&g, &config)?;
                detail.push(format!("bound: {} <= {}", b.beta_c_prime, b.bound));
                value["bound"] = json!(b);
            }
            format!("kind=L component_counts={counts:?}")
        }
    };
    p.emit(&summary, &detail, value)?;
    Ok(0)
}

fn cmd_identify(
    cli: &Cli,
    p: &mut Printer<'_>,
    file: &Path,
    names: (&str, &str),
    new_name: Option<&str>,
    policy: PolicyArg,
    out: Option<&Path>,
) -> Result<i32> {
    let g = io::load(file)?;
    g.ensure_valid()?;
    let spec = IdentifySpec {
        v1: g.require_vertex(names.0)?,
        v2: g.require_vertex(names.1)?,
        new_name: new_name.map_or_else(|| format!("{}+{}", names.0, names.1), str::to_string),
        policy: match policy {
            PolicyArg::PreferV1 => ConflictPolicy::PreferV1,
            PolicyArg::Reject => ConflictPolicy::Reject,
        },
    };
    let (h, _) = identify(&g, &spec)?;
    if let Some(path) = out {
        io::save(&h, path)?;
    }
    let b = check_identify_bounds(&g, &spec, &solver_config(cli))?;
    let mut detail = vec![
        format!(
            "lower={} upper={} lost_edges={} lost_edge_bound={}",
            b.lower_holds, b.upper_holds, b.lost_edges, b.lost_edge_bound_holds
        ),
        format!(
            "dropped: internal={:?} conflicts={:?} duplicates={:?}",
            b.report.dropped_internal, b.report.dropped_conflicts, b.report.merged_duplicates
        ),
    ];
    if let Some(c) = &b.cross_component {
        detail.push(format!(
            "cross: beta_c_prime_g1={} beta_c_prime_g2={} beta_c_prime_h={} common_root_values={} lower={} upper={} exact={} corollary={}",
            c.beta_prime_g1, c.beta_prime_g2, c.beta_prime_h, c.common_root_values,
            c.lower_holds, c.upper_holds, c.exact_holds, c.corollary_holds
        ));
    }
    p.emit(
        &format!(
            "beta_c_g={} beta_c_h={} bounds_hold={}",
            b.beta_c_g,
            b.beta_c_h,
            b.all_hold()
        ),
        &detail,
        json!({"command": "identify", "merged_name": spec.new_name, "bounds": b}),
    )?;
    Ok(0)
}

fn cmd_oracle(cli: &Cli, p: &mut Printer<'_>, file: &Path) -> Result<i32> {
    let g = io::load(file)?;
    g.ensure_valid()?;
    omega_text(&g, 0)?;
    let r = solve::brute_force(&g, solver_config(cli).brute_force_cap)?;
    let omega = omega_text(&g, r.beta_c)?;
    let optimal = &r.all_optimal_assignments;
    let mut detail = vec![format!(
        "optimal_assignments={} enumerated={}",
        optimal.len(),
        r.enumerated
    )];
    if let Some(k) = optimal.first() {
        detail.push(format!("optimal: {}", assignment_line(&g, k)));
    }
    p.emit(
        &format!(
            "beta_c={} beta_c_prime={} omega={omega}",
            r.beta_c, r.beta_c_prime
        ),
        &detail,
        json!({
            "command": "oracle",
            "beta_c": r.beta_c,
            "beta_c_prime": r.beta_c_prime,
            "omega": omega,
            "optimal_assignments": optimal.len(),
            "first_optimal": optimal.first().map(|k| k.named(&g)),
            "enumerated": r.enumerated,
        }),
    )?;
    Ok(0)
}

fn cmd_gen(cli: &Cli, p: &mut Printer<'_>, command: &Command) -> Result<i32> {
    let Command::Gen {
        model,
        vertices,
        p: prob,
        len,
        s,
        t,
        n,
        labels,
        out,
    } = command
    else {
        unreachable!("called with gen")
    };
    let model = match model {
        ModelArg::Gnp => Model::Gnp {
            vertices: *vertices,
            p: *prob,
        },
        ModelArg::Cycle => Model::Cycle { len: *len },
        ModelArg::Tree => Model::Tree {
            vertices: *vertices,
        },
        ModelArg::CompleteBipartite => Model::CompleteBipartite { s: *s, t: *t },
    };
    let spec = GenSpec {
        model,
        n: *n,
        labels: *labels,
        seed: cli.seed,
    };
    let g = spec.generate()?;
    let text = io::to_json(&g);
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            p.emit(
                &format!("wrote {} vertices={} edges={}", path.display(), g.vertex_count(), g.edge_count()),
                &[],
                json!({"command": "gen", "spec": spec, "out": path, "vertices": g.vertex_count(), "edges": g.edge_count()}),
            )?;
        }
        None => write!(p.out, "{text}")?,
    }
    Ok(0)
}

fn cmd_validate(p: &mut Printer<'_>, file: &Path) -> Result<i32> {
    let g = io::load(file)?;
    let violations = g.validate();
    let fatal = violations.iter().any(|v| v.is_fatal());
    p.emit(
        &format!("valid={} violations={}", !fatal, violations.len()),
        &violations
            .iter()
            .map(|v| format!("  {v}"))
            .collect::<Vec<_>>(),
        json!({"command": "validate", "valid": !fatal, "violations": violations}),
    )?;
    Ok(if fatal { 1 } else { 0 })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mut p = Printer {
        out,
        json: cli.json,
        quiet: cli.quiet,
        seed: cli.seed,
    };
    let p = &mut p;
    match &cli.command {
        Command::Solve { file, method } => cmd_solve(cli, p, file, *method),
        Command::Lift { file, dot } => cmd_lift(p, file, dot.as_deref()),
        Command::Equiv { file1, file2 } => cmd_equiv(p, file1, file2),
        Command::Bipartize { file } => cmd_bipartize(cli, p, file),
        Command::Signed { file } => cmd_signed(cli, p, file),
        Command::Latin { file } => cmd_latin(cli, p, file),
        Command::Identify {
            file,
            v1,
            v2,
            name,
            policy,
            out,
        } => cmd_identify(
            cli,
            p,
            file,
            (v1, v2),
            name.as_deref(),
            *policy,
            out.as_deref(),
        ),
        Command::Oracle { file } => cmd_oracle(cli, p, file),
        gen @ Command::Gen { .. } => cmd_gen(cli, p, gen),
        Command::Validate { file } => cmd_validate(p, file),
    }
}

/// Runs a parsed command line, appending results to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    match cli.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli, out))
        }
        None => dispatch(cli, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
/// Errors go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = run(&cli, &mut buf);
    let _ = std::io::stdout().write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
