//! Command-line front end and text formats.
//!
//! Exit codes: 0 success, 2 input error, 3 resource guard or cancellation,
//! 4 the requested solution was not found.

pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::{self, CocycleLibrary, CocycleRecord, EnumerationStrategy};
use crate::error::{Error, Result};
use crate::graph::io::{format_graph_sum, parse_graph, parse_graph_sum};
use crate::graph::{canonical_form, graph_stats, GraphSum, UnorientedGraph};
use crate::orient::{self, abstract_bivector, Diamond, FactorizeOptions};
use crate::poissonlab::{self, Flow, LiftOptions, NambuDatum, PoissonModel, StructureConstants};
use crate::rational::parse_q;
use crate::superpoly::schouten;

pub use expr::{parse_expression, parse_superpoly, Expression, Scope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_NO_SOLUTION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "graphflow", version, about = "Exact graph-complex and Poisson-flow computations")]
pub struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the main artifact to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Single graphs and graph sums.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// The graph complex.
    #[command(subcommand)]
    Gc(GcCmd),
    /// Orientation morphism and Leibniz graphs.
    #[command(subcommand)]
    Or(OrCmd),
    /// Poisson models and flows on them.
    #[command(subcommand)]
    Lab(LabCmd),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Canonical form and sign, or ZERO.
    Canon(GraphInput),
    /// Diameter, valencies, bottlenecks of each term.
    Stats { sum: String },
    /// All nonzero graphs with the given bigrading.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, value_enum, default_value = "augmentation")]
        strategy: Strategy,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Strategy {
    Augmentation,
    Bitmask,
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// Edge list `u v;u v;…` in wedge order.
    #[arg(long, conflicts_with = "record")]
    pub edges: Option<String>,
    /// Vertex count; defaults to the largest endpoint plus one.
    #[arg(long)]
    pub vertices: Option<usize>,
    /// Graph record `n E u v …`.
    #[arg(long)]
    pub record: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GcCmd {
    /// `d(γ) = [•–•, γ]`.
    D { sum: String },
    /// Graded commutator of insertions.
    Bracket { a: String, b: String },
    /// Prints `cocycle: true|false`.
    CocycleCheck { sum: String },
    /// Bilinear disjoint union.
    Union { a: String, b: String },
}

#[derive(Args, Debug)]
pub struct FlowChoice {
    /// Cocycle name from the library or a graph-sum file.
    #[arg(long, conflicts_with = "scaling")]
    pub cocycle: Option<String>,
    /// Use `Q(P) = P`.
    #[arg(long)]
    pub scaling: bool,
}

#[derive(Subcommand, Debug)]
pub enum OrCmd {
    /// Evaluates one graph on given vertex contents.
    Eval {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Content expression; one per vertex, or one for all.
        #[arg(long = "content", required = true)]
        contents: Vec<String>,
        /// Names to treat as constant parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// `Or(γ)(P)` for a model.
    Flow {
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        model: String,
    },
    /// Solves `⟦P, Or(γ)(P)⟧ = ◊(P, ⟦P,P⟧)` for abstract `P`.
    Factorize {
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        max_rounds: usize,
    },
    /// Adjacency of Leibniz graphs sharing expansion terms.
    Metagraph {
        #[arg(required = true)]
        diamonds: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LabCmd {
    /// Nambu bivector `ρ ε ∂a` in dimension 3.
    Nambu {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        rho: String,
        #[arg(long, default_value = "nambu")]
        name: String,
        /// Names to treat as constant parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Linear bivector from structure constants.
    Linear {
        /// `i j k c;…` meaning `c^{ij}_k = c`, 1-based.
        #[arg(long, conflicts_with = "preset")]
        constants: Option<String>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value = "linear")]
        name: String,
    },
    /// `Or(γ)(P)` for a model.
    Apply {
        #[arg(long)]
        model: String,
        #[arg(long)]
        cocycle: String,
    },
    /// Formal solution `P(ε)` of `dP/dε = Q(P)` up to the given order.
    Integrate {
        #[arg(long)]
        model: String,
        #[command(flatten)]
        flow: FlowChoice,
        #[arg(long, default_value_t = poissonlab::DEFAULT_PICARD_ORDER)]
        order: usize,
    },
    /// Polynomial conditions on model parameters for `Or(γ)(P) = 0`.
    Invariance {
        #[arg(long)]
        model: String,
        #[arg(long)]
        cocycle: String,
    },
    /// Searches `X` with `Q(P) = ⟦P, X⟧` at polynomial degree `<= degree`.
    Trivialize {
        #[arg(long)]
        model: String,
        #[command(flatten)]
        flow: FlowChoice,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Searches an evolution of `(a, ρ)` inducing the flow on Nambu bivectors.
    Lift {
        #[command(flatten)]
        flow: FlowChoice,
        #[arg(long, default_value_t = LiftOptions::default().max_jet_order)]
        max_jet_order: usize,
        #[arg(long, default_value_t = LiftOptions::default().max_columns)]
        max_columns: usize,
    },
}

/// Result of one command: a summary for stdout and an optional artifact.
#[derive(Debug, Default)]
pub struct Report {
    pub summary: String,
    pub artifact: Option<String>,
    pub solved: bool,
}

impl Report {
    fn artifact(text: String) -> Self {
        Report {
            summary: String::new(),
            artifact: Some(text),
            solved: true,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_RESOURCE
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_RESOURCE;
        }
    };
    let result = pool.install(|| execute(&cli));
    match result.and_then(|r| emit(&cli, r)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, r: Report) -> Result<i32> {
    print!("{}", r.summary);
    if let Some(a) = r.artifact {
        match &cli.output {
            Some(path) => {
                fs::write(path, &a)?;
                println!("wrote {}", path.display());
            }
            None => print!("{a}"),
        }
    }
    Ok(if r.solved { EXIT_OK } else { EXIT_NO_SOLUTION })
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.group {
        Group::Graph(c) => graph_cmd(c),
        Group::Gc(c) => gc_cmd(c),
        Group::Or(c) => or_cmd(c),
        Group::Lab(c) => lab_cmd(c),
    }
}

fn parse_edge_list(text: &str, vertices: Option<usize>) -> Result<UnorientedGraph> {
    let mut edges = Vec::new();
    for (k, part) in text.split(';').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let nums: Vec<usize> = part
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                pos: k,
                msg: format!("bad edge `{part}`"),
            })?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                pos: k,
                msg: format!("edge `{part}` needs two endpoints"),
            });
        }
        edges.push((nums[0], nums[1]));
    }
    let n = vertices.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1));
    UnorientedGraph::new(n, &edges)
}

fn read_graph(input: &GraphInput) -> Result<UnorientedGraph> {
    match (&input.edges, &input.record) {
        (Some(e), _) => parse_edge_list(e, input.vertices),
        (None, Some(r)) => parse_graph(r),
        (None, None) => Err(Error::structure("give --edges or --record")),
    }
}

fn library() -> Result<CocycleLibrary> {
    CocycleLibrary::from_env()
}

/// A graph-sum file path, or a cocycle name.
fn load_sum(arg: &str) -> Result<GraphSum> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_graph_sum(&fs::read_to_string(path)?, arg);
    }
    library()?
        .get(arg)
        .map(|r| r.sum.clone())
        .ok_or_else(|| Error::structure(format!("`{arg}` is neither a file nor a library cocycle")))
}

fn load_cocycle(arg: &str) -> Result<CocycleRecord> {
    if let Some(r) = library()?.get(arg) {
        return Ok(r.clone());
    }
    let sum = load_sum(arg)?;
    let bigrading = sum
        .bigrading()
        .ok_or_else(|| Error::structure(format!("`{arg}` is not homogeneous")))?;
    CocycleRecord::new(arg, sum, bigrading, "file")
}

fn load_model(arg: &str) -> Result<PoissonModel> {
    if let Some(m) = PoissonModel::builtin(arg) {
        return Ok(m);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return PoissonModel::read(path);
    }
    Err(Error::structure(format!(
        "`{arg}` is neither a model file nor a built-in model ({})",
        PoissonModel::BUILTIN.join(", ")
    )))
}

fn load_flow(choice: &FlowChoice) -> Result<Flow> {
    match (&choice.cocycle, choice.scaling) {
        (Some(c), false) => Ok(Flow::from_cocycle(&load_cocycle(c)?)),
        (None, true) => Ok(Flow::Scaling),
        _ => Err(Error::structure("give exactly one of --cocycle and --scaling")),
    }
}

fn graph_cmd(cmd: &GraphCmd) -> Result<Report> {
    match cmd {
        GraphCmd::Canon(input) => {
            let g = read_graph(input)?;
            let c = canonical_form(&g);
            if c.sign == 0 {
                return Ok(Report::artifact("ZERO\n".into()));
            }
            Ok(Report::artifact(format!("sign: {:+}\ncanonical: {}\n", c.sign, c.graph)))
        }
        GraphCmd::Stats { sum } => {
            let s = load_sum(sum)?;
            let mut out = String::new();
            for st in graph_stats(&s) {
                writeln!(out, "{st}").unwrap();
            }
            Ok(Report::artifact(out))
        }
        GraphCmd::Enumerate { vertices, edges, strategy } => {
            let strategy = match strategy {
                Strategy::Augmentation => EnumerationStrategy::Augmentation,
                Strategy::Bitmask => EnumerationStrategy::Bitmask,
            };
            let gs = complex::enumerate_graphs_with(*vertices, *edges, strategy)?;
            let sum: GraphSum = gs.iter().map(|g| (g.clone(), crate::rational::q(1))).collect();
            Ok(Report {
                summary: format!("# {} graph(s)\n", gs.len()),
                artifact: Some(format_graph_sum(&sum)),
                solved: true,
            })
        }
    }
}

/// Graph sums get a `#` count line so stdout stays a valid sum file.
fn sum_report(s: &GraphSum) -> Report {
    Report {
        summary: format!("# {} term(s)\n", s.len()),
        artifact: Some(format_graph_sum(s)),
        solved: true,
    }
}

fn gc_cmd(cmd: &GcCmd) -> Result<Report> {
    match cmd {
        GcCmd::D { sum } => Ok(sum_report(&complex::differential(&load_sum(sum)?))),
        GcCmd::Bracket { a, b } => Ok(sum_report(&complex::lie_bracket(&load_sum(a)?, &load_sum(b)?))),
        GcCmd::CocycleCheck { sum } => {
            let s = load_sum(sum)?;
            Ok(Report::artifact(format!("cocycle: {}\n", complex::is_cocycle(&s))))
        }
        GcCmd::Union { a, b } => Ok(sum_report(&complex::disjoint_union(&load_sum(a)?, &load_sum(b)?))),
    }
}

fn or_cmd(cmd: &OrCmd) -> Result<Report> {
    match cmd {
        OrCmd::Eval {
            graph,
            dim,
            contents,
            params,
        } => {
            let g = read_graph(graph)?;
            let names: Vec<&str> = params.iter().map(String::as_str).collect();
            let scope = Scope::with_params(*dim, &names);
            let polys = contents
                .iter()
                .map(|c| parse_superpoly(c, &scope))
                .collect::<Result<Vec<_>>>()?;
            let polys = match polys.len() {
                1 => vec![polys[0].clone(); g.vertex_count()],
                _ => polys,
            };
            Ok(Report::artifact(format!("{}\n", orient::evaluate(&g, &polys)?)))
        }
        OrCmd::Flow { cocycle, model } => {
            let q = poissonlab::apply_symmetry(&load_model(model)?, &load_cocycle(cocycle)?)?;
            Ok(Report::artifact(format!("{q}\n")))
        }
        OrCmd::Factorize { cocycle, dim, max_rounds } => {
            let gamma = load_cocycle(cocycle)?;
            let p = abstract_bivector(*dim);
            let q = orient::orient_flow(&gamma.sum, &p)?;
            let target = schouten(&p, &q)?;
            let opts = FactorizeOptions {
                max_rounds: *max_rounds,
                ..Default::default()
            };
            let f = orient::leibniz_ansatz_iterate(&target, &p, &opts)?;
            let mut s = String::new();
            writeln!(s, "target terms: {}", target.len()).unwrap();
            writeln!(s, "pool: {}", f.pool_size).unwrap();
            for r in &f.rounds {
                writeln!(s, "{r}").unwrap();
            }
            writeln!(s, "diamond graphs: {}", f.diamond.len()).unwrap();
            writeln!(s, "residual terms: {}", f.residual.len()).unwrap();
            Ok(Report {
                summary: s,
                artifact: Some(f.diamond.to_text()),
                solved: f.is_solved(),
            })
        }
        OrCmd::Metagraph { diamonds } => {
            let ds = diamonds.iter().map(|p| Diamond::read(p)).collect::<Result<Vec<_>>>()?;
            Ok(Report::artifact(orient::leibniz_metagraph(&ds).report().to_string()))
        }
    }
}

fn parse_constants(text: &str, dim: usize) -> Result<StructureConstants> {
    let mut c = StructureConstants::new();
    for (k, part) in text.split(';').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let tok: Vec<&str> = part.split_whitespace().collect();
        let bad = || Error::Parse {
            pos: k,
            msg: format!("expected `i j k c`, found `{part}`"),
        };
        if tok.len() != 4 {
            return Err(bad());
        }
        let idx: Vec<usize> = tok[..3]
            .iter()
            .map(|t| t.parse::<usize>().ok().filter(|&i| i >= 1 && i <= dim).map(|i| i - 1))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        c.insert((idx[0], idx[1], idx[2]), parse_q(tok[3])?);
    }
    Ok(c)
}

fn model_report(m: &PoissonModel) -> Result<Report> {
    Ok(Report {
        summary: format!("poisson: {}\n", m.is_poisson()?),
        artifact: Some(m.to_toml()),
        solved: true,
    })
}

fn lab_cmd(cmd: &LabCmd) -> Result<Report> {
    match cmd {
        LabCmd::Nambu { a, rho, name, params } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            model_report(&poissonlab::nambu_bivector(name, &NambuDatum::parse_with_params(a, rho, &params)?)?)
        }
        LabCmd::Linear {
            constants,
            preset,
            dim,
            name,
        } => {
            let c = match (constants, preset.as_deref()) {
                (Some(text), None) => parse_constants(text, *dim)?,
                (None, Some("so3")) => poissonlab::so3_constants(),
                (None, Some(p)) => return Err(Error::structure(format!("unknown preset `{p}`"))),
                _ => return Err(Error::structure("give --constants or --preset")),
            };
            model_report(&poissonlab::linear_bracket(name, *dim, &c)?)
        }
        LabCmd::Apply { model, cocycle } => {
            let q = poissonlab::apply_symmetry(&load_model(model)?, &load_cocycle(cocycle)?)?;
            Ok(Report::artifact(format!("{q}\n")))
        }
        LabCmd::Integrate { model, flow, order } => {
            let flow = load_flow(flow)?;
            let coeffs = poissonlab::picard_integrate(&load_model(model)?, &flow, *order)?;
            let mut out = String::new();
            for (m, p) in coeffs.iter().enumerate() {
                writeln!(out, "P{m} = {p}").unwrap();
            }
            Ok(Report {
                summary: format!("verified: {}\n", poissonlab::verify_picard(&flow, &coeffs)?),
                artifact: Some(out),
                solved: true,
            })
        }
        LabCmd::Invariance { model, cocycle } => {
            let conds = poissonlab::invariance_conditions(&load_model(model)?, &load_cocycle(cocycle)?)?;
            let mut out = String::new();
            for c in &conds {
                writeln!(out, "{c} = 0").unwrap();
            }
            Ok(Report {
                summary: format!("conditions: {}\n", conds.len()),
                artifact: Some(out),
                solved: true,
            })
        }
        LabCmd::Trivialize { model, flow, degree } => {
            let m = load_model(model)?;
            let q = load_flow(flow)?.apply(&m.bivector)?;
            match poissonlab::trivialize(&m, &q, *degree)? {
                Some(t) => {
                    let mut out = format!("X = {}\n", t.x);
                    for g in &t.gauge {
                        writeln!(out, "gauge: {g}").unwrap();
                    }
                    Ok(Report {
                        summary: format!("found at degree {degree}\n"),
                        artifact: Some(out),
                        solved: true,
                    })
                }
                None => Ok(Report {
                    summary: format!("not found at degree {degree} (inconclusive)\n"),
                    artifact: None,
                    solved: false,
                }),
            }
        }
        LabCmd::Lift {
            flow,
            max_jet_order,
            max_columns,
        } => {
            let opts = LiftOptions {
                max_jet_order: *max_jet_order,
                max_columns: *max_columns,
            };
            let rep = poissonlab::nambu_lift_conditions(&load_flow(flow)?, &opts)?;
            Ok(Report {
                summary: String::new(),
                solved: rep.solvable,
                artifact: Some(rep.to_string()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Report> {
        let mut full = vec!["graphflow"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn triangle_is_zero() {
        let r = run(&["graph", "canon", "--edges", "0 1;1 2;0 2"]).unwrap();
        assert_eq!(r.artifact.unwrap(), "ZERO\n");
    }

    #[test]
    fn tetrahedron_is_a_cocycle() {
        let r = run(&["gc", "cocycle-check", "gamma3"]).unwrap();
        assert_eq!(r.artifact.unwrap(), "cocycle: true\n");
    }

    #[test]
    fn so3_flow_vanishes() {
        let r = run(&["lab", "apply", "--model", "so3", "--cocycle", "gamma3"]).unwrap();
        assert_eq!(r.artifact.unwrap(), "0\n");
    }

    #[test]
    fn linear_constants() {
        let r = run(&["lab", "linear", "--constants", "1 2 3 1; 2 3 1 1; 3 1 2 1"]).unwrap();
        assert_eq!(r.summary, "poisson: true\n");
        assert!(run(&["lab", "linear", "--constants", "1 2 3 1; 1 2 9 1"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Cancelled), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::UnknownSymbol("q".into())), EXIT_INPUT);
    }
}
