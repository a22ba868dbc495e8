//! Subcommands. Exit codes follow the decision problem: 0 yes, 1 no, 2 error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use purgatory_core::equiv::{exhaustive_instances, random_instances, EquivReport};
use purgatory_core::format::{parse_graph, parse_puzzle, write_graph, write_puzzle};
use purgatory_core::gen::{gen_puzzle, spiral_layout};
use purgatory_core::graph::random_graph;
use purgatory_core::reduction::{degree_reduce, reduce_with};
use purgatory_core::solver::{check_path, solve, verify_certificate};
use purgatory_core::{Certificate, PathInstance, Position, Puzzle, SublistConstants};

use crate::api::SolveResponse;
use crate::server::{self, ServerConfig, DEFAULT_MAX_N};

/// Random instances in `equiv --random` have at most this many vertices.
pub const EQUIV_RANDOM_MAX_N: usize = 50;
/// ... and at most this many edges.
pub const EQUIV_RANDOM_MAX_M: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "purgatory", version, about = "Solve, verify, generate and reduce purgatory jump puzzles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a shortest solution
    Solve {
        file: PathBuf,
        /// Also print the F/B certificate
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a proposed path or certificate
    Verify(VerifyArgs),
    /// Reduce a PATH instance to a puzzle
    Reduce {
        file: PathBuf,
        /// Append the vertex/position trace as a `# trace:` JSON comment
        #[arg(long)]
        trace: bool,
        /// Use the historically published sublist constants
        #[arg(long)]
        paper_constants: bool,
    },
    /// Split vertices of outdegree > 2 into chains
    DegreeReduce { file: PathBuf },
    /// Generate puzzles or graphs
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check reachability against solvability of the reduced puzzle
    Equiv {
        /// Enumerate every loop-free digraph on this many vertices
        #[arg(long)]
        max_vertices: usize,
        /// Additional random instances
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        paper_constants: bool,
    },
    /// Render a puzzle as an ASCII spiral
    Spiral { file: PathBuf },
    /// Run the HTTP service
    Serve {
        #[arg(long, env = "PURGATORY_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory with the browser player
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Largest accepted puzzle size
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Comma or space separated positions, e.g. "1,4,5"
    #[arg(long, required_unless_present = "cert", conflicts_with = "cert")]
    pub path: Option<String>,
    /// Certificate such as "FFFBFF"
    #[arg(long)]
    pub cert: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Puzzle {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "unsolvable")]
        solvable: bool,
        #[arg(long)]
        unsolvable: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Source vertex (default 1)
        #[arg(long)]
        s: Option<usize>,
        /// Target vertex (default n)
        #[arg(long)]
        t: Option<usize>,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_puzzle(path: &Path) -> Result<Puzzle> {
    parse_puzzle(&read_input(path)?).with_context(|| format!("{}", path.display()))
}

fn load_graph(path: &Path) -> Result<PathInstance> {
    parse_graph(&read_input(path)?).with_context(|| format!("{}", path.display()))
}

fn parse_positions(text: &str) -> Result<Vec<Position>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let raw: usize = t.parse().with_context(|| format!("bad position {t:?}"))?;
            Position::try_from(raw).map_err(|e| anyhow::anyhow!("bad position {t:?}: {e}"))
        })
        .collect()
}

/// Runs one command, writing results to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Solve { file, certificate, json } => {
            let p = load_puzzle(&file)?;
            let r = solve(&p);
            if json {
                writeln!(out, "{}", serde_json::to_string(&SolveResponse::from(&r))?)?;
            } else {
                writeln!(out, "{r}")?;
                if let (true, Some(c)) = (certificate, &r.certificate) {
                    writeln!(out, "{c}")?;
                }
            }
            Ok(if r.solvable { 0 } else { 1 })
        }
        Command::Verify(args) => {
            let p = load_puzzle(&args.file)?;
            let verdict = match (args.path, args.cert) {
                (Some(path), _) => check_path(&p, &parse_positions(&path)?).map_err(|r| r.code()),
                (None, Some(cert)) => {
                    let cert: Certificate = cert.parse()?;
                    if verify_certificate(|j| p.values()[j - 1], p.n(), cert.steps().iter().copied()) {
                        Ok(())
                    } else {
                        Err("Rejected".to_string())
                    }
                }
                (None, None) => bail!("give --path or --cert"),
            };
            match verdict {
                Ok(()) => {
                    writeln!(out, "valid")?;
                    Ok(0)
                }
                Err(reason) => {
                    writeln!(out, "invalid: {reason}")?;
                    Ok(1)
                }
            }
        }
        Command::Reduce { file, trace, paper_constants } => {
            let inst = load_graph(&file)?;
            let constants = if paper_constants { SublistConstants::Paper } else { SublistConstants::Corrected };
            let red = reduce_with(&inst, constants);
            out.write_all(write_puzzle(&red.puzzle).as_bytes())?;
            if trace {
                writeln!(out, "# trace: {}", serde_json::to_string(&red.trace)?)?;
            }
            Ok(0)
        }
        Command::DegreeReduce { file } => {
            let inst = load_graph(&file)?;
            out.write_all(write_graph(&degree_reduce(&inst)).as_bytes())?;
            Ok(0)
        }
        Command::Gen(GenCommand::Puzzle { n, unsolvable, seed, .. }) => {
            let p = gen_puzzle(n, !unsolvable, seed)?;
            out.write_all(write_puzzle(&p).as_bytes())?;
            Ok(0)
        }
        Command::Gen(GenCommand::Graph { n, m, seed, s, t }) => {
            let g = random_graph(n, m, seed)?;
            let inst = PathInstance::new(g, s.unwrap_or(1), t.unwrap_or(n))?;
            out.write_all(write_graph(&inst).as_bytes())?;
            Ok(0)
        }
        Command::Equiv { max_vertices, random, seed, paper_constants } => {
            if max_vertices == 0 || max_vertices * (max_vertices - 1) >= 64 {
                bail!("--max-vertices must be between 1 and 8");
            }
            let constants = if paper_constants { SublistConstants::Paper } else { SublistConstants::Corrected };
            let mut report = EquivReport::default();
            for inst in exhaustive_instances(max_vertices) {
                report.check(&inst, constants);
            }
            for inst in random_instances(random, EQUIV_RANDOM_MAX_N, EQUIV_RANDOM_MAX_M, seed) {
                report.check(&inst, constants);
            }
            for (inst, why) in &report.counterexamples {
                let edges: Vec<String> = inst.graph.edges().map(|(u, v)| format!("{u}->{v}")).collect();
                writeln!(
                    out,
                    "counterexample: n={} s={} t={} edges=[{}]: {why}",
                    inst.graph.n(),
                    inst.s,
                    inst.t,
                    edges.join(",")
                )?;
            }
            writeln!(out, "{report}")?;
            if report.structure_violations + report.decode_failures > 0 {
                writeln!(
                    out,
                    "{} structural violations, {} decode failures",
                    report.structure_violations, report.decode_failures
                )?;
            }
            Ok(if report.is_clean() { 0 } else { 1 })
        }
        Command::Spiral { file } => {
            let p = load_puzzle(&file)?;
            out.write_all(render_spiral(&p).as_bytes())?;
            Ok(0)
        }
        Command::Serve { port, host, static_dir, max_n } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(SocketAddr::new(host, port), ServerConfig { max_n, static_dir }))?;
            Ok(0)
        }
    }
}

/// Cells laid out on the square spiral, `y` growing upwards. The exit (the
/// spiral's next cell after the last value) is drawn as `*`.
pub fn render_spiral(p: &Puzzle) -> String {
    let layout = spiral_layout(p.n() + 1);
    let ((x0, y0), (x1, y1)) = layout.bounds();
    let width = p.values().iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    let cols = (x1 - x0 + 1) as usize;
    let rows = (y1 - y0 + 1) as usize;
    let mut grid = vec![vec![String::new(); cols]; rows];
    for (k, &(x, y)) in layout.coords.iter().enumerate() {
        let label = p.values().get(k).map_or_else(|| "*".to_string(), u64::to_string);
        grid[(y1 - y) as usize][(x - x0) as usize] = label;
    }
    let mut text = String::new();
    for row in grid {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(text, "{}", line.join(" ").trim_end()).expect("writing to a String");
    }
    text
}
