use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fracwl::graph::{parse_graph, serialize_graph, to_dot, Graph, GraphLabel};
use fracwl::harness::{experiment_ids, registry, run_all, HarnessConfig};
use fracwl::lp::{format_rational, parse_lp, solve_with, LpStatus};
use fracwl::packing::{frac_matching_with, integral_packing_with, packing_system, Mode};
use fracwl::wl::{wl_refine_with, WlConfig};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fracwl",
    version,
    about = "Weisfeiler-Leman refinement and exact packing parameters"
)]
struct Cli {
    /// Harness configuration file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for generated graphs and experiment reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write named graphs such as `paley(13)` or `shrikhande` to files.
    Gen {
        #[arg(required = true)]
        labels: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
    },
    /// Test WL-k equivalence of two graphs (label or file path).
    Wl {
        g: String,
        h: String,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
    },
    /// Solve an LP in the plain-text format and print its exact value.
    Lp { file: PathBuf },
    /// Packing number of a pattern in a host graph, as JSON.
    Pack {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        #[arg(long, value_enum, default_value_t = PackMode::Vertex)]
        mode: PackMode,
        /// Solve the integral problem by branch and bound.
        #[arg(long)]
        integral: bool,
    },
    /// Reproduction experiments.
    Exp {
        #[command(subcommand)]
        action: ExpAction,
    },
}

#[derive(Subcommand)]
enum ExpAction {
    /// List registered experiment ids and claims.
    List,
    /// Run one experiment, or `all`.
    Run { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum PackMode {
    Vertex,
    Edge,
}

impl From<PackMode> for Mode {
    fn from(m: PackMode) -> Self {
        match m {
            PackMode::Vertex => Mode::Vertex,
            PackMode::Edge => Mode::Edge,
        }
    }
}

/// An existing file is read as a graph; anything else is a graph label.
fn load_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {arg}"));
    }
    let label: GraphLabel = arg
        .parse()
        .with_context(|| format!("{arg:?} is neither a file nor a graph label"))?;
    Ok(label.build()?)
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect::<String>()
        .trim_end_matches('_')
        .to_string()
}

fn harness_config(cli: &Cli) -> Result<HarnessConfig> {
    let mut cfg = match &cli.config {
        Some(p) => HarnessConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => HarnessConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen { labels, format } => {
            for arg in labels {
                let g = load_graph(arg)?;
                let body = match format {
                    Format::Txt => serialize_graph(&g),
                    Format::Dot => to_dot(&g, &file_stem(arg)),
                };
                match &cli.out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir)?;
                        let ext = match format {
                            Format::Txt => "txt",
                            Format::Dot => "dot",
                        };
                        let path = dir.join(format!("{}.{ext}", file_stem(arg)));
                        std::fs::write(&path, body)?;
                        println!("{}", path.display());
                    }
                    None => print!("{body}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Wl { g, h, k } => {
            let (g, h) = (load_graph(g)?, load_graph(h)?);
            let wl = WlConfig {
                max_tuples: harness_config(cli)?.max_tuples,
            };
            let coloring = wl_refine_with(&g, Some(&h), *k, &wl)?;
            let equivalent = g.n() == h.n() && coloring.palettes_equal();
            println!(
                "{}",
                if equivalent {
                    "EQUIVALENT"
                } else {
                    "DISTINGUISHED"
                }
            );
            println!("rounds_used: {}", coloring.rounds_used());
            println!(
                "palette_sizes: {} {}",
                coloring.palette(0).len(),
                coloring.palette(1).len()
            );
            Ok(if equivalent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Lp { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            let lp = parse_lp(&text)?;
            let sol = solve_with(&lp, &harness_config(cli)?.lp())?;
            match (sol.status, &sol.value) {
                (LpStatus::Optimal, Some(v)) => println!("{}", format_rational(v)),
                (LpStatus::Infeasible, _) => println!("infeasible"),
                (LpStatus::Unbounded, _) => println!("unbounded"),
                (status, None) => bail!("solver ended {status:?} without a value"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pack {
            pattern,
            host,
            mode,
            integral,
        } => {
            let (f, g) = (load_graph(pattern)?, load_graph(host)?);
            let cfg = harness_config(cli)?;
            let system = packing_system(&f, &g, (*mode).into())?;
            let out = if *integral {
                let sol = integral_packing_with(&system, &cfg.bnb())?;
                let edges = g.edge_list();
                let witness: Vec<serde_json::Value> = sol
                    .witness
                    .iter()
                    .map(|&i| {
                        let set = &system.sets()[i];
                        match mode {
                            PackMode::Vertex => json!(set),
                            PackMode::Edge => {
                                json!(set
                                    .iter()
                                    .map(|&e| [edges[e].0, edges[e].1])
                                    .collect::<Vec<_>>())
                            }
                        }
                    })
                    .collect();
                json!({ "value_num": sol.value, "value_den": 1, "witness": witness })
            } else {
                let v = frac_matching_with(&system, &cfg.lp())?;
                json!({
                    "value_num": v.numer().to_string().parse::<i64>()?,
                    "value_den": v.denom().to_string().parse::<i64>()?,
                    "witness": null,
                })
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Exp { action } => match action {
            ExpAction::List => {
                for e in registry() {
                    println!("{}\t{}", e.id, e.claim);
                }
                Ok(ExitCode::SUCCESS)
            }
            ExpAction::Run { id } => {
                let mut cfg = harness_config(cli)?;
                if id != "all" {
                    if !experiment_ids().contains(id) {
                        bail!("unknown experiment {id:?}");
                    }
                    cfg.experiments = Some(vec![id.clone()]);
                }
                let summary = run_all(&cfg)?;
                for r in &summary.reports {
                    let status = match (&r.skipped, r.passed) {
                        (Some(reason), _) => format!("SKIPPED ({reason})"),
                        (None, true) => "PASS".into(),
                        (None, false) => "FAIL".into(),
                    };
                    println!("{}: {status}", r.experiment_id);
                }
                println!(
                    "{} run, {} failed, {} skipped; reports in {}",
                    summary.reports.len(),
                    summary.failed().len(),
                    summary.skipped().len(),
                    cfg.out_dir.display()
                );
                Ok(if summary.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
