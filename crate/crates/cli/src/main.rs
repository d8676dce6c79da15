use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use specind::bounds::{best_bounds_with, BoundOptions, BoundSummary};
use specind::ch::{ch_classify_with, ChOptions, CHVerdict};
use specind::exact::{alpha_k_exact_with, ExactConfig, ExactResult};
use specind::graphs::{distance_matrix, parse_edge_list, parse_graph6, to_graph6};
use specind::optimize::{minor_lp, sign_milp, SignConfig};
use specind::report::{self, Format};
use specind::spectra::{exact_family_spectrum, spectrum};
use specind::tables::{self, TableOptions, TableReport};
use specind::{fixtures, Error, FamilySpec, Graph, Spectrum};

#[derive(Parser)]
#[command(name = "specind", version, about = "Spectral bounds on the k-independence number")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Distinct eigenvalues and multiplicities.
    Spectrum(Common),
    /// Every applicable bound on alpha_k.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Also run the exact oracle.
        #[arg(long)]
        exact: bool,
    },
    /// Cvetkovic-Hoffman classification.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Skip the exact oracle (no tightness verdict).
        #[arg(long)]
        no_exact: bool,
    },
    /// Recompute a reference table and compare.
    Table {
        /// t1, t2, minor-odd, sign-odd6, t4, t5 or all.
        id: String,
        /// Comma-separated row keys.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<String>>,
        /// Worker threads (default: logical cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value = "120")]
        timeout: f64,
        /// Largest odd graph O_l whose exact alpha is computed.
        #[arg(long, default_value_t = 6)]
        odd_max: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Print a family graph as graph6 (or an edge list).
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        edges: bool,
    },
    /// Print the minor LP or the sign MILP in plain text.
    Dump {
        #[command(flatten)]
        common: Common,
        /// minor or sign.
        #[arg(long, default_value = "minor")]
        program: String,
    },
}

#[derive(Args)]
struct Common {
    /// Family such as `petersen`, `odd:5`, `kneser:6,2`, `cycle:5`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    family: Option<String>,
    /// graph6 file, edge-list file, or the name of a bundled fixture.
    #[arg(long = "in")]
    input: Option<String>,
    /// An integer or `all` (every k below the diameter).
    #[arg(long, default_value = "1")]
    k: String,
    /// Eigenvalue grouping tolerance.
    #[arg(long, default_value_t = specind::tol::GROUPING)]
    tol: f64,
    /// Exact-oracle budget in seconds.
    #[arg(long, default_value = "120")]
    timeout: f64,
    #[arg(long, default_value = "json")]
    format: Format,
}

struct Loaded {
    graph: Graph,
    spectrum: Spectrum,
}

fn read_graph(arg: &str) -> specind::Result<Graph> {
    let path = Path::new(arg);
    if !path.exists() && fixtures::graph_exists(arg) {
        return fixtures::load_graph(arg);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedGraph6(format!("{arg}: {e}")))?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_owned();
    let trimmed = text.trim();
    let looks_g6 = path.extension().is_some_and(|e| e == "g6")
        || (trimmed.lines().count() == 1 && !trimmed.contains(char::is_whitespace));
    let g = if looks_g6 { parse_graph6(trimmed)? } else { parse_edge_list(&text)? };
    Ok(g.with_label(label))
}

impl Common {
    fn load(&self) -> specind::Result<Loaded> {
        if let Some(f) = &self.family {
            let spec: FamilySpec = f.parse()?;
            let graph = spec.generate()?;
            let spectrum = match exact_family_spectrum(&spec) {
                Ok(s) => s,
                Err(_) => spectrum(&graph, self.tol)?,
            };
            return Ok(Loaded { graph, spectrum });
        }
        let graph = read_graph(self.input.as_deref().expect("clap enforces one input"))?;
        let spectrum = spectrum(&graph, self.tol)?;
        Ok(Loaded { graph, spectrum })
    }

    fn ks(&self, g: &Graph) -> specind::Result<Vec<usize>> {
        if self.k == "all" {
            let diam = distance_matrix(g).diameter();
            return Ok((1..diam.max(2)).collect());
        }
        let k: usize = self.k.parse().map_err(|_| Error::InvalidK {
            k: 0,
            reason: format!("`{}` is not an integer or `all`", self.k),
        })?;
        if k == 0 {
            return Err(Error::InvalidK { k, reason: "k must be at least 1".into() });
        }
        Ok(vec![k])
    }

    fn exact_config(&self) -> ExactConfig {
        ExactConfig { timeout: secs(self.timeout), ..ExactConfig::default() }
    }
}

fn secs(s: f64) -> Duration {
    Duration::from_secs_f64(s.max(0.0))
}

enum Outcome {
    Ok,
    Mismatch,
}

fn join_outputs(parts: Vec<String>, fmt: Format) -> String {
    match fmt {
        Format::Json if parts.len() > 1 => {
            let values: Vec<serde_json::Value> =
                parts.iter().map(|p| serde_json::from_str(p).expect("own json")).collect();
            report::to_json(&values)
        }
        Format::Csv if parts.len() > 1 => {
            // One header line.
            let mut out = parts[0].clone();
            for p in &parts[1..] {
                out.extend(p.split_inclusive('\n').skip(1));
            }
            out
        }
        _ => parts.concat(),
    }
}

fn run(cli: Cli) -> specind::Result<Outcome> {
    match cli.cmd {
        Cmd::Spectrum(c) => {
            let l = c.load()?;
            print!("{}", report::render_spectrum(&l.spectrum, c.format)?);
        }
        Cmd::Bounds { common: c, exact } => {
            let l = c.load()?;
            let opts = BoundOptions::default();
            let mut parts = Vec::new();
            for k in c.ks(&l.graph)? {
                let summary: BoundSummary = best_bounds_with(&l.graph, &l.spectrum, k, &opts)?;
                let ex: Option<ExactResult> = if exact {
                    let r = alpha_k_exact_with(&l.graph, k, &c.exact_config())?;
                    eprintln!("exact alpha_{k}: {:.3} s", r.elapsed.as_secs_f64());
                    Some(r)
                } else {
                    None
                };
                parts.push(report::render_bounds(&summary, ex.as_ref(), c.format)?);
            }
            print!("{}", join_outputs(parts, c.format));
        }
        Cmd::Classify { common: c, no_exact } => {
            let l = c.load()?;
            let opts = ChOptions {
                sign: SignConfig::default(),
                exact: (!no_exact).then(|| c.exact_config()),
            };
            let mut parts = Vec::new();
            for k in c.ks(&l.graph)? {
                let v: CHVerdict = ch_classify_with(&l.graph, &l.spectrum, k, &opts)?;
                parts.push(report::render_verdict(&v, c.format)?);
            }
            print!("{}", join_outputs(parts, c.format));
        }
        Cmd::Table { id, rows, jobs, timeout, odd_max, format } => {
            let ids: Vec<String> = if id == "all" {
                tables::TABLE_IDS.iter().map(|s| s.to_string()).collect()
            } else {
                vec![id]
            };
            let opts = TableOptions {
                exact: ExactConfig { timeout: secs(timeout), ..ExactConfig::default() },
                odd_exact_max: odd_max,
                ..TableOptions::default()
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::NumericalInstability(format!("thread pool: {e}")))?;
            let mut reports: Vec<TableReport> = Vec::new();
            for id in &ids {
                let table = tables::load_table(id)?;
                let selected = tables::select_rows(&table, rows.as_deref())?;
                let results = pool.install(|| {
                    selected.par_iter().map(|r| tables::evaluate_row(&table.id, r, &opts)).collect::<Vec<_>>()
                });
                reports.push(tables::assemble(&table, results));
            }
            let parts = reports.iter().map(|t| report::render_table(t, format)).collect::<specind::Result<Vec<_>>>()?;
            print!("{}", join_outputs(parts, format));
            if reports.iter().any(|t| t.rows.iter().any(|r| r.status == tables::RowStatus::FixtureMissing)) {
                eprintln!("note: some rows were skipped because their fixture is missing");
            }
            if !reports.iter().all(|t| t.all_match) {
                return Ok(Outcome::Mismatch);
            }
        }
        Cmd::Gen { family, edges } => {
            let g = family.parse::<FamilySpec>()?.generate()?;
            if edges {
                for (u, v) in g.edges() {
                    println!("{u} {v}");
                }
            } else {
                println!("{}", to_graph6(&g));
            }
        }
        Cmd::Dump { common: c, program } => {
            let l = c.load()?;
            for k in c.ks(&l.graph)? {
                let text = match program.as_str() {
                    "minor" => minor_lp(&l.spectrum, k).to_text(),
                    "sign" => sign_milp(&l.spectrum, k, &SignConfig::default()).to_text(),
                    other => {
                        return Err(Error::NotApplicable(format!("unknown program `{other}` (minor, sign)")));
                    }
                };
                print!("{text}");
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e} ({})", error_name(&e));
            ExitCode::from(2)
        }
    }
}

/// The variant name, for scripts that grep stderr.
fn error_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_owned()
}
