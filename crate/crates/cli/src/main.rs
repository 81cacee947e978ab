mod pipeline;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kwalk::graph::io::{parse_all, Format};

use pipeline::{Job, Task};
use report::{Record, Report};

#[derive(Parser, Debug)]
#[command(name = "kwalk", version, about = "Bounded spanning walks and trails on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Graph file; repeat for several
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Input format; inferred from the extension (.g6, .s6, .el) when absent
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    #[arg(long, global = true)]
    tsv: bool,
    /// Largest k the oracle tries
    #[arg(long, global = true, default_value_t = 8)]
    max_k: u32,
    /// Per-graph time limit; an expired graph is reported as skip
    #[arg(long, global = true, default_value_t = 60000)]
    timeout_ms: u64,
    /// Graphs processed in parallel
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Include wall time per record
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Graph6,
    Sparse6,
    EdgeList,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Sparse6 => Format::Sparse6,
            FormatArg::EdgeList => Format::EdgeList,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least k with a k-walk, plus a certificate
    MinWalk,
    /// Least k with a k-trail, plus a certificate
    MinTrail,
    /// Partition into m-tree-connected components
    Decompose {
        #[arg(long)]
        m: usize,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Reduce to a minor-minimal instance and lift a k-walk back
    Reduce {
        #[arg(long)]
        k: u32,
    },
    #[command(subcommand)]
    Embed(Embed),
    /// Compare min trail number of K_{4,4-chi} with the conjectured bound
    LowerBound {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Contraction properties of minimally 3-connected graphs
    Halin,
    /// 3-connected graphs on a surface of characteristic chi have bounded walks
    WalkTheorem {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// 5-connected graphs on a surface of characteristic chi have bounded trails
    TrailTheorem {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Embed {
    /// Trace the faces of a rotation system
    Chi {
        #[arg(long)]
        rotation: PathBuf,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            if report.summary.fail > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => usage_error(msg),
    }
}

fn run(cli: Cli) -> Result<Report, String> {
    let common = cli.common;
    if common.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    let task = match cli.command {
        Command::MinWalk => Task::MinWalk,
        Command::MinTrail => Task::MinTrail,
        Command::Decompose { m } => Task::Decompose { m },
        Command::Verify(Verify::Halin) => Task::Halin,
        Command::Verify(Verify::WalkTheorem { chi }) => {
            let k = kwalk::surfaces::walk_bound(chi).map_err(|e| e.to_string())?;
            Task::WalkTheorem { chi, k: k as u32 }
        }
        Command::Verify(Verify::TrailTheorem { chi }) => {
            let k = kwalk::surfaces::trail_bound(chi).map_err(|e| e.to_string())?;
            Task::TrailTheorem { chi, k: k as u32 }
        }
        Command::Reduce { k } => {
            if k < 3 {
                return Err(format!("--k must be at least 3, got {k}"));
            }
            Task::Reduce { k }
        }
        Command::Embed(Embed::Chi { rotation }) => {
            let text = std::fs::read_to_string(&rotation).map_err(|e| format!("{}: {e}", rotation.display()))?;
            Task::EmbedChi { rotation: text }
        }
        Command::LowerBound { chi } => {
            if chi > 3 {
                return Err(format!("--chi must be at most 3 for K_{{4,4-chi}}, got {chi}"));
            }
            Task::LowerBound { chi }
        }
    };
    let jobs = if let Task::LowerBound { chi } = task {
        vec![Job::lower_bound(chi)]
    } else {
        if common.input.is_empty() {
            return Err("at least one --input is required".into());
        }
        load_inputs(&common)?
    };
    let settings = pipeline::Settings {
        max_k: common.max_k,
        timeout: std::time::Duration::from_millis(common.timeout_ms),
    };
    for job in &jobs {
        pipeline::precheck(&task, job)?;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.jobs).build().map_err(|e| e.to_string())?;
    let records: Vec<Record> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter().map(|job| pipeline::run(&task, job, &settings, common.timings)).collect()
    });
    let report = Report::new(records);
    let out = if common.tsv { report.to_tsv() } else { report.to_json() };
    print!("{out}");
    Ok(report)
}

fn load_inputs(common: &Common) -> Result<Vec<Job>, String> {
    let mut jobs = Vec::new();
    for path in &common.input {
        let format = match common.format {
            Some(f) => f.into(),
            None => path
                .extension()
                .and_then(|e| e.to_str())
                .and_then(Format::from_extension)
                .ok_or_else(|| format!("{}: cannot infer format, pass --format", path.display()))?,
        };
        let text = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let parsed = parse_all(&text, format).map_err(|e| format!("{}: {e}", path.display()))?;
        for (i, p) in parsed.into_iter().enumerate() {
            jobs.push(Job { source: format!("{}#{i}", path.display()), graph: p.graph, edge_order: p.edge_order });
        }
    }
    Ok(jobs)
}
