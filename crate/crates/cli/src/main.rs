//! `artemus`: validate, explore and serve redress-pathway graphs.
//!
//! Exit codes: 0 success, 1 the input is readable but fails the check
//! (error diagnostics, unknown entry point), 2 the input cannot be read or
//! parsed.

use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use artemus_core::canonical::{to_canonical_string, Style};
use artemus_core::dot::export_dot;
use artemus_core::pathfinder::{enumerate_routes, PathfinderError, Route, RouteOptions, DEFAULT_MAX_DEPTH};
use artemus_core::search::search;
use artemus_core::validation::Severity;
use artemus_core::{parse_graph, validate, Lang, PathwayGraph};
use artemus_server::{AppState, ServerConfig, DATA_DIR_ENV, DEFAULT_PORT};

#[derive(Parser)]
#[command(name = "artemus", version, about = "Author, check and serve redress-pathway graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file; exit 0 iff it is publishable.
    Validate {
        file: PathBuf,
        /// Treat warnings as failures too.
        #[arg(long)]
        strict: bool,
        /// Print diagnostics as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate every rule-consistent route from an entry point.
    Routes {
        file: PathBuf,
        #[arg(long)]
        entry: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Also list walks that stop before a terminal node.
        #[arg(long)]
        include_abandonments: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rank entry points against a free-text description.
    Search {
        file: PathBuf,
        query: String,
        #[arg(long, default_value = "en")]
        lang: Lang,
        #[arg(short, default_value_t = 5)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of graph files; the bundled datasets if omitted.
        #[arg(long, env = DATA_DIR_ENV)]
        data: Option<PathBuf>,
        /// Allowed CORS origin (repeatable). Any origin if none given.
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
    },
    /// Print the graph as a Graphviz digraph.
    ExportDot { file: PathBuf },
}

/// A failed command: message for stderr and the exit code to use.
struct Failure(u8, String);

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<PathwayGraph, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    parse_graph(&bytes).map_err(|e| Failure(2, format!("{}: {} ({})", path.display(), e, e.code())))
}

fn run_validate(file: &Path, strict: bool, as_json: bool) -> Outcome {
    let graph = match load(file) {
        Ok(g) => g,
        Err(Failure(code, msg)) if as_json => {
            println!("{}", json!({"parseError": msg}));
            return Err(Failure(code, String::new()));
        }
        Err(f) => return Err(f),
    };
    let diagnostics = validate(&graph);
    let errors = diagnostics.iter().filter(|d| d.severity == Severity::Error).count();
    let warnings = diagnostics.len() - errors;
    let publishable = errors == 0;
    let pass = publishable && !(strict && warnings > 0);

    if as_json {
        let report = json!({
            "diagnostics": diagnostics,
            "errors": errors,
            "warnings": warnings,
            "publishable": publishable,
        });
        print!("{}", to_canonical_string(&report, Style::Pretty));
    } else {
        for d in &diagnostics {
            eprintln!("{d}");
        }
        eprintln!("{}: {errors} error(s), {warnings} warning(s)", file.display());
    }
    if pass {
        Ok(())
    } else {
        Err(Failure(1, String::new()))
    }
}

fn describe(route: &Route) -> String {
    let mut line = route.edges.join(" -> ");
    if line.is_empty() {
        line.push_str("(no action)");
    }
    line.push_str(&format!(" => {}", route.terminal_node));
    let mut notes = Vec::new();
    if route.abandoned {
        notes.push("stops here".to_string());
    }
    if route.flags.contains_legal_claim {
        notes.push("legal claim".to_string());
    }
    if let Some(days) = route.flags.min_time_limit_days {
        notes.push(format!("shortest limit {days} days"));
    }
    if !notes.is_empty() {
        line.push_str(&format!("  [{}]", notes.join(", ")));
    }
    line
}

fn run_routes(file: &Path, entry: &str, max_depth: usize, include_abandonments: bool, as_json: bool) -> Outcome {
    let graph = load(file)?;
    let opts = RouteOptions {
        max_depth,
        include_abandonments,
        ..RouteOptions::default()
    };
    let set = enumerate_routes(&graph, entry, opts).map_err(|e| match e {
        PathfinderError::UnknownEntryPoint(_) => Failure(1, e.to_string()),
        other => Failure(2, other.to_string()),
    })?;
    if as_json {
        print!("{}", to_canonical_string(&set, Style::Pretty));
        return Ok(());
    }
    for (i, route) in set.routes.iter().enumerate() {
        println!("{:>3}. {}", i + 1, describe(route));
    }
    let noun = if set.routes.len() == 1 { "route" } else { "routes" };
    if set.truncated {
        println!("{} {noun} (truncated at depth {max_depth})", set.routes.len());
    } else {
        println!("{} {noun}", set.routes.len());
    }
    Ok(())
}

fn run_search(file: &Path, query: &str, lang: Lang, k: usize, as_json: bool) -> Outcome {
    let graph = load(file)?;
    let matches = search(&graph, query, lang, k);
    if as_json {
        print!("{}", to_canonical_string(&json!({ "matches": matches }), Style::Pretty));
        return Ok(());
    }
    if matches.is_empty() {
        eprintln!("no matching entry points");
    }
    for m in &matches {
        let description = graph
            .entry_point(&m.entry_point_id)
            .map(|e| e.description.get(lang).to_string())
            .unwrap_or_default();
        println!("{:>3}  {}  {}", m.score, m.entry_point_id, description);
    }
    Ok(())
}

fn run_serve(host: std::net::IpAddr, port: u16, data: Option<PathBuf>, cors_origins: Vec<String>) -> Outcome {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();

    let state = AppState::load(data.as_deref()).map_err(|e| Failure(2, e.to_string()))?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure(2, e.to_string()))?;
    runtime.block_on(async move {
        let addr = SocketAddr::new(host, port);
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Failure(2, format!("cannot bind {addr}: {e}")))?;
        let local = listener.local_addr().map_err(|e| Failure(2, e.to_string()))?;
        eprintln!("listening on http://{local} ({} graphs)", state.graphs().len());
        artemus_server::serve(listener, state, ServerConfig { cors_origins })
            .await
            .map_err(|e| Failure(2, e.to_string()))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { file, strict, json } => run_validate(&file, strict, json),
        Command::Routes {
            file,
            entry,
            max_depth,
            include_abandonments,
            json,
        } => run_routes(&file, &entry, max_depth, include_abandonments, json),
        Command::Search {
            file,
            query,
            lang,
            k,
            json,
        } => run_search(&file, &query, lang, k, json),
        Command::Serve {
            port,
            host,
            data,
            cors_origins,
        } => run_serve(host, port, data, cors_origins),
        Command::ExportDot { file } => load(&file).map(|g| print!("{}", export_dot(&g))),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
