//! `arglayer` command line: validate, solve, explain, render and serve.
//!
//! Exit codes are 0 on success, 1 for input errors (unreadable or invalid
//! frameworks, out-of-range indices) and 2 for usage errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arglayer_core::explain::explain_target;
use arglayer_core::formats::{self, Format};
use arglayer_core::grounded::grounded;
use arglayer_core::layout::{export_dot, export_layout_json, View};
use arglayer_core::semantics::enumerate;
use arglayer_core::{
    Attack, CancelToken, CandidateMode, Explanation, Framework, Label, SearchBounds, Semantics,
    SolutionSet,
};

#[derive(Debug, Parser)]
#[command(
    name = "arglayer",
    version,
    about = "Layered exploration of abstract argumentation frameworks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a framework and report its size or the first error.
    Validate(InputArgs),
    /// Enumerate the solutions of a semantics.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "grounded")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        output_format: TextFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Critical attack sets of one solution.
    Explain {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "stable")]
        semantics: Semantics,
        #[arg(long, default_value_t = 0)]
        solution: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        output_format: TextFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Draw the grounded layout, a solution overlay or a what-if suspension.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "stable")]
        semantics: Semantics,
        /// Overlay this solution on the grounded layout.
        #[arg(long, conflicts_with = "suspend")]
        solution: Option<usize>,
        /// Mark this critical set of the solution (defaults to 0 with --solution; `none` for the plain overlay).
        #[arg(long, requires = "solution")]
        delta: Option<DeltaChoice>,
        /// Attacks to suspend, as `a,b;c,d`.
        #[arg(long, value_parser = parse_suspend)]
        suspend: Option<Suspension>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = RenderFormat::Dot)]
        output_format: RenderFormat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Framework file, or `-` for stdin (requires --format).
    pub input: PathBuf,
    /// Input format; overrides the file extension.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value = "failing")]
    pub candidates: CandidateMode,
    #[arg(long, default_value_t = SearchBounds::default().max_cardinality)]
    pub max_delta: usize,
    #[arg(long, default_value_t = SearchBounds::default().max_tests)]
    pub max_tests: usize,
    #[arg(long, default_value_t = SearchBounds::default().max_results)]
    pub max_results: usize,
}

impl SearchArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_cardinality: self.max_delta,
            max_tests: self.max_tests,
            max_results: self.max_results,
        }
    }
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = arglayer_service::DEFAULT_BIND)]
    pub bind: String,
    #[arg(long, default_value_t = 100)]
    pub max_sessions: usize,
    /// Idle seconds before a session expires.
    #[arg(long, default_value_t = 3600)]
    pub ttl: u64,
    /// Browser origin allowed to call the API; repeatable.
    #[arg(long)]
    pub cors_origin: Vec<String>,
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long, default_value_t = 4 * 1024 * 1024)]
    pub max_body_bytes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaChoice {
    None,
    Index(usize),
}

impl std::str::FromStr for DeltaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "none" {
            return Ok(DeltaChoice::None);
        }
        s.parse()
            .map(DeltaChoice::Index)
            .map_err(|_| format!("expected an index or `none`, got `{s}`"))
    }
}

/// Attacks named on the command line as `a,b;c,d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suspension(pub Vec<(String, String)>);

fn parse_suspend(s: &str) -> Result<Suspension, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(
            |pair| match pair.split(',').map(str::trim).collect::<Vec<_>>()[..] {
                [a, b] if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
                _ => Err(format!("expected `source,target`, got `{pair}`")),
            },
        )
        .collect::<Result<_, _>>()
        .map(Suspension)
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<arglayer_core::Error> for CliError {
    fn from(e: arglayer_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

impl InputArgs {
    fn check(&self) -> Result<(), CliError> {
        if self.input.as_os_str() == "-" && self.format.is_none() {
            return Err(CliError::Usage(
                "reading from stdin requires --format".into(),
            ));
        }
        Ok(())
    }

    fn load(&self) -> Result<Framework, CliError> {
        let text = if self.input.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| input_error(&self.input, e))?;
            s
        } else {
            std::fs::read_to_string(&self.input).map_err(|e| input_error(&self.input, e))?
        };
        let format = self
            .format
            .or_else(|| Format::from_extension(&self.input))
            .unwrap_or_else(|| Format::sniff(&text));
        formats::parse(&text, format).map_err(|e| input_error(&self.input, e))
    }
}

fn emit(out: &OutArgs, mut text: String) -> Result<(), CliError> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| input_error(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate(input) => {
            input.check()?;
            let f = input.load()?;
            println!("ok: {} arguments, {} attacks", f.len(), f.attack_count());
            Ok(())
        }
        Command::Solve {
            input,
            semantics,
            output_format,
            out,
        } => {
            input.check()?;
            let f = input.load()?;
            let set = enumerate(&f, semantics);
            let text = match output_format {
                TextFormat::Json => pretty(&set.to_json(&f)),
                TextFormat::Text => solutions_table(&f, &set),
            };
            emit(&out, text)
        }
        Command::Explain {
            input,
            semantics,
            solution,
            search,
            output_format,
            out,
        } => {
            input.check()?;
            let f = input.load()?;
            let e = explanation(&f, semantics, solution, &search)?;
            let text = match output_format {
                TextFormat::Json => pretty(&e.to_json(&f)),
                TextFormat::Text => explanation_text(&f, &e),
            };
            emit(&out, text)
        }
        Command::Render {
            input,
            semantics,
            solution,
            delta,
            suspend,
            search,
            output_format,
            out,
        } => {
            input.check()?;
            let f = input.load()?;
            let base = grounded(&f);
            let view = match (solution, suspend) {
                (Some(i), _) => {
                    let e = explanation(&f, semantics, i, &search)?;
                    match delta.unwrap_or(DeltaChoice::Index(0)) {
                        DeltaChoice::None => View::solution(&f, &base, &e.overlay.target)?,
                        DeltaChoice::Index(j) => {
                            let critical = e.critical.sets.get(j).ok_or_else(|| {
                                CliError::Input(format!(
                                    "critical set {j} out of range ({} sets)",
                                    e.critical.sets.len()
                                ))
                            })?;
                            View::resolution(&f, &base, &e.overlay.target, critical)?
                        }
                    }
                }
                (None, Some(Suspension(pairs))) => {
                    let attacks = pairs
                        .iter()
                        .map(|(a, b)| Attack::parse(a, b))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let edges = f
                        .resolve_attacks(&attacks)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    View::what_if(&f, &base, &edges)
                }
                (None, None) => View::from_grounded(&f, base),
            };
            let text = match output_format {
                RenderFormat::Dot => export_dot(&f, &view),
                RenderFormat::Json => export_layout_json(&f, &view),
            };
            emit(&out, text)
        }
        Command::Serve(args) => serve(args),
    }
}

fn explanation(
    f: &Framework,
    semantics: Semantics,
    index: usize,
    search: &SearchArgs,
) -> Result<Explanation, CliError> {
    let solutions = enumerate(f, semantics);
    let target = solutions.get(index)?;
    let base = grounded(f);
    Ok(explain_target(
        f,
        &base,
        target,
        index,
        search.candidates,
        search.bounds(),
        &CancelToken::new(),
    )?)
}

fn solutions_table(f: &Framework, set: &SolutionSet) -> String {
    let names: Vec<&str> = f.arguments().iter().map(|a| a.id.as_str()).collect();
    let width = names
        .iter()
        .map(|n| n.chars().count())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut s = format!("{} {} solution(s)", set.semantics.name(), set.len());
    if set.truncated {
        s.push_str(" (truncated)");
    }
    s.push('\n');
    s.push_str(&format!("{:<8}", "#"));
    for n in &names {
        s.push_str(&format!(" {n:<width$}"));
    }
    for (k, l) in set.solutions.iter().enumerate() {
        s.push('\n');
        s.push_str(&format!("{k:<8}"));
        for x in 0..names.len() {
            s.push_str(&format!(" {:<width$}", l.get(x).as_str()));
        }
    }
    s.lines().map(str::trim_end).collect::<Vec<_>>().join("\n")
}

fn explanation_text(f: &Framework, e: &Explanation) -> String {
    let names = |xs: Vec<usize>| -> String {
        xs.iter()
            .map(|&x| f.id(x).as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = format!("solution {}\n", e.solution_index);
    s.push_str(&format!(
        "in: {}\n",
        names(e.overlay.target.with_label(Label::In).collect())
    ));
    s.push_str(&format!(
        "resolved: {}\n",
        names(e.overlay.resolved.clone())
    ));
    s.push_str("critical sets:\n");
    for c in &e.critical.sets {
        let edges: Vec<String> = c
            .attacks(f)
            .iter()
            .map(|a| format!("{}->{}", a.source, a.target))
            .collect();
        s.push_str(&format!("  {{{}}}\n", edges.join(", ")));
    }
    s.push_str(&format!("truncated: {}", e.critical.truncated));
    s
}

fn serve(args: ServeArgs) -> Result<(), CliError> {
    let config = arglayer_service::Config {
        max_sessions: args.max_sessions,
        ttl: Duration::from_secs(args.ttl),
        cache: !args.no_cache,
        max_body_bytes: args.max_body_bytes,
        cors_origins: args.cors_origin,
    };
    let app = arglayer_service::router(&config).map_err(|e| CliError::Usage(e.to_string()))?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Input(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(&args.bind)
            .await
            .map_err(|e| CliError::Input(format!("cannot bind {}: {e}", args.bind)))?;
        let addr = listener
            .local_addr()
            .map_err(|e| CliError::Input(e.to_string()))?;
        eprintln!("listening on http://{addr}");
        arglayer_service::serve(listener, app, async {
            tokio::signal::ctrl_c().await.ok();
        })
        .await
        .map_err(|e| CliError::Input(e.to_string()))
    })
}
