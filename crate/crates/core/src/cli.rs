//! The `morsecraft` command line.
//!
//! Exit status: 0 on success or a certificate, 2 when a search ends in
//! Unknown/None, 1 on bad input or any other error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::complex::SimplicialComplex;
use crate::construct::{cone, fresh_labels, join, suspension};
use crate::corpus::{self, sha256_hex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::homology::{homology_integral_with, is_homology_manifold_with};
use crate::io::{format_facets, parse_facets};
use crate::label::Label;
use crate::morse::morse_inequalities;
use crate::recognition::{heegaard_upper_bound, lc_status, sphere_certificate, Certificate};
use crate::record::{RunConfig, RunRecord};
use crate::search::{
    collapse_depth, collapses_onto, decide_collapsibility_exhaustively, is_collapsible, is_endocollapsible,
    optimal_morse_bruteforce, random_discrete_morse, BruteForceConfig, CollapseTrace, SearchConfig, Strategy, Verdict,
};
use crate::subdivision::sd_iter;

#[derive(Debug, Parser)]
#[command(name = "morsecraft", version, about = "Discrete Morse theory on simplicial complexes")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Base seed; attempt i uses seed + i.
    #[arg(long, global = true, env = "MORSECRAFT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub attempts: usize,
    /// Stop starting new attempts after this many seconds.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    /// uniform or lex-min.
    #[arg(long, global = true, default_value = "uniform")]
    pub strategy: Strategy,
    /// Run attempts on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Write the machine-readable result here (`-` for standard output).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Append a run record to this JSON-lines file.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
}

/// Inputs are a facet file path, `-` for standard input, or `corpus:NAME`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// f-vector, Euler characteristic and structure.
    Info { input: String },
    /// Mod-2, rational and integral homology.
    Homology { input: String },
    /// Discrete gradients: random search or exhaustive optimum.
    #[command(subcommand)]
    Morse(MorseCommand),
    /// Collapse to a point, or onto a subcomplex with --onto.
    Collapse {
        input: String,
        #[arg(long)]
        onto: Option<String>,
        /// Settle collapsibility exhaustively when random search fails.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Does the complex minus a facet collapse onto its boundary?
    Endocollapse {
        input: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Lower bound on the collapse depth from boundary-critical gradients.
    Depth {
        input: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Local constructibility certificate.
    Lc {
        input: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Sphere certificate for a closed pseudomanifold.
    Sphere {
        input: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Upper bound on the Heegaard genus of a closed 3-manifold.
    Heegaard {
        input: String,
        #[arg(long, default_value_t = 0)]
        max_subdivisions: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Barycentric subdivision; writes the facet list.
    Subdivide {
        input: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Cones, suspensions and joins; writes the facet list.
    #[command(subcommand)]
    Build(BuildCommand),
    /// List or print built-in complexes.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Subcommand)]
pub enum MorseCommand {
    /// Random discrete Morse heuristic.
    Random {
        input: String,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Exhaustive optimum for small complexes.
    Brute {
        input: String,
        #[arg(long, default_value_t = 60)]
        cap: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildCommand {
    Cone {
        input: String,
        /// Apex label; a fresh integer by default.
        #[arg(long)]
        apex: Option<String>,
    },
    Suspension {
        input: String,
    },
    Join {
        left: String,
        right: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    List,
    Emit { name: String },
}

/// What a command produced.
struct Outcome {
    payload: Value,
    unknown: bool,
    summary: String,
    /// Facet text for constructions, written to standard output.
    emit: Option<String>,
}

impl Outcome {
    fn done(payload: Value, summary: String) -> Self {
        Outcome { payload, unknown: false, summary, emit: None }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    /// Digests of inputs in the order read.
    digests: Vec<String>,
    write_files: bool,
    search: SearchConfig,
}

impl Ctx<'_> {
    fn input(&mut self, arg: &str) -> Result<SimplicialComplex> {
        if let Some(name) = arg.strip_prefix("corpus:") {
            let c = corpus::load(name)?;
            self.digests.push(sha256_hex(format_facets(&c).as_bytes()));
            return Ok(c);
        }
        let mut text = String::new();
        if arg == "-" {
            self.stdin.read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(arg)?;
        }
        self.digests.push(sha256_hex(text.as_bytes()));
        parse_facets(&text)
    }

    fn write(&self, path: &Option<PathBuf>, contents: &str) -> Result<()> {
        if let (Some(p), true) = (path, self.write_files) {
            std::fs::write(p, contents)?;
        }
        Ok(())
    }
}

fn search_config(opts: &GlobalOpts) -> SearchConfig {
    SearchConfig {
        seed: opts.seed,
        attempts: opts.attempts,
        strategy: opts.strategy,
        time_budget: opts.budget_seconds.map(Duration::from_secs_f64),
        execution: if opts.sequential { Execution::Sequential } else { Execution::Parallel },
        max_subdivisions: 0,
    }
}

fn verdict_name<T>(v: &Verdict<T>) -> &'static str {
    match v {
        Verdict::Certified(_) => "certified",
        Verdict::Unknown => "unknown",
        Verdict::CertifiedNot => "certified-not",
    }
}

fn certificate_outcome(ctx: &Ctx, mut cert: Certificate, witness: &Option<PathBuf>) -> Result<Outcome> {
    if let (Some(path), Some(pairs)) = (witness, &cert.witness) {
        let text: String = pairs.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect();
        ctx.write(witness, &text)?;
        cert.witness_file = Some(path.display().to_string());
    }
    let summary = match (&cert.vector, cert.is_positive()) {
        (Some(v), true) => format!("certificate {:?} with vector {v}", cert.kind),
        _ => match &cert.note {
            Some(note) => format!("no certificate: {note}"),
            None => format!("no certificate after {} attempts", cert.attempts),
        },
    };
    let unknown = !cert.is_positive();
    Ok(Outcome { payload: serde_json::to_value(&cert)?, unknown, summary, emit: None })
}

fn execute(command: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    let cfg = ctx.search.clone();
    match command {
        Command::Info { input } => {
            let c = ctx.input(input)?;
            let r = c.structure_report();
            let payload = json!({
                "dim": c.dim(),
                "f_vector": c.f_vector(),
                "euler_characteristic": c.euler_characteristic(),
                "vertices": c.labels().len(),
                "facets": c.facets().len(),
                "connected": c.is_connected(),
                "structure": r,
            });
            let summary = format!(
                "f = {:?}, χ = {}, pure: {}, pseudomanifold: {}, boundary facets: {}",
                c.f_vector(),
                c.euler_characteristic(),
                r.is_pure,
                r.is_pseudomanifold,
                r.boundary_facet_count
            );
            Ok(Outcome::done(payload, summary))
        }
        Command::Homology { input } => {
            let c = ctx.input(input)?;
            let h = homology_integral_with(&c, cfg.execution);
            let manifold = if c.is_pure() { Some(is_homology_manifold_with(&c, cfg.execution)?) } else { None };
            let summary = format!(
                "β(Z/2) = {:?}, β(Q) = {:?}, torsion = {:?}, homology manifold: {}",
                h.betti_mod2,
                h.betti_rational,
                h.torsion.iter().map(|t| t.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                manifold.as_ref().is_some_and(|m| m.is_homology_manifold)
            );
            let payload = json!({
                "homology": h,
                "euler_characteristic": c.euler_characteristic(),
                "manifold": manifold,
            });
            Ok(Outcome::done(payload, summary))
        }
        Command::Morse(MorseCommand::Random { input, trace, witness }) => {
            let c = ctx.input(input)?;
            let s = random_discrete_morse(&c, &cfg)?;
            let mut histogram = BTreeMap::new();
            for v in &s.vectors {
                *histogram.entry(v.to_string()).or_insert(0usize) += 1;
            }
            let report = morse_inequalities(&c, &s.best.gradient)?;
            ctx.write(trace, &s.best.trace.to_json_lines(&c))?;
            ctx.write(witness, &s.best.gradient.to_text(&c))?;
            let summary = format!(
                "best vector {} (attempt {}, seed {}) over {} attempts",
                s.best.vector, s.best.attempt, s.best.seed, s.attempts_run
            );
            let payload = json!({
                "vector": s.best.vector,
                "attempt": s.best.attempt,
                "seed": s.best.seed,
                "attempts_run": s.attempts_run,
                "budget_exhausted": s.budget_exhausted,
                "histogram": histogram,
                "inequalities": report,
                "gradient": s.best.gradient.labelled_pairs(&c),
            });
            Ok(Outcome::done(payload, summary))
        }
        Command::Morse(MorseCommand::Brute { input, cap, witness }) => {
            let c = ctx.input(input)?;
            let opt = optimal_morse_bruteforce(&c, &BruteForceConfig { face_cap: *cap, ..Default::default() })?;
            ctx.write(witness, &opt.gradient.to_text(&c))?;
            let summary = format!("optimal vector {} ({} states)", opt.vector, opt.states);
            let payload = json!({
                "vector": opt.vector,
                "states": opt.states,
                "gradient": opt.gradient.labelled_pairs(&c),
            });
            Ok(Outcome::done(payload, summary))
        }
        Command::Collapse { input, onto, exhaustive, trace } => {
            let m = ctx.input(input)?;
            let verdict = match onto {
                Some(d) => {
                    let d = ctx.input(d)?;
                    collapses_onto(&m, &d, &cfg)?
                }
                None => is_collapsible(&m, &cfg)?,
            };
            let mut payload = json!({ "verdict": verdict_name(&verdict) });
            if let Some(cert) = verdict.certificate() {
                ctx.write(trace, &cert.trace.to_json_lines(&m))?;
                payload["attempt"] = json!(cert.attempt);
                payload["seed"] = json!(cert.seed);
                payload["trace_length"] = json!(cert.trace.len());
            }
            if verdict == Verdict::Unknown && *exhaustive && onto.is_none() {
                let exact = decide_collapsibility_exhaustively(&m, &BruteForceConfig::default())?;
                payload["verdict"] = json!(verdict_name(&exact));
                payload["exhaustive"] = json!(true);
            }
            let name = payload["verdict"].as_str().unwrap_or_default().to_string();
            Ok(Outcome { unknown: name == "unknown", summary: format!("collapse: {name}"), payload, emit: None })
        }
        Command::Endocollapse { input, trace } => {
            let m = ctx.input(input)?;
            let verdict = is_endocollapsible(&m, &cfg)?;
            let mut payload = json!({ "verdict": verdict_name(&verdict) });
            if let Some(cert) = verdict.certificate() {
                ctx.write(trace, &cert.trace.to_json_lines(&m))?;
                payload["facet"] = json!(m.simplex(cert.facet));
                payload["attempt"] = json!(cert.attempt);
                payload["seed"] = json!(cert.seed);
                payload["trace_length"] = json!(cert.trace.len());
            }
            let unknown = !verdict.is_certified();
            Ok(Outcome {
                unknown,
                summary: format!("endocollapsible: {}", verdict_name(&verdict)),
                payload,
                emit: None,
            })
        }
        Command::Depth { input, trace } => {
            let m = ctx.input(input)?;
            let run = collapse_depth(&m, &cfg)?;
            ctx.write(trace, &run.trace.to_json_lines(&m))?;
            let summary = format!(
                "collapse depth ≥ {} (interior vector {}, attempt {})",
                run.depth, run.interior_vector, run.attempt
            );
            let payload = json!({
                "depth_lower_bound": run.depth,
                "interior_vector": run.interior_vector,
                "attempt": run.attempt,
                "seed": run.seed,
                "attempts_run": run.attempts_run,
                "gradient": run.gradient.labelled_pairs(&m),
            });
            Ok(Outcome { unknown: run.depth == 0, summary, payload, emit: None })
        }
        Command::Lc { input, witness } => {
            let m = ctx.input(input)?;
            let cert = lc_status(&m, &cfg)?;
            certificate_outcome(ctx, cert, witness)
        }
        Command::Sphere { input, witness } => {
            let m = ctx.input(input)?;
            let cert = sphere_certificate(&m, &cfg)?;
            certificate_outcome(ctx, cert, witness)
        }
        Command::Heegaard { input, max_subdivisions, witness } => {
            let m = ctx.input(input)?;
            let cfg = SearchConfig { max_subdivisions: *max_subdivisions, ..cfg };
            let cert = heegaard_upper_bound(&m, &cfg)?;
            let mut out = certificate_outcome(ctx, cert.clone(), witness)?;
            if let Some(g) = cert.genus {
                out.summary = format!("Heegaard genus ≤ {g} (vector {})", cert.vector.expect("set with genus"));
            }
            Ok(out)
        }
        Command::Subdivide { input, times } => {
            let c = ctx.input(input)?;
            emitted(sd_iter(&c, *times)?)
        }
        Command::Build(b) => {
            let c = match b {
                BuildCommand::Cone { input, apex } => {
                    let c = ctx.input(input)?;
                    let apex = match apex {
                        Some(a) => Label::parse(a).map_err(Error::Config)?,
                        None => fresh_labels(&c, 1).remove(0),
                    };
                    cone(&c, apex)?
                }
                BuildCommand::Suspension { input } => suspension(&ctx.input(input)?)?,
                BuildCommand::Join { left, right } => {
                    let a = ctx.input(left)?;
                    let b = ctx.input(right)?;
                    join(&a, &b)?
                }
            };
            emitted(c)
        }
        Command::Corpus(CorpusCommand::List) => {
            let names = corpus::list();
            let emit = Some(names.join("\n") + "\n");
            Ok(Outcome { payload: json!(names), unknown: false, summary: String::new(), emit })
        }
        Command::Corpus(CorpusCommand::Emit { name }) => {
            let c = corpus::load(name)?;
            ctx.digests.push(sha256_hex(format_facets(&c).as_bytes()));
            emitted(c)
        }
    }
}

fn emitted(c: SimplicialComplex) -> Result<Outcome> {
    let payload = json!({ "f_vector": c.f_vector(), "facets": c.facets().len(), "vertices": c.labels().len() });
    Ok(Outcome { payload, unknown: false, summary: String::new(), emit: Some(format_facets(&c)) })
}

fn record_for(args: &[String], cli: &Cli, digests: &[String], payload: Value, elapsed: Duration) -> RunRecord {
    RunRecord {
        command: args.to_vec(),
        input_digest: (!digests.is_empty()).then(|| digests.join("+")),
        config: RunConfig {
            seed: cli.opts.seed,
            attempts: cli.opts.attempts,
            strategy: cli.opts.strategy,
            budget_seconds: cli.opts.budget_seconds,
        },
        result: payload,
        duration_ms: elapsed.as_millis() as u64,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Parses `args` (without the program name), runs the command, and returns
/// the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("morsecraft".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx { stdin, digests: Vec::new(), write_files: true, search: search_config(&cli.opts) };
    let outcome = match execute(&cli.command, &mut ctx) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let mut finish = || -> Result<()> {
        if let Some(text) = &outcome.emit {
            stdout.write_all(text.as_bytes())?;
        }
        if !outcome.summary.is_empty() {
            writeln!(stdout, "{}", outcome.summary)?;
        }
        if let Some(path) = &cli.opts.json {
            let text = serde_json::to_string_pretty(&outcome.payload)? + "\n";
            if path.as_os_str() == "-" {
                stdout.write_all(text.as_bytes())?;
            } else {
                std::fs::write(path, text)?;
            }
        }
        if let Some(path) = &cli.opts.log {
            record_for(&args, &cli, &ctx.digests, outcome.payload.clone(), start.elapsed()).append_to(path)?;
        }
        Ok(())
    };
    if let Err(e) = finish() {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    if outcome.unknown {
        2
    } else {
        0
    }
}

/// Reruns a recorded command without writing any files and returns its
/// result payload. Inputs read from `-` come from `stdin`. Fails when the
/// input digest no longer matches.
pub fn replay(record: &RunRecord, stdin: &mut dyn Read) -> Result<Value> {
    let cli = Cli::try_parse_from(std::iter::once("morsecraft".to_string()).chain(record.command.iter().cloned()))
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut ctx = Ctx { stdin, digests: Vec::new(), write_files: false, search: search_config(&cli.opts) };
    let outcome = execute(&cli.command, &mut ctx)?;
    let digest = (!ctx.digests.is_empty()).then(|| ctx.digests.join("+"));
    if digest != record.input_digest {
        return Err(Error::DigestMismatch {
            path: record.command.join(" "),
            expected: record.input_digest.clone().unwrap_or_default(),
            found: digest.unwrap_or_default(),
        });
    }
    Ok(outcome.payload)
}

/// Parses a trace file against a complex (used by tests and tooling).
pub fn read_trace(c: &SimplicialComplex, path: &std::path::Path) -> Result<CollapseTrace> {
    CollapseTrace::from_json_lines(c, &std::fs::read_to_string(path)?)
}
