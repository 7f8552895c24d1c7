//! `varbench` — generate puzzles and demonstration datasets, solve and score
//! instances, evaluate agents, and serve environments over HTTP.
//!
//! Exit status: 0 on success, 1 on partial or total failure, 2 on usage
//! errors.

mod config;
mod server;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use config::FileConfig;
use server::{RewardMode, ServeOptions};
use varbench_core::datagen::{
    config_digest, filter_cot, gen_gp_demos, gen_sokoban_demos, persist_dataset, CotCandidate,
    GpDemoConfig, SokobanDemoConfig,
};
use varbench_core::eval::{
    evaluate_with_transcript, AgentSpec, EvalConfig, RemoteConfig, TaskKind,
};
use varbench_core::points::{
    generate_instance, gp_splits, score_gp_answer, solve_exhaustive, GPInstance, GpGenConfig,
};
use varbench_core::prompts::{builtin_variants, parse_response};
use varbench_core::rl_math::action_match_reward;
use varbench_core::seed::derive;
use varbench_core::sokoban::{
    generate_puzzle, parse as parse_observation, render, solve_bfs, SymbolTable,
};

/// Environment variable holding the bearer token for remote agents.
const AUTH_TOKEN_ENV: &str = "VARBENCH_AGENT_TOKEN";

#[derive(Parser)]
#[command(
    name = "varbench",
    version,
    about = "Deterministic Sokoban / General Points benchmark engine"
)]
struct Cli {
    /// Base seed for anything random; defaults to 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file; flags override its keys.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate solvable puzzles or hands with their solutions, as JSON lines.
    GenPuzzles(GenPuzzlesArgs),
    /// Generate demonstration datasets (answer-only or CoT-filtered).
    GenData(GenDataArgs),
    /// Solve one instance or puzzle and print the result.
    Solve(SolveArgs),
    /// Score a response file against an instance file.
    Score(ScoreArgs),
    /// Evaluate an agent over the configured splits.
    Eval(EvalArgs),
    /// Serve the environment-step HTTP API.
    Serve(ServeArgs),
    /// List the builtin variant registry.
    Variants,
}

#[derive(Args)]
struct GenPuzzlesArgs {
    /// "sokoban" or "gp".
    #[arg(long)]
    task: Option<String>,
    /// Sokoban variant or General Points split name.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    boxes: Option<usize>,
    #[arg(long)]
    target: Option<i64>,
}

#[derive(Args)]
struct GenDataArgs {
    /// "sokoban" or "gp".
    #[arg(long)]
    task: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    /// Sokoban prompt variant (ignored with --diversity).
    #[arg(long)]
    variant: Option<String>,
    /// Resample the action vocabulary (Sokoban) or mapping regime (GP) per record.
    #[arg(long)]
    diversity: bool,
    /// Comma-separated GP mapping regimes.
    #[arg(long)]
    regimes: Option<String>,
    /// Filter externally supplied CoT candidates instead of generating labels.
    #[arg(long, value_name = "FILE")]
    cot_in: Option<PathBuf>,
    /// Accepted-candidate cap per prompt for --cot-in.
    #[arg(long)]
    k_per_prompt: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// "sokoban" or "gp".
    #[arg(long)]
    task: Option<String>,
    /// GP hand, e.g. "3,3,8,8".
    #[arg(long)]
    cards: Option<String>,
    #[arg(long)]
    target: Option<i64>,
    /// Sokoban observation file ("-" for stdin); generated from --seed when absent.
    #[arg(long, value_name = "FILE")]
    puzzle: Option<PathBuf>,
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Args)]
struct ScoreArgs {
    /// "sokoban" or "gp".
    #[arg(long)]
    task: Option<String>,
    /// JSON-lines instance file (gen-puzzles output or raw instances).
    #[arg(long, value_name = "FILE")]
    instances: PathBuf,
    /// JSON-lines responses: strings or {"response": ...} objects.
    #[arg(long, value_name = "FILE")]
    responses: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    /// "sokoban" or "gp".
    #[arg(long)]
    task: Option<String>,
    /// oracle | frozen | fixed:<text> | replay:<path> | remote:<url>
    #[arg(long)]
    agent: Option<String>,
    /// Comma-separated split names; defaults to the task's full set.
    #[arg(long)]
    splits: Option<String>,
    #[arg(long)]
    episodes: Option<usize>,
    #[arg(long)]
    concurrency: Option<usize>,
    /// Write the per-episode transcript here (JSON lines).
    #[arg(long, value_name = "FILE")]
    transcript: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    max_tokens: Option<u32>,
}

#[derive(Args)]
struct ServeArgs {
    /// Bind address, e.g. 127.0.0.1:8642 (port 0 picks a free port).
    #[arg(long)]
    bind: Option<String>,
    #[arg(long)]
    idle_timeout_secs: Option<u64>,
    /// "env" or "action_match" (Sokoban reward selection).
    #[arg(long)]
    reward_mode: Option<String>,
}

enum CliError {
    Usage(String),
    Failure(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failure(e.into())
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Die quietly when a downstream pipe closes (e.g. `varbench variants | head`)
/// instead of panicking on EPIPE.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            eprintln!("run `varbench --help` for the synopsis");
            ExitCode::from(2)
        }
        Err(CliError::Failure(error)) => {
            eprintln!("error: {error:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = FileConfig::load(cli.config.as_deref()).map_err(|e| usage(format!("{e:#}")))?;
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let out = cli.out.or_else(|| file.out.clone());
    match cli.command {
        Command::GenPuzzles(args) => gen_puzzles(args, &file, seed, out.as_deref()),
        Command::GenData(args) => gen_data(args, &file, seed, out.as_deref()),
        Command::Solve(args) => solve(args, &file, seed),
        Command::Score(args) => score(args, &file, out.as_deref()),
        Command::Eval(args) => eval(args, &file, seed, out.as_deref()),
        Command::Serve(args) => {
            serve(args, &file)?;
            Ok(0)
        }
        Command::Variants => {
            variants();
            Ok(0)
        }
    }
}

fn parse_task(task: Option<&str>) -> Result<TaskKind, CliError> {
    match task {
        Some("sokoban") => Ok(TaskKind::Sokoban),
        Some("gp") => Ok(TaskKind::Gp),
        Some(other) => Err(usage(format!("unknown task '{other}' (expected sokoban|gp)"))),
        None => Err(usage("--task is required (sokoban|gp)")),
    }
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(anyhow::Error::from)?;
                }
            }
            std::fs::write(path, content).map_err(anyhow::Error::from)?;
        }
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
        }
    }
    Ok(())
}

fn gen_puzzles(
    args: GenPuzzlesArgs,
    file: &FileConfig,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let task = parse_task(args.task.as_deref().or(file.task.as_deref()))?;
    let count = args.count.or(file.count).unwrap_or(10);
    let mut lines = String::new();
    match task {
        TaskKind::Sokoban => {
            let registry = builtin_variants();
            let name = args
                .variant
                .as_deref()
                .or(file.variant.as_deref())
                .unwrap_or("SimpleSokoban");
            let variant = registry
                .find_sokoban(name)
                .ok_or_else(|| usage(format!("unknown sokoban variant '{name}'")))?;
            for i in 0..count {
                let puzzle_seed = derive(seed, i as u64);
                let mut spec = variant.puzzle_spec(puzzle_seed);
                if let Some(w) = args.width.or(file.width) {
                    spec.width = w;
                }
                if let Some(h) = args.height.or(file.height) {
                    spec.height = h;
                }
                if let Some(b) = args.boxes.or(file.boxes) {
                    spec.num_boxes = b;
                }
                if let Some(d) = file.wall_density {
                    spec.wall_density = d;
                }
                let (state, solution) =
                    generate_puzzle(&spec).context("puzzle generation failed")?;
                let row = serde_json::json!({
                    "task": "sokoban",
                    "variant": variant.name,
                    "seed": puzzle_seed,
                    "observation": render(&state, &SymbolTable::default()),
                    "solution": solution.iter().map(|a| a.name()).collect::<Vec<_>>(),
                    "len": solution.len(),
                });
                lines.push_str(&row.to_string());
                lines.push('\n');
            }
        }
        TaskKind::Gp => {
            let split = args
                .variant
                .as_deref()
                .or(file.variant.as_deref())
                .unwrap_or("training");
            let mut gen = GpGenConfig::for_split(split);
            if let Some(t) = args.target.or(file.target) {
                gen.target = t;
            }
            for i in 0..count {
                let instance_seed = derive(seed, i as u64);
                let instance =
                    generate_instance(&gen, instance_seed).context("instance generation failed")?;
                let formula = solve_exhaustive(&instance.scoring_values(), instance.target)
                    .expect("generated instances are solvable");
                let row = serde_json::json!({
                    "task": "gp",
                    "split": instance.split_tag,
                    "seed": instance_seed,
                    "instance": instance,
                    "formula": formula,
                });
                lines.push_str(&row.to_string());
                lines.push('\n');
            }
        }
    }
    write_or_print(out, &lines)?;
    Ok(0)
}

fn gen_data(
    args: GenDataArgs,
    file: &FileConfig,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let task = parse_task(args.task.as_deref().or(file.task.as_deref()))?;
    let out = out.ok_or_else(|| usage("gen-data requires --out <path>"))?;

    if let Some(cot_path) = &args.cot_in {
        let k = args.k_per_prompt.or(file.k_per_prompt).unwrap_or(16);
        let text = std::fs::read_to_string(cot_path)
            .with_context(|| format!("reading {}", cot_path.display()))?;
        let mut candidates = Vec::new();
        let mut malformed_rows = 0usize;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<CotCandidate>(line) {
                Ok(candidate) => candidates.push(candidate),
                Err(_) => malformed_rows += 1,
            }
        }
        let outcome = filter_cot(&candidates, k);
        let digest = config_digest(&("cot", k, cot_path.to_string_lossy()));
        let manifest = persist_dataset(&outcome.accepted, out, &digest, seed)
            .context("persisting filtered dataset")?;
        println!(
            "accepted {} / rejected {} / malformed {} -> {} ({} rows)",
            outcome.accepted.len(),
            outcome.rejected,
            outcome.malformed + malformed_rows,
            out.display(),
            manifest.total
        );
        return Ok(0);
    }

    let records = match task {
        TaskKind::Sokoban => {
            let mut config = SokobanDemoConfig {
                diversity: args.diversity || file.diversity.unwrap_or(false),
                ..SokobanDemoConfig::default()
            };
            if let Some(v) = args.variant.as_deref().or(file.variant.as_deref()) {
                config.variant = v.to_string();
            }
            if let Some(c) = args.count.or(file.count) {
                config.pair_count = c;
            }
            if let Some(w) = file.width {
                config.width = w;
            }
            if let Some(h) = file.height {
                config.height = h;
            }
            if let Some(b) = file.boxes {
                config.num_boxes = b;
            }
            let records = gen_sokoban_demos(&config, seed).context("sokoban generation failed")?;
            let manifest =
                persist_dataset(&records, out, &config_digest(&config), seed)?;
            println!("wrote {} records -> {}", manifest.total, out.display());
            records
        }
        TaskKind::Gp => {
            let mut config = if args.diversity || file.diversity.unwrap_or(false) {
                GpDemoConfig::diverse()
            } else {
                GpDemoConfig::default()
            };
            if let Some(regimes) = args.regimes.as_deref() {
                config.regimes = regimes.split(',').map(|s| s.trim().to_string()).collect();
            } else if let Some(regimes) = &file.regimes {
                config.regimes = regimes.clone();
            }
            if let Some(c) = args.count.or(file.count) {
                config.count = c;
            }
            if let Some(t) = file.target {
                config.target = t;
            }
            let records = gen_gp_demos(&config, seed).context("gp generation failed")?;
            let manifest =
                persist_dataset(&records, out, &config_digest(&config), seed)?;
            println!("wrote {} records -> {}", manifest.total, out.display());
            records
        }
    };
    let _ = records;
    Ok(0)
}

fn solve(args: SolveArgs, file: &FileConfig, seed: u64) -> Result<u8, CliError> {
    let task = parse_task(args.task.as_deref().or(file.task.as_deref()))?;
    match task {
        TaskKind::Gp => {
            let cards = args
                .cards
                .as_deref()
                .ok_or_else(|| usage("solve --task gp requires --cards v1,v2,..."))?;
            let values: Vec<i64> = cards
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| usage(format!("unparsable --cards '{cards}'")))?;
            let target = args.target.or(file.target).unwrap_or(24);
            match solve_exhaustive(&values, target) {
                Some(formula) => println!("{formula}"),
                None => {
                    println!("no solution");
                    return Ok(1);
                }
            }
        }
        TaskKind::Sokoban => {
            let state = match &args.puzzle {
                Some(path) => {
                    let text = if path.as_os_str() == "-" {
                        use std::io::Read;
                        let mut buffer = String::new();
                        std::io::stdin().read_to_string(&mut buffer).map_err(anyhow::Error::from)?;
                        buffer
                    } else {
                        std::fs::read_to_string(path)
                            .with_context(|| format!("reading {}", path.display()))?
                    };
                    parse_observation(&text, &SymbolTable::default(), 30)
                        .context("unparsable observation")?
                }
                None => {
                    let registry = builtin_variants();
                    let name = args
                        .variant
                        .as_deref()
                        .or(file.variant.as_deref())
                        .unwrap_or("SimpleSokoban");
                    let variant = registry
                        .find_sokoban(name)
                        .ok_or_else(|| usage(format!("unknown sokoban variant '{name}'")))?;
                    let (state, _) = generate_puzzle(&variant.puzzle_spec(seed))
                        .context("puzzle generation failed")?;
                    println!("{}", render(&state, &SymbolTable::default()));
                    state
                }
            };
            match solve_bfs(&state, state.max_steps()) {
                Some(solution) => {
                    let names: Vec<&str> = solution.iter().map(|a| a.name()).collect();
                    println!("{}", names.join(" "));
                }
                None => {
                    println!("no solution");
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn read_jsonl(path: &Path) -> Result<Vec<serde_json::Value>, CliError> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| anyhow::anyhow!("{}:{}: {e}", path.display(), i + 1))?;
        rows.push(value);
    }
    Ok(rows)
}

fn response_of(row: &serde_json::Value) -> Option<String> {
    match row {
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Object(map) => {
            map.get("response").and_then(|v| v.as_str()).map(str::to_string)
        }
        _ => None,
    }
}

fn score(args: ScoreArgs, file: &FileConfig, out: Option<&Path>) -> Result<u8, CliError> {
    let task = parse_task(args.task.as_deref().or(file.task.as_deref()))?;
    let instances = read_jsonl(&args.instances)?;
    let responses = read_jsonl(&args.responses)?;
    if instances.len() != responses.len() {
        return Err(usage(format!(
            "instance/response length mismatch: {} vs {}",
            instances.len(),
            responses.len()
        )));
    }
    let mut lines = String::new();
    let mut successes = 0usize;
    for (i, (instance_row, response_row)) in instances.iter().zip(&responses).enumerate() {
        let response = response_of(response_row)
            .ok_or_else(|| usage(format!("responses line {} has no response text", i + 1)))?;
        let row = match task {
            TaskKind::Gp => {
                let raw = instance_row.get("instance").unwrap_or(instance_row);
                let instance: GPInstance = serde_json::from_value(raw.clone())
                    .map_err(|e| anyhow::anyhow!("instances line {}: {e}", i + 1))?;
                let score = score_gp_answer(&response, &instance);
                if score.success {
                    successes += 1;
                }
                serde_json::json!({
                    "index": i,
                    "points": score.points,
                    "verdict": score.verdict,
                    "success": score.success,
                })
            }
            TaskKind::Sokoban => {
                let expert_name = instance_row
                    .get("expert")
                    .and_then(|v| v.as_str())
                    .map(str::to_string)
                    .or_else(|| {
                        instance_row
                            .get("solution")
                            .and_then(|v| v.as_array())
                            .and_then(|a| a.first())
                            .and_then(|v| v.as_str())
                            .map(str::to_string)
                    })
                    .ok_or_else(|| {
                        usage(format!("instances line {} has no expert action", i + 1))
                    })?;
                let variant_name = instance_row
                    .get("variant")
                    .and_then(|v| v.as_str())
                    .unwrap_or("SimpleSokoban");
                let registry = builtin_variants();
                let variant = registry
                    .find_sokoban(variant_name)
                    .ok_or_else(|| usage(format!("unknown variant '{variant_name}'")))?;
                let parsed = parse_response(&response);
                let decoded =
                    varbench_core::prompts::decode_action(&parsed.answer_text, variant);
                let expert = varbench_core::sokoban::Action::ALL
                    .into_iter()
                    .find(|a| a.name().eq_ignore_ascii_case(&expert_name))
                    .ok_or_else(|| usage(format!("unknown expert action '{expert_name}'")))?;
                let reward = action_match_reward(decoded, expert, parsed.format_ok);
                if reward == 1.0 {
                    successes += 1;
                }
                serde_json::json!({
                    "index": i,
                    "reward": reward,
                    "decoded": decoded.map(|a| a.name()),
                    "expert": expert.name(),
                    "match": reward == 1.0,
                })
            }
        };
        lines.push_str(&row.to_string());
        lines.push('\n');
    }
    write_or_print(out, &lines)?;
    eprintln!("{successes}/{} scored as success", instances.len());
    Ok(0)
}

fn parse_agent_spec(
    text: &str,
    file: &FileConfig,
    args: &EvalArgs,
) -> Result<AgentSpec, CliError> {
    if text == "oracle" {
        return Ok(AgentSpec::Oracle);
    }
    if text == "frozen" {
        return Ok(AgentSpec::Frozen);
    }
    if let Some(response) = text.strip_prefix("fixed:") {
        return Ok(AgentSpec::Fixed { response: response.to_string() });
    }
    if let Some(path) = text.strip_prefix("replay:") {
        return Ok(AgentSpec::Replay { path: path.to_string() });
    }
    if let Some(endpoint) = text.strip_prefix("remote:") {
        let mut config = RemoteConfig::new(endpoint);
        config.model = args.model.clone().or_else(|| file.model.clone());
        if let Some(t) = args.temperature.or(file.temperature) {
            config.temperature = t;
        }
        if let Some(m) = args.max_tokens.or(file.max_tokens) {
            config.max_tokens = m;
        }
        config.auth_token = std::env::var(AUTH_TOKEN_ENV).ok();
        return Ok(AgentSpec::Remote { config });
    }
    Err(usage(format!(
        "unknown agent '{text}' (expected oracle|frozen|fixed:<text>|replay:<path>|remote:<url>)"
    )))
}

fn eval(
    args: EvalArgs,
    file: &FileConfig,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let task = parse_task(args.task.as_deref().or(file.task.as_deref()))?;
    let agent_text = args
        .agent
        .clone()
        .or_else(|| file.agent.clone())
        .ok_or_else(|| usage("--agent is required"))?;
    let agent = parse_agent_spec(&agent_text, file, &args)?;

    let mut config = EvalConfig::new(task, seed);
    if let Some(splits) = args.splits.as_deref() {
        config.splits = splits.split(',').map(|s| s.trim().to_string()).collect();
    } else if let Some(splits) = &file.splits {
        config.splits = splits.clone();
    }
    if let Some(e) = args.episodes.or(file.episodes) {
        config.episodes_per_split = e;
    }
    if let Some(c) = args.concurrency.or(file.concurrency) {
        config.concurrency = c;
    }
    if let Some(t) = file.target {
        config.target = t;
    }

    let transcript = args.transcript.clone().or_else(|| file.transcript.clone());
    let report = evaluate_with_transcript(&config, &agent, transcript.as_deref())
        .context("evaluation failed")?;

    print!("{}", report.to_text_table());
    if let Some(base) = out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        std::fs::write(base, &json).map_err(anyhow::Error::from)?;
        std::fs::write(sibling(base, "txt"), report.to_text_table())
            .map_err(anyhow::Error::from)?;
        std::fs::write(sibling(base, "csv"), report.to_csv()).map_err(anyhow::Error::from)?;
    }

    let errored: usize = report.rows.iter().map(|r| r.errors).sum();
    Ok(if errored > 0 { 1 } else { 0 })
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

fn serve(args: ServeArgs, file: &FileConfig) -> Result<(), CliError> {
    let mut options = ServeOptions::default();
    if let Some(bind) = args.bind.or_else(|| file.bind.clone()) {
        options.bind = bind;
    }
    if let Some(secs) = args.idle_timeout_secs.or(file.idle_timeout_secs) {
        options.idle_timeout = Duration::from_secs(secs);
    }
    if let Some(mode) = args.reward_mode.as_deref().or(file.reward_mode.as_deref()) {
        options.reward_mode = RewardMode::parse(mode)
            .ok_or_else(|| usage(format!("unknown reward mode '{mode}' (env|action_match)")))?;
    }
    if let Some(target) = file.target {
        options.target = target;
    }
    server::serve(options).map_err(CliError::Failure)
}

fn variants() {
    let registry = builtin_variants();
    println!("sokoban variants:");
    for v in registry.sokoban() {
        let tokens = v.tokens.join("/");
        println!(
            "  {:<28} {:<12} {}x{} boxes={} tokens={}{}",
            v.name,
            v.group.label(),
            v.width,
            v.height,
            v.num_boxes,
            tokens,
            if v.fake { " (decodes canonical)" } else { "" }
        );
    }
    println!("gp mapping variants:");
    for v in registry.gp() {
        println!(
            "  {:<28} {:<12} prompted J={},Q={},K={} scored J={},Q={},K={}{}",
            v.name,
            v.group.label(),
            v.prompted.j,
            v.prompted.q,
            v.prompted.k,
            v.scoring.j,
            v.scoring.q,
            v.scoring.k,
            if v.fake { " (fake)" } else { "" }
        );
    }
    println!("gp generation splits:");
    for s in gp_splits() {
        println!(
            "  {:<28} cards={} mapping={} prompted={}{}{}",
            s.name,
            s.num_cards,
            s.mapping,
            s.prompted,
            if s.require_face { " face-required" } else { "" },
            if s.large_number { " large-number" } else { "" }
        );
    }
}
