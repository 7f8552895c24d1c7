//! Demonstration dataset construction: answer-only labels from the exact
//! solvers, prompt-diversity injection, CoT rejection-sampling filtering, and
//! JSON-lines persistence.

mod jsonl;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use jsonl::{config_digest, load_dataset, manifest_path, persist_dataset, DatasetManifest};

use crate::points::{
    generate_instance, score_gp_answer, solve_exhaustive, GPInstance, GpGenConfig,
};
use crate::prompts::{
    builtin_variants, parse_response, render_gp_prompt, render_sokoban_prompt,
    sample_diverse_vocab, SokobanVariant, TEMPLATE_ORDER,
};
use crate::seed::{derive, fnv1a64, splitmix64};
use crate::sokoban::{generate_puzzle, step, Action, PuzzleSpec, RewardSchedule};

#[derive(Debug, thiserror::Error)]
pub enum DatagenError {
    #[error("unknown variant '{0}'")]
    UnknownVariant(String),
    #[error("unknown mapping regime '{0}'")]
    UnknownRegime(String),
    #[error("demonstration budget exhausted after {attempts} puzzle draws")]
    Exhausted { attempts: usize },
    #[error(transparent)]
    Sokoban(#[from] crate::sokoban::SokobanError),
    #[error(transparent)]
    Points(#[from] crate::points::PointsError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("schema violation at line {line}: {message}")]
    Schema { line: usize, message: String },
}

/// Train/validation assignment, hashed from (seed, record index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetSplit {
    Train,
    Validation,
}

/// One dataset row: a prompt, its reference response, and provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemonstrationRecord {
    pub prompt: String,
    pub response: String,
    pub task: String,
    pub variant: String,
    pub seed: u64,
    pub split: DatasetSplit,
    pub extra: BTreeMap<String, serde_json::Value>,
}

/// 95/5 split by stable hash of (seed, index).
fn split_for(seed: u64, index: u64) -> DatasetSplit {
    let mut bytes = [0u8; 16];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..].copy_from_slice(&index.to_le_bytes());
    if fnv1a64(&bytes).is_multiple_of(20) {
        DatasetSplit::Validation
    } else {
        DatasetSplit::Train
    }
}

/// Sokoban demonstration generation parameters. The default targets the
/// standard corpus: 3,981 state-action pairs from 6x6 single-box puzzles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SokobanDemoConfig {
    /// Registry variant providing the prompt vocabulary. Ignored in
    /// diversity mode, where each record samples its own four words.
    pub variant: String,
    pub diversity: bool,
    pub pair_count: usize,
    pub width: usize,
    pub height: usize,
    pub num_boxes: usize,
    pub max_steps: u32,
    pub wall_density: f64,
    pub max_attempts: usize,
}

impl Default for SokobanDemoConfig {
    fn default() -> Self {
        SokobanDemoConfig {
            variant: "SimpleSokoban".to_string(),
            diversity: false,
            pair_count: 3_981,
            width: 6,
            height: 6,
            num_boxes: 1,
            max_steps: 30,
            wall_density: 0.2,
            max_attempts: 10_000,
        }
    }
}

fn answer_only_label(token: &str) -> String {
    format!("<think> </think> <answer> {token} </answer>")
}

/// Generate BFS-labeled Sokoban demonstrations: one record per (state,
/// action) pair along each solution, advancing states by replaying the
/// solution through the step function.
///
/// Trajectories are kept whole; a puzzle whose solution would overflow the
/// remaining pair budget is skipped for a shorter one, so exactly
/// `pair_count` records come back and every trajectory replays to success.
pub fn gen_sokoban_demos(
    config: &SokobanDemoConfig,
    seed: u64,
) -> Result<Vec<DemonstrationRecord>, DatagenError> {
    let registry = builtin_variants();
    let base_variant = registry
        .find_sokoban(&config.variant)
        .ok_or_else(|| DatagenError::UnknownVariant(config.variant.clone()))?;

    let mut records = Vec::with_capacity(config.pair_count);
    let draw_budget = config.pair_count * 50 + 1_000;
    let mut draw = 0u64;
    while records.len() < config.pair_count {
        if draw as usize >= draw_budget {
            return Err(DatagenError::Exhausted { attempts: draw_budget });
        }
        let puzzle_seed = derive(seed, draw);
        draw += 1;
        let spec = PuzzleSpec {
            width: config.width,
            height: config.height,
            num_boxes: config.num_boxes,
            max_steps: config.max_steps,
            seed: puzzle_seed,
            wall_density: config.wall_density,
            max_attempts: config.max_attempts,
        };
        let (mut state, solution) = generate_puzzle(&spec)?;
        if solution.len() > config.pair_count - records.len() {
            continue;
        }
        for (step_index, &action) in solution.iter().enumerate() {
            let variant = if config.diversity {
                SokobanVariant::from_vocab(&sample_diverse_vocab(derive(
                    puzzle_seed,
                    step_index as u64 + 1,
                )))
            } else {
                base_variant.clone()
            };
            let prompt = render_sokoban_prompt(&state, &variant);
            let token = variant.token_for(action);
            let mut extra = BTreeMap::new();
            extra.insert("puzzle_seed".into(), serde_json::json!(puzzle_seed));
            extra.insert("step_index".into(), serde_json::json!(step_index));
            extra.insert("solution_len".into(), serde_json::json!(solution.len()));
            extra.insert("tokens".into(), serde_json::json!(variant.tokens));
            records.push(DemonstrationRecord {
                prompt,
                response: answer_only_label(token),
                task: "sokoban".to_string(),
                variant: variant.name.clone(),
                seed: puzzle_seed,
                split: split_for(seed, records.len() as u64),
                extra,
            });
            state = step(&state, action, &RewardSchedule::default()).next_state;
        }
        debug_assert!(state.is_success());
    }
    Ok(records)
}

/// General Points demonstration generation parameters. Defaults to 10,000
/// records under the training regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpDemoConfig {
    /// Mapping regimes; each record draws one uniformly. A single entry is
    /// the non-diverse mode.
    pub regimes: Vec<String>,
    pub count: usize,
    pub target: i64,
    pub max_attempts: usize,
}

impl Default for GpDemoConfig {
    fn default() -> Self {
        GpDemoConfig {
            regimes: vec!["all_10".to_string()],
            count: 10_000,
            target: 24,
            max_attempts: 10_000,
        }
    }
}

impl GpDemoConfig {
    /// The training-diversity regime set.
    pub fn diverse() -> GpDemoConfig {
        GpDemoConfig {
            regimes: ["all_10", "all_8", "all_9", "mixed", "staggered"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            ..GpDemoConfig::default()
        }
    }
}

fn regime_split_name(regime: &str) -> &str {
    // all_10 hands are drawn exactly like the training split
    if regime == "all_10" {
        "training"
    } else {
        regime
    }
}

/// Generate solver-labeled General Points demonstrations. Each label wraps
/// the exhaustive solver's formula in the three-key answer object and
/// self-scores +5 by construction.
pub fn gen_gp_demos(
    config: &GpDemoConfig,
    seed: u64,
) -> Result<Vec<DemonstrationRecord>, DatagenError> {
    for regime in &config.regimes {
        if crate::points::gp_split(regime_split_name(regime)).is_none() {
            return Err(DatagenError::UnknownRegime(regime.clone()));
        }
    }
    let mut records = Vec::with_capacity(config.count);
    for i in 0..config.count {
        let record_seed = derive(seed, i as u64);
        let regime = &config.regimes[(splitmix64(record_seed) % config.regimes.len() as u64) as usize];
        let gen = GpGenConfig {
            split: regime_split_name(regime).to_string(),
            target: config.target,
            max_attempts: config.max_attempts,
        };
        let instance = generate_instance(&gen, record_seed)?;
        records.push(gp_record(&instance, regime, record_seed, split_for(seed, i as u64)));
    }
    Ok(records)
}

fn gp_record(
    instance: &GPInstance,
    regime: &str,
    record_seed: u64,
    split: DatasetSplit,
) -> DemonstrationRecord {
    let values = instance.scoring_values();
    let formula = solve_exhaustive(&values, instance.target)
        .expect("generator contract: instance is solvable");
    let cards = instance
        .card_labels()
        .iter()
        .map(|l| format!("\"{l}\""))
        .collect::<Vec<_>>()
        .join(", ");
    let numbers =
        values.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    let answer =
        format!("{{\"cards\": [{cards}], \"number\": [{numbers}], \"formula\": \"{formula}\"}}");
    let mut extra = BTreeMap::new();
    extra.insert("cards".into(), serde_json::json!(instance.card_labels()));
    extra.insert("mapping".into(), serde_json::json!(instance.mapping.name));
    extra.insert("target".into(), serde_json::json!(instance.target));
    DemonstrationRecord {
        prompt: render_gp_prompt(instance),
        response: answer_only_label(&answer),
        task: "gp".to_string(),
        variant: regime.to_string(),
        seed: record_seed,
        split,
        extra,
    }
}

/// Verification context a CoT candidate carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "lowercase")]
pub enum CotContext {
    Gp { instance: GPInstance },
    Sokoban { expert: Action, tokens: [String; 4] },
}

/// An externally supplied chain-of-thought candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotCandidate {
    pub prompt: String,
    pub response: String,
    pub context: CotContext,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CotFilterOutcome {
    pub accepted: Vec<DemonstrationRecord>,
    pub rejected: usize,
    pub malformed: usize,
}

/// Rejection-sample CoT candidates: keep those whose final answer verifies
/// (score +5 for General Points, expert-action match for Sokoban), at most
/// `k_per_prompt` per prompt, preserving the full think text. Candidates
/// without an extractable answer are counted as malformed, never fatal.
pub fn filter_cot(candidates: &[CotCandidate], k_per_prompt: usize) -> CotFilterOutcome {
    let mut outcome = CotFilterOutcome::default();
    let mut per_prompt: BTreeMap<&str, usize> = BTreeMap::new();
    for candidate in candidates {
        let parsed = parse_response(&candidate.response);
        if parsed.answer_text.is_empty() {
            outcome.malformed += 1;
            continue;
        }
        let (verified, task, extra) = match &candidate.context {
            CotContext::Gp { instance } => {
                let score = score_gp_answer(&candidate.response, instance);
                let mut extra = BTreeMap::new();
                extra.insert("cards".into(), serde_json::json!(instance.card_labels()));
                extra.insert("split".into(), serde_json::json!(instance.split_tag));
                (score.success, "gp", extra)
            }
            CotContext::Sokoban { expert, tokens } => {
                let token = parsed.answer_text.trim();
                let decoded = TEMPLATE_ORDER
                    .iter()
                    .zip(tokens.iter())
                    .find_map(|(a, t)| token.eq_ignore_ascii_case(t).then_some(*a));
                let mut extra = BTreeMap::new();
                extra.insert("expert".into(), serde_json::json!(expert.name()));
                extra.insert("tokens".into(), serde_json::json!(tokens));
                (decoded == Some(*expert), "sokoban", extra)
            }
        };
        if !verified {
            outcome.rejected += 1;
            continue;
        }
        let kept = per_prompt.entry(candidate.prompt.as_str()).or_insert(0);
        if *kept >= k_per_prompt {
            outcome.rejected += 1;
            continue;
        }
        *kept += 1;
        outcome.accepted.push(DemonstrationRecord {
            prompt: candidate.prompt.clone(),
            response: candidate.response.clone(),
            task: task.to_string(),
            variant: "cot".to_string(),
            seed: fnv1a64(candidate.prompt.as_bytes()),
            split: DatasetSplit::Train,
            extra,
        });
    }
    outcome
}
