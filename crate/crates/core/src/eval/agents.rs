//! Pluggable agents: exact-solver oracles, transcript replay, fixed scripts,
//! and a chat-completion HTTP client.
//!
//! Oracles answer from the prompt alone — they re-parse the observation or
//! the card line and run the in-repo solvers — so they exercise the same
//! interface as a real model.

use std::collections::HashMap;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::points::{Card, FaceMapping};
use crate::prompts::TEMPLATE_ORDER;
use crate::sokoban::{parse, solve_bfs, Action, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AgentError {
    #[error("transport failure: {0}")]
    Transport(String),
    #[error("protocol failure: {0}")]
    Protocol(String),
}

/// Something that turns a prompt into a completion. Implementations must be
/// safe to call from concurrent episodes.
pub trait Agent: Send + Sync {
    fn respond(&self, prompt: &str) -> Result<String, AgentError>;

    fn name(&self) -> String {
        "agent".to_string()
    }
}

fn wrap_answer(answer: &str) -> String {
    format!("<think> </think> <answer> {answer} </answer>")
}

/// Extract the observation block from a Sokoban prompt.
fn observation_of(prompt: &str) -> Option<&str> {
    prompt
        .split("[Current Observation]:\n")
        .nth(1)?
        .split("\nDecide the next action:")
        .next()
}

/// Upper-bound agent for Sokoban: parses the observation, runs BFS, and
/// emits the first action of the shortest solution encoded in `emit_tokens`
/// (template order Up, Down, Left, Right).
///
/// With the prompted variant's tokens this is the instruction-following
/// oracle; with the canonical tokens it models a frozen-prompt policy that
/// ignores whatever vocabulary the prompt declares.
pub struct SokobanOracleAgent {
    emit_tokens: [String; 4],
    max_steps: u32,
    label: String,
}

impl SokobanOracleAgent {
    pub fn with_tokens(emit_tokens: [String; 4], label: &str) -> SokobanOracleAgent {
        SokobanOracleAgent { emit_tokens, max_steps: 30, label: label.to_string() }
    }

    fn token_for(&self, action: Action) -> &str {
        let i = TEMPLATE_ORDER.iter().position(|&a| a == action).unwrap();
        &self.emit_tokens[i]
    }
}

impl Agent for SokobanOracleAgent {
    fn respond(&self, prompt: &str) -> Result<String, AgentError> {
        let obs = observation_of(prompt)
            .ok_or_else(|| AgentError::Protocol("no observation in prompt".to_string()))?;
        let state = parse(obs, &SymbolTable::default(), self.max_steps)
            .map_err(|e| AgentError::Protocol(format!("unparsable observation: {e}")))?;
        let action = match solve_bfs(&state, self.max_steps) {
            Some(solution) if !solution.is_empty() => solution[0],
            // wedged or already solved: hold a legal-looking answer
            _ => Action::Up,
        };
        Ok(wrap_answer(self.token_for(action)))
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// Upper-bound agent for General Points: reads the card line, the declared
/// face-card sentence and the target from the prompt, then answers with the
/// exhaustive solver under that declared mapping.
///
/// `frozen_mapping` overrides the declared mapping to model a frozen-prompt
/// policy (training semantics regardless of the prompt).
pub struct GpOracleAgent {
    frozen_mapping: Option<FaceMapping>,
    label: String,
}

impl GpOracleAgent {
    pub fn prompted() -> GpOracleAgent {
        GpOracleAgent { frozen_mapping: None, label: "gp-oracle".to_string() }
    }

    pub fn frozen(mapping: FaceMapping) -> GpOracleAgent {
        GpOracleAgent { frozen_mapping: Some(mapping), label: "gp-frozen".to_string() }
    }
}

fn quoted_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find('\'') {
        let after = &rest[open + 1..];
        let Some(close) = after.find('\'') else { break };
        out.push(after[..close].to_string());
        rest = &after[close + 1..];
    }
    out
}

impl Agent for GpOracleAgent {
    fn respond(&self, prompt: &str) -> Result<String, AgentError> {
        let proto = |m: &str| AgentError::Protocol(m.to_string());
        let target: i64 = prompt
            .split("You are an expert ")
            .nth(1)
            .and_then(|rest| rest.split(' ').next())
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| proto("no target in prompt"))?;
        let cards_line = prompt
            .lines()
            .find_map(|l| l.strip_prefix("Cards: "))
            .ok_or_else(|| proto("no card line in prompt"))?;
        let labels = quoted_tokens(cards_line);
        if labels.is_empty() {
            return Err(proto("empty card line"));
        }

        let mapping = match &self.frozen_mapping {
            Some(m) => m.clone(),
            None => {
                let declared = prompt
                    .split("Note that ")
                    .nth(1)
                    .and_then(|rest| rest.split(", and each card").next())
                    .ok_or_else(|| proto("no face-card sentence"))?;
                let nums: Vec<i64> = quoted_tokens(declared)
                    .into_iter()
                    .filter_map(|t| t.parse().ok())
                    .collect();
                match nums.as_slice() {
                    [v] => FaceMapping::uniform("declared", *v),
                    [j, q, k] => FaceMapping::new("declared", *j, *q, *k),
                    _ => return Err(proto("unparsable face-card sentence")),
                }
            }
        };

        let mut values = Vec::with_capacity(labels.len());
        for label in &labels {
            let value = match Card::from_label(label) {
                Some(card) => crate::points::map_card_value(card, &mapping),
                None => label.parse().map_err(|_| proto("unparsable card label"))?,
            };
            values.push(value);
        }
        // Fall back to a legal (wrong-target) formula when the declared
        // mapping admits no solution; validity survives even when success
        // cannot.
        let formula = crate::points::solve_exhaustive(&values, target).unwrap_or_else(|| {
            values.iter().map(i64::to_string).collect::<Vec<_>>().join("+")
        });
        let cards =
            labels.iter().map(|l| format!("\"{l}\"")).collect::<Vec<_>>().join(", ");
        let numbers = values.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
        Ok(wrap_answer(&format!(
            "{{\"cards\": [{cards}], \"number\": [{numbers}], \"formula\": \"{formula}\"}}"
        )))
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// Always returns the same completion.
pub struct FixedAgent {
    response: String,
}

impl FixedAgent {
    pub fn new(response: &str) -> FixedAgent {
        FixedAgent { response: response.to_string() }
    }

    /// A fixed single-token answer in the template format.
    pub fn token(token: &str) -> FixedAgent {
        FixedAgent::new(&wrap_answer(token))
    }
}

impl Agent for FixedAgent {
    fn respond(&self, _prompt: &str) -> Result<String, AgentError> {
        Ok(self.response.clone())
    }

    fn name(&self) -> String {
        "fixed".to_string()
    }
}

/// Replays a recorded transcript, keyed by prompt. Deterministic agents ask
/// the same prompts in any interleaving, so keying by prompt keeps replay
/// stable under concurrency.
pub struct ReplayAgent {
    responses: HashMap<String, String>,
}

impl ReplayAgent {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> ReplayAgent {
        ReplayAgent { responses: pairs.into_iter().collect() }
    }

    /// Load from a transcript of episode records (JSON lines).
    pub fn from_transcript(path: &Path) -> Result<ReplayAgent, AgentError> {
        let records = super::load_transcript(path)
            .map_err(|e| AgentError::Transport(format!("transcript load failed: {e}")))?;
        let mut responses = HashMap::new();
        for record in records {
            for turn in record.turns {
                responses.insert(turn.prompt, turn.response);
            }
        }
        Ok(ReplayAgent { responses })
    }
}

impl Agent for ReplayAgent {
    fn respond(&self, prompt: &str) -> Result<String, AgentError> {
        self.responses
            .get(prompt)
            .cloned()
            .ok_or_else(|| AgentError::Transport("prompt not present in transcript".to_string()))
    }

    fn name(&self) -> String {
        "replay".to_string()
    }
}

/// Chat-completion endpoint settings for [`RemoteAgent`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemoteConfig {
    pub endpoint: String,
    pub model: Option<String>,
    pub temperature: f64,
    pub max_tokens: u32,
    /// Bearer token; usually injected from the environment.
    pub auth_token: Option<String>,
    pub retries: u32,
    pub backoff_ms: u64,
    pub timeout_ms: u64,
}

impl RemoteConfig {
    pub fn new(endpoint: &str) -> RemoteConfig {
        RemoteConfig {
            endpoint: endpoint.to_string(),
            model: None,
            temperature: 0.0,
            max_tokens: 512,
            auth_token: None,
            retries: 3,
            backoff_ms: 200,
            timeout_ms: 30_000,
        }
    }
}

/// Speaks the chat-completion wire shape: a messages array in, the first
/// choice's message content out. Failures retry with exponential backoff
/// before surfacing as a transport error.
pub struct RemoteAgent {
    config: RemoteConfig,
    client: ureq::Agent,
}

impl RemoteAgent {
    pub fn new(config: RemoteConfig) -> RemoteAgent {
        let client = ureq::AgentBuilder::new()
            .timeout(Duration::from_millis(config.timeout_ms))
            .build();
        RemoteAgent { config, client }
    }

    fn call_once(&self, prompt: &str) -> Result<String, AgentError> {
        let body = serde_json::json!({
            "model": self.config.model.clone().unwrap_or_else(|| "default".to_string()),
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
            "max_tokens": self.config.max_tokens,
        });
        let mut request = self.client.post(&self.config.endpoint);
        if let Some(token) = &self.config.auth_token {
            request = request.set("Authorization", &format!("Bearer {token}"));
        }
        let response = request
            .send_json(body)
            .map_err(|e| AgentError::Transport(e.to_string()))?;
        let payload: serde_json::Value = response
            .into_json()
            .map_err(|e| AgentError::Transport(format!("bad response body: {e}")))?;
        payload["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| AgentError::Protocol("no message content in response".to_string()))
    }
}

impl Agent for RemoteAgent {
    fn respond(&self, prompt: &str) -> Result<String, AgentError> {
        let mut delay = Duration::from_millis(self.config.backoff_ms);
        let mut last = None;
        for attempt in 0..=self.config.retries {
            match self.call_once(prompt) {
                Ok(text) => return Ok(text),
                Err(e) => last = Some(e),
            }
            if attempt < self.config.retries {
                std::thread::sleep(delay);
                delay *= 2;
            }
        }
        Err(last.unwrap_or_else(|| AgentError::Transport("no attempts made".to_string())))
    }

    fn name(&self) -> String {
        format!("remote:{}", self.config.endpoint)
    }
}
