//! The environment-step service: JSON over HTTP so external trainers can
//! drive episodes.
//!
//! API:
//! - `POST /reset {task, variant, seed}` -> `{episode_id, prompt}`
//! - `POST /step {episode_id, response_text}` -> `{prompt?, reward, done, success, info}`
//! - `GET /health` -> `{status, episodes}`
//!
//! Errors: 400 malformed body or unknown variant, 404 unknown episode or
//! route, 409 step after done. Episodes live in memory and expire after an
//! idle timeout; trainers own any persistence.

use std::collections::HashMap;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::json;
use tiny_http::{Header, Response, Server};

use varbench_core::points::{generate_instance, score_gp_answer, GPInstance, GpGenConfig};
use varbench_core::prompts::{
    builtin_variants, check_sokoban_validity, decode_action, parse_response, render_gp_prompt,
    render_sokoban_prompt, SokobanVariant,
};
use varbench_core::rl_math::action_match_reward;
use varbench_core::sokoban::{
    generate_puzzle, no_op_step, solve_bfs, step, RewardSchedule, SokobanState,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewardMode {
    /// Environment schedule: move penalty, box on/off target, bonus.
    Env,
    /// Per-step expert match: 1.0 / 0.1 / 0.0.
    ActionMatch,
}

impl RewardMode {
    pub fn parse(text: &str) -> Option<RewardMode> {
        match text {
            "env" => Some(RewardMode::Env),
            "action_match" => Some(RewardMode::ActionMatch),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub bind: String,
    pub idle_timeout: Duration,
    pub reward_mode: RewardMode,
    pub target: i64,
    pub schedule: RewardSchedule,
    /// Worker threads accepting requests.
    pub workers: usize,
}

impl Default for ServeOptions {
    fn default() -> Self {
        ServeOptions {
            bind: "127.0.0.1:8642".to_string(),
            idle_timeout: Duration::from_secs(600),
            reward_mode: RewardMode::Env,
            target: 24,
            schedule: RewardSchedule::default(),
            workers: 4,
        }
    }
}

enum EpisodeKind {
    Sokoban { state: SokobanState, variant: SokobanVariant, done: bool },
    Gp { instance: GPInstance, done: bool },
}

struct Episode {
    kind: EpisodeKind,
    last_touch: Instant,
}

struct Service {
    options: ServeOptions,
    episodes: Mutex<HashMap<String, Episode>>,
    next_id: AtomicU64,
}

#[derive(Deserialize)]
struct ResetBody {
    task: String,
    variant: String,
    seed: u64,
}

#[derive(Deserialize)]
struct StepBody {
    episode_id: String,
    response_text: String,
}

enum Reply {
    Ok(serde_json::Value),
    Error(u16, String),
}

impl Service {
    fn purge_expired(&self) {
        let mut episodes = self.episodes.lock().unwrap();
        let timeout = self.options.idle_timeout;
        episodes.retain(|_, e| e.last_touch.elapsed() < timeout);
    }

    fn reset(&self, body: &str) -> Reply {
        let Ok(body) = serde_json::from_str::<ResetBody>(body) else {
            return Reply::Error(400, "malformed reset body".to_string());
        };
        let (kind, prompt) = match body.task.as_str() {
            "sokoban" => {
                let registry = builtin_variants();
                let Some(variant) = registry.find_sokoban(&body.variant) else {
                    return Reply::Error(400, format!("unknown sokoban variant '{}'", body.variant));
                };
                match generate_puzzle(&variant.puzzle_spec(body.seed)) {
                    Ok((state, _)) => {
                        let prompt = render_sokoban_prompt(&state, variant);
                        (EpisodeKind::Sokoban { state, variant: variant.clone(), done: false }, prompt)
                    }
                    Err(e) => return Reply::Error(400, format!("puzzle generation failed: {e}")),
                }
            }
            "gp" => {
                let mut gen = GpGenConfig::for_split(&body.variant);
                gen.target = self.options.target;
                match generate_instance(&gen, body.seed) {
                    Ok(instance) => {
                        let prompt = render_gp_prompt(&instance);
                        (EpisodeKind::Gp { instance, done: false }, prompt)
                    }
                    Err(e) => return Reply::Error(400, format!("instance generation failed: {e}")),
                }
            }
            other => return Reply::Error(400, format!("unknown task '{other}'")),
        };
        let id = format!("ep-{}", self.next_id.fetch_add(1, Ordering::Relaxed));
        self.episodes
            .lock()
            .unwrap()
            .insert(id.clone(), Episode { kind, last_touch: Instant::now() });
        Reply::Ok(json!({ "episode_id": id, "prompt": prompt }))
    }

    fn step(&self, body: &str) -> Reply {
        let Ok(body) = serde_json::from_str::<StepBody>(body) else {
            return Reply::Error(400, "malformed step body".to_string());
        };
        let mut episodes = self.episodes.lock().unwrap();
        let Some(episode) = episodes.get_mut(&body.episode_id) else {
            return Reply::Error(404, format!("unknown episode '{}'", body.episode_id));
        };
        episode.last_touch = Instant::now();
        match &mut episode.kind {
            EpisodeKind::Sokoban { state, variant, done } => {
                if *done {
                    return Reply::Error(409, "episode already done".to_string());
                }
                let parsed = parse_response(&body.response_text);
                let decoded = if parsed.format_ok {
                    decode_action(&parsed.answer_text, variant)
                } else {
                    None
                };
                let valid = check_sokoban_validity(&parsed, variant);
                let expert = match self.options.reward_mode {
                    RewardMode::ActionMatch => {
                        solve_bfs(state, state.max_steps().saturating_sub(state.steps_taken()))
                            .and_then(|s| s.first().copied())
                    }
                    RewardMode::Env => None,
                };
                let outcome = match decoded {
                    Some(action) => step(state, action, &self.options.schedule),
                    None => no_op_step(state, &self.options.schedule),
                };
                let reward = match self.options.reward_mode {
                    RewardMode::Env => outcome.reward,
                    RewardMode::ActionMatch => match expert {
                        Some(expert) => action_match_reward(decoded, expert, parsed.format_ok),
                        None => 0.0,
                    },
                };
                *state = outcome.next_state;
                *done = outcome.terminated;
                let mut payload = json!({
                    "reward": reward,
                    "done": outcome.terminated,
                    "success": outcome.success,
                    "info": {
                        "steps_used": state.steps_taken(),
                        "decoded": decoded.map(|a| a.name()),
                        "valid": valid,
                        "moved": outcome.moved,
                    },
                });
                if !outcome.terminated {
                    payload["prompt"] = json!(render_sokoban_prompt(state, variant));
                }
                Reply::Ok(payload)
            }
            EpisodeKind::Gp { instance, done } => {
                if *done {
                    return Reply::Error(409, "episode already done".to_string());
                }
                let score = score_gp_answer(&body.response_text, instance);
                *done = true;
                Reply::Ok(json!({
                    "reward": score.points,
                    "done": true,
                    "success": score.success,
                    "info": { "verdict": score.verdict, "points": score.points },
                }))
            }
        }
    }

    fn health(&self) -> Reply {
        let episodes = self.episodes.lock().unwrap().len();
        Reply::Ok(json!({ "status": "ok", "episodes": episodes }))
    }
}

fn respond(request: tiny_http::Request, reply: Reply) {
    let (status, body) = match reply {
        Reply::Ok(value) => (200, value),
        Reply::Error(code, message) => (code, json!({ "error": message })),
    };
    let header = Header::from_bytes("Content-Type", "application/json").unwrap();
    let response = Response::from_string(body.to_string())
        .with_status_code(status)
        .with_header(header);
    let _ = request.respond(response);
}

/// Bind and serve until the process exits. Prints the bound address on
/// stdout so callers binding port 0 can discover it.
pub fn serve(options: ServeOptions) -> anyhow::Result<()> {
    let server =
        Server::http(&options.bind).map_err(|e| anyhow::anyhow!("bind {}: {e}", options.bind))?;
    println!("listening on http://{}", server.server_addr());
    std::io::stdout().flush().ok();

    let workers = options.workers.max(1);
    let server = Arc::new(server);
    let service =
        Arc::new(Service { options, episodes: Mutex::new(HashMap::new()), next_id: AtomicU64::new(1) });

    let mut handles = Vec::new();
    for _ in 0..workers {
        let server = Arc::clone(&server);
        let service = Arc::clone(&service);
        handles.push(std::thread::spawn(move || {
            for mut request in server.incoming_requests() {
                service.purge_expired();
                let mut body = String::new();
                if request.as_reader().read_to_string(&mut body).is_err() {
                    respond(request, Reply::Error(400, "unreadable body".to_string()));
                    continue;
                }
                let reply = match (request.method().as_str(), request.url()) {
                    ("POST", "/reset") => service.reset(&body),
                    ("POST", "/step") => service.step(&body),
                    ("GET", "/health") => service.health(),
                    (method, url) => Reply::Error(404, format!("no route {method} {url}")),
                };
                respond(request, reply);
            }
        }));
    }
    for handle in handles {
        let _ = handle.join();
    }
    Ok(())
}
