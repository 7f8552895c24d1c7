//! Pure reference implementations of the per-step action-match reward and the
//! group-relative advantage / clipped-surrogate terms. No training loop lives
//! here; these exist so reward and advantage math can be tested in isolation
//! and reused by the episode service.

use serde::{Deserialize, Serialize};

use crate::sokoban::Action;

/// Rewards of one sampled group, with the degenerate-group floor for the
/// standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageGroup {
    pub rewards: Vec<f64>,
    pub epsilon_std: f64,
}

impl AdvantageGroup {
    pub fn new(rewards: Vec<f64>) -> AdvantageGroup {
        AdvantageGroup { rewards, epsilon_std: 1e-8 }
    }
}

/// PPO-style clipping width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClipParams {
    pub epsilon: f64,
}

impl Default for ClipParams {
    fn default() -> Self {
        ClipParams { epsilon: 0.2 }
    }
}

/// Per-step reward for a decoded action against the expert label: 1.0 on a
/// match, else 0.1 for a properly formatted response, else 0.0.
pub fn action_match_reward(predicted: Option<Action>, expert: Action, format_ok: bool) -> f64 {
    if predicted == Some(expert) {
        1.0
    } else if format_ok {
        0.1
    } else {
        0.0
    }
}

/// Normalized group-relative advantages: `(r_i - mean) / std` with the
/// population standard deviation. A group whose std falls below
/// `epsilon_std` gets all-zero advantages.
pub fn group_relative_advantage(group: &AdvantageGroup) -> Vec<f64> {
    let n = group.rewards.len();
    assert!(n >= 1, "advantage group must be non-empty");
    let mean = group.rewards.iter().sum::<f64>() / n as f64;
    let var = group.rewards.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n as f64;
    let std = var.sqrt();
    if std < group.epsilon_std {
        return vec![0.0; n];
    }
    group.rewards.iter().map(|r| (r - mean) / std).collect()
}

/// One clipped-surrogate term: `min(ratio * A, clamp(ratio, 1-eps, 1+eps) * A)`.
pub fn grpo_clipped_term(ratio: f64, advantage: f64, clip: &ClipParams) -> f64 {
    assert!(ratio > 0.0, "probability ratio must be positive");
    let clamped = ratio.clamp(1.0 - clip.epsilon, 1.0 + clip.epsilon);
    (ratio * advantage).min(clamped * advantage)
}
