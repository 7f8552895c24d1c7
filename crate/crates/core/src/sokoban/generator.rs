//! Solvable puzzle generation: random placement filtered by the solver.
//!
//! Each attempt scatters interior walls, then places targets, boxes and the
//! player on distinct floor cells. The first configuration the BFS solves
//! within the step budget is returned together with its solution, so every
//! emitted puzzle carries a replayable proof of solvability.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{solve_bfs, Action, Grid, Pos, SokobanError, SokobanState};

/// Generation parameters. `max_steps` doubles as the solver's depth bound and
/// the episode budget of the produced state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleSpec {
    pub width: usize,
    pub height: usize,
    pub num_boxes: usize,
    pub max_steps: u32,
    pub seed: u64,
    /// Probability that an interior cell is a wall.
    pub wall_density: f64,
    /// Rejection-loop budget before giving up.
    pub max_attempts: usize,
}

impl PuzzleSpec {
    pub fn new(width: usize, height: usize, num_boxes: usize, seed: u64) -> PuzzleSpec {
        PuzzleSpec {
            width,
            height,
            num_boxes,
            max_steps: 30,
            seed,
            wall_density: 0.2,
            max_attempts: 10_000,
        }
    }

    fn validate(&self) -> Result<(), SokobanError> {
        if !(1..=2).contains(&self.num_boxes) {
            return Err(SokobanError::InvalidSpec(format!(
                "num_boxes must be 1 or 2, got {}",
                self.num_boxes
            )));
        }
        if self.width < 4 || self.height < 4 {
            return Err(SokobanError::InvalidSpec(format!(
                "grid {}x{} has no usable interior",
                self.width, self.height
            )));
        }
        let interior = (self.width - 2) * (self.height - 2);
        if interior < 2 * self.num_boxes + 1 {
            return Err(SokobanError::InvalidSpec(format!(
                "interior of {interior} cells cannot hold {} boxes, {} targets and the player",
                self.num_boxes, self.num_boxes
            )));
        }
        if !(0.0..1.0).contains(&self.wall_density) {
            return Err(SokobanError::InvalidSpec(format!(
                "wall_density must be in [0,1), got {}",
                self.wall_density
            )));
        }
        Ok(())
    }
}

/// Generate a solvable puzzle and its BFS solution. Deterministic in
/// `spec.seed`; fails with [`SokobanError::GenerationExhausted`] once the
/// attempt budget runs out.
pub fn generate_puzzle(spec: &PuzzleSpec) -> Result<(SokobanState, Vec<Action>), SokobanError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.max_attempts {
        let Some(state) = sample_state(spec, &mut rng) else { continue };
        if state.is_success() {
            // Degenerate: everything already placed. Nothing to demonstrate.
            continue;
        }
        if let Some(solution) = solve_bfs(&state, spec.max_steps) {
            return Ok((state, solution));
        }
    }
    Err(SokobanError::GenerationExhausted { attempts: spec.max_attempts })
}

fn sample_state(spec: &PuzzleSpec, rng: &mut ChaCha8Rng) -> Option<SokobanState> {
    let mut walls = BTreeSet::new();
    let mut floor: Vec<Pos> = Vec::new();
    for r in 1..spec.height - 1 {
        for c in 1..spec.width - 1 {
            if rng.gen_bool(spec.wall_density) {
                walls.insert((r, c));
            } else {
                floor.push((r, c));
            }
        }
    }
    let needed = 2 * spec.num_boxes + 1;
    if floor.len() < needed {
        return None;
    }
    // Partial Fisher-Yates: the first `needed` entries become the placements.
    for i in 0..needed {
        let j = rng.gen_range(i..floor.len());
        floor.swap(i, j);
    }
    let targets: BTreeSet<Pos> = floor[..spec.num_boxes].iter().copied().collect();
    let boxes: BTreeSet<Pos> =
        floor[spec.num_boxes..2 * spec.num_boxes].iter().copied().collect();
    let player = floor[2 * spec.num_boxes];

    let grid = Grid::new(spec.width, spec.height, walls, targets).ok()?;
    SokobanState::new(grid, boxes, player, spec.max_steps).ok()
}
