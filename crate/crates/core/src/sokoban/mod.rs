//! Sokoban world model: deterministic push dynamics, reward schedule, text
//! rendering, solvable puzzle generation, and BFS solving.

mod generator;
mod solver;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use generator::{generate_puzzle, PuzzleSpec};
pub use solver::{replay_reaches_success, solve_bfs, solve_bfs_unpruned};

/// (row, col), row 0 at the top.
pub type Pos = (usize, usize);

/// The four moves, in canonical order. BFS expands successors in this order,
/// which makes solutions unique and reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Up,
    Right,
    Down,
    Left,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Up, Action::Right, Action::Down, Action::Left];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Action::Up => (-1, 0),
            Action::Right => (0, 1),
            Action::Down => (1, 0),
            Action::Left => (0, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Up => "Up",
            Action::Right => "Right",
            Action::Down => "Down",
            Action::Left => "Left",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SokobanError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid puzzle spec: {0}")]
    InvalidSpec(String),
    #[error("observation parse error at line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("no solvable puzzle found within {attempts} attempts")]
    GenerationExhausted { attempts: usize },
}

/// Static geometry: dimensions, walls and target cells. Border cells are
/// always walls; walls and targets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    width: usize,
    height: usize,
    walls: BTreeSet<Pos>,
    targets: BTreeSet<Pos>,
}

impl Grid {
    /// Build a grid. The border is added to `walls` automatically; targets on
    /// a wall cell (including the border) are rejected.
    pub fn new(
        width: usize,
        height: usize,
        walls: BTreeSet<Pos>,
        targets: BTreeSet<Pos>,
    ) -> Result<Grid, SokobanError> {
        if width < 3 || height < 3 {
            return Err(SokobanError::InvalidGrid(format!(
                "grid {width}x{height} is too small for a walled interior"
            )));
        }
        let mut walls = walls;
        for r in 0..height {
            walls.insert((r, 0));
            walls.insert((r, width - 1));
        }
        for c in 0..width {
            walls.insert((0, c));
            walls.insert((height - 1, c));
        }
        for &(r, c) in walls.iter().chain(targets.iter()) {
            if r >= height || c >= width {
                return Err(SokobanError::InvalidGrid(format!(
                    "cell ({r},{c}) is outside the {width}x{height} grid"
                )));
            }
        }
        if let Some(&pos) = targets.intersection(&walls).next() {
            return Err(SokobanError::InvalidGrid(format!("target {pos:?} is on a wall")));
        }
        Ok(Grid { width, height, walls, targets })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_wall(&self, pos: Pos) -> bool {
        self.walls.contains(&pos)
    }

    pub fn is_target(&self, pos: Pos) -> bool {
        self.targets.contains(&pos)
    }

    pub fn targets(&self) -> &BTreeSet<Pos> {
        &self.targets
    }

    pub fn walls(&self) -> &BTreeSet<Pos> {
        &self.walls
    }

    fn step_from(&self, pos: Pos, action: Action) -> Option<Pos> {
        let (dr, dc) = action.delta();
        let r = pos.0.checked_add_signed(dr)?;
        let c = pos.1.checked_add_signed(dc)?;
        (r < self.height && c < self.width).then_some((r, c))
    }
}

/// A full simulation state. `steps_taken` counts every applied action,
/// including blocked no-ops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SokobanState {
    grid: Grid,
    boxes: BTreeSet<Pos>,
    player: Pos,
    steps_taken: u32,
    max_steps: u32,
}

impl SokobanState {
    pub fn new(
        grid: Grid,
        boxes: BTreeSet<Pos>,
        player: Pos,
        max_steps: u32,
    ) -> Result<SokobanState, SokobanError> {
        if boxes.is_empty() {
            return Err(SokobanError::InvalidState("no boxes".into()));
        }
        if grid.is_wall(player) {
            return Err(SokobanError::InvalidState(format!("player {player:?} is on a wall")));
        }
        if boxes.contains(&player) {
            return Err(SokobanError::InvalidState(format!("player {player:?} is on a box")));
        }
        for &b in &boxes {
            if grid.is_wall(b) {
                return Err(SokobanError::InvalidState(format!("box {b:?} is on a wall")));
            }
        }
        if boxes.len() != grid.targets.len() {
            return Err(SokobanError::InvalidState(format!(
                "{} boxes but {} targets",
                boxes.len(),
                grid.targets.len()
            )));
        }
        Ok(SokobanState { grid, boxes, player, steps_taken: 0, max_steps })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn boxes(&self) -> &BTreeSet<Pos> {
        &self.boxes
    }

    pub fn player(&self) -> Pos {
        self.player
    }

    pub fn steps_taken(&self) -> u32 {
        self.steps_taken
    }

    pub fn max_steps(&self) -> u32 {
        self.max_steps
    }

    /// Every box sits on a target.
    pub fn is_success(&self) -> bool {
        self.boxes.iter().all(|&b| self.grid.is_target(b))
    }

    /// The step budget is exhausted or the puzzle is solved.
    pub fn is_terminal(&self) -> bool {
        self.is_success() || self.steps_taken >= self.max_steps
    }
}

/// Per-event reward units. Defaults follow the prompt's declared schedule;
/// `box_off_target` is the symmetric penalty that keeps cumulative reward
/// from being farmable by cycling a box on and off a target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardSchedule {
    pub move_penalty: f64,
    pub box_on_target: f64,
    pub box_off_target: f64,
    pub all_placed_bonus: f64,
}

impl Default for RewardSchedule {
    fn default() -> Self {
        RewardSchedule {
            move_penalty: -0.1,
            box_on_target: 1.0,
            box_off_target: -1.0,
            all_placed_bonus: 10.0,
        }
    }
}

/// Result of applying one action.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub next_state: SokobanState,
    pub reward: f64,
    pub success: bool,
    pub terminated: bool,
    /// Whether the player position changed. Blocked moves are legal no-ops
    /// that still consume a step.
    pub moved: bool,
}

/// Apply `action` to `state`. Pure: callers keep the old state.
///
/// If the destination is free the player moves; if it holds a box and the
/// cell beyond is free the box is pushed one cell; otherwise nothing moves.
/// Boxes can only be pushed, never pulled, and never push another box.
///
/// Callers must not step an already-successful or step-exhausted state.
pub fn step(state: &SokobanState, action: Action, schedule: &RewardSchedule) -> StepOutcome {
    debug_assert!(!state.is_success(), "step() on an already-successful state");
    debug_assert!(state.steps_taken < state.max_steps, "step() past the step budget");

    let mut next = state.clone();
    next.steps_taken = state.steps_taken.saturating_add(1);

    let mut reward = schedule.move_penalty;
    let mut moved = false;

    if let Some(dest) = state.grid.step_from(state.player, action) {
        if state.boxes.contains(&dest) {
            // Push: the cell beyond must be free floor or target.
            if let Some(beyond) = state.grid.step_from(dest, action) {
                if !state.grid.is_wall(beyond) && !state.boxes.contains(&beyond) {
                    next.boxes.remove(&dest);
                    next.boxes.insert(beyond);
                    next.player = dest;
                    moved = true;
                    let was_on = state.grid.is_target(dest);
                    let now_on = state.grid.is_target(beyond);
                    if now_on && !was_on {
                        reward += schedule.box_on_target;
                    } else if was_on && !now_on {
                        reward += schedule.box_off_target;
                    }
                }
            }
        } else if !state.grid.is_wall(dest) {
            next.player = dest;
            moved = true;
        }
    }

    let success = next.is_success();
    if success {
        reward += schedule.all_placed_bonus;
    }
    let terminated = success || next.steps_taken >= next.max_steps;
    StepOutcome { next_state: next, reward, success, terminated, moved }
}

/// The no-op an episode runner applies when a response decodes to no action:
/// the player holds position, the step counter advances, and the move
/// penalty applies, exactly like a blocked move.
pub fn no_op_step(state: &SokobanState, schedule: &RewardSchedule) -> StepOutcome {
    debug_assert!(!state.is_success(), "no_op_step() on an already-successful state");
    let mut next = state.clone();
    next.steps_taken = state.steps_taken.saturating_add(1);
    let terminated = next.steps_taken >= next.max_steps;
    StepOutcome {
        next_state: next,
        reward: schedule.move_penalty,
        success: false,
        terminated,
        moved: false,
    }
}

/// Rendering symbols. The default set is the one the prompt's quick guide
/// declares, including the U+2713 check mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    pub wall: char,
    pub floor: char,
    pub target: char,
    pub box_cell: char,
    pub player: char,
    pub box_on_target: char,
    pub player_on_target: char,
}

impl Default for SymbolTable {
    fn default() -> Self {
        SymbolTable {
            wall: '#',
            floor: '_',
            target: 'O',
            box_cell: 'X',
            player: 'P',
            box_on_target: '✓',
            player_on_target: 'S',
        }
    }
}

/// Render the state as `height` lines of `width` symbols, newline-separated,
/// without a trailing newline. Symbol precedence: player-on-target, then
/// box-on-target, player, box, target, wall, floor.
pub fn render(state: &SokobanState, symbols: &SymbolTable) -> String {
    let grid = &state.grid;
    let mut out = String::with_capacity((grid.width + 1) * grid.height);
    for r in 0..grid.height {
        if r > 0 {
            out.push('\n');
        }
        for c in 0..grid.width {
            let pos = (r, c);
            let ch = if pos == state.player {
                if grid.is_target(pos) {
                    symbols.player_on_target
                } else {
                    symbols.player
                }
            } else if state.boxes.contains(&pos) {
                if grid.is_target(pos) {
                    symbols.box_on_target
                } else {
                    symbols.box_cell
                }
            } else if grid.is_target(pos) {
                symbols.target
            } else if grid.is_wall(pos) {
                symbols.wall
            } else {
                symbols.floor
            };
            out.push(ch);
        }
    }
    out
}

/// Parse a rendering back into a state, the inverse of [`render`].
///
/// `steps_taken` restarts at 0 and `max_steps` is the caller's; neither is
/// part of the drawing.
pub fn parse(text: &str, symbols: &SymbolTable, max_steps: u32) -> Result<SokobanState, SokobanError> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(SokobanError::Parse { line: 0, col: 0, message: "empty observation".into() });
    }
    let width = lines[0].chars().count();
    let mut walls = BTreeSet::new();
    let mut targets = BTreeSet::new();
    let mut boxes = BTreeSet::new();
    let mut player = None;
    for (r, line) in lines.iter().enumerate() {
        if line.chars().count() != width {
            return Err(SokobanError::Parse {
                line: r,
                col: 0,
                message: format!("expected {width} columns, found {}", line.chars().count()),
            });
        }
        for (c, ch) in line.chars().enumerate() {
            let pos = (r, c);
            match ch {
                _ if ch == symbols.wall => {
                    walls.insert(pos);
                }
                _ if ch == symbols.floor => {}
                _ if ch == symbols.target => {
                    targets.insert(pos);
                }
                _ if ch == symbols.box_cell => {
                    boxes.insert(pos);
                }
                _ if ch == symbols.box_on_target => {
                    boxes.insert(pos);
                    targets.insert(pos);
                }
                _ if ch == symbols.player => set_player(&mut player, pos, r, c)?,
                _ if ch == symbols.player_on_target => {
                    targets.insert(pos);
                    set_player(&mut player, pos, r, c)?;
                }
                other => {
                    return Err(SokobanError::Parse {
                        line: r,
                        col: c,
                        message: format!("unknown symbol '{other}'"),
                    })
                }
            }
        }
    }
    let player = player.ok_or(SokobanError::Parse {
        line: 0,
        col: 0,
        message: "no player in observation".into(),
    })?;
    let grid = Grid::new(width, lines.len(), walls, targets)?;
    SokobanState::new(grid, boxes, player, max_steps)
}

fn set_player(slot: &mut Option<Pos>, pos: Pos, r: usize, c: usize) -> Result<(), SokobanError> {
    if slot.replace(pos).is_some() {
        return Err(SokobanError::Parse { line: r, col: c, message: "multiple players".into() });
    }
    Ok(())
}
