//! Breadth-first search over (player, box-set) states.
//!
//! Successors are expanded in the canonical action order, so the returned
//! shortest solution is unique and reproducible. A simple corner-deadlock
//! prune (a box pushed into a non-target corner can never reach a target)
//! cuts the search; [`solve_bfs_unpruned`] keeps the exhaustive route so the
//! prune stays testable against it.

use std::collections::{HashMap, VecDeque};

use super::{step, Action, RewardSchedule, SokobanState};

/// Compact search key: cell indices are `row * width + col`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    /// Grids with at most 128 cells: boxes as a bitmask.
    Small { player: u16, boxes: u128 },
    /// Larger grids: sorted box indices.
    Big { player: u16, boxes: Box<[u16]> },
}

struct Board {
    width: usize,
    height: usize,
    walls: Vec<bool>,
    targets: Vec<bool>,
    small: bool,
}

impl Board {
    fn from_state(state: &SokobanState) -> Board {
        let grid = state.grid();
        let (width, height) = (grid.width(), grid.height());
        let mut walls = vec![false; width * height];
        let mut targets = vec![false; width * height];
        for &(r, c) in grid.walls() {
            walls[r * width + c] = true;
        }
        for &(r, c) in grid.targets() {
            targets[r * width + c] = true;
        }
        Board { width, height, walls, targets, small: width * height <= 128 }
    }

    fn index(&self, pos: (usize, usize)) -> u16 {
        (pos.0 * self.width + pos.1) as u16
    }

    fn neighbor(&self, idx: u16, action: Action) -> Option<u16> {
        let (r, c) = (idx as usize / self.width, idx as usize % self.width);
        let (dr, dc) = action.delta();
        let nr = r.checked_add_signed(dr)?;
        let nc = c.checked_add_signed(dc)?;
        (nr < self.height && nc < self.width).then(|| (nr * self.width + nc) as u16)
    }

    fn key(&self, player: u16, boxes: &[u16]) -> Key {
        if self.small {
            let mut mask = 0u128;
            for &b in boxes {
                mask |= 1u128 << b;
            }
            Key::Small { player, boxes: mask }
        } else {
            Key::Big { player, boxes: boxes.to_vec().into_boxed_slice() }
        }
    }

    fn all_on_targets(&self, boxes: &[u16]) -> bool {
        boxes.iter().all(|&b| self.targets[b as usize])
    }

    /// Box pushed into a corner formed by two walls, and the corner is not a
    /// target: the box can never leave, so the node is dead.
    fn is_corner_deadlock(&self, box_idx: u16) -> bool {
        if self.targets[box_idx as usize] {
            return false;
        }
        let blocked = |action: Action| match self.neighbor(box_idx, action) {
            Some(n) => self.walls[n as usize],
            None => true,
        };
        (blocked(Action::Up) || blocked(Action::Down))
            && (blocked(Action::Left) || blocked(Action::Right))
    }
}

/// Shortest action sequence reaching success within `max_steps`, or `None`.
/// Uses corner-deadlock pruning.
pub fn solve_bfs(state: &SokobanState, max_steps: u32) -> Option<Vec<Action>> {
    bfs(state, max_steps, true)
}

/// Same search without the deadlock prune. Reference route for testing the
/// prune's soundness; not used by the generator.
pub fn solve_bfs_unpruned(state: &SokobanState, max_steps: u32) -> Option<Vec<Action>> {
    bfs(state, max_steps, false)
}

fn bfs(state: &SokobanState, max_steps: u32, prune: bool) -> Option<Vec<Action>> {
    let board = Board::from_state(state);
    let start_player = board.index(state.player());
    let mut start_boxes: Vec<u16> = state.boxes().iter().map(|&p| board.index(p)).collect();
    start_boxes.sort_unstable();

    if board.all_on_targets(&start_boxes) {
        return Some(Vec::new());
    }

    let start_key = board.key(start_player, &start_boxes);
    // parent pointers for path reconstruction
    let mut visited: HashMap<Key, Option<(Key, Action)>> = HashMap::new();
    visited.insert(start_key.clone(), None);
    let mut queue: VecDeque<(u16, Vec<u16>, u32)> = VecDeque::new();
    queue.push_back((start_player, start_boxes, 0));

    while let Some((player, boxes, depth)) = queue.pop_front() {
        if depth >= max_steps {
            continue;
        }
        let from_key = board.key(player, &boxes);
        for action in Action::ALL {
            let Some(dest) = board.neighbor(player, action) else { continue };
            if board.walls[dest as usize] {
                continue;
            }
            let (next_player, next_boxes) = match boxes.binary_search(&dest) {
                Ok(i) => {
                    // push: the cell beyond must be free
                    let Some(beyond) = board.neighbor(dest, action) else { continue };
                    if board.walls[beyond as usize] || boxes.binary_search(&beyond).is_ok() {
                        continue;
                    }
                    if prune && board.is_corner_deadlock(beyond) {
                        continue;
                    }
                    let mut next = boxes.clone();
                    next.remove(i);
                    let at = next.partition_point(|&b| b < beyond);
                    next.insert(at, beyond);
                    (dest, next)
                }
                Err(_) => (dest, boxes.clone()),
            };
            let key = board.key(next_player, &next_boxes);
            if visited.contains_key(&key) {
                continue;
            }
            if board.all_on_targets(&next_boxes) {
                let mut path = vec![action];
                let mut cursor = from_key;
                while let Some(Some((prev, act))) = visited.get(&cursor) {
                    path.push(*act);
                    cursor = prev.clone();
                }
                path.reverse();
                return Some(path);
            }
            visited.insert(key, Some((from_key.clone(), action)));
            queue.push_back((next_player, next_boxes, depth + 1));
        }
    }
    None
}

/// Replay `actions` from `state`; true iff the final step reports success
/// within the state's step budget.
pub fn replay_reaches_success(
    state: &SokobanState,
    actions: &[Action],
    schedule: &RewardSchedule,
) -> bool {
    let mut current = state.clone();
    for (i, &action) in actions.iter().enumerate() {
        if current.is_terminal() {
            return false;
        }
        let out = step(&current, action, schedule);
        if out.success {
            return i == actions.len() - 1;
        }
        current = out.next_state;
    }
    current.is_success()
}
