//! Independent oracles used by the property and acceptance tests. These
//! deliberately avoid the library's solver code paths: the point is to check
//! one route against another. Each test target compiles its own copy, so not
//! every helper is used everywhere.
#![allow(dead_code)]

use varbench_core::sokoban::{Action, SokobanState};

/// Minimal solution length by plain iterative deepening over (player, boxes),
/// expanding actions in the reverse of the library's canonical order. Prunes
/// only re-visits with an equal-or-larger remaining budget, which preserves
/// completeness within each depth limit.
pub fn iddfs_min_len(state: &SokobanState, max_depth: u32) -> Option<usize> {
    const ORDER: [Action; 4] = [Action::Left, Action::Down, Action::Right, Action::Up];

    type Key = (Vec<(usize, usize)>, (usize, usize));
    fn key(state: &SokobanState) -> Key {
        (state.boxes().iter().copied().collect(), state.player())
    }

    fn dfs(
        state: &SokobanState,
        remaining: u32,
        seen: &mut std::collections::HashMap<Key, u32>,
    ) -> bool {
        if state.is_success() {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let k = key(state);
        if let Some(&r) = seen.get(&k) {
            if r >= remaining {
                return false;
            }
        }
        seen.insert(k, remaining);
        for action in ORDER {
            let out = varbench_core::sokoban::step(
                state,
                action,
                &varbench_core::sokoban::RewardSchedule::default(),
            );
            if !out.moved {
                continue;
            }
            if dfs(&out.next_state, remaining - 1, seen) {
                return true;
            }
        }
        false
    }

    if state.is_success() {
        return Some(0);
    }
    // step() counts against the state's budget, so probes must start fresh
    debug_assert_eq!(state.steps_taken(), 0);
    for limit in 1..=max_depth {
        let mut seen = std::collections::HashMap::new();
        if dfs(state, limit, &mut seen) {
            return Some(limit as usize);
        }
    }
    None
}

/// Exact fraction on i128; small enough inputs never overflow.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn int(v: i64) -> Frac {
        Frac { num: v as i128, den: 1 }
    }

    fn reduce(self) -> Frac {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.num, self.den).max(1);
        let sign = if self.den < 0 { -1 } else { 1 };
        Frac { num: sign * self.num / g, den: sign * self.den / g }
    }

    pub fn is_int(self, v: i64) -> bool {
        let r = self.reduce();
        r.den == 1 && r.num == v as i128
    }
}

/// Second, independently ordered 24-game enumerator: combine value pairs
/// bottom-up (the library enumerates permutations times tree shapes instead).
/// Operator order is also reversed relative to the library.
pub fn pairwise_solvable(values: &[i64], target: i64) -> bool {
    let fracs: Vec<Frac> = values.iter().map(|&v| Frac::int(v)).collect();
    search(&fracs, target)
}

fn search(values: &[Frac], target: i64) -> bool {
    if values.len() == 1 {
        return values[0].is_int(target);
    }
    for i in 0..values.len() {
        for j in 0..values.len() {
            if i == j {
                continue;
            }
            let (a, b) = (values[i], values[j]);
            let mut rest: Vec<Frac> = Vec::with_capacity(values.len() - 1);
            for (k, &v) in values.iter().enumerate() {
                if k != i && k != j {
                    rest.push(v);
                }
            }
            let combos = [
                (b.num != 0).then(|| Frac { num: a.num * b.den, den: a.den * b.num }.reduce()),
                Some(Frac { num: a.num * b.num, den: a.den * b.den }.reduce()),
                Some(Frac { num: a.num * b.den - b.num * a.den, den: a.den * b.den }.reduce()),
                Some(Frac { num: a.num * b.den + b.num * a.den, den: a.den * b.den }.reduce()),
            ];
            for combo in combos.into_iter().flatten() {
                let mut next = rest.clone();
                next.push(combo);
                if search(&next, target) {
                    return true;
                }
            }
        }
    }
    false
}

/// Chi-square statistic over observed counts against a uniform expectation.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Wilson-Hilferty upper critical value for a chi-square distribution.
pub fn chi_square_critical(df: f64, z: f64) -> f64 {
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}
