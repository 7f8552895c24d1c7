//! Dual-route checks: every solver is held against an independently coded
//! oracle. The acceptance suite repeats these at full scale; these runs keep
//! `cargo test` fast while still exercising each pairing.

mod support;

use varbench_core::points::{is_solvable, solve_exhaustive};
use varbench_core::prompts::{sample_diverse_vocab, wordlist};
use varbench_core::seed::{derive, splitmix64};
use varbench_core::sokoban::{generate_puzzle, solve_bfs, solve_bfs_unpruned, PuzzleSpec};

#[test]
fn bfs_length_equals_iterative_deepening_minimum() {
    for i in 0..50 {
        let spec = PuzzleSpec::new(6, 6, 1, derive(0xB5F5, i));
        let (state, solution) = generate_puzzle(&spec).unwrap();
        let oracle = support::iddfs_min_len(&state, 30).expect("oracle agrees it is solvable");
        assert_eq!(solution.len(), oracle, "puzzle seed {}", spec.seed);
    }
}

#[test]
fn deadlock_pruning_preserves_bfs_results() {
    for i in 0..120 {
        let spec = PuzzleSpec::new(6, 6, 1, derive(0xDEAD, i));
        let (state, _) = generate_puzzle(&spec).unwrap();
        let pruned = solve_bfs(&state, 30);
        let unpruned = solve_bfs_unpruned(&state, 30);
        assert_eq!(pruned, unpruned, "puzzle seed {}", spec.seed);
    }
}

#[test]
fn pruning_agrees_on_unsolvable_boards() {
    // craft states whose only box path dies in a corner
    let state = varbench_core::sokoban::parse(
        "######\n#_X__#\n#P__O#\n#____#\n######",
        &varbench_core::sokoban::SymbolTable::default(),
        30,
    )
    .unwrap();
    let pruned = solve_bfs(&state, 30);
    assert_eq!(pruned, solve_bfs_unpruned(&state, 30));
    let _ = pruned;
}

#[test]
fn exhaustive_solver_agrees_with_pairwise_enumerator() {
    let mut solvable = 0;
    for i in 0..200u64 {
        let h = splitmix64(derive(0x6A3E, i));
        let hand = [
            (h & 0xFFFF) as i64 % 13 + 1,
            ((h >> 16) & 0xFFFF) as i64 % 13 + 1,
            ((h >> 32) & 0xFFFF) as i64 % 13 + 1,
            ((h >> 48) & 0xFFFF) as i64 % 13 + 1,
        ];
        let lib = is_solvable(&hand, 24);
        let oracle = support::pairwise_solvable(&hand, 24);
        assert_eq!(lib, oracle, "hand {hand:?}");
        solvable += lib as usize;
    }
    // sanity: the sample is not one-sided
    assert!(solvable > 50 && solvable < 200);
}

#[test]
fn classic_regression_hands() {
    assert!(is_solvable(&[3, 3, 8, 8], 24));
    assert!(support::pairwise_solvable(&[3, 3, 8, 8], 24));
    assert!(!is_solvable(&[1, 1, 1, 1], 24));
    assert!(!support::pairwise_solvable(&[1, 1, 1, 1], 24));
    let formula = solve_exhaustive(&[3, 3, 8, 8], 24).unwrap();
    assert_eq!(
        varbench_core::formula::check_formula(&formula, &[3, 3, 8, 8], 24),
        varbench_core::formula::FormulaVerdict::Correct
    );
}

#[test]
fn vocab_sampling_is_uniform_by_chi_square() {
    let words = wordlist();
    let mut counts = vec![0u64; words.len()];
    let index: std::collections::HashMap<&str, usize> =
        words.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let samples = 100_000u64;
    for seed in 0..samples {
        for word in &sample_diverse_vocab(seed).words {
            counts[index[word.as_str()]] += 1;
        }
    }
    let statistic = support::chi_square_uniform(&counts);
    // alpha = 0.01 upper tail, df = words - 1
    let critical = support::chi_square_critical((words.len() - 1) as f64, 2.326_348);
    assert!(
        statistic < critical,
        "chi-square {statistic:.1} exceeds critical {critical:.1} at alpha=0.01"
    );
}
