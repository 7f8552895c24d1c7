//! Property tests for the engine invariants: world-model conservation
//! laws, parser/printer round trips, exactness of rational evaluation, the
//! fake-variant duality, and the no-false-accepts law of the CoT filter.

use proptest::prelude::*;

use varbench_core::datagen::{filter_cot, CotCandidate, CotContext};
use varbench_core::formula::{evaluate, parse_formula, BinOp, Expr};
use varbench_core::prompts::{
    builtin_variants, check_sokoban_validity, decode_action, parse_response,
};
use varbench_core::seed::splitmix64;
use varbench_core::sokoban::{generate_puzzle, step, Action, PuzzleSpec, RewardSchedule};

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = (0i64..=99).prop_map(Expr::Num);
    leaf.prop_recursive(4, 64, 2, |inner| {
        (
            prop_oneof![
                Just(BinOp::Add),
                Just(BinOp::Sub),
                Just(BinOp::Mul),
                Just(BinOp::Div)
            ],
            inner.clone(),
            inner,
        )
            .prop_map(|(op, lhs, rhs)| Expr::bin(op, lhs, rhs))
    })
}

proptest! {
    #[test]
    fn printing_round_trips_to_the_same_tree(expr in expr_strategy()) {
        let printed = expr.to_string();
        let reparsed = parse_formula(&printed).unwrap();
        prop_assert_eq!(&reparsed.expr, &expr);
        prop_assert_eq!(reparsed.claimed_target, None);
        // leaf multiset of the printout equals the tree's leaves in order
        prop_assert_eq!(reparsed.expr.leaves(), expr.leaves());
        // evaluation of the reparse is identical, errors included
        prop_assert_eq!(evaluate(&reparsed.expr), evaluate(&expr));
    }

    #[test]
    fn response_parsing_never_panics(text in ".{0,300}") {
        let parsed = parse_response(&text);
        if parsed.format_ok {
            prop_assert!(!parsed.answer_text.is_empty());
        }
    }

    #[test]
    fn junk_tokens_never_decode(token in "[a-zA-Z0-9 ]{1,8}") {
        let registry = builtin_variants();
        for variant in registry.sokoban() {
            if let Some(action) = decode_action(&token, variant) {
                // a successful decode must be an exact vocabulary hit
                let vocab = variant.decoding_tokens();
                prop_assert!(vocab.iter().any(|t| t.eq_ignore_ascii_case(token.trim())));
                let _ = action;
            }
        }
    }

    #[test]
    fn cot_filter_never_accepts_a_mismatched_action(answer in "[a-zA-Z0-9]{1,10}") {
        prop_assume!(!answer.eq_ignore_ascii_case("up"));
        let tokens = ["Up", "Down", "Left", "Right"].map(str::to_string);
        let candidate = CotCandidate {
            prompt: "p".to_string(),
            response: format!("<think> t </think> <answer> {answer} </answer>"),
            context: CotContext::Sokoban { expert: Action::Up, tokens },
        };
        let outcome = filter_cot(&[candidate], 16);
        prop_assert!(outcome.accepted.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn stepping_preserves_world_invariants(
        seed in 0u64..100_000,
        moves in proptest::collection::vec(0usize..4, 1..30),
    ) {
        let num_boxes = 1 + (seed % 2) as usize;
        let (mut state, _) = generate_puzzle(&PuzzleSpec::new(6, 6, num_boxes, seed)).unwrap();
        let schedule = RewardSchedule::default();
        for &index in &moves {
            if state.is_terminal() {
                break;
            }
            let action = Action::ALL[index];
            let before_steps = state.steps_taken();
            let out = step(&state, action, &schedule);
            let repeat = step(&state, action, &schedule);
            prop_assert_eq!(&out, &repeat, "step must be a pure function");

            let next = out.next_state;
            prop_assert_eq!(next.boxes().len(), state.boxes().len(), "box conservation");
            prop_assert_eq!(next.steps_taken(), before_steps + 1, "monotone step counter");
            prop_assert!(!next.boxes().contains(&next.player()), "player not on a box");
            prop_assert!(!next.grid().is_wall(next.player()), "player not in a wall");
            for &b in next.boxes() {
                prop_assert!(!next.grid().is_wall(b), "box not in a wall");
            }
            if !out.moved {
                prop_assert_eq!(next.player(), state.player());
                prop_assert_eq!(next.boxes(), state.boxes());
            }
            prop_assert_eq!(out.success, next.is_success());
            state = next;
        }
    }
}

#[test]
fn fake_duality_over_the_registry() {
    let registry = builtin_variants();
    let fake = registry.find_sokoban("FakeSokobanNumerical").unwrap();
    let canonical = registry.find_sokoban("SimpleSokoban").unwrap();
    for token in fake.admissible_set() {
        // prompted tokens are valid for the metric yet decode to nothing
        let response = parse_response(&format!("<think> t </think> <answer> {token} </answer>"));
        assert!(check_sokoban_validity(&response, fake));
        assert_eq!(decode_action(token, fake), None);
    }
    for token in canonical.admissible_set() {
        // canonical tokens decode under the fake variant, and only they do
        assert!(decode_action(token, fake).is_some());
        assert_eq!(decode_action(token, fake), decode_action(token, canonical));
    }
}

#[test]
fn non_fake_decode_success_implies_validity() {
    let registry = builtin_variants();
    for variant in registry.sokoban().iter().filter(|v| !v.fake) {
        for token in variant.admissible_set() {
            let response =
                parse_response(&format!("<think> t </think> <answer> {token} </answer>"));
            assert!(decode_action(&response.answer_text, variant).is_some());
            assert!(check_sokoban_validity(&response, variant), "{} / {token}", variant.name);
        }
    }
}

/// Exactness at scale: evaluating a tree and evaluating its re-parsed
/// printout give identical rationals over 100,000 random trees with leaves
/// up to 19 and depth up to 5.
#[test]
fn evaluation_is_exact_over_reprints() {
    fn build(h: &mut u64, depth: u32) -> Expr {
        *h = splitmix64(*h);
        if depth == 0 || (*h).is_multiple_of(5) {
            return Expr::Num((*h >> 8) as i64 % 20);
        }
        let op = match *h % 4 {
            0 => BinOp::Add,
            1 => BinOp::Sub,
            2 => BinOp::Mul,
            _ => BinOp::Div,
        };
        let lhs = build(h, depth - 1);
        let rhs = build(h, depth - 1);
        Expr::bin(op, lhs, rhs)
    }
    for i in 0..100_000u64 {
        let mut h = splitmix64(i ^ 0xE4AC7);
        let expr = build(&mut h, 5);
        let direct = evaluate(&expr);
        let reparsed = parse_formula(&expr.to_string()).unwrap().expr;
        assert_eq!(direct, evaluate(&reparsed), "tree {expr}");
    }
}
