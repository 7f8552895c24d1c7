//! Acceptance criterion 10: wire/CLI determinism. `eval` with a replay agent
//! and `serve` driven by a recorded transcript produce byte-identical
//! reports across runs and across concurrency bounds {1, 8}.
//!
//! Run with `cargo test -p varbench-cli --test acceptance -- --nocapture`.

mod support;

use serde_json::json;
use support::{read_bytes, run_ok, ServerGuard};

use varbench_core::sokoban::{parse, solve_bfs, SymbolTable};

#[test]
fn acceptance_10_wire_and_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let transcript = dir.path().join("transcript.jsonl");

    // Record an oracle transcript once.
    run_ok(&[
        "eval",
        "--task",
        "sokoban",
        "--agent",
        "oracle",
        "--splits",
        "SimpleSokoban,SimpleSokobanNumerical",
        "--episodes",
        "5",
        "--seed",
        "99",
        "--transcript",
        transcript.to_str().unwrap(),
    ]);
    let replay = format!("replay:{}", transcript.display());

    // Replay it twice at concurrency 1 and twice at concurrency 8.
    let mut reports = Vec::new();
    for (label, concurrency) in [("c1a", "1"), ("c1b", "1"), ("c8a", "8"), ("c8b", "8")] {
        let out = dir.path().join(format!("report_{label}.json"));
        run_ok(&[
            "eval",
            "--task",
            "sokoban",
            "--agent",
            &replay,
            "--splits",
            "SimpleSokoban,SimpleSokobanNumerical",
            "--episodes",
            "5",
            "--seed",
            "99",
            "--concurrency",
            concurrency,
            "--out",
            out.to_str().unwrap(),
        ]);
        reports.push((
            read_bytes(&out),
            read_bytes(&out.with_extension("csv")),
            read_bytes(&out.with_extension("txt")),
        ));
    }
    for other in &reports[1..] {
        assert_eq!(reports[0], *other, "reports must be byte-identical across runs and bounds");
    }

    // Serve, record a driven episode, replay the exact byte sequence, and
    // require identical reward/done sequences; repeat on a fresh process.
    let record = |server: &ServerGuard| -> (Vec<String>, Vec<(f64, bool, bool)>) {
        let (_, reset) = server
            .post("/reset", json!({"task": "sokoban", "variant": "SimpleSokoban", "seed": 4242}));
        let episode = reset["episode_id"].as_str().unwrap().to_string();
        let mut prompt = reset["prompt"].as_str().unwrap().to_string();
        let mut responses = Vec::new();
        let mut outcomes = Vec::new();
        loop {
            let observation = prompt
                .split("[Current Observation]:\n")
                .nth(1)
                .unwrap()
                .split("\nDecide the next action:")
                .next()
                .unwrap();
            let state = parse(observation, &SymbolTable::default(), 30).unwrap();
            let action = solve_bfs(&state, 30).unwrap()[0];
            let response = format!("<think> </think> <answer> {} </answer>", action.name());
            let (status, stepped) =
                server.post("/step", json!({"episode_id": episode, "response_text": response}));
            assert_eq!(status, 200);
            responses.push(response);
            let done = stepped["done"].as_bool().unwrap();
            outcomes.push((
                stepped["reward"].as_f64().unwrap(),
                done,
                stepped["success"].as_bool().unwrap(),
            ));
            if done {
                assert!(stepped["success"].as_bool().unwrap());
                assert!(responses.len() <= 30);
                return (responses, outcomes);
            }
            prompt = stepped["prompt"].as_str().unwrap().to_string();
        }
    };
    let replay_wire = |server: &ServerGuard, responses: &[String]| -> Vec<(f64, bool, bool)> {
        let (_, reset) = server
            .post("/reset", json!({"task": "sokoban", "variant": "SimpleSokoban", "seed": 4242}));
        let episode = reset["episode_id"].as_str().unwrap().to_string();
        responses
            .iter()
            .map(|response| {
                let (status, stepped) = server
                    .post("/step", json!({"episode_id": episode, "response_text": response}));
                assert_eq!(status, 200);
                (
                    stepped["reward"].as_f64().unwrap(),
                    stepped["done"].as_bool().unwrap(),
                    stepped["success"].as_bool().unwrap(),
                )
            })
            .collect()
    };

    let server_a = ServerGuard::spawn(&[]);
    let (responses, outcomes) = record(&server_a);
    assert_eq!(replay_wire(&server_a, &responses), outcomes, "same process replay");
    drop(server_a);
    let server_b = ServerGuard::spawn(&[]);
    assert_eq!(replay_wire(&server_b, &responses), outcomes, "fresh process replay");

    println!(
        "[PASS] criterion 10: replayed eval reports are byte-identical across runs and concurrency bounds, and the wire replay reproduces reward/done sequences exactly"
    );
}
