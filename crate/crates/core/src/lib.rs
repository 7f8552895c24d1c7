//! Deterministic benchmark engine for two decision tasks: `Sokoban` (multi-turn
//! box pushing on a grid) and `General Points` (single-turn arithmetic card
//! play, Point-24 style).
//!
//! The crate provides:
//!
//! - environment simulation with exact solvers used as oracles and labelers
//!   ([`sokoban`], [`points`], [`formula`]),
//! - instruction variants, prompt-diversity sampling and bit-exact prompt
//!   rendering ([`prompts`]),
//! - demonstration dataset construction with rejection-sampling filters and
//!   JSON-lines persistence ([`datagen`]),
//! - an evaluation harness over pluggable agents ([`eval`]),
//! - pure reference implementations of the per-step reward and the
//!   group-relative advantage / clipped-surrogate terms ([`rl_math`]).
//!
//! Everything is a pure function of its inputs plus an explicit 64-bit seed;
//! equal seeds produce byte-identical outputs.

pub mod datagen;
pub mod eval;
pub mod formula;
pub mod points;
pub mod prompts;
pub mod rl_math;
pub mod seed;
pub mod sokoban;
