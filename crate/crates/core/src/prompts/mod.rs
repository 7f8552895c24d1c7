//! Instruction variants, prompt-diversity sampling, bit-exact prompt
//! rendering, response parsing, action decoding, and the validity metric.
//!
//! Rendered prompts are golden-file tested; edits to the templates here must
//! update `tests/golden/` in step.

use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::points::{FaceMapping, GPInstance};
use crate::sokoban::{render, Action, PuzzleSpec, SokobanState, SymbolTable};

/// Where a variant sits in the report's column grouping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VariantGroup {
    Id,
    Instruction,
    Mixed,
    Difficulty,
    Fake,
    /// Training-side diversity regimes; never an evaluation column.
    Diversity,
}

impl VariantGroup {
    pub fn label(self) -> &'static str {
        match self {
            VariantGroup::Id => "ID",
            VariantGroup::Instruction => "instruction",
            VariantGroup::Mixed => "mixed",
            VariantGroup::Difficulty => "difficulty",
            VariantGroup::Fake => "fake",
            VariantGroup::Diversity => "diversity",
        }
    }
}

/// A Sokoban instruction/difficulty variant.
///
/// `tokens` are the four action tokens in template order (Up, Down, Left,
/// Right) — the admissible set of the validity metric. On fake variants the
/// prompt shows these tokens while decoding accepts only the canonical ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SokobanVariant {
    pub name: String,
    pub tokens: [String; 4],
    pub fake: bool,
    /// Diversity prompts spell the mapping out ("w1 means Up, ...").
    pub declares_mapping: bool,
    pub width: usize,
    pub height: usize,
    pub num_boxes: usize,
    pub group: VariantGroup,
}

/// Actions in the template's exemplar order.
pub const TEMPLATE_ORDER: [Action; 4] = [Action::Up, Action::Down, Action::Left, Action::Right];

pub fn canonical_tokens() -> [String; 4] {
    ["Up".into(), "Down".into(), "Left".into(), "Right".into()]
}

impl SokobanVariant {
    fn new(
        name: &str,
        tokens: [&str; 4],
        fake: bool,
        dims: (usize, usize, usize),
        group: VariantGroup,
    ) -> SokobanVariant {
        SokobanVariant {
            name: name.to_string(),
            tokens: tokens.map(str::to_string),
            fake,
            declares_mapping: false,
            width: dims.0,
            height: dims.1,
            num_boxes: dims.2,
            group,
        }
    }

    /// Tokens the environment accepts: canonical on fake variants.
    pub fn decoding_tokens(&self) -> [String; 4] {
        if self.fake {
            canonical_tokens()
        } else {
            self.tokens.clone()
        }
    }

    /// Prompted tokens; the admissible set of the validity metric.
    pub fn admissible_set(&self) -> &[String; 4] {
        &self.tokens
    }

    /// The prompt token for an action.
    pub fn token_for(&self, action: Action) -> &str {
        let i = TEMPLATE_ORDER.iter().position(|&a| a == action).unwrap();
        &self.tokens[i]
    }

    /// Puzzle parameters for this variant's difficulty.
    pub fn puzzle_spec(&self, seed: u64) -> PuzzleSpec {
        PuzzleSpec::new(self.width, self.height, self.num_boxes, seed)
    }

    /// A per-record diversity variant over four sampled words.
    pub fn from_vocab(sample: &VocabularySample) -> SokobanVariant {
        SokobanVariant {
            name: "DiverseSokoban".to_string(),
            tokens: sample.words.clone(),
            fake: false,
            declares_mapping: true,
            width: 6,
            height: 6,
            num_boxes: 1,
            group: VariantGroup::Diversity,
        }
    }
}

/// A General Points mapping variant. `prompted` is declared in the prompt;
/// `scoring` is what the checker applies. They differ only on the fake entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpVariant {
    pub name: String,
    pub prompted: FaceMapping,
    pub scoring: FaceMapping,
    pub fake: bool,
    pub group: VariantGroup,
}

/// The builtin variant registry for both tasks.
#[derive(Debug, Clone)]
pub struct VariantRegistry {
    sokoban: Vec<SokobanVariant>,
    gp: Vec<GpVariant>,
}

impl VariantRegistry {
    pub fn sokoban(&self) -> &[SokobanVariant] {
        &self.sokoban
    }

    pub fn gp(&self) -> &[GpVariant] {
        &self.gp
    }

    pub fn find_sokoban(&self, name: &str) -> Option<&SokobanVariant> {
        self.sokoban.iter().find(|v| v.name == name)
    }

    pub fn find_gp(&self, name: &str) -> Option<&GpVariant> {
        self.gp.iter().find(|v| v.name == name)
    }
}

/// All builtin variants: the four instruction mappings, the fake environment,
/// the three difficulty configurations, and the General Points mapping
/// regimes including the training-diversity ones.
pub fn builtin_variants() -> VariantRegistry {
    let sokoban = vec![
        SokobanVariant::new("SimpleSokoban", ["Up", "Down", "Left", "Right"], false, (6, 6, 1), VariantGroup::Id),
        SokobanVariant::new("SimpleSokobanNumerical", ["1", "2", "3", "4"], false, (6, 6, 1), VariantGroup::Instruction),
        SokobanVariant::new("SimpleSokobanAlphabetical", ["A", "B", "C", "D"], false, (6, 6, 1), VariantGroup::Instruction),
        SokobanVariant::new("SimpleSokobanRandom", ["*", "&", "1", "M"], false, (6, 6, 1), VariantGroup::Instruction),
        SokobanVariant::new("LargerSokoban", ["Up", "Down", "Left", "Right"], false, (10, 10, 1), VariantGroup::Difficulty),
        SokobanVariant::new("TwoBoxesSokoban", ["Up", "Down", "Left", "Right"], false, (6, 6, 2), VariantGroup::Difficulty),
        SokobanVariant::new("ComplexSokoban", ["Up", "Down", "Left", "Right"], false, (10, 10, 2), VariantGroup::Difficulty),
        SokobanVariant::new("FakeSokobanNumerical", ["1", "2", "3", "4"], true, (6, 6, 1), VariantGroup::Fake),
    ];

    let gp_entry = |name: &str, prompted: &str, scoring: &str, fake: bool, group| GpVariant {
        name: name.to_string(),
        prompted: FaceMapping::builtin(prompted).unwrap(),
        scoring: FaceMapping::builtin(scoring).unwrap(),
        fake,
        group,
    };
    let gp = vec![
        gp_entry("all_10", "all_10", "all_10", false, VariantGroup::Id),
        gp_entry("all_5", "all_5", "all_5", false, VariantGroup::Instruction),
        gp_entry("all_7", "all_7", "all_7", false, VariantGroup::Instruction),
        gp_entry("all_12", "all_12", "all_12", false, VariantGroup::Mixed),
        gp_entry("regular", "regular", "regular", false, VariantGroup::Mixed),
        gp_entry("fake_regular", "regular", "all_10", true, VariantGroup::Fake),
        gp_entry("all_8", "all_8", "all_8", false, VariantGroup::Diversity),
        gp_entry("all_9", "all_9", "all_9", false, VariantGroup::Diversity),
        gp_entry("mixed", "mixed", "mixed", false, VariantGroup::Diversity),
        gp_entry("staggered", "staggered", "staggered", false, VariantGroup::Diversity),
    ];

    VariantRegistry { sokoban, gp }
}

/// Four distinct words mapped to (Up, Down, Left, Right).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VocabularySample {
    pub words: [String; 4],
    pub seed: u64,
}

static WORDLIST: OnceLock<Vec<&'static str>> = OnceLock::new();

/// The bundled wordlist backing diversity sampling.
pub fn wordlist() -> &'static [&'static str] {
    WORDLIST.get_or_init(|| {
        include_str!("wordlist.txt")
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect()
    })
}

/// Uniformly sample four distinct words from the bundled list.
/// Deterministic in `seed`.
pub fn sample_diverse_vocab(seed: u64) -> VocabularySample {
    let words = wordlist();
    assert!(words.len() >= 4, "wordlist too small");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = Vec::with_capacity(4);
    while picked.len() < 4 {
        let i = rng.gen_range(0..words.len());
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    let words: [String; 4] = [
        words[picked[0]].to_string(),
        words[picked[1]].to_string(),
        words[picked[2]].to_string(),
        words[picked[3]].to_string(),
    ];
    VocabularySample { words, seed }
}

const SOKOBAN_TEMPLATE: &str = "<|im_start|>user
You are a Sokoban solver.

Sokoban Quick Guide
Goal: Push all boxes (X) onto targets (O).

Symbols:
# Wall | _ Floor | O Target | X Box | P You | \u{2713} = Box on Target | S = You on Target

Rules:
1. Push boxes (can't pull).
2. Avoid walls (#).

Answers:
<answer> {up_token} </answer> | <answer> {down_token} </answer> | <answer> {left_token} </answer> | <answer> {right_token} </answer>{mapping_note}

Rewards:
Move: -0.1
Box on target: +1.0
All boxes placed: +10.0

[Current Observation]:
{observation}
Decide the next action:
Always output: <think> [Your thoughts] </think> <answer> [your answer] </answer> with no extra text. Strictly follow this format. <|im_end|>
<|im_start|>assistant
<think>";

/// Render the Sokoban prompt for a state under a variant, byte-exact against
/// the golden fixtures. The four answer exemplars carry the variant's tokens;
/// diversity variants additionally state the mapping.
pub fn render_sokoban_prompt(state: &SokobanState, variant: &SokobanVariant) -> String {
    let observation = render(state, &SymbolTable::default());
    let mapping_note = if variant.declares_mapping {
        format!(
            "\n{} means Up, {} means Down, {} means Left, {} means Right",
            variant.tokens[0], variant.tokens[1], variant.tokens[2], variant.tokens[3]
        )
    } else {
        String::new()
    };
    SOKOBAN_TEMPLATE
        .replace("{mapping_note}", &mapping_note)
        .replace("{up_token}", &variant.tokens[0])
        .replace("{down_token}", &variant.tokens[1])
        .replace("{left_token}", &variant.tokens[2])
        .replace("{right_token}", &variant.tokens[3])
        .replace("{observation}", &observation)
}

const GP_TEMPLATE: &str = "<|im_start|>user
[Task Description]
You are an expert {target_number} points card game player. You will receive a set of {num_cards} cards.
Note that {face_card_msg}, and each card must be used once.
Your goal is to output a formula that evaluates to {target_number} using numbers from the cards and operators such as '+', '-', '*', '/', '(', ')', and '='.

[Input]
Cards: {cards}

[Output]
{
  \"cards\": [{card_letters}], where {face_card_msg},
  \"number\": [{number_letters}], where {number_prose} are the numbers on the cards,
  \"formula\": 'an equation that equals {target_number}',
}

Always output: <think> [Your thoughts] </think> <answer> [your answer] </answer> with no extra text. Strictly follow this format. <|im_end|>
<|im_start|>assistant
<think>";

/// The face-card sentence for a mapping.
pub fn face_card_msg(mapping: &FaceMapping) -> String {
    if mapping.is_uniform() {
        format!("'J', 'Q', and 'K' count as '{}'", mapping.j)
    } else {
        format!(
            "'J', 'Q', and 'K' count as '{}', '{}', and '{}' respectively",
            mapping.j, mapping.q, mapping.k
        )
    }
}

fn output_letters(num_cards: usize) -> (&'static str, &'static str, &'static str) {
    match num_cards {
        5 => ("x, y, z, w, v", "a, b, c, d, e", "a, b, c, d, and e"),
        _ => ("x, y, z, w", "a, b, c, d", "a, b, c, and d"),
    }
}

/// Render the General Points prompt for an instance. The declared mapping is
/// the instance's prompted one, which on the fake split differs from the
/// scoring mapping.
pub fn render_gp_prompt(instance: &GPInstance) -> String {
    let cards = format!(
        "[{}]",
        instance.card_labels().iter().map(|l| format!("'{l}'")).collect::<Vec<_>>().join(", ")
    );
    let (card_letters, number_letters, number_prose) = output_letters(instance.num_cards);
    GP_TEMPLATE
        .replace("{target_number}", &instance.target.to_string())
        .replace("{num_cards}", &instance.num_cards.to_string())
        .replace("{face_card_msg}", &face_card_msg(&instance.prompted))
        .replace("{cards}", &cards)
        .replace("{card_letters}", card_letters)
        .replace("{number_letters}", number_letters)
        .replace("{number_prose}", number_prose)
}

/// A response split into its think and answer parts. Total: malformed input
/// yields `format_ok == false`, never an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedResponse {
    pub think_text: String,
    pub answer_text: String,
    pub format_ok: bool,
}

/// Extract the first well-formed think/answer pair.
///
/// The assistant turn is pre-filled with `<think>`, so a missing opener is
/// tolerated: everything before the first `</think>` counts as thought.
/// `format_ok` requires the think close, a non-empty answer, and proper
/// nesting.
pub fn parse_response(text: &str) -> ParsedResponse {
    let (think_text, after_think, think_ok) = match text.find("</think>") {
        Some(close) => {
            let before = &text[..close];
            let think = match before.find("<think>") {
                Some(open) => &before[open + "<think>".len()..],
                None => before,
            };
            (think.trim().to_string(), &text[close + "</think>".len()..], true)
        }
        None => (String::new(), text, false),
    };
    let (answer_text, answer_ok) = match after_think.find("<answer>") {
        Some(open) => {
            let rest = &after_think[open + "<answer>".len()..];
            match rest.find("</answer>") {
                Some(close) => (rest[..close].trim().to_string(), true),
                None => (String::new(), false),
            }
        }
        None => (String::new(), false),
    };
    let format_ok = think_ok && answer_ok && !answer_text.is_empty();
    ParsedResponse { think_text, answer_text, format_ok }
}

/// Decode an answer token into an action using the variant's decoding
/// vocabulary — the canonical tokens when the variant is fake. Whitespace is
/// trimmed; matching is exact over a single token.
pub fn decode_action_with(
    answer_text: &str,
    variant: &SokobanVariant,
    case_sensitive: bool,
) -> Option<Action> {
    let token = answer_text.trim();
    let vocab = variant.decoding_tokens();
    for (i, candidate) in vocab.iter().enumerate() {
        let hit = if case_sensitive {
            token == candidate
        } else {
            token.eq_ignore_ascii_case(candidate)
        };
        if hit {
            return Some(TEMPLATE_ORDER[i]);
        }
    }
    None
}

/// [`decode_action_with`] at the default (case-insensitive) strictness.
pub fn decode_action(answer_text: &str, variant: &SokobanVariant) -> Option<Action> {
    decode_action_with(answer_text, variant, false)
}

/// Sokoban validity: the emitted token lies in the prompted variant's
/// admissible set. Format failures count as invalid.
pub fn check_sokoban_validity(response: &ParsedResponse, variant: &SokobanVariant) -> bool {
    if !response.format_ok {
        return false;
    }
    let token = response.answer_text.trim();
    variant.admissible_set().iter().any(|t| token.eq_ignore_ascii_case(t))
}

/// General Points validity: the answer applies the prompted mapping to the
/// cards and the formula is syntactically legal. Hitting the target is not
/// required — validity measures instruction adherence, not success.
pub fn check_gp_validity(response: &ParsedResponse, instance: &GPInstance) -> bool {
    if !response.format_ok {
        return false;
    }
    let Some(answer) = crate::points::parse_gp_answer(&response.answer_text) else {
        return false;
    };
    let mut expected = instance.prompted_values();
    let mut got = answer.number_field.clone();
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return false;
    }
    crate::formula::parse_formula(&answer.formula_field).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::{CardFace, GpGenConfig};

    #[test]
    fn registry_has_the_documented_entries() {
        let reg = builtin_variants();
        assert_eq!(reg.sokoban().len(), 8);
        let alpha = reg.find_sokoban("SimpleSokobanAlphabetical").unwrap();
        assert_eq!(decode_action("B", alpha), Some(Action::Down));
        let random = reg.find_sokoban("SimpleSokobanRandom").unwrap();
        assert_eq!(decode_action("M", random), Some(Action::Right));
        assert_eq!(decode_action("1", random), Some(Action::Left));
        let names: Vec<&str> = reg.gp().iter().map(|v| v.name.as_str()).collect();
        for expected in
            ["all_10", "all_5", "all_7", "all_12", "regular", "fake_regular", "all_8", "all_9", "mixed", "staggered"]
        {
            assert!(names.contains(&expected), "missing {expected}");
        }
    }

    #[test]
    fn fake_variant_prompts_digits_but_decodes_canonical() {
        let reg = builtin_variants();
        let fake = reg.find_sokoban("FakeSokobanNumerical").unwrap();
        assert_eq!(fake.admissible_set(), &["1", "2", "3", "4"].map(str::to_string));
        assert_eq!(decode_action("2", fake), None);
        assert_eq!(decode_action("Up", fake), Some(Action::Up));
        assert_eq!(decode_action("up", fake), Some(Action::Up));
    }

    #[test]
    fn numeric_decoding_follows_the_declared_mapping() {
        let reg = builtin_variants();
        let numerical = reg.find_sokoban("SimpleSokobanNumerical").unwrap();
        assert_eq!(decode_action("2", numerical), Some(Action::Down));
        assert_eq!(decode_action(" 1 ", numerical), Some(Action::Up));
        assert_eq!(decode_action("Left", numerical), None);
        assert_eq!(decode_action_with("up", reg.find_sokoban("SimpleSokoban").unwrap(), true), None);
    }

    #[test]
    fn vocab_sampling_is_deterministic_and_distinct() {
        let a = sample_diverse_vocab(7);
        let b = sample_diverse_vocab(7);
        assert_eq!(a, b);
        for seed in 0..10_000 {
            let s = sample_diverse_vocab(seed);
            let mut w = s.words.to_vec();
            w.sort();
            w.dedup();
            assert_eq!(w.len(), 4, "duplicate word in {:?}", s.words);
        }
    }

    #[test]
    fn wordlist_is_large_and_clean() {
        let words = wordlist();
        assert!(words.len() >= 1900, "wordlist has only {} entries", words.len());
        let mut sorted = words.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), words.len(), "duplicate wordlist entries");
        for w in words {
            assert!(
                w.len() >= 2 && w.bytes().all(|b| b.is_ascii_lowercase()),
                "bad word {w:?}"
            );
        }
    }

    #[test]
    fn sokoban_prompt_carries_variant_exemplars() {
        let reg = builtin_variants();
        let state = crate::sokoban::parse(
            "######\n#____#\n#_PXO#\n#____#\n#____#\n######",
            &SymbolTable::default(),
            30,
        )
        .unwrap();
        let canonical = render_sokoban_prompt(&state, reg.find_sokoban("SimpleSokoban").unwrap());
        assert!(canonical.contains("<answer> Up </answer> | <answer> Down </answer>"));
        assert!(canonical.ends_with("<think>"));
        assert!(canonical.contains("[Current Observation]:\n######"));

        let numerical =
            render_sokoban_prompt(&state, reg.find_sokoban("SimpleSokobanNumerical").unwrap());
        assert!(numerical.contains("<answer> 1 </answer> | <answer> 2 </answer> | <answer> 3 </answer> | <answer> 4 </answer>"));

        let diverse = SokobanVariant::from_vocab(&sample_diverse_vocab(3));
        let prompt = render_sokoban_prompt(&state, &diverse);
        assert!(prompt.contains(&format!(
            "{} means Up, {} means Down, {} means Left, {} means Right",
            diverse.tokens[0], diverse.tokens[1], diverse.tokens[2], diverse.tokens[3]
        )));
    }

    #[test]
    fn gp_prompt_declares_the_prompted_mapping() {
        let inst = crate::points::generate_instance(&GpGenConfig::for_split("all_5"), 11).unwrap();
        let prompt = render_gp_prompt(&inst);
        assert!(prompt.contains("'J', 'Q', and 'K' count as '5'"));
        assert!(prompt.contains("\"cards\": [x, y, z, w], where"));
        assert!(prompt.contains("\"number\": [a, b, c, d], where"));
        assert!(prompt.contains("\"formula\": 'an equation that equals 24'"));
        assert!(prompt.ends_with("<think>"));

        let five = crate::points::generate_instance(&GpGenConfig::for_split("five_cards"), 11).unwrap();
        let prompt5 = render_gp_prompt(&five);
        let cards_line = prompt5.lines().find(|l| l.starts_with("Cards: ")).unwrap();
        assert_eq!(cards_line.split(", ").count(), 5, "five cards listed");
        assert!(prompt5.contains("[x, y, z, w, v]"));
        assert!(prompt5.contains("a, b, c, d, and e are the numbers"));

        let staggered =
            crate::points::generate_instance(&GpGenConfig::for_split("staggered"), 11).unwrap();
        assert!(render_gp_prompt(&staggered)
            .contains("'J', 'Q', and 'K' count as '7', '8', and '9' respectively"));
    }

    #[test]
    fn fake_gp_prompt_contradicts_scoring() {
        let inst = crate::points::generate_instance(&GpGenConfig::for_split("fake"), 9).unwrap();
        let prompt = render_gp_prompt(&inst);
        assert!(prompt.contains("'J', 'Q', and 'K' count as '11', '12', and '13' respectively"));
        assert_eq!(inst.mapping.name, "all_10");
    }

    #[test]
    fn response_parsing_is_total() {
        let p = parse_response("<think>go up</think> <answer> Up </answer>");
        assert_eq!((p.think_text.as_str(), p.answer_text.as_str(), p.format_ok), ("go up", "Up", true));

        let p = parse_response("the answer is Up");
        assert!(!p.format_ok);
        assert_eq!(p.answer_text, "");

        // template pre-fills <think>, so the opener may be missing
        let p = parse_response("plan the push</think><answer>2</answer>");
        assert_eq!((p.think_text.as_str(), p.answer_text.as_str(), p.format_ok), ("plan the push", "2", true));

        let p = parse_response("<think>x</think><answer></answer>");
        assert!(!p.format_ok, "empty answer is a format failure");

        // first pair wins
        let p = parse_response("</think><answer>1</answer><answer>2</answer>");
        assert_eq!(p.answer_text, "1");
    }

    #[test]
    fn validity_tracks_the_admissible_set() {
        let reg = builtin_variants();
        let numerical = reg.find_sokoban("SimpleSokobanNumerical").unwrap();
        let ok = parse_response("<think>.</think><answer> 3 </answer>");
        assert!(check_sokoban_validity(&ok, numerical));
        let outside = parse_response("<think>.</think><answer> Left </answer>");
        assert!(!check_sokoban_validity(&outside, numerical));
        let malformed = parse_response("<answer> 3 </answer>");
        assert!(!check_sokoban_validity(&malformed, numerical));
    }

    #[test]
    fn gp_validity_requires_prompted_mapping_not_success() {
        // all_5 hand K J 3 2 -> prompted values [5, 5, 3, 2]
        let inst = GPInstance {
            cards: vec![
                CardFace::Rank(crate::points::Card::King),
                CardFace::Rank(crate::points::Card::Jack),
                CardFace::Rank(crate::points::Card::Three),
                CardFace::Rank(crate::points::Card::Two),
            ],
            mapping: FaceMapping::builtin("all_5").unwrap(),
            prompted: FaceMapping::builtin("all_5").unwrap(),
            target: 24,
            num_cards: 4,
            split_tag: "all_5".into(),
        };
        let valid_not_successful = parse_response(
            "<think>.</think><answer>{\"cards\": ['K','J','3','2'], \"number\": [5,5,3,2], \"formula\": '5+5+3*2'}</answer>",
        );
        assert!(check_gp_validity(&valid_not_successful, &inst));
        // wrong mapping applied
        let invalid = parse_response(
            "<think>.</think><answer>{\"cards\": ['K','J','3','2'], \"number\": [13,11,3,2], \"formula\": '13+11+3-2'}</answer>",
        );
        assert!(!check_gp_validity(&invalid, &inst));
        // illegal formula
        let illegal = parse_response(
            "<think>.</think><answer>{\"cards\": ['K','J','3','2'], \"number\": [5,5,3,2], \"formula\": '5+*'}</answer>",
        );
        assert!(!check_gp_validity(&illegal, &inst));
    }
}

