//! General Points: card hands, face-card mapping regimes, solvable instance
//! generation, exhaustive solving, and the scoring rubric.

mod score;
mod solver;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use score::{parse_gp_answer, score_gp_answer, GPAnswer, GPScore};
pub use solver::{is_solvable, solve_exhaustive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointsError {
    #[error("unknown split '{0}'")]
    UnknownSplit(String),
    #[error("unknown face mapping '{0}'")]
    UnknownMapping(String),
    #[error("no solvable instance found within {attempts} attempts")]
    GenerationExhausted { attempts: usize },
}

/// The thirteen card ranks. `A` has base index 1, `K` base index 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Card {
    Ace,
    Two,
    Three,
    Four,
    Five,
    Six,
    Seven,
    Eight,
    Nine,
    Ten,
    Jack,
    Queen,
    King,
}

impl Card {
    pub const ALL: [Card; 13] = [
        Card::Ace,
        Card::Two,
        Card::Three,
        Card::Four,
        Card::Five,
        Card::Six,
        Card::Seven,
        Card::Eight,
        Card::Nine,
        Card::Ten,
        Card::Jack,
        Card::Queen,
        Card::King,
    ];

    /// 1 for A through 13 for K.
    pub fn base_index(self) -> i64 {
        Card::ALL.iter().position(|&c| c == self).unwrap() as i64 + 1
    }

    pub fn from_base_index(index: i64) -> Option<Card> {
        if (1..=13).contains(&index) {
            Some(Card::ALL[(index - 1) as usize])
        } else {
            None
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Card::Ace => "A",
            Card::Two => "2",
            Card::Three => "3",
            Card::Four => "4",
            Card::Five => "5",
            Card::Six => "6",
            Card::Seven => "7",
            Card::Eight => "8",
            Card::Nine => "9",
            Card::Ten => "10",
            Card::Jack => "J",
            Card::Queen => "Q",
            Card::King => "K",
        }
    }

    pub fn from_label(label: &str) -> Option<Card> {
        Card::ALL.iter().copied().find(|c| c.label().eq_ignore_ascii_case(label))
    }

    pub fn is_face(self) -> bool {
        matches!(self, Card::Jack | Card::Queen | Card::King)
    }
}

/// Declared integer values of J, Q and K. Non-face ranks always map to their
/// base index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceMapping {
    pub name: String,
    pub j: i64,
    pub q: i64,
    pub k: i64,
}

impl FaceMapping {
    pub fn uniform(name: &str, value: i64) -> FaceMapping {
        FaceMapping { name: name.to_string(), j: value, q: value, k: value }
    }

    pub fn new(name: &str, j: i64, q: i64, k: i64) -> FaceMapping {
        FaceMapping { name: name.to_string(), j, q, k }
    }

    pub fn is_uniform(&self) -> bool {
        self.j == self.q && self.q == self.k
    }

    /// The immutable registry of named regimes: the training regime, the
    /// evaluation regimes, and the training-diversity regimes.
    pub fn builtin(name: &str) -> Option<FaceMapping> {
        match name {
            "all_10" => Some(FaceMapping::uniform("all_10", 10)),
            "all_5" => Some(FaceMapping::uniform("all_5", 5)),
            "all_7" => Some(FaceMapping::uniform("all_7", 7)),
            "all_8" => Some(FaceMapping::uniform("all_8", 8)),
            "all_9" => Some(FaceMapping::uniform("all_9", 9)),
            "all_12" => Some(FaceMapping::uniform("all_12", 12)),
            "regular" => Some(FaceMapping::new("regular", 11, 12, 13)),
            "mixed" => Some(FaceMapping::new("mixed", 8, 9, 10)),
            "staggered" => Some(FaceMapping::new("staggered", 7, 8, 9)),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["all_10", "all_5", "all_7", "all_8", "all_9", "all_12", "regular", "mixed", "staggered"]
    }
}

/// Value of a card under a mapping regime.
pub fn map_card_value(card: Card, mapping: &FaceMapping) -> i64 {
    match card {
        Card::Jack => mapping.j,
        Card::Queen => mapping.q,
        Card::King => mapping.k,
        other => other.base_index(),
    }
}

/// One slot of a hand: a rank, or a raw integer for the large-number split
/// (values 14-19 have no card rank).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CardFace {
    Rank(Card),
    Number(i64),
}

impl CardFace {
    pub fn label(&self) -> String {
        match self {
            CardFace::Rank(c) => c.label().to_string(),
            CardFace::Number(n) => n.to_string(),
        }
    }

    pub fn value(&self, mapping: &FaceMapping) -> i64 {
        match self {
            CardFace::Rank(c) => map_card_value(*c, mapping),
            CardFace::Number(n) => *n,
        }
    }

    pub fn is_face(&self) -> bool {
        matches!(self, CardFace::Rank(c) if c.is_face())
    }
}

/// A solvable hand. `mapping` is the scoring semantics; `prompted` is what
/// the prompt declares. They differ only on the fake split, which declares
/// the regular mapping but keeps scoring under the training one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GPInstance {
    pub cards: Vec<CardFace>,
    pub mapping: FaceMapping,
    pub prompted: FaceMapping,
    pub target: i64,
    pub num_cards: usize,
    pub split_tag: String,
}

impl GPInstance {
    /// Card values under the scoring mapping.
    pub fn scoring_values(&self) -> Vec<i64> {
        self.cards.iter().map(|c| c.value(&self.mapping)).collect()
    }

    /// Card values under the prompted mapping; the basis of the validity
    /// metric.
    pub fn prompted_values(&self) -> Vec<i64> {
        self.cards.iter().map(|c| c.value(&self.prompted)).collect()
    }

    pub fn is_fake(&self) -> bool {
        self.mapping != self.prompted
    }

    pub fn card_labels(&self) -> Vec<String> {
        self.cards.iter().map(CardFace::label).collect()
    }
}

/// A registered generation split: hand shape plus mapping regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GpSplit {
    pub name: &'static str,
    pub num_cards: usize,
    /// Scoring mapping regime.
    pub mapping: &'static str,
    /// Mapping declared in the prompt; differs from `mapping` on `fake`.
    pub prompted: &'static str,
    /// Mixed splits must contain at least one face card.
    pub require_face: bool,
    /// Inject exactly one raw value in 14..=19.
    pub large_number: bool,
}

#[rustfmt::skip]
const GP_SPLITS: &[GpSplit] = &[
    GpSplit { name: "training",     num_cards: 4, mapping: "all_10",    prompted: "all_10",    require_face: false, large_number: false },
    GpSplit { name: "all_5",        num_cards: 4, mapping: "all_5",     prompted: "all_5",     require_face: false, large_number: false },
    GpSplit { name: "all_7",        num_cards: 4, mapping: "all_7",     prompted: "all_7",     require_face: false, large_number: false },
    GpSplit { name: "all_12",       num_cards: 4, mapping: "all_12",    prompted: "all_12",    require_face: true,  large_number: false },
    GpSplit { name: "regular",      num_cards: 4, mapping: "regular",   prompted: "regular",   require_face: true,  large_number: false },
    GpSplit { name: "large_number", num_cards: 4, mapping: "all_10",    prompted: "all_10",    require_face: false, large_number: true  },
    GpSplit { name: "five_cards",   num_cards: 5, mapping: "all_10",    prompted: "all_10",    require_face: false, large_number: false },
    GpSplit { name: "fake",         num_cards: 4, mapping: "all_10",    prompted: "regular",   require_face: true,  large_number: false },
    // Training-diversity regimes.
    GpSplit { name: "all_8",        num_cards: 4, mapping: "all_8",     prompted: "all_8",     require_face: false, large_number: false },
    GpSplit { name: "all_9",        num_cards: 4, mapping: "all_9",     prompted: "all_9",     require_face: false, large_number: false },
    GpSplit { name: "mixed",        num_cards: 4, mapping: "mixed",     prompted: "mixed",     require_face: false, large_number: false },
    GpSplit { name: "staggered",    num_cards: 4, mapping: "staggered", prompted: "staggered", require_face: false, large_number: false },
];

pub fn gp_splits() -> &'static [GpSplit] {
    GP_SPLITS
}

pub fn gp_split(name: &str) -> Option<&'static GpSplit> {
    GP_SPLITS.iter().find(|s| s.name == name)
}

/// Instance-generation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpGenConfig {
    pub split: String,
    pub target: i64,
    pub max_attempts: usize,
}

impl GpGenConfig {
    pub fn for_split(split: &str) -> GpGenConfig {
        GpGenConfig { split: split.to_string(), target: 24, max_attempts: 10_000 }
    }
}

/// Draw a guaranteed-solvable instance for a registered split. A rejection
/// loop draws hands per the split's rules and keeps the first one whose
/// mapped value multiset the exhaustive solver can hit the target with.
/// Deterministic in `seed`.
pub fn generate_instance(config: &GpGenConfig, seed: u64) -> Result<GPInstance, PointsError> {
    let split =
        gp_split(&config.split).ok_or_else(|| PointsError::UnknownSplit(config.split.clone()))?;
    let mapping = FaceMapping::builtin(split.mapping)
        .ok_or_else(|| PointsError::UnknownMapping(split.mapping.to_string()))?;
    let prompted = FaceMapping::builtin(split.prompted)
        .ok_or_else(|| PointsError::UnknownMapping(split.prompted.to_string()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..config.max_attempts {
        let mut cards: Vec<CardFace> = (0..split.num_cards)
            .map(|_| CardFace::Rank(Card::from_base_index(rng.gen_range(1..=13)).unwrap()))
            .collect();
        if split.large_number {
            let at = rng.gen_range(0..cards.len());
            cards[at] = CardFace::Number(rng.gen_range(14..=19));
        }
        if split.require_face && !cards.iter().any(CardFace::is_face) {
            continue;
        }
        let values: Vec<i64> = cards.iter().map(|c| c.value(&mapping)).collect();
        if is_solvable(&values, config.target) {
            return Ok(GPInstance {
                cards,
                mapping,
                prompted,
                target: config.target,
                num_cards: split.num_cards,
                split_tag: split.name.to_string(),
            });
        }
    }
    Err(PointsError::GenerationExhausted { attempts: config.max_attempts })
}
