//! The `coopet/1` game document.
//!
//! ```json
//! {"format": "coopet/1", "players": ["a", "b"], "worth": {"dense": [0, 0, 0, "1"]}}
//! {"format": "coopet/1", "players": ["a", "b"],
//!  "worth": {"sparse": [{"coalition": ["a", "b"], "value": "1/2"}]}}
//! ```
//!
//! Dense tables are indexed by coalition bits (player `k` is bit `k`).
//! Sparse coalitions are label lists or comma-separated strings; omitted
//! coalitions are worth 0 unless parsing is strict.

use std::collections::HashSet;

use coopetition::coalition::all_coalitions;
use coopetition::{Coalition, Game, PlayerSet, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_TAG: &str = "coopet/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub format: String,
    pub players: Vec<String>,
    pub worth: Worth,
}

/// `{"dense": [...]}`, `{"sparse": [...]}`, or a bare dense array.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields, from = "WorthRepr")]
pub enum Worth {
    Dense(Vec<Literal>),
    Sparse(Vec<SparseEntry>),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum TaggedWorth {
    Dense(Vec<Literal>),
    Sparse(Vec<SparseEntry>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WorthRepr {
    Bare(Vec<Literal>),
    Tagged(TaggedWorth),
}

impl From<WorthRepr> for Worth {
    fn from(repr: WorthRepr) -> Self {
        match repr {
            WorthRepr::Bare(values) | WorthRepr::Tagged(TaggedWorth::Dense(values)) => Worth::Dense(values),
            WorthRepr::Tagged(TaggedWorth::Sparse(entries)) => Worth::Sparse(entries),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseEntry {
    pub coalition: LabelList,
    pub value: Literal,
}

/// A number, or a string such as `"3/4"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Number(serde_json::Number),
    Text(String),
}

impl Literal {
    pub fn parse<S: Scalar>(&self) -> CliResult<S> {
        let text = match self {
            Literal::Number(n) => n.to_string(),
            Literal::Text(t) => t.trim().to_string(),
        };
        S::parse_literal(&text).map_err(|e| CliError::Input(format!("value {text:?}: {e}")))
    }
}

/// `["a", "b"]` or `"a,b"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelList {
    List(Vec<String>),
    Text(String),
}

impl LabelList {
    pub fn labels(&self) -> Vec<String> {
        match self {
            LabelList::List(v) => v.iter().map(|l| l.trim().to_string()).collect(),
            LabelList::Text(t) => split_labels(t),
        }
    }

    pub fn resolve(&self, players: &PlayerSet) -> CliResult<Coalition> {
        let labels = self.labels();
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(CliError::Input(format!("label {dup:?} listed twice in a coalition")));
        }
        Ok(players.coalition(&labels)?)
    }
}

/// Splits `"a, b,c"`; the empty string is the empty coalition.
pub fn split_labels(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn parse_document(text: &str) -> CliResult<GameDocument> {
    let doc: GameDocument =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed game document: {e}")))?;
    if doc.format != FORMAT_TAG {
        return Err(CliError::Input(format!(
            "unsupported document format {:?} (expected {FORMAT_TAG:?})",
            doc.format
        )));
    }
    Ok(doc)
}

/// Parses a game document; `strict` makes omitted sparse coalitions an error.
pub fn parse_game<S: Scalar>(text: &str, strict: bool) -> CliResult<Game<S>> {
    game_from_document(&parse_document(text)?, strict)
}

pub fn game_from_document<S: Scalar>(doc: &GameDocument, strict: bool) -> CliResult<Game<S>> {
    let players = PlayerSet::new(doc.players.iter().cloned())?;
    let size = 1usize << players.len();
    let worth = match &doc.worth {
        Worth::Dense(values) => {
            if values.len() != size {
                return Err(CliError::Input(format!(
                    "dense worth table has {} entries, expected 2^{} = {size}",
                    values.len(),
                    players.len()
                )));
            }
            values.iter().map(Literal::parse).collect::<CliResult<Vec<S>>>()?
        }
        Worth::Sparse(entries) => {
            let mut worth: Vec<Option<S>> = vec![None; size];
            for entry in entries {
                let c = entry.coalition.resolve(&players)?;
                let slot = &mut worth[c.bits() as usize];
                if slot.is_some() {
                    return Err(CliError::Input(format!(
                        "coalition {{{}}} appears twice",
                        players.format(c)
                    )));
                }
                *slot = Some(entry.value.parse()?);
            }
            if strict {
                if let Some(c) = all_coalitions(players.len())
                    .skip(1)
                    .find(|c| worth[c.bits() as usize].is_none())
                {
                    return Err(CliError::Input(format!(
                        "strict mode: no worth given for coalition {{{}}}",
                        players.format(c)
                    )));
                }
            }
            worth.into_iter().map(|w| w.unwrap_or_else(S::zero)).collect()
        }
    };
    let game = Game::new(players, worth)?;
    game.is_monotone();
    Ok(game)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Dense,
    /// Non-zero worths only.
    Sparse,
}

pub fn document_from_game<S: Scalar>(game: &Game<S>, layout: Layout) -> GameDocument {
    let literal = |x: &S| Literal::Text(x.to_string());
    let worth = match layout {
        Layout::Dense => Worth::Dense(game.worth_table().iter().map(literal).collect()),
        Layout::Sparse => Worth::Sparse(
            all_coalitions(game.n())
                .skip(1)
                .filter_map(|c| {
                    let w = game.worth(c).ok()?;
                    (!w.is_zero()).then(|| SparseEntry {
                        coalition: LabelList::List(game.players().labels_of(c).into_iter().map(String::from).collect()),
                        value: literal(w),
                    })
                })
                .collect(),
        ),
    };
    GameDocument {
        format: FORMAT_TAG.to_string(),
        players: game.players().labels().to_vec(),
        worth,
    }
}

pub fn serialize_game<S: Scalar>(game: &Game<S>, layout: Layout) -> String {
    let doc = document_from_game(game, layout);
    let mut text = serde_json::to_string_pretty(&doc).expect("game documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopetition::generators::{glove_game, unanimity_game};
    use coopetition::scalar::ratio;
    use coopetition::Rational;

    fn doc(players: &str, worth: &str) -> String {
        format!(r#"{{"format": "coopet/1", "players": {players}, "worth": {worth}}}"#)
    }

    #[test]
    fn dense_and_sparse_agree() {
        let dense: Game<Rational> = parse_game(&doc(r#"["a","b"]"#, r#"{"dense": [0, 0, 0, 1]}"#), false).unwrap();
        let sparse: Game<Rational> = parse_game(
            &doc(
                r#"["a","b"]"#,
                r#"{"sparse": [{"coalition": ["a"], "value": 0}, {"coalition": ["b"], "value": 0}, {"coalition": "a,b", "value": "1"}]}"#,
            ),
            true,
        )
        .unwrap();
        let players = PlayerSet::new(["a", "b"]).unwrap();
        let u = unanimity_game::<Rational>(&players, players.full()).unwrap();
        assert_eq!(dense, u);
        assert_eq!(sparse, u);
    }

    #[test]
    fn rejections() {
        let bad = |players: &str, worth: &str, strict: bool| parse_game::<Rational>(&doc(players, worth), strict).is_err();
        assert!(bad(r#"["a","b"]"#, r#"{"dense": [1, 0, 0, 0]}"#, false));
        assert!(bad(r#"["a","b"]"#, r#"{"dense": [0, 0, 1]}"#, false));
        assert!(bad(r#"["a","a"]"#, r#"{"dense": [0, 0, 0, 1]}"#, false));
        assert!(bad(r#"["a","b"]"#, r#"{"sparse": [{"coalition": "a,c", "value": 1}]}"#, false));
        assert!(bad(r#"["a","b"]"#, r#"{"sparse": [{"coalition": "a", "value": 1}, {"coalition": ["a"], "value": 2}]}"#, false));
        assert!(bad(r#"["a","b"]"#, r#"{"sparse": [{"coalition": "a,b", "value": 1}]}"#, true));
        assert!(bad(r#"["a","b"]"#, r#"{"sparse": [{"coalition": "", "value": 1}]}"#, false));
        assert!(bad(r#"["a","b"]"#, r#"{"dense": [0, 0, 0, 0.5]}"#, false));
        assert!(!bad(r#"["a","b"]"#, r#"{"sparse": [{"coalition": "a,b", "value": 1}]}"#, false));
        let err = parse_game::<Rational>("{\n  \"format\": \"coopet/1\",\n  oops\n}", false).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(parse_game::<Rational>(&doc(r#"["a"]"#, r#"{"dense": [0, 1]}"#).replace("coopet/1", "coopet/2"), false).is_err());
    }

    #[test]
    fn float_mode_accepts_decimals() {
        let g: Game<f64> = parse_game(&doc(r#"["a","b"]"#, r#"{"dense": [0, 0.25, "1/2", 1]}"#), false).unwrap();
        assert_eq!(g.worth_table(), &[0.0, 0.25, 0.5, 1.0]);
    }

    #[test]
    fn round_trip() {
        let g = glove_game::<Rational>(&[0], &[1, 2]).unwrap().scale(&ratio(-3, 7));
        for layout in [Layout::Dense, Layout::Sparse] {
            let text = serialize_game(&g, layout);
            assert_eq!(parse_game::<Rational>(&text, false).unwrap(), g);
        }
        assert_eq!(parse_game::<Rational>(&serialize_game(&g, Layout::Dense), true).unwrap(), g);
    }
}
