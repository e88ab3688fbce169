//! TOML game files.
//!
//! ```toml
//! players = ["1", "2", "3"]
//! levels = [[["1", "2"], ["3"]]]          # C_0 and {N} may be omitted
//! worths = [
//!   { coalition = ["1", "2", "3"], worth = 12.0 },
//! ]
//! ```
//!
//! Instead of `worths`, a `[generator]` table with `kind = "fee_model"`, an
//! optional `schedule` and a `topology` builds the complete fee game.
//!
//! On load, a leading partition of singletons is taken as `C_0` and a
//! trailing `{N}` as the top level; missing ones are added. Files written by
//! [`GameFile::to_toml_string`] list every level explicitly.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::coalition::{Coalition, PlayerId, MAX_PLAYERS};
use crate::error::GameError;
use crate::fee::{build_level_game, BuildingTopology, FeeSchedule};
use crate::game::LevelGame;
use crate::structure::{LevelStructure, Partition};
use crate::worth::CharacteristicFunction;

/// Names of the bundled example games.
pub const EXAMPLES: &[&str] = &["parking"];

const PARKING: &str = include_str!("../data/parking.game");

/// Text of a bundled example game.
pub fn example(name: &str) -> Option<&'static str> {
    match name {
        "parking" => Some(PARKING),
        _ => None,
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate player label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown player label '{0}'")]
    UnknownLabel(String),
    #[error("player label '{label}' repeated in coalition")]
    RepeatedInCoalition { label: String },
    #[error("worth given for the empty coalition")]
    EmptyCoalition,
    #[error("coalition {0} has more than one worth record")]
    DuplicateCoalition(String),
    #[error("file needs either `worths` or a `[generator]` table")]
    NoWorths,
    #[error("file has both `worths` and a `[generator]` table")]
    BothWorthSources,
    #[error("`players` is required when worths are explicit")]
    NoPlayers,
    #[error("unknown generator kind '{0}' (expected \"fee_model\")")]
    UnknownGenerator(String),
    #[error("`players` must list the topology owners in topology order")]
    PlayersDisagreeWithTopology,
    #[error("{0}")]
    Game(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    players: Option<Vec<String>>,
    levels: Option<Vec<Vec<Vec<String>>>>,
    worths: Option<Vec<RawWorth>>,
    generator: Option<RawGenerator>,
    metadata: Option<toml::Table>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorth {
    coalition: Vec<String>,
    worth: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    kind: String,
    #[serde(default)]
    schedule: FeeSchedule,
    topology: BuildingTopology,
}

/// A level game with its player labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GameFile {
    pub labels: Vec<String>,
    pub game: LevelGame,
    pub metadata: Option<toml::Table>,
}

struct Labels<'a> {
    names: &'a [String],
    index: HashMap<&'a str, usize>,
}

impl<'a> Labels<'a> {
    fn new(names: &'a [String]) -> Result<Self, FormatError> {
        let mut index = HashMap::new();
        for (i, l) in names.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(FormatError::DuplicateLabel(l.clone()));
            }
        }
        if names.len() > MAX_PLAYERS {
            return Err(FormatError::Game(GameError::TooManyPlayers(names.len()).to_string()));
        }
        Ok(Labels { names, index })
    }

    fn coalition(&self, members: &[String]) -> Result<Coalition, FormatError> {
        let mut c = Coalition::EMPTY;
        for m in members {
            let i = *self.index.get(m.as_str()).ok_or_else(|| FormatError::UnknownLabel(m.clone()))?;
            if c.contains(PlayerId(i)) {
                return Err(FormatError::RepeatedInCoalition { label: m.clone() });
            }
            c = c.with(PlayerId(i));
        }
        Ok(c)
    }

    fn err(&self, e: GameError) -> FormatError {
        FormatError::Game(e.display_with(self.names))
    }
}

fn parse_levels(labels: &Labels, raw: &[Vec<Vec<String>>]) -> Result<LevelStructure, FormatError> {
    let n = labels.names.len();
    let mut parts = raw
        .iter()
        .map(|level| {
            let blocks = level.iter().map(|b| labels.coalition(b)).collect::<Result<Vec<_>, _>>()?;
            Partition::new(n, blocks).map_err(|e| labels.err(e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parts.first().is_none_or(|p| *p != Partition::singletons(n)) {
        parts.insert(0, Partition::singletons(n));
    }
    if parts.len() < 2 || *parts.last().unwrap() != Partition::grand(n) {
        parts.push(Partition::grand(n));
    }
    LevelStructure::new(n, parts).map_err(|e| labels.err(e))
}

impl GameFile {
    pub fn new(labels: Vec<String>, game: LevelGame) -> Self {
        GameFile { labels, game, metadata: None }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FormatError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1);
            FormatError::Parse { line, message: e.message().to_string() }
        })?;
        match (raw.worths, raw.generator) {
            (Some(_), Some(_)) => Err(FormatError::BothWorthSources),
            (None, None) => Err(FormatError::NoWorths),
            (Some(worths), None) => {
                let names = raw.players.ok_or(FormatError::NoPlayers)?;
                let labels = Labels::new(&names)?;
                if names.is_empty() {
                    return Err(labels.err(GameError::NoPlayers));
                }
                let structure = parse_levels(&labels, raw.levels.as_deref().unwrap_or(&[]))?;
                let mut entries = Vec::with_capacity(worths.len());
                let mut seen = HashMap::new();
                for w in &worths {
                    let c = labels.coalition(&w.coalition)?;
                    if c.is_empty() {
                        return Err(FormatError::EmptyCoalition);
                    }
                    if seen.insert(c, ()).is_some() {
                        return Err(FormatError::DuplicateCoalition(c.display_with(&names)));
                    }
                    entries.push((c, w.worth));
                }
                let v = CharacteristicFunction::partial(names.len(), entries).map_err(|e| labels.err(e))?;
                let game = LevelGame::new(v, structure).map_err(|e| labels.err(e))?;
                Ok(GameFile { labels: names, game, metadata: raw.metadata })
            }
            (None, Some(gen)) => {
                if gen.kind != "fee_model" {
                    return Err(FormatError::UnknownGenerator(gen.kind));
                }
                gen.topology.validate().map_err(|e| FormatError::Game(e.to_string()))?;
                let names: Vec<String> = gen.topology.owners().into_iter().map(String::from).collect();
                if raw.players.as_ref().is_some_and(|p| *p != names) {
                    return Err(FormatError::PlayersDisagreeWithTopology);
                }
                let labels = Labels::new(&names)?;
                let mut game = build_level_game(&gen.schedule, &gen.topology).map_err(|e| labels.err(e))?;
                if let Some(levels) = &raw.levels {
                    let structure = parse_levels(&labels, levels)?;
                    game = LevelGame::new(game.worths().clone(), structure).map_err(|e| labels.err(e))?;
                }
                Ok(GameFile { labels: names, game, metadata: raw.metadata })
            }
        }
    }

    /// Canonical explicit form: every level, then every defined worth
    /// ordered by coalition size and then by player order.
    pub fn to_toml_string(&self) -> String {
        let quote = |s: &str| toml::Value::String(s.to_string()).to_string();
        let list = |c: Coalition| {
            let items: Vec<String> = c.members().map(|p| quote(&self.labels[p.0])).collect();
            format!("[{}]", items.join(", "))
        };
        let mut out = String::new();
        let players: Vec<String> = self.labels.iter().map(|l| quote(l)).collect();
        out.push_str(&format!("players = [{}]\n", players.join(", ")));
        out.push_str("levels = [\n");
        for p in self.game.structure().levels() {
            let blocks: Vec<String> = p.blocks().iter().map(|&b| list(b)).collect();
            out.push_str(&format!("  [{}],\n", blocks.join(", ")));
        }
        out.push_str("]\nworths = [\n");
        let mut entries: Vec<(Coalition, f64)> = self.game.worths().entries().collect();
        entries.sort_by_key(|(c, _)| (c.len(), c.members().map(|p| p.0).collect::<Vec<_>>()));
        for (c, w) in entries {
            out.push_str(&format!("  {{ coalition = {}, worth = {:?} }},\n", list(c), w));
        }
        out.push_str("]\n");
        if let Some(meta) = &self.metadata {
            out.push_str(&format!("metadata = {}\n", toml::Value::Table(meta.clone())));
        }
        out
    }
}
