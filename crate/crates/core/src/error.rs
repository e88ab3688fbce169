use thiserror::Error;

use crate::coalition::Coalition;
use crate::values::ValueId;

pub type Result<T, E = GameError> = std::result::Result<T, E>;

/// Errors raised while building or evaluating level games.
///
/// Coalitions are carried as bitsets; the `Display` form uses 1-based player
/// numbers. Front ends holding player labels render them with
/// [`Coalition::display_with`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("player count {0} exceeds the 64-player limit")]
    TooManyPlayers(usize),
    #[error("a complete characteristic function on {0} players is too large to tabulate (limit {max})", max = crate::worth::MAX_COMPLETE_PLAYERS)]
    TooLargeForComplete(usize),
    #[error("game has no players")]
    NoPlayers,
    #[error("player {player} out of range for {n} players", player = .player + 1)]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("coalition {coalition} is not a subset of the {n} players")]
    CoalitionOutOfRange { coalition: Coalition, n: usize },
    #[error("worth of the empty coalition must be 0, got {0}")]
    NonzeroEmptyWorth(f64),
    #[error("worth of coalition {coalition} is not finite")]
    NonFiniteWorth { coalition: Coalition },
    #[error("coalition {0} is listed twice")]
    DuplicateCoalition(Coalition),
    #[error("expected a table of {expected} worths, got {got}")]
    WrongTableSize { expected: usize, got: usize },
    #[error("worth of coalition {0} is not defined")]
    MissingCoalition(Coalition),
    #[error("{value} requires the worth of coalition {coalition}, which is not defined")]
    MissingForValue { value: ValueId, coalition: Coalition },
    #[error("operation requires a complete characteristic function")]
    Partial,
    #[error("characteristic functions differ in player count ({0} vs {1})")]
    PlayerCountMismatch(usize, usize),
    #[error("characteristic functions are defined on different coalitions")]
    SupportMismatch,
    #[error("games have different level structures")]
    StructureMismatch,
    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("player {player} appears in more than one block", player = .0 + 1)]
    OverlappingBlocks(usize),
    #[error("player {player} is not covered by the partition", player = .0 + 1)]
    UncoveredPlayer(usize),
    #[error("a level structure needs at least two levels, got {0}")]
    TooFewLevels(usize),
    #[error("level 0 must consist of singletons")]
    BottomNotSingletons,
    #[error("top level must be the grand coalition alone")]
    TopNotGrand,
    #[error("level {level} block {block} splits level {lower} block {lower_block}", lower = .level - 1)]
    NotNested { level: usize, block: Coalition, lower_block: Coalition },
    #[error("level {level} out of range (valid {min}..={max})")]
    LevelOutOfRange { level: usize, min: usize, max: usize },
    #[error("coalition {block} is not a block of level {level}")]
    NotABlock { level: usize, block: Coalition },
    #[error("players must be distinct")]
    SamePlayer,
    #[error("basis game needs a nonempty coalition")]
    EmptyBasisCoalition,
    #[error("invalid topology: {0}")]
    Topology(String),
}

impl GameError {
    /// Like `Display`, naming players by `labels` instead of 1-based numbers.
    pub fn display_with<S: AsRef<str>>(&self, labels: &[S]) -> String {
        let name = |p: usize| labels.get(p).map_or("?", |s| s.as_ref()).to_string();
        match self {
            GameError::CoalitionOutOfRange { coalition, n } => {
                format!("coalition {coalition} is not a subset of the {n} players")
            }
            GameError::NonFiniteWorth { coalition } => {
                format!("worth of coalition {} is not finite", coalition.display_with(labels))
            }
            GameError::DuplicateCoalition(c) => format!("coalition {} is listed twice", c.display_with(labels)),
            GameError::MissingCoalition(c) => format!("worth of coalition {} is not defined", c.display_with(labels)),
            GameError::MissingForValue { value, coalition } => format!(
                "{value} requires the worth of coalition {}, which is not defined",
                coalition.display_with(labels)
            ),
            GameError::PlayerOutOfRange { player, n } => format!("player {} out of range for {n} players", player + 1),
            GameError::OverlappingBlocks(p) => format!("player {} appears in more than one block", name(*p)),
            GameError::UncoveredPlayer(p) => format!("player {} is not covered by the partition", name(*p)),
            GameError::NotNested { level, block, lower_block } => format!(
                "level {level} block {} splits level {} block {}",
                block.display_with(labels),
                level - 1,
                lower_block.display_with(labels)
            ),
            GameError::NotABlock { level, block } => {
                format!("coalition {} is not a block of level {level}", block.display_with(labels))
            }
            other => other.to_string(),
        }
    }
}
