//! Level games and the constructions derived from them.

use crate::coalition::{Coalition, PlayerId};
use crate::error::{GameError, Result};
use crate::structure::LevelStructure;
use crate::worth::{CharacteristicFunction, MAX_COMPLETE_PLAYERS};

/// A TU game `(N, v)` together with a level structure over the same players.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelGame {
    v: CharacteristicFunction,
    structure: LevelStructure,
}

impl LevelGame {
    pub fn new(v: CharacteristicFunction, structure: LevelStructure) -> Result<Self> {
        if v.n() != structure.n() {
            return Err(GameError::PlayerCountMismatch(v.n(), structure.n()));
        }
        Ok(LevelGame { v, structure })
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn k(&self) -> usize {
        self.structure.k()
    }

    pub fn worths(&self) -> &CharacteristicFunction {
        &self.v
    }

    pub fn structure(&self) -> &LevelStructure {
        &self.structure
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n())
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.n()).map(PlayerId)
    }

    /// Same structure, different worths.
    pub fn with_worths(&self, v: CharacteristicFunction) -> Result<LevelGame> {
        LevelGame::new(v, self.structure.clone())
    }

    /// Pointwise sum of two games sharing a structure.
    pub fn try_add(&self, other: &LevelGame) -> Result<LevelGame> {
        if self.structure != other.structure {
            return Err(GameError::StructureMismatch);
        }
        self.with_worths(self.v.try_add(&other.v)?)
    }

    pub fn union_containing(&self, l: usize, i: PlayerId) -> Result<Coalition> {
        self.structure.union_containing(l, i)
    }

    pub fn direct_subordinates(&self, l: usize, block: Coalition) -> Result<Vec<Coalition>> {
        self.structure.direct_subordinates(l, block)
    }

    pub fn egalitarian_denominator(&self, i: PlayerId, l0: usize, l1: usize) -> Result<u64> {
        self.structure.egalitarian_denominator(i, l0, l1)
    }

    /// The `l`-th quotient game, whose players are the blocks of `C_l`.
    ///
    /// For a partial `v` the quotient is defined on exactly those
    /// meta-coalitions whose union is defined in `v`.
    pub fn quotient_game(&self, l: usize) -> Result<QuotientGame> {
        let partition = self.structure.level(l)?;
        if l > self.k() {
            return Err(GameError::LevelOutOfRange { level: l, min: 0, max: self.k() });
        }
        let metas = partition.blocks().to_vec();
        let m = metas.len();
        let flatten = |s: Coalition| s.members().fold(Coalition::EMPTY, |acc, p| acc | metas[p.0]);
        let worth = if self.v.is_complete() && m <= MAX_COMPLETE_PLAYERS {
            CharacteristicFunction::from_fn(m, |s| self.v.worth(flatten(s)).unwrap())?
        } else {
            // keep only the defined coalitions that are unions of blocks
            let entries: Vec<_> = self
                .v
                .entries()
                .filter_map(|(c, w)| {
                    let s: Coalition =
                        metas.iter().enumerate().filter(|(_, b)| b.is_subset_of(c)).map(|(i, _)| i).collect();
                    (flatten(s) == c).then_some((s, w))
                })
                .collect();
            CharacteristicFunction::partial(m, entries)?
        };
        Ok(QuotientGame { level: l, meta_players: metas, worth })
    }

    /// `(C_l, v^l, L^l)`: the quotient game on the truncated structure.
    pub fn truncated_game(&self, l: usize) -> Result<LevelGame> {
        let q = self.quotient_game(l)?;
        LevelGame::new(q.worth, self.structure.truncation(l)?)
    }

    pub fn is_indistinguishable(&self, i: PlayerId, j: PlayerId) -> Result<bool> {
        self.v.is_indistinguishable(i, j)
    }

    pub fn is_nullifying(&self, i: PlayerId) -> Result<bool> {
        self.v.is_nullifying(i)
    }

    pub fn is_dummifying(&self, i: PlayerId) -> Result<bool> {
        self.v.is_dummifying(i)
    }
}

/// The game induced at one level by treating its blocks as players.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientGame {
    pub level: usize,
    /// Blocks of `C_l`; meta-player `j` is `meta_players[j]`.
    pub meta_players: Vec<Coalition>,
    pub worth: CharacteristicFunction,
}

impl QuotientGame {
    /// Union of the blocks in a meta-coalition.
    pub fn flatten(&self, s: Coalition) -> Coalition {
        s.members().fold(Coalition::EMPTY, |acc, p| acc | self.meta_players[p.0])
    }

    pub fn meta_index(&self, block: Coalition) -> Option<PlayerId> {
        self.meta_players.iter().position(|b| *b == block).map(PlayerId)
    }
}
