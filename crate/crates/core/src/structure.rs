//! Partitions and nested level structures.

use crate::coalition::{Coalition, PlayerId, MAX_PLAYERS};
use crate::error::{GameError, Result};

/// A partition of `{0, …, n-1}` into nonempty blocks, ordered by smallest
/// member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Coalition>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Coalition>) -> Result<Self> {
        if n == 0 {
            return Err(GameError::NoPlayers);
        }
        if n > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(n));
        }
        let mut seen = Coalition::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(GameError::EmptyBlock);
            }
            if !b.fits(n) {
                return Err(GameError::CoalitionOutOfRange { coalition: b, n });
            }
            if b.intersects(seen) {
                let p = (b & seen).first().unwrap();
                return Err(GameError::OverlappingBlocks(p.0));
            }
            seen |= b;
        }
        if let Some(p) = Coalition::grand(n).minus(seen).first() {
            return Err(GameError::UncoveredPlayer(p.0));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition { blocks: (0..n).map(|i| Coalition::singleton(PlayerId(i))).collect() }
    }

    pub fn grand(n: usize) -> Self {
        Partition { blocks: vec![Coalition::grand(n)] }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn position(&self, block: Coalition) -> Option<usize> {
        self.blocks.iter().position(|b| *b == block)
    }

    fn is_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

/// Sequence of nested partitions `C_0, …, C_{k+1}` with `C_0` the singletons
/// and `C_{k+1} = {N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    n: usize,
    levels: Vec<Partition>,
    /// `owner[l][i]`: index in `levels[l]` of the block holding player `i`.
    owner: Vec<Vec<usize>>,
    /// `fanout[l][b]`: number of level `l-1` blocks inside block `b` of level
    /// `l`; empty at level 0.
    fanout: Vec<Vec<usize>>,
}

impl LevelStructure {
    /// Validates a full list of levels, bottom to top.
    pub fn new(n: usize, levels: Vec<Partition>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(GameError::TooFewLevels(levels.len()));
        }
        for p in &levels {
            let covered = p.blocks().iter().fold(Coalition::EMPTY, |acc, &b| acc | b);
            if !covered.fits(n) {
                return Err(GameError::CoalitionOutOfRange { coalition: covered, n });
            }
            if let Some(missing) = Coalition::grand(n).minus(covered).first() {
                return Err(GameError::UncoveredPlayer(missing.0));
            }
        }
        if levels[0].len() != n || !levels[0].is_singletons() {
            return Err(GameError::BottomNotSingletons);
        }
        let top = levels.last().unwrap();
        if top.blocks() != [Coalition::grand(n)] {
            return Err(GameError::TopNotGrand);
        }
        for l in 1..levels.len() {
            for &lower in levels[l - 1].blocks() {
                let anchor = lower.first().unwrap();
                let upper = *levels[l].blocks().iter().find(|b| b.contains(anchor)).unwrap();
                if !lower.is_subset_of(upper) {
                    return Err(GameError::NotNested { level: l, block: upper, lower_block: lower });
                }
            }
        }
        let owner: Vec<Vec<usize>> = levels
            .iter()
            .map(|p| {
                let mut own = vec![0; n];
                for (bi, b) in p.blocks().iter().enumerate() {
                    for m in b.members() {
                        own[m.0] = bi;
                    }
                }
                own
            })
            .collect();
        let fanout = (0..levels.len())
            .map(|l| {
                if l == 0 {
                    return Vec::new();
                }
                let mut counts = vec![0; levels[l].len()];
                for lower in levels[l - 1].blocks() {
                    counts[owner[l][lower.first().unwrap().0]] += 1;
                }
                counts
            })
            .collect();
        Ok(LevelStructure { n, levels, owner, fanout })
    }

    /// Adds `C_0` and `C_{k+1}` around the given intermediate partitions.
    pub fn from_intermediate(n: usize, intermediate: Vec<Partition>) -> Result<Self> {
        let mut levels = Vec::with_capacity(intermediate.len() + 2);
        levels.push(Partition::singletons(n));
        levels.extend(intermediate);
        levels.push(Partition::grand(n));
        Self::new(n, levels)
    }

    /// The structure `{C_0, {N}}` with no intermediate level.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::new(n, vec![Partition::singletons(n), Partition::grand(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of intermediate levels.
    pub fn k(&self) -> usize {
        self.levels.len() - 2
    }

    /// Index of the top level, `k + 1`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn level(&self, l: usize) -> Result<&Partition> {
        self.check_level(l, 0, self.top())?;
        Ok(&self.levels[l])
    }

    /// Intermediate partitions `C_1 … C_k`.
    pub fn intermediate(&self) -> &[Partition] {
        &self.levels[1..self.top()]
    }

    fn check_level(&self, l: usize, min: usize, max: usize) -> Result<()> {
        if l < min || l > max {
            return Err(GameError::LevelOutOfRange { level: l, min, max });
        }
        Ok(())
    }

    fn check_player(&self, i: PlayerId) -> Result<()> {
        if i.0 >= self.n {
            return Err(GameError::PlayerOutOfRange { player: i.0, n: self.n });
        }
        Ok(())
    }

    /// Index within level `l` of the block containing `i`. Unchecked.
    pub(crate) fn owner_index(&self, l: usize, i: PlayerId) -> usize {
        self.owner[l][i.0]
    }

    /// `C_l(i)`: the block of level `l` containing player `i`.
    pub fn union_containing(&self, l: usize, i: PlayerId) -> Result<Coalition> {
        self.check_level(l, 0, self.top())?;
        self.check_player(i)?;
        Ok(self.levels[l].blocks()[self.owner[l][i.0]])
    }

    /// `⌊C⌋`: the blocks of level `l-1` contained in block `block` of level `l`.
    pub fn direct_subordinates(&self, l: usize, block: Coalition) -> Result<Vec<Coalition>> {
        self.check_level(l, 1, self.top())?;
        if self.levels[l].position(block).is_none() {
            return Err(GameError::NotABlock { level: l, block });
        }
        Ok(self.levels[l - 1].blocks().iter().copied().filter(|b| b.is_subset_of(block)).collect())
    }

    /// `|⌊C_l(i)⌋|`, for `1 ≤ l ≤ k+1`. Unchecked.
    pub(crate) fn fanout_of(&self, l: usize, i: PlayerId) -> usize {
        self.fanout[l][self.owner[l][i.0]]
    }

    /// `Π_{l=l0..=l1} |⌊C_l(i)⌋|`.
    pub fn egalitarian_denominator(&self, i: PlayerId, l0: usize, l1: usize) -> Result<u64> {
        self.check_player(i)?;
        self.check_level(l0, 1, self.top())?;
        self.check_level(l1, l0, self.top())?;
        Ok((l0..=l1).map(|l| self.fanout_of(l, i) as u64).product())
    }

    /// The structure induced on the blocks of level `l`, each block becoming
    /// one meta-player (indexed in level order). Valid for `0 ≤ l ≤ k`.
    pub fn truncation(&self, l: usize) -> Result<LevelStructure> {
        self.check_level(l, 0, self.k())?;
        let metas = self.levels[l].blocks();
        let m = metas.len();
        let levels = self.levels[l..]
            .iter()
            .map(|upper| {
                let blocks = upper
                    .blocks()
                    .iter()
                    .map(|q| {
                        metas
                            .iter()
                            .enumerate()
                            .filter(|(_, s)| s.is_subset_of(*q))
                            .map(|(idx, _)| idx)
                            .collect::<Coalition>()
                    })
                    .collect();
                Partition::new(m, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        LevelStructure::new(m, levels)
    }
}
