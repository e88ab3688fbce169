//! Seeded random level games.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::{Coalition, PlayerId};
use crate::error::Result;
use crate::game::LevelGame;
use crate::structure::{LevelStructure, Partition};
use crate::worth::CharacteristicFunction;

/// Most blocks a union is split into when generating a structure.
const MAX_SPLIT: usize = 4;

/// Shape of generated games: `n` uniform in `2..=n_max`, `k` uniform in
/// `0..=k_max`, integer worths uniform in `worths`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n_max: usize,
    pub k_max: usize,
    pub worths: RangeInclusive<i64>,
}

impl GeneratorConfig {
    pub fn new(n_max: usize, k_max: usize, worths: RangeInclusive<i64>) -> Self {
        assert!(n_max >= 2, "n_max must be at least 2");
        assert!(worths.start() <= worths.end(), "empty worth range");
        GeneratorConfig { n_max, k_max, worths }
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nested structure built top-down: every union of the level above is split
/// into between one and four parts.
pub fn random_structure<R: Rng>(rng: &mut R, n: usize, k: usize) -> LevelStructure {
    let mut top_down: Vec<Vec<Coalition>> = Vec::with_capacity(k);
    let mut current = vec![Coalition::grand(n)];
    for _ in 0..k {
        let mut next = Vec::new();
        for block in &current {
            let mut members: Vec<PlayerId> = block.members().collect();
            let parts = rng.random_range(1..=members.len().min(MAX_SPLIT));
            members.shuffle(rng);
            let mut pieces = vec![Coalition::EMPTY; parts];
            for (idx, p) in members.into_iter().enumerate() {
                let slot = if idx < parts { idx } else { rng.random_range(0..parts) };
                pieces[slot] = pieces[slot].with(p);
            }
            next.extend(pieces);
        }
        top_down.push(next.clone());
        current = next;
    }
    let intermediate = top_down
        .into_iter()
        .rev()
        .map(|blocks| Partition::new(n, blocks).expect("generated blocks partition N"))
        .collect();
    LevelStructure::from_intermediate(n, intermediate).expect("generated levels are nested")
}

/// Complete game with independent uniform integer worths.
pub fn random_worths<R: Rng>(rng: &mut R, n: usize, worths: &RangeInclusive<i64>) -> CharacteristicFunction {
    CharacteristicFunction::from_fn(n, |_| rng.random_range(worths.clone()) as f64).expect("small n")
}

/// Deterministic function of `seed`.
pub fn random_level_game(seed: u64, config: &GeneratorConfig) -> LevelGame {
    let mut rng = rng_for(seed);
    let n = rng.random_range(2..=config.n_max);
    let k = rng.random_range(0..=config.k_max);
    let structure = random_structure(&mut rng, n, k);
    let v = random_worths(&mut rng, n, &config.worths);
    LevelGame::new(v, structure).expect("sizes agree")
}

/// Fresh random worths on the structure of `game`.
pub fn random_worths_on(seed: u64, game: &LevelGame, worths: &RangeInclusive<i64>) -> LevelGame {
    let mut rng = rng_for(seed);
    game.with_worths(random_worths(&mut rng, game.n(), worths)).expect("sizes agree")
}

/// Worth depends only on coalition size, so same-size unions are
/// interchangeable at every level.
pub fn cardinality_game_on(seed: u64, game: &LevelGame, worths: &RangeInclusive<i64>) -> LevelGame {
    let mut rng = rng_for(seed);
    let by_size: Vec<f64> = (0..=game.n()).map(|_| rng.random_range(worths.clone()) as f64).collect();
    let v = CharacteristicFunction::from_fn(game.n(), |s| by_size[s.len()]).expect("small n");
    game.with_worths(v).expect("sizes agree")
}

/// `v − v^a`: the same game with every singleton worth moved to zero.
pub fn zero_singletons(game: &LevelGame) -> Result<LevelGame> {
    let additive = game.worths().additive_part()?;
    game.with_worths(game.worths().try_sub(&additive)?)
}
