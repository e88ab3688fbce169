//! Shared fixtures for the benchmarks.

use egalitarian_core::axioms::random::{random_level_game, GeneratorConfig};
use egalitarian_core::format::{example, GameFile};
use egalitarian_core::LevelGame;

pub fn parking() -> LevelGame {
    GameFile::parse(example("parking").expect("bundled")).expect("bundled file parses").game
}

/// First game at or after `seed` with exactly `n` players and `k` levels.
pub fn random_game(seed: u64, n: usize, k: usize) -> LevelGame {
    let cfg = GeneratorConfig::new(n, k, -10..=10);
    (seed..)
        .map(|s| random_level_game(s, &cfg))
        .find(|g| g.n() == n && g.k() == k)
        .expect("generator eventually hits the largest shape")
}
