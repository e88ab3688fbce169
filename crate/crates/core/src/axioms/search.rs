//! Seeded counterexample search and characterization campaigns.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::game::LevelGame;
use crate::values::ValueId;

use super::random::{cardinality_game_on, random_level_game, random_worths_on, zero_singletons, GeneratorConfig};
use super::{characterization, check_axiom, AxiomId, AxiomReport, LevelValue};

/// Salt mixed into a seed to derive the additivity partner game.
const PARTNER_SALT: u64 = 0x9e37_79b9_7f4a_7c15;
/// Salt for the cardinality-symmetric variant.
const SYMMETRIC_SALT: u64 = 0xc2b2_ae3d_27d4_eb4f;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: u64,
    pub generator: GeneratorConfig,
    pub tol: f64,
}

impl Default for SearchConfig {
    /// Five players, two intermediate levels, worths in [-10, 10], 10 000 trials.
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            trials: 10_000,
            generator: GeneratorConfig::new(5, 2, -10..=10),
            tol: super::DEFAULT_TOLERANCE,
        }
    }
}

/// A violating game together with the seed that regenerates it.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub seed: u64,
    pub game: LevelGame,
    pub report: AxiomReport,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Counterexample>),
    NotFound { trials: u64 },
}

pub fn partner_for(seed: u64, game: &LevelGame, generator: &GeneratorConfig) -> LevelGame {
    random_worths_on(seed ^ PARTNER_SALT, game, &generator.worths)
}

/// Regenerates the game for `seed` and re-runs the check.
pub fn replay(
    value: &dyn LevelValue,
    axiom: AxiomId,
    seed: u64,
    config: &SearchConfig,
) -> Result<(LevelGame, AxiomReport)> {
    let game = random_level_game(seed, &config.generator);
    let partner = partner_for(seed, &game, &config.generator);
    let report = check_axiom(axiom, value, &game, &partner, config.tol)?;
    Ok((game, report))
}

/// Tries seeds `seed, seed+1, …` until `axiom` fails for `value` or the trial
/// budget runs out.
pub fn search_counterexample(value: &dyn LevelValue, axiom: AxiomId, config: &SearchConfig) -> Result<SearchOutcome> {
    for t in 0..config.trials {
        let seed = config.seed.wrapping_add(t);
        let (game, report) = replay(value, axiom, seed, config)?;
        if !report.passed() {
            return Ok(SearchOutcome::Found(Box::new(Counterexample { seed, game, report })));
        }
    }
    Ok(SearchOutcome::NotFound { trials: config.trials })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: u64,
    pub generator: GeneratorConfig,
    pub tol: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            trials: 1000,
            generator: GeneratorConfig::new(6, 3, -10..=10),
            tol: super::DEFAULT_TOLERANCE,
        }
    }
}

/// Aggregate for one (value, axiom) pair over a campaign.
#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub value: ValueId,
    pub axiom: AxiomId,
    /// Whether the axiom belongs to the value's characterization.
    pub expected: bool,
    pub games: usize,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<(u64, AxiomReport)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub trials: u64,
    pub pairs: Vec<PairSummary>,
}

impl CampaignReport {
    /// True when no expected pair failed.
    pub fn all_expected_pass(&self) -> bool {
        self.pairs.iter().filter(|p| p.expected).all(|p| p.failures == 0)
    }
}

/// The games checked for one seed: the random game, a size-symmetric game
/// on the same structure, and the random game with zeroed singletons.
pub fn campaign_games(seed: u64, generator: &GeneratorConfig) -> Result<Vec<LevelGame>> {
    let plain = random_level_game(seed, generator);
    let symmetric = cardinality_game_on(seed ^ SYMMETRIC_SALT, &plain, &generator.worths);
    let zeroed = zero_singletons(&plain)?;
    Ok(vec![plain, symmetric, zeroed])
}

/// Checks every requested pair on every campaign game of every seed.
/// `axioms = None` checks each value's own characterization.
pub fn run_campaign(values: &[ValueId], axioms: Option<&[AxiomId]>, config: &CampaignConfig) -> Result<CampaignReport> {
    let pairs: Vec<(ValueId, AxiomId)> = values
        .iter()
        .flat_map(|&v| {
            let list: Vec<AxiomId> = axioms.map(<[_]>::to_vec).unwrap_or_else(|| characterization(v).to_vec());
            list.into_iter().map(move |a| (v, a))
        })
        .collect();
    let per_seed: Vec<Vec<(usize, AxiomReport)>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = config.seed.wrapping_add(t);
            let games = campaign_games(seed, &config.generator)?;
            let mut out = Vec::new();
            for game in &games {
                let partner = partner_for(seed, game, &config.generator);
                for (idx, (v, a)) in pairs.iter().enumerate() {
                    out.push((idx, check_axiom(*a, v, game, &partner, config.tol)?));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut summaries: Vec<PairSummary> = pairs
        .iter()
        .map(|&(value, axiom)| PairSummary {
            value,
            axiom,
            expected: characterization(value).contains(&axiom),
            games: 0,
            instances: 0,
            failures: 0,
            first_failure: None,
        })
        .collect();
    for (t, reports) in per_seed.into_iter().enumerate() {
        let seed = config.seed.wrapping_add(t as u64);
        for (idx, report) in reports {
            let s = &mut summaries[idx];
            s.games += 1;
            s.instances += report.instances;
            if !report.passed() {
                s.failures += 1;
                if s.first_failure.is_none() {
                    s.first_failure = Some((seed, report));
                }
            }
        }
    }
    Ok(CampaignReport { seed: config.seed, trials: config.trials, pairs: summaries })
}
