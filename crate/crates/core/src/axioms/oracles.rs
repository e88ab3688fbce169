//! Game constructions from the characterization proofs. These are test
//! oracles: the values themselves are evaluated from their closed forms.

use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::LevelGame;
use crate::worth::CharacteristicFunction;

/// `e_T^α`: worth `α` on exactly `T`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisGameSpec {
    pub support: Coalition,
    pub alpha: f64,
}

pub fn basis_game(n: usize, spec: &BasisGameSpec) -> Result<CharacteristicFunction> {
    if spec.support.is_empty() {
        return Err(GameError::EmptyBasisCoalition);
    }
    if !spec.support.fits(n) {
        return Err(GameError::CoalitionOutOfRange { coalition: spec.support, n });
    }
    CharacteristicFunction::from_fn(n, |s| if s == spec.support { spec.alpha } else { 0.0 })
}

fn dense(game: &LevelGame) -> Result<&[f64]> {
    game.worths().dense()
}

/// `v*(S) = Σ_{C ∈ C_k, C ⊆ S} v(C)` and `v** = v − v*`.
pub fn split_top_unions(game: &LevelGame) -> Result<(CharacteristicFunction, CharacteristicFunction)> {
    let w = dense(game)?;
    let top: Vec<(Coalition, f64)> =
        game.structure().levels()[game.k()].blocks().iter().map(|&c| (c, w[c.bits() as usize])).collect();
    let v_star = CharacteristicFunction::from_fn(game.n(), |s| {
        top.iter().filter(|(c, _)| c.is_subset_of(s)).map(|(_, x)| x).sum()
    })?;
    let v_star_star = game.worths().try_sub(&v_star)?;
    Ok((v_star, v_star_star))
}

/// `v = additive + tilde + Σ_l per_level[l-1]` for `l = 1..=k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelParts {
    /// `v^a(S) = Σ_{i∈S} v({i})`.
    pub additive: CharacteristicFunction,
    /// What is left once the additive and per-level parts are removed. Zero
    /// on every level-`k` block, and `v(N) − Σ_{C∈C_k} v(C)` at `N`.
    pub tilde: CharacteristicFunction,
    /// `v*_l(S) = Σ_{C∈C_l, C⊆S} (v(C) − Σ_{C'∈⌊C⌋} v(C'))`.
    pub per_level: Vec<CharacteristicFunction>,
}

impl LevelParts {
    pub fn reconstruct(&self) -> Result<CharacteristicFunction> {
        let mut acc = self.additive.try_add(&self.tilde)?;
        for part in &self.per_level {
            acc = acc.try_add(part)?;
        }
        Ok(acc)
    }
}

pub fn split_levels(game: &LevelGame) -> Result<LevelParts> {
    let w = dense(game)?;
    let s = game.structure();
    let additive = game.worths().additive_part()?;
    let per_level = (1..=game.k())
        .map(|l| {
            let remainders: Vec<(Coalition, f64)> = s.levels()[l]
                .blocks()
                .iter()
                .map(|&c| {
                    let below: f64 = s.levels()[l - 1]
                        .blocks()
                        .iter()
                        .filter(|d| d.is_subset_of(c))
                        .map(|d| w[d.bits() as usize])
                        .sum();
                    (c, w[c.bits() as usize] - below)
                })
                .collect();
            CharacteristicFunction::from_fn(game.n(), |t| {
                remainders.iter().filter(|(c, _)| c.is_subset_of(t)).map(|(_, r)| r).sum()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tilde = game.worths().try_sub(&additive)?;
    for part in &per_level {
        tilde = tilde.try_sub(part)?;
    }
    Ok(LevelParts { additive, tilde, per_level })
}

/// `v^a` and `v^0 = v − v^a`; `v^0` vanishes on singletons.
pub fn split_additive(game: &LevelGame) -> Result<(CharacteristicFunction, CharacteristicFunction)> {
    dense(game)?;
    let additive = game.worths().additive_part()?;
    let rest = game.worths().try_sub(&additive)?;
    Ok((additive, rest))
}
