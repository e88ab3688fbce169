//! Parking-garage maintenance fee model.
//!
//! A community is charged a fixed part, a per-lift part, a part proportional
//! to the highest floor each lift must reach, and a per-place part. Owners
//! sit on floors, floors hang off lifts; that nesting is the level structure.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, PlayerId, MAX_PLAYERS};
use crate::error::{GameError, Result};
use crate::game::LevelGame;
use crate::structure::{LevelStructure, Partition};
use crate::worth::{CharacteristicFunction, MAX_COMPLETE_PLAYERS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeeSchedule {
    pub fixed: f64,
    pub per_lift: f64,
    /// Charged per lift, times the highest floor that lift serves.
    pub per_floor_coeff: f64,
    pub per_place: f64,
}

impl Default for FeeSchedule {
    fn default() -> Self {
        FeeSchedule { fixed: 50.0, per_lift: 50.0, per_floor_coeff: 4.0, per_place: 10.0 }
    }
}

impl FeeSchedule {
    fn validate(&self) -> Result<()> {
        let all = [self.fixed, self.per_lift, self.per_floor_coeff, self.per_place];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(GameError::Topology("fee schedule entries must be finite".into()));
        }
        Ok(())
    }
}

/// Lifts, each with floors ordered bottom to top, each with owner labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingTopology {
    /// `lifts[l][f]` lists the owners on floor `f + 1` of lift `l`.
    pub lifts: Vec<Vec<Vec<String>>>,
}

impl BuildingTopology {
    /// Two lifts: lift 1 has one owner on each of two floors, lift 2 has one
    /// owner on floor 1 and two on floor 2.
    pub fn parking_example() -> Self {
        let f = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        BuildingTopology { lifts: vec![vec![f(&["1"]), f(&["2"])], vec![f(&["3"]), f(&["4", "5"])]] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lifts.is_empty() {
            return Err(GameError::Topology("at least one lift is required".into()));
        }
        let mut seen = HashSet::new();
        for (li, lift) in self.lifts.iter().enumerate() {
            if lift.is_empty() {
                return Err(GameError::Topology(format!("lift {} has no floors", li + 1)));
            }
            for (fi, floor) in lift.iter().enumerate() {
                if floor.is_empty() {
                    return Err(GameError::Topology(format!("lift {} floor {} has no owners", li + 1, fi + 1)));
                }
                for owner in floor {
                    if !seen.insert(owner.as_str()) {
                        return Err(GameError::Topology(format!("owner '{owner}' appears twice")));
                    }
                }
            }
        }
        if seen.len() > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(seen.len()));
        }
        Ok(())
    }

    /// Owner labels in lift, floor, listing order. Player `i` is `owners()[i]`.
    pub fn owners(&self) -> Vec<&str> {
        self.lifts.iter().flatten().flatten().map(String::as_str).collect()
    }

    /// `(lift, 1-based floor)` of every owner, in player order.
    fn placement(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (li, lift) in self.lifts.iter().enumerate() {
            for (fi, floor) in lift.iter().enumerate() {
                out.extend(floor.iter().map(|_| (li, fi + 1)));
            }
        }
        out
    }

    pub fn player_of(&self, label: &str) -> Option<PlayerId> {
        self.owners().iter().position(|o| *o == label).map(PlayerId)
    }

    /// Floors as level-1 blocks and lifts as level-2 blocks.
    pub fn level_structure(&self) -> Result<LevelStructure> {
        self.validate()?;
        let n = self.owners().len();
        let mut floors = Vec::new();
        let mut lifts = Vec::new();
        let mut next = 0usize;
        for lift in &self.lifts {
            let mut lift_block = Coalition::EMPTY;
            for floor in lift {
                let block: Coalition = (next..next + floor.len()).collect();
                next += floor.len();
                floors.push(block);
                lift_block |= block;
            }
            lifts.push(lift_block);
        }
        LevelStructure::from_intermediate(n, vec![Partition::new(n, floors)?, Partition::new(n, lifts)?])
    }
}

fn fee_with(schedule: &FeeSchedule, placement: &[(usize, usize)], lifts: usize, s: Coalition) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    let mut highest = vec![0usize; lifts];
    for p in s.members() {
        let (lift, floor) = placement[p.0];
        highest[lift] = highest[lift].max(floor);
    }
    let used = highest.iter().filter(|&&h| h > 0).count();
    let floors: usize = highest.iter().sum();
    schedule.fixed
        + schedule.per_lift * used as f64
        + schedule.per_floor_coeff * floors as f64
        + schedule.per_place * s.len() as f64
}

/// Monthly fee for a coalition of owners (players in [`BuildingTopology::owners`] order).
pub fn fee(schedule: &FeeSchedule, topology: &BuildingTopology, s: Coalition) -> Result<f64> {
    topology.validate()?;
    let n = topology.owners().len();
    if !s.fits(n) {
        return Err(GameError::CoalitionOutOfRange { coalition: s, n });
    }
    Ok(fee_with(schedule, &topology.placement(), topology.lifts.len(), s))
}

/// Fee for a coalition named by owner labels.
pub fn fee_for_labels(schedule: &FeeSchedule, topology: &BuildingTopology, owners: &[&str]) -> Result<f64> {
    let mut s = Coalition::EMPTY;
    for o in owners {
        let p =
            topology.player_of(o).ok_or_else(|| GameError::Topology(format!("owner '{o}' is not in the topology")))?;
        s = s.with(p);
    }
    fee(schedule, topology, s)
}

/// Complete level game with `v(S) = fee(S)` and the floor/lift structure.
pub fn build_level_game(schedule: &FeeSchedule, topology: &BuildingTopology) -> Result<LevelGame> {
    schedule.validate()?;
    let structure = topology.level_structure()?;
    let n = structure.n();
    if n > MAX_COMPLETE_PLAYERS {
        return Err(GameError::TooLargeForComplete(n));
    }
    let placement = topology.placement();
    let lifts = topology.lifts.len();
    let v = CharacteristicFunction::from_fn(n, |s| fee_with(schedule, &placement, lifts, s))?;
    LevelGame::new(v, structure)
}
