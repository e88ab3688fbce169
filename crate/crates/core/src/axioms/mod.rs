//! Executable versions of the axioms characterizing the level values,
//! the game constructions used to derive those characterizations, and a
//! seeded generator for property campaigns and counterexample searches.

mod checks;
pub mod oracles;
pub mod random;
pub mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coalition::{Coalition, PlayerId};
use crate::error::Result;
use crate::game::LevelGame;
use crate::values::{compute, Allocation, ValueId};

pub use checks::{
    check_additivity, check_axiom, check_dummifying_level_nullifying, check_dummifying_player,
    check_dummifying_unions_for_player, check_efficiency, check_nullifying_player, check_symmetry_among_unions,
};

/// Default absolute tolerance for every check.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "EFF")]
    Efficiency,
    #[serde(rename = "ADD")]
    Additivity,
    #[serde(rename = "SYM_UNIONS")]
    SymmetryAmongUnions,
    #[serde(rename = "NULLIFYING")]
    NullifyingPlayer,
    #[serde(rename = "DUMMI_LEVEL_NULL")]
    DummifyingLevelNullifying,
    #[serde(rename = "DUMMI_UNIONS_PLAYER")]
    DummifyingUnionsForPlayer,
    #[serde(rename = "DUMMIFYING_PLAYER")]
    DummifyingPlayer,
    #[serde(rename = "WEAK_SYM_UNIONS")]
    WeakSymmetryAmongUnions,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::Efficiency,
        AxiomId::Additivity,
        AxiomId::SymmetryAmongUnions,
        AxiomId::NullifyingPlayer,
        AxiomId::DummifyingLevelNullifying,
        AxiomId::DummifyingUnionsForPlayer,
        AxiomId::DummifyingPlayer,
        AxiomId::WeakSymmetryAmongUnions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Efficiency => "EFF",
            AxiomId::Additivity => "ADD",
            AxiomId::SymmetryAmongUnions => "SYM_UNIONS",
            AxiomId::NullifyingPlayer => "NULLIFYING",
            AxiomId::DummifyingLevelNullifying => "DUMMI_LEVEL_NULL",
            AxiomId::DummifyingUnionsForPlayer => "DUMMI_UNIONS_PLAYER",
            AxiomId::DummifyingPlayer => "DUMMIFYING_PLAYER",
            AxiomId::WeakSymmetryAmongUnions => "WEAK_SYM_UNIONS",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let wanted = s.trim().replace('-', "_");
        AxiomId::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(&wanted)).ok_or_else(|| {
            let names: Vec<_> = AxiomId::ALL.iter().map(|a| a.name().to_ascii_lowercase()).collect();
            format!("unknown axiom '{s}' (expected one of {})", names.join(", "))
        })
    }
}

/// The axioms that single out `value` among all values. Empty for the flat
/// values, which are not characterized here.
pub fn characterization(value: ValueId) -> &'static [AxiomId] {
    use AxiomId::*;
    match value {
        ValueId::Led => &[Efficiency, Additivity, SymmetryAmongUnions, NullifyingPlayer],
        ValueId::Lesd1 => &[Efficiency, Additivity, SymmetryAmongUnions, DummifyingLevelNullifying],
        ValueId::Lesd2 => &[Efficiency, Additivity, SymmetryAmongUnions, DummifyingUnionsForPlayer],
        ValueId::Lesd3 => &[Efficiency, Additivity, WeakSymmetryAmongUnions, DummifyingPlayer],
        ValueId::Ed | ValueId::Esd => &[],
    }
}

/// Anything that maps level games to allocations.
pub trait LevelValue: Sync {
    fn name(&self) -> String;
    fn allocate(&self, game: &LevelGame) -> Result<Allocation>;
}

impl LevelValue for ValueId {
    fn name(&self) -> String {
        ValueId::name(*self).to_string()
    }

    fn allocate(&self, game: &LevelGame) -> Result<Allocation> {
        compute(*self, game)
    }
}

/// A named closure usable wherever a [`LevelValue`] is expected.
pub struct FnValue<F> {
    name: String,
    f: F,
}

impl<F> FnValue<F>
where
    F: Fn(&LevelGame) -> Result<Allocation> + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnValue { name: name.into(), f }
    }
}

impl<F> LevelValue for FnValue<F>
where
    F: Fn(&LevelGame) -> Result<Allocation> + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn allocate(&self, game: &LevelGame) -> Result<Allocation> {
        (self.f)(game)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One violated instance of an axiom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub game_digest: String,
    pub level: Option<usize>,
    pub players: Vec<PlayerId>,
    pub unions: Vec<Coalition>,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub value: String,
    pub verdict: Verdict,
    /// Number of premise instances the check compared (0 means vacuous).
    pub instances: usize,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    fn new(axiom: AxiomId, value: &dyn LevelValue, instances: usize, witnesses: Vec<Witness>) -> Self {
        let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        AxiomReport { axiom, value: value.name(), verdict, instances, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn max_gap(&self) -> f64 {
        self.witnesses.iter().map(|w| w.gap).fold(0.0, f64::max)
    }
}

/// Short content hash of a game: player count, structure and worth table.
pub fn game_digest(game: &LevelGame) -> String {
    let mut h = Sha256::new();
    h.update((game.n() as u64).to_le_bytes());
    for p in game.structure().levels() {
        h.update([0xff]);
        for b in p.blocks() {
            h.update(b.bits().to_le_bytes());
        }
    }
    h.update([0xfe]);
    for (c, w) in game.worths().entries() {
        h.update(c.bits().to_le_bytes());
        h.update(w.to_bits().to_le_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}
