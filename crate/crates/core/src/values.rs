//! The six egalitarian values.
//!
//! ED and ESD ignore the level structure. LED and the three LESD variants
//! divide at every level by the number of direct subordinates of the union
//! containing the player.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, PlayerId};
use crate::error::{GameError, Result};
use crate::game::LevelGame;
use crate::structure::LevelStructure;
use crate::worth::CharacteristicFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ValueId {
    #[serde(rename = "ED")]
    Ed,
    #[serde(rename = "ESD")]
    Esd,
    #[serde(rename = "LED")]
    Led,
    #[serde(rename = "LESD1")]
    Lesd1,
    #[serde(rename = "LESD2")]
    Lesd2,
    #[serde(rename = "LESD3")]
    Lesd3,
}

impl ValueId {
    pub const ALL: [ValueId; 6] =
        [ValueId::Ed, ValueId::Esd, ValueId::Led, ValueId::Lesd1, ValueId::Lesd2, ValueId::Lesd3];

    /// The four values that use the level structure.
    pub const LEVEL: [ValueId; 4] = [ValueId::Led, ValueId::Lesd1, ValueId::Lesd2, ValueId::Lesd3];

    pub fn name(self) -> &'static str {
        match self {
            ValueId::Ed => "ED",
            ValueId::Esd => "ESD",
            ValueId::Led => "LED",
            ValueId::Lesd1 => "LESD1",
            ValueId::Lesd2 => "LESD2",
            ValueId::Lesd3 => "LESD3",
        }
    }
}

impl fmt::Display for ValueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ValueId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ValueId::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown value '{s}' (expected one of ed, esd, led, lesd1, lesd2, lesd3)"))
    }
}

/// Payoff vector indexed by player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<f64>);

impl Allocation {
    pub fn new(payoffs: Vec<f64>) -> Self {
        Allocation(payoffs)
    }

    pub fn zeros(n: usize) -> Self {
        Allocation(vec![0.0; n])
    }

    pub fn payoffs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Sum of payoffs over the members of `c`.
    pub fn sum_over(&self, c: Coalition) -> f64 {
        c.members().map(|p| self.0[p.0]).sum()
    }

    pub fn plus(&self, other: &Allocation) -> Allocation {
        Allocation(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, c: f64) -> Allocation {
        Allocation(self.0.iter().map(|a| a * c).collect())
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Allocation) -> f64 {
        assert_eq!(self.len(), other.len(), "allocations of different length");
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<PlayerId> for Allocation {
    type Output = f64;
    fn index(&self, i: PlayerId) -> &f64 {
        &self.0[i.0]
    }
}

impl std::ops::Index<usize> for Allocation {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// The coalitions a value reads from `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequiredCoalitions(BTreeSet<Coalition>);

impl RequiredCoalitions {
    pub fn for_value(value: ValueId, structure: &LevelStructure) -> Self {
        let n = structure.n();
        let mut set = BTreeSet::from([Coalition::grand(n)]);
        let singles = (0..n).map(|i| Coalition::singleton(PlayerId(i)));
        match value {
            ValueId::Ed | ValueId::Led => {}
            ValueId::Esd | ValueId::Lesd3 => set.extend(singles),
            ValueId::Lesd1 => set.extend(structure.levels()[structure.k()].blocks()),
            ValueId::Lesd2 => {
                for p in structure.levels() {
                    set.extend(p.blocks());
                }
            }
        }
        RequiredCoalitions(set)
    }

    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, c: Coalition) -> bool {
        self.0.contains(&c)
    }

    /// First required coalition `v` cannot resolve, if any.
    pub fn first_missing(&self, v: &CharacteristicFunction) -> Option<Coalition> {
        self.coalitions().find(|c| !v.is_defined(*c))
    }
}

/// Numeric type the formulas are evaluated in.
pub trait Scalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> Scalar for T {}

fn count<T: Scalar>(c: u64) -> T {
    T::from_u64(c).expect("denominator fits the scalar type")
}

/// Per-level worths of every block, `bw[l][b]`.
fn block_worths<T: Scalar>(
    s: &LevelStructure,
    levels: impl Iterator<Item = usize>,
    w: &impl Fn(Coalition) -> Result<T>,
) -> Result<Vec<Option<Vec<T>>>> {
    let mut out = vec![None; s.levels().len()];
    for l in levels {
        out[l] = Some(s.levels()[l].blocks().iter().map(|&b| w(b)).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

fn ed_with<T: Scalar>(n: usize, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let total = w(Coalition::grand(n))?;
    let share = total / count(n as u64);
    Ok(vec![share; n])
}

fn esd_with<T: Scalar>(n: usize, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let total = w(Coalition::grand(n))?;
    let singles = (0..n).map(|i| w(Coalition::singleton(PlayerId(i)))).collect::<Result<Vec<_>>>()?;
    let surplus = singles.iter().cloned().fold(total, |acc, x| acc - x);
    let share = surplus / count(n as u64);
    Ok(singles.into_iter().map(|x| x + share.clone()).collect())
}

fn led_with<T: Scalar>(s: &LevelStructure, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let total = w(Coalition::grand(s.n()))?;
    (0..s.n()).map(|i| Ok(total.clone() / count(s.egalitarian_denominator(PlayerId(i), 1, s.top())?))).collect()
}

fn lesd1_with<T: Scalar>(s: &LevelStructure, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let k = s.k();
    let total = w(Coalition::grand(s.n()))?;
    let top_blocks = block_worths(s, std::iter::once(k), w)?.swap_remove(k).unwrap();
    let surplus = top_blocks.iter().cloned().fold(total, |acc, x| acc - x);
    (0..s.n())
        .map(|i| {
            let p = PlayerId(i);
            let below: u64 = (1..=k).map(|l| s.fanout_of(l, p) as u64).product();
            let all = below * s.fanout_of(s.top(), p) as u64;
            let own = top_blocks[s.owner_index(k, p)].clone();
            Ok(own / count(below) + surplus.clone() / count(all))
        })
        .collect()
}

fn lesd2_with<T: Scalar>(s: &LevelStructure, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let bw: Vec<Vec<T>> = block_worths(s, 0..=s.top(), w)?.into_iter().map(Option::unwrap).collect();
    // remainder of each block over its direct subordinates
    let rem: Vec<Vec<T>> = (0..=s.top())
        .map(|l| {
            if l == 0 {
                return Vec::new();
            }
            let mut r = bw[l].clone();
            for (lb, lower) in s.levels()[l - 1].blocks().iter().enumerate() {
                let owner = s.owner_index(l, lower.first().unwrap());
                r[owner] = r[owner].clone() - bw[l - 1][lb].clone();
            }
            r
        })
        .collect();
    Ok((0..s.n())
        .map(|i| {
            let p = PlayerId(i);
            let mut payoff = bw[0][s.owner_index(0, p)].clone();
            let mut denom = 1u64;
            for l in 1..=s.top() {
                denom *= s.fanout_of(l, p) as u64;
                payoff = payoff + rem[l][s.owner_index(l, p)].clone() / count(denom);
            }
            payoff
        })
        .collect())
}

fn lesd3_with<T: Scalar>(s: &LevelStructure, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    let n = s.n();
    let total = w(Coalition::grand(n))?;
    let singles = (0..n).map(|i| w(Coalition::singleton(PlayerId(i)))).collect::<Result<Vec<_>>>()?;
    let surplus = singles.iter().cloned().fold(total, |acc, x| acc - x);
    (0..n)
        .map(|i| {
            let d = s.egalitarian_denominator(PlayerId(i), 1, s.top())?;
            Ok(singles[i].clone() + surplus.clone() / count(d))
        })
        .collect()
}

fn evaluate<T: Scalar>(value: ValueId, s: &LevelStructure, w: &impl Fn(Coalition) -> Result<T>) -> Result<Vec<T>> {
    match value {
        ValueId::Ed => ed_with(s.n(), w),
        ValueId::Esd => esd_with(s.n(), w),
        ValueId::Led => led_with(s, w),
        ValueId::Lesd1 => lesd1_with(s, w),
        ValueId::Lesd2 => lesd2_with(s, w),
        ValueId::Lesd3 => lesd3_with(s, w),
    }
}

/// Equal division: `v(N)/n` to everyone.
pub fn ed_value(n: usize, v: &CharacteristicFunction) -> Result<Allocation> {
    if n != v.n() {
        return Err(GameError::PlayerCountMismatch(n, v.n()));
    }
    ed_with(n, &|c| v.worth(c)).map(Allocation)
}

/// Equal surplus division: individual worth plus an equal share of
/// `v(N) − Σ v({j})`.
pub fn esd_value(n: usize, v: &CharacteristicFunction) -> Result<Allocation> {
    if n != v.n() {
        return Err(GameError::PlayerCountMismatch(n, v.n()));
    }
    esd_with(n, &|c| v.worth(c)).map(Allocation)
}

/// `v(N)` divided at every level among the direct subordinates.
pub fn led_value(game: &LevelGame) -> Result<Allocation> {
    led_with(game.structure(), &|c| game.worths().worth(c)).map(Allocation)
}

/// Worth of the player's level-`k` union shared down the structure, plus the
/// top-level remainder shared down the full structure.
pub fn lesd1_value(game: &LevelGame) -> Result<Allocation> {
    lesd1_with(game.structure(), &|c| game.worths().worth(c)).map(Allocation)
}

/// Individual worth plus, at every level, the remainder of the player's
/// union over its direct subordinates shared down to the player.
pub fn lesd2_value(game: &LevelGame) -> Result<Allocation> {
    lesd2_with(game.structure(), &|c| game.worths().worth(c)).map(Allocation)
}

/// Individual worth plus the global surplus shared down the full structure.
pub fn lesd3_value(game: &LevelGame) -> Result<Allocation> {
    lesd3_with(game.structure(), &|c| game.worths().worth(c)).map(Allocation)
}

fn annotate(value: ValueId, e: GameError) -> GameError {
    match e {
        GameError::MissingCoalition(coalition) => GameError::MissingForValue { value, coalition },
        other => other,
    }
}

/// Evaluates `value` on `game`. A missing worth is reported together with
/// the value that needed it.
pub fn compute(value: ValueId, game: &LevelGame) -> Result<Allocation> {
    if let Some(coalition) = RequiredCoalitions::for_value(value, game.structure()).first_missing(game.worths()) {
        return Err(GameError::MissingForValue { value, coalition });
    }
    evaluate(value, game.structure(), &|c| game.worths().worth(c)).map(Allocation).map_err(|e| annotate(value, e))
}

/// Exact rational arithmetic for games whose worths are decimal numbers.
pub type Exact = Ratio<i128>;

/// `w` as an exact fraction with a power-of-ten denominator (up to 10⁹),
/// when `w` is such a decimal.
pub fn exact_worth(w: f64) -> Option<Exact> {
    let mut scale: i128 = 1;
    for _ in 0..=9 {
        let scaled = w * scale as f64;
        if scaled.fract() == 0.0 && scaled.abs() < 9.0e15 && scaled / scale as f64 == w {
            return Some(Ratio::new(scaled as i128, scale));
        }
        scale *= 10;
    }
    None
}

/// Like [`compute`], in exact rational arithmetic. Fails with `Ok(None)`
/// when some required worth is not an exact decimal.
pub fn compute_exact(value: ValueId, game: &LevelGame) -> Result<Option<Vec<Exact>>> {
    let required = RequiredCoalitions::for_value(value, game.structure());
    if let Some(coalition) = required.first_missing(game.worths()) {
        return Err(GameError::MissingForValue { value, coalition });
    }
    for c in required.coalitions() {
        if exact_worth(game.worths().worth(c)?).is_none() {
            return Ok(None);
        }
    }
    let w = |c: Coalition| -> Result<Exact> {
        let x = game.worths().worth(c)?;
        Ok(exact_worth(x).expect("checked above"))
    };
    evaluate(value, game.structure(), &w).map(Some).map_err(|e| annotate(value, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Partition;

    fn c(ix: &[usize]) -> Coalition {
        Coalition::from_indices(ix.iter().copied())
    }

    fn approx(a: &Allocation, b: &[f64]) {
        assert!(a.max_abs_diff(&Allocation::new(b.to_vec())) <= 1e-9, "{a:?} vs {b:?}");
    }

    #[test]
    fn parse_value_ids() {
        assert_eq!("lesd2".parse::<ValueId>().unwrap(), ValueId::Lesd2);
        assert_eq!("LED".parse::<ValueId>().unwrap(), ValueId::Led);
        assert!("owen".parse::<ValueId>().is_err());
    }

    #[test]
    fn single_player_gets_everything() {
        let v = CharacteristicFunction::complete(1, vec![0.0, 7.0]).unwrap();
        let g = LevelGame::new(v.clone(), LevelStructure::trivial(1).unwrap()).unwrap();
        for id in ValueId::ALL {
            approx(&compute(id, &g).unwrap(), &[7.0]);
        }
        approx(&ed_value(1, &v).unwrap(), &[7.0]);
    }

    #[test]
    fn zero_game_gives_zero() {
        let s =
            LevelStructure::from_intermediate(3, vec![Partition::new(3, vec![c(&[0, 1]), c(&[2])]).unwrap()]).unwrap();
        let g = LevelGame::new(CharacteristicFunction::zero(3).unwrap(), s).unwrap();
        for id in ValueId::ALL {
            approx(&compute(id, &g).unwrap(), &[0.0; 3]);
        }
    }

    #[test]
    fn led_needs_only_grand_worth() {
        let s =
            LevelStructure::from_intermediate(3, vec![Partition::new(3, vec![c(&[0, 1]), c(&[2])]).unwrap()]).unwrap();
        let v = CharacteristicFunction::partial(3, [(c(&[0, 1, 2]), 12.0)]).unwrap();
        let g = LevelGame::new(v, s).unwrap();
        approx(&compute(ValueId::Led, &g).unwrap(), &[3.0, 3.0, 6.0]);
        approx(&compute(ValueId::Ed, &g).unwrap(), &[4.0, 4.0, 4.0]);
        let err = compute(ValueId::Lesd1, &g).unwrap_err();
        assert_eq!(err, GameError::MissingForValue { value: ValueId::Lesd1, coalition: c(&[0, 1]) });
        assert!(err.to_string().contains("{1,2}"));
        assert!(matches!(compute(ValueId::Lesd2, &g), Err(GameError::MissingForValue { .. })));
    }

    #[test]
    fn required_sets() {
        let s =
            LevelStructure::from_intermediate(3, vec![Partition::new(3, vec![c(&[0, 1]), c(&[2])]).unwrap()]).unwrap();
        let r = RequiredCoalitions::for_value(ValueId::Led, &s);
        assert_eq!(r.coalitions().collect::<Vec<_>>(), vec![c(&[0, 1, 2])]);
        let r = RequiredCoalitions::for_value(ValueId::Lesd1, &s);
        assert_eq!(r.coalitions().count(), 3);
        let r = RequiredCoalitions::for_value(ValueId::Lesd2, &s);
        assert_eq!(r.coalitions().count(), 5);
        let r = RequiredCoalitions::for_value(ValueId::Esd, &s);
        assert!(r.contains(c(&[2])) && r.contains(c(&[0])));
    }

    #[test]
    fn exact_worth_parsing() {
        assert_eq!(exact_worth(43.2), Some(Ratio::new(216, 5)));
        assert_eq!(exact_worth(-7.0), Some(Ratio::from_integer(-7)));
        assert_eq!(exact_worth(0.1), Some(Ratio::new(1, 10)));
        assert_eq!(exact_worth(std::f64::consts::PI), None);
    }
}
