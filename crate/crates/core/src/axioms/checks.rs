use crate::coalition::{Coalition, PlayerId};
use crate::error::{GameError, Result};
use crate::game::LevelGame;

use super::{game_digest, AxiomId, AxiomReport, LevelValue, Witness};

fn witness(
    game: &LevelGame,
    level: Option<usize>,
    players: Vec<PlayerId>,
    unions: Vec<Coalition>,
    lhs: f64,
    rhs: f64,
) -> Witness {
    Witness { game_digest: game_digest(game), level, players, unions, lhs, rhs, gap: (lhs - rhs).abs() }
}

fn require_complete(game: &LevelGame) -> Result<()> {
    if !game.worths().is_complete() {
        return Err(GameError::Partial);
    }
    Ok(())
}

/// Payoffs sum to `v(N)`.
pub fn check_efficiency(value: &dyn LevelValue, game: &LevelGame, tol: f64) -> Result<AxiomReport> {
    let alloc = value.allocate(game)?;
    let total = alloc.total();
    let vn = game.worths().worth(game.grand())?;
    let mut ws = Vec::new();
    if (total - vn).abs() > tol {
        ws.push(witness(game, None, Vec::new(), vec![game.grand()], total, vn));
    }
    Ok(AxiomReport::new(AxiomId::Efficiency, value, 1, ws))
}

/// `g(v + w) = g(v) + g(w)` componentwise, for two games on one structure.
pub fn check_additivity(value: &dyn LevelValue, g1: &LevelGame, g2: &LevelGame, tol: f64) -> Result<AxiomReport> {
    let sum = g1.try_add(g2)?;
    let joint = value.allocate(&sum)?;
    let split = value.allocate(g1)?.plus(&value.allocate(g2)?);
    let ws = sum
        .players()
        .filter(|&i| (joint[i] - split[i]).abs() > tol)
        .map(|i| witness(&sum, None, vec![i], Vec::new(), joint[i], split[i]))
        .collect();
    Ok(AxiomReport::new(AxiomId::Additivity, value, sum.n(), ws))
}

/// Sibling unions that are indistinguishable in their quotient game receive
/// the same total. With `weak`, the check applies only to games whose
/// singleton worths are all exactly zero and passes vacuously otherwise.
pub fn check_symmetry_among_unions(
    value: &dyn LevelValue,
    game: &LevelGame,
    tol: f64,
    weak: bool,
) -> Result<AxiomReport> {
    require_complete(game)?;
    let axiom = if weak { AxiomId::WeakSymmetryAmongUnions } else { AxiomId::SymmetryAmongUnions };
    if weak {
        for i in game.players() {
            if game.worths().singleton_worth(i)? != 0.0 {
                return Ok(AxiomReport::new(axiom, value, 0, Vec::new()));
            }
        }
    }
    let alloc = value.allocate(game)?;
    let s = game.structure();
    let mut instances = 0;
    let mut ws = Vec::new();
    for l in 0..=game.k() {
        let q = game.quotient_game(l)?;
        let blocks = &q.meta_players;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let (ca, cb) = (blocks[a], blocks[b]);
                let parent = |c: Coalition| s.owner_index(l + 1, c.first().unwrap());
                if parent(ca) != parent(cb) || !q.worth.is_indistinguishable(PlayerId(a), PlayerId(b))? {
                    continue;
                }
                instances += 1;
                let (lhs, rhs) = (alloc.sum_over(ca), alloc.sum_over(cb));
                if (lhs - rhs).abs() > tol {
                    ws.push(witness(game, Some(l), Vec::new(), vec![ca, cb], lhs, rhs));
                }
            }
        }
    }
    Ok(AxiomReport::new(axiom, value, instances, ws))
}

/// Nullifying players receive zero.
pub fn check_nullifying_player(value: &dyn LevelValue, game: &LevelGame, tol: f64) -> Result<AxiomReport> {
    require_complete(game)?;
    let alloc = value.allocate(game)?;
    let mut instances = 0;
    let mut ws = Vec::new();
    for i in game.players() {
        if game.is_nullifying(i)? {
            instances += 1;
            if alloc[i].abs() > tol {
                ws.push(witness(game, None, vec![i], Vec::new(), alloc[i], 0.0));
            }
        }
    }
    Ok(AxiomReport::new(AxiomId::NullifyingPlayer, value, instances, ws))
}

/// A player who is nullifying inside its level-`k` union, where that union
/// is dummifying in the level-`k` quotient game, receives zero.
pub fn check_dummifying_level_nullifying(value: &dyn LevelValue, game: &LevelGame, tol: f64) -> Result<AxiomReport> {
    require_complete(game)?;
    let alloc = value.allocate(game)?;
    let k = game.k();
    let q = game.quotient_game(k)?;
    let mut instances = 0;
    let mut ws = Vec::new();
    for i in game.players() {
        let union = game.union_containing(k, i)?;
        let restricted = game.worths().restrict(union)?;
        let local = restricted.local_index(i).unwrap();
        if !restricted.game.is_nullifying(local)? {
            continue;
        }
        if !q.worth.is_dummifying(q.meta_index(union).unwrap())? {
            continue;
        }
        instances += 1;
        if alloc[i].abs() > tol {
            ws.push(witness(game, Some(k), vec![i], vec![union], alloc[i], 0.0));
        }
    }
    Ok(AxiomReport::new(AxiomId::DummifyingLevelNullifying, value, instances, ws))
}

/// A player whose union is dummifying in the quotient game of every level
/// `0..=k` receives its individual worth.
pub fn check_dummifying_unions_for_player(value: &dyn LevelValue, game: &LevelGame, tol: f64) -> Result<AxiomReport> {
    require_complete(game)?;
    let alloc = value.allocate(game)?;
    let quotients = (0..=game.k()).map(|l| game.quotient_game(l)).collect::<Result<Vec<_>>>()?;
    let mut instances = 0;
    let mut ws = Vec::new();
    for i in game.players() {
        let mut premise = true;
        for (l, q) in quotients.iter().enumerate() {
            let union = game.union_containing(l, i)?;
            if !q.worth.is_dummifying(q.meta_index(union).unwrap())? {
                premise = false;
                break;
            }
        }
        if !premise {
            continue;
        }
        instances += 1;
        let own = game.worths().singleton_worth(i)?;
        if (alloc[i] - own).abs() > tol {
            ws.push(witness(game, None, vec![i], Vec::new(), alloc[i], own));
        }
    }
    Ok(AxiomReport::new(AxiomId::DummifyingUnionsForPlayer, value, instances, ws))
}

/// Dummifying players receive their individual worth.
pub fn check_dummifying_player(value: &dyn LevelValue, game: &LevelGame, tol: f64) -> Result<AxiomReport> {
    require_complete(game)?;
    let alloc = value.allocate(game)?;
    let mut instances = 0;
    let mut ws = Vec::new();
    for i in game.players() {
        if game.is_dummifying(i)? {
            instances += 1;
            let own = game.worths().singleton_worth(i)?;
            if (alloc[i] - own).abs() > tol {
                ws.push(witness(game, None, vec![i], Vec::new(), alloc[i], own));
            }
        }
    }
    Ok(AxiomReport::new(AxiomId::DummifyingPlayer, value, instances, ws))
}

/// Runs one axiom. `partner` is the second game for additivity and is
/// ignored by the other axioms.
pub fn check_axiom(
    axiom: AxiomId,
    value: &dyn LevelValue,
    game: &LevelGame,
    partner: &LevelGame,
    tol: f64,
) -> Result<AxiomReport> {
    match axiom {
        AxiomId::Efficiency => check_efficiency(value, game, tol),
        AxiomId::Additivity => check_additivity(value, game, partner, tol),
        AxiomId::SymmetryAmongUnions => check_symmetry_among_unions(value, game, tol, false),
        AxiomId::WeakSymmetryAmongUnions => check_symmetry_among_unions(value, game, tol, true),
        AxiomId::NullifyingPlayer => check_nullifying_player(value, game, tol),
        AxiomId::DummifyingLevelNullifying => check_dummifying_level_nullifying(value, game, tol),
        AxiomId::DummifyingUnionsForPlayer => check_dummifying_unions_for_player(value, game, tol),
        AxiomId::DummifyingPlayer => check_dummifying_player(value, game, tol),
    }
}
