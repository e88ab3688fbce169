//! Characteristic functions, complete or partial.

use std::collections::BTreeMap;

use crate::coalition::{Coalition, PlayerId, MAX_PLAYERS};
use crate::error::{GameError, Result};

/// Largest player count for which a complete worth table is materialized.
pub const MAX_COMPLETE_PLAYERS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
enum Table {
    /// Indexed by coalition bitmask; slot 0 is the empty coalition.
    Dense(Vec<f64>),
    /// Defined coalitions only; never contains the empty coalition.
    Sparse(BTreeMap<Coalition, f64>),
}

/// A map from coalitions to worths with `v(∅) = 0`.
///
/// Complete functions resolve every coalition. Partial ones resolve only the
/// coalitions they were given and report [`GameError::MissingCoalition`] for
/// the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicFunction {
    n: usize,
    table: Table,
}

fn check_players(n: usize) -> Result<()> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if n > MAX_PLAYERS {
        return Err(GameError::TooManyPlayers(n));
    }
    Ok(())
}

fn check_dense(n: usize) -> Result<()> {
    check_players(n)?;
    if n > MAX_COMPLETE_PLAYERS {
        return Err(GameError::TooLargeForComplete(n));
    }
    Ok(())
}

impl CharacteristicFunction {
    /// Complete function from a table indexed by coalition bitmask.
    pub fn complete(n: usize, worths: Vec<f64>) -> Result<Self> {
        check_dense(n)?;
        let expected = 1usize << n;
        if worths.len() != expected {
            return Err(GameError::WrongTableSize { expected, got: worths.len() });
        }
        if worths[0] != 0.0 {
            return Err(GameError::NonzeroEmptyWorth(worths[0]));
        }
        if let Some(bad) = worths.iter().position(|w| !w.is_finite()) {
            return Err(GameError::NonFiniteWorth { coalition: Coalition::from_bits(bad as u64) });
        }
        Ok(CharacteristicFunction { n, table: Table::Dense(worths) })
    }

    /// Complete function evaluated from `f` on every nonempty coalition.
    pub fn from_fn<F: FnMut(Coalition) -> f64>(n: usize, mut f: F) -> Result<Self> {
        check_dense(n)?;
        let worths = (0..1u64 << n).map(|bits| if bits == 0 { 0.0 } else { f(Coalition::from_bits(bits)) }).collect();
        Self::complete(n, worths)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| 0.0)
    }

    /// Function defined on the listed coalitions only. If every nonempty
    /// coalition is listed (and `n` is small enough) the result is complete.
    pub fn partial<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coalition, f64)>,
    {
        check_players(n)?;
        let mut map = BTreeMap::new();
        for (c, w) in entries {
            if c.is_empty() {
                return Err(GameError::NonzeroEmptyWorth(w));
            }
            if !c.fits(n) {
                return Err(GameError::CoalitionOutOfRange { coalition: c, n });
            }
            if !w.is_finite() {
                return Err(GameError::NonFiniteWorth { coalition: c });
            }
            if map.insert(c, w).is_some() {
                return Err(GameError::DuplicateCoalition(c));
            }
        }
        if n <= MAX_COMPLETE_PLAYERS && map.len() == (1usize << n) - 1 {
            let mut worths = vec![0.0; 1 << n];
            for (c, w) in map {
                worths[c.bits() as usize] = w;
            }
            return Self::complete(n, worths);
        }
        Ok(CharacteristicFunction { n, table: Table::Sparse(map) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.table, Table::Dense(_))
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    /// Worth of `c`. The empty coalition always has worth 0.
    pub fn worth(&self, c: Coalition) -> Result<f64> {
        if !c.fits(self.n) {
            return Err(GameError::CoalitionOutOfRange { coalition: c, n: self.n });
        }
        if c.is_empty() {
            return Ok(0.0);
        }
        match &self.table {
            Table::Dense(w) => Ok(w[c.bits() as usize]),
            Table::Sparse(m) => m.get(&c).copied().ok_or(GameError::MissingCoalition(c)),
        }
    }

    pub fn is_defined(&self, c: Coalition) -> bool {
        self.worth(c).is_ok()
    }

    pub fn singleton_worth(&self, i: PlayerId) -> Result<f64> {
        self.worth(Coalition::singleton(i))
    }

    /// Defined nonempty coalitions and their worths, in bitmask order.
    pub fn entries(&self) -> Box<dyn Iterator<Item = (Coalition, f64)> + '_> {
        match &self.table {
            Table::Dense(w) => {
                Box::new(w.iter().enumerate().skip(1).map(|(b, &x)| (Coalition::from_bits(b as u64), x)))
            }
            Table::Sparse(m) => Box::new(m.iter().map(|(&c, &x)| (c, x))),
        }
    }

    pub(crate) fn dense(&self) -> Result<&[f64]> {
        match &self.table {
            Table::Dense(w) => Ok(w),
            Table::Sparse(_) => Err(GameError::Partial),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.n != other.n {
            return Err(GameError::PlayerCountMismatch(self.n, other.n));
        }
        match (&self.table, &other.table) {
            (Table::Dense(a), Table::Dense(b)) => {
                let worths = a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect();
                Self::complete(self.n, worths)
            }
            (Table::Sparse(a), Table::Sparse(b)) if a.len() == b.len() && a.keys().eq(b.keys()) => {
                let map = a.iter().zip(b.values()).map(|((&c, &x), &y)| (c, op(x, y))).collect();
                Ok(CharacteristicFunction { n: self.n, table: Table::Sparse(map) })
            }
            _ => Err(GameError::SupportMismatch),
        }
    }

    /// Pointwise sum; both operands must be defined on the same coalitions.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: f64) -> Self {
        let table = match &self.table {
            Table::Dense(w) => Table::Dense(w.iter().map(|x| x * c).collect()),
            Table::Sparse(m) => Table::Sparse(m.iter().map(|(&k, &x)| (k, x * c)).collect()),
        };
        CharacteristicFunction { n: self.n, table }
    }

    /// The additive game `S ↦ Σ_{i∈S} v({i})`.
    pub fn additive_part(&self) -> Result<Self> {
        let singles = (0..self.n).map(|i| self.singleton_worth(PlayerId(i))).collect::<Result<Vec<_>>>()?;
        Self::from_fn(self.n, |s| s.members().map(|p| singles[p.0]).sum())
    }

    /// Whether `i` and `j` are interchangeable: `v(S∪i) = v(S∪j)` for every
    /// `S ⊆ N∖{i,j}`. Worths are compared exactly.
    pub fn is_indistinguishable(&self, i: PlayerId, j: PlayerId) -> Result<bool> {
        self.check_player(i)?;
        self.check_player(j)?;
        if i == j {
            return Err(GameError::SamePlayer);
        }
        let w = self.dense()?;
        let rest = self.grand().without(i).without(j);
        let (bi, bj) = (Coalition::singleton(i), Coalition::singleton(j));
        Ok(rest.subsets().all(|s| w[(s | bi).bits() as usize] == w[(s | bj).bits() as usize]))
    }

    /// Whether every coalition containing `i` has worth 0.
    pub fn is_nullifying(&self, i: PlayerId) -> Result<bool> {
        self.check_player(i)?;
        let w = self.dense()?;
        let rest = self.grand().without(i);
        let bi = Coalition::singleton(i);
        Ok(rest.subsets().all(|s| w[(s | bi).bits() as usize] == 0.0))
    }

    /// Whether every coalition containing `i` is worth the sum of its
    /// members' individual worths.
    pub fn is_dummifying(&self, i: PlayerId) -> Result<bool> {
        self.check_player(i)?;
        let w = self.dense()?;
        let singles: Vec<f64> = (0..self.n).map(|j| w[1usize << j]).collect();
        let rest = self.grand().without(i);
        let bi = Coalition::singleton(i);
        Ok(rest.subsets().all(|s| {
            let t = s | bi;
            let additive: f64 = t.members().map(|p| singles[p.0]).sum();
            w[t.bits() as usize] == additive
        }))
    }

    /// Restriction to the players of `s`, re-indexed in increasing order.
    pub fn restrict(&self, s: Coalition) -> Result<Restriction> {
        if s.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if !s.fits(self.n) {
            return Err(GameError::CoalitionOutOfRange { coalition: s, n: self.n });
        }
        let players: Vec<PlayerId> = s.members().collect();
        let lift = |local: Coalition| -> Coalition { local.members().map(|p| players[p.0]).collect() };
        let m = players.len();
        let game = if m <= MAX_COMPLETE_PLAYERS {
            let mut worths = vec![0.0; 1 << m];
            for local in Coalition::grand(m).subsets().skip(1) {
                worths[local.bits() as usize] = self.worth(lift(local))?;
            }
            Self::complete(m, worths)?
        } else {
            // only the defined subsets carry over
            let entries: Vec<_> = self
                .entries()
                .filter(|(c, _)| c.is_subset_of(s))
                .map(|(c, w)| {
                    let local = c.members().map(|p| PlayerId(players.iter().position(|q| *q == p).unwrap())).collect();
                    (local, w)
                })
                .collect();
            Self::partial(m, entries)?
        };
        Ok(Restriction { game, players })
    }

    fn check_player(&self, i: PlayerId) -> Result<()> {
        if i.0 >= self.n {
            return Err(GameError::PlayerOutOfRange { player: i.0, n: self.n });
        }
        Ok(())
    }
}

/// A restricted game together with the map from its local players back to
/// the original ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub game: CharacteristicFunction,
    /// `players[local]` is the original id of local player `local`.
    pub players: Vec<PlayerId>,
}

impl Restriction {
    pub fn local_index(&self, original: PlayerId) -> Option<PlayerId> {
        self.players.iter().position(|p| *p == original).map(PlayerId)
    }
}
