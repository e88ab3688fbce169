use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard cap on players: coalitions are 64-bit masks.
pub const MAX_PLAYERS: usize = 64;

/// Zero-based player index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlayerId(pub usize);

impl PlayerId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PlayerId {
    fn from(i: usize) -> Self {
        PlayerId(i)
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// A set of players stored as a bitmask. Bit `i` is player `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The grand coalition `{0, …, n-1}`.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n >= 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: PlayerId) -> Self {
        debug_assert!(player.0 < MAX_PLAYERS);
        Coalition(1u64 << player.0)
    }

    /// Builds a coalition from zero-based indices. Panics on an index ≥ 64.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < MAX_PLAYERS, "player index {i} exceeds the 64-player limit");
            bits |= 1u64 << i;
        }
        Coalition(bits)
    }

    pub fn contains(self, player: PlayerId) -> bool {
        player.0 < MAX_PLAYERS && self.0 & (1u64 << player.0) != 0
    }

    pub fn with(self, player: PlayerId) -> Self {
        self | Coalition::singleton(player)
    }

    pub fn without(self, player: PlayerId) -> Self {
        Coalition(self.0 & !(1u64 << player.0))
    }

    pub fn minus(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<PlayerId> {
        (self.0 != 0).then(|| PlayerId(self.0.trailing_zeros() as usize))
    }

    /// Whether every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Coalition::grand(n))
    }

    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { universe: self.0, next: Some(0) }
    }

    /// Renders the coalition using caller-supplied player labels.
    pub fn display_with<S: AsRef<str>>(self, labels: &[S]) -> String {
        let names: Vec<&str> = self.members().map(|p| labels.get(p.0).map(|s| s.as_ref()).unwrap_or("?")).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl std::ops::BitOr for Coalition {
    type Output = Coalition;
    fn bitor(self, rhs: Coalition) -> Coalition {
        Coalition(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for Coalition {
    fn bitor_assign(&mut self, rhs: Coalition) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for Coalition {
    type Output = Coalition;
    fn bitand(self, rhs: Coalition) -> Coalition {
        Coalition(self.0 & rhs.0)
    }
}

impl FromIterator<PlayerId> for Coalition {
    fn from_iter<I: IntoIterator<Item = PlayerId>>(iter: I) -> Self {
        Coalition::from_indices(iter.into_iter().map(|p| p.0))
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Coalition::from_indices(iter)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the members of a coalition in increasing order.
#[derive(Debug, Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = PlayerId;

    fn next(&mut self) -> Option<PlayerId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(PlayerId(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// Submask enumeration in increasing numeric order.
#[derive(Debug, Clone)]
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            // next submask above cur
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(Coalition(cur))
    }
}
