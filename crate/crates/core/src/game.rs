//! TU-games as dense worth tables.

use std::sync::OnceLock;

use crate::coalition::{all_coalitions, compact, expand, Coalition, PlayerSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A transferable-utility game: one worth per coalition, `v(∅) = 0`.
///
/// Games are immutable once built. Monotonicity is computed on first request
/// and cached; it is reported, never enforced.
#[derive(Debug, Clone)]
pub struct Game<S> {
    players: PlayerSet,
    worth: Vec<S>,
    monotone: OnceLock<bool>,
}

impl<S: Scalar> PartialEq for Game<S> {
    fn eq(&self, other: &Self) -> bool {
        self.players == other.players && self.worth == other.worth
    }
}

impl<S: Scalar> Game<S> {
    /// Builds a game from a worth table indexed by coalition bits.
    pub fn new(players: PlayerSet, worth: Vec<S>) -> Result<Self> {
        let expected = 1usize << players.len();
        if worth.len() != expected {
            return Err(Error::WorthTableLength {
                got: worth.len(),
                expected,
            });
        }
        if !worth[0].is_zero() {
            return Err(Error::NonZeroEmptyWorth(worth[0].to_string()));
        }
        Ok(Game {
            players,
            worth,
            monotone: OnceLock::new(),
        })
    }

    /// Builds a game by evaluating `f` on every coalition except `∅`.
    pub fn from_fn(players: PlayerSet, mut f: impl FnMut(Coalition) -> S) -> Result<Self> {
        let worth = all_coalitions(players.len())
            .map(|c| if c.is_empty() { S::zero() } else { f(c) })
            .collect();
        Game::new(players, worth)
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn grand_coalition(&self) -> Coalition {
        self.players.full()
    }

    pub fn worth_table(&self) -> &[S] {
        &self.worth
    }

    pub fn worth(&self, coalition: Coalition) -> Result<&S> {
        let c = self.players.check(coalition)?;
        Ok(&self.worth[c.bits() as usize])
    }

    /// Unchecked lookup for hot loops; callers guarantee `coalition ⊆ N`.
    #[inline]
    pub(crate) fn v(&self, coalition: Coalition) -> &S {
        &self.worth[coalition.bits() as usize]
    }

    /// `v(S ∪ T) − v(T)` for disjoint `S`, `T`.
    pub fn marginal_contribution(&self, s: Coalition, t: Coalition) -> Result<S> {
        self.players.check(s)?;
        self.players.check(t)?;
        if !s.is_disjoint(t) {
            return Err(Error::NotDisjoint(s.to_string(), t.to_string()));
        }
        Ok(self.v(s.union(t)).clone() - self.v(t).clone())
    }

    /// Whether player `i` adds nothing to any coalition not containing it.
    pub fn is_null_player(&self, i: usize) -> bool {
        if i >= self.n() {
            return false;
        }
        let others = self.grand_coalition().without(i);
        others
            .subsets()
            .all(|t| self.v(t.with(i)).close_to(self.v(t)))
    }

    pub fn null_players(&self) -> Coalition {
        Coalition::from_indices((0..self.n()).filter(|&i| self.is_null_player(i)))
    }

    /// Weak monotonicity under inclusion, checked on all `(T, T ∪ i)` pairs.
    pub fn is_monotone(&self) -> bool {
        *self.monotone.get_or_init(|| {
            (0..self.n()).all(|i| {
                self.grand_coalition()
                    .without(i)
                    .subsets()
                    .all(|t| self.v(t) <= self.v(t.with(i)))
            })
        })
    }

    /// `v^{-A}`: the game on `N ∖ A` with `v^{-A}(S) = v(S)`.
    pub fn restrict(&self, removed: Coalition) -> Result<Game<S>> {
        self.restrict_in_presence(removed, Coalition::EMPTY)
    }

    /// `v^{-A}_{∪B}`: the game on `N ∖ A` with `S ↦ v(S ∪ B) − v(B)`.
    pub fn restrict_in_presence(&self, removed: Coalition, present: Coalition) -> Result<Game<S>> {
        self.players.check(removed)?;
        if !present.is_subset_of(removed) {
            return Err(Error::NotContained {
                inner: present.to_string(),
                outer: removed.to_string(),
            });
        }
        if removed == self.grand_coalition() {
            return Err(Error::PlayerCount(0));
        }
        let players = self.players.without(removed)?;
        let base = self.v(present).clone();
        let n = self.n();
        let worth = all_coalitions(players.len())
            .map(|c| {
                let original = expand(c, removed, n);
                self.v(original.union(present)).clone() - base.clone()
            })
            .collect();
        Game::new(players, worth)
    }

    /// `α·self + β·other` on the same player set.
    pub fn linear_combination(&self, alpha: &S, other: &Game<S>, beta: &S) -> Result<Game<S>> {
        if self.players != other.players {
            return Err(Error::Precondition(
                "linear combination needs games on the same player set".into(),
            ));
        }
        let worth = self
            .worth
            .iter()
            .zip(&other.worth)
            .map(|(a, b)| alpha.clone() * a.clone() + beta.clone() * b.clone())
            .collect();
        Game::new(self.players.clone(), worth)
    }

    pub fn scale(&self, factor: &S) -> Game<S> {
        Game {
            players: self.players.clone(),
            worth: self.worth.iter().map(|w| factor.clone() * w.clone()).collect(),
            monotone: OnceLock::new(),
        }
    }

    /// Appends a null player with the given label at index `n`.
    pub fn with_null_player(&self, label: impl Into<String>) -> Result<Game<S>> {
        let players = self.players.with_player(label)?;
        let newcomer = self.n();
        let worth = all_coalitions(players.len())
            .map(|c| self.v(c.without(newcomer)).clone())
            .collect();
        Game::new(players, worth)
    }

    /// Re-indexes a coalition of this game onto `self.restrict(removed)`.
    pub fn compact_coalition(&self, coalition: Coalition, removed: Coalition) -> Coalition {
        compact(coalition, removed)
    }

    /// Converts the worth table into another numeric mode through `f`.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Game<T> {
        Game {
            players: self.players.clone(),
            worth: self.worth.iter().map(f).collect(),
            monotone: OnceLock::new(),
        }
    }
}
