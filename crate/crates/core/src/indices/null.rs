use num_traits::Zero;

use crate::coalition::{enumerate_two_partitions, Coalition, TwoPartition};
use crate::distributions::{ExternalFamily, InternalFamily};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::{Rational, Scalar};

use super::coopetition;

fn require_null<S: Scalar>(game: &Game<S>, i: usize) -> Result<()> {
    if i >= game.n() {
        return Err(Error::InvalidCoalition { bits: 1 << i.min(31), n: game.n() });
    }
    if !game.is_null_player(i) {
        return Err(Error::Precondition(format!(
            "player {} is not a null player",
            game.players().label(i)
        )));
    }
    Ok(())
}

/// `𝒞({i, j})` for a null player `i`; it is always zero, and a non-zero
/// value is reported as an identity violation.
pub fn null_pair_index<S: Scalar>(
    game: &Game<S>,
    i: usize,
    j: usize,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<S> {
    require_null(game, i)?;
    if j >= game.n() || j == i {
        return Err(Error::Domain(format!("partner {j} must be another player")));
    }
    let value = coopetition(game, Coalition::singleton(i).with(j), internal, external)?;
    if !value.is_close_to_zero() {
        return Err(Error::IdentityViolated(format!(
            "coopetition of a pair with a null player is {value}"
        )));
    }
    Ok(value)
}

/// Outcome of comparing `𝒞(S ∪ i)` with `K_p·K_q·𝒞(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NullScaling<S> {
    /// Common value of the internal ratio, `None` if it varies across partitions.
    pub k_p: Option<Rational>,
    /// Common value of the external ratio, `None` if it varies across opponents.
    pub k_q: Option<Rational>,
    pub with_null: S,
    pub without_null: S,
    /// Whether both ratios are constant and `𝒞(S ∪ i) = K_p·K_q·𝒞(S)`.
    pub holds: bool,
}

impl<S> NullScaling<S> {
    pub fn factor(&self) -> Option<Rational> {
        match (&self.k_p, &self.k_q) {
            (Some(p), Some(q)) => Some(p * q),
            _ => None,
        }
    }
}

/// Returns the common value of `ratios`, or `None` if they differ or any is undefined.
fn common(ratios: impl Iterator<Item = Option<Rational>>) -> Option<Rational> {
    let mut value: Option<Rational> = None;
    for r in ratios {
        let r = r?;
        match &value {
            None => value = Some(r),
            Some(v) if *v != r => return None,
            _ => {}
        }
    }
    value
}

fn divide(num: Rational, den: Rational) -> Option<Rational> {
    (!den.is_zero()).then(|| num / den)
}

/// Checks the scaling law for adding a null player `i` to `S`.
///
/// Both ratio conditions are verified exhaustively (the internal ratio over
/// every 2-partition of `S`, the external ratio over every
/// `T ⊆ N ∖ (S ∪ i)`), so custom families get an honest verdict.
pub fn null_scaling_check<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    i: usize,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<NullScaling<S>> {
    game.players().check(s)?;
    require_null(game, i)?;
    if s.len() < 2 {
        return Err(Error::Domain("scaling law needs |S| >= 2".into()));
    }
    if s.contains(i) {
        return Err(Error::Domain("null player must lie outside S".into()));
    }
    let players = game.players();
    let joined = s.with(i);
    let lone = Coalition::singleton(i);

    let k_p = common(enumerate_two_partitions(s).into_iter().map(|pi| {
        let base = internal.probability(players, s, pi).ok()?;
        let a = TwoPartition::new(pi.first().union(lone), pi.second()).ok()?;
        let b = TwoPartition::new(pi.first(), pi.second().union(lone)).ok()?;
        let num = internal.probability(players, joined, a).ok()? + internal.probability(players, joined, b).ok()?;
        divide(num, base)
    }));

    let rest = game.grand_coalition().difference(joined);
    let k_q = common(rest.subsets().map(|t| {
        let num = external.probability(players, joined, t).ok()?;
        let den = external.probability(players, s, t).ok()? + external.probability(players, s, t.union(lone)).ok()?;
        divide(num, den)
    }));

    let with_null = coopetition(game, joined, internal, external)?;
    let without_null = coopetition(game, s, internal, external)?;
    let holds = match (&k_p, &k_q) {
        (Some(p), Some(q)) => with_null.close_to(&(S::from_rational(&(p * q)) * without_null.clone())),
        _ => false,
    };
    Ok(NullScaling {
        k_p,
        k_q,
        with_null,
        without_null,
        holds,
    })
}
