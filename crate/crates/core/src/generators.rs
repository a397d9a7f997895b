//! Game generators: unanimity, weighted majority, glove, additive and seeded
//! random games.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::{all_coalitions, Coalition, PlayerSet};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::{Rational, Scalar};

/// `u_C(S) = 1` if `S ⊇ C`, else 0.
pub fn unanimity_game<S: Scalar>(players: &PlayerSet, carrier: Coalition) -> Result<Game<S>> {
    players.check(carrier)?;
    if carrier.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    Game::from_fn(players.clone(), |s| {
        if carrier.is_subset_of(s) {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// `v(S) = 1` iff the weights in `S` reach `quota`.
pub fn weighted_majority_game<S: Scalar>(quota: &S, weights: &[S]) -> Result<Game<S>> {
    if *quota <= S::zero() {
        return Err(Error::Generator("quota must be positive".into()));
    }
    if weights.iter().any(|w| *w < S::zero()) {
        return Err(Error::Generator("weights must be non-negative".into()));
    }
    let total = weights.iter().cloned().fold(S::zero(), |a, b| a + b);
    if total < *quota {
        return Err(Error::Generator(format!(
            "quota {quota} exceeds total weight {total}"
        )));
    }
    let players = PlayerSet::numbered(weights.len())?;
    Game::from_fn(players, |s| {
        let sum = s.members().fold(S::zero(), |acc, i| acc + weights[i].clone());
        if sum >= *quota {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// `v(S) = min(|S ∩ L|, |S ∩ R|)` over players `0..n` with `n` the largest index plus one.
pub fn glove_game<S: Scalar>(left: &[usize], right: &[usize]) -> Result<Game<S>> {
    let l = Coalition::from_indices(left.iter().copied());
    let r = Coalition::from_indices(right.iter().copied());
    if !l.is_disjoint(r) {
        return Err(Error::Generator("a player cannot hold both gloves".into()));
    }
    let n = left.iter().chain(right).max().map_or(0, |m| m + 1);
    let players = PlayerSet::numbered(n)?;
    Game::from_fn(players, |s| {
        let pairs = s.intersection(l).len().min(s.intersection(r).len());
        S::from_i64(pairs as i64)
    })
}

/// `v(S) = Σ_{i∈S} w_i`.
pub fn additive_game<S: Scalar>(weights: &[S]) -> Result<Game<S>> {
    let players = PlayerSet::numbered(weights.len())?;
    Game::from_fn(players, |s| {
        s.members().fold(S::zero(), |acc, i| acc + weights[i].clone())
    })
}

fn small_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let num = rng.random_range(lo..=hi);
    let den = rng.random_range(1..=3i64);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Monotone game with i.i.d. non-negative increments:
/// `v(S) = inc(S) + max_{i∈S} v(S ∖ i)`, visited in increasing bit order
/// (a linear extension of inclusion). About half the increments are zero so
/// that ties, and hence essential and complementary coalitions, occur.
pub fn random_monotone_game<S: Scalar>(players: PlayerSet, rng: &mut impl Rng) -> Result<Game<S>> {
    let n = players.len();
    let mut worth: Vec<Rational> = vec![Rational::zero(); 1 << n];
    for c in all_coalitions(n).skip(1) {
        let floor = c
            .members()
            .map(|i| &worth[c.without(i).bits() as usize])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero);
        let increment = if rng.random_bool(0.5) {
            Rational::zero()
        } else {
            small_rational(rng, 1, 4)
        };
        worth[c.bits() as usize] = floor + increment;
    }
    Game::new(players, worth.iter().map(S::from_rational).collect())
}

/// Arbitrary (generally non-monotone) game with small signed rational worths.
pub fn random_game<S: Scalar>(players: PlayerSet, rng: &mut impl Rng) -> Result<Game<S>> {
    Game::from_fn(players, |_| S::from_rational(&small_rational(rng, -6, 6)))
}

/// Random monotone game on `n` numbered players from a fixed seed.
pub fn seeded_monotone_game<S: Scalar>(n: usize, seed: u64) -> Result<Game<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_monotone_game(PlayerSet::numbered(n)?, &mut rng)
}

/// Random rational coefficient, never zero.
pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng, -5, 5);
        if !r.is_zero() && !r.is_one() {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn unanimity_examples() {
        let p3 = PlayerSet::numbered(3).unwrap();
        let u = unanimity_game::<Rational>(&p3, Coalition::from_indices([0, 1])).unwrap();
        assert!(u.worth(Coalition::full(3)).unwrap().is_one());
        assert!(u.worth(Coalition::from_indices([0, 2])).unwrap().is_zero());
        let p1 = PlayerSet::numbered(1).unwrap();
        let u1 = unanimity_game::<Rational>(&p1, Coalition::full(1)).unwrap();
        assert!(u1.worth(Coalition::full(1)).unwrap().is_one());
        assert!(matches!(
            unanimity_game::<Rational>(&p3, Coalition::EMPTY),
            Err(Error::EmptyCarrier)
        ));
    }

    #[test]
    fn weighted_majority_examples() {
        let one = ratio(1, 1);
        let maj = weighted_majority_game(&ratio(2, 1), &[one.clone(), one.clone(), one]).unwrap();
        for c in all_coalitions(3) {
            let expected = if c.len() >= 2 { 1 } else { 0 };
            assert_eq!(maj.worth(c).unwrap(), &ratio(expected, 1));
        }
        let w: Vec<Rational> = [2, 1, 1, 1].iter().map(|&x| ratio(x, 1)).collect();
        let g = weighted_majority_game(&ratio(3, 1), &w).unwrap();
        assert!(g.worth(Coalition::from_indices([0, 1])).unwrap().is_one());
        let w: Vec<Rational> = [50, 49, 1].iter().map(|&x| ratio(x, 1)).collect();
        let g = weighted_majority_game(&ratio(51, 1), &w).unwrap();
        assert!(g.worth(Coalition::from_indices([1, 2])).unwrap().is_zero());
        assert!(g.is_monotone());
        assert!(weighted_majority_game(&ratio(200, 1), &w).is_err());
        assert!(weighted_majority_game(&ratio(0, 1), &w).is_err());
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        let a = seeded_monotone_game::<Rational>(5, 7).unwrap();
        let b = seeded_monotone_game::<Rational>(5, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_monotone());
        assert_ne!(a, seeded_monotone_game::<Rational>(5, 8).unwrap());
    }

    #[test]
    fn glove_and_additive() {
        let g = glove_game::<Rational>(&[0], &[1, 2]).unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.worth(Coalition::from_indices([0, 1])).unwrap().is_one());
        let a = additive_game(&[ratio(1, 2), ratio(3, 1)]).unwrap();
        assert_eq!(a.worth(Coalition::full(2)).unwrap(), &ratio(7, 2));
    }
}
