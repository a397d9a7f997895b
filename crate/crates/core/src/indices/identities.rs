use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coalition::{compact, enumerate_two_partitions, Coalition};
use crate::combinatorics::{binomial, factorial, frac, pow2};
use crate::distributions::{charac_holds_at, ExternalFamily, InternalFamily};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::{Rational, Scalar};

use super::{attitude, generalized_value, shapley_group_value};

/// `Φ_Sh(S) − (2^{s−1} − 1)^{-1} · Σ_{∅≠R⊊S} Φ_Sh^{−(S∖R)}(R)`.
///
/// Equals [`super::uniform_shapley_coopetition`] for `|S| ≥ 2`.
pub fn uniform_shapley_via_decomposition<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<S> {
    game.players().check(s)?;
    if s.len() < 2 {
        return Err(Error::Domain("decomposition needs a coalition of at least two players".into()));
    }
    let mut split = S::zero();
    for r in s.proper_nonempty_subsets() {
        let dropped = s.difference(r);
        let sub = game.restrict(dropped)?;
        split = split + shapley_group_value(&sub, compact(r, dropped))?;
    }
    let prefactor = S::from_rational(&frac(BigInt::one(), pow2(s.len() - 1) - 1));
    Ok(shapley_group_value(game, s)? - prefactor * split)
}

/// `Φ_q(S) − Σ_{π={S₁,S₂}} p_S(π)·(Φ^{−S₂}(S₁) + Φ^{−S₁}(S₂))`.
///
/// Requires the external family to agree with its restrictions on `S`
/// (see [`charac_holds_at`]); then it equals [`super::coopetition`].
pub fn coopetition_via_group_values<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<S> {
    game.players().check(s)?;
    if s.len() < 2 {
        return Err(Error::Domain("decomposition needs a coalition of at least two players".into()));
    }
    if !charac_holds_at(external, game.players(), s) {
        return Err(Error::Precondition(format!(
            "external family does not match its restrictions on {s}"
        )));
    }
    let mut split = S::zero();
    for pi in enumerate_two_partitions(s) {
        let p = S::from_rational(&internal.probability(game.players(), s, pi)?);
        let mut pair = S::zero();
        for (kept, dropped) in [(pi.first(), pi.second()), (pi.second(), pi.first())] {
            let sub = game.restrict(dropped)?;
            pair = pair + generalized_value(&sub, compact(kept, dropped), external)?;
        }
        split = split + p * pair;
    }
    Ok(generalized_value(game, s, external)? - split)
}

/// Whether `𝒜_{p^u}(S, T) = 𝒜_{p^r}(S, T)` for every `T ⊆ N ∖ S`.
/// Only meaningful for `|S| ≤ 3`; larger coalitions are rejected.
pub fn attitude_family_coincidence<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<bool> {
    game.players().check(s)?;
    if s.len() > 3 {
        return Err(Error::Domain(format!(
            "attitude coincidence is only claimed for |S| <= 3, got {}",
            s.len()
        )));
    }
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    for t in game.grand_coalition().difference(s).subsets() {
        let u = attitude(game, s, t, &InternalFamily::Uniform)?;
        let r = attitude(game, s, t, &InternalFamily::Permutation)?;
        if !u.close_to(&r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which coopetition index a unanimity closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnanimityIndex {
    /// Uniform Shapley, `(p^u, q^r)`.
    UniformShapley,
    /// Shapley–Owen, `(p^r, q^r)`.
    ShapleyOwen,
}

/// Closed form of the index on `u_C`:
/// 0 when `S ∩ C = ∅`; `1/(c−s+1)` when `S ⊆ C`; otherwise, with `r = |S ∩ C|`,
/// a partition factor times `1/(c−r+1)`.
pub fn closed_form_unanimity(kind: UnanimityIndex, n: usize, carrier: Coalition, s: Coalition) -> Result<Rational> {
    Coalition::from_bits(carrier.bits(), n)?;
    Coalition::from_bits(s.bits(), n)?;
    if carrier.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    let (c, s_len) = (carrier.len(), s.len());
    let r = s.intersection(carrier).len();
    if r == 0 {
        return Ok(Rational::zero());
    }
    if r == s_len {
        return Ok(frac(BigInt::one(), BigInt::from(c - s_len + 1)));
    }
    let reach = frac(BigInt::one(), BigInt::from(c - r + 1));
    let split = match kind {
        UnanimityIndex::UniformShapley => frac(pow2(s_len - 1) - pow2(s_len - r), pow2(s_len - 1) - 1),
        UnanimityIndex::ShapleyOwen => frac(
            BigInt::from((s_len + 1) * (r - 1)),
            BigInt::from((s_len - 1) * (r + 1)),
        ),
    };
    Ok(split * reach)
}

/// Direct summation of
/// `1 − 2r!(s−r)!/(s!(s−1)) − Σ_{t=1}^{s−r−1} C(s−r,t)·(t!(s−t)! + (t+r)!(s−t−r)!)/(s!(s−1))`,
/// checked against [`partial_overlap_factor_closed_form`].
pub fn partial_overlap_factor(s: usize, r: usize) -> Result<Rational> {
    if r == 0 || r >= s {
        return Err(Error::Domain(format!("need 1 <= r < s, got s={s}, r={r}")));
    }
    let denom = factorial(s) * BigInt::from(s - 1);
    let mut total = Rational::one() - frac(BigInt::from(2) * factorial(r) * factorial(s - r), denom.clone());
    for t in 1..(s - r) {
        let num = binomial(s - r, t) * (factorial(t) * factorial(s - t) + factorial(t + r) * factorial(s - t - r));
        total -= frac(num, denom.clone());
    }
    let closed = partial_overlap_factor_closed_form(s, r)?;
    if total != closed {
        return Err(Error::IdentityViolated(format!(
            "partial overlap factor at s={s}, r={r}: sum {total} != closed form {closed}"
        )));
    }
    Ok(total)
}

/// `(s+1)(r−1) / ((s−1)(r+1))`.
pub fn partial_overlap_factor_closed_form(s: usize, r: usize) -> Result<Rational> {
    if r == 0 || r >= s {
        return Err(Error::Domain(format!("need 1 <= r < s, got s={s}, r={r}")));
    }
    Ok(frac(
        BigInt::from((s + 1) * (r - 1)),
        BigInt::from((s - 1) * (r + 1)),
    ))
}

/// `1 − p({S, i})` for a null player `i` joining `S` with `|S| = s`:
/// `(2^s−2)/(2^s−1)` under `p^u`, `(s−1)(s+2)/(s(s+1))` under `p^r`.
/// `None` for custom internal families.
pub fn null_scaling_closed_form(internal: &InternalFamily, s: usize) -> Option<Rational> {
    match internal {
        InternalFamily::Uniform => Some(frac(pow2(s) - 2, pow2(s) - 1)),
        InternalFamily::Permutation => Some(frac(
            BigInt::from((s - 1) * (s + 2)),
            BigInt::from(s * (s + 1)),
        )),
        InternalFamily::Custom(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::PlayerSet;
    use crate::generators::{glove_game, seeded_monotone_game, unanimity_game};
    use crate::indices::{coopetition, uniform_shapley_coopetition};
    use crate::scalar::ratio;

    fn c(ix: &[usize]) -> Coalition {
        Coalition::from_indices(ix.iter().copied())
    }

    #[test]
    fn decomposition_examples() {
        let u12 = unanimity_game::<Rational>(&PlayerSet::numbered(3).unwrap(), c(&[0, 1])).unwrap();
        assert_eq!(uniform_shapley_via_decomposition(&u12, c(&[0, 1])).unwrap(), ratio(1, 1));
        let g = glove_game::<Rational>(&[0], &[1, 2]).unwrap();
        assert_eq!(
            uniform_shapley_via_decomposition(&g, c(&[1, 2])).unwrap(),
            uniform_shapley_coopetition(&g, c(&[1, 2])).unwrap()
        );
        let r = seeded_monotone_game::<Rational>(5, 11).unwrap();
        for s in [c(&[0, 2, 4]), c(&[1, 2, 3])] {
            assert_eq!(
                uniform_shapley_via_decomposition(&r, s).unwrap(),
                uniform_shapley_coopetition(&r, s).unwrap()
            );
        }
        assert!(uniform_shapley_via_decomposition(&g, c(&[1])).is_err());
    }

    #[test]
    fn group_value_decomposition_on_pairs() {
        // single partition: Φ(S) − Φ^{−S₂}(S₁) − Φ^{−S₁}(S₂)
        let un = unanimity_game::<Rational>(&PlayerSet::numbered(3).unwrap(), Coalition::full(3)).unwrap();
        let s = c(&[0, 2]);
        let q = ExternalFamily::Permutation;
        let manual = generalized_value(&un, s, &q).unwrap()
            - generalized_value(&un.restrict(c(&[2])).unwrap(), c(&[0]), &q).unwrap()
            - generalized_value(&un.restrict(c(&[0])).unwrap(), c(&[1]), &q).unwrap();
        let via = coopetition_via_group_values(&un, s, &InternalFamily::Permutation, &q).unwrap();
        assert_eq!(via, manual);
        assert_eq!(via, coopetition(&un, s, &InternalFamily::Permutation, &q).unwrap());
    }

    #[test]
    fn closed_form_examples() {
        use UnanimityIndex::*;
        assert_eq!(closed_form_unanimity(UniformShapley, 4, c(&[0, 1, 2]), c(&[0, 1, 3])).unwrap(), ratio(1, 3));
        assert_eq!(closed_form_unanimity(ShapleyOwen, 4, c(&[0, 1, 2]), c(&[0, 1, 3])).unwrap(), ratio(1, 3));
        for kind in [UniformShapley, ShapleyOwen] {
            assert_eq!(closed_form_unanimity(kind, 3, c(&[0, 1]), c(&[0, 2])).unwrap(), ratio(0, 1));
            assert_eq!(closed_form_unanimity(kind, 5, c(&[0, 1, 2]), c(&[1, 2])).unwrap(), ratio(1, 2));
            assert_eq!(closed_form_unanimity(kind, 5, c(&[0, 1, 2]), c(&[3, 4])).unwrap(), ratio(0, 1));
            assert!(closed_form_unanimity(kind, 3, Coalition::EMPTY, c(&[0])).is_err());
            assert!(closed_form_unanimity(kind, 3, c(&[0]), Coalition::EMPTY).is_err());
        }
    }

    #[test]
    fn partial_overlap_factorxamples() {
        assert_eq!(partial_overlap_factor(3, 2).unwrap(), ratio(2, 3));
        assert_eq!(partial_overlap_factor(2, 1).unwrap(), ratio(0, 1));
        assert_eq!(partial_overlap_factor(5, 3).unwrap(), ratio(3, 4));
        assert!(partial_overlap_factor(3, 3).is_err());
        assert!(partial_overlap_factor(3, 0).is_err());
    }

    #[test]
    fn coincidence_rejects_large_coalitions() {
        let g = seeded_monotone_game::<Rational>(5, 3).unwrap();
        assert!(attitude_family_coincidence(&g, c(&[0, 1, 2, 3])).is_err());
        assert!(attitude_family_coincidence(&g, c(&[0])).unwrap());
        assert!(attitude_family_coincidence(&g, c(&[0, 4])).unwrap());
        assert!(attitude_family_coincidence(&g, c(&[0, 1, 4])).unwrap());
    }

    #[test]
    fn scaling_closed_forms() {
        assert_eq!(null_scaling_closed_form(&InternalFamily::Uniform, 2).unwrap(), ratio(2, 3));
        assert_eq!(null_scaling_closed_form(&InternalFamily::Permutation, 2).unwrap(), ratio(2, 3));
        assert_eq!(null_scaling_closed_form(&InternalFamily::Uniform, 3).unwrap(), ratio(6, 7));
        assert_eq!(null_scaling_closed_form(&InternalFamily::Permutation, 4).unwrap(), ratio(9, 10));
    }
}
