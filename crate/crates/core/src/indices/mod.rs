//! Attitude, generalized values and coopetition indices.
//!
//! Everything here is a direct double enumeration: opponents `T ⊆ N ∖ S`
//! on the outside, sub-blocks of `S` on the inside. Per coalition that is
//! `O(2^n)` worth lookups.

mod contributing;
mod identities;
mod null;

pub use contributing::{
    check_attainment, classify_contributing, classify_opponents, AttainmentReport, ClassificationSummary,
    Contribution, Overall,
};
pub use identities::{
    attitude_family_coincidence, closed_form_unanimity, coopetition_via_group_values, partial_overlap_factor,
    partial_overlap_factor_closed_form, null_scaling_closed_form, uniform_shapley_via_decomposition, UnanimityIndex,
};
pub use null::{null_pair_index, null_scaling_check, NullScaling};

use rayon::prelude::*;

use crate::coalition::{all_coalitions, Coalition};
use crate::distributions::{ExternalFamily, ExternalWeights, InternalFamily, InternalWeights};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::Scalar;

/// The three named (internal, external) pairs, plus the unnamed fourth cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `(p^u, q^u)`
    Banzhaf,
    /// `(p^r, q^r)`
    ShapleyOwen,
    /// `(p^u, q^r)`
    UniformShapley,
    /// `(p^r, q^u)`
    PermutationBanzhaf,
}

impl Preset {
    pub fn families(self) -> (InternalFamily, ExternalFamily) {
        match self {
            Preset::Banzhaf => (InternalFamily::Uniform, ExternalFamily::Uniform),
            Preset::ShapleyOwen => (InternalFamily::Permutation, ExternalFamily::Permutation),
            Preset::UniformShapley => (InternalFamily::Uniform, ExternalFamily::Permutation),
            Preset::PermutationBanzhaf => (InternalFamily::Permutation, ExternalFamily::Uniform),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Banzhaf => "banzhaf",
            Preset::ShapleyOwen => "so",
            Preset::UniformShapley => "su",
            Preset::PermutationBanzhaf => "perm-banzhaf",
        }
    }
}

fn check_pair<S: Scalar>(game: &Game<S>, s: Coalition, t: Coalition) -> Result<()> {
    game.players().check(s)?;
    game.players().check(t)?;
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if !s.is_disjoint(t) {
        return Err(Error::NotDisjoint(s.to_string(), t.to_string()));
    }
    Ok(())
}

/// Attitude with pre-resolved internal weights (`None` for singletons).
pub(crate) fn attitude_with<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    t: Coalition,
    weights: Option<&InternalWeights<S>>,
) -> S {
    let joint = game.v(s.union(t)).clone();
    let alone = game.v(t).clone();
    match weights {
        None => joint - alone,
        Some(w) => {
            // each partition {S1, S2} appears once per block
            let split = s
                .proper_nonempty_subsets()
                .fold(S::zero(), |acc, r| acc + w.block(r) * game.v(r.union(t)).clone());
            joint + alone - split
        }
    }
}

fn internal_for<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
) -> Result<Option<InternalWeights<S>>> {
    if s.len() >= 2 {
        internal.weights(game.players(), s).map(Some)
    } else {
        Ok(None)
    }
}

/// `𝒜_p(S, T)`: the marginal contribution of `S` to `T` minus the
/// `p`-expected marginal contributions of the two blocks of a split of `S`.
pub fn attitude<S: Scalar>(game: &Game<S>, s: Coalition, t: Coalition, internal: &InternalFamily) -> Result<S> {
    check_pair(game, s, t)?;
    let weights = internal_for(game, s, internal)?;
    Ok(attitude_with(game, s, t, weights.as_ref()))
}

fn external_sum<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    weights: &ExternalWeights<S>,
    mut term: impl FnMut(Coalition) -> S,
) -> S {
    let rest = game.grand_coalition().difference(s);
    rest.subsets().fold(S::zero(), |acc, t| {
        let q = weights.opponent(t);
        if q.is_zero() {
            acc
        } else {
            acc + q * term(t)
        }
    })
}

/// `Φ_q(S) = Σ_{T⊆N∖S} q_S(T)·(v(S∪T) − v(T))`.
pub fn generalized_value<S: Scalar>(game: &Game<S>, s: Coalition, external: &ExternalFamily) -> Result<S> {
    check_pair(game, s, Coalition::EMPTY)?;
    let q = external.weights(game.players(), s)?;
    Ok(external_sum(game, s, &q, |t| {
        game.v(s.union(t)).clone() - game.v(t).clone()
    }))
}

/// Generalized Shapley value (`Φ` under `q^r`).
pub fn shapley_group_value<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<S> {
    generalized_value(game, s, &ExternalFamily::Permutation)
}

/// `𝒞_{p,q}(S) = Σ_{T⊆N∖S} q_S(T)·𝒜_p(S, T)`.
pub fn coopetition<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<S> {
    check_pair(game, s, Coalition::EMPTY)?;
    let p = internal_for(game, s, internal)?;
    let q = external.weights(game.players(), s)?;
    Ok(external_sum(game, s, &q, |t| attitude_with(game, s, t, p.as_ref())))
}

fn ratio_or_zero<S: Scalar>(coop: &S, phi: &S) -> S {
    if phi.is_close_to_zero() {
        S::zero()
    } else {
        coop.clone() / phi.clone()
    }
}

/// `𝒞 / Φ`, or exactly 0 when `Φ = 0`.
pub fn absolute_coopetition<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<S> {
    let coop = coopetition(game, s, internal, external)?;
    let phi = generalized_value(game, s, external)?;
    Ok(ratio_or_zero(&coop, &phi))
}

pub fn preset_coopetition<S: Scalar>(game: &Game<S>, s: Coalition, preset: Preset) -> Result<S> {
    let (p, q) = preset.families();
    coopetition(game, s, &p, &q)
}

/// `𝒞_{p^u, q^u}`.
pub fn banzhaf_coopetition<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<S> {
    preset_coopetition(game, s, Preset::Banzhaf)
}

/// `𝒞_{p^r, q^r}`.
pub fn shapley_owen_coopetition<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<S> {
    preset_coopetition(game, s, Preset::ShapleyOwen)
}

/// `𝒞_{p^u, q^r}`.
pub fn uniform_shapley_coopetition<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<S> {
    preset_coopetition(game, s, Preset::UniformShapley)
}

/// Power, coopetition and absolute coopetition of one coalition.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport<S> {
    pub coalition: Coalition,
    pub phi: S,
    pub coop: S,
    pub absolute: S,
    pub classification: ClassificationSummary,
    /// `|absolute| > 1`, which only non-monotone games can produce.
    pub outside_monotone_range: bool,
}

pub fn index_report<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<IndexReport<S>> {
    let coop = coopetition(game, s, internal, external)?;
    let phi = generalized_value(game, s, external)?;
    let absolute = ratio_or_zero(&coop, &phi);
    let outside = absolute.abs_value() > S::one() && !absolute.abs_value().close_to(&S::one());
    Ok(IndexReport {
        coalition: s,
        classification: classify_opponents(game, s)?,
        phi,
        coop,
        absolute,
        outside_monotone_range: outside,
    })
}

/// Reports for every non-empty coalition in increasing bit order, computed
/// on `jobs` worker threads. The order of the output does not depend on `jobs`.
pub fn index_table<S: Scalar>(
    game: &Game<S>,
    internal: &InternalFamily,
    external: &ExternalFamily,
    jobs: usize,
) -> Result<Vec<IndexReport<S>>> {
    let coalitions: Vec<Coalition> = all_coalitions(game.n()).skip(1).collect();
    index_reports(game, &coalitions, internal, external, jobs)
}

/// Reports for `coalitions`, in the given order.
pub fn index_reports<S: Scalar>(
    game: &Game<S>,
    coalitions: &[Coalition],
    internal: &InternalFamily,
    external: &ExternalFamily,
    jobs: usize,
) -> Result<Vec<IndexReport<S>>> {
    if jobs <= 1 {
        return coalitions
            .iter()
            .map(|&s| index_report(game, s, internal, external))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| {
        coalitions
            .par_iter()
            .map(|&s| index_report(game, s, internal, external))
            .collect::<Result<Vec<_>>>()
    })
}
