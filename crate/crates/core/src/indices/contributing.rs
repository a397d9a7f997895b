use std::fmt;

use crate::coalition::Coalition;
use crate::distributions::{ExternalFamily, InternalFamily};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::scalar::Scalar;

use super::{coopetition, generalized_value};

/// How `S` relates to an opponent `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Contribution {
    /// `v(S ∪ T) − v(T) ≤ 0`.
    NotContributing,
    /// Contributing, and no proper subcoalition of `S` adds anything to `T`.
    Essential,
    /// Contributing, and every non-empty subcoalition already reaches `v(S ∪ T)`.
    FullyComplementary,
    Mixed,
}

impl fmt::Display for Contribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Contribution::NotContributing => "not-contributing",
            Contribution::Essential => "essential",
            Contribution::FullyComplementary => "fully-complementary",
            Contribution::Mixed => "mixed",
        })
    }
}

/// Classifies `S` against `T`. Comparisons are exact in rational mode and
/// use the float tolerance otherwise. A contributing singleton is essential.
pub fn classify_contributing<S: Scalar>(game: &Game<S>, s: Coalition, t: Coalition) -> Result<Contribution> {
    game.players().check(s)?;
    game.players().check(t)?;
    if !s.is_disjoint(t) {
        return Err(Error::NotDisjoint(s.to_string(), t.to_string()));
    }
    Ok(classify_unchecked(game, s, t))
}

fn classify_unchecked<S: Scalar>(game: &Game<S>, s: Coalition, t: Coalition) -> Contribution {
    let joint = game.v(s.union(t));
    let alone = game.v(t);
    let marginal = joint.clone() - alone.clone();
    if marginal <= S::zero() || marginal.is_close_to_zero() {
        return Contribution::NotContributing;
    }
    if s.proper_nonempty_subsets().all(|p| game.v(p.union(t)).close_to(alone)) {
        return Contribution::Essential;
    }
    if s.proper_nonempty_subsets().all(|p| game.v(p.union(t)).close_to(joint)) {
        return Contribution::FullyComplementary;
    }
    Contribution::Mixed
}

/// Verdict over all opponents where `S` contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Overall {
    NeverContributing,
    Essential,
    FullyComplementary,
    Mixed,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::NeverContributing => "never-contributing",
            Overall::Essential => "essential",
            Overall::FullyComplementary => "fully-complementary",
            Overall::Mixed => "mixed",
        })
    }
}

/// Counts of each [`Contribution`] over every `T ⊆ N ∖ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassificationSummary {
    pub not_contributing: usize,
    pub essential: usize,
    pub fully_complementary: usize,
    pub mixed: usize,
}

impl ClassificationSummary {
    pub fn contributing(&self) -> usize {
        self.essential + self.fully_complementary + self.mixed
    }

    pub fn overall(&self) -> Overall {
        match (self.contributing(), self.essential, self.fully_complementary) {
            (0, _, _) => Overall::NeverContributing,
            (k, e, _) if e == k => Overall::Essential,
            (k, _, f) if f == k => Overall::FullyComplementary,
            _ => Overall::Mixed,
        }
    }

    fn add(&mut self, c: Contribution) {
        match c {
            Contribution::NotContributing => self.not_contributing += 1,
            Contribution::Essential => self.essential += 1,
            Contribution::FullyComplementary => self.fully_complementary += 1,
            Contribution::Mixed => self.mixed += 1,
        }
    }
}

impl fmt::Display for ClassificationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (ess={} fc={} mixed={} nc={})",
            self.overall(),
            self.essential,
            self.fully_complementary,
            self.mixed,
            self.not_contributing
        )
    }
}

pub fn classify_opponents<S: Scalar>(game: &Game<S>, s: Coalition) -> Result<ClassificationSummary> {
    game.players().check(s)?;
    let mut summary = ClassificationSummary::default();
    for t in game.grand_coalition().difference(s).subsets() {
        summary.add(classify_unchecked(game, s, t));
    }
    Ok(summary)
}

/// Whether the coopetition index sits on one of its bounds `±Φ`, and
/// whether that agrees with the contributing-coalition classification.
#[derive(Debug, Clone, PartialEq)]
pub struct AttainmentReport<S> {
    pub coalition: Coalition,
    pub summary: ClassificationSummary,
    pub phi: S,
    pub coop: S,
    pub at_upper_bound: bool,
    pub at_lower_bound: bool,
    /// Essential everywhere implies `𝒞 = Φ`; fully complementary everywhere
    /// implies `𝒞 = −Φ`. False means one of those implications failed.
    pub consistent: bool,
    pub monotone: bool,
}

pub fn check_attainment<S: Scalar>(
    game: &Game<S>,
    s: Coalition,
    internal: &InternalFamily,
    external: &ExternalFamily,
) -> Result<AttainmentReport<S>> {
    let summary = classify_opponents(game, s)?;
    let coop = coopetition(game, s, internal, external)?;
    let phi = generalized_value(game, s, external)?;
    let at_upper = coop.close_to(&phi);
    let at_lower = coop.close_to(&-phi.clone());
    let consistent = match summary.overall() {
        Overall::Essential => at_upper,
        Overall::FullyComplementary => at_lower,
        _ => true,
    };
    Ok(AttainmentReport {
        coalition: s,
        summary,
        phi,
        coop,
        at_upper_bound: at_upper,
        at_lower_bound: at_lower,
        consistent,
        monotone: game.is_monotone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::PlayerSet;
    use crate::generators::{glove_game, unanimity_game, weighted_majority_game};
    use crate::scalar::{ratio, Rational};

    fn c(ix: &[usize]) -> Coalition {
        Coalition::from_indices(ix.iter().copied())
    }

    fn majority() -> Game<Rational> {
        let one = ratio(1, 1);
        weighted_majority_game(&ratio(2, 1), &[one.clone(), one.clone(), one]).unwrap()
    }

    #[test]
    fn classification_examples() {
        let carrier = c(&[0, 2]);
        let u = unanimity_game::<Rational>(&PlayerSet::numbered(4).unwrap(), carrier).unwrap();
        assert_eq!(classify_contributing(&u, carrier, Coalition::EMPTY).unwrap(), Contribution::Essential);

        let g = glove_game::<Rational>(&[0], &[1, 2]).unwrap();
        assert_eq!(
            classify_contributing(&g, c(&[1, 2]), c(&[0])).unwrap(),
            Contribution::FullyComplementary
        );
        assert_eq!(
            classify_contributing(&g, c(&[1, 2]), Coalition::EMPTY).unwrap(),
            Contribution::NotContributing
        );
        assert_eq!(
            classify_contributing(&majority(), c(&[0, 1]), Coalition::EMPTY).unwrap(),
            Contribution::Essential
        );
        assert!(classify_contributing(&g, c(&[1]), c(&[1])).is_err());
    }

    #[test]
    fn mixed_classification() {
        // v(12)=2, v(1)=1, v(2)=0: {1,2} contributes, neither pattern holds
        let g = Game::new(
            PlayerSet::numbered(2).unwrap(),
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(2, 1)],
        )
        .unwrap();
        assert_eq!(classify_contributing(&g, c(&[0, 1]), Coalition::EMPTY).unwrap(), Contribution::Mixed);
    }

    #[test]
    fn attainment_examples() {
        let (p, q) = (InternalFamily::Uniform, ExternalFamily::Uniform);
        let g = glove_game::<Rational>(&[0], &[1, 2]).unwrap();
        let r = check_attainment(&g, c(&[1, 2]), &p, &q).unwrap();
        assert_eq!(r.summary.overall(), Overall::FullyComplementary);
        assert!(r.at_lower_bound && r.consistent);

        let u = unanimity_game::<Rational>(&PlayerSet::numbered(4).unwrap(), c(&[0, 1, 2])).unwrap();
        for s in c(&[0, 1, 2]).proper_nonempty_subsets().chain([c(&[0, 1, 2])]) {
            let r = check_attainment(&u, s, &p, &ExternalFamily::Permutation).unwrap();
            assert_eq!(r.summary.overall(), Overall::Essential);
            assert!(r.at_upper_bound && r.consistent);
        }

        let r = check_attainment(&majority(), c(&[0, 1]), &p, &q).unwrap();
        assert_eq!(r.summary.overall(), Overall::Mixed);
        assert!(!r.at_upper_bound && !r.at_lower_bound);
        assert_eq!(r.phi, ratio(1, 1));
    }
}
