//! Group indices and the five axioms they may satisfy.
//!
//! Every check evaluates indices exactly over [`Rational`] games. A failed
//! check carries the first violating instance as a [`Witness`], which
//! [`AxiomVerdict::recheck`] can replay.

mod counterexamples;
mod suite;

pub use counterexamples::{counterexample_index, enpn_on_unanimity, Counterexample};
pub use suite::{independence_suite, independence_suite_with, run_axiom, Battery, SuiteReport, SuiteRow, Variant};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coalition::{compact, Coalition, PlayerSet};
use crate::combinatorics::{frac, pow2};
use crate::distributions::{ExternalFamily, InternalFamily};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::generators::{random_coefficient, random_game, unanimity_game};
use crate::indices::{coopetition, generalized_value};
use crate::scalar::Rational;

type Evaluator = dyn Fn(&Game<Rational>, Coalition) -> Result<Rational> + Send + Sync;

/// A map `(S; N, v) ↦ ξ(S; N, v)` with `ξ(∅) = 0`.
#[derive(Clone)]
pub struct GroupIndex {
    name: String,
    evaluator: Arc<Evaluator>,
}

impl fmt::Debug for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupIndex").field("name", &self.name).finish()
    }
}

impl GroupIndex {
    /// Wraps `evaluator`, which is only ever called with a non-empty coalition.
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(&Game<Rational>, Coalition) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        GroupIndex {
            name: name.into(),
            evaluator: Arc::new(evaluator),
        }
    }

    /// `𝒞_{p,q}` as a group index.
    pub fn coopetition(name: impl Into<String>, internal: InternalFamily, external: ExternalFamily) -> Self {
        GroupIndex::new(name, move |game, s| coopetition(game, s, &internal, &external))
    }

    pub fn uniform_shapley() -> Self {
        GroupIndex::coopetition("C_SU", InternalFamily::Uniform, ExternalFamily::Permutation)
    }

    pub fn shapley_owen() -> Self {
        GroupIndex::coopetition("C_SO", InternalFamily::Permutation, ExternalFamily::Permutation)
    }

    /// Generalized Shapley value `Φ_Sh`.
    pub fn shapley_value() -> Self {
        GroupIndex::new("Phi_Sh", |game, s| generalized_value(game, s, &ExternalFamily::Permutation))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(&self, game: &Game<Rational>, s: Coalition) -> Result<Rational> {
        game.players().check(s)?;
        if s.is_empty() {
            return Ok(Rational::zero());
        }
        (self.evaluator)(game, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Linearity.
    L,
    /// Symmetry over the pure bargaining game `u_N`.
    SB,
    /// External null player neutrality (also called nullity).
    EN,
    /// Internal null player contraction, uniform split.
    ICU,
    /// Internal null player contraction, permutation split.
    ICP,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::L, Axiom::SB, Axiom::EN, Axiom::ICU, Axiom::ICP];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::L => "L",
            Axiom::SB => "SB",
            Axiom::EN => "EN",
            Axiom::ICU => "ICU",
            Axiom::ICP => "ICP",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Axiom::L => "linearity",
            Axiom::SB => "symmetry over the pure bargaining game",
            Axiom::EN => "external null player neutrality (nullity)",
            Axiom::ICU => "internal null player contraction (uniform)",
            Axiom::ICP => "internal null player contraction (permutation)",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `(2^{s−1}−2)/(2^{s−1}−1)`, with `s` counting the null player.
pub fn icu_factor(s: usize) -> Rational {
    frac(pow2(s - 1) - 2, pow2(s - 1) - 1)
}

/// `(s+1)(s−2)/(s(s−1))`, with `s` counting the null player.
pub fn icp_factor(s: usize) -> Rational {
    frac(BigInt::from((s + 1) * (s - 2)), BigInt::from(s * (s - 1)))
}

/// A concrete instance on which an axiom failed.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `ξ(S; αv + βw) ≠ αξ(S; v) + βξ(S; w)`.
    Linearity {
        v: Game<Rational>,
        w: Game<Rational>,
        alpha: Rational,
        beta: Rational,
        coalition: Coalition,
        lhs: Rational,
        rhs: Rational,
    },
    /// A single-game instance; `player` is the null player for EN/ICU/ICP.
    Instance {
        game: Game<Rational>,
        coalition: Coalition,
        player: Option<usize>,
        lhs: Rational,
        rhs: Rational,
    },
}

impl Witness {
    pub fn sides(&self) -> (&Rational, &Rational) {
        match self {
            Witness::Linearity { lhs, rhs, .. } | Witness::Instance { lhs, rhs, .. } => (lhs, rhs),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Linearity {
                v,
                alpha,
                beta,
                coalition,
                lhs,
                rhs,
                ..
            } => write!(
                f,
                "n={} S={{{}}} alpha={alpha} beta={beta}: {lhs} != {rhs}",
                v.n(),
                v.players().format(*coalition)
            ),
            Witness::Instance {
                game,
                coalition,
                player,
                lhs,
                rhs,
            } => {
                write!(f, "n={} S={{{}}}", game.n(), game.players().format(*coalition))?;
                if let Some(i) = player {
                    write!(f, " null={}", game.players().label(*i))?;
                }
                write!(f, ": {lhs} != {rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// Present exactly when `holds` is false.
    pub witness: Option<Witness>,
    /// Number of equalities compared.
    pub instances: usize,
}

impl AxiomVerdict {
    fn pass(axiom: Axiom, instances: usize) -> Self {
        AxiomVerdict {
            axiom,
            holds: true,
            witness: None,
            instances,
        }
    }

    fn fail(axiom: Axiom, witness: Witness, instances: usize) -> Self {
        AxiomVerdict {
            axiom,
            holds: false,
            witness: Some(witness),
            instances,
        }
    }

    /// Recomputes both sides of the stored witness with `index`; true if the
    /// violation reproduces. A passing verdict has nothing to replay.
    pub fn recheck(&self, index: &GroupIndex) -> Result<bool> {
        let Some(witness) = &self.witness else {
            return Ok(false);
        };
        let (lhs, rhs) = match witness {
            Witness::Linearity {
                v,
                w,
                alpha,
                beta,
                coalition,
                ..
            } => linearity_sides(index, v, w, alpha, beta, *coalition)?,
            Witness::Instance {
                game,
                coalition,
                player,
                ..
            } => match (self.axiom, player) {
                (Axiom::SB, _) => (index.evaluate(game, *coalition)?, bargaining_value(game.n(), coalition.len())),
                (Axiom::EN, Some(i)) => en_sides(index, game, *coalition, *i)?,
                (Axiom::ICU, Some(i)) => contraction_sides(index, game, *coalition, *i, icu_factor)?,
                (Axiom::ICP, Some(i)) => contraction_sides(index, game, *coalition, *i, icp_factor)?,
                _ => return Err(Error::Precondition("witness does not match its axiom".into())),
            },
        };
        Ok(lhs != rhs)
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: holds ({} checks)", self.axiom, self.instances),
            Some(w) => write!(f, "{}: fails at {w}", self.axiom),
        }
    }
}

fn linearity_sides(
    index: &GroupIndex,
    v: &Game<Rational>,
    w: &Game<Rational>,
    alpha: &Rational,
    beta: &Rational,
    s: Coalition,
) -> Result<(Rational, Rational)> {
    let combined = v.linear_combination(alpha, w, beta)?;
    let lhs = index.evaluate(&combined, s)?;
    let rhs = alpha * index.evaluate(v, s)? + beta * index.evaluate(w, s)?;
    Ok((lhs, rhs))
}

/// Random pairs of games on `n` players; every other pair shares a null
/// player so that indices keyed on null players are exercised too.
fn random_pair(n: usize, trial: usize, rng: &mut ChaCha8Rng) -> Result<(Game<Rational>, Game<Rational>)> {
    if n >= 2 && trial % 2 == 1 {
        let base = PlayerSet::numbered(n - 1)?;
        let label = n.to_string();
        let v = random_game(base.clone(), rng)?.with_null_player(label.clone())?;
        let w = random_game(base, rng)?.with_null_player(label)?;
        Ok((v, w))
    } else {
        let players = PlayerSet::numbered(n)?;
        Ok((random_game(players.clone(), rng)?, random_game(players, rng)?))
    }
}

/// Checks `ξ(S; αv+βw) = αξ(S; v) + βξ(S; w)` for every `S` over `trials`
/// seeded random `(v, w, α, β)`.
pub fn check_linearity(index: &GroupIndex, n: usize, trials: usize, seed: u64) -> Result<AxiomVerdict> {
    if n == 0 || n > crate::MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    for trial in 0..trials {
        let (v, w) = random_pair(n, trial, &mut rng)?;
        let alpha = random_coefficient(&mut rng);
        let beta = random_coefficient(&mut rng);
        for s in v.grand_coalition().subsets().skip(1) {
            instances += 1;
            let (lhs, rhs) = linearity_sides(index, &v, &w, &alpha, &beta, s)?;
            if lhs != rhs {
                let witness = Witness::Linearity {
                    v,
                    w,
                    alpha,
                    beta,
                    coalition: s,
                    lhs,
                    rhs,
                };
                return Ok(AxiomVerdict::fail(Axiom::L, witness, instances));
            }
        }
    }
    Ok(AxiomVerdict::pass(Axiom::L, instances))
}

fn bargaining_value(n: usize, s: usize) -> Rational {
    frac(BigInt::from(1), BigInt::from(n - s + 1))
}

/// Checks `ξ(S; N, u_N) = 1/(n−s+1)` for every non-empty `S`.
pub fn check_sb(index: &GroupIndex, n: usize) -> Result<AxiomVerdict> {
    let players = PlayerSet::numbered(n)?;
    let game = unanimity_game::<Rational>(&players, players.full())?;
    let mut instances = 0;
    for s in game.grand_coalition().subsets().skip(1) {
        instances += 1;
        let lhs = index.evaluate(&game, s)?;
        let rhs = bargaining_value(n, s.len());
        if lhs != rhs {
            let witness = Witness::Instance {
                game,
                coalition: s,
                player: None,
                lhs,
                rhs,
            };
            return Ok(AxiomVerdict::fail(Axiom::SB, witness, instances));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::SB, instances))
}

fn require_null(game: &Game<Rational>, i: usize) -> Result<()> {
    if i >= game.n() || !game.is_null_player(i) {
        return Err(Error::Precondition(format!("player index {i} is not a null player")));
    }
    if game.n() < 2 {
        return Err(Error::PlayerCount(game.n()));
    }
    Ok(())
}

fn en_sides(index: &GroupIndex, game: &Game<Rational>, s: Coalition, i: usize) -> Result<(Rational, Rational)> {
    let lone = Coalition::singleton(i);
    let reduced = game.restrict(lone)?;
    let lhs = index.evaluate(game, s)?;
    let rhs = index.evaluate(&reduced, compact(s, lone))?;
    Ok((lhs, rhs))
}

/// Checks `ξ(S; N, v) = ξ(S; N∖i, v^{−i})` for every `S ⊆ N∖i`.
pub fn check_en(index: &GroupIndex, game: &Game<Rational>, i: usize) -> Result<AxiomVerdict> {
    require_null(game, i)?;
    let mut instances = 0;
    for s in game.grand_coalition().without(i).subsets().skip(1) {
        instances += 1;
        let (lhs, rhs) = en_sides(index, game, s, i)?;
        if lhs != rhs {
            let witness = Witness::Instance {
                game: game.clone(),
                coalition: s,
                player: Some(i),
                lhs,
                rhs,
            };
            return Ok(AxiomVerdict::fail(Axiom::EN, witness, instances));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::EN, instances))
}

fn contraction_sides(
    index: &GroupIndex,
    game: &Game<Rational>,
    s: Coalition,
    i: usize,
    factor: fn(usize) -> Rational,
) -> Result<(Rational, Rational)> {
    let lone = Coalition::singleton(i);
    let reduced = game.restrict(lone)?;
    let lhs = index.evaluate(game, s)?;
    let rhs = factor(s.len()) * index.evaluate(&reduced, compact(s.without(i), lone))?;
    Ok((lhs, rhs))
}

fn check_contraction(
    axiom: Axiom,
    factor: fn(usize) -> Rational,
    index: &GroupIndex,
    game: &Game<Rational>,
    s: Coalition,
    i: usize,
) -> Result<AxiomVerdict> {
    game.players().check(s)?;
    require_null(game, i)?;
    if !s.contains(i) || s.len() < 2 {
        return Err(Error::Precondition(format!(
            "{axiom} needs |S| >= 2 with the null player inside S"
        )));
    }
    let (lhs, rhs) = contraction_sides(index, game, s, i, factor)?;
    if lhs == rhs {
        return Ok(AxiomVerdict::pass(axiom, 1));
    }
    let witness = Witness::Instance {
        game: game.clone(),
        coalition: s,
        player: Some(i),
        lhs,
        rhs,
    };
    Ok(AxiomVerdict::fail(axiom, witness, 1))
}

/// Checks `ξ(S; N, v) = (2^{s−1}−2)/(2^{s−1}−1) · ξ(S∖i; N∖i, v^{−i})`.
pub fn check_icu(index: &GroupIndex, game: &Game<Rational>, s: Coalition, i: usize) -> Result<AxiomVerdict> {
    check_contraction(Axiom::ICU, icu_factor, index, game, s, i)
}

/// Checks `ξ(S; N, v) = (s+1)(s−2)/(s(s−1)) · ξ(S∖i; N∖i, v^{−i})`.
pub fn check_icp(index: &GroupIndex, game: &Game<Rational>, s: Coalition, i: usize) -> Result<AxiomVerdict> {
    check_contraction(Axiom::ICP, icp_factor, index, game, s, i)
}
