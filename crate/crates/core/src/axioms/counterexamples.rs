//! Indices that satisfy all but one axiom.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coalition::Coalition;
use crate::combinatorics::{frac, pow2};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::mobius::nonzero_dividends;
use crate::scalar::Rational;

use super::{Axiom, GroupIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Counterexample {
    /// `ξ^L`, uniform split factor.
    LinearityUniform,
    /// `ξ^L`, permutation split factor.
    LinearityPermutation,
    /// `ξ^SB ≡ 0`.
    Symmetry,
    /// `Φ_Sh`, against ICU.
    ContractionUniform,
    /// `Φ_Sh`, against ICP.
    ContractionPermutation,
    /// `ξ^ENPN`, uniform split factor.
    NeutralityUniform,
    /// `ξ^ENPN`, permutation split factor.
    NeutralityPermutation,
}

impl Counterexample {
    pub const ALL: [Counterexample; 7] = [
        Counterexample::LinearityUniform,
        Counterexample::LinearityPermutation,
        Counterexample::Symmetry,
        Counterexample::ContractionUniform,
        Counterexample::ContractionPermutation,
        Counterexample::NeutralityUniform,
        Counterexample::NeutralityPermutation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Counterexample::LinearityUniform => "L-uniform",
            Counterexample::LinearityPermutation => "L-perm",
            Counterexample::Symmetry => "SB",
            Counterexample::ContractionUniform => "INPCU",
            Counterexample::ContractionPermutation => "INPCP",
            Counterexample::NeutralityUniform => "ENPN-uniform",
            Counterexample::NeutralityPermutation => "ENPN-perm",
        }
    }

    /// The one axiom this index is built to violate.
    pub fn designated_axiom(self) -> Axiom {
        match self {
            Counterexample::LinearityUniform | Counterexample::LinearityPermutation => Axiom::L,
            Counterexample::Symmetry => Axiom::SB,
            Counterexample::ContractionUniform => Axiom::ICU,
            Counterexample::ContractionPermutation => Axiom::ICP,
            Counterexample::NeutralityUniform | Counterexample::NeutralityPermutation => Axiom::EN,
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Counterexample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Counterexample::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown counterexample index {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Split {
    Uniform,
    Permutation,
}

/// Share of `S` that survives when only `k` of its `s` members matter:
/// `(2^{s−1}−2^{s−k})/(2^{s−1}−1)` or `(s+1)(k−1)/((s−1)(k+1))`, and 1 when `k = s`.
fn split_factor(split: Split, s: usize, k: usize) -> Rational {
    if k == s {
        return Rational::one();
    }
    match split {
        Split::Uniform => frac(pow2(s - 1) - pow2(s - k), pow2(s - 1) - 1),
        Split::Permutation => frac(
            BigInt::from((s + 1) * (k - 1)),
            BigInt::from((s - 1) * (k + 1)),
        ),
    }
}

fn reciprocal(k: usize) -> Rational {
    frac(BigInt::one(), BigInt::from(k))
}

fn xi_linearity(split: Split, game: &Game<Rational>, s: Coalition) -> Rational {
    let n = game.n();
    if n == 1 {
        return Rational::one();
    }
    let nulls = game.null_players();
    let m = nulls.len();
    let z = s.intersection(nulls).len();
    let size = s.len();
    if m == 0 {
        return reciprocal(n - size + 1);
    }
    if z == size {
        return Rational::zero();
    }
    if size == 1 {
        return reciprocal(n - m);
    }
    // k = s − z players of S are not null
    reciprocal((n - m) - (size - z) + 1) * split_factor(split, size, size - z)
}

/// `ξ^ENPN(S; N, u_C)` for non-empty `S`: zero when `S ∩ C = ∅`, otherwise
/// `1/(n−s+1)` times the split factor for `r = |S ∩ C|` (1 when `S ⊆ C`).
pub fn enpn_on_unanimity(permutation: bool, n: usize, carrier: Coalition, s: Coalition) -> Rational {
    let split = if permutation { Split::Permutation } else { Split::Uniform };
    let r = s.intersection(carrier).len();
    if r == 0 || s.is_empty() {
        return Rational::zero();
    }
    reciprocal(n - s.len() + 1) * split_factor(split, s.len(), r)
}

fn xi_neutrality(split: Split, game: &Game<Rational>, s: Coalition) -> Rational {
    let n = game.n();
    nonzero_dividends(game)
        .into_iter()
        .fold(Rational::zero(), |acc, (carrier, d)| {
            acc + d * enpn_on_unanimity(split == Split::Permutation, n, carrier, s)
        })
}

pub fn counterexample_index(kind: Counterexample) -> GroupIndex {
    let name = format!("xi^{}", kind.name());
    match kind {
        Counterexample::LinearityUniform => GroupIndex::new(name, |g, s| Ok(xi_linearity(Split::Uniform, g, s))),
        Counterexample::LinearityPermutation => {
            GroupIndex::new(name, |g, s| Ok(xi_linearity(Split::Permutation, g, s)))
        }
        Counterexample::Symmetry => GroupIndex::new(name, |_, _| Ok(Rational::zero())),
        Counterexample::ContractionUniform | Counterexample::ContractionPermutation => {
            let phi = GroupIndex::shapley_value();
            GroupIndex::new(name, move |g, s| phi.evaluate(g, s))
        }
        Counterexample::NeutralityUniform => GroupIndex::new(name, |g, s| Ok(xi_neutrality(Split::Uniform, g, s))),
        Counterexample::NeutralityPermutation => {
            GroupIndex::new(name, |g, s| Ok(xi_neutrality(Split::Permutation, g, s)))
        }
    }
}
