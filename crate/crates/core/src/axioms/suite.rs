//! The battery of games and the independence matrices.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coalition::{all_coalitions, PlayerSet};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::generators::{random_monotone_game, unanimity_game};
use crate::scalar::Rational;

use super::{
    check_en, check_icp, check_icu, check_linearity, check_sb, counterexample_index, Axiom, AxiomVerdict,
    Counterexample, GroupIndex,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Characterizes `C_SU` with {L, SB, EN, ICU}.
    Uniform,
    /// Characterizes `C_SO` with {L, SB, EN, ICP}.
    Permutation,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Uniform => "uniform",
            Variant::Permutation => "permutation",
        }
    }

    pub fn axioms(self) -> [Axiom; 4] {
        match self {
            Variant::Uniform => [Axiom::L, Axiom::SB, Axiom::EN, Axiom::ICU],
            Variant::Permutation => [Axiom::L, Axiom::SB, Axiom::EN, Axiom::ICP],
        }
    }

    pub fn counterexamples(self) -> [Counterexample; 4] {
        match self {
            Variant::Uniform => [
                Counterexample::LinearityUniform,
                Counterexample::Symmetry,
                Counterexample::NeutralityUniform,
                Counterexample::ContractionUniform,
            ],
            Variant::Permutation => [
                Counterexample::LinearityPermutation,
                Counterexample::Symmetry,
                Counterexample::NeutralityPermutation,
                Counterexample::ContractionPermutation,
            ],
        }
    }

    /// The index the four axioms single out.
    pub fn characterized_index(self) -> GroupIndex {
        match self {
            Variant::Uniform => GroupIndex::uniform_shapley(),
            Variant::Permutation => GroupIndex::shapley_owen(),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "u" => Ok(Variant::Uniform),
            "permutation" | "perm" | "p" => Ok(Variant::Permutation),
            _ => Err(Error::Domain(format!("unknown axiom variant {s:?}"))),
        }
    }
}

/// Games and sampling parameters the axioms are checked on.
#[derive(Debug, Clone)]
pub struct Battery {
    /// Games for EN/ICU/ICP; only those with a null player contribute.
    pub games: Vec<Game<Rational>>,
    /// Player counts for SB.
    pub bargaining_sizes: RangeInclusive<usize>,
    /// Player counts for L.
    pub linearity_sizes: RangeInclusive<usize>,
    pub linearity_trials: usize,
    pub seed: u64,
}

impl Battery {
    pub const DEFAULT_SEED: u64 = 20_160_617;

    /// Every unanimity game with `n ≤ max_unanimity`, plus `random_per_size`
    /// random monotone games for each `n` in `random_sizes`, each with one
    /// null player appended.
    pub fn build(
        max_unanimity: usize,
        random_sizes: RangeInclusive<usize>,
        random_per_size: usize,
        linearity_trials: usize,
        seed: u64,
    ) -> Result<Self> {
        let mut games = Vec::new();
        for n in 1..=max_unanimity {
            let players = PlayerSet::numbered(n)?;
            for carrier in all_coalitions(n).skip(1) {
                games.push(unanimity_game(&players, carrier)?);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in random_sizes {
            for _ in 0..random_per_size {
                let base: Game<Rational> = random_monotone_game(PlayerSet::numbered(n)?, &mut rng)?;
                games.push(base.with_null_player((n + 1).to_string())?);
            }
        }
        Ok(Battery {
            games,
            bargaining_sizes: 1..=max_unanimity,
            linearity_sizes: 2..=max_unanimity,
            linearity_trials,
            seed,
        })
    }

    /// Unanimity games up to 5 players, 25 random games for each of 3, 4, 5
    /// players plus a null player, and 50 linearity pairs per size.
    pub fn standard() -> Result<Self> {
        Battery::build(5, 3..=5, 25, 50, Battery::DEFAULT_SEED)
    }
}

fn first_failure(axiom: Axiom, verdicts: Vec<Result<AxiomVerdict>>) -> Result<AxiomVerdict> {
    let mut instances = 0;
    for v in verdicts {
        let v = v?;
        instances += v.instances;
        if !v.holds {
            return Ok(AxiomVerdict { instances, ..v });
        }
    }
    Ok(AxiomVerdict::pass(axiom, instances))
}

fn per_game(
    index: &GroupIndex,
    battery: &Battery,
    check: impl Fn(&GroupIndex, &Game<Rational>, usize) -> Result<AxiomVerdict> + Sync,
    axiom: Axiom,
) -> Result<AxiomVerdict> {
    let verdicts: Vec<Result<AxiomVerdict>> = battery
        .games
        .par_iter()
        .map(|game| {
            let nulls: Vec<usize> = game.null_players().members().collect();
            let results = nulls.into_iter().map(|i| check(index, game, i)).collect();
            first_failure(axiom, results)
        })
        .collect();
    first_failure(axiom, verdicts)
}

fn contraction_on_game(
    check: fn(&GroupIndex, &Game<Rational>, crate::Coalition, usize) -> Result<AxiomVerdict>,
    axiom: Axiom,
    index: &GroupIndex,
    game: &Game<Rational>,
    i: usize,
) -> Result<AxiomVerdict> {
    let results = game
        .grand_coalition()
        .subsets()
        .filter(|s| s.contains(i) && s.len() >= 2)
        .map(|s| check(index, game, s, i))
        .collect();
    first_failure(axiom, results)
}

/// Runs one axiom over the whole battery; the verdict carries the first
/// failure in battery order, independent of thread scheduling.
pub fn run_axiom(index: &GroupIndex, axiom: Axiom, battery: &Battery) -> Result<AxiomVerdict> {
    match axiom {
        Axiom::L => {
            let results = battery
                .linearity_sizes
                .clone()
                .map(|n| check_linearity(index, n, battery.linearity_trials, battery.seed ^ n as u64))
                .collect();
            first_failure(axiom, results)
        }
        Axiom::SB => {
            let results = battery.bargaining_sizes.clone().map(|n| check_sb(index, n)).collect();
            first_failure(axiom, results)
        }
        Axiom::EN => per_game(index, battery, check_en, axiom),
        Axiom::ICU => per_game(index, battery, |x, g, i| contraction_on_game(check_icu, axiom, x, g, i), axiom),
        Axiom::ICP => per_game(index, battery, |x, g, i| contraction_on_game(check_icp, axiom, x, g, i), axiom),
    }
}

/// One index against the four axioms of a variant.
#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub index: String,
    /// `None` for the characterized index, which should pass everything.
    pub expected_failure: Option<Axiom>,
    pub verdicts: Vec<AxiomVerdict>,
}

impl SuiteRow {
    /// Fails exactly the designated axiom (or nothing) and passes the rest.
    pub fn as_expected(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| v.holds != (Some(v.axiom) == self.expected_failure))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub variant: Variant,
    pub axioms: [Axiom; 4],
    pub rows: Vec<SuiteRow>,
    pub seed: u64,
    pub linearity_trials: usize,
}

impl SuiteReport {
    pub fn as_expected(&self) -> bool {
        self.rows.iter().all(SuiteRow::as_expected)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "variant {} (seed {}, {} linearity pairs per size)",
            self.variant, self.seed, self.linearity_trials
        )?;
        write!(f, "{:<18}", "index")?;
        for a in self.axioms {
            write!(f, "{:>6}", a.id())?;
        }
        writeln!(f, "  expected")?;
        for row in &self.rows {
            write!(f, "{:<18}", row.index)?;
            for v in &row.verdicts {
                write!(f, "{:>6}", if v.holds { "pass" } else { "FAIL" })?;
            }
            let expected = row.expected_failure.map_or("all pass".to_string(), |a| format!("fails {a}"));
            writeln!(f, "  {expected}{}", if row.as_expected() { "" } else { "  MISMATCH" })?;
        }
        Ok(())
    }
}

/// The characterized index and the four counterexamples of `variant`,
/// each checked against the variant's four axioms on the standard battery.
pub fn independence_suite(variant: Variant) -> Result<SuiteReport> {
    independence_suite_with(variant, &Battery::standard()?)
}

pub fn independence_suite_with(variant: Variant, battery: &Battery) -> Result<SuiteReport> {
    let axioms = variant.axioms();
    let mut entries = vec![(variant.characterized_index(), None)];
    for kind in variant.counterexamples() {
        entries.push((counterexample_index(kind), Some(kind.designated_axiom())));
    }
    let rows = entries
        .into_iter()
        .map(|(index, expected_failure)| {
            let verdicts = axioms
                .iter()
                .map(|&a| run_axiom(&index, a, battery))
                .collect::<Result<Vec<_>>>()?;
            Ok(SuiteRow {
                index: index.name().to_string(),
                expected_failure,
                verdicts,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        variant,
        axioms,
        rows,
        seed: battery.seed,
        linearity_trials: battery.linearity_trials,
    })
}
