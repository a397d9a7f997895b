//! Internal families (distributions over the 2-partitions of a coalition) and
//! external families (distributions over the subsets of its complement).
//!
//! The built-in families depend only on cardinalities, so they are defined on
//! every player set and follow a game through restriction automatically.
//! Custom families are rules over labelled player sets; a rule that has no
//! table for a restricted player set reports [`Error::MissingWeights`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coalition::{compact, enumerate_two_partitions, Coalition, PlayerSet, TwoPartition};
use crate::combinatorics::{binomial, factorial, frac, pow2};
use crate::error::{Error, Result};
use crate::scalar::{NumericMode, Rational, Scalar, FLOAT_NORMALIZATION_TOLERANCE};

/// `p^u_S(π) = 1 / (2^{s−1} − 1)`.
pub fn p_uniform(coalition: Coalition, partition: TwoPartition) -> Result<Rational> {
    check_partition(coalition, partition)?;
    Ok(p_uniform_by_size(coalition.len()))
}

/// `p^r_S({R, S∖R}) = 2·r!·(s−r)! / ((s−1)·s!)`.
pub fn p_permutation(coalition: Coalition, partition: TwoPartition) -> Result<Rational> {
    check_partition(coalition, partition)?;
    Ok(p_permutation_by_size(coalition.len(), partition.first().len()))
}

fn check_partition(coalition: Coalition, partition: TwoPartition) -> Result<()> {
    if coalition.len() < 2 {
        return Err(Error::VacuousFamily);
    }
    if partition.whole() != coalition {
        return Err(Error::NotAPartition(partition.to_string()));
    }
    Ok(())
}

fn p_uniform_by_size(s: usize) -> Rational {
    frac(BigInt::one(), pow2(s - 1) - 1)
}

fn p_permutation_by_size(s: usize, r: usize) -> Rational {
    frac(
        BigInt::from(2) * factorial(r) * factorial(s - r),
        BigInt::from(s - 1) * factorial(s),
    )
}

/// `q^u_S(T) = 1 / 2^{n−s}`.
pub fn q_uniform(n: usize, coalition: Coalition, opponent: Coalition) -> Result<Rational> {
    if !coalition.is_disjoint(opponent) {
        return Err(Error::Domain(format!(
            "opponent {opponent} overlaps coalition {coalition}"
        )));
    }
    if coalition.union(opponent).len() > n || coalition.union(opponent).bits() >> n != 0 {
        return Err(Error::InvalidCoalition {
            bits: coalition.union(opponent).bits(),
            n,
        });
    }
    Ok(q_uniform_by_size(n, coalition.len()))
}

fn q_uniform_by_size(n: usize, s: usize) -> Rational {
    frac(BigInt::one(), pow2(n - s))
}

/// `q^r_S(T) = t!·(n−s−t)! / (n−s+1)!`.
pub fn q_permutation(n: usize, s: usize, t: usize) -> Result<Rational> {
    if s > n || t > n - s {
        return Err(Error::Domain(format!(
            "opponent size {t} out of range for n={n}, s={s}"
        )));
    }
    Ok(q_permutation_by_size(n, s, t))
}

fn q_permutation_by_size(n: usize, s: usize, t: usize) -> Rational {
    frac(
        factorial(t) * factorial(n - s - t),
        factorial(n - s + 1),
    )
}

/// Custom internal distribution, queried per (player set, coalition, partition).
pub trait InternalRule: fmt::Debug + Send + Sync {
    fn weight(&self, players: &PlayerSet, coalition: Coalition, partition: TwoPartition) -> Result<Rational>;
}

/// Custom external distribution, queried per (player set, coalition, opponent).
pub trait ExternalRule: fmt::Debug + Send + Sync {
    fn weight(&self, players: &PlayerSet, coalition: Coalition, opponent: Coalition) -> Result<Rational>;
}

#[derive(Debug, Clone)]
pub enum InternalFamily {
    Uniform,
    Permutation,
    Custom(Arc<dyn InternalRule>),
}

#[derive(Debug, Clone)]
pub enum ExternalFamily {
    Uniform,
    Permutation,
    Semivalue(SemivalueWeights),
    Custom(Arc<dyn ExternalRule>),
}

impl InternalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            InternalFamily::Uniform => "uniform",
            InternalFamily::Permutation => "perm",
            InternalFamily::Custom(_) => "custom",
        }
    }

    pub fn probability(&self, players: &PlayerSet, coalition: Coalition, partition: TwoPartition) -> Result<Rational> {
        match self {
            InternalFamily::Uniform => p_uniform(coalition, partition),
            InternalFamily::Permutation => p_permutation(coalition, partition),
            InternalFamily::Custom(rule) => {
                check_partition(coalition, partition)?;
                rule.weight(players, coalition, partition)
            }
        }
    }

    /// Weight of every block `R` (both orientations) of the partitions of `coalition`.
    pub fn weights<S: Scalar>(&self, players: &PlayerSet, coalition: Coalition) -> Result<InternalWeights<S>> {
        let s = coalition.len();
        if s < 2 {
            return Err(Error::VacuousFamily);
        }
        match self {
            InternalFamily::Uniform => {
                let w = S::from_rational(&p_uniform_by_size(s));
                Ok(InternalWeights::BySize(vec![w; s]))
            }
            InternalFamily::Permutation => Ok(InternalWeights::BySize(
                (0..s)
                    .map(|r| {
                        if r == 0 {
                            S::zero()
                        } else {
                            S::from_rational(&p_permutation_by_size(s, r))
                        }
                    })
                    .collect(),
            )),
            InternalFamily::Custom(rule) => {
                let mut map = HashMap::new();
                for pi in enumerate_two_partitions(coalition) {
                    let w = S::from_rational(&rule.weight(players, coalition, pi)?);
                    map.insert(pi.first().bits(), w.clone());
                    map.insert(pi.second().bits(), w);
                }
                Ok(InternalWeights::ByBlock(map))
            }
        }
    }
}

impl ExternalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ExternalFamily::Uniform => "uniform",
            ExternalFamily::Permutation => "perm",
            ExternalFamily::Semivalue(_) => "semivalue",
            ExternalFamily::Custom(_) => "custom",
        }
    }

    pub fn probability(&self, players: &PlayerSet, coalition: Coalition, opponent: Coalition) -> Result<Rational> {
        let n = players.len();
        players.check(coalition.union(opponent))?;
        if !coalition.is_disjoint(opponent) {
            return Err(Error::Domain(format!(
                "opponent {opponent} overlaps coalition {coalition}"
            )));
        }
        let (s, t) = (coalition.len(), opponent.len());
        match self {
            ExternalFamily::Uniform => q_uniform(n, coalition, opponent),
            ExternalFamily::Permutation => q_permutation(n, s, t),
            ExternalFamily::Semivalue(w) => w.get(n, s, t),
            ExternalFamily::Custom(rule) => rule.weight(players, coalition, opponent),
        }
    }

    pub fn weights<S: Scalar>(&self, players: &PlayerSet, coalition: Coalition) -> Result<ExternalWeights<S>> {
        let n = players.len();
        let s = coalition.len();
        let by_size = |f: &dyn Fn(usize) -> Result<Rational>| -> Result<ExternalWeights<S>> {
            (0..=n - s)
                .map(|t| f(t).map(|w| S::from_rational(&w)))
                .collect::<Result<Vec<_>>>()
                .map(ExternalWeights::BySize)
        };
        match self {
            ExternalFamily::Uniform => by_size(&|_| Ok(q_uniform_by_size(n, s))),
            ExternalFamily::Permutation => by_size(&|t| Ok(q_permutation_by_size(n, s, t))),
            ExternalFamily::Semivalue(w) => by_size(&|t| w.get(n, s, t)),
            ExternalFamily::Custom(rule) => {
                let rest = players.full().difference(coalition);
                let mut map = HashMap::new();
                for t in rest.subsets() {
                    let w = rule.weight(players, coalition, t)?;
                    if !w.is_zero() {
                        map.insert(t.bits(), S::from_rational(&w));
                    }
                }
                Ok(ExternalWeights::Explicit(map))
            }
        }
    }
}

/// Internal weights resolved for one coalition.
#[derive(Debug, Clone)]
pub enum InternalWeights<S> {
    /// Indexed by the size of either block.
    BySize(Vec<S>),
    /// Keyed by block bits; both blocks of each partition are present.
    ByBlock(HashMap<u32, S>),
}

impl<S: Scalar> InternalWeights<S> {
    pub fn block(&self, block: Coalition) -> S {
        match self {
            InternalWeights::BySize(v) => v[block.len()].clone(),
            InternalWeights::ByBlock(m) => m.get(&block.bits()).cloned().unwrap_or_else(S::zero),
        }
    }
}

/// External weights resolved for one coalition.
#[derive(Debug, Clone)]
pub enum ExternalWeights<S> {
    /// Indexed by opponent size.
    BySize(Vec<S>),
    /// Keyed by opponent bits; absent entries carry zero probability.
    Explicit(HashMap<u32, S>),
}

impl<S: Scalar> ExternalWeights<S> {
    pub fn opponent(&self, t: Coalition) -> S {
        match self {
            ExternalWeights::BySize(v) => v[t.len()].clone(),
            ExternalWeights::Explicit(m) => m.get(&t.bits()).cloned().unwrap_or_else(S::zero),
        }
    }
}

/// Cardinality-only external weights `q_s^n(t)`, one table per player count.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SemivalueWeights {
    tables: BTreeMap<usize, Vec<Vec<Rational>>>,
}

impl SemivalueWeights {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `table[s][t]` for `n` players; row `s` must have `n − s + 1` entries.
    pub fn with_table(mut self, n: usize, table: Vec<Vec<Rational>>) -> Result<Self> {
        if table.len() != n + 1 || table.iter().enumerate().any(|(s, row)| row.len() != n - s + 1) {
            return Err(Error::Domain(format!("semivalue table for n={n} has the wrong shape")));
        }
        self.tables.insert(n, table);
        Ok(self)
    }

    /// Tables for every `n` in `1..=max_n` from a formula.
    pub fn from_fn(max_n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let tables = (1..=max_n)
            .map(|n| {
                let table = (0..=n)
                    .map(|s| (0..=n - s).map(|t| f(n, s, t)).collect())
                    .collect();
                (n, table)
            })
            .collect();
        SemivalueWeights { tables }
    }

    pub fn get(&self, n: usize, s: usize, t: usize) -> Result<Rational> {
        self.tables
            .get(&n)
            .and_then(|table| table.get(s))
            .and_then(|row| row.get(t))
            .cloned()
            .ok_or_else(|| Error::MissingWeights(format!("n={n}, s={s}, t={t}")))
    }

    /// First `(n, s)` whose row violates `Σ_t C(n−s, t)·q_s^n(t) = 1`.
    pub fn normalization_failure(&self) -> Option<(usize, usize, Rational)> {
        for (&n, table) in &self.tables {
            for (s, row) in table.iter().enumerate() {
                let total = row.iter().enumerate().fold(Rational::zero(), |acc, (t, q)| {
                    acc + Rational::from_integer(binomial(n - s, t)) * q
                });
                if !total.is_one() {
                    return Some((n, s, total));
                }
            }
        }
        None
    }
}

/// Label-keyed internal table: `coalition labels → (block labels → probability)`.
#[derive(Debug, Clone, Default)]
pub struct InternalTable {
    entries: HashMap<BTreeSet<String>, HashMap<BTreeSet<String>, Rational>>,
}

impl InternalTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the probability of `{block, coalition ∖ block}`.
    pub fn insert<L: AsRef<str>>(&mut self, coalition: &[L], block: &[L], probability: Rational) -> Result<()> {
        let whole: BTreeSet<String> = coalition.iter().map(|l| l.as_ref().to_string()).collect();
        let block: BTreeSet<String> = block.iter().map(|l| l.as_ref().to_string()).collect();
        if block.is_empty() || !block.is_subset(&whole) || block.len() == whole.len() {
            return Err(Error::NotAPartition(format!("{block:?} of {whole:?}")));
        }
        let other: BTreeSet<String> = whole.difference(&block).cloned().collect();
        let slot = self.entries.entry(whole).or_default();
        slot.insert(other, probability.clone());
        slot.insert(block, probability);
        Ok(())
    }
}

impl InternalRule for InternalTable {
    fn weight(&self, players: &PlayerSet, coalition: Coalition, partition: TwoPartition) -> Result<Rational> {
        let key = label_set(players, coalition);
        let table = self
            .entries
            .get(&key)
            .ok_or_else(|| Error::MissingWeights(format!("internal coalition {{{}}}", players.format(coalition))))?;
        Ok(table
            .get(&label_set(players, partition.first()))
            .cloned()
            .unwrap_or_else(Rational::zero))
    }
}

type LabelSet = BTreeSet<String>;

/// Label-keyed external table: `(ground set, coalition) → (opponent → probability)`.
/// Opponents missing from a present `(ground, coalition)` entry have probability 0.
#[derive(Debug, Clone, Default)]
pub struct ExternalTable {
    entries: HashMap<(LabelSet, LabelSet), HashMap<LabelSet, Rational>>,
}

impl ExternalTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<L: AsRef<str>>(&mut self, ground: &[L], coalition: &[L], opponent: &[L], probability: Rational) -> Result<()> {
        let to_set = |xs: &[L]| -> BTreeSet<String> { xs.iter().map(|l| l.as_ref().to_string()).collect() };
        let (ground, coalition, opponent) = (to_set(ground), to_set(coalition), to_set(opponent));
        if !coalition.is_subset(&ground) || !opponent.is_subset(&ground) || !coalition.is_disjoint(&opponent) {
            return Err(Error::Domain(format!(
                "external entry {coalition:?} vs {opponent:?} does not fit ground {ground:?}"
            )));
        }
        self.entries
            .entry((ground, coalition))
            .or_default()
            .insert(opponent, probability);
        Ok(())
    }
}

impl ExternalRule for ExternalTable {
    fn weight(&self, players: &PlayerSet, coalition: Coalition, opponent: Coalition) -> Result<Rational> {
        let ground: BTreeSet<String> = players.labels().iter().cloned().collect();
        let key = (ground, label_set(players, coalition));
        let table = self.entries.get(&key).ok_or_else(|| {
            Error::MissingWeights(format!(
                "external coalition {{{}}} on players {{{}}}",
                players.format(coalition),
                players.labels().join(",")
            ))
        })?;
        Ok(table
            .get(&label_set(players, opponent))
            .cloned()
            .unwrap_or_else(Rational::zero))
    }
}

fn label_set(players: &PlayerSet, coalition: Coalition) -> BTreeSet<String> {
    players.labels_of(coalition).into_iter().map(str::to_string).collect()
}

/// A family to validate.
#[derive(Debug, Clone, Copy)]
pub enum FamilyRef<'a> {
    Internal(&'a InternalFamily),
    External(&'a ExternalFamily),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationFailure {
    pub coalition: Coalition,
    pub total: Rational,
    /// `1 − total`.
    pub deficit: Rational,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub distributions_checked: usize,
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that every per-coalition distribution is non-negative and sums to 1
/// (exactly, or within [`FLOAT_NORMALIZATION_TOLERANCE`] in float mode).
/// Stops at the first violating coalition.
pub fn validate_family(family: FamilyRef<'_>, players: &PlayerSet, mode: NumericMode) -> ValidationReport {
    let all = (1..(1u64 << players.len())).map(|bits| Coalition::from_bits_unchecked(bits as u32));
    validate_family_on(family, players, mode, all)
}

/// [`validate_family`] restricted to the distributions of `coalitions`.
pub fn validate_family_on(
    family: FamilyRef<'_>,
    players: &PlayerSet,
    mode: NumericMode,
    coalitions: impl IntoIterator<Item = Coalition>,
) -> ValidationReport {
    let mut checked = 0;
    for coalition in coalitions {
        let probabilities: Result<Vec<Rational>> = match family {
            FamilyRef::Internal(f) => {
                if coalition.len() < 2 {
                    continue;
                }
                enumerate_two_partitions(coalition)
                    .into_iter()
                    .map(|pi| f.probability(players, coalition, pi))
                    .collect()
            }
            FamilyRef::External(f) => players
                .full()
                .difference(coalition)
                .subsets()
                .map(|t| f.probability(players, coalition, t))
                .collect(),
        };
        checked += 1;
        let fail = |total: Rational, message: String| ValidationReport {
            distributions_checked: checked,
            failure: Some(ValidationFailure {
                coalition,
                deficit: Rational::one() - &total,
                total,
                message,
            }),
        };
        let probabilities = match probabilities {
            Ok(p) => p,
            Err(e) => return fail(Rational::zero(), e.to_string()),
        };
        let total = probabilities.iter().fold(Rational::zero(), |a, b| a + b);
        if let Some(neg) = probabilities.iter().find(|p| **p < Rational::zero()) {
            return fail(total, format!("negative probability {neg}"));
        }
        let normalized = match mode {
            NumericMode::Exact => total.is_one(),
            NumericMode::Float => {
                (f64::from_rational(&total) - 1.0).abs() <= FLOAT_NORMALIZATION_TOLERANCE
            }
        };
        if !normalized {
            return fail(total.clone(), format!("probabilities sum to {total}"));
        }
    }
    ValidationReport {
        distributions_checked: checked,
        failure: None,
    }
}

/// Whether `q^N_S(T) = q^{N∖S₂}_{S₁}(T)` for every 2-partition `{S₁, S₂}` of
/// `coalition` and every `T ⊆ N ∖ S`, in both orientations.
pub fn charac_holds_at(family: &ExternalFamily, players: &PlayerSet, coalition: Coalition) -> bool {
    let rest = players.full().difference(coalition);
    enumerate_two_partitions(coalition).into_iter().all(|pi| {
        [(pi.first(), pi.second()), (pi.second(), pi.first())]
            .into_iter()
            .all(|(kept, dropped)| {
                let Ok(sub_players) = players.without(dropped) else {
                    return false;
                };
                let kept_c = compact(kept, dropped);
                rest.subsets().all(|t| {
                    match (
                        family.probability(players, coalition, t),
                        family.probability(&sub_players, kept_c, compact(t, dropped)),
                    ) {
                        (Ok(a), Ok(b)) => a == b,
                        _ => false,
                    }
                })
            })
    })
}

/// [`charac_holds_at`] for every coalition of the player set.
pub fn has_charac_property(family: &ExternalFamily, players: &PlayerSet) -> bool {
    (1..(1u64 << players.len()))
        .map(|b| Coalition::from_bits_unchecked(b as u32))
        .filter(|c| c.len() >= 2)
        .all(|c| charac_holds_at(family, players, c))
}
