//! Brute-force oracles written straight from the definitions, compared with
//! the library on small games.

use coopetition::coalition::all_coalitions;
use coopetition::generators::{random_game, seeded_monotone_game};
use coopetition::indices::{attitude, coopetition, generalized_value};
use coopetition::{Coalition, ExternalFamily, Game, InternalFamily, PlayerSet, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fact(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

fn q(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn v(game: &Game<Rational>, c: Coalition) -> Rational {
    game.worth(c).unwrap().clone()
}

/// Unordered 2-partitions as (block with the smallest member, rest).
fn partitions(s: Coalition) -> Vec<(Coalition, Coalition)> {
    let members: Vec<usize> = s.members().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << members.len()) {
        let a = Coalition::from_indices(
            members
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &i)| i),
        );
        let b = s.difference(a);
        if !a.is_empty() && !b.is_empty() && a.contains(members[0]) {
            out.push((a, b));
        }
    }
    out
}

fn p_oracle(internal: &InternalFamily, s: Coalition, a: Coalition) -> Rational {
    let n = s.len();
    match internal {
        InternalFamily::Uniform => q(BigInt::one(), (BigInt::one() << (n - 1)) - 1),
        InternalFamily::Permutation => {
            // ordered splits of a random order of S at a uniform cut point
            let r = a.len();
            q(BigInt::from(2) * fact(r) * fact(n - r), fact(n) * BigInt::from(n - 1))
        }
        InternalFamily::Custom(_) => unreachable!(),
    }
}

fn marginal(game: &Game<Rational>, s: Coalition, t: Coalition) -> Rational {
    v(game, s.union(t)) - v(game, t)
}

fn attitude_oracle(game: &Game<Rational>, internal: &InternalFamily, s: Coalition, t: Coalition) -> Rational {
    let whole = marginal(game, s, t);
    if s.len() < 2 {
        return whole;
    }
    partitions(s).into_iter().fold(whole, |acc, (a, b)| {
        acc - p_oracle(internal, s, a) * (marginal(game, a, t) + marginal(game, b, t))
    })
}

/// Average over every order of the outsiders with `S` merged into one block.
fn shapley_block_oracle(game: &Game<Rational>, s: Coalition, f: impl Fn(Coalition) -> Rational) -> Rational {
    let outsiders: Vec<usize> = game.grand_coalition().difference(s).members().collect();
    let k = outsiders.len();
    let mut order: Vec<usize> = (0..=k).collect(); // k stands for the block
    let mut total = Rational::zero();
    let mut count = 0u64;
    permute(&mut order, 0, &mut |perm| {
        let before = perm.iter().take_while(|&&x| x != k).map(|&x| outsiders[x]);
        total += f(Coalition::from_indices(before));
        count += 1;
    });
    total / Rational::from_integer(BigInt::from(count))
}

fn permute(xs: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == xs.len() {
        visit(xs);
        return;
    }
    for i in at..xs.len() {
        xs.swap(at, i);
        permute(xs, at + 1, visit);
        xs.swap(at, i);
    }
}

fn uniform_oracle(game: &Game<Rational>, s: Coalition, f: impl Fn(Coalition) -> Rational) -> Rational {
    let rest = game.grand_coalition().difference(s);
    let total = rest.subsets().fold(Rational::zero(), |acc, t| acc + f(t));
    total / Rational::from_integer(BigInt::one() << rest.len())
}

fn external_oracle(
    game: &Game<Rational>,
    external: &ExternalFamily,
    s: Coalition,
    f: impl Fn(Coalition) -> Rational,
) -> Rational {
    match external {
        ExternalFamily::Uniform => uniform_oracle(game, s, f),
        ExternalFamily::Permutation => shapley_block_oracle(game, s, f),
        _ => unreachable!(),
    }
}

fn games() -> Vec<Game<Rational>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 1..=5 {
        out.push(seeded_monotone_game(n, n as u64).unwrap());
        out.push(random_game(PlayerSet::numbered(n).unwrap(), &mut rng).unwrap());
    }
    out
}

const INTERNAL: [InternalFamily; 2] = [InternalFamily::Uniform, InternalFamily::Permutation];
const EXTERNAL: [ExternalFamily; 2] = [ExternalFamily::Uniform, ExternalFamily::Permutation];

#[test]
fn attitude_matches_definition() {
    for game in games() {
        for s in all_coalitions(game.n()).skip(1) {
            for t in game.grand_coalition().difference(s).subsets() {
                for p in &INTERNAL {
                    assert_eq!(attitude(&game, s, t, p).unwrap(), attitude_oracle(&game, p, s, t), "S={s} T={t}");
                }
            }
        }
    }
}

#[test]
fn generalized_value_matches_random_order_oracle() {
    for game in games() {
        for s in all_coalitions(game.n()).skip(1) {
            for ext in &EXTERNAL {
                let oracle = external_oracle(&game, ext, s, |t| marginal(&game, s, t));
                assert_eq!(generalized_value(&game, s, ext).unwrap(), oracle, "{} S={s}", ext.name());
            }
        }
    }
}

#[test]
fn coopetition_matches_oracle() {
    for game in games() {
        for s in all_coalitions(game.n()).skip(1) {
            for p in &INTERNAL {
                for ext in &EXTERNAL {
                    let oracle = external_oracle(&game, ext, s, |t| attitude_oracle(&game, p, s, t));
                    assert_eq!(coopetition(&game, s, p, ext).unwrap(), oracle);
                }
            }
        }
    }
}

#[test]
fn permutation_internal_weights_come_from_random_orders() {
    // p^r({A, B}) is the chance that a uniform order of S, cut at a uniform
    // interior point, puts A on one side and B on the other
    for size in 2..=5 {
        let s = Coalition::full(size);
        for (a, b) in partitions(s) {
            let mut hits = 0u64;
            let mut total = 0u64;
            let mut order: Vec<usize> = (0..size).collect();
            permute(&mut order, 0, &mut |perm| {
                for cut in 1..size {
                    total += 1;
                    let left = Coalition::from_indices(perm[..cut].iter().copied());
                    if left == a || left == b {
                        hits += 1;
                    }
                }
            });
            let empirical = q(BigInt::from(hits), BigInt::from(total));
            assert_eq!(empirical, p_oracle(&InternalFamily::Permutation, s, a));
        }
    }
}
