use coopetition::coalition::all_coalitions;
use coopetition::generators::{random_coefficient, random_game, random_monotone_game};
use coopetition::indices::{
    absolute_coopetition, attitude_family_coincidence, coopetition, coopetition_via_group_values,
    generalized_value, null_pair_index, null_scaling_check, null_scaling_closed_form, Preset,
};
use coopetition::mobius::{from_dividends, mobius_transform};
use coopetition::{Coalition, Game, PlayerSet, Rational, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRESETS: [Preset; 4] = [
    Preset::Banzhaf,
    Preset::ShapleyOwen,
    Preset::UniformShapley,
    Preset::PermutationBanzhaf,
];

fn monotone(n: usize, seed: u64) -> Game<Rational> {
    random_monotone_game(PlayerSet::numbered(n).unwrap(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn arbitrary(n: usize, seed: u64) -> Game<Rational> {
    random_game(PlayerSet::numbered(n).unwrap(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn coalition_in(n: usize) -> impl Strategy<Value = Coalition> {
    (1u32..(1 << n)).prop_map(Coalition::from_bits_unchecked)
}

fn game_and_coalition(max_n: usize) -> impl Strategy<Value = (usize, u64, Coalition)> {
    (1..=max_n).prop_flat_map(|n| (Just(n), any::<u64>(), coalition_in(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn singletons_coincide_with_power((n, seed, _) in game_and_coalition(6), player in 0usize..6) {
        let game = arbitrary(n, seed);
        let s = Coalition::singleton(player % n);
        for preset in PRESETS {
            let (p, q) = preset.families();
            prop_assert_eq!(coopetition(&game, s, &p, &q).unwrap(), generalized_value(&game, s, &q).unwrap());
        }
    }

    #[test]
    fn monotone_games_respect_bounds((n, seed, s) in game_and_coalition(6)) {
        let game = monotone(n, seed);
        prop_assert!(game.is_monotone());
        for preset in PRESETS {
            let (p, q) = preset.families();
            let coop = coopetition(&game, s, &p, &q).unwrap();
            let phi = generalized_value(&game, s, &q).unwrap();
            prop_assert!(phi >= Rational::zero());
            prop_assert!(-phi.clone() <= coop && coop <= phi);
            let abs = absolute_coopetition(&game, s, &p, &q).unwrap();
            prop_assert!(abs.abs_value() <= Rational::one());
        }
    }

    #[test]
    fn coopetition_is_linear((n, seed, s) in game_and_coalition(5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (v, w) = (arbitrary(n, seed), arbitrary(n, seed.wrapping_add(1)));
        let (a, b) = (random_coefficient(&mut rng), random_coefficient(&mut rng));
        let mix = v.linear_combination(&a, &w, &b).unwrap();
        for preset in PRESETS {
            let (p, q) = preset.families();
            let lhs = coopetition(&mix, s, &p, &q).unwrap();
            let rhs = a.clone() * coopetition(&v, s, &p, &q).unwrap() + b.clone() * coopetition(&w, s, &p, &q).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mobius_round_trip((n, seed, _) in game_and_coalition(7)) {
        let game = arbitrary(n, seed);
        let back = from_dividends(game.players().clone(), &mobius_transform(&game)).unwrap();
        prop_assert_eq!(back, game);
    }

    #[test]
    fn null_player_laws((n, seed, s) in game_and_coalition(5), partner in 0usize..5) {
        let game = monotone(n, seed).with_null_player("z").unwrap();
        let null = n;
        for preset in PRESETS {
            let (p, q) = preset.families();
            prop_assert!(null_pair_index(&game, null, partner % n, &p, &q).unwrap().is_zero());
            if s.len() >= 2 {
                let r = null_scaling_check(&game, s, null, &p, &q).unwrap();
                prop_assert!(r.holds);
                prop_assert_eq!(r.factor(), null_scaling_closed_form(&p, s.len()));
            }
        }
    }

    #[test]
    fn attitudes_agree_on_small_coalitions((n, seed, s) in game_and_coalition(6)) {
        prop_assume!(s.len() <= 3);
        prop_assert!(attitude_family_coincidence(&arbitrary(n, seed), s).unwrap());
    }

    #[test]
    fn group_value_decomposition((n, seed, s) in game_and_coalition(5)) {
        prop_assume!(s.len() >= 2);
        let game = arbitrary(n, seed);
        for preset in [Preset::Banzhaf, Preset::ShapleyOwen, Preset::UniformShapley] {
            let (p, q) = preset.families();
            prop_assert_eq!(
                coopetition_via_group_values(&game, s, &p, &q).unwrap(),
                coopetition(&game, s, &p, &q).unwrap()
            );
        }
    }

    #[test]
    fn float_mode_tracks_exact((n, seed, s) in game_and_coalition(5)) {
        let game = arbitrary(n, seed);
        let float: Game<f64> = game.map_scalar(f64::from_rational);
        for preset in PRESETS {
            let (p, q) = preset.families();
            let exact = coopetition(&game, s, &p, &q).unwrap().to_f64();
            let approx = coopetition(&float, s, &p, &q).unwrap();
            prop_assert!((exact - approx).abs() <= 1e-9);
        }
    }
}

#[test]
fn every_coalition_reaches_its_bound_in_some_unanimity_game() {
    for n in 1..=4 {
        let players = PlayerSet::numbered(n).unwrap();
        for c in all_coalitions(n).skip(1) {
            let u = coopetition::generators::unanimity_game::<Rational>(&players, c).unwrap();
            for s in c.subsets().skip(1) {
                let (p, q) = Preset::Banzhaf.families();
                assert!(absolute_coopetition(&u, s, &p, &q).unwrap().is_one());
            }
        }
    }
}
