//! Acceptance criteria, one pass/fail line each. Exact criteria compare
//! rationals with `==`; no tolerance is involved anywhere below.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coopetition::axioms::{independence_suite, Battery, Variant};
use coopetition::coalition::all_coalitions;
use coopetition::generators::{glove_game, random_game, seeded_monotone_game, unanimity_game};
use coopetition::indices::{
    absolute_coopetition, attitude, attitude_family_coincidence, closed_form_unanimity, coopetition,
    coopetition_via_group_values, generalized_value, partial_overlap_factor, null_pair_index, null_scaling_check,
    null_scaling_closed_form, shapley_owen_coopetition, uniform_shapley_coopetition,
    uniform_shapley_via_decomposition, Preset, UnanimityIndex,
};
use coopetition::scalar::ratio;
use coopetition::{Coalition, ExternalFamily, Game, InternalFamily, PlayerSet, Rational};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: coopetition::Error) -> String {
    e.to_string()
}

const PRESETS: [Preset; 4] = [
    Preset::Banzhaf,
    Preset::ShapleyOwen,
    Preset::UniformShapley,
    Preset::PermutationBanzhaf,
];

fn unanimity(n: usize, carrier: Coalition) -> Game<Rational> {
    unanimity_game(&PlayerSet::numbered(n).unwrap(), carrier).unwrap()
}

/// The axiom battery plus a few signed random games, all with n <= 6.
fn identity_battery() -> Vec<Game<Rational>> {
    let mut games = Battery::standard().unwrap().games;
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for n in 2..=6 {
        for _ in 0..3 {
            games.push(random_game(PlayerSet::numbered(n).unwrap(), &mut rng).unwrap());
        }
    }
    games
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for carrier in all_coalitions(n).skip(1) {
            let u = unanimity(n, carrier);
            for s in all_coalitions(n).skip(1) {
                let su = uniform_shapley_coopetition(&u, s).map_err(err)?;
                let so = shapley_owen_coopetition(&u, s).map_err(err)?;
                let su_closed = closed_form_unanimity(UnanimityIndex::UniformShapley, n, carrier, s).map_err(err)?;
                let so_closed = closed_form_unanimity(UnanimityIndex::ShapleyOwen, n, carrier, s).map_err(err)?;
                ensure(su == su_closed, || format!("C_SU n={n} C={carrier} S={s}: {su} vs {su_closed}"))?;
                ensure(so == so_closed, || format!("C_SO n={n} C={carrier} S={s}: {so} vs {so_closed}"))?;
                checked += 2;
            }
        }
    }
    Ok(format!("{checked} (game, S, index) cases equal their closed forms"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for s in 2..=12 {
        for r in 1..s {
            partial_overlap_factor(s, r).map_err(err)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (s, r) pairs, 1 <= r < s <= 12"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for k in 0..200u64 {
        let n = 2 + (k as usize % 6);
        let game = seeded_monotone_game::<Rational>(n, 1000 + k).map_err(err)?;
        ensure(game.is_monotone(), || format!("seed {k}: generator produced a non-monotone game"))?;
        for preset in PRESETS {
            let (p, q) = preset.families();
            for s in all_coalitions(n).skip(1) {
                let coop = coopetition(&game, s, &p, &q).map_err(err)?;
                let phi = generalized_value(&game, s, &q).map_err(err)?;
                let abs = absolute_coopetition(&game, s, &p, &q).map_err(err)?;
                let ctx = || format!("seed {k} n={n} {} S={s}: coop={coop} phi={phi} abs={abs}", preset.name());
                if s.len() == 1 {
                    ensure(coop == phi, ctx)?;
                } else {
                    ensure(-phi.clone() <= coop && coop <= phi, ctx)?;
                }
                ensure(-Rational::one() <= abs && abs <= Rational::one(), ctx)?;
                checked += 1;
            }
        }
    }
    Ok(format!("200 games, {checked} (game, preset, S) cases"))
}

fn criterion_4() -> Outcome {
    let pairs = [
        (InternalFamily::Uniform, ExternalFamily::Permutation),
        (InternalFamily::Uniform, ExternalFamily::Uniform),
        (InternalFamily::Permutation, ExternalFamily::Permutation),
    ];
    let games = identity_battery();
    let mut checked = 0;
    for game in &games {
        for s in all_coalitions(game.n()).skip(1).filter(|s| s.len() >= 2) {
            let direct = uniform_shapley_coopetition(game, s).map_err(err)?;
            let via = uniform_shapley_via_decomposition(game, s).map_err(err)?;
            ensure(direct == via, || format!("C_SU decomposition n={} S={s}: {direct} vs {via}", game.n()))?;
            for (p, q) in &pairs {
                let direct = coopetition(game, s, p, q).map_err(err)?;
                let via = coopetition_via_group_values(game, s, p, q).map_err(err)?;
                ensure(direct == via, || {
                    format!("({}, {}) n={} S={s}: {direct} vs {via}", p.name(), q.name(), game.n())
                })?;
            }
            checked += 4;
        }
    }
    Ok(format!("{} games, {checked} identity evaluations", games.len()))
}

fn criterion_5() -> Outcome {
    let mut pair_checks = 0;
    for game in Battery::standard().map_err(err)?.games {
        for i in game.null_players().members() {
            for j in (0..game.n()).filter(|&j| j != i) {
                for preset in PRESETS {
                    let (p, q) = preset.families();
                    let v = null_pair_index(&game, i, j, &p, &q).map_err(err)?;
                    ensure(v.is_zero(), || format!("pair with null {i}: {v}"))?;
                    pair_checks += 1;
                }
            }
        }
    }
    let mut scaling_checks = 0;
    for seed in 0..3u64 {
        let base = seeded_monotone_game::<Rational>(6, 77 + seed).map_err(err)?;
        let game = base.with_null_player("7").map_err(err)?;
        for size in 2..=6 {
            let mut nonvacuous = false;
            for s in all_coalitions(6).filter(|c| c.len() == size) {
                for preset in PRESETS {
                    let (p, q) = preset.families();
                    let expected = null_scaling_closed_form(&p, size).expect("built-in family");
                    let r = null_scaling_check(&game, s, 6, &p, &q).map_err(err)?;
                    ensure(r.factor().as_ref() == Some(&expected) && r.holds, || {
                        format!(
                            "{} s={size} S={s}: factor {:?} expected {expected}, holds={}",
                            preset.name(),
                            r.factor().map(|f| f.to_string()),
                            r.holds
                        )
                    })?;
                    nonvacuous |= !r.without_null.is_zero();
                    scaling_checks += 1;
                }
            }
            ensure(nonvacuous, || format!("seed {seed}: every s={size} case was 0 = 0"))?;
        }
    }
    Ok(format!(
        "{pair_checks} null-pair cases are 0; {scaling_checks} scaling cases match (2^s-2)/(2^s-1) and (s-1)(s+2)/(s(s+1)) for 2 <= s <= 6"
    ))
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    for variant in [Variant::Uniform, Variant::Permutation] {
        let report = independence_suite(variant).map_err(err)?;
        ensure(report.as_expected(), || format!("{report}"))?;
        ensure(report.rows.len() == 5, || format!("{} rows", report.rows.len()))?;
        lines.push(format!("{variant}: characterized index passes, 4 counterexamples fail only their axiom"));
    }
    Ok(lines.join("; "))
}

fn criterion_7() -> Outcome {
    let games = identity_battery();
    let mut checked = 0;
    for game in &games {
        for s in all_coalitions(game.n()).skip(1).filter(|s| s.len() <= 3) {
            ensure(attitude_family_coincidence(game, s).map_err(err)?, || {
                format!("attitudes differ for n={} S={s}", game.n())
            })?;
            checked += 1;
        }
    }
    // search for the smallest unanimity game separating the two families at |S| = 4
    let mut found = None;
    'search: for carrier in all_coalitions(4).skip(1) {
        let u = unanimity(4, carrier);
        let s = Coalition::full(4);
        let a_u = attitude(&u, s, Coalition::EMPTY, &InternalFamily::Uniform).map_err(err)?;
        let a_r = attitude(&u, s, Coalition::EMPTY, &InternalFamily::Permutation).map_err(err)?;
        if a_u != a_r {
            found = Some((carrier, a_u, a_r));
            break 'search;
        }
    }
    let (carrier, a_u, a_r) = found.ok_or("no |S| = 4 counterexample found")?;
    let documented = unanimity(4, Coalition::from_indices([0, 1]));
    let full = Coalition::full(4);
    ensure(
        attitude(&documented, full, Coalition::EMPTY, &InternalFamily::Uniform).map_err(err)? == ratio(4, 7)
            && attitude(&documented, full, Coalition::EMPTY, &InternalFamily::Permutation).map_err(err)?
                == ratio(5, 9),
        || "documented counterexample u_{1,2}, S=N, T=∅ no longer gives 4/7 vs 5/9".to_string(),
    )?;
    Ok(format!(
        "{checked} (game, S) cases with |S| <= 3 coincide; |S| = 4 separates at u_{carrier}, S=N, T=∅: {a_u} vs {a_r}"
    ))
}

fn criterion_8() -> Outcome {
    let glove = glove_game::<Rational>(&[0], &[1, 2]).map_err(err)?;
    let right = Coalition::from_indices([1, 2]);
    for preset in PRESETS {
        let (p, q) = preset.families();
        let a = absolute_coopetition(&glove, right, &p, &q).map_err(err)?;
        ensure(a == -Rational::one(), || format!("glove {}: {a}", preset.name()))?;
    }
    let mut checked = 0;
    for n in 1..=5 {
        for carrier in all_coalitions(n).skip(1) {
            let u = unanimity(n, carrier);
            for s in carrier.subsets().skip(1) {
                for preset in PRESETS {
                    let (p, q) = preset.families();
                    let a = absolute_coopetition(&u, s, &p, &q).map_err(err)?;
                    ensure(a.is_one(), || format!("u_{carrier} S={s} {}: {a}", preset.name()))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("glove {{2,3}} = -1 under all presets; {checked} unanimity cases S ⊆ C give +1"))
}

fn coopet(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_coopet"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("coopet {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("game.json");
    let doc = coopet(&["generate", "random-monotone", "--n", "8", "--seed", "7"])?;
    ensure(doc == coopet(&["generate", "random-monotone", "--n", "8", "--seed", "7"])?, || {
        "generate is not deterministic".into()
    })?;
    std::fs::write(&path, &doc).map_err(|e| e.to_string())?;
    let game = path.to_str().unwrap();
    let mut compared = 0;
    for format in ["csv", "json", "pretty"] {
        for mode in ["exact", "float"] {
            let run = |jobs: &str| {
                coopet(&["table", "--game", game, "--preset", "so", "--format", format, "--mode", mode, "--jobs", jobs])
            };
            let serial = run("1")?;
            let parallel = run("8")?;
            ensure(serial == parallel, || format!("{format}/{mode} output differs between --jobs 1 and 8"))?;
            compared += serial.len();
        }
    }
    Ok(format!("8-player table, 3 formats x 2 modes, {compared} bytes identical for --jobs 1 and 8"))
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "unanimity closed forms (exact)", Some(Duration::from_secs(60)), criterion_1),
        (2, "partial overlap factor (exact)", Some(Duration::from_secs(1)), criterion_2),
        (3, "bounds and singleton coincidence (exact)", Some(Duration::from_secs(120)), criterion_3),
        (4, "decomposition identities (exact)", None, criterion_4),
        (5, "null-player laws (exact)", None, criterion_5),
        (6, "axiom suites and independence (exact)", Some(Duration::from_secs(120)), criterion_6),
        (7, "attitude coincidence for |S| <= 3 (exact)", None, criterion_7),
        (8, "boundary attainment (exact)", None, criterion_8),
        (9, "table determinism across --jobs (byte-identical)", None, criterion_9),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, budget {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] criterion {id}: {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {id}: {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of 9 acceptance criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
