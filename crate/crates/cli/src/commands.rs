use std::fs;
use std::io::Read;
use std::path::Path;

use coopetition::axioms::{
    counterexample_index, run_axiom, Battery, Counterexample, GroupIndex, SuiteRow, Variant,
};
use coopetition::coalition::all_coalitions;
use coopetition::distributions::{validate_family, FamilyRef};
use coopetition::generators::{seeded_monotone_game, unanimity_game, weighted_majority_game};
use coopetition::indices::{
    attitude, check_attainment, classify_contributing, index_reports,
};
use coopetition::mobius::{nonzero_dividends, reconstruction_holds};
use coopetition::scalar::parse_rational;
use coopetition::{Coalition, Game, PlayerSet, Rational, Scalar};
use serde_json::Value;

use crate::document::{parse_game, serialize_game, split_labels, Layout};
use crate::error::{CliError, CliResult};
use crate::families::{parse_external, parse_internal, resolve, validate_on};
use crate::output::{number, render, Report};
use crate::{
    AttitudeArgs, AxiomArgs, ClassifyArgs, Command, ComputeArgs, FamilyArgs, GameInput, GameKind, GenerateArgs,
    MobiusArgs, Mode, Selector, TableArgs, ValidateArgs,
};

pub(crate) struct Outcome {
    pub text: String,
    /// Set when the report was produced but the command should exit with status 1.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }
}

pub(crate) fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Compute(a) => by_mode(&a.input, |text| compute::<Rational>(&a, text), |text| compute::<f64>(&a, text)),
        Command::Table(a) => by_mode(&a.input, |text| table::<Rational>(&a, text), |text| table::<f64>(&a, text)),
        Command::Attitude(a) => by_mode(&a.input, |text| attitude_cmd::<Rational>(&a, text), |text| {
            attitude_cmd::<f64>(&a, text)
        }),
        Command::Classify(a) => by_mode(&a.input, |text| classify::<Rational>(&a, text), |text| classify::<f64>(&a, text)),
        Command::Mobius(a) => by_mode(&a.input, |text| mobius::<Rational>(&a, text), |text| mobius::<f64>(&a, text)),
        Command::Validate(a) => by_mode(&a.input, |text| validate::<Rational>(&a, text), |text| validate::<f64>(&a, text)),
        Command::CheckAxioms(a) => check_axioms(&a),
        Command::Generate(a) => generate(&a).map(Outcome::ok),
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn by_mode(
    input: &GameInput,
    exact: impl FnOnce(&str) -> CliResult<Outcome>,
    float: impl FnOnce(&str) -> CliResult<Outcome>,
) -> CliResult<Outcome> {
    let text = read_input(&input.game)?;
    match input.mode {
        Mode::Exact => exact(&text),
        Mode::Float => float(&text),
    }
}

fn load<S: Scalar>(input: &GameInput, text: &str) -> CliResult<Game<S>> {
    parse_game(text, input.strict)
}

/// `{}` for the empty coalition, otherwise `a,c`.
fn show(players: &PlayerSet, c: Coalition) -> String {
    if c.is_empty() {
        "{}".to_string()
    } else {
        players.format(c)
    }
}

fn coalition_arg(players: &PlayerSet, text: &str) -> CliResult<Coalition> {
    Ok(players.coalition(&split_labels(text))?)
}

fn select(players: &PlayerSet, selector: &Selector) -> CliResult<Vec<Coalition>> {
    let n = players.len();
    let mut chosen: Vec<Coalition> = Vec::new();
    if selector.all {
        chosen.extend(all_coalitions(n).skip(1));
    }
    if let Some(k) = selector.size {
        if k == 0 || k > n {
            return Err(CliError::Input(format!("--size {k} is outside 1..={n}")));
        }
        chosen.extend(all_coalitions(n).filter(|c| c.len() == k));
    }
    for text in &selector.coalition {
        let c = coalition_arg(players, text)?;
        if c.is_empty() {
            return Err(CliError::Input("selected coalition is empty".into()));
        }
        chosen.push(c);
    }
    if chosen.is_empty() {
        return Err(CliError::Input("no coalition selected (use --coalition, --all or --size)".into()));
    }
    let mut seen = std::collections::HashSet::new();
    chosen.retain(|c| seen.insert(*c));
    Ok(chosen)
}

fn families(
    args: &FamilyArgs,
    players: &PlayerSet,
) -> CliResult<(coopetition::InternalFamily, coopetition::ExternalFamily)> {
    resolve(
        args.preset.as_deref(),
        args.internal.as_deref(),
        args.external.as_deref(),
        players,
    )
}

fn game_meta<S: Scalar>(report: &mut Report, game: &Game<S>) {
    report
        .meta("players", game.players().labels().to_vec())
        .meta("n", game.n())
        .meta("monotone", game.is_monotone())
        .meta("mode", S::MODE.to_string());
}

fn index_rows<S: Scalar>(
    command: &str,
    game: &Game<S>,
    coalitions: &[Coalition],
    fam: &FamilyArgs,
    jobs: usize,
) -> CliResult<Report> {
    let (p, q) = families(fam, game.players())?;
    validate_on(&p, &q, game.players(), S::MODE, coalitions)?;
    let reports = index_reports(game, coalitions, &p, &q, jobs)?;
    let mut report = Report::new(
        command,
        &["coalition", "s", "phi", "coop", "absolute", "classification", "outside_monotone_range"],
    );
    game_meta(&mut report, game);
    report.meta("internal", p.name()).meta("external", q.name());
    for r in reports {
        report.row(vec![
            Value::from(show(game.players(), r.coalition)),
            Value::from(r.coalition.len()),
            number(&r.phi),
            number(&r.coop),
            number(&r.absolute),
            Value::from(r.classification.to_string()),
            Value::from(r.outside_monotone_range),
        ]);
    }
    Ok(report)
}

fn compute<S: Scalar>(a: &ComputeArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    let coalitions = select(game.players(), &a.selector)?;
    let report = index_rows("compute", &game, &coalitions, &a.families, a.jobs)?;
    Ok(Outcome::ok(render(&report, a.output.format)?))
}

fn table<S: Scalar>(a: &TableArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    if game.n() > a.max_n {
        return Err(CliError::Input(format!(
            "table of a {}-player game exceeds the cap of {} players; raise it with --max-n or COOPET_MAX_N",
            game.n(),
            a.max_n
        )));
    }
    let coalitions: Vec<Coalition> = all_coalitions(game.n()).skip(1).collect();
    let report = index_rows("table", &game, &coalitions, &a.families, a.jobs)?;
    Ok(Outcome::ok(render(&report, a.output.format)?))
}

fn attitude_cmd<S: Scalar>(a: &AttitudeArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    let players = game.players();
    let s = coalition_arg(players, &a.coalition)?;
    if s.is_empty() {
        return Err(CliError::Input("--coalition must not be empty".into()));
    }
    let (p, q) = families(&a.families, players)?;
    validate_on(&p, &q, players, S::MODE, &[s])?;
    let opponents: Vec<Coalition> = match &a.opponent {
        Some(t) => vec![coalition_arg(players, t)?],
        None => game.grand_coalition().difference(s).subsets().collect(),
    };
    let mut report = Report::new("attitude", &["opponent", "marginal", "attitude"]);
    game_meta(&mut report, &game);
    report.meta("coalition", show(players, s)).meta("internal", p.name());
    for t in opponents {
        let value = attitude(&game, s, t, &p)?;
        let marginal = game.marginal_contribution(s, t)?;
        report.row(vec![Value::from(show(players, t)), number(&marginal), number(&value)]);
    }
    Ok(Outcome::ok(render(&report, a.output.format)?))
}

fn classify<S: Scalar>(a: &ClassifyArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    let players = game.players();
    let coalitions = select(players, &a.selector)?;
    let mut report = if a.detail {
        Report::new("classify", &["coalition", "opponent", "marginal", "classification"])
    } else {
        Report::new(
            "classify",
            &[
                "coalition", "overall", "essential", "fully_complementary", "mixed", "not_contributing", "phi", "coop",
                "at_upper_bound", "at_lower_bound", "consistent",
            ],
        )
    };
    game_meta(&mut report, &game);
    let mut failure = None;
    if a.detail {
        for &s in &coalitions {
            for t in game.grand_coalition().difference(s).subsets() {
                let class = classify_contributing(&game, s, t)?;
                report.row(vec![
                    Value::from(show(players, s)),
                    Value::from(show(players, t)),
                    number(&game.marginal_contribution(s, t)?),
                    Value::from(class.to_string()),
                ]);
            }
        }
    } else {
        let (p, q) = families(&a.families, players)?;
        validate_on(&p, &q, players, S::MODE, &coalitions)?;
        report.meta("internal", p.name()).meta("external", q.name());
        for &s in &coalitions {
            let r = check_attainment(&game, s, &p, &q)?;
            if !r.consistent && failure.is_none() {
                failure = Some(format!(
                    "{{{}}} is {} but the index is not at the matching bound",
                    players.format(s),
                    r.summary.overall()
                ));
            }
            report.row(vec![
                Value::from(show(players, s)),
                Value::from(r.summary.overall().to_string()),
                Value::from(r.summary.essential),
                Value::from(r.summary.fully_complementary),
                Value::from(r.summary.mixed),
                Value::from(r.summary.not_contributing),
                number(&r.phi),
                number(&r.coop),
                Value::from(r.at_upper_bound),
                Value::from(r.at_lower_bound),
                Value::from(r.consistent),
            ]);
        }
    }
    Ok(Outcome {
        text: render(&report, a.output.format)?,
        failure,
    })
}

fn mobius<S: Scalar>(a: &MobiusArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    let reconstructed = reconstruction_holds(&game);
    let mut report = Report::new("mobius", &["coalition", "dividend"]);
    game_meta(&mut report, &game);
    report.meta("reconstruction", reconstructed);
    for (c, d) in nonzero_dividends(&game) {
        report.row(vec![Value::from(show(game.players(), c)), number(&d)]);
    }
    Ok(Outcome {
        text: render(&report, a.output.format)?,
        failure: (!reconstructed).then(|| "dividends do not reconstruct the game".to_string()),
    })
}

fn validate<S: Scalar>(a: &ValidateArgs, text: &str) -> CliResult<Outcome> {
    let game = load::<S>(&a.input, text)?;
    let players = game.players();
    let mut report = Report::new("validate", &["check", "passed", "detail"]);
    game_meta(&mut report, &game);
    let nulls: Vec<&str> = players.labels_of(game.null_players());
    report.meta("null_players", nulls.into_iter().map(String::from).collect::<Vec<_>>());
    report.row(vec![Value::from("game"), Value::from(true), Value::from("well-formed")]);
    let mut failure = None;
    let mut record = |name: String, result: coopetition::distributions::ValidationReport| {
        let detail = match &result.failure {
            None => format!("{} distributions sum to 1", result.distributions_checked),
            Some(f) => format!("{{{}}}: {}", players.format(f.coalition), f.message),
        };
        if !result.passed() && failure.is_none() {
            failure = Some(format!("{name} family is not a probability family"));
        }
        report.row(vec![Value::from(name), Value::from(result.passed()), Value::from(detail)]);
    };
    if let Some(selector) = &a.internal {
        let p = parse_internal(selector)?;
        record(format!("internal {selector}"), validate_family(FamilyRef::Internal(&p), players, S::MODE));
    }
    if let Some(selector) = &a.external {
        let q = parse_external(selector, players)?;
        record(format!("external {selector}"), validate_family(FamilyRef::External(&q), players, S::MODE));
    }
    Ok(Outcome {
        text: render(&report, a.output.format)?,
        failure,
    })
}

fn named_index(name: &str) -> CliResult<(GroupIndex, Option<Counterexample>)> {
    match name {
        "su" | "C_SU" => Ok((GroupIndex::uniform_shapley(), None)),
        "so" | "C_SO" => Ok((GroupIndex::shapley_owen(), None)),
        "phi" | "Phi_Sh" => Ok((GroupIndex::shapley_value(), None)),
        _ => {
            let kind: Counterexample = name.parse()?;
            Ok((counterexample_index(kind), Some(kind)))
        }
    }
}

fn check_axioms(a: &AxiomArgs) -> CliResult<Outcome> {
    let variant: Variant = a.variant.parse()?;
    let standard = Battery::standard()?;
    let battery = Battery::build(
        5,
        3..=5,
        25,
        a.trials.unwrap_or(standard.linearity_trials),
        a.seed.unwrap_or(Battery::DEFAULT_SEED),
    )?;
    let axioms = variant.axioms();
    let entries: Vec<(GroupIndex, Option<coopetition::axioms::Axiom>)> = match &a.index {
        None => std::iter::once((variant.characterized_index(), None))
            .chain(
                variant
                    .counterexamples()
                    .into_iter()
                    .map(|k| (counterexample_index(k), Some(k.designated_axiom()))),
            )
            .collect(),
        Some(name) => {
            let (index, kind) = named_index(name)?;
            let expected = kind.map(|k| k.designated_axiom()).filter(|ax| axioms.contains(ax));
            vec![(index, expected)]
        }
    };
    let rows = pool(a.jobs)?.install(|| {
        entries
            .into_iter()
            .map(|(index, expected_failure)| {
                let verdicts = axioms
                    .iter()
                    .map(|&ax| run_axiom(&index, ax, &battery))
                    .collect::<coopetition::Result<Vec<_>>>()?;
                Ok(SuiteRow {
                    index: index.name().to_string(),
                    expected_failure,
                    verdicts,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;

    let mut columns = vec!["index"];
    columns.extend(axioms.iter().map(|ax| ax.id()));
    columns.extend(["expected", "as_expected", "witnesses"]);
    let mut report = Report::new("check-axioms", &columns);
    report
        .meta("variant", variant.name())
        .meta("seed", battery.seed)
        .meta("linearity_trials", battery.linearity_trials)
        .meta("battery_games", battery.games.len());
    let mut mismatches = Vec::new();
    for row in &rows {
        let mut cells = vec![Value::from(row.index.clone())];
        cells.extend(row.verdicts.iter().map(|v| Value::from(if v.holds { "pass" } else { "fail" })));
        cells.push(Value::from(
            row.expected_failure
                .map_or("all pass".to_string(), |ax| format!("fails {ax}")),
        ));
        cells.push(Value::from(row.as_expected()));
        let witnesses: Vec<String> = row
            .verdicts
            .iter()
            .filter_map(|v| v.witness.as_ref().map(|w| format!("{}: {w}", v.axiom)))
            .collect();
        cells.push(Value::from(witnesses.join("; ")));
        report.row(cells);
        if !row.as_expected() {
            mismatches.push(row.index.clone());
        }
    }
    Ok(Outcome {
        text: render(&report, a.output.format)?,
        failure: (!mismatches.is_empty())
            .then(|| format!("unexpected axiom verdicts for {}", mismatches.join(", "))),
    })
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))
}

fn numbers(text: &str) -> CliResult<Vec<Rational>> {
    split_labels(text)
        .iter()
        .map(|t| parse_rational(t).map_err(|e| CliError::Input(format!("{t:?}: {e}"))))
        .collect()
}

fn generate(a: &GenerateArgs) -> CliResult<String> {
    let need_n = || a.n.ok_or_else(|| CliError::Input("--n is required".into()));
    let game: Game<Rational> = match a.kind {
        GameKind::Unanimity => {
            let players = PlayerSet::numbered(need_n()?)?;
            let carrier = match &a.carrier {
                Some(text) => coalition_arg(&players, text)?,
                None => players.full(),
            };
            unanimity_game(&players, carrier)?
        }
        GameKind::WeightedMajority => {
            let quota = a
                .quota
                .as_deref()
                .ok_or_else(|| CliError::Input("--quota is required".into()))
                .and_then(|q| parse_rational(q).map_err(|e| CliError::Input(format!("--quota: {e}"))))?;
            let weights = numbers(
                a.weights
                    .as_deref()
                    .ok_or_else(|| CliError::Input("--weights is required".into()))?,
            )?;
            weighted_majority_game(&quota, &weights)?
        }
        GameKind::RandomMonotone => seeded_monotone_game(need_n()?, a.seed)?,
    };
    let layout = if a.sparse { Layout::Sparse } else { Layout::Dense };
    Ok(serialize_game(&game, layout))
}
