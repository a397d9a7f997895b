//! Family selectors: `uniform`, `perm`, or `custom:FILE`.
//!
//! Custom files are JSON:
//!
//! ```json
//! {"format": "coopet-internal/1",
//!  "entries": [{"coalition": "a,b,c", "block": "a", "p": "1/3"}]}
//! {"format": "coopet-external/1",
//!  "entries": [{"coalition": "a", "opponent": "b", "q": "1/2"}]}
//! ```
//!
//! An internal entry gives the probability of the split `{block, rest}`.
//! External entries may name a `ground` player set; it defaults to the
//! players of the game being analysed.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use coopetition::distributions::{validate_family_on, ExternalTable, FamilyRef, InternalTable};
use coopetition::indices::Preset;
use coopetition::scalar::parse_rational;
use coopetition::{Coalition, ExternalFamily, InternalFamily, NumericMode, PlayerSet};
use serde::Deserialize;

use crate::document::LabelList;
use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InternalFile {
    format: String,
    entries: Vec<InternalEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InternalEntry {
    coalition: LabelList,
    block: LabelList,
    p: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExternalFile {
    format: String,
    entries: Vec<ExternalEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExternalEntry {
    #[serde(default)]
    ground: Option<LabelList>,
    coalition: LabelList,
    opponent: LabelList,
    q: String,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn probability(text: &str) -> CliResult<coopetition::Rational> {
    parse_rational(text).map_err(|e| CliError::Input(format!("probability {text:?}: {e}")))
}

fn check_tag(found: &str, expected: &str, path: &Path) -> CliResult<()> {
    if found == expected {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{}: format {found:?}, expected {expected:?}",
            path.display()
        )))
    }
}

pub fn load_internal(path: &Path) -> CliResult<InternalFamily> {
    let file: InternalFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    check_tag(&file.format, "coopet-internal/1", path)?;
    let mut table = InternalTable::new();
    for e in &file.entries {
        table.insert(&e.coalition.labels(), &e.block.labels(), probability(&e.p)?)?;
    }
    Ok(InternalFamily::Custom(Arc::new(table)))
}

pub fn load_external(path: &Path, players: &PlayerSet) -> CliResult<ExternalFamily> {
    let file: ExternalFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    check_tag(&file.format, "coopet-external/1", path)?;
    let mut table = ExternalTable::new();
    for e in &file.entries {
        let ground = match &e.ground {
            Some(g) => g.labels(),
            None => players.labels().to_vec(),
        };
        table.insert(&ground, &e.coalition.labels(), &e.opponent.labels(), probability(&e.q)?)?;
    }
    Ok(ExternalFamily::Custom(Arc::new(table)))
}

pub fn parse_preset(name: &str) -> CliResult<Preset> {
    match name {
        "banzhaf" => Ok(Preset::Banzhaf),
        "so" | "shapley-owen" => Ok(Preset::ShapleyOwen),
        "su" | "uniform-shapley" => Ok(Preset::UniformShapley),
        "perm-banzhaf" => Ok(Preset::PermutationBanzhaf),
        _ => Err(CliError::Input(format!(
            "unknown preset {name:?} (expected banzhaf, so, su or perm-banzhaf)"
        ))),
    }
}

pub fn parse_internal(selector: &str) -> CliResult<InternalFamily> {
    match selector {
        "uniform" | "u" => Ok(InternalFamily::Uniform),
        "perm" | "permutation" | "r" => Ok(InternalFamily::Permutation),
        _ => match selector.strip_prefix("custom:") {
            Some(path) => load_internal(Path::new(path)),
            None => Err(CliError::Input(format!("unknown internal family {selector:?}"))),
        },
    }
}

pub fn parse_external(selector: &str, players: &PlayerSet) -> CliResult<ExternalFamily> {
    match selector {
        "uniform" | "u" => Ok(ExternalFamily::Uniform),
        "perm" | "permutation" | "r" => Ok(ExternalFamily::Permutation),
        _ => match selector.strip_prefix("custom:") {
            Some(path) => load_external(Path::new(path), players),
            None => Err(CliError::Input(format!("unknown external family {selector:?}"))),
        },
    }
}

/// Resolves `--preset` (default `su`), then lets `--internal`/`--external`
/// override either half.
pub fn resolve(
    preset: Option<&str>,
    internal: Option<&str>,
    external: Option<&str>,
    players: &PlayerSet,
) -> CliResult<(InternalFamily, ExternalFamily)> {
    let (mut p, mut q) = parse_preset(preset.unwrap_or("su"))?.families();
    if let Some(selector) = internal {
        p = parse_internal(selector)?;
    }
    if let Some(selector) = external {
        q = parse_external(selector, players)?;
    }
    Ok((p, q))
}

/// Checks the distributions of custom families on `coalitions`; the built-in
/// families are normalized by construction.
pub fn validate_on(
    internal: &InternalFamily,
    external: &ExternalFamily,
    players: &PlayerSet,
    mode: NumericMode,
    coalitions: &[Coalition],
) -> CliResult<()> {
    if matches!(internal, InternalFamily::Custom(_)) {
        let report = validate_family_on(
            FamilyRef::Internal(internal),
            players,
            mode,
            coalitions.iter().copied().filter(|c| c.len() >= 2),
        );
        if let Some(f) = report.failure {
            return Err(CliError::Input(format!(
                "internal family invalid at {{{}}}: {}",
                players.format(f.coalition),
                f.message
            )));
        }
    }
    if matches!(external, ExternalFamily::Custom(_)) {
        let report = validate_family_on(FamilyRef::External(external), players, mode, coalitions.iter().copied());
        if let Some(f) = report.failure {
            return Err(CliError::Input(format!(
                "external family invalid at {{{}}}: {}",
                players.format(f.coalition),
                f.message
            )));
        }
    }
    Ok(())
}
