//! `egal verify`: file checks, seeded campaigns and counterexample searches.

use std::io::{Read, Write};

use anyhow::{anyhow, bail, Result};
use egalitarian_core::axioms::random::GeneratorConfig;
use egalitarian_core::axioms::search::{
    partner_for, run_campaign, search_counterexample, CampaignConfig, SearchConfig, SearchOutcome,
};
use egalitarian_core::axioms::{characterization, check_axiom, AxiomId, AxiomReport, Witness};
use egalitarian_core::format::GameFile;
use egalitarian_core::ValueId;
use serde::Serialize;

use crate::render::num;
use crate::{load_game, numbered_labels, parse_axioms, parse_values, Format, VerifyArgs, EXIT_AXIOM_FAILED, EXIT_OK};

const WORTHS: std::ops::RangeInclusive<i64> = -10..=10;

/// Rounding-level gaps would print as 0 with six digits.
fn gap(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-6 {
        format!("{x:e}")
    } else {
        num(x)
    }
}

#[derive(Debug, Serialize)]
struct WitnessOut {
    game: String,
    level: Option<usize>,
    players: Vec<String>,
    unions: Vec<String>,
    lhs: String,
    rhs: String,
    gap: String,
}

impl WitnessOut {
    fn new(w: &Witness, labels: &[String]) -> Self {
        WitnessOut {
            game: w.game_digest.clone(),
            level: w.level,
            players: w.players.iter().map(|p| labels[p.0].clone()).collect(),
            unions: w.unions.iter().map(|u| u.display_with(labels)).collect(),
            lhs: num(w.lhs),
            rhs: num(w.rhs),
            gap: gap(w.gap),
        }
    }

    fn line(&self) -> String {
        let mut s = format!("    witness game {}", self.game);
        if let Some(l) = self.level {
            s.push_str(&format!(" level {l}"));
        }
        if !self.players.is_empty() {
            s.push_str(&format!(" players {}", self.players.join(",")));
        }
        if !self.unions.is_empty() {
            s.push_str(&format!(" unions {}", self.unions.join(" ")));
        }
        s.push_str(&format!(": {} vs {} (gap {})", self.lhs, self.rhs, self.gap));
        s
    }
}

#[derive(Debug, Serialize)]
struct PairOut {
    value: ValueId,
    axiom: AxiomId,
    expected: bool,
    verdict: &'static str,
    instances: usize,
    max_gap: String,
    witnesses: Vec<WitnessOut>,
}

impl PairOut {
    fn from_report(value: ValueId, r: &AxiomReport, labels: &[String]) -> Self {
        PairOut {
            value,
            axiom: r.axiom,
            expected: characterization(value).contains(&r.axiom),
            verdict: if r.passed() { "pass" } else { "fail" },
            instances: r.instances,
            max_gap: gap(r.max_gap()),
            witnesses: r.witnesses.iter().map(|w| WitnessOut::new(w, labels)).collect(),
        }
    }

    fn head(&self) -> String {
        let role = if self.expected { "characterizing" } else { "informational" };
        format!(
            "{:<6} {:<20} {} ({role}, {} instances)",
            self.value.name(),
            self.axiom.name(),
            self.verdict,
            self.instances
        )
    }
}

fn pairs(values: &[ValueId], axioms: Option<&[AxiomId]>) -> Vec<(ValueId, AxiomId)> {
    values.iter().flat_map(|&v| axioms.unwrap_or(characterization(v)).iter().map(move |&a| (v, a))).collect()
}

fn print_json<T: Serialize>(out: &mut dyn Write, x: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(x)?)?;
    Ok(())
}

pub(crate) fn cmd_verify(args: &VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    if args.tol.is_nan() || args.tol < 0.0 {
        bail!("--tol must be a nonnegative number");
    }
    let values = match &args.values {
        Some(list) => parse_values(list)?,
        None => ValueId::LEVEL.to_vec(),
    };
    let axioms = args.axioms.as_deref().map(parse_axioms).transpose()?;
    let axioms = axioms.as_deref();
    if args.random {
        campaign(args, &values, axioms, out)
    } else if args.search {
        search(args, &values, axioms, out)
    } else {
        on_file(args, &values, axioms, stdin, out)
    }
}

fn generator(args: &VerifyArgs, n_max: usize, k_max: usize) -> Result<GeneratorConfig> {
    let n = args.n_max.unwrap_or(n_max);
    if !(2..=20).contains(&n) {
        bail!("--n-max must be between 2 and 20");
    }
    Ok(GeneratorConfig::new(n, args.k_max.unwrap_or(k_max), WORTHS))
}

fn on_file(
    args: &VerifyArgs,
    values: &[ValueId],
    axioms: Option<&[AxiomId]>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<i32> {
    let file = load_game(args.game.as_deref(), stdin)?;
    let labels = &file.labels;
    let partner = partner_for(args.seed, &file.game, &GeneratorConfig::new(2, 0, WORTHS));
    let mut rows = Vec::new();
    for (v, a) in pairs(values, axioms) {
        let report = check_axiom(a, &v, &file.game, &partner, args.tol).map_err(|e| anyhow!(e.display_with(labels)))?;
        rows.push(PairOut::from_report(v, &report, labels));
    }
    let failed = rows.iter().any(|r| r.expected && r.verdict == "fail");
    match args.format {
        Format::Json => print_json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                writeln!(out, "{}", r.head())?;
                for w in &r.witnesses {
                    writeln!(out, "{}", w.line())?;
                }
            }
            writeln!(out, "{}", if failed { "FAILED" } else { "ok" })?;
        }
    }
    Ok(if failed { EXIT_AXIOM_FAILED } else { EXIT_OK })
}

#[derive(Debug, Serialize)]
struct CampaignRow {
    value: ValueId,
    axiom: AxiomId,
    expected: bool,
    games: usize,
    instances: usize,
    failures: usize,
    first_failure_seed: Option<u64>,
    first_failure: Vec<WitnessOut>,
}

fn campaign(args: &VerifyArgs, values: &[ValueId], axioms: Option<&[AxiomId]>, out: &mut dyn Write) -> Result<i32> {
    let cfg = CampaignConfig {
        seed: args.seed,
        trials: args.trials.unwrap_or(1000),
        generator: generator(args, 6, 3)?,
        tol: args.tol,
    };
    let report = run_campaign(values, axioms, &cfg)?;
    let rows: Vec<CampaignRow> = report
        .pairs
        .iter()
        .map(|p| {
            let (seed, witnesses) = match &p.first_failure {
                Some((seed, r)) => {
                    // generated games label players 1..n
                    let labels = numbered_labels(cfg.generator.n_max);
                    (Some(*seed), r.witnesses.iter().take(1).map(|w| WitnessOut::new(w, &labels)).collect())
                }
                None => (None, Vec::new()),
            };
            CampaignRow {
                value: p.value,
                axiom: p.axiom,
                expected: p.expected,
                games: p.games,
                instances: p.instances,
                failures: p.failures,
                first_failure_seed: seed,
                first_failure: witnesses,
            }
        })
        .collect();
    let failed = !report.all_expected_pass();
    match args.format {
        Format::Json => print_json(out, &rows)?,
        Format::Text => {
            writeln!(
                out,
                "campaign seed {} trials {} (n <= {}, k <= {})",
                cfg.seed, cfg.trials, cfg.generator.n_max, cfg.generator.k_max
            )?;
            for r in &rows {
                let role = if r.expected { "characterizing" } else { "informational" };
                let verdict = if r.failures == 0 { "pass" } else { "fail" };
                writeln!(
                    out,
                    "{:<6} {:<20} {verdict} ({role}, {} games, {} instances, {} failures)",
                    r.value.name(),
                    r.axiom.name(),
                    r.games,
                    r.instances,
                    r.failures
                )?;
                if let Some(seed) = r.first_failure_seed {
                    writeln!(out, "    first failure at seed {seed}")?;
                    for w in &r.first_failure {
                        writeln!(out, "{}", w.line())?;
                    }
                }
            }
            writeln!(out, "{}", if failed { "FAILED" } else { "ok" })?;
        }
    }
    Ok(if failed { EXIT_AXIOM_FAILED } else { EXIT_OK })
}

#[derive(Debug, Serialize)]
struct SearchRow {
    value: ValueId,
    axiom: AxiomId,
    expected: bool,
    found: bool,
    trials: u64,
    seed: Option<u64>,
    witnesses: Vec<WitnessOut>,
    game: Option<String>,
}

fn search(args: &VerifyArgs, values: &[ValueId], axioms: Option<&[AxiomId]>, out: &mut dyn Write) -> Result<i32> {
    let cfg = SearchConfig {
        seed: args.seed,
        trials: args.trials.unwrap_or(10_000),
        generator: generator(args, 5, 2)?,
        tol: args.tol,
    };
    let mut rows = Vec::new();
    for (v, a) in pairs(values, axioms) {
        let expected = characterization(v).contains(&a);
        let row = match search_counterexample(&v, a, &cfg)? {
            SearchOutcome::Found(cx) => {
                let labels = numbered_labels(cx.game.n());
                SearchRow {
                    value: v,
                    axiom: a,
                    expected,
                    found: true,
                    trials: cfg.trials,
                    seed: Some(cx.seed),
                    witnesses: cx.report.witnesses.iter().map(|w| WitnessOut::new(w, &labels)).collect(),
                    game: Some(GameFile::new(labels, cx.game).to_toml_string()),
                }
            }
            SearchOutcome::NotFound { trials } => SearchRow {
                value: v,
                axiom: a,
                expected,
                found: false,
                trials,
                seed: None,
                witnesses: Vec::new(),
                game: None,
            },
        };
        rows.push(row);
    }
    let failed = rows.iter().any(|r| r.expected && r.found);
    match args.format {
        Format::Json => print_json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                let role = if r.expected { "characterizing" } else { "informational" };
                match (r.seed, &r.game) {
                    (Some(seed), Some(game)) => {
                        writeln!(
                            out,
                            "{:<6} {:<20} witness found at seed {seed} ({role})",
                            r.value.name(),
                            r.axiom.name()
                        )?;
                        for w in &r.witnesses {
                            writeln!(out, "{}", w.line())?;
                        }
                        for line in game.lines() {
                            writeln!(out, "    | {line}")?;
                        }
                    }
                    _ => writeln!(
                        out,
                        "{:<6} {:<20} not found in {} trials ({role})",
                        r.value.name(),
                        r.axiom.name(),
                        r.trials
                    )?,
                }
            }
        }
    }
    Ok(if failed { EXIT_AXIOM_FAILED } else { EXIT_OK })
}
