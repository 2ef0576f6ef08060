//! Subcommand bodies. Each returns what to print and the exit outcome, so
//! the binary only does argument parsing and I/O.

use std::fmt::Write as _;

use serde::Serialize;

use bolkit_core::bolanalysis::half_loop;
use bolkit_core::loopcore::{check_properties, left_bol_counterexample};
use bolkit_core::transversal::induced_loop;
use bolkit_core::{FiniteLoop, PropertyReport, Status};

use crate::catalog::{self, Construction};
use crate::config::Config;
use crate::error::{CliError, Outcome};
use crate::io::{format_cayley, load_group_spec, save_cayley};
use crate::report::analyze as analyze_loop;
use crate::suites;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn out(stdout: String) -> Self {
        CommandOutput { stdout, stderr: String::new() }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckReport<'a> {
    schema: &'static str,
    id: &'a str,
    order: usize,
    properties: PropertyReport,
}

fn property_lines(p: &PropertyReport) -> String {
    let value = serde_json::to_value(p).expect("flags serialize");
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            let _ = writeln!(out, "{k:24} {v}");
        }
    }
    out
}

pub fn check(target: &str, json: bool, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let entry = catalog::resolve_loop(target, &config.context())?;
    let properties = check_properties(&entry.loop_);
    let stdout = if json {
        to_json(&CheckReport {
            schema: "bolkit.check/1",
            id: &entry.id,
            order: entry.loop_.order(),
            properties,
        })
    } else {
        let mut s = format!("{}: loop of order {}\n", entry.id, entry.loop_.order());
        s.push_str(&property_lines(&properties));
        if let Some((x, y, z)) = left_bol_counterexample(&entry.loop_) {
            let _ = writeln!(s, "left Bol fails at (x, y, z) = ({x}, {y}, {z})");
        }
        s
    };
    Ok((CommandOutput::out(stdout), Outcome::Pass))
}

pub fn analyze(target: &str, json: bool, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let entry = catalog::resolve_loop(target, &config.context())?;
    let report = analyze_loop(&entry, config)?;
    let outcome = if report.findings() > 0 { Outcome::Finding } else { Outcome::Pass };
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = format!("{}: order {}\n", report.id, report.order);
        let _ = writeln!(
            s,
            "nuclei (l, m, r, all)    {} {} {} {}",
            report.nuclei.left, report.nuclei.middle, report.nuclei.right, report.nuclei.nucleus
        );
        let _ = writeln!(s, "|LMlt|, |LMlt_1|         {} {}", report.lmlt_order, report.lmlt1_order);
        if let Some(b) = &report.bol {
            let _ = writeln!(s, "|PMlt|, |Btp|            {} {}", b.pmlt_order, b.btp_order);
            let _ = writeln!(s, "radical order            {}", b.radical_order);
            let _ = writeln!(s, "Aschbacher automorphism  {}", b.aschbacher_present);
            let _ = writeln!(
                s,
                "obstruction order        {}",
                b.obstruction_order.map_or("-".into(), |o| o.to_string())
            );
        }
        let _ =
            writeln!(s, "simple                   {}", report.simple.map_or("-".into(), |b| b.to_string()));
        let _ =
            writeln!(s, "solvable                 {}", report.solvable.map_or("-".into(), |b| b.to_string()));
        s.push_str(&verdict_lines(&report.id, "", &report.verdicts));
        s
    };
    Ok((CommandOutput { stdout, stderr: finding_banner(outcome) }, outcome))
}

fn finding_banner(outcome: Outcome) -> String {
    if outcome == Outcome::Finding {
        "FINDING: a theorem check failed on a concrete instance. If the input is correct this is a counterexample and mathematically significant.\n".into()
    } else {
        String::new()
    }
}

fn verdict_lines(target: &str, suite: &str, verdicts: &[bolkit_core::Verdict]) -> String {
    let mut s = String::new();
    for v in verdicts {
        let tag = match v.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let scope = if suite.is_empty() { target.to_string() } else { format!("{target} [{suite}]") };
        let _ = writeln!(s, "{tag} {scope} {}: {} ({})", v.check, v.detail, v.anchor);
    }
    s
}

fn emit_table(l: &FiniteLoop, output: Option<&str>) -> Result<CommandOutput, CliError> {
    match output {
        Some(path) => {
            save_cayley(l, path)?;
            Ok(CommandOutput::default())
        }
        None => Ok(CommandOutput::out(format_cayley(l))),
    }
}

pub fn bloop(
    target: &str,
    output: Option<&str>,
    config: &Config,
) -> Result<(CommandOutput, Outcome), CliError> {
    let entry = catalog::resolve_loop(target, &config.context())?;
    let half = half_loop(&entry.loop_)?;
    Ok((emit_table(&half, output)?, Outcome::Pass))
}

pub fn induced(
    spec_path: &str,
    output: Option<&str>,
    left_loop: bool,
    config: &Config,
) -> Result<(CommandOutput, Outcome), CliError> {
    let spec = load_group_spec(spec_path)?;
    let sys = spec.system(&config.limits)?;
    let induced = induced_loop(&sys)?;
    match &induced.as_loop {
        Some(l) => {
            let mut out = emit_table(l, output)?;
            out.stderr = format!(
                "induced loop of order {}, left Bol: {}\n",
                l.order(),
                check_properties(l).left_bol
            );
            Ok((out, Outcome::Pass))
        }
        None if left_loop => {
            let n = induced.order;
            let mut text = format!("{n}\n");
            for row in induced.table.chunks(n) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&cells.join(" "));
                text.push('\n');
            }
            let stderr = "transversal is not a transversal to every conjugate; table is a left loop only\n".to_string();
            match output {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.into(), source: e })?;
                    Ok((CommandOutput { stdout: String::new(), stderr }, Outcome::Pass))
                }
                None => Ok((CommandOutput { stdout: text, stderr }, Outcome::Pass)),
            }
        }
        None => Err(CliError::Spec(
            "the transversal is not a transversal to every conjugate of the subgroup, so the induced operation is only a left loop (pass --left-loop to print it)".into(),
        )),
    }
}

#[derive(Serialize)]
struct CatalogRow {
    id: String,
    order: usize,
    left_bol: bool,
    is_group: bool,
    construction: Construction,
}

pub fn catalog_list(json: bool, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let rows: Vec<CatalogRow> = catalog::loops(&config.context())?
        .into_iter()
        .map(|e| {
            let p = check_properties(&e.loop_);
            CatalogRow {
                order: e.loop_.order(),
                left_bol: p.left_bol,
                is_group: p.is_group,
                id: e.id,
                construction: e.construction,
            }
        })
        .collect();
    let stdout = if json {
        to_json(&rows)
    } else {
        let mut s = String::new();
        for r in &rows {
            let kind = if r.is_group {
                "group"
            } else if r.left_bol {
                "Bol"
            } else {
                "loop"
            };
            let _ = writeln!(
                s,
                "{:10} {:3} {:5} {}",
                r.id,
                r.order,
                kind,
                serde_json::to_string(&r.construction).expect("serializes")
            );
        }
        s
    };
    Ok((CommandOutput::out(stdout), Outcome::Pass))
}

pub fn catalog_show(id: &str, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let entry = catalog::entry(id, &config.context())?;
    Ok((CommandOutput::out(format_cayley(&entry.loop_)), Outcome::Pass))
}

/// Element indices of a catalog group, as used by group specifications.
pub fn catalog_group(id: &str, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let g = catalog::group(id, &config.limits)?;
    let mut s = format!("{id}: order {}, degree {}\n", g.order(), g.degree());
    for (i, p) in g.elements().iter().enumerate() {
        let cycles: Vec<String> = p
            .cycles()
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        let _ = writeln!(s, "{i:6} {}", if cycles.is_empty() { "()".to_string() } else { cycles.concat() });
    }
    Ok((CommandOutput::out(s), Outcome::Pass))
}

pub fn catalog_twisted(config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    let mut s = String::new();
    for f in catalog::twisted_fixtures(&config.limits)? {
        let _ = writeln!(s, "{:18} |T| = {:3}  |G| = {}", f.id, f.twisted.len(), f.twisted.ambient().order());
    }
    Ok((CommandOutput::out(s), Outcome::Pass))
}

/// Writes every catalog loop to `<dir>/<id>.cayley`, with `:` replaced by `_`.
pub fn catalog_export(dir: &str, config: &Config) -> Result<(CommandOutput, Outcome), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.into(), source: e })?;
    let mut s = String::new();
    for e in catalog::loops(&config.context())? {
        let path = std::path::Path::new(dir).join(format!("{}.cayley", e.id.replace(':', "_")));
        let path = path.to_string_lossy().to_string();
        save_cayley(&e.loop_, &path)?;
        let _ = writeln!(s, "{path}");
    }
    Ok((CommandOutput::out(s), Outcome::Pass))
}

pub fn verify(
    suite: &str,
    targets: &[String],
    jobs: usize,
    json: bool,
    config: &Config,
) -> Result<(CommandOutput, Outcome), CliError> {
    let targets = if targets.is_empty() { suites::default_targets() } else { targets.to_vec() };
    let report = suites::verify(suite, &targets, config, jobs)?;
    let outcome = report.outcome();
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        for r in &report.results {
            if let Some(e) = &r.error {
                let _ = writeln!(s, "ERROR {} [{}]: {e}", r.target, r.suite);
            }
            s.push_str(&verdict_lines(&r.target, &r.suite, &r.verdicts));
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped, {} errors",
            report.passed, report.failed, report.skipped, report.errors
        );
        s
    };
    Ok((CommandOutput { stdout, stderr: finding_banner(outcome) }, outcome))
}
