//! Output in the three formats.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use simplest_thue::abs::AbsSolutionList;
use simplest_thue::bounds::{presets as preset_params, AuditEntry, BoundSet, CaseRule, Enclosure, Scenario};
use simplest_thue::decimal::{to_decimal_string, to_exact_string};
use simplest_thue::forms::Family;
use simplest_thue::roots::RootGapData;
use simplest_thue::solver::{CellOutcome, Resolution, VerifyReport};

use crate::Format;

type Res = Result<(), Box<dyn std::error::Error>>;

fn write_json<T: Serialize>(out: &mut dyn Write, command: &str, payload: T) -> Res {
    serde_json::to_writer_pretty(&mut *out, &json!({ "schema": 1, "command": command, "results": payload }))?;
    writeln!(out)?;
    Ok(())
}

fn exact(x: &simplest_thue::BigRational) -> serde_json::Value {
    json!({ "exact": to_exact_string(x), "decimal": to_decimal_string(x, 6) })
}

pub fn cells_csv(out: &mut dyn Write, cells: &[CellOutcome]) -> Res {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "m", "solved_t", "preset", "solutions", "completeness", "mismatches", "error"])?;
    for c in cells {
        let rec = match &c.report {
            Some(r) => vec![
                c.t.to_string(),
                c.m.to_string(),
                r.solved_t.to_string(),
                r.preset.to_string(),
                r.solutions.len().to_string(),
                r.completeness.to_string(),
                r.mismatches.len().to_string(),
                String::new(),
            ],
            None => vec![
                c.t.to_string(),
                c.m.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                c.error.clone().unwrap_or_default(),
            ],
        };
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cells_table(out: &mut dyn Write, report: &VerifyReport) -> Res {
    writeln!(out, "{:>6} {:>4} {:>12} {:>9} {:>13} {:>10}  status", "t", "m", "preset", "solutions", "completeness", "mismatches")?;
    for c in &report.cells {
        match &c.report {
            Some(r) => writeln!(
                out,
                "{:>6} {:>4} {:>12} {:>9} {:>13} {:>10}  {}",
                c.t,
                c.m,
                r.preset.to_string(),
                r.solutions.len(),
                r.completeness.to_string(),
                r.mismatches.len(),
                if c.passed() { "ok" } else { "MISMATCH" }
            )?,
            None => writeln!(out, "{:>6} {:>4}  error: {}", c.t, c.m, c.error.as_deref().unwrap_or("?"))?,
        }
    }
    let failed = report.failures();
    writeln!(out, "{} cells, {} failing, mode {:?}", report.cells.len(), failed, report.mode)?;
    Ok(())
}

pub fn cell_table(out: &mut dyn Write, family: Family, cell: &CellOutcome) -> Res {
    let Some(r) = &cell.report else {
        writeln!(out, "{family} t={} m={}: error: {}", cell.t, cell.m, cell.error.as_deref().unwrap_or("?"))?;
        return Ok(());
    };
    writeln!(out, "{family} t={} m={}", r.t, r.m)?;
    if r.solved_t != r.t {
        writeln!(out, "  solved through the dual parameter t' = {}", r.solved_t)?;
    }
    writeln!(out, "  preset {}  A >= {}  B >= {}  |y| threshold {}", r.preset, r.a_lower, r.b_lower, r.threshold)?;
    for c in &r.cases {
        let how = match &c.resolution {
            Resolution::Cited { source } => format!("cited {source:?}"),
            Resolution::BoxSearch { v_max } => format!("box |v| <= {v_max}"),
            Resolution::Unresolved => "unresolved".to_string(),
        };
        writeln!(out, "  {:<5} |F| <= {:<5} {:<22} {}", c.id.to_string(), c.rhs, how, c.rule)?;
    }
    writeln!(
        out,
        "  large y: first component {}, second component {}",
        r.first_component.describe(),
        r.second_component.describe()
    )?;
    let s = &r.stages;
    writeln!(
        out,
        "  disc {}  large {}  partner candidates {}  dual candidates {}  rays {}",
        s.disc, s.large_finite, s.partner_candidates, s.dual_candidates, s.rays
    )?;
    let sols: Vec<String> = r.solutions.iter().map(|p| p.to_string()).collect();
    writeln!(out, "  {} solutions up to sign ({}): {}", sols.len(), r.completeness, sols.join(" "))?;
    if r.mismatches.is_empty() {
        writeln!(out, "  matches the published list")?;
    }
    for m in &r.mismatches {
        writeln!(out, "  {:?} {}  F = {}", m.kind, m.pair, m.value)?;
    }
    Ok(())
}

pub fn audit(out: &mut dyn Write, format: Format, entries: &[AuditEntry]) -> Res {
    match format {
        Format::Json => write_json(out, "bounds-audit", entries),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "scenario", "m", "quantity", "printed", "computed", "deviation", "flagged"])?;
            for e in entries {
                w.write_record([
                    e.constant.family.to_string(),
                    e.constant.scenario.to_string(),
                    e.constant.m.to_string(),
                    format!("{:?}", e.constant.quantity),
                    e.constant.printed.clone(),
                    to_decimal_string(&e.computed.hi, 6),
                    format!("{:.6}", e.deviation),
                    e.flagged.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            for e in entries {
                writeln!(
                    out,
                    "{:<8} {:<11} m={:<3} {:<18} printed {:>10}  computed {:>12}{}",
                    e.constant.family.to_string(),
                    e.constant.scenario.to_string(),
                    e.constant.m,
                    format!("{:?}", e.constant.quantity),
                    e.constant.printed,
                    to_decimal_string(&e.computed.hi, 6),
                    if e.flagged { "  <- off by more than 0.002" } else { "" }
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
pub struct BoundsRow {
    pub family: Family,
    pub scenario: Scenario,
    pub m: i64,
    pub threshold: Enclosure,
    pub bounds: BoundSet,
    pub rules: Vec<CaseRule>,
}

/// Rings a preset is printed for: the worst case of each residue class.
pub fn preset_rings(s: Scenario) -> Vec<i64> {
    match s {
        Scenario::GenericM => vec![7, 2],
        Scenario::M1 => vec![1],
        Scenario::M3LargeT | Scenario::M3SmallT => vec![3],
    }
}

pub fn bounds(out: &mut dyn Write, format: Format, rows: &[BoundsRow]) -> Res {
    match format {
        Format::Json => write_json(out, "bounds", rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "scenario", "m", "case", "threshold", "rhs"])?;
            for r in rows {
                w.write_record([
                    r.family.to_string(),
                    r.scenario.to_string(),
                    r.m.to_string(),
                    "large".into(),
                    r.threshold.to_string(),
                    String::new(),
                ])?;
                for rule in &r.rules {
                    w.write_record([
                        r.family.to_string(),
                        r.scenario.to_string(),
                        r.m.to_string(),
                        rule.id.to_string(),
                        rule.threshold().map(|t| t.to_string()).unwrap_or_default(),
                        rule.rhs.to_string(),
                    ])?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            for r in rows {
                writeln!(out, "{} {} m={}: |y| > {}", r.family, r.scenario, r.m, r.threshold)?;
                writeln!(
                    out,
                    "  C = {}  C1 = {}  C2 = {}  D = {}  E = {}",
                    r.bounds.c, r.bounds.c1, r.bounds.c2, r.bounds.d, r.bounds.e
                )?;
                for rule in &r.rules {
                    writeln!(out, "  {:<5} {}", rule.id.to_string(), rule.description)?;
                }
            }
            Ok(())
        }
    }
}

pub fn roots(out: &mut dyn Write, format: Format, data: &[RootGapData]) -> Res {
    match format {
        Format::Json => {
            let v: Vec<_> = data
                .iter()
                .map(|d| {
                    json!({
                        "family": d.form().family(),
                        "t": d.form().t(),
                        "form": d.form().to_string(),
                        "roots": d.intervals().iter().map(|iv| json!({"lo": exact(&iv.lo), "hi": exact(&iv.hi)})).collect::<Vec<_>>(),
                        "a_lower": exact(d.a_lower()),
                        "b_lower": exact(d.b_lower()),
                    })
                })
                .collect();
            write_json(out, "roots", v)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "t", "a_lower", "b_lower", "roots"])?;
            for d in data {
                let roots: Vec<String> = d.intervals().iter().map(|iv| to_decimal_string(&iv.lo, 9)).collect();
                w.write_record([
                    d.form().family().to_string(),
                    d.form().t().to_string(),
                    to_decimal_string(d.a_lower(), 9),
                    to_decimal_string(d.b_lower(), 9),
                    roots.join(" "),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            for d in data {
                writeln!(out, "{} t={}: {}", d.form().family(), d.form().t(), d.form())?;
                for iv in d.intervals() {
                    writeln!(out, "  root in [{}, {}]", to_decimal_string(&iv.lo, 9), to_decimal_string(&iv.hi, 9))?;
                }
                writeln!(out, "  A >= {}  B >= {}", to_decimal_string(d.a_lower(), 9), to_decimal_string(d.b_lower(), 9))?;
            }
            Ok(())
        }
    }
}

pub fn oracle(out: &mut dyn Write, format: Format, lists: &[(AbsSolutionList, Option<AbsSolutionList>)]) -> Res {
    match format {
        Format::Json => {
            let v: Vec<_> = lists
                .iter()
                .map(|(found, cited)| {
                    json!({
                        "search": found,
                        "cited": cited,
                        "agrees_with_cited": cited.as_ref().map(|c| c.pairs == found.pairs),
                    })
                })
                .collect();
            write_json(out, "oracle", v)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "t", "d_max", "v_max", "u", "v", "value", "completeness"])?;
            for (found, _) in lists {
                for &(u, v) in &found.pairs {
                    w.write_record([
                        found.form.family().to_string(),
                        found.form.t().to_string(),
                        found.rhs.to_string(),
                        found.v_max.map(|b| b.to_string()).unwrap_or_default(),
                        u.to_string(),
                        v.to_string(),
                        found.form.eval_int(u, v).to_string(),
                        found.completeness.to_string(),
                    ])?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            for (found, cited) in lists {
                let pairs: Vec<String> = found.pairs.iter().map(|(u, v)| format!("({u},{v})")).collect();
                writeln!(
                    out,
                    "{} t={} |F| <= {} |v| <= {}: {} pairs ({}) {}",
                    found.form.family(),
                    found.form.t(),
                    found.rhs,
                    found.v_max.unwrap_or(0),
                    pairs.len(),
                    found.completeness,
                    pairs.join(" ")
                )?;
                if let Some(c) = cited {
                    let agree = if c.pairs == found.pairs { "agrees" } else { "DIFFERS" };
                    writeln!(out, "  cited list {agree} ({} pairs)", c.pairs.len())?;
                }
            }
            Ok(())
        }
    }
}

pub fn presets(out: &mut dyn Write, format: Format) -> Res {
    let mut rows = Vec::new();
    for f in Family::all() {
        for s in Scenario::all() {
            let p = preset_params(f, s);
            rows.push((f, s, p));
        }
    }
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(f, s, p)| {
                    json!({
                        "family": f, "scenario": s, "k": exact(&p.k),
                        "epsilon": exact(&p.epsilon), "eta": exact(&p.eta),
                        "a": exact(&p.a), "b": exact(&p.b),
                    })
                })
                .collect();
            write_json(out, "presets", v)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "scenario", "epsilon", "eta", "a", "b"])?;
            for (f, s, p) in &rows {
                w.write_record([
                    f.to_string(),
                    s.to_string(),
                    to_decimal_string(&p.epsilon, 4),
                    to_decimal_string(&p.eta, 4),
                    to_decimal_string(&p.a, 4),
                    to_decimal_string(&p.b, 4),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            writeln!(out, "{:<8} {:<11} {:>8} {:>8} {:>8} {:>8}", "family", "scenario", "epsilon", "eta", "A", "B")?;
            for (f, s, p) in &rows {
                writeln!(
                    out,
                    "{:<8} {:<11} {:>8} {:>8} {:>8} {:>8}",
                    f.to_string(),
                    s.to_string(),
                    to_decimal_string(&p.epsilon, 4),
                    to_decimal_string(&p.eta, 4),
                    to_decimal_string(&p.a, 4),
                    to_decimal_string(&p.b, 4)
                )?;
            }
            Ok(())
        }
    }
}
