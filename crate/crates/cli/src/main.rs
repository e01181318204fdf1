use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use simplest_thue::abs::{brute_box_with, known_abs_solutions};
use simplest_thue::bounds::{audit_printed_constants, case_rules, derive_bounds, large_threshold, presets, Scenario};
use simplest_thue::exec::{par_map, with_jobs, Exec};
use simplest_thue::forms::{make_form, Family};
use simplest_thue::ring::RingSpec;
use simplest_thue::roots::RootGapData;
use simplest_thue::solver::{verify_theorem, CellOutcome, Mode, SolveOptions, VerifyReport};

mod render;
mod spec;

use spec::{parse_m_list, TRange};

#[derive(Parser)]
#[command(name = "simplest-thue", version, about = "Solve |F_t(x,y)| <= 1 over imaginary quadratic integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct Common {
    /// quartic (or 4) / sextic (or 6)
    #[arg(long)]
    family: Family,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    /// Parameter or inclusive range `a..b`
    #[arg(long, allow_hyphen_values = true)]
    t: TRange,
    /// Comma-separated square-free m
    #[arg(long, default_value = "1")]
    m: String,
    #[arg(long, default_value = "search")]
    mode: Mode,
    /// Box for searched absolute inequalities
    #[arg(long, default_value_t = 1000)]
    v_max: u64,
    /// Largest right-hand side that is box-searched
    #[arg(long, default_value_t = 17)]
    sweep_cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for every (t, m) given and compare with the published lists
    Solve(SolveArgs),
    /// Like solve, but defaults to the published grid and prints a summary
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, default_value = "-20..20")]
        t: TRange,
        #[arg(long, default_value = "1,2,3,5,6,7,10,11,13,15,19")]
        m: String,
        #[arg(long, default_value = "search")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        v_max: u64,
        #[arg(long, default_value_t = 17)]
        sweep_cap: u64,
    },
    /// Bound constants and case rules of a preset
    Bounds {
        #[arg(long)]
        family: Option<Family>,
        /// generic_m, m1, m3_large_t or m3_small_t; all when omitted
        #[arg(long)]
        scenario: Option<Scenario>,
        /// Ring for the case rules; defaults to the worst case of the preset
        #[arg(long)]
        m: Option<i64>,
        /// Compare with the constants printed in the published corollaries
        #[arg(long)]
        audit: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Certified real roots and gap bounds of F_t(x, 1)
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        t: TRange,
    },
    /// Rational integer solutions of |F_t(u, v)| <= d
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        t: TRange,
        #[arg(long, default_value_t = 1)]
        d_max: u64,
        #[arg(long, default_value_t = 1000)]
        v_max: u64,
    },
    /// The (epsilon, eta, A, B) presets
    Presets {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
}

fn open_out(path: &Option<String>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn valid_ts(family: Family, range: &TRange) -> Vec<i64> {
    let (ok, skipped): (Vec<i64>, Vec<i64>) = range.values().partition(|&t| family.is_valid_t(t));
    if !skipped.is_empty() {
        eprintln!("note: skipping reducible t = {skipped:?}");
    }
    ok
}

fn exec_for(jobs: usize) -> Exec {
    if jobs > 1 {
        Exec::available()
    } else {
        Exec::Sequential
    }
}

fn run_verify(
    common: &Common,
    t: &TRange,
    m: &str,
    opts: SolveOptions,
    detailed: bool,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let ms = parse_m_list(m)?;
    let family = common.family;
    if t.is_single() && !family.is_valid_t(t.lo) {
        return Err(format!("t = {} gives a reducible {family} form", t.lo).into());
    }
    let exec = exec_for(common.jobs);
    let report: VerifyReport = with_jobs(common.jobs, || verify_theorem(family, &ms, t.values(), opts, exec));
    if !report.skipped_t.is_empty() {
        eprintln!("note: skipping reducible t = {:?}", report.skipped_t);
    }
    let mut out = open_out(&common.out)?;
    match common.format {
        Format::Json => {
            let v = json!({ "schema": 1, "command": if detailed { "solve" } else { "verify" }, "report": report });
            serde_json::to_writer_pretty(&mut out, &v)?;
            writeln!(out)?;
        }
        Format::Csv => render::cells_csv(&mut out, &report.cells)?,
        Format::Table if detailed => {
            for cell in &report.cells {
                render::cell_table(&mut out, family, cell)?;
            }
        }
        Format::Table => render::cells_table(&mut out, &report)?,
    }
    let failed: Vec<&CellOutcome> = report.cells.iter().filter(|c| !c.passed()).collect();
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} cells failed", failed.len(), report.cells.len());
        Ok(ExitCode::from(1))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Solve(a) => {
            let opts = SolveOptions { mode: a.mode, v_max: a.v_max, sweep_cap: a.sweep_cap };
            run_verify(&a.common, &a.t, &a.m, opts, true)
        }
        Command::Verify { common, t, m, mode, v_max, sweep_cap } => {
            run_verify(&common, &t, &m, SolveOptions { mode, v_max, sweep_cap }, false)
        }
        Command::Bounds { family, scenario, m, audit, format, out } => {
            let mut w = open_out(&out)?;
            if audit {
                let entries = audit_printed_constants();
                render::audit(&mut w, format, &entries)?;
                return Ok(if entries.iter().any(|e| e.flagged) { ExitCode::from(1) } else { ExitCode::SUCCESS });
            }
            let families = family.map(|f| vec![f]).unwrap_or_else(|| Family::all().to_vec());
            let scenarios = scenario.map(|s| vec![s]).unwrap_or_else(|| Scenario::all().to_vec());
            let mut rows = Vec::new();
            for f in &families {
                for s in &scenarios {
                    let p = presets(*f, *s);
                    let b = derive_bounds(&p);
                    let ring_ms = match m {
                        Some(m) => vec![m],
                        None => render::preset_rings(*s),
                    };
                    for rm in ring_ms {
                        let ring = RingSpec::new(rm)?;
                        let rules = case_rules(ring, &p, &b);
                        rows.push(render::BoundsRow {
                            family: *f,
                            scenario: *s,
                            m: rm,
                            threshold: large_threshold(ring, &b).clone(),
                            bounds: b.clone(),
                            rules,
                        });
                    }
                }
            }
            render::bounds(&mut w, format, &rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots { common, t } => {
            let ts = valid_ts(common.family, &t);
            let exec = exec_for(common.jobs);
            let data = with_jobs(common.jobs, || {
                par_map(exec, &ts, |&t| RootGapData::compute(&make_form(common.family, t).unwrap()))
            });
            let data = data.into_iter().collect::<Result<Vec<_>, _>>()?;
            let mut w = open_out(&common.out)?;
            render::roots(&mut w, common.format, &data)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { common, t, d_max, v_max } => {
            let ts = valid_ts(common.family, &t);
            let exec = exec_for(common.jobs);
            let family = common.family;
            let lists = with_jobs(common.jobs, || {
                par_map(exec, &ts, |&t| {
                    let roots = RootGapData::compute(&make_form(family, t).unwrap())?;
                    let found = brute_box_with(&roots, d_max, v_max, Exec::Sequential);
                    let cited = known_abs_solutions(family, t, d_max);
                    Ok::<_, simplest_thue::Error>((found, cited))
                })
            });
            let lists = lists.into_iter().collect::<Result<Vec<_>, _>>()?;
            let mut w = open_out(&common.out)?;
            render::oracle(&mut w, common.format, &lists)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Presets { format, out } => {
            let mut w = open_out(&out)?;
            render::presets(&mut w, format)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
