//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line; run with `--nocapture` to see them.

mod common;

use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplest_thue::abs::{brute_box_with, known_abs_solutions, Completeness};
use simplest_thue::bounds::{audit_printed_constants, printed_tolerance};
use simplest_thue::decimal::{dec, to_decimal_string};
use simplest_thue::exec::Exec;
use simplest_thue::forms::{make_form, orbit, Family, SolutionPair};
use simplest_thue::poly::{isolate_real_roots, Poly};
use simplest_thue::ring::{enumerate_disc_int, QuadInt, RingSpec};
use simplest_thue::roots::{regime_table, Regime, RootGapData};
use simplest_thue::solver::{solve_relative, verify_theorem, SolveOptions};

fn report(n: u32, ok: bool, what: &str, detail: &str, started: Instant) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} criterion {n}: {what} ({detail}; {:.1}s)", started.elapsed().as_secs_f64());
}

#[test]
fn criterion_1_printed_constants() {
    let started = Instant::now();
    let audit = audit_printed_constants();
    let tol = printed_tolerance();
    let bad: Vec<String> = audit
        .iter()
        .filter(|a| a.flagged)
        .map(|a| {
            format!(
                "{} {} {:?}: printed {} vs {}",
                a.constant.family,
                a.constant.scenario,
                a.constant.quantity,
                a.constant.printed,
                to_decimal_string(&a.computed.hi, 6)
            )
        })
        .collect();
    let detail = format!(
        "{} constants, tolerance {}, {} outside: {}",
        audit.len(),
        to_decimal_string(&tol, 3),
        bad.len(),
        bad.join("; ")
    );
    report(1, bad.is_empty(), "printed corollary constants recomputed", &detail, started);
    assert!(bad.is_empty(), "{detail}");
}

fn theorem_grid(family: Family, n: u32) {
    let started = Instant::now();
    let report_v = verify_theorem(family, &common::GRID_M, -20..=20, SolveOptions::default(), Exec::available());
    let failures: Vec<String> = report_v
        .cells
        .iter()
        .filter(|c| !c.passed())
        .map(|c| match (&c.report, &c.error) {
            (Some(r), _) => format!("t={} m={}: {:?}", c.t, c.m, r.mismatches),
            (None, Some(e)) => format!("t={} m={}: {e}", c.t, c.m),
            _ => unreachable!(),
        })
        .collect();
    let exceptional = report_v
        .cells
        .iter()
        .filter_map(|c| c.report.as_ref())
        .filter(|r| r.solutions.len() > 4)
        .count();
    let detail = format!(
        "{} cells, skipped t {:?}, {} cells beyond the generic rows, {} failing",
        report_v.cells.len(),
        report_v.skipped_t,
        exceptional,
        failures.len()
    );
    report(n, failures.is_empty(), &format!("{family} golden table over t in [-20,20]"), &detail, started);
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_2_quartic_theorem() {
    theorem_grid(Family::Quartic, 2);
}

#[test]
fn criterion_3_sextic_theorem() {
    theorem_grid(Family::Sextic, 3);
}

#[test]
fn criterion_4_large_t_cited() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let mut cells = 0;
    for (family, ts) in [(Family::Quartic, [58, 100, 500]), (Family::Sextic, [89, 120, 500])] {
        let (a, b) = regime_table(family, Regime::LargeT);
        for t in ts {
            let mut roots = RootGapData::compute(&make_form(family, t).unwrap()).unwrap();
            if !roots.ensure_dominates(&a, &b).unwrap() {
                problems.push(format!("{family} t={t}: root gaps below the regime table"));
            }
            for m in common::GRID_M {
                cells += 1;
                match solve_relative(family, t, m, SolveOptions::cited()) {
                    Ok(r) if r.completeness == Completeness::ProofBacked && r.matches_golden() => {}
                    Ok(r) => problems.push(format!("{family} t={t} m={m}: {} {:?}", r.completeness, r.mismatches)),
                    Err(e) => problems.push(format!("{family} t={t} m={m}: {e}")),
                }
            }
        }
    }
    let detail = format!("{cells} cited cells, {} problems", problems.len());
    report(4, problems.is_empty(), "large-t proof-backed runs", &detail, started);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn criterion_5_absolute_tables() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let mut checked = 0;
    let box_search = |family: Family, t: i64, d: u64| {
        let roots = RootGapData::compute(&make_form(family, t).unwrap()).unwrap();
        brute_box_with(&roots, d, 1000, Exec::Sequential)
    };
    for (family, ts) in [(Family::Quartic, 1..=100), (Family::Sextic, -1..=100)] {
        for t in ts {
            if !family.is_valid_t(t) {
                continue;
            }
            checked += 1;
            let found = box_search(family, t, 1);
            let cited = known_abs_solutions(family, t, 1).unwrap();
            if found.pairs != cited.pairs {
                problems.push(format!("{family} t={t}: box {:?} vs cited {:?}", found.pairs, cited.pairs));
            }
        }
    }
    for (family, ts, rhs) in [
        (Family::Quartic, vec![58, 59, 64, 80, 100], (|t| 6 * t + 7) as fn(i64) -> i64),
        (Family::Sextic, vec![89, 90, 100, 120], |t| 120 * t + 323),
    ] {
        for t in ts {
            checked += 1;
            let d = rhs(t) as u64;
            let found = box_search(family, t, d);
            let cited = known_abs_solutions(family, t, d).unwrap();
            let outside: Vec<_> = found.pairs.iter().filter(|p| !cited.contains(**p)).collect();
            if !outside.is_empty() {
                problems.push(format!("{family} t={t} d={d}: not covered {outside:?}"));
            }
        }
    }
    let detail = format!("{checked} tables, {} problems", problems.len());
    report(5, problems.is_empty(), "absolute unit equations and cited generators", &detail, started);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn criterion_6_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut problems = Vec::new();
    for _ in 0..50 {
        let family = if rng.gen_bool(0.5) { Family::Quartic } else { Family::Sextic };
        let t = loop {
            let t = rng.gen_range(-100..=100);
            if family.is_valid_t(t) {
                break t;
            }
        };
        let m = common::GRID_M[rng.gen_range(0..common::GRID_M.len())];
        let oracle = common::disc_product_oracle(family, t, m, 1600);
        match solve_relative(family, t, m, SolveOptions::default()) {
            Ok(r) if r.solutions == oracle => {}
            Ok(r) => problems.push(format!("{family} t={t} m={m}: solver {:?} oracle {:?}", r.solutions, oracle)),
            Err(e) => problems.push(format!("{family} t={t} m={m}: {e}")),
        }
    }
    let detail = format!("50 random cells, radius 40, {} disagreements", problems.len());
    report(6, problems.is_empty(), "solver equals disc-product enumeration", &detail, started);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn criterion_7_invariants() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failed = Vec::new();

    // norm multiplicativity
    let mut ok = true;
    for _ in 0..2000 {
        let m = common::GRID_M[rng.gen_range(0..common::GRID_M.len())];
        let ring = RingSpec::new(m).unwrap();
        let a = QuadInt::new(ring, rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
        let b = QuadInt::new(ring, rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
        ok &= a.mul(&b).unwrap().norm() == a.norm() * b.norm();
    }
    if !ok {
        failed.push("norm multiplicativity");
    }

    // enumeration completeness
    let mut ok = true;
    for m in [1, 2, 3, 5, 7, 11] {
        let ring = RingSpec::new(m).unwrap();
        for r_sq in [0, 1, 2, 3, 10, 57, 400, 2500, 10_000] {
            let mut lib: Vec<(i64, i64)> = enumerate_disc_int(ring, r_sq).iter().map(|z| (z.a1, z.a2)).collect();
            let mut naive = common::disc(m, r_sq as i64);
            lib.sort_unstable();
            naive.sort_unstable();
            ok &= lib == naive;
        }
    }
    if !ok {
        failed.push("enumeration completeness");
    }

    // orbit, duality and homogeneity
    let mut ok = true;
    for _ in 0..500 {
        let family = if rng.gen_bool(0.5) { Family::Quartic } else { Family::Sextic };
        let t = loop {
            let t = rng.gen_range(-200..=200);
            if family.is_valid_t(t) {
                break t;
            }
        };
        let f = make_form(family, t).unwrap();
        let dual = f.dual().unwrap();
        let ring = RingSpec::new(common::GRID_M[rng.gen_range(0..common::GRID_M.len())]).unwrap();
        let x = QuadInt::new(ring, rng.gen_range(-30..30), rng.gen_range(-30..30));
        let y = QuadInt::new(ring, rng.gen_range(-30..30), rng.gen_range(-30..30));
        let v = f.evaluate(&x, &y).unwrap();
        for p in orbit(family, &SolutionPair::new(x, y)) {
            ok &= f.evaluate(&p.x, &p.y).unwrap() == v;
        }
        ok &= dual.evaluate(&y, &x).unwrap() == v;
        let g = rng.gen_range(-4i64..=4);
        let gn = ring.from_int(g).pow(f.degree()).unwrap();
        ok &= f.evaluate(&x.scale(g).unwrap(), &y.scale(g).unwrap()).unwrap() == gn.mul(&v).unwrap();
    }
    if !ok {
        failed.push("orbit/duality/homogeneity");
    }

    // Sturm certificates: one sign change per interval, count matches degree
    let mut ok = true;
    for _ in 0..100 {
        let family = if rng.gen_bool(0.5) { Family::Quartic } else { Family::Sextic };
        let t = loop {
            let t = rng.gen_range(-1000..=1000);
            if family.is_valid_t(t) {
                break t;
            }
        };
        let f = make_form(family, t).unwrap();
        let p = Poly::from_i64(&f.ascending());
        let roots = isolate_real_roots(&p, &dec("0.000001")).unwrap();
        ok &= roots.len() == f.degree() as usize;
        let chain = p.sturm_chain();
        for iv in &roots {
            ok &= iv.is_exact() || chain.count(&iv.lo, &iv.hi) == 1;
            ok &= iv.width() <= dec("0.000001");
        }
        for w in roots.windows(2) {
            ok &= w[0].hi < w[1].lo;
        }
    }
    if !ok {
        failed.push("Sturm certificates");
    }

    let _ = BigRational::from_integer(0.into());
    let detail = if failed.is_empty() { "4 groups".to_string() } else { format!("failed: {}", failed.join(", ")) };
    report(7, failed.is_empty(), "invariant groups", &detail, started);
    assert!(failed.is_empty(), "{detail}");
}
