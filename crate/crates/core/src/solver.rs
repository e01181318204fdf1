//! Complete solution of `|F_t(x, y)| <= 1` in `x, y` from Z_M.
//!
//! Outline, for the parameter on the canonical side of the duality:
//! 1. certify that the root gaps of `F_t` dominate the preset's `(A, B)` and
//!    derive the case rules;
//! 2. resolve every rule's absolute inequality (cited table, box search or
//!    trivially) and turn the results into the possible split components of a
//!    large `y`;
//! 3. pair every `y` in the threshold disc or in the finite large set with its
//!    root-proximity partners `x`; if one component stays unbounded, also pair
//!    the finite `x` with partners `y` and solve the rays `x / y` real;
//! 4. verify every candidate exactly and compare with the golden table.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abs::{brute_box_with, known_abs_with_source, AbsSolutionList, CitedSource, Completeness};
use crate::bounds::{
    case_rules, derive_bounds, large_threshold, presets, scenario_for, CaseId, CaseRule, Component, Enclosure,
    Scenario, Trigger,
};
use crate::decimal::to_decimal_string;
use crate::error::{Error, Result};
use crate::exec::{par_map, Exec};
use crate::forms::{normalize_sign, Family, ParamForm, SolutionPair};
use crate::golden::{diff, golden_solutions};
use crate::poly::{floor_to_int, integer_points_nonpositive, Poly};
use crate::ring::{enumerate_disc_int, QuadInt, RingSpec};
use crate::roots::RootGapData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Only cited complete tables resolve absolute inequalities.
    Cited,
    /// Cited tables first, then a box search for right-hand sides up to the sweep cap.
    Search,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cited" => Ok(Mode::Cited),
            "search" => Ok(Mode::Search),
            other => Err(format!("unknown mode `{other}` (expected cited or search)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub mode: Mode,
    /// Box for searched absolute inequalities.
    pub v_max: u64,
    /// Largest right-hand side that is box-searched.
    pub sweep_cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { mode: Mode::Search, v_max: 1000, sweep_cap: 17 }
    }
}

impl SolveOptions {
    pub fn cited() -> Self {
        SolveOptions { mode: Mode::Cited, ..Default::default() }
    }
}

/// How a case rule's absolute inequality was settled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Resolution {
    Cited { source: CitedSource },
    BoxSearch { v_max: u64 },
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub id: CaseId,
    pub rule: String,
    /// `floor` of the right-hand side; the form is integral on rational integers.
    pub rhs: u64,
    pub resolution: Resolution,
    /// Nonzero values the constrained component of `y` can take, if resolved.
    pub component_values: Option<Vec<i64>>,
}

/// Possible nonzero values of one split component of a large `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Survivors {
    Finite(Vec<i64>),
    Unbounded,
}

impl Survivors {
    pub fn describe(&self) -> String {
        match self {
            Survivors::Finite(v) => {
                let mut abs: Vec<i64> = v.iter().map(|c| c.abs()).collect();
                abs.sort_unstable();
                abs.dedup();
                format!("{abs:?}")
            }
            Survivors::Unbounded => "unbounded".to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    /// Elements of norm at most the squared threshold.
    pub disc: usize,
    /// Large `y` allowed by the case rules with both components finite.
    pub large_finite: usize,
    /// Candidates tested with `y` fixed.
    pub partner_candidates: usize,
    /// Candidates tested with `x` fixed (only with an unbounded component).
    pub dual_candidates: usize,
    pub rays: usize,
    pub ray_candidates: usize,
    /// Verified solutions, before sign normalization.
    pub verified: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MismatchKind {
    MissingExpected,
    ExtraFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub kind: MismatchKind,
    pub pair: SolutionPair,
    /// `F_t(x, y)`, for auditing.
    pub value: QuadInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub family: Family,
    pub t: i64,
    pub m: i64,
    /// Parameter actually solved; differs from `t` when the dual was used.
    pub solved_t: i64,
    pub preset: Scenario,
    pub mode: Mode,
    pub a_lower: String,
    pub b_lower: String,
    pub threshold: Enclosure,
    /// `y` with norm at most this are enumerated directly.
    pub disc_norm_bound: i64,
    pub cases: Vec<CaseTrace>,
    pub first_component: Survivors,
    pub second_component: Survivors,
    pub stages: StageCounts,
    pub solutions: Vec<SolutionPair>,
    pub completeness: Completeness,
    pub mismatches: Vec<Mismatch>,
}

impl SolveReport {
    pub fn matches_golden(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Move `t` to the side the proofs work on: `t > 0` (quartic), `t >= -1` (sextic).
pub fn canonical_t(family: Family, t: i64) -> (i64, bool) {
    let canonical = match family {
        Family::Quartic => t > 0,
        Family::Sextic => t >= -1,
    };
    if canonical {
        (t, false)
    } else {
        (family.dual_t(t), true)
    }
}

/// Resolved absolute inequalities keyed by right-hand side.
struct AbsCache<'a> {
    family: Family,
    t: i64,
    roots: &'a RootGapData,
    opts: SolveOptions,
    lists: BTreeMap<u64, Option<(AbsSolutionList, Resolution)>>,
}

impl AbsCache<'_> {
    fn get(&mut self, d: u64) -> Option<(AbsSolutionList, Resolution)> {
        if let Some(hit) = self.lists.get(&d) {
            return hit.clone();
        }
        let found = if let Some((l, src)) = known_abs_with_source(self.family, self.t, d) {
            Some((l, Resolution::Cited { source: src }))
        } else if self.opts.mode == Mode::Search && d <= self.opts.sweep_cap {
            let l = brute_box_with(self.roots, d, self.opts.v_max, Exec::Sequential);
            Some((l, Resolution::BoxSearch { v_max: self.opts.v_max }))
        } else {
            None
        };
        self.lists.insert(d, found.clone());
        found
    }
}

fn floor_u64(x: &BigRational) -> u64 {
    floor_to_int(x).to_u64().unwrap_or(u64::MAX)
}

/// Nonzero integers strictly below `thr` in absolute value.
fn below(thr: &BigRational) -> Vec<i64> {
    let c = thr.ceil().to_integer().to_i64().expect("threshold fits i64") - 1;
    (1..=c.max(0)).flat_map(|k| [k, -k]).collect()
}

/// What the case rules leave for the split components of a `y` above the threshold.
pub struct ComponentConstraints {
    pub cases: Vec<CaseTrace>,
    /// `y` with one vanishing component.
    pub axis: Vec<(i64, i64)>,
    pub first: Survivors,
    pub second: Survivors,
    pub completeness: Completeness,
}

/// Resolve every rule and combine them into constraints on `(c1(y), c2(y))`.
///
/// Fails with `UnresolvedCase` when a zero-component rule stays open, or when both
/// threshold rules do and neither component is pinned down.
pub fn component_constraints(
    rules: &[CaseRule],
    resolve: &mut dyn FnMut(u64) -> Option<(AbsSolutionList, Resolution)>,
) -> Result<ComponentConstraints> {
    let mut cases = Vec::new();
    let mut completeness = Completeness::ProofBacked;
    let mut axis = Vec::new();
    let mut first = Survivors::Unbounded;
    let mut second = Survivors::Unbounded;
    let mut open_threshold = Vec::new();
    for rule in rules {
        let d = floor_u64(rule.rhs_bound());
        let resolved = resolve(d);
        let values = resolved.as_ref().map(|(l, _)| {
            let mut v: Vec<i64> =
                l.second_coords().into_iter().filter(|&v| v != 0).map(|v| v * rule.factor).collect();
            v.sort_unstable();
            v
        });
        let resolution = match &resolved {
            Some((_, r)) => r.clone(),
            None => Resolution::Unresolved,
        };
        if matches!(resolution, Resolution::BoxSearch { .. }) {
            completeness = Completeness::BoxBounded;
        }
        cases.push(CaseTrace {
            id: rule.id,
            rule: rule.description.clone(),
            rhs: d,
            resolution,
            component_values: values.clone(),
        });
        match &rule.trigger {
            Trigger::Zero(k) => {
                let Some(values) = values else {
                    return Err(Error::UnresolvedCase { case: rule.id.to_string(), rhs: d });
                };
                for v in values {
                    axis.push(match k {
                        Component::First => (0, v),
                        Component::Second => (v, 0),
                    });
                }
            }
            Trigger::AtLeast(k, thr) => {
                let s = match values {
                    Some(values) => {
                        let mut set: BTreeSet<i64> = below(thr.upper()).into_iter().collect();
                        set.extend(values);
                        Survivors::Finite(set.into_iter().collect())
                    }
                    None => {
                        open_threshold.push((rule.id, d));
                        Survivors::Unbounded
                    }
                };
                match k {
                    Component::First => first = s,
                    Component::Second => second = s,
                }
            }
        }
    }
    let empty = |s: &Survivors| matches!(s, Survivors::Finite(v) if v.is_empty());
    if first == Survivors::Unbounded && second == Survivors::Unbounded && !open_threshold.is_empty() {
        let case = open_threshold.iter().map(|(id, _)| id.to_string()).collect::<Vec<_>>().join("+");
        let rhs = open_threshold.iter().map(|&(_, d)| d).min().unwrap_or(0);
        return Err(Error::UnresolvedCase { case, rhs });
    }
    if empty(&first) || empty(&second) {
        // no y with both components nonzero survives
        first = Survivors::Finite(vec![]);
        second = Survivors::Finite(vec![]);
    }
    Ok(ComponentConstraints { cases, axis, first, second, completeness })
}

/// Polynomial in `z` with values in Z[i sqrt m], as real and imaginary parts.
#[derive(Clone)]
struct ZPoly {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
}

impl ZPoly {
    fn constant(re: i64, im: i64) -> Self {
        ZPoly { re: vec![re.into()], im: vec![im.into()] }
    }

    /// `a z + b + (c z + d) i sqrt m`
    fn linear(a: i64, b: i64, c: i64, d: i64) -> Self {
        ZPoly { re: vec![b.into(), a.into()], im: vec![d.into(), c.into()] }
    }

    fn mul(&self, o: &ZPoly, m: i64) -> ZPoly {
        let len = self.re.len() + o.re.len() - 1;
        let mut re = vec![BigInt::zero(); len];
        let mut im = vec![BigInt::zero(); len];
        for i in 0..self.re.len() {
            for j in 0..o.re.len() {
                re[i + j] += &self.re[i] * &o.re[j] - &self.im[i] * &o.im[j] * m;
                im[i + j] += &self.re[i] * &o.im[j] + &self.im[i] * &o.re[j];
            }
        }
        ZPoly { re, im }
    }

    fn add_scaled(&mut self, o: &ZPoly, k: i64) {
        if o.re.len() > self.re.len() {
            self.re.resize(o.re.len(), BigInt::zero());
            self.im.resize(o.im.len(), BigInt::zero());
        }
        for i in 0..o.re.len() {
            self.re[i] += &o.re[i] * k;
            self.im[i] += &o.im[i] * k;
        }
    }
}

fn sq(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); 2 * p.len() - 1];
    for i in 0..p.len() {
        for j in 0..p.len() {
            out[i + j] += &p[i] * &p[j];
        }
    }
    out
}

/// One ray: a fixed split component `(px, py)` and the other one `z (px, py) / g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ray {
    pub fixed: Component,
    pub px: i64,
    pub py: i64,
}

/// All pairs on the ray with `|F(x, y)| <= k`.
///
/// With `s x = c1 + c2 i sqrt m`, `s^n F(x, y) = F(s x, s y)` is a polynomial
/// `R(z) + I(z) i sqrt m` and the condition is `R^2 + m I^2 - k^2 s^(2n) <= 0`.
pub fn ray_solutions(form: &ParamForm, ring: RingSpec, ray: Ray, k: u64) -> Result<Vec<SolutionPair>> {
    let (px, py) = (ray.px, ray.py);
    if px == 0 && py == 0 {
        return Err(Error::DegenerateRay { x2: px, y2: py });
    }
    let g = px.gcd(&py);
    let (dx, dy) = (px / g, py / g);
    let m = ring.m();
    let (sx, sy) = match ray.fixed {
        Component::Second => (ZPoly::linear(dx, 0, 0, px), ZPoly::linear(dy, 0, 0, py)),
        Component::First => (ZPoly::linear(0, px, dx, 0), ZPoly::linear(0, py, dy, 0)),
    };
    let n = form.degree() as usize;
    let mut xp = vec![ZPoly::constant(1, 0)];
    let mut yp = vec![ZPoly::constant(1, 0)];
    for _ in 0..n {
        xp.push(xp.last().unwrap().mul(&sx, m));
        yp.push(yp.last().unwrap().mul(&sy, m));
    }
    let mut p = ZPoly::constant(0, 0);
    for (j, &c) in form.coeffs().iter().enumerate() {
        p.add_scaled(&xp[n - j].mul(&yp[j], m), c);
    }
    let mut q = sq(&p.re);
    for (i, c) in sq(&p.im).into_iter().enumerate() {
        q[i] += c * m;
    }
    let s = BigInt::from(ring.split_scale());
    q[0] -= BigInt::from(k).pow(2) * s.pow(2 * n as u32);
    let q = Poly::from_ints(q);
    if q.degree() != Some(2 * n) {
        return Err(Error::DegenerateRay { x2: px, y2: py });
    }
    let mut out = Vec::new();
    for z in integer_points_nonpositive(&q)? {
        let z = z.to_i64().ok_or(Error::Overflow)?;
        let (cx, cy) = match ray.fixed {
            Component::Second => ((z * dx, px), (z * dy, py)),
            Component::First => ((px, z * dx), (py, z * dy)),
        };
        if let (Some(x), Some(y)) = (ring.from_split(cx.0, cx.1), ring.from_split(cy.0, cy.1)) {
            if form.satisfies(&x, &y, k)? {
                out.push(SolutionPair::new(x, y));
            }
        }
    }
    Ok(out)
}

/// Solve `|F_t(x, y)| <= 1` over Z_M for `m` square-free.
pub fn solve_relative(family: Family, t: i64, m: i64, opts: SolveOptions) -> Result<SolveReport> {
    let ring = RingSpec::new(m)?;
    let form = ParamForm::new(family, t)?;
    let (ct, dualized) = canonical_t(family, t);
    let cform = ParamForm::new(family, ct)?;
    let preset = scenario_for(family, m, ct);
    let params = presets(family, preset);
    let mut roots = RootGapData::compute(&cform)?;
    if !roots.ensure_dominates(&params.a, &params.b)? {
        return Err(Error::PresetNotApplicable {
            t: ct,
            a_lower: to_decimal_string(roots.a_lower(), 6),
            b_lower: to_decimal_string(roots.b_lower(), 6),
        });
    }
    let bounds = derive_bounds(&params);
    let rules = case_rules(ring, &params, &bounds);
    let threshold = large_threshold(ring, &bounds).clone();
    let disc_bound = floor_to_int(&(threshold.upper() * threshold.upper())).to_i64().ok_or(Error::Overflow)?;

    let mut cache = AbsCache { family, t: ct, roots: &roots, opts, lists: BTreeMap::new() };
    let cons = component_constraints(&rules, &mut |d| cache.get(d))?;

    let mut stages = StageCounts::default();
    let disc = enumerate_disc_int(ring, disc_bound as i128);
    stages.disc = disc.len();
    let mut large: BTreeSet<QuadInt> = BTreeSet::new();
    let mut add_large = |c1: i64, c2: i64| {
        if let Some(y) = ring.from_split(c1, c2) {
            if y.norm() > disc_bound as i128 {
                large.insert(y);
            }
        }
    };
    for &(c1, c2) in &cons.axis {
        add_large(c1, c2);
    }
    let semi_infinite = match (&cons.first, &cons.second) {
        (Survivors::Finite(a), Survivors::Finite(b)) => {
            for &c1 in a {
                for &c2 in b {
                    add_large(c1, c2);
                }
            }
            None
        }
        (Survivors::Unbounded, Survivors::Finite(b)) => Some((Component::Second, b.clone())),
        (Survivors::Finite(a), Survivors::Unbounded) => Some((Component::First, a.clone())),
        (Survivors::Unbounded, Survivors::Unbounded) => unreachable!("rejected by component_constraints"),
    };
    stages.large_finite = large.len();

    let anchors: Vec<QuadInt> = disc.iter().copied().chain(large.iter().copied()).collect();
    let mut found: Vec<SolutionPair> = Vec::new();
    for y in &anchors {
        let cands = roots.partner_candidates(y, 1);
        stages.partner_candidates += cands.len();
        for x in cands {
            if cform.satisfies(&x, y, 1)? {
                found.push(SolutionPair::new(x, *y));
            }
        }
    }
    if let Some((fixed, values)) = semi_infinite {
        let dual_form = cform.dual()?;
        let dual_roots = RootGapData::compute(&dual_form)?;
        for x in &anchors {
            let cands = dual_roots.partner_candidates(x, 1);
            stages.dual_candidates += cands.len();
            for y in cands {
                if cform.satisfies(x, &y, 1)? {
                    found.push(SolutionPair::new(*x, y));
                }
            }
        }
        for &px in &values {
            for &py in &values {
                stages.rays += 1;
                let sols = ray_solutions(&cform, ring, Ray { fixed, px, py }, 1)?;
                stages.ray_candidates += sols.len();
                found.extend(sols);
            }
        }
    }
    stages.verified = found.len();

    let mut solutions = Vec::with_capacity(found.len());
    for p in found {
        let p = if dualized { p.swap() } else { p };
        assert!(form.satisfies(&p.x, &p.y, 1)?, "dual transport broke solution {p}");
        solutions.push(p);
    }
    let solutions = normalize_sign(&solutions);
    let (missing, extra) = diff(&golden_solutions(family, t, ring), &solutions);
    let mut mismatches = Vec::new();
    for (kind, list) in [(MismatchKind::MissingExpected, missing), (MismatchKind::ExtraFound, extra)] {
        for pair in list {
            mismatches.push(Mismatch { kind, value: form.evaluate(&pair.x, &pair.y)?, pair });
        }
    }
    Ok(SolveReport {
        family,
        t,
        m,
        solved_t: ct,
        preset,
        mode: opts.mode,
        a_lower: to_decimal_string(roots.a_lower(), 6),
        b_lower: to_decimal_string(roots.b_lower(), 6),
        threshold,
        disc_norm_bound: disc_bound,
        cases: cons.cases,
        first_component: cons.first,
        second_component: cons.second,
        stages,
        solutions,
        completeness: cons.completeness,
        mismatches,
    })
}

/// One `(t, m)` cell of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOutcome {
    pub t: i64,
    pub m: i64,
    pub report: Option<SolveReport>,
    pub error: Option<String>,
}

impl CellOutcome {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.matches_golden())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: Family,
    pub mode: Mode,
    pub skipped_t: Vec<i64>,
    pub cells: Vec<CellOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed()).count()
    }

    pub fn mismatch_count(&self) -> usize {
        self.cells.iter().filter_map(|c| c.report.as_ref()).map(|r| r.mismatches.len()).sum()
    }
}

/// Solve every `(t, m)` of the grid and compare with the golden table.
/// Excluded `t` are skipped; cells come back in `(t, m)` order whatever `exec` is.
pub fn verify_theorem(
    family: Family,
    ms: &[i64],
    ts: impl IntoIterator<Item = i64>,
    opts: SolveOptions,
    exec: Exec,
) -> VerifyReport {
    let mut skipped_t = Vec::new();
    let mut grid = Vec::new();
    for t in ts {
        if !family.is_valid_t(t) {
            skipped_t.push(t);
            continue;
        }
        for &m in ms {
            grid.push((t, m));
        }
    }
    let cells = par_map(exec, &grid, |&(t, m)| match solve_relative(family, t, m, opts) {
        Ok(r) => CellOutcome { t, m, report: Some(r), error: None },
        Err(e) => CellOutcome { t, m, report: None, error: Some(e.to_string()) },
    });
    VerifyReport { family, mode: opts.mode, skipped_t, cells }
}
