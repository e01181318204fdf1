//! Thue inequalities `|F_t(u, v)| <= d` in rational integers: a root-proximity
//! box search and the cited complete solution tables with orbit and scaling
//! expansion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::{par_map, Exec};
use crate::forms::{orbit_int, Family, ParamForm};
use crate::roots::RootGapData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Backed by a cited complete result or by exact reasoning.
    ProofBacked,
    /// Complete only for `|v| <= v_max`.
    BoxBounded,
}

impl Completeness {
    pub fn and(self, other: Completeness) -> Completeness {
        if self == Completeness::ProofBacked && other == Completeness::ProofBacked {
            Completeness::ProofBacked
        } else {
            Completeness::BoxBounded
        }
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::ProofBacked => "proof_backed",
            Completeness::BoxBounded => "box_bounded",
        })
    }
}

/// Solutions of `|F(u, v)| <= rhs` other than `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsSolutionList {
    pub form: ParamForm,
    pub rhs: u64,
    /// Search box `|v| <= v_max`; `None` for cited lists.
    #[serde(rename = "box")]
    pub v_max: Option<u64>,
    pub pairs: Vec<(i64, i64)>,
    pub completeness: Completeness,
}

impl AbsSolutionList {
    /// Distinct second coordinates, sorted.
    pub fn second_coords(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.pairs.iter().map(|p| p.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }
}

/// All `(u, v) != (0, 0)` with `|v| <= v_max` and `|F(u, v)| <= d`.
pub fn brute_box(form: &ParamForm, d: u64, v_max: u64) -> Result<AbsSolutionList> {
    let data = RootGapData::compute(form)?;
    Ok(brute_box_with(&data, d, v_max, Exec::Sequential))
}

/// [`brute_box`] reusing precomputed root data, optionally parallel over `v`.
///
/// For `v != 0` every solution has `u` within `d 2^(n-1) / (B |v|^(n-1))` of some
/// `alpha_j v`, so only those windows are scanned; `v = 0` needs `|u|^n <= d`.
pub fn brute_box_with(data: &RootGapData, d: u64, v_max: u64, exec: Exec) -> AbsSolutionList {
    let form = data.form();
    let n = form.degree();
    let mut pairs = Vec::new();
    let mut u0: i64 = 0;
    while (u0 as u128 + 1).checked_pow(n).is_some_and(|p| p <= d as u128) {
        u0 += 1;
    }
    for u in 1..=u0 {
        pairs.push((u, 0));
        pairs.push((-u, 0));
    }
    let vs: Vec<i64> = (1..=v_max as i64).collect();
    let found = par_map(exec, &vs, |&v| {
        let mut out = Vec::new();
        for (lo, hi) in merge_windows(data.integer_partner_windows(v, d)) {
            for u in lo..=hi {
                if form.abs_value_le(u, v, d) {
                    out.push((u, v));
                }
            }
        }
        out
    });
    for (u, v) in found.into_iter().flatten() {
        pairs.push((u, v));
        pairs.push((-u, -v));
    }
    pairs.sort_unstable();
    pairs.dedup();
    AbsSolutionList { form: form.clone(), rhs: d, v_max: Some(v_max), pairs, completeness: Completeness::BoxBounded }
}

fn merge_windows(mut w: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    w.sort_unstable();
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(w.len());
    for (lo, hi) in w {
        match out.last_mut() {
            Some(last) if lo <= last.1 + 1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Which cited result a list came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CitedSource {
    /// Zero right-hand side: only `(0, 0)`.
    Trivial,
    /// Quartic, right-hand side 1 (Chen and Voutier).
    QuarticUnit,
    /// Quartic, `t >= 58`, right-hand side up to `6t + 7` (Lettl, Pethő and Voutier).
    QuarticLarge,
    /// Sextic, right-hand side 1 (Lettl, Pethő and Voutier; Hoshi).
    SexticUnit,
    /// Sextic, `t >= 89`, right-hand side up to `120t + 323` (Lettl, Pethő and Voutier).
    SexticLarge,
}

/// The cited complete list for `|F_t(u, v)| <= d`, if one covers the case.
///
/// Negative `t` (quartic) and `t <= -2` (sextic) are reduced through
/// `F_t(u, v) = F_t'(v, u)`.
pub fn known_abs_solutions(family: Family, t: i64, d: u64) -> Option<AbsSolutionList> {
    known_abs_with_source(family, t, d).map(|(l, _)| l)
}

pub fn known_abs_with_source(family: Family, t: i64, d: u64) -> Option<(AbsSolutionList, CitedSource)> {
    let form = ParamForm::new(family, t).ok()?;
    let canonical = match family {
        Family::Quartic => t > 0,
        Family::Sextic => t >= -1,
    };
    if !canonical {
        let (list, src) = known_abs_with_source(family, family.dual_t(t), d)?;
        let mut pairs: Vec<(i64, i64)> = list.pairs.iter().map(|&(u, v)| (v, u)).collect();
        pairs.sort_unstable();
        return Some((AbsSolutionList { form, pairs, ..list }, src));
    }
    let (generators, src): (Vec<(i64, i64)>, CitedSource) = match family {
        _ if d == 0 => (vec![], CitedSource::Trivial),
        Family::Quartic if t >= 58 && d <= (6 * t + 7) as u64 => {
            (vec![(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2)], CitedSource::QuarticLarge)
        }
        Family::Sextic if t >= 89 && d <= (120 * t + 323) as u64 => {
            (vec![(0, 1), (1, 1), (1, 2), (-1, 3)], CitedSource::SexticLarge)
        }
        Family::Quartic if d == 1 => {
            let mut g = vec![(1, 0), (0, 1)];
            match t {
                1 => g.extend([(1, 2), (2, -1)]),
                4 => g.extend([(2, 3), (3, -2)]),
                _ => {}
            }
            (g, CitedSource::QuarticUnit)
        }
        Family::Sextic if d == 1 => (vec![(1, 0), (0, 1), (1, -1)], CitedSource::SexticUnit),
        _ => return None,
    };
    let mut pairs = Vec::new();
    for g in generators {
        let orbit = match src {
            CitedSource::QuarticLarge | CitedSource::SexticLarge => orbit_int(family, g),
            _ => vec![g],
        };
        for p in orbit {
            if form.abs_value_le(p.0, p.1, d) {
                pairs.push(p);
                pairs.push((-p.0, -p.1));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let primitives =
        AbsSolutionList { form, rhs: d, v_max: None, pairs, completeness: Completeness::ProofBacked };
    Some((expand_scalings(&primitives, d), src))
}

/// Add `(g u, g v)` for `g >= 2` with `g^n |F(u, v)| <= d`.
pub fn expand_scalings(primitives: &AbsSolutionList, d: u64) -> AbsSolutionList {
    let form = &primitives.form;
    let n = form.degree();
    let mut pairs = primitives.pairs.clone();
    for &(u, v) in &primitives.pairs {
        let val = form.eval_int(u, v).magnitude().clone();
        let mut g: i64 = 2;
        loop {
            let scaled = num_bigint::BigUint::from(g as u64).pow(n) * &val;
            if scaled > d.into() {
                break;
            }
            pairs.push((g * u, g * v));
            g += 1;
        }
    }
    pairs.retain(|&(u, v)| form.abs_value_le(u, v, d));
    pairs.sort_unstable();
    pairs.dedup();
    AbsSolutionList { pairs, rhs: d, ..primitives.clone() }
}
