//! The complete solution lists of `|F_t(x, y)| <= 1` over Z_M, up to sign, as
//! published for both families. `w` is `i` for m = 1 and `omega = (1 + i sqrt 3)/2`
//! for m = 3.

use serde::{Deserialize, Serialize};

use crate::forms::{normalize_sign, Family, SolutionPair};
use crate::ring::{QuadInt, RingSpec};

/// Which rings a row applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MClass {
    Any,
    M1,
    M3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TPattern {
    Any,
    Exactly(i64),
}

#[derive(Debug, Clone)]
pub struct GoldenRow {
    pub family: Family,
    pub m_class: MClass,
    pub t: TPattern,
    pub pairs: &'static [(&'static str, &'static str)],
}

type Rows = &'static [(MClass, TPattern, &'static [(&'static str, &'static str)])];

const QUARTIC: Rows = &[
    (MClass::Any, TPattern::Any, &[("0", "0"), ("0", "1"), ("1", "0")]),
    (MClass::Any, TPattern::Exactly(1), &[("1", "2"), ("2", "-1")]),
    (MClass::Any, TPattern::Exactly(-1), &[("2", "1"), ("-1", "2")]),
    (MClass::Any, TPattern::Exactly(4), &[("2", "3"), ("3", "-2")]),
    (MClass::Any, TPattern::Exactly(-4), &[("3", "2"), ("-2", "3")]),
    (MClass::M1, TPattern::Any, &[("0", "w"), ("w", "0")]),
    (MClass::M3, TPattern::Any, &[("w", "0"), ("0", "w"), ("1-w", "0"), ("0", "1-w")]),
    (MClass::M1, TPattern::Exactly(1), &[("w", "2w"), ("2w", "-w")]),
    (MClass::M1, TPattern::Exactly(-1), &[("2w", "w"), ("-w", "2w")]),
    (MClass::M1, TPattern::Exactly(4), &[("2w", "3w"), ("3w", "-2w")]),
    (MClass::M1, TPattern::Exactly(-4), &[("3w", "2w"), ("-2w", "3w")]),
    (
        MClass::M3,
        TPattern::Exactly(1),
        &[("2w-2", "-w+1"), ("w-1", "2w-2"), ("-2w", "w"), ("w", "2w")],
    ),
    (
        MClass::M3,
        TPattern::Exactly(-1),
        &[("-w+1", "2w-2"), ("2w-2", "w-1"), ("w", "-2w"), ("2w", "w")],
    ),
    (
        MClass::M3,
        TPattern::Exactly(4),
        &[("3w-3", "-2w+2"), ("2w-2", "3w-3"), ("2w", "3w"), ("3w", "-2w")],
    ),
    (
        MClass::M3,
        TPattern::Exactly(-4),
        &[("-2w+2", "3w-3"), ("3w-3", "2w-2"), ("3w", "2w"), ("-2w", "3w")],
    ),
];

const SEXTIC: Rows = &[
    (MClass::Any, TPattern::Any, &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "-1")]),
    (MClass::M1, TPattern::Any, &[("0", "w"), ("w", "0"), ("w", "-w")]),
    (
        MClass::M3,
        TPattern::Any,
        &[("w", "0"), ("0", "w"), ("w", "-w"), ("1-w", "0"), ("0", "w-1"), ("w-1", "-w+1")],
    ),
];

pub fn golden_rows(family: Family) -> Vec<GoldenRow> {
    let table = match family {
        Family::Quartic => QUARTIC,
        Family::Sextic => SEXTIC,
    };
    table.iter().map(|&(m_class, t, pairs)| GoldenRow { family, m_class, t, pairs }).collect()
}

/// Parse `a + b w` written as e.g. `2w-2`, `-w+1`, `1-w`, `3`.
pub fn parse_quad(ring: RingSpec, s: &str) -> Option<QuadInt> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let (mut a1, mut a2) = (0i64, 0i64);
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        if let Some(coef) = term.strip_suffix('w') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() { 1 } else { coef.parse().ok()? };
            a2 += sign * c;
        } else {
            let c: i64 = term.parse().ok()?;
            a1 += sign * c;
        }
    }
    Some(QuadInt::new(ring, a1, a2))
}

fn row_applies(row: &GoldenRow, t: i64, m: i64) -> bool {
    let m_ok = match row.m_class {
        MClass::Any => true,
        MClass::M1 => m == 1,
        MClass::M3 => m == 3,
    };
    let t_ok = match row.t {
        TPattern::Any => true,
        TPattern::Exactly(x) => x == t,
    };
    m_ok && t_ok
}

/// Expected sign-normalized solutions for `(family, t, m)`.
pub fn golden_solutions(family: Family, t: i64, ring: RingSpec) -> Vec<SolutionPair> {
    let mut out = Vec::new();
    for row in golden_rows(family) {
        if !row_applies(&row, t, ring.m()) {
            continue;
        }
        for (x, y) in row.pairs {
            let x = parse_quad(ring, x).expect("golden entries are well formed");
            let y = parse_quad(ring, y).expect("golden entries are well formed");
            out.push(SolutionPair::new(x, y));
        }
    }
    normalize_sign(&out)
}

/// Pairs in `expected` but not `found`, and pairs in `found` but not `expected`.
pub fn diff(expected: &[SolutionPair], found: &[SolutionPair]) -> (Vec<SolutionPair>, Vec<SolutionPair>) {
    let e = normalize_sign(expected);
    let f = normalize_sign(found);
    let missing = e.iter().filter(|p| !f.contains(p)).cloned().collect();
    let extra = f.iter().filter(|p| !e.contains(p)).cloned().collect();
    (missing, extra)
}
