//! Parsing of `t` ranges and `m` lists.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TRange {
    pub lo: i64,
    pub hi: i64,
}

impl TRange {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for TRange {
    type Err = String;

    /// `7`, `-3`, or the inclusive range `-20..20`.
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("bad integer `{x}` in t"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty t range {lo}..{hi}"));
        }
        Ok(TRange { lo, hi })
    }
}

pub fn parse_m_list(s: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let m: i64 = part.trim().parse().map_err(|_| format!("bad m `{part}`"))?;
        simplest_thue::ring::RingSpec::new(m).map_err(|e| e.to_string())?;
        out.push(m);
    }
    if out.is_empty() {
        return Err("no m given".into());
    }
    Ok(out)
}
