//! The simplest quartic and sextic binary forms and their symmetries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::QuadInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Quartic,
    Sextic,
}

impl Family {
    pub fn degree(self) -> u32 {
        match self {
            Family::Quartic => 4,
            Family::Sextic => 6,
        }
    }

    /// Parameters for which the form is reducible over Z.
    pub fn excluded(self) -> &'static [i64] {
        match self {
            Family::Quartic => &[-3, 0, 3],
            Family::Sextic => &[-8, -3, 0, 5],
        }
    }

    pub fn is_valid_t(self, t: i64) -> bool {
        !self.excluded().contains(&t)
    }

    /// `F_t(x, y) = F_{t'}(y, x)`.
    pub fn dual_t(self, t: i64) -> i64 {
        match self {
            Family::Quartic => -t,
            Family::Sextic => -t - 3,
        }
    }

    pub fn all() -> [Family; 2] {
        [Family::Quartic, Family::Sextic]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Quartic => "quartic",
            Family::Sextic => "sextic",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quartic" | "4" => Ok(Family::Quartic),
            "sextic" | "6" => Ok(Family::Sextic),
            other => Err(format!("unknown family `{other}` (expected quartic or sextic)")),
        }
    }
}

/// One member of a family at a fixed parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamForm {
    family: Family,
    t: i64,
    /// Coefficients of x^n, x^(n-1) y, ..., y^n.
    coeffs: Vec<i64>,
}

/// Largest |t| accepted; keeps every coefficient and the root bounds comfortably in range.
pub const MAX_ABS_T: i64 = 1 << 40;

impl ParamForm {
    pub fn new(family: Family, t: i64) -> Result<Self> {
        if !family.is_valid_t(t) {
            return Err(Error::ReducibleParameter { family, t });
        }
        if t.abs() > MAX_ABS_T {
            return Err(Error::Overflow);
        }
        let coeffs = match family {
            Family::Quartic => vec![1, -t, -6, t, 1],
            Family::Sextic => vec![1, -2 * t, -(5 * t + 15), -20, 5 * t, 2 * t + 6, 1],
        };
        Ok(ParamForm { family, t, coeffs })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn degree(&self) -> u32 {
        self.family.degree()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficients of `f(x) = F(x, 1)` in ascending order.
    pub fn ascending(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// The form `G` with `G(y, x) = F(x, y)`.
    pub fn dual(&self) -> Result<ParamForm> {
        let t = self.family.dual_t(self.t);
        ParamForm::new(self.family, t).map_err(|_| Error::DualParameterReducible { family: self.family, t })
    }

    /// Exact value of `F(x, y)` in Z_M, Horner in `x`.
    pub fn evaluate(&self, x: &QuadInt, y: &QuadInt) -> Result<QuadInt> {
        if x.ring() != y.ring() {
            return Err(Error::RingMismatch(x.ring().m(), y.ring().m()));
        }
        let ring = x.ring();
        let mut acc = ring.from_int(self.coeffs[0]);
        let mut ypow = ring.one();
        for &c in &self.coeffs[1..] {
            ypow = ypow.mul(y)?;
            acc = acc.mul(x)?.checked_add(&ypow.scale(c)?)?;
        }
        Ok(acc)
    }

    /// `norm(F(x, y)) <= k^2`, i.e. `|F(x, y)| <= k`.
    ///
    /// Falls back to big integers when the value leaves the `i64` range.
    pub fn satisfies(&self, x: &QuadInt, y: &QuadInt, k: u64) -> Result<bool> {
        match self.evaluate(x, y) {
            Ok(v) => match v.checked_norm() {
                Some(n) => Ok(n <= (k as i128) * (k as i128)),
                None => Ok(false),
            },
            Err(Error::Overflow) => Ok(self.norm_big(x, y) <= BigInt::from(k).pow(2)),
            Err(e) => Err(e),
        }
    }

    /// `norm(F(x, y))` with unbounded integers.
    pub fn norm_big(&self, x: &QuadInt, y: &QuadInt) -> BigInt {
        let ring = x.ring();
        let m = BigInt::from(ring.m());
        let split = |z: &QuadInt| {
            let (c1, c2) = z.coords_split();
            (BigInt::from(c1), BigInt::from(c2))
        };
        let mul = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| {
            (&a.0 * &b.0 - &m * &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
        };
        // F(s x, s y) = s^n F(x, y), as re + im i sqrt m
        let (sx, sy) = (split(x), split(y));
        let mut acc = (BigInt::from(self.coeffs[0]), BigInt::from(0));
        let mut ypow = (BigInt::from(1), BigInt::from(0));
        for &c in &self.coeffs[1..] {
            ypow = mul(&ypow, &sy);
            let ax = mul(&acc, &sx);
            acc = (ax.0 + &ypow.0 * c, ax.1 + &ypow.1 * c);
        }
        let n = BigInt::from(ring.split_scale()).pow(2 * self.degree());
        (&acc.0 * &acc.0 + &m * &acc.1 * &acc.1) / n
    }

    /// `F(u, v)` for rational integers, exact.
    pub fn eval_int(&self, u: i64, v: i64) -> BigInt {
        if let Some(x) = self.eval_i128(u, v) {
            return BigInt::from(x);
        }
        let (u, v) = (BigInt::from(u), BigInt::from(v));
        let mut acc = BigInt::from(self.coeffs[0]);
        let mut vp = BigInt::from(1);
        for &c in &self.coeffs[1..] {
            vp *= &v;
            acc = acc * &u + &vp * c;
        }
        acc
    }

    fn eval_i128(&self, u: i64, v: i64) -> Option<i128> {
        let (u, v) = (u as i128, v as i128);
        let mut acc = self.coeffs[0] as i128;
        let mut vp: i128 = 1;
        for &c in &self.coeffs[1..] {
            vp = vp.checked_mul(v)?;
            acc = acc.checked_mul(u)?.checked_add(vp.checked_mul(c as i128)?)?;
        }
        Some(acc)
    }

    /// `|F(u, v)| <= d` for rational integers.
    pub fn abs_value_le(&self, u: i64, v: i64, d: u64) -> bool {
        match self.eval_i128(u, v) {
            Some(x) => x.unsigned_abs() <= d as u128,
            None => self.eval_int(u, v).abs() <= BigInt::from(d),
        }
    }
}

impl fmt::Display for ParamForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coeffs.len() - 1;
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let monomial = {
                let mut parts = Vec::new();
                match n - k {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    e => parts.push(format!("x^{e}")),
                }
                match k {
                    0 => {}
                    1 => parts.push("y".to_string()),
                    e => parts.push(format!("y^{e}")),
                }
                parts.join("*")
            };
            let mag = c.abs();
            let body = if mag == 1 { monomial } else { format!("{mag}*{monomial}") };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ParamFormRepr {
    family: Family,
    t: i64,
}

impl Serialize for ParamForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParamFormRepr { family: self.family, t: self.t }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ParamFormRepr::deserialize(d)?;
        ParamForm::new(r.family, r.t).map_err(serde::de::Error::custom)
    }
}

pub fn make_form(family: Family, t: i64) -> Result<ParamForm> {
    ParamForm::new(family, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionPair {
    pub x: QuadInt,
    pub y: QuadInt,
}

impl SolutionPair {
    pub fn new(x: QuadInt, y: QuadInt) -> Self {
        assert_eq!(x.ring(), y.ring(), "solution pair from different rings");
        SolutionPair { x, y }
    }

    pub fn neg(&self) -> SolutionPair {
        SolutionPair { x: -self.x, y: -self.y }
    }

    pub fn swap(&self) -> SolutionPair {
        SolutionPair { x: self.y, y: self.x }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn sign_key(&self) -> [i64; 4] {
        let (y1, y2) = self.y.coords_split();
        let (x1, x2) = self.x.coords_split();
        [y1, y2, x1, x2]
    }
}

impl fmt::Display for SolutionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The automorphism orbit of a pair, deduplicated and sorted.
pub fn orbit(family: Family, p: &SolutionPair) -> Vec<SolutionPair> {
    let (x, y) = (p.x, p.y);
    let mut out: Vec<SolutionPair> = match family {
        Family::Quartic => vec![(x, y), (y, -x), (-x, -y), (-y, x)],
        Family::Sextic => vec![
            (x, y),
            (-y, x + y),
            (-x - y, x),
            (-x, -y),
            (y, -x - y),
            (x + y, -x),
        ],
    }
    .into_iter()
    .map(|(x, y)| SolutionPair { x, y })
    .collect();
    out.sort();
    out.dedup();
    out
}

/// Same orbit maps on rational integer pairs.
pub fn orbit_int(family: Family, (x, y): (i64, i64)) -> Vec<(i64, i64)> {
    let mut out = match family {
        Family::Quartic => vec![(x, y), (y, -x), (-x, -y), (-y, x)],
        Family::Sextic => vec![(x, y), (-y, x + y), (-x - y, x), (-x, -y), (y, -x - y), (x + y, -x)],
    };
    out.sort();
    out.dedup();
    out
}

/// Transport a pair to the dual parameter.
pub fn dual(family: Family, t: i64, p: &SolutionPair) -> Result<(i64, SolutionPair)> {
    let t2 = family.dual_t(t);
    if !family.is_valid_t(t2) {
        return Err(Error::DualParameterReducible { family, t: t2 });
    }
    Ok((t2, p.swap()))
}

/// Pick one representative from each `{p, -p}`: the one whose key
/// `(c1(y), c2(y), c1(x), c2(x))` is positive at its first nonzero entry.
pub fn normalize_pair(p: &SolutionPair) -> SolutionPair {
    match p.sign_key().iter().find(|&&k| k != 0) {
        Some(&k) if k < 0 => p.neg(),
        _ => *p,
    }
}

pub fn normalize_sign(solutions: &[SolutionPair]) -> Vec<SolutionPair> {
    let mut out: Vec<SolutionPair> = solutions.iter().map(normalize_pair).collect();
    out.sort();
    out.dedup();
    out
}
