//! Root-gap driven bounds for relative Thue inequalities `|F(x, y)| <= K` over
//! Z_M, M = Q(i*sqrt(m)), and the eight case rules they imply.
//!
//! Irrational quantities (n-th roots, `sqrt(m)`) are carried as two-sided
//! rational enclosures; every rule uses the upper endpoint, which only ever
//! weakens a hypothesis or loosens a conclusion.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::{dec, parse_exact, to_decimal_string, to_exact_string, to_f64};
use crate::forms::Family;
use crate::poly::nth_root_enclosure;
use crate::ring::RingSpec;
use crate::roots::{regime_table, Regime};

/// Resolution of the enclosures: `2^-40`, well inside the required `1e-9`.
const ENCLOSURE_BITS: u32 = 40;

/// Closed rational interval known to contain a real constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn nth_root(x: &BigRational, n: u32) -> Self {
        if n == 1 {
            return Enclosure::exact(x.clone());
        }
        let (lo, hi) = nth_root_enclosure(x, n, ENCLOSURE_BITS);
        // exact roots: collapse when lo^n == x
        if num_traits::pow(lo.clone(), n as usize) == *x {
            return Enclosure::exact(lo);
        }
        Enclosure { lo, hi }
    }

    /// Product of two enclosures of positive quantities.
    pub fn mul_pos(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    /// Quotient of positive quantities.
    pub fn div_pos(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo / &other.hi, hi: &self.hi / &other.lo }
    }

    pub fn scale(&self, k: &BigRational) -> Enclosure {
        assert!(*k > BigRational::zero());
        Enclosure { lo: &self.lo * k, hi: &self.hi * k }
    }

    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// The conservative value used in decisions.
    pub fn upper(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Distance from `x` to the enclosure (0 when inside).
    pub fn distance_to(&self, x: &BigRational) -> BigRational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            BigRational::zero()
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_decimal_string(&self.hi, 6))
    }
}

#[derive(Serialize, Deserialize)]
struct EnclosureRepr {
    lo: String,
    hi: String,
    decimal: String,
}

impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EnclosureRepr {
            lo: to_exact_string(&self.lo),
            hi: to_exact_string(&self.hi),
            decimal: to_decimal_string(&self.hi, 6),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Enclosure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = EnclosureRepr::deserialize(d)?;
        let lo = parse_exact(&r.lo).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
        let hi = parse_exact(&r.hi).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
        Ok(Enclosure { lo, hi })
    }
}

/// Inputs to the bound formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub k: BigRational,
    pub epsilon: BigRational,
    pub eta: BigRational,
    pub n: u32,
    pub a: BigRational,
    pub b: BigRational,
}

impl BoundParams {
    pub fn validate(&self) -> bool {
        let zero = BigRational::zero();
        let one = BigRational::one();
        self.epsilon > zero
            && self.epsilon < one
            && self.eta > zero
            && self.eta < one
            && self.k >= one
            && self.a > zero
            && self.b > zero
            && self.n >= 3
    }
}

/// The constants `C, C1, C2, D, E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    pub c: Enclosure,
    pub c1: Enclosure,
    pub c2: Enclosure,
    pub d: Enclosure,
    pub e: Enclosure,
}

/// Evaluate
/// `C = max(K / ((1-eps)^(n-1) B), 1)`,
/// `C1 = max(K^(1/n) / (eps A), (2C)^(1/(n-2)))`,
/// `C2 = max(K^(1/n) / (eps A), C^(1/(n-2)))`,
/// `D = (K / (eta (1-eps)^(n-1) A B))^(1/n)`,
/// `E = (1+eta)^(n-1) K / (1-eps)^(n-1)`.
pub fn derive_bounds(p: &BoundParams) -> BoundSet {
    assert!(p.validate(), "bound parameters out of range");
    let one = BigRational::one();
    let n = p.n;
    let shrink = num_traits::pow(&one - &p.epsilon, (n - 1) as usize);
    let c = (&p.k / (&shrink * &p.b)).max(one.clone());
    let k_root = Enclosure::nth_root(&p.k, n);
    let root_term = k_root.scale(&(one.clone() / (&p.epsilon * &p.a)));
    let two_c = Enclosure::nth_root(&(&c * BigRational::from_integer(2.into())), n - 2);
    let c_root = Enclosure::nth_root(&c, n - 2);
    let d_arg = &p.k / (&p.eta * &shrink * &p.a * &p.b);
    let e = num_traits::pow(&one + &p.eta, (n - 1) as usize) * &p.k / &shrink;
    BoundSet {
        c1: root_term.max(&two_c),
        c2: root_term.max(&c_root),
        c: Enclosure::exact(c),
        d: Enclosure::nth_root(&d_arg, n),
        e: Enclosure::exact(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    IA1,
    IA2,
    IB1,
    IB2,
    IIA1,
    IIA2,
    IIB1,
    IIB2,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A split component of `y`: `c1 = 2y1 + y2` (resp. `y1`), `c2 = y2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trigger {
    /// The component vanishes.
    Zero(Component),
    /// `|component| >= threshold`.
    AtLeast(Component, Enclosure),
}

/// Which rational-integer pair the rule's absolute inequality is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormArgs {
    /// `(x2, y2)`
    SecondCoords,
    /// `(2x1 + x2, 2y1 + y2)`
    HalfSplit,
    /// `(x1, y1)`
    FirstCoords,
}

impl FormArgs {
    pub fn describe(self) -> &'static str {
        match self {
            FormArgs::SecondCoords => "F(x2, y2)",
            FormArgs::HalfSplit => "F(2x1 + x2, 2y1 + y2)",
            FormArgs::FirstCoords => "F(x1, y1)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRule {
    pub id: CaseId,
    pub trigger: Trigger,
    pub args: FormArgs,
    /// Conclusion `|F(args)| <= rhs`.
    pub rhs: Enclosure,
    /// Component of `y` that the second argument of `args` determines.
    pub constrains: Component,
    /// That component equals `factor` times the second argument.
    pub factor: i64,
    pub description: String,
}

impl CaseRule {
    pub fn rhs_bound(&self) -> &BigRational {
        self.rhs.upper()
    }

    pub fn threshold(&self) -> Option<&Enclosure> {
        match &self.trigger {
            Trigger::AtLeast(_, t) => Some(t),
            Trigger::Zero(_) => None,
        }
    }
}

/// Enclosure of `sqrt(m)`.
pub fn sqrt_enclosure(m: i64) -> Enclosure {
    Enclosure::nth_root(&BigRational::from_integer(m.into()), 2)
}

/// The four case rules that apply to the residue class of `m`.
pub fn case_rules(ring: RingSpec, p: &BoundParams, b: &BoundSet) -> Vec<CaseRule> {
    let n = p.n;
    let m = ring.m();
    let m_pow = BigRational::from_integer(BigInt::from(m).pow(n / 2));
    let two_n = BigRational::from_integer(BigInt::from(2).pow(n));
    let sqrt_m = sqrt_enclosure(m);
    let k = Enclosure::exact(p.k.clone());
    let two = BigRational::from_integer(2.into());
    let inv_m_pow = BigRational::one() / &m_pow;
    if ring.is_half_integral() {
        let ia1 = k.scale(&(&two_n * &inv_m_pow));
        let ia2_thr = b.d.scale(&two);
        let ia2 = b.e.scale(&two_n);
        let ib2_thr = b.d.scale(&two).div_pos(&sqrt_m);
        let ib2 = b.e.scale(&(&two_n * &inv_m_pow));
        vec![
            CaseRule {
                id: CaseId::IA1,
                description: format!("2y1+y2 = 0 => 2x1+x2 = 0 and |F(x2,y2)| <= {ia1}"),
                trigger: Trigger::Zero(Component::First),
                args: FormArgs::SecondCoords,
                rhs: ia1,
                constrains: Component::Second,
                factor: 1,
            },
            CaseRule {
                id: CaseId::IA2,
                description: format!("|2y1+y2| >= {ia2_thr} => |F(2x1+x2,2y1+y2)| <= {ia2}"),
                trigger: Trigger::AtLeast(Component::First, ia2_thr),
                args: FormArgs::HalfSplit,
                rhs: ia2,
                constrains: Component::First,
                factor: 1,
            },
            CaseRule {
                id: CaseId::IB1,
                description: format!("y2 = 0 => x2 = 0 and |F(x1,y1)| <= {k}"),
                trigger: Trigger::Zero(Component::Second),
                args: FormArgs::FirstCoords,
                rhs: k.clone(),
                constrains: Component::First,
                factor: 2,
            },
            CaseRule {
                id: CaseId::IB2,
                description: format!("|y2| >= {ib2_thr} => |F(x2,y2)| <= {ib2}"),
                trigger: Trigger::AtLeast(Component::Second, ib2_thr),
                args: FormArgs::SecondCoords,
                rhs: ib2,
                constrains: Component::Second,
                factor: 1,
            },
        ]
    } else {
        let iia1 = k.scale(&inv_m_pow);
        let iia2_thr = b.d.clone();
        let iia2 = b.e.clone();
        let iib2_thr = b.d.div_pos(&sqrt_m);
        let iib2 = b.e.scale(&inv_m_pow);
        vec![
            CaseRule {
                id: CaseId::IIA1,
                description: format!("y1 = 0 => x1 = 0 and |F(x2,y2)| <= {iia1}"),
                trigger: Trigger::Zero(Component::First),
                args: FormArgs::SecondCoords,
                rhs: iia1,
                constrains: Component::Second,
                factor: 1,
            },
            CaseRule {
                id: CaseId::IIA2,
                description: format!("|y1| >= {iia2_thr} => |F(x1,y1)| <= {iia2}"),
                trigger: Trigger::AtLeast(Component::First, iia2_thr),
                args: FormArgs::FirstCoords,
                rhs: iia2,
                constrains: Component::First,
                factor: 1,
            },
            CaseRule {
                id: CaseId::IIB1,
                description: format!("y2 = 0 => x2 = 0 and |F(x1,y1)| <= {k}"),
                trigger: Trigger::Zero(Component::Second),
                args: FormArgs::FirstCoords,
                rhs: k.clone(),
                constrains: Component::First,
                factor: 1,
            },
            CaseRule {
                id: CaseId::IIB2,
                description: format!("|y2| >= {iib2_thr} => |F(x2,y2)| <= {iib2}"),
                trigger: Trigger::AtLeast(Component::Second, iib2_thr),
                args: FormArgs::SecondCoords,
                rhs: iib2,
                constrains: Component::Second,
                factor: 1,
            },
        ]
    }
}

/// The `|y|` threshold above which the case rules hold: `C1` for m = 3 (mod 4), else `C2`.
pub fn large_threshold(ring: RingSpec, b: &BoundSet) -> &Enclosure {
    if ring.is_half_integral() {
        &b.c1
    } else {
        &b.c2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    GenericM,
    M1,
    M3LargeT,
    M3SmallT,
}

impl Scenario {
    pub fn all() -> [Scenario; 4] {
        [Scenario::GenericM, Scenario::M1, Scenario::M3LargeT, Scenario::M3SmallT]
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::GenericM => "generic_m",
            Scenario::M1 => "m1",
            Scenario::M3LargeT => "m3_large_t",
            Scenario::M3SmallT => "m3_small_t",
        })
    }
}

impl std::str::FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generic_m" | "generic" => Ok(Scenario::GenericM),
            "m1" => Ok(Scenario::M1),
            "m3_large_t" => Ok(Scenario::M3LargeT),
            "m3_small_t" => Ok(Scenario::M3SmallT),
            other => Err(format!(
                "unknown scenario `{other}` (expected generic_m, m1, m3_large_t, m3_small_t)"
            )),
        }
    }
}

/// `(epsilon, eta)` per family and scenario, with the regime's `(A, B)` and `K = 1`.
pub fn presets(family: Family, scenario: Scenario) -> BoundParams {
    let (eps, eta, regime) = match (family, scenario) {
        (Family::Quartic, Scenario::GenericM) => ("0.1924", "0.169", Regime::SmallT),
        (Family::Quartic, Scenario::M1) => ("0.1792", "0.0308", Regime::SmallT),
        (Family::Quartic, Scenario::M3LargeT) => ("0.6273", "0.0361", Regime::LargeT),
        (Family::Quartic, Scenario::M3SmallT) => ("0.0348", "0.0005", Regime::SmallT),
        (Family::Sextic, Scenario::GenericM) => ("0.12", "0.23", Regime::SmallT),
        (Family::Sextic, Scenario::M1) => ("0.11", "0.02", Regime::SmallT),
        (Family::Sextic, Scenario::M3LargeT) => ("0.41", "0.02", Regime::LargeT),
        (Family::Sextic, Scenario::M3SmallT) => ("0.1124", "0.0195", Regime::SmallT),
    };
    let (a, b) = regime_table(family, regime);
    BoundParams { k: BigRational::one(), epsilon: dec(eps), eta: dec(eta), n: family.degree(), a, b }
}

/// Preset for a ring and a parameter already moved to the solver's side
/// (t > 0 quartic, t >= -1 sextic).
pub fn scenario_for(family: Family, m: i64, canonical_t: i64) -> Scenario {
    match m {
        1 => Scenario::M1,
        3 if canonical_t >= crate::roots::large_t_start(family) => Scenario::M3LargeT,
        3 => Scenario::M3SmallT,
        _ => Scenario::GenericM,
    }
}

/// Grid search over `epsilon` in steps of `1e-4` minimising `C1`.
///
/// `C1` does not involve `eta`, so the second grid axis is degenerate and the
/// returned `eta` is the input one. Exploration only; floating point.
pub fn optimize_epsilon(n: u32, k: f64, a: f64, b: f64) -> (f64, f64) {
    let mut best = (f64::NAN, f64::INFINITY);
    for i in 1..10_000 {
        let eps = i as f64 * 1e-4;
        let c = (k / ((1.0 - eps).powi(n as i32 - 1) * b)).max(1.0);
        let c1 = (k.powf(1.0 / n as f64) / (eps * a)).max((2.0 * c).powf(1.0 / (n as f64 - 2.0)));
        if c1 < best.1 {
            best = (eps, c1);
        }
    }
    best
}

/// Which quantity a printed constant is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    LargeThreshold,
    Threshold(CaseId),
    Rhs(CaseId),
}

/// One constant as printed in a published corollary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrintedConstant {
    pub family: Family,
    pub scenario: Scenario,
    pub m: i64,
    pub quantity: Quantity,
    pub printed: String,
}

/// Every constant printed in the six corollaries; `m` is the ring the printed value refers to.
pub fn printed_constants() -> Vec<PrintedConstant> {
    use CaseId::*;
    use Quantity::*;
    let rows: &[(Family, Scenario, i64, Quantity, &str)] = &[
        (Family::Quartic, Scenario::GenericM, 7, LargeThreshold, "6.2741"),
        (Family::Quartic, Scenario::GenericM, 7, Rhs(IA1), "0.326"),
        (Family::Quartic, Scenario::GenericM, 7, Threshold(IA2), "2.618"),
        (Family::Quartic, Scenario::GenericM, 7, Rhs(IA2), "48.526"),
        (Family::Quartic, Scenario::GenericM, 7, Rhs(IB1), "1"),
        (Family::Quartic, Scenario::GenericM, 7, Threshold(IB2), "0.989"),
        (Family::Quartic, Scenario::GenericM, 7, Rhs(IB2), "0.990"),
        (Family::Quartic, Scenario::GenericM, 2, Rhs(IIA1), "0.25"),
        (Family::Quartic, Scenario::GenericM, 2, Threshold(IIA2), "1.309"),
        (Family::Quartic, Scenario::GenericM, 2, Rhs(IIA2), "3.032"),
        (Family::Quartic, Scenario::GenericM, 2, Rhs(IIB1), "1"),
        (Family::Quartic, Scenario::GenericM, 2, Threshold(IIB2), "0.925"),
        (Family::Quartic, Scenario::GenericM, 2, Rhs(IIB2), "0.7582"),
        (Family::Quartic, Scenario::M1, 1, LargeThreshold, "6.736"),
        (Family::Quartic, Scenario::M1, 1, Rhs(IIA1), "1"),
        (Family::Quartic, Scenario::M1, 1, Threshold(IIA2), "1.98"),
        (Family::Quartic, Scenario::M1, 1, Rhs(IIA2), "1.981"),
        (Family::Quartic, Scenario::M1, 1, Rhs(IIB1), "1"),
        (Family::Quartic, Scenario::M1, 1, Threshold(IIB2), "1.98"),
        (Family::Quartic, Scenario::M1, 1, Rhs(IIB2), "1.981"),
        (Family::Quartic, Scenario::M3LargeT, 3, LargeThreshold, "1.621"),
        (Family::Quartic, Scenario::M3LargeT, 3, Rhs(IA1), "1.778"),
        (Family::Quartic, Scenario::M3LargeT, 3, Threshold(IA2), "3.497"),
        (Family::Quartic, Scenario::M3LargeT, 3, Rhs(IA2), "343.753"),
        (Family::Quartic, Scenario::M3LargeT, 3, Rhs(IB1), "1"),
        (Family::Quartic, Scenario::M3LargeT, 3, Threshold(IB2), "2.019"),
        (Family::Quartic, Scenario::M3LargeT, 3, Rhs(IB2), "38.195"),
        (Family::Quartic, Scenario::M3SmallT, 3, LargeThreshold, "34.688"),
        (Family::Quartic, Scenario::M3SmallT, 3, Rhs(IA1), "1.778"),
        (Family::Quartic, Scenario::M3SmallT, 3, Threshold(IA2), "9.824"),
        (Family::Quartic, Scenario::M3SmallT, 3, Rhs(IA2), "17.825"),
        (Family::Quartic, Scenario::M3SmallT, 3, Rhs(IB1), "1"),
        (Family::Quartic, Scenario::M3SmallT, 3, Threshold(IB2), "5.672"),
        (Family::Quartic, Scenario::M3SmallT, 3, Rhs(IB2), "1.981"),
        (Family::Sextic, Scenario::GenericM, 7, LargeThreshold, "17.937"),
        (Family::Sextic, Scenario::GenericM, 7, Rhs(IA1), "0.1866"),
        (Family::Sextic, Scenario::GenericM, 7, Threshold(IA2), "2.6453"),
        (Family::Sextic, Scenario::GenericM, 7, Rhs(IA2), "341.42"),
        (Family::Sextic, Scenario::GenericM, 7, Rhs(IB1), "1"),
        (Family::Sextic, Scenario::GenericM, 7, Threshold(IB2), "0.99983"),
        (Family::Sextic, Scenario::GenericM, 7, Rhs(IB2), "0.9954"),
        (Family::Sextic, Scenario::GenericM, 2, Rhs(IIA1), "0.125"),
        (Family::Sextic, Scenario::GenericM, 2, Threshold(IIA2), "1.3227"),
        (Family::Sextic, Scenario::GenericM, 2, Rhs(IIA2), "5.3347"),
        (Family::Sextic, Scenario::GenericM, 2, Rhs(IIB1), "1"),
        (Family::Sextic, Scenario::GenericM, 2, Threshold(IIB2), "0.93526"),
        (Family::Sextic, Scenario::GenericM, 2, Rhs(IIB2), "0.66684"),
        (Family::Sextic, Scenario::M1, 1, LargeThreshold, "19.5671"),
        (Family::Sextic, Scenario::M1, 1, Rhs(IIA1), "1"),
        (Family::Sextic, Scenario::M1, 1, Threshold(IIA2), "1.9685"),
        (Family::Sextic, Scenario::M1, 1, Rhs(IIA2), "1.9772"),
        (Family::Sextic, Scenario::M1, 1, Rhs(IIB1), "1"),
        (Family::Sextic, Scenario::M1, 1, Threshold(IIB2), "1.9865"),
        (Family::Sextic, Scenario::M1, 1, Rhs(IIB2), "1.9772"),
        (Family::Sextic, Scenario::M3LargeT, 3, LargeThreshold, "4.8917"),
        (Family::Sextic, Scenario::M3LargeT, 3, Rhs(IA1), "2.3703"),
        (Family::Sextic, Scenario::M3LargeT, 3, Threshold(IA2), "3.0965"),
        (Family::Sextic, Scenario::M3LargeT, 3, Rhs(IA2), "988.372"),
        (Family::Sextic, Scenario::M3LargeT, 3, Rhs(IB1), "1"),
        (Family::Sextic, Scenario::M3LargeT, 3, Threshold(IB2), "1.7877"),
        (Family::Sextic, Scenario::M3LargeT, 3, Rhs(IB2), "36.606"),
        (Family::Sextic, Scenario::M3SmallT, 3, LargeThreshold, "19.149"),
        (Family::Sextic, Scenario::M3SmallT, 3, Rhs(IA1), "2.371"),
        (Family::Sextic, Scenario::M3SmallT, 3, Threshold(IA2), "3.962"),
        (Family::Sextic, Scenario::M3SmallT, 3, Rhs(IA2), "127.946"),
        (Family::Sextic, Scenario::M3SmallT, 3, Rhs(IB1), "1"),
        (Family::Sextic, Scenario::M3SmallT, 3, Threshold(IB2), "2.287"),
        (Family::Sextic, Scenario::M3SmallT, 3, Rhs(IB2), "4.739"),
    ];
    rows.iter()
        .map(|&(family, scenario, m, quantity, printed)| PrintedConstant {
            family,
            scenario,
            m,
            quantity,
            printed: printed.to_string(),
        })
        .collect()
}

/// Absolute tolerance for printed constants.
pub fn printed_tolerance() -> BigRational {
    dec("0.002")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditEntry {
    pub constant: PrintedConstant,
    pub computed: Enclosure,
    /// Distance from the printed value to the computed enclosure.
    pub deviation: f64,
    pub flagged: bool,
}

/// The enclosure of the quantity a printed constant refers to.
pub fn recompute(c: &PrintedConstant) -> Enclosure {
    let p = presets(c.family, c.scenario);
    let b = derive_bounds(&p);
    let ring = RingSpec::new(c.m).expect("printed constants use square-free m");
    match c.quantity {
        Quantity::LargeThreshold => large_threshold(ring, &b).clone(),
        Quantity::Threshold(id) | Quantity::Rhs(id) => {
            let rules = case_rules(ring, &p, &b);
            let rule = rules
                .iter()
                .find(|r| r.id == id)
                .unwrap_or_else(|| panic!("case {id} does not apply to m = {}", c.m));
            match c.quantity {
                Quantity::Threshold(_) => rule.threshold().expect("rule has a threshold").clone(),
                _ => rule.rhs.clone(),
            }
        }
    }
}

/// Recompute every printed constant and flag the ones farther than the tolerance from the enclosure.
pub fn audit_printed_constants() -> Vec<AuditEntry> {
    let tol = printed_tolerance();
    printed_constants()
        .into_iter()
        .map(|c| {
            let computed = recompute(&c);
            let dist = computed.distance_to(&dec(&c.printed));
            AuditEntry { flagged: dist > tol, deviation: to_f64(&dist), computed, constant: c }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(e: &Enclosure, printed: &str, tol: &str) -> bool {
        e.distance_to(&dec(printed)) <= dec(tol)
    }

    fn rules_for(family: Family, scenario: Scenario, m: i64) -> (BoundSet, Vec<CaseRule>) {
        let p = presets(family, scenario);
        let b = derive_bounds(&p);
        let r = case_rules(RingSpec::new(m).unwrap(), &p, &b);
        (b, r)
    }

    fn rule(rules: &[CaseRule], id: CaseId) -> &CaseRule {
        rules.iter().find(|r| r.id == id).unwrap()
    }

    #[test]
    fn quartic_generic_constants() {
        let (b, rules) = rules_for(Family::Quartic, Scenario::GenericM, 7);
        assert!(close(&b.c1, "6.2741", "0.002"));
        assert!(close(&b.d.scale(&BigRational::from_integer(2.into())), "2.618", "0.002"));
        assert!(close(&b.e.scale(&BigRational::from_integer(16.into())), "48.526", "0.002"));
        assert_eq!(rule(&rules, CaseId::IA1).rhs, Enclosure::exact(BigRational::new(16.into(), 49.into())));
        let (_, rules) = rules_for(Family::Quartic, Scenario::GenericM, 2);
        assert_eq!(rule(&rules, CaseId::IIA1).rhs, Enclosure::exact(dec("0.25")));
        assert!(close(&rule(&rules, CaseId::IIB2).rhs, "0.7582", "0.002"));
    }

    #[test]
    fn sextic_m1_constants() {
        let (_, rules) = rules_for(Family::Sextic, Scenario::M1, 1);
        let r = rule(&rules, CaseId::IIA2);
        assert!(close(r.threshold().unwrap(), "1.9685", "0.002"));
        assert!(close(&r.rhs, "1.9772", "0.002"));
    }

    #[test]
    fn preset_thresholds() {
        let cases = [
            (Family::Quartic, Scenario::M3SmallT, 3, "34.688"),
            (Family::Sextic, Scenario::M3LargeT, 3, "4.8917"),
            (Family::Sextic, Scenario::GenericM, 5, "17.937"),
        ];
        for (f, s, m, want) in cases {
            let b = derive_bounds(&presets(f, s));
            assert!(close(large_threshold(RingSpec::new(m).unwrap(), &b), want, "0.002"), "{f} {s}");
        }
        let p = presets(Family::Quartic, Scenario::M3SmallT);
        assert_eq!((p.epsilon, p.eta), (dec("0.0348"), dec("0.0005")));
    }

    #[test]
    fn c1_blows_up_as_epsilon_shrinks() {
        let mut p = presets(Family::Quartic, Scenario::GenericM);
        let mut last = BigRational::zero();
        for e in ["0.1", "0.01", "0.001", "0.0001"] {
            p.epsilon = dec(e);
            let c1 = derive_bounds(&p).c1.lo;
            assert!(c1 > last);
            last = c1;
        }
        assert!(last > dec("10000"));
    }

    #[test]
    fn rule_sets_follow_residue_class() {
        for m in [1, 2, 5, 6, 10] {
            let (_, r) = rules_for(Family::Quartic, Scenario::GenericM, m);
            assert!(r.iter().all(|r| matches!(r.id, CaseId::IIA1 | CaseId::IIA2 | CaseId::IIB1 | CaseId::IIB2)));
        }
        for m in [3, 7, 11, 15, 19] {
            let (_, r) = rules_for(Family::Quartic, Scenario::GenericM, m);
            assert!(r.iter().all(|r| matches!(r.id, CaseId::IA1 | CaseId::IA2 | CaseId::IB1 | CaseId::IB2)));
        }
    }

    #[test]
    fn enclosures_are_tight_and_ordered() {
        for f in Family::all() {
            for s in Scenario::all() {
                let b = derive_bounds(&presets(f, s));
                for e in [&b.c, &b.c1, &b.c2, &b.d, &b.e] {
                    assert!(e.lo <= e.hi);
                    assert!(e.width() <= dec("0.000000001"));
                }
                assert!(b.c2.hi <= b.c1.hi);
            }
        }
    }

    #[test]
    fn audit_flags_exactly_the_misprints() {
        let flagged: Vec<String> = audit_printed_constants()
            .into_iter()
            .filter(|a| a.flagged)
            .map(|a| a.constant.printed)
            .collect();
        assert_eq!(flagged, vec!["17.825", "341.42", "1.9865"]);
    }

    #[test]
    fn epsilon_search_improves_on_presets() {
        let (eps, c1) = optimize_epsilon(4, 1.0, 0.8284, 4.6114);
        assert!(eps > 0.0 && eps < 1.0);
        assert!(c1 <= 1.0 / (0.1924 * 0.8284) + 1e-9);
    }

    #[test]
    fn enclosure_json_round_trip() {
        let b = derive_bounds(&presets(Family::Sextic, Scenario::M3SmallT));
        let s = serde_json::to_string(&b).unwrap();
        let back: BoundSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
