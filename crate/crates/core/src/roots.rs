//! Certified real roots of `f_t(x) = F_t(x, 1)` and the root-gap bounds `A`, `B`.
//!
//! `A` is the minimum distance between two roots and `B` the minimum over
//! roots of the product of distances to the other roots. Both are bounded
//! from below by interval arithmetic over Sturm-certified enclosures.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::dec;
use crate::error::{Error, Result};
use crate::forms::{Family, ParamForm};
use crate::poly::{isolate_real_roots, refine, Poly, RootInterval};
use crate::ring::{enumerate_disc_int, QuadInt};

/// Binary digits kept by the fixed-point root view used for candidate windows.
const FIXED_BITS: u32 = 48;

/// Improvement below which successive refinements count as stable.
fn stability_eps() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000.into())
}

/// Finest enclosure width tried before giving up on a dominance check.
fn finest_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 90)
}

pub fn form_poly(form: &ParamForm) -> Poly {
    Poly::from_i64(&form.ascending())
}

/// Isolate the `n` real roots of `F(x, 1)` to intervals of width at most `width`.
pub fn isolate_roots(form: &ParamForm, width: &BigRational) -> Result<Vec<RootInterval>> {
    let roots = isolate_real_roots(&form_poly(form), width)?;
    debug_assert_eq!(roots.len(), form.degree() as usize, "simplest forms are totally real");
    Ok(roots)
}

/// Certified lower bounds `(A_lower, B_lower)` from sorted, disjoint enclosures.
pub fn gap_stats(roots: &[RootInterval]) -> Result<(BigRational, BigRational)> {
    let mut sorted: Vec<&RootInterval> = roots.iter().collect();
    sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
    for w in sorted.windows(2) {
        if w[0].hi >= w[1].lo {
            return Err(Error::IndistinguishableRoots);
        }
    }
    let n = sorted.len();
    let gap = |i: usize, j: usize| -> BigRational {
        if i < j {
            &sorted[j].lo - &sorted[i].hi
        } else {
            &sorted[i].lo - &sorted[j].hi
        }
    };
    let mut a_lower: Option<BigRational> = None;
    let mut b_lower: Option<BigRational> = None;
    for i in 0..n {
        let mut prod = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let g = gap(i, j);
            if i < j && a_lower.as_ref().is_none_or(|a| &g < a) {
                a_lower = Some(g.clone());
            }
            prod *= g;
        }
        if b_lower.as_ref().is_none_or(|b| &prod < b) {
            b_lower = Some(prod);
        }
    }
    Ok((a_lower.unwrap_or_else(BigRational::zero), b_lower.unwrap_or_else(BigRational::zero)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    LargeT,
    SmallT,
}

/// Tabled lower bounds for `A` and `B` in each regime.
///
/// Quartic: large t means t >= 58, small t means 0 < t < 58 (t != 3).
/// Sextic: large t means t >= 89, small t means -1 <= t < 89 (t != 0, 5).
pub fn regime_table(family: Family, regime: Regime) -> (BigRational, BigRational) {
    let (a, b) = match (family, regime) {
        (Family::Quartic, Regime::LargeT) => ("0.9833", "58.1"),
        (Family::Quartic, Regime::SmallT) => ("0.8284", "4.6114"),
        (Family::Sextic, Regime::LargeT) => ("0.4986", "101.83"),
        (Family::Sextic, Regime::SmallT) => ("0.4646", "3.3121"),
    };
    (dec(a), dec(b))
}

/// First parameter of the large-t regime, on the side the solver works on.
pub fn large_t_start(family: Family) -> i64 {
    match family {
        Family::Quartic => 58,
        Family::Sextic => 89,
    }
}

/// Certified root enclosures of one form together with gap bounds.
#[derive(Debug, Clone)]
pub struct RootGapData {
    form: ParamForm,
    poly: Poly,
    intervals: Vec<RootInterval>,
    a_lower: BigRational,
    b_lower: BigRational,
    fixed: FixedRoots,
}

/// Root enclosures as `i128` numerators over `2^FIXED_BITS`.
#[derive(Debug, Clone)]
struct FixedRoots {
    lo: Vec<i128>,
    hi: Vec<i128>,
}

impl FixedRoots {
    fn from_intervals(intervals: &[RootInterval]) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << FIXED_BITS);
        let conv = |x: BigRational| x.to_integer().to_i128().expect("root magnitude fits i128");
        FixedRoots {
            lo: intervals.iter().map(|iv| conv((&iv.lo * &scale).floor())).collect(),
            hi: intervals.iter().map(|iv| conv((&iv.hi * &scale).ceil())).collect(),
        }
    }
}

impl RootGapData {
    /// Isolate at `2^-20` times the Cauchy bound, then halve until `A_lower` and
    /// `B_lower` stop improving by more than `1e-9`.
    pub fn compute(form: &ParamForm) -> Result<Self> {
        let poly = form_poly(form);
        let start = poly.cauchy_bound() / BigRational::from_integer(BigInt::one() << 20);
        let intervals = isolate_real_roots(&poly, &start)?;
        if intervals.len() != form.degree() as usize {
            return Err(Error::IndistinguishableRoots);
        }
        let mut data = RootGapData::from_parts(form.clone(), poly, intervals, start.clone())?;
        let mut width = start;
        loop {
            let (a0, b0) = (data.a_lower.clone(), data.b_lower.clone());
            width /= BigRational::from_integer(2.into());
            data.refine_to(&width)?;
            let eps = stability_eps();
            if &data.a_lower - &a0 < eps && &data.b_lower - &b0 < eps * b0.abs().max(BigRational::one()) {
                break;
            }
        }
        Ok(data)
    }

    fn from_parts(form: ParamForm, poly: Poly, mut intervals: Vec<RootInterval>, width: BigRational) -> Result<Self> {
        // keep halving until the enclosures separate
        let mut w = width;
        let stats = loop {
            match gap_stats(&intervals) {
                Ok(s) => break s,
                Err(Error::IndistinguishableRoots) => {
                    w /= BigRational::from_integer(2.into());
                    for iv in intervals.iter_mut() {
                        refine(&poly, iv, &w)?;
                    }
                }
                Err(e) => return Err(e),
            }
        };
        let fixed = FixedRoots::from_intervals(&intervals);
        Ok(RootGapData { form, poly, intervals, a_lower: stats.0, b_lower: stats.1, fixed })
    }

    /// Refine every enclosure to width at most `width` and recompute the bounds.
    pub fn refine_to(&mut self, width: &BigRational) -> Result<()> {
        for iv in self.intervals.iter_mut() {
            refine(&self.poly, iv, width)?;
        }
        let (a, b) = gap_stats(&self.intervals)?;
        self.a_lower = a;
        self.b_lower = b;
        self.fixed = FixedRoots::from_intervals(&self.intervals);
        Ok(())
    }

    pub fn max_width(&self) -> BigRational {
        self.intervals.iter().map(|iv| iv.width()).max().unwrap_or_else(BigRational::zero)
    }

    pub fn dominates(&self, a: &BigRational, b: &BigRational) -> bool {
        &self.a_lower >= a && &self.b_lower >= b
    }

    /// Refine until the certified bounds reach `(a, b)`; false if the finest width is hit first.
    pub fn ensure_dominates(&mut self, a: &BigRational, b: &BigRational) -> Result<bool> {
        let finest = finest_width();
        while !self.dominates(a, b) {
            let w = self.max_width();
            if w <= finest {
                return Ok(false);
            }
            self.refine_to(&(w / BigRational::from_integer(4.into())))?;
        }
        Ok(true)
    }

    pub fn form(&self) -> &ParamForm {
        &self.form
    }

    pub fn intervals(&self) -> &[RootInterval] {
        &self.intervals
    }

    pub fn a_lower(&self) -> &BigRational {
        &self.a_lower
    }

    pub fn b_lower(&self) -> &BigRational {
        &self.b_lower
    }

    /// Integer windows `[lo, hi]` around `alpha_j * c` widened by `r / 2^FIXED_BITS`, one per root.
    fn windows(&self, c: i64, r_fixed: i128) -> Vec<(i64, i64)> {
        let c = c as i128;
        let shift = FIXED_BITS;
        self.fixed
            .lo
            .iter()
            .zip(&self.fixed.hi)
            .map(|(&lo, &hi)| {
                let (a, b) = (lo * c, hi * c);
                let (mn, mx) = (a.min(b) - r_fixed, a.max(b) + r_fixed);
                let lo_i = mn >> shift; // floor
                let hi_i = -((-mx) >> shift); // ceil
                (lo_i as i64, hi_i as i64)
            })
            .collect()
    }

    /// Every `x` in Z_M that could satisfy `|F(x, anchor)| <= k`; a superset, not verified.
    ///
    /// For `anchor != 0` some root `alpha_j` has `|x - alpha_j * anchor| <= k 2^(n-1) / (|anchor|^(n-1) B)`,
    /// because every other factor of `F(x, anchor) = prod (x - alpha_i anchor)` is at least
    /// half the corresponding root gap times `|anchor|`.
    pub fn partner_candidates(&self, anchor: &QuadInt, k: u64) -> Vec<QuadInt> {
        let ring = anchor.ring();
        let n = self.form.degree();
        if anchor.is_zero() {
            // F(x, 0) = x^n
            let k2 = (k as i128) * (k as i128);
            let mut bound: i128 = 0;
            while (bound + 1).checked_pow(n).is_some_and(|p| p <= k2) {
                bound += 1;
            }
            return enumerate_disc_int(ring, bound);
        }
        let norm = anchor.norm();
        // |anchor|^(n-1) >= norm^((n-2)/2) * isqrt(norm)
        let den_lower = BigInt::from(norm).pow((n - 2) / 2) * BigInt::from(norm.sqrt());
        let num = BigInt::from(k) * (BigInt::one() << (n - 1 + FIXED_BITS)) * self.b_lower.denom();
        let den = den_lower * self.b_lower.numer();
        let r = BigRational::new(num, den).ceil().to_integer();
        let r_fixed = r.to_i128().unwrap_or(i128::MAX / 4).min(1i128 << 100);
        let s = ring.split_scale() as i128;
        let (c1, c2) = anchor.coords_split();
        let r1 = s * r_fixed;
        // Im part carries a factor sqrt(m) >= isqrt(m)
        let sq = (ring.m() as i128).sqrt().max(1);
        let r2 = (s * r_fixed + sq - 1) / sq;
        let w1 = self.windows(c1, r1);
        let w2 = self.windows(c2, r2);
        let mut out = Vec::new();
        for ((l1, h1), (l2, h2)) in w1.into_iter().zip(w2) {
            for x1 in l1..=h1 {
                for x2 in l2..=h2 {
                    if let Some(z) = ring.from_split(x1, x2) {
                        out.push(z);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Rational integers `u` with possibly `|F(u, v)| <= d`, for `v != 0`.
    pub fn integer_partner_windows(&self, v: i64, d: u64) -> Vec<(i64, i64)> {
        assert!(v != 0);
        let n = self.form.degree();
        let av = BigInt::from(v.unsigned_abs());
        let num = BigInt::from(d) * (BigInt::one() << (n - 1 + FIXED_BITS)) * self.b_lower.denom();
        let den = av.pow(n - 1) * self.b_lower.numer();
        let r = BigRational::new(num, den).ceil().to_integer();
        let r_fixed = r.to_i128().unwrap_or(i128::MAX / 4).min(1i128 << 100);
        self.windows(v, r_fixed)
    }
}
