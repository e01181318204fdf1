//! Univariate polynomials over Q with Sturm-sequence root isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bisection depth after which isolation gives up.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// Ascending coefficients, no trailing zeros.
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(ascending: I) -> Self {
        Poly::new(ascending.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(ascending: &[i64]) -> Self {
        Poly::from_ints(ascending.iter().map(|&c| BigInt::from(c)))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub_const(&self, k: &BigRational) -> Poly {
        let mut c = self.coeffs.clone();
        if c.is_empty() {
            c.push(BigRational::zero());
        }
        c[0] = &c[0] - k;
        Poly::new(c)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors; same real roots, all simple.
    pub fn square_free_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// A power of two strictly greater than every root's absolute value.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().expect("zero polynomial").abs();
        let mut max = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > max {
                max = q;
            }
        }
        let bound = max + BigRational::one();
        let mut p = BigRational::one();
        while p <= bound {
            p *= rat(2);
        }
        p
    }

    pub fn sturm_chain(&self) -> SturmChain {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        SturmChain(chain)
    }
}

#[derive(Debug, Clone)]
pub struct SturmChain(Vec<Poly>);

impl SturmChain {
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A closed rational interval containing exactly one real root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / rat(2)
}

/// Isolate every real root of a square-free polynomial to intervals of width at most `width`.
///
/// Intervals come back sorted; exact rational roots are returned as degenerate intervals.
pub fn isolate_real_roots(p: &Poly, width: &BigRational) -> Result<Vec<RootInterval>> {
    isolate_with_cap(p, width, DEFAULT_PRECISION_BITS)
}

pub fn isolate_with_cap(p: &Poly, width: &BigRational, cap_bits: u32) -> Result<Vec<RootInterval>> {
    let p = p.square_free_part();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let chain = p.sturm_chain();
    let r = p.cauchy_bound();
    let mut out = Vec::new();
    // (a, b, depth)
    let mut stack = vec![(-r.clone(), r, 0u32)];
    while let Some((a, b, depth)) = stack.pop() {
        let c = chain.count(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 {
            let mut iv = if p.sign_at(&b) == Ordering::Equal {
                RootInterval { lo: b.clone(), hi: b }
            } else {
                RootInterval { lo: a, hi: b }
            };
            refine_with_cap(&p, &chain, &mut iv, width, cap_bits)?;
            out.push(iv);
            continue;
        }
        if depth >= cap_bits {
            return Err(Error::PrecisionExhausted(cap_bits));
        }
        let mid = half(&a, &b);
        stack.push((a, mid.clone(), depth + 1));
        stack.push((mid, b, depth + 1));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Shrink an isolating interval of `p` until its width is at most `width`.
pub fn refine(p: &Poly, iv: &mut RootInterval, width: &BigRational) -> Result<()> {
    let chain = p.sturm_chain();
    refine_with_cap(p, &chain, iv, width, DEFAULT_PRECISION_BITS)
}

fn refine_with_cap(
    p: &Poly,
    chain: &SturmChain,
    iv: &mut RootInterval,
    width: &BigRational,
    cap_bits: u32,
) -> Result<()> {
    let mut steps = 0u32;
    while !iv.is_exact() && &iv.width() > width {
        if steps >= cap_bits {
            return Err(Error::PrecisionExhausted(cap_bits));
        }
        steps += 1;
        let mid = half(&iv.lo, &iv.hi);
        let sm = p.sign_at(&mid);
        if sm == Ordering::Equal {
            iv.lo = mid.clone();
            iv.hi = mid;
            break;
        }
        let sl = p.sign_at(&iv.lo);
        let sh = p.sign_at(&iv.hi);
        if sl != Ordering::Equal && sh != Ordering::Equal && sl != sh {
            if sl == sm {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        } else if chain.count(&iv.lo, &mid) == 1 {
            // the root sits in (lo, mid]; mid is not a root, so (lo, mid)
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    Ok(())
}

fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

fn ceil_rat(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Every integer `z` with `q(z) <= 0`.
///
/// `q` must have positive leading coefficient and even degree, so the set is finite.
/// The real roots of `q` are isolated with Sturm sequences and each region where
/// `q <= 0` is scanned for integers, which are then checked exactly.
pub fn integer_points_nonpositive(q: &Poly) -> Result<Vec<BigInt>> {
    let deg = q.degree().unwrap_or(0);
    assert!(
        deg > 0 && deg.is_multiple_of(2) && q.leading().unwrap().is_positive(),
        "integer_points_nonpositive needs an even-degree polynomial with positive leading coefficient"
    );
    let roots = isolate_real_roots(q, &BigRational::new(1.into(), 4.into()))?;
    let mut cands: Vec<BigInt> = Vec::new();
    for iv in &roots {
        let mut z = floor_rat(&iv.lo);
        let hi = ceil_rat(&iv.hi);
        while z <= hi {
            cands.push(z.clone());
            z += 1;
        }
    }
    for w in roots.windows(2) {
        let sample = half(&w[0].hi, &w[1].lo);
        if q.sign_at(&sample) == Ordering::Less {
            let mut z = ceil_rat(&w[0].hi);
            let hi = floor_rat(&w[1].lo);
            while z <= hi {
                cands.push(z.clone());
                z += 1;
            }
        }
    }
    cands.sort();
    cands.dedup();
    Ok(cands
        .into_iter()
        .filter(|z| q.sign_at(&BigRational::from_integer(z.clone())) != Ordering::Greater)
        .collect())
}

/// Integer `n`-th root enclosure `[lo, hi]` of a positive rational at resolution `2^-bits`.
pub fn nth_root_enclosure(x: &BigRational, n: u32, bits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive() && n >= 1);
    let scale = BigInt::one() << bits;
    // floor(x * scale^n)
    let scaled = (x * BigRational::from_integer(scale.pow(n))).floor().to_integer();
    let r = scaled.nth_root(n);
    let den = BigRational::from_integer(scale);
    let lo = BigRational::from_integer(r.clone()) / &den;
    let hi = BigRational::from_integer(r + 1) / &den;
    (lo, hi)
}

/// Smallest integer `>= x` for rationals; convenience re-export for callers.
pub fn ceil_to_int(x: &BigRational) -> BigInt {
    ceil_rat(x)
}

pub fn floor_to_int(x: &BigRational) -> BigInt {
    floor_rat(x)
}

/// Lowest-terms gcd of two machine integers, always non-negative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
