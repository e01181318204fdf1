//! Arithmetic in the ring of integers of Q(i*sqrt(m)).
//!
//! Elements are stored in integral-basis coordinates `a1 + a2*w`, where
//! `w = i*sqrt(m)` for m = 1, 2 (mod 4) and `w = (1 + i*sqrt(m))/2` for
//! m = 3 (mod 4). Every operation is exact; overflow of the `i64`
//! coordinates is reported instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which integral basis the ring uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// `{1, i*sqrt(m)}`
    ISqrtM,
    /// `{1, (1 + i*sqrt(m))/2}`
    HalfIntegral,
}

/// The ring Z_M for M = Q(i*sqrt(m)), m square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    m: i64,
}

pub fn is_square_free(m: i64) -> bool {
    if m < 1 {
        return false;
    }
    let mut n = m;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl RingSpec {
    pub fn new(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::NonPositive(m));
        }
        if !is_square_free(m) {
            return Err(Error::NotSquareFree(m));
        }
        Ok(RingSpec { m })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// m mod 4, one of 1, 2, 3.
    pub fn residue_class(&self) -> u8 {
        (self.m % 4) as u8
    }

    pub fn basis_kind(&self) -> BasisKind {
        if self.residue_class() == 3 {
            BasisKind::HalfIntegral
        } else {
            BasisKind::ISqrtM
        }
    }

    pub fn is_half_integral(&self) -> bool {
        self.basis_kind() == BasisKind::HalfIntegral
    }

    /// Denominator of the real part in split coordinates: `z = (c1 + c2*i*sqrt(m)) / s`.
    pub fn split_scale(&self) -> i64 {
        if self.is_half_integral() {
            2
        } else {
            1
        }
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::new(*self, 0, 0)
    }

    pub fn one(&self) -> QuadInt {
        QuadInt::new(*self, 1, 0)
    }

    /// The second basis element.
    pub fn w(&self) -> QuadInt {
        QuadInt::new(*self, 0, 1)
    }

    pub fn from_int(&self, a: i64) -> QuadInt {
        QuadInt::new(*self, a, 0)
    }

    /// All elements of norm 1, in canonical order.
    pub fn units(&self) -> Vec<QuadInt> {
        enumerate_disc_int(*self, 1)
            .into_iter()
            .filter(|z| z.norm() == 1)
            .collect()
    }

    /// Human-readable name of `w`.
    pub fn w_legend(&self) -> &'static str {
        match self.basis_kind() {
            BasisKind::ISqrtM => "i*sqrt(m)",
            BasisKind::HalfIntegral => "(1+i*sqrt(m))/2",
        }
    }

    /// Rebuild an element from its split coordinates, if they are admissible.
    pub fn from_split(&self, c1: i64, c2: i64) -> Option<QuadInt> {
        if self.is_half_integral() {
            if (c1 - c2).rem_euclid(2) != 0 {
                return None;
            }
            Some(QuadInt::new(*self, (c1 - c2) / 2, c2))
        } else {
            Some(QuadInt::new(*self, c1, c2))
        }
    }
}

/// `make_ring` under its operational name.
pub fn make_ring(m: i64) -> Result<RingSpec> {
    RingSpec::new(m)
}

/// An element `a1 + a2*w` of Z_M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a1: i64,
    pub a2: i64,
    ring: RingSpec,
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

impl QuadInt {
    pub fn new(ring: RingSpec, a1: i64, a2: i64) -> Self {
        QuadInt { a1, a2, ring }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.a1 == 0 && self.a2 == 0
    }

    fn same_ring(&self, other: &QuadInt) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::RingMismatch(self.ring.m, other.ring.m))
        } else {
            Ok(())
        }
    }

    /// Field norm; equals |z|^2 and is always a non-negative integer.
    pub fn norm(&self) -> i128 {
        let (a1, a2) = (self.a1 as i128, self.a2 as i128);
        let m = self.ring.m as i128;
        if self.ring.is_half_integral() {
            // ((2a1 + a2)^2 + m a2^2) / 4, exact because m = 3 (mod 4)
            a1 * a1 + a1 * a2 + a2 * a2 * ((1 + m) / 4)
        } else {
            a1 * a1 + m * a2 * a2
        }
    }

    /// [`QuadInt::norm`], or `None` if it does not fit an `i128`.
    pub fn checked_norm(&self) -> Option<i128> {
        let (a1, a2) = (self.a1 as i128, self.a2 as i128);
        let m = self.ring.m as i128;
        let q = a2.checked_mul(a2)?;
        if self.ring.is_half_integral() {
            a1.checked_mul(a1)?.checked_add(a1.checked_mul(a2)?)?.checked_add(q.checked_mul((1 + m) / 4)?)
        } else {
            a1.checked_mul(a1)?.checked_add(q.checked_mul(m)?)
        }
    }

    /// Components `(c1, c2)` with `z = (c1 + c2*i*sqrt(m)) / s`; `s = 2` when m = 3 (mod 4).
    pub fn coords_split(&self) -> (i64, i64) {
        if self.ring.is_half_integral() {
            (2 * self.a1 + self.a2, self.a2)
        } else {
            (self.a1, self.a2)
        }
    }

    pub fn checked_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_ring(other)?;
        Ok(QuadInt::new(
            self.ring,
            self.a1.checked_add(other.a1).ok_or(Error::Overflow)?,
            self.a2.checked_add(other.a2).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<QuadInt> {
        Ok(QuadInt::new(
            self.ring,
            self.a1.checked_neg().ok_or(Error::Overflow)?,
            self.a2.checked_neg().ok_or(Error::Overflow)?,
        ))
    }

    /// Exact ring product.
    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_ring(other)?;
        let (a1, a2) = (self.a1 as i128, self.a2 as i128);
        let (b1, b2) = (other.a1 as i128, other.a2 as i128);
        let m = self.ring.m as i128;
        let (c1, c2) = if self.ring.is_half_integral() {
            // w^2 = w - (1 + m)/4
            let q = (1 + m) / 4;
            let a2b2 = a2.checked_mul(b2).ok_or(Error::Overflow)?;
            (
                a1.checked_mul(b1)
                    .and_then(|v| v.checked_sub(a2b2.checked_mul(q)?))
                    .ok_or(Error::Overflow)?,
                a1.checked_mul(b2)
                    .and_then(|v| v.checked_add(a2.checked_mul(b1)?))
                    .and_then(|v| v.checked_add(a2b2))
                    .ok_or(Error::Overflow)?,
            )
        } else {
            // w^2 = -m
            (
                a1.checked_mul(b1)
                    .and_then(|v| v.checked_sub(m.checked_mul(a2.checked_mul(b2)?)?))
                    .ok_or(Error::Overflow)?,
                a1.checked_mul(b2)
                    .and_then(|v| v.checked_add(a2.checked_mul(b1)?))
                    .ok_or(Error::Overflow)?,
            )
        };
        Ok(QuadInt::new(self.ring, narrow(c1)?, narrow(c2)?))
    }

    pub fn scale(&self, k: i64) -> Result<QuadInt> {
        Ok(QuadInt::new(
            self.ring,
            self.a1.checked_mul(k).ok_or(Error::Overflow)?,
            self.a2.checked_mul(k).ok_or(Error::Overflow)?,
        ))
    }

    pub fn conj(&self) -> QuadInt {
        if self.ring.is_half_integral() {
            // conj(w) = 1 - w
            QuadInt::new(self.ring, self.a1 + self.a2, -self.a2)
        } else {
            QuadInt::new(self.ring, self.a1, -self.a2)
        }
    }

    pub fn pow(&self, e: u32) -> Result<QuadInt> {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Complex value as floats; for display and tests only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let (c1, c2) = self.coords_split();
        let s = self.ring.split_scale() as f64;
        (c1 as f64 / s, c2 as f64 * (self.ring.m as f64).sqrt() / s)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a1, self.a2, self.ring.m).cmp(&(other.a1, other.a2, other.ring.m))
    }
}

impl std::ops::Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.checked_neg().expect("QuadInt overflow")
    }
}

impl std::ops::Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        self.checked_add(&rhs).expect("QuadInt addition")
    }
}

impl std::ops::Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        self.checked_sub(&rhs).expect("QuadInt subtraction")
    }
}

impl std::ops::Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        QuadInt::mul(&self, &rhs).expect("QuadInt multiplication")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w_term = |c: i64| match c {
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            c => format!("{c}*w"),
        };
        match (self.a1, self.a2) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{}", w_term(b)),
            (a, b) if b < 0 => write!(f, "{a} - {}", w_term(-b)),
            (a, b) => write!(f, "{a} + {}", w_term(b)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadIntRepr {
    m: i64,
    a1: i64,
    a2: i64,
}

impl Serialize for QuadInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadIntRepr { m: self.ring.m, a1: self.a1, a2: self.a2 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QuadIntRepr::deserialize(d)?;
        let ring = RingSpec::new(r.m).map_err(serde::de::Error::custom)?;
        Ok(QuadInt::new(ring, r.a1, r.a2))
    }
}

/// Every element with `norm(z) <= bound`, sorted lexicographically by `(a1, a2)`.
pub fn enumerate_disc_int(ring: RingSpec, bound: i128) -> Vec<QuadInt> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    let m = ring.m as i128;
    if ring.is_half_integral() {
        // (2a1 + a2)^2 + m a2^2 <= 4 bound
        let b4 = 4 * bound;
        let a2_max = (b4 / m).sqrt();
        for a2 in -a2_max..=a2_max {
            let c1_max = (b4 - m * a2 * a2).sqrt();
            for c1 in -c1_max..=c1_max {
                if (c1 - a2).rem_euclid(2) == 0 {
                    out.push(QuadInt::new(ring, ((c1 - a2) / 2) as i64, a2 as i64));
                }
            }
        }
    } else {
        let a2_max = (bound / m).sqrt();
        for a2 in -a2_max..=a2_max {
            let a1_max = (bound - m * a2 * a2).sqrt();
            for a1 in -a1_max..=a1_max {
                out.push(QuadInt::new(ring, a1 as i64, a2 as i64));
            }
        }
    }
    out.sort();
    out
}

/// Every element of Z_M with `norm(z) <= r_sq`.
pub fn enumerate_disc(ring: RingSpec, r_sq: &BigRational) -> Vec<QuadInt> {
    if r_sq.is_negative() {
        return Vec::new();
    }
    let bound = r_sq.floor().to_integer();
    let bound = bound.to_i128().unwrap_or(i128::MAX / 8);
    enumerate_disc_int(ring, bound)
}

/// Exact test `norm(z) > c^2`, i.e. `|z| > c` for a non-negative rational `c`.
pub fn norm_exceeds(z: &QuadInt, c: &BigRational) -> bool {
    let n = BigRational::from_integer(BigInt::from(z.norm()));
    n > c * c
}
