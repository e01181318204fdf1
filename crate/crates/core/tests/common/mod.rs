//! Test oracles that share no code with the solver.
#![allow(dead_code)]

use simplest_thue::forms::{normalize_sign, Family, SolutionPair};
use simplest_thue::ring::{QuadInt, RingSpec};

pub const GRID_M: [i64; 11] = [1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 19];

pub fn coeffs(family: Family, t: i64) -> Vec<i64> {
    match family {
        Family::Quartic => vec![1, -t, -6, t, 1],
        Family::Sextic => vec![1, -2 * t, -(5 * t + 15), -20, 5 * t, 2 * t + 6, 1],
    }
}

/// `(c1, c2)` with `s z = c1 + c2 i sqrt m`.
fn split(m: i64, a1: i64, a2: i64) -> (i64, i64) {
    if m % 4 == 3 {
        (2 * a1 + a2, a2)
    } else {
        (a1, a2)
    }
}

/// All `(a1, a2)` whose norm is at most `r_sq`, scanning a coefficient box.
pub fn disc(m: i64, r_sq: i64) -> Vec<(i64, i64)> {
    let half = m % 4 == 3;
    let b = (4.0 * r_sq as f64).sqrt() as i64 + 2;
    let mut out = Vec::new();
    for a1 in -b..=b {
        for a2 in -b..=b {
            let norm = if half {
                a1 * a1 + a1 * a2 + a2 * a2 * (1 + m) / 4
            } else {
                a1 * a1 + m * a2 * a2
            };
            if norm <= r_sq {
                out.push((a1, a2));
            }
        }
    }
    out
}

/// `F(s x, s y)` as `(re, im)` with value `re + im i sqrt m`.
fn eval_exact(c: &[i64], m: i64, x: (i64, i64), y: (i64, i64)) -> (i128, i128) {
    let mul = |a: (i128, i128), b: (i128, i128)| (a.0 * b.0 - m as i128 * a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let n = c.len() - 1;
    let x = (x.0 as i128, x.1 as i128);
    let y = (y.0 as i128, y.1 as i128);
    let mut acc = (0i128, 0i128);
    for (k, &ck) in c.iter().enumerate() {
        let mut term = (ck as i128, 0i128);
        for _ in 0..n - k {
            term = mul(term, x);
        }
        for _ in 0..k {
            term = mul(term, y);
        }
        acc = (acc.0 + term.0, acc.1 + term.1);
    }
    acc
}

/// `{(x, y) : norm x, norm y <= r_sq, |F(x, y)| <= 1}`, sign-normalized.
///
/// A floating-point pass discards pairs with `|F|^2 > 4`; survivors are decided exactly.
pub fn disc_product_oracle(family: Family, t: i64, m: i64, r_sq: i64) -> Vec<SolutionPair> {
    let c = coeffs(family, t);
    let n = c.len() - 1;
    let s: f64 = if m % 4 == 3 { 2.0 } else { 1.0 };
    let sm = (m as f64).sqrt();
    let pts: Vec<((i64, i64), (f64, f64))> = disc(m, r_sq)
        .into_iter()
        .map(|(a1, a2)| {
            let (c1, c2) = split(m, a1, a2);
            ((a1, a2), (c1 as f64 / s, c2 as f64 * sm / s))
        })
        .collect();
    let cf: Vec<f64> = c.iter().map(|&v| v as f64).collect();
    let s_int: i128 = if m % 4 == 3 { 2 } else { 1 };
    let bound = s_int.pow(2 * n as u32);
    let ring = RingSpec::new(m).unwrap();
    let mut out = Vec::new();
    for &(ya, (yr, yi)) in &pts {
        for &(xa, (xr, xi)) in &pts {
            // Horner in x, carrying the powers of y
            let (mut ar, mut ai) = (cf[0], 0.0);
            let (mut pr, mut pi) = (1.0f64, 0.0f64);
            for &ck in &cf[1..] {
                let (nr, ni) = (ar * xr - ai * xi, ar * xi + ai * xr);
                let (qr, qi) = (pr * yr - pi * yi, pr * yi + pi * yr);
                pr = qr;
                pi = qi;
                ar = nr + ck * pr;
                ai = ni + ck * pi;
            }
            if ar * ar + ai * ai > 4.0 {
                continue;
            }
            let (re, im) = eval_exact(&c, m, split(m, xa.0, xa.1), split(m, ya.0, ya.1));
            if re * re + m as i128 * im * im <= bound {
                out.push(SolutionPair::new(QuadInt::new(ring, xa.0, xa.1), QuadInt::new(ring, ya.0, ya.1)));
            }
        }
    }
    normalize_sign(&out)
}
