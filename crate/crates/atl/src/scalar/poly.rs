//! Dense univariate polynomials over Q, stored lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out: QPoly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[BigRational], s: &BigRational) -> QPoly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead = b[db].clone();
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[shift + j] -= &c * bj;
            }
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Inverse of `a` modulo `m`, when the two are coprime.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let (_, red) = divrem(&r1, m);
    r1 = red;
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let (_, out) = divrem(&scale(&s0, &c), m);
    Some(out)
}

pub fn from_ints(c: &[i64]) -> QPoly {
    let mut p: QPoly = c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    trim(&mut p);
    p
}

/// Integer coefficients of the n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Vec<i64> {
    // x^n - 1 divided by all Phi_d, d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic(d);
            num = exact_int_div(&num, &den);
        }
    }
    num
}

fn exact_int_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    assert_eq!(b[db], 1, "monic divisor expected");
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db];
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn content_lcm_den(p: &[BigRational]) -> BigInt {
    p.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
}

pub fn is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn render(p: &[BigRational], var: &str) -> String {
    if is_zero(p) {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if !c.is_zero() {
            parts.push(format!("{}*{}^{}", super::fmt_rational(c), var, i));
        }
    }
    parts.join(" + ")
}

pub fn max_abs_coeff_bits(p: &[BigRational]) -> u64 {
    p.iter().map(|c| c.numer().abs().bits()).max().unwrap_or(0)
}
