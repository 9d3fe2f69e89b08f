//! Ranks over Q(ζ_N) (N = 1 for Q) from reductions modulo primes p ≡ 1 mod N.
//!
//! Each reduction can only lose rank. If the true rank exceeded the best
//! modular rank r, some (r+1)-minor would be a nonzero algebraic integer
//! whose norm is divisible by every prime used; a Hadamard bound on that
//! norm caps how many primes this can happen for.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Ring, RingKind, Scalar};

use super::Matrix;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime p ≡ 1 mod N together with a primitive N-th root of unity mod p.
#[derive(Clone, Copy, Debug)]
pub struct ModPrime {
    pub p: u64,
    pub omega: u64,
}

/// The `idx`-th prime below 2^62 congruent to 1 mod `n`.
pub fn prime_for(n: u32, idx: usize) -> ModPrime {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u32, Vec<ModPrime>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    let mut guard = cache.lock().unwrap();
    let list = guard.entry(n).or_default();
    let n64 = n.max(1) as u64;
    while list.len() <= idx {
        let mut k = match list.last() {
            Some(mp) => (mp.p - 1) / n64 - 1,
            None => ((1u64 << 62) - 1) / n64,
        };
        let p = loop {
            let cand = k * n64 + 1;
            if is_prime(cand) {
                break cand;
            }
            k -= 1;
        };
        let factors = prime_factors(n64);
        let omega = (2u64..)
            .map(|g| pow_mod(g, (p - 1) / n64, p))
            .find(|&w| factors.iter().all(|&r| pow_mod(w, n64 / r, p) != 1))
            .unwrap();
        list.push(ModPrime { p, omega });
    }
    list[idx]
}

/// Row-scaled integer image of a matrix over Q or Q(ζ_N): entry (i, j)
/// is a coefficient vector in the power basis of ζ.
pub struct IntegerImage {
    pub n: u32,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntegerImage {
    pub fn new(ring: &Ring, m: &Matrix) -> Option<Self> {
        let (n, degree) = match ring.kind() {
            RingKind::Rational { .. } => (1, 1),
            RingKind::Cyclotomic { field, .. } => (field.n, field.degree()),
            _ => return None,
        };
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            let row = m.row(i);
            let coeffs: Vec<Vec<num_rational::BigRational>> = row
                .iter()
                .map(|x| match x {
                    Scalar::Rational(r) => vec![r.clone()],
                    Scalar::Cyc(c) => c.coeffs().to_vec(),
                    _ => unreachable!(),
                })
                .collect();
            let lcm = coeffs
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            for c in coeffs {
                entries.push(c.iter().map(|x| (x * &lcm).to_integer()).collect());
            }
        }
        Some(Self { n, degree, rows: m.rows(), cols: m.cols(), entries })
    }

    fn entry(&self, i: usize, j: usize) -> &[BigInt] {
        &self.entries[i * self.cols + j]
    }

    pub fn reduce(&self, mp: ModPrime) -> Vec<Vec<u64>> {
        let p = mp.p;
        let pb = BigInt::from(p);
        let powers: Vec<u64> = (0..self.degree).map(|k| pow_mod(mp.omega, k as u64, p)).collect();
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let mut acc = 0u64;
                        for (k, c) in self.entry(i, j).iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let r = c.mod_floor(&pb).to_u64().unwrap();
                            acc = (acc + mul_mod(r, powers[k], p)) % p;
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// log2 of an upper bound on the Euclidean norm of each row (or column)
    /// under every complex embedding.
    fn log_norms(&self, by_rows: bool) -> Vec<f64> {
        let (outer, inner) = if by_rows { (self.rows, self.cols) } else { (self.cols, self.rows) };
        (0..outer)
            .map(|a| {
                let mut sq = BigInt::zero();
                for b in 0..inner {
                    let e = if by_rows { self.entry(a, b) } else { self.entry(b, a) };
                    let l1: BigInt = e.iter().map(|c| c.abs()).sum();
                    sq += &l1 * &l1;
                }
                if sq.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    // log2(sqrt(sq)) ≤ bits/2
                    sq.bits() as f64 / 2.0
                }
            })
            .collect()
    }

    /// log2 of a bound on |Norm(M)| for every (r × r) minor M.
    fn minor_norm_bound(&self, r: usize) -> Option<f64> {
        let best = |mut v: Vec<f64>| -> Option<f64> {
            v.sort_by(|a, b| b.partial_cmp(a).unwrap());
            if v.len() < r || v[r - 1] == f64::NEG_INFINITY {
                return None;
            }
            Some(v[..r].iter().sum())
        };
        let a = best(self.log_norms(true))?;
        let b = best(self.log_norms(false))?;
        Some(a.min(b) * self.degree as f64)
    }
}

pub fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank over Q or Q(ζ_N), proven by the norm bound. `None` for other rings.
pub fn certified_rank(ring: &Ring, m: &Matrix) -> Option<usize> {
    let img = IntegerImage::new(ring, m)?;
    let full = img.rows.min(img.cols);
    if full == 0 {
        return Some(0);
    }
    let mut best = 0;
    let mut log_product = 0.0;
    for idx in 0.. {
        let mp = prime_for(img.n, idx);
        best = best.max(rank_mod(img.reduce(mp), mp.p));
        if best == full {
            return Some(best);
        }
        log_product += (mp.p as f64).log2().floor();
        match img.minor_norm_bound(best + 1) {
            None => return Some(best),
            Some(bound) if log_product > bound => return Some(best),
            _ => {}
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_one_mod_n() {
        for n in [1u32, 3, 8, 10, 16] {
            for i in 0..3 {
                let mp = prime_for(n, i);
                assert!(is_prime(mp.p));
                assert_eq!(mp.p % n as u64, 1 % n as u64);
                assert_eq!(pow_mod(mp.omega, n as u64, mp.p), 1);
            }
        }
    }

    #[test]
    fn certified_matches_exact() {
        let r = Ring::root_of_unity(4).unwrap();
        let b = r.beta();
        let z = r.v_pow(3);
        let m = Matrix::from_rows(
            &r,
            3,
            vec![
                vec![b.clone(), z.clone(), r.one()],
                vec![&b * &z, &z * &z, z.clone()],
                vec![r.one(), r.int(2), r.v_pow(-1)],
            ],
        );
        assert_eq!(certified_rank(&r, &m), Some(super::super::rank_exact(&r, &m)));
    }
}
