//! Arithmetic in F_p for primes below 2^62.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

pub fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    debug_assert!(!r.is_negative());
    r.to_u64().expect("residue fits in u64")
}

pub fn reduce_i64(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^60, 2^61)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 60)..(1u64 << 61)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Rank of a dense matrix over F_p, destroying it.  Returns the rank and
/// the indices of a maximal set of independent rows, in increasing order.
pub fn rank_rows(mut m: Vec<Vec<u64>>, p: u64) -> (usize, Vec<usize>) {
    let nrows = m.len();
    if nrows == 0 {
        return (0, Vec::new());
    }
    let ncols = m[0].len();
    // Eliminate row by row so that the independent rows are the earliest ones.
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for (ri, row) in m.iter_mut().enumerate() {
        for (pc, prow) in &pivots {
            let f = row[*pc];
            if f != 0 {
                for j in *pc..ncols {
                    if prow[j] != 0 {
                        row[j] = sub(row[j], mul(f, prow[j], p), p);
                    }
                }
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let s = inv(row[pc], p);
            let normalized: Vec<u64> = row.iter().map(|&x| mul(x, s, p)).collect();
            pivots.push((pc, normalized));
            picked.push(ri);
            if pivots.len() == ncols {
                break;
            }
        }
    }
    (picked.len(), picked)
}

/// Montgomery multiplication modulo an odd `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Mont {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 62);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Self {
            p,
            pinv: inv.wrapping_neg(),
            r2: mul(r, r, p),
        }
    }

    /// `a b 2^-64 mod p`
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.mul(a, 1)
    }

    /// Inverse within the Montgomery domain.
    pub fn inv(&self, a: u64) -> u64 {
        self.to_mont(inv(self.from_mont(a), self.p))
    }
}

/// Same contract as `rank_rows`, using Montgomery arithmetic throughout.
/// Entries are read as Montgomery representatives, which scales the matrix
/// by a unit and leaves the rank alone.
pub fn rank_rows_mont(mut m: Vec<Vec<u64>>, mont: &Mont) -> (usize, Vec<usize>) {
    let p = mont.p;
    let nrows = m.len();
    if nrows == 0 {
        return (0, Vec::new());
    }
    let ncols = m[0].len();
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for (ri, row) in m.iter_mut().enumerate() {
        for (pc, prow) in &pivots {
            let f = row[*pc];
            if f != 0 {
                for j in *pc..ncols {
                    if prow[j] != 0 {
                        row[j] = sub(row[j], mont.mul(f, prow[j]), p);
                    }
                }
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let s = mont.inv(row[pc]);
            let normalized: Vec<u64> = row.iter().map(|&x| mont.mul(x, s)).collect();
            pivots.push((pc, normalized));
            picked.push(ri);
            if pivots.len() == ncols {
                break;
            }
        }
    }
    (picked.len(), picked)
}
