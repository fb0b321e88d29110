//! Rank over `Q(v)` of matrices with Laurent polynomial entries.
//!
//! `certified_rank` combines a modular lower bound (any nonzero minor at a
//! specialization is nonzero over `Q(v)`) with an upper bound: after
//! shifting and clearing denominators every `(r+1)`-minor is an integer
//! polynomial of degree at most `N` with coefficients bounded by `B`, so
//! vanishing at `N + 1` points modulo primes whose product exceeds `2B`
//! forces it to be zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactq::LaurentScalar;
use crate::shuffle::modp;

struct IntRow {
    /// `(exponent, coefficient)` per column, shifted to be nonnegative.
    entries: Vec<Vec<(u64, BigInt)>>,
    /// Exponent span of the row.
    span: u64,
    /// `Σ_j ||M_ij||_1^2`
    norm2: BigInt,
}

fn integerize(row: &[LaurentScalar]) -> IntRow {
    let lo = row.iter().filter_map(|e| e.min_exp()).min();
    let Some(lo) = lo else {
        return IntRow {
            entries: vec![Vec::new(); row.len()],
            span: 0,
            norm2: BigInt::zero(),
        };
    };
    let den = row.iter().fold(BigInt::one(), |acc, e| {
        num_integer::Integer::lcm(&acc, &e.denominator_lcm())
    });
    let den = crate::exactq::Rational::from_integer(den);
    let mut span = 0;
    let mut norm2 = BigInt::zero();
    let entries = row
        .iter()
        .map(|e| {
            let mut l1 = BigInt::zero();
            let terms = e
                .terms()
                .map(|(k, c)| {
                    let z = (c * &den).to_integer();
                    let ex = (k - lo) as u64;
                    span = span.max(ex);
                    l1 += z.abs();
                    (ex, z)
                })
                .collect();
            norm2 += &l1 * &l1;
            terms
        })
        .collect();
    IntRow {
        entries,
        span,
        norm2,
    }
}

/// Column spans and `Σ_i ||M_ij||_1^2` of the integerized matrix.
fn column_data(
    rows: &[Vec<LaurentScalar>],
    ints: &[IntRow],
    ncols: usize,
) -> (Vec<u64>, Vec<BigInt>) {
    let mut spans = Vec::with_capacity(ncols);
    let mut norms = vec![BigInt::zero(); ncols];
    for j in 0..ncols {
        let lo = rows.iter().filter_map(|r| r[j].min_exp()).min();
        let hi = rows.iter().filter_map(|r| r[j].max_exp()).max();
        spans.push(match (lo, hi) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        });
    }
    for r in ints {
        for (j, e) in r.entries.iter().enumerate() {
            let l1: BigInt = e.iter().map(|(_, z)| z.abs()).sum();
            norms[j] += &l1 * &l1;
        }
    }
    (spans, norms)
}

struct Residues {
    mont: modp::Mont,
    rows: Vec<Vec<Vec<(u64, u64)>>>,
    max_degree: u64,
}

impl Residues {
    fn new(rows: &[IntRow], p: u64) -> Self {
        let rows: Vec<Vec<Vec<(u64, u64)>>> = rows
            .iter()
            .map(|r| {
                r.entries
                    .iter()
                    .map(|e| {
                        e.iter()
                            .map(|(k, z)| (*k, modp::reduce_bigint(z, p)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let max_degree = rows
            .iter()
            .flatten()
            .flatten()
            .map(|(k, _)| *k)
            .max()
            .unwrap_or(0);
        Self {
            mont: modp::Mont::new(p),
            rows,
            max_degree,
        }
    }

    fn p(&self) -> u64 {
        self.mont.p
    }

    fn rank_at(&self, t: u64) -> (usize, Vec<usize>) {
        let mt = &self.mont;
        let p = mt.p;
        let tm = mt.to_mont(t);
        let mut pw = Vec::with_capacity(self.max_degree as usize + 1);
        let mut acc = mt.to_mont(1);
        for _ in 0..=self.max_degree {
            pw.push(acc);
            acc = mt.mul(acc, tm);
        }
        let m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        e.iter()
                            .fold(0, |s, (k, c)| modp::add(s, mt.mul(*c, pw[*k as usize]), p))
                    })
                    .collect()
            })
            .collect();
        modp::rank_rows_mont(m, mt)
    }
}

fn top_sum(v: &[u64], k: usize) -> u64 {
    let mut v = v.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v[..k.min(v.len())].iter().sum()
}

fn top_product(v: &[BigInt], k: usize) -> BigInt {
    let mut v = v.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v[..k.min(v.len())].iter().product()
}

/// Rank at one random specialization; a lower bound for the rank over `Q(v)`.
pub fn modular_rank(rows: &[Vec<LaurentScalar>], rng: &mut ChaCha8Rng) -> (usize, Vec<usize>) {
    let ints: Vec<IntRow> = rows.iter().map(|r| integerize(r)).collect();
    let res = Residues::new(&ints, modp::random_prime(rng));
    let t = rng.gen_range(2..res.p() - 1);
    res.rank_at(t)
}

/// Exact rank over `Q(v)` and the indices of a maximal independent set of rows.
pub fn certified_rank(rows: &[Vec<LaurentScalar>], rng: &mut ChaCha8Rng) -> (usize, Vec<usize>) {
    if rows.is_empty() {
        return (0, Vec::new());
    }
    let ncols = rows[0].len();
    let ints: Vec<IntRow> = rows.iter().map(|r| integerize(r)).collect();
    let mut best = (0, Vec::new());
    for _ in 0..2 {
        let res = Residues::new(&ints, modp::random_prime(rng));
        let t = rng.gen_range(2..res.p() - 1);
        let got = res.rank_at(t);
        if got.0 > best.0 {
            best = got;
        }
    }
    let row_spans: Vec<u64> = ints.iter().map(|r| r.span).collect();
    let row_norms: Vec<BigInt> = ints.iter().map(|r| r.norm2.clone()).collect();
    let (col_spans, col_norms) = column_data(rows, &ints, ncols);
    'outer: loop {
        let k = best.0 + 1;
        if k > rows.len().min(ncols) {
            return best;
        }
        // Hadamard: every k-minor has coefficients of size at most B, B^2 <= bound2.
        let bound2 = top_product(&row_norms, k).min(top_product(&col_norms, k));
        if bound2.is_zero() {
            return best;
        }
        // A nonzero Laurent polynomial of span S has at most S nonzero roots.
        let points = top_sum(&row_spans, k).min(top_sum(&col_spans, k)) + 1;
        let target = bound2 * 4;
        let mut modulus2 = BigInt::one();
        let mut primes = Vec::new();
        while modulus2 <= target {
            let p = modp::random_prime(rng);
            if !primes.contains(&p) {
                modulus2 *= BigInt::from(p) * BigInt::from(p);
                primes.push(p);
            }
        }
        for p in primes {
            let res = Residues::new(&ints, p);
            let found = (1..=points)
                .into_par_iter()
                .map(|t| res.rank_at(t))
                .find_any(|(r, _)| *r > best.0);
            if let Some(found) = found {
                best = found;
                continue 'outer;
            }
        }
        return best;
    }
}

/// Fraction-free elimination over `Q[v, v^-1]`; slow, used as an oracle.
pub fn bareiss_rank(rows: &[Vec<LaurentScalar>]) -> usize {
    let mut m: Vec<Vec<LaurentScalar>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = LaurentScalar::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = &(&m[rank][col] * &m[r][c]) - &(&m[r][col] * &m[rank][c]);
                m[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][col] = LaurentScalar::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
