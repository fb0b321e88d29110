//! Graded dimensions of Nichols algebras through the factorized
//! quantum symmetrizer `S_n = (S_{n-1} ⊗ id) T_n`.
//!
//! For each degree the engine keeps a basis `π_n` of the row space of
//! `S_n`, split into blocks by grading key.  The rows of `(π_{n-1} ⊗ id) T_n`
//! span the row space of `S_n`, so `dim B^n = rank` and the independent rows
//! become `π_n`.  With `A = π_{n-1} ⊗ id` and `B = id ⊗ π_{n-1}` the number
//! of new relations in degree `n` is `rk A + rk B - rk [A; B] - rk S_n`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::LaurentScalar;
use crate::shuffle::modp;
use crate::shuffle::rank;
use crate::shuffle::space::{BraidedSpace, Word};

pub const DEFAULT_BUDGET: usize = 5000;
pub const DEFAULT_MAX_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Ranks certified over `Q(v)`.
    Exact,
    /// Ranks at two random specializations; lower bounds, exact with high probability.
    Modular,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub max_degree: usize,
    /// Largest admissible block (number of words sharing a grading key).
    pub budget: usize,
    pub mode: RankMode,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
            budget: budget_from_env(),
            mode: RankMode::Exact,
            seed: 0,
        }
    }
}

/// `NICHOLS_BUDGET` if set and valid, else the default.
pub fn budget_from_env() -> usize {
    std::env::var("NICHOLS_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDim {
    pub degree: usize,
    /// Summed weights followed by the summed regrading degree.
    pub key: Vec<i64>,
    pub words: usize,
    pub dim: usize,
    pub new_relations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub max_degree: usize,
    pub mode: RankMode,
    /// `dims[n] = dim B^n(V)` for `n <= max_degree`.
    pub dims: Vec<usize>,
    /// Minimal relations first appearing in each tensor degree.
    pub new_relations: Vec<usize>,
    /// Hilbert coefficients for the regrading, complete up to `max_degree`.
    pub regraded: Vec<usize>,
    pub blocks: Vec<BlockDim>,
}

impl GradedDims {
    /// Degrees carrying new relations, with their counts.
    pub fn new_relation_degrees(&self) -> BTreeMap<usize, usize> {
        self.new_relations
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(n, &c)| (n, c))
            .collect()
    }

    pub fn block_dim(&self, key: &[i64]) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.key == key)
            .map(|b| b.dim)
            .sum()
    }
}

/// Scalars the engine computes with.
trait Ring: Sync + Send {
    type E: Clone + Send + Sync;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add_mul(&self, acc: &mut Self::E, a: &Self::E, b: &Self::E);
    fn add(&self, acc: &mut Self::E, a: &Self::E);
    fn lift(&self, k: &LaurentScalar) -> Self::E;
    fn one(&self) -> Self::E;
    fn rank(&self, rows: &[Vec<Self::E>], seed: u64) -> (usize, Vec<usize>);
}

struct ExactRing;

impl Ring for ExactRing {
    type E = LaurentScalar;
    fn zero(&self) -> LaurentScalar {
        LaurentScalar::zero()
    }
    fn is_zero(&self, a: &LaurentScalar) -> bool {
        a.is_zero()
    }
    fn add_mul(&self, acc: &mut LaurentScalar, a: &LaurentScalar, b: &LaurentScalar) {
        *acc += &(a * b);
    }
    fn add(&self, acc: &mut LaurentScalar, a: &LaurentScalar) {
        *acc += a;
    }
    fn lift(&self, k: &LaurentScalar) -> LaurentScalar {
        k.clone()
    }
    fn one(&self) -> LaurentScalar {
        LaurentScalar::one()
    }
    fn rank(&self, rows: &[Vec<LaurentScalar>], seed: u64) -> (usize, Vec<usize>) {
        rank::certified_rank(rows, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

struct ModRing {
    p: u64,
    t: u64,
}

impl ModRing {
    /// A random specialization at which every coefficient of `c` is defined.
    fn new(space: &BraidedSpace, rng: &mut ChaCha8Rng) -> Self {
        loop {
            let p = modp::random_prime(rng);
            let t = rng.gen_range(2..p - 1);
            let ok = space
                .c
                .iter()
                .flatten()
                .flatten()
                .all(|(_, _, k)| k.eval_mod(t, p).is_some());
            if ok {
                return Self { p, t };
            }
        }
    }
}

impl Ring for ModRing {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add_mul(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = modp::add(*acc, modp::mul(*a, *b, self.p), self.p);
    }
    fn add(&self, acc: &mut u64, a: &u64) {
        *acc = modp::add(*acc, *a, self.p);
    }
    fn lift(&self, k: &LaurentScalar) -> u64 {
        k.eval_mod(self.t, self.p)
            .expect("coefficients checked at construction")
    }
    fn one(&self) -> u64 {
        1
    }
    fn rank(&self, rows: &[Vec<u64>], _seed: u64) -> (usize, Vec<usize>) {
        modp::rank_rows(rows.to_vec(), self.p)
    }
}

struct Block<E> {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Independent rows of the symmetrizer restricted to this block.
    pi: Vec<Vec<E>>,
}

struct DegreeStats {
    key: Vec<i64>,
    words: usize,
    dim: usize,
    new_relations: usize,
}

struct Run<'a, R: Ring> {
    space: &'a BraidedSpace,
    ring: R,
    /// `c(x⊗y)` lifted into the ring.
    c: Vec<Vec<Vec<(u8, u8, R::E)>>>,
    keys: Vec<Vec<i64>>,
    seed: u64,
}

fn sub_key(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_key(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<'a, R: Ring> Run<'a, R> {
    fn new(space: &'a BraidedSpace, ring: R, seed: u64) -> Self {
        let c = space
            .c
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| {
                        t.iter()
                            .map(|(a, b, k)| (*a as u8, *b as u8, ring.lift(k)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let keys = (0..space.dim()).map(|x| space.letter_key(x)).collect();
        Self {
            space,
            ring,
            c,
            keys,
            seed,
        }
    }

    fn apply_c(&self, v: &HashMap<Word, R::E>, i: usize) -> HashMap<Word, R::E> {
        let mut out: HashMap<Word, R::E> = HashMap::with_capacity(v.len());
        for (w, k) in v {
            for (a, b, c) in &self.c[w[i] as usize][w[i + 1] as usize] {
                let mut u = w.clone();
                u[i] = *a;
                u[i + 1] = *b;
                let e = out.entry(u).or_insert_with(|| self.ring.zero());
                self.ring.add_mul(e, k, c);
            }
        }
        out.retain(|_, k| !self.ring.is_zero(k));
        out
    }

    /// `T_n(w)` via `y_1 = w`, `y_{k+1} = w + c_k y_k`.
    fn t_n(&self, w: &Word) -> HashMap<Word, R::E> {
        let mut y = HashMap::new();
        y.insert(w.clone(), self.ring.one());
        for k in 1..w.len() {
            y = self.apply_c(&y, k - 1);
            let e = y.entry(w.clone()).or_insert_with(|| self.ring.zero());
            self.ring.add(e, &self.ring.one());
            if self.ring.is_zero(e) {
                y.remove(w);
            }
        }
        y
    }

    fn degree_one(&self) -> BTreeMap<Vec<i64>, Block<R::E>> {
        let mut blocks: BTreeMap<Vec<i64>, Vec<Word>> = BTreeMap::new();
        for x in 0..self.space.dim() {
            blocks
                .entry(self.keys[x].clone())
                .or_default()
                .push(vec![x as u8]);
        }
        blocks
            .into_iter()
            .map(|(k, words)| {
                let n = words.len();
                let pi = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i == j {
                                    self.ring.one()
                                } else {
                                    self.ring.zero()
                                }
                            })
                            .collect()
                    })
                    .collect();
                (k, make_block(words, pi))
            })
            .collect()
    }

    fn next_degree(
        &self,
        prev: &BTreeMap<Vec<i64>, Block<R::E>>,
        budget: usize,
    ) -> Result<(BTreeMap<Vec<i64>, Block<R::E>>, Vec<DegreeStats>)> {
        let mut words: BTreeMap<Vec<i64>, Vec<Word>> = BTreeMap::new();
        for (k, b) in prev {
            for x in 0..self.space.dim() {
                let key = add_key(k, &self.keys[x]);
                let dst = words.entry(key).or_default();
                for u in &b.words {
                    let mut w = u.clone();
                    w.push(x as u8);
                    dst.push(w);
                }
            }
        }
        for ws in words.values_mut() {
            ws.sort_unstable();
            if ws.len() > budget {
                return Err(Error::BudgetExceeded {
                    dim: ws.len(),
                    budget,
                });
            }
        }
        let words: Vec<(Vec<i64>, Vec<Word>)> = words.into_iter().collect();
        let results: Vec<(Vec<i64>, Block<R::E>, DegreeStats)> = words
            .into_par_iter()
            .enumerate()
            .map(|(bi, (key, ws))| self.block(prev, key, ws, bi as u64))
            .collect();
        let mut next = BTreeMap::new();
        let mut stats = Vec::new();
        for (k, b, s) in results {
            next.insert(k, b);
            stats.push(s);
        }
        Ok((next, stats))
    }

    fn block(
        &self,
        prev: &BTreeMap<Vec<i64>, Block<R::E>>,
        key: Vec<i64>,
        words: Vec<Word>,
        salt: u64,
    ) -> (Vec<i64>, Block<R::E>, DegreeStats) {
        let ring = &self.ring;
        let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        // Row offset of letter x: rows (x, r) come from π_{n-1} on key - key(x).
        let mut offsets = Vec::new();
        let mut nrows = 0;
        for x in 0..self.space.dim() {
            let pk = sub_key(&key, &self.keys[x]);
            match prev.get(&pk) {
                Some(b) if !b.pi.is_empty() => {
                    offsets.push(Some((nrows, b)));
                    nrows += b.pi.len();
                }
                _ => offsets.push(None),
            }
        }
        let ncols = words.len();
        let mut m = vec![vec![ring.zero(); ncols]; nrows];
        for (j, w) in words.iter().enumerate() {
            for (u, coeff) in self.t_n(w) {
                let (prefix, last) = u.split_at(u.len() - 1);
                if let Some((off, b)) = offsets[last[0] as usize] {
                    let idx = b.index[prefix];
                    for (r, row) in b.pi.iter().enumerate() {
                        if !ring.is_zero(&row[idx]) {
                            ring.add_mul(&mut m[off + r][j], &row[idx], &coeff);
                        }
                    }
                }
            }
        }
        let seed = self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ key.len() as u64;
        let (rk_s, picked) = ring.rank(&m, seed);

        // [A; B]: prefix and suffix embeddings of π_{n-1}.
        let mut ab = Vec::with_capacity(2 * nrows);
        for x in 0..self.space.dim() {
            if let Some((_, b)) = offsets[x] {
                for row in &b.pi {
                    let mut a = vec![ring.zero(); ncols];
                    let mut s = vec![ring.zero(); ncols];
                    for (i, u) in b.words.iter().enumerate() {
                        let mut ux = u.clone();
                        ux.push(x as u8);
                        a[col[&ux]] = row[i].clone();
                        let mut xu = vec![x as u8];
                        xu.extend_from_slice(u);
                        s[col[&xu]] = row[i].clone();
                    }
                    ab.push(a);
                    ab.push(s);
                }
            }
        }
        let rk_ab = if nrows == 0 {
            0
        } else {
            ring.rank(&ab, seed ^ 0xab).0
        };
        let new_relations = (2 * nrows).saturating_sub(rk_ab + rk_s);
        let pi: Vec<Vec<R::E>> = picked.into_iter().map(|i| m[i].clone()).collect();
        let stats = DegreeStats {
            key: key.clone(),
            words: ncols,
            dim: rk_s,
            new_relations,
        };
        (key, make_block(words, pi), stats)
    }

    fn run(&self, cfg: &EngineConfig) -> Result<Vec<Vec<DegreeStats>>> {
        let mut out = Vec::new();
        let mut level = self.degree_one();
        out.push(
            level
                .iter()
                .map(|(k, b)| DegreeStats {
                    key: k.clone(),
                    words: b.words.len(),
                    dim: b.pi.len(),
                    new_relations: 0,
                })
                .collect(),
        );
        for _ in 2..=cfg.max_degree {
            let (next, stats) = self.next_degree(&level, cfg.budget)?;
            out.push(stats);
            level = next;
        }
        Ok(out)
    }
}

fn make_block<E>(words: Vec<Word>, pi: Vec<Vec<E>>) -> Block<E> {
    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Block { words, index, pi }
}

/// Graded dimensions of `B(V)` up to `cfg.max_degree`.
pub fn nichols_dims(space: &BraidedSpace, cfg: &EngineConfig) -> Result<GradedDims> {
    let (space, _) = space.reduce_exponents();
    let per_degree = match cfg.mode {
        RankMode::Exact => Run::new(&space, ExactRing, cfg.seed).run(cfg)?,
        RankMode::Modular => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let r1 = ModRing::new(&space, &mut rng);
            let r2 = ModRing::new(&space, &mut rng);
            let a = Run::new(&space, r1, cfg.seed).run(cfg)?;
            let b = Run::new(&space, r2, cfg.seed).run(cfg)?;
            // Each rank is a lower bound; keep the larger one per block.
            a.into_iter()
                .zip(b)
                .map(|(da, db)| {
                    da.into_iter()
                        .zip(db)
                        .map(|(sa, sb)| if sb.dim > sa.dim { sb } else { sa })
                        .collect()
                })
                .collect()
        }
    };
    Ok(assemble(&space, cfg, per_degree))
}

fn assemble(
    space: &BraidedSpace,
    cfg: &EngineConfig,
    per_degree: Vec<Vec<DegreeStats>>,
) -> GradedDims {
    let n = cfg.max_degree;
    let mut dims = vec![0; n + 1];
    let mut new_relations = vec![0; n + 1];
    let mut regraded = vec![0; n + 1];
    let mut blocks = Vec::new();
    dims[0] = 1;
    regraded[0] = 1;
    let wlen = space.weights.first().map_or(0, |w| w.len());
    for (i, stats) in per_degree.into_iter().enumerate() {
        let degree = i + 1;
        if degree > n {
            break;
        }
        for s in stats {
            dims[degree] += s.dim;
            new_relations[degree] += s.new_relations;
            let rd = s.key[wlen] as usize;
            if rd <= n {
                regraded[rd] += s.dim;
            }
            blocks.push(BlockDim {
                degree,
                key: s.key,
                words: s.words,
                dim: s.dim,
                new_relations: s.new_relations,
            });
        }
    }
    GradedDims {
        max_degree: n,
        mode: cfg.mode,
        dims,
        new_relations,
        regraded,
        blocks,
    }
}

/// Degrees (up to `cfg.max_degree`) in which `B(V)` has new relations.
pub fn new_relation_degrees(
    space: &BraidedSpace,
    cfg: &EngineConfig,
) -> Result<BTreeMap<usize, usize>> {
    Ok(nichols_dims(space, cfg)?.new_relation_degrees())
}
