//! Brute-force quantum symmetrizer: the sum over all permutations of their
//! braid lifts.  Exponential; used to cross-check the factorized engine.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactq::LaurentScalar;
use crate::shuffle::rank;
use crate::shuffle::space::{BraidedSpace, Word};

type Vector = HashMap<Word, LaurentScalar>;

/// A reduced word for the permutation that sorts `perm`, recorded as the
/// adjacent swaps performed by insertion sort.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut out = Vec::new();
    for i in 1..p.len() {
        let mut j = i;
        while j > 0 && p[j - 1] > p[j] {
            p.swap(j - 1, j);
            out.push(j - 1);
            j -= 1;
        }
    }
    out
}

/// Another reduced word for the same permutation: swap a random descent
/// until sorted.
pub fn random_reduced_word<R: Rng>(perm: &[usize], rng: &mut R) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut out = Vec::new();
    loop {
        let descents: Vec<usize> = (0..p.len().saturating_sub(1))
            .filter(|&i| p[i] > p[i + 1])
            .collect();
        if descents.is_empty() {
            return out;
        }
        let i = descents[rng.gen_range(0..descents.len())];
        p.swap(i, i + 1);
        out.push(i);
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn add_into(acc: &mut Vector, v: Vector) {
    for (w, k) in v {
        let e = acc.entry(w).or_insert_with(LaurentScalar::zero);
        *e += &k;
    }
    acc.retain(|_, k| !k.is_zero());
}

/// `S_n(w) = Σ_σ lift(σ)(w)` over all permutations.
pub fn symmetrizer_brute(space: &BraidedSpace, w: &[u8]) -> Vector {
    let mut acc = Vector::new();
    for perm in permutations(w.len()) {
        add_into(&mut acc, space.apply_seq(w, &reduced_word(&perm)));
    }
    acc
}

/// `T_n(w) = w + c_{n-1}(w) + c_{n-1}c_{n-2}(w) + ...`.
pub fn t_n(space: &BraidedSpace, w: &[u8]) -> Vector {
    let mut y = Vector::new();
    y.insert(w.to_vec(), LaurentScalar::one());
    for k in 1..w.len() {
        y = space.apply_c(&y, k - 1);
        add_into(&mut y, HashMap::from([(w.to_vec(), LaurentScalar::one())]));
    }
    y
}

/// `S_n` applied to a vector through `S_n = (S_{n-1} ⊗ id) T_n`.
pub fn symmetrize(space: &BraidedSpace, v: &Vector) -> Vector {
    let mut acc = Vector::new();
    for (w, k) in v {
        if w.len() <= 1 {
            add_into(&mut acc, HashMap::from([(w.clone(), k.clone())]));
            continue;
        }
        for (u, c) in t_n(space, w) {
            let (prefix, last) = u.split_at(u.len() - 1);
            let inner = symmetrize(
                space,
                &HashMap::from([(prefix.to_vec(), LaurentScalar::one())]),
            );
            let coeff = k * &c;
            let lifted = inner
                .into_iter()
                .map(|(mut p, s)| {
                    p.push(last[0]);
                    (p, &s * &coeff)
                })
                .collect();
            add_into(&mut acc, lifted);
        }
    }
    acc
}

/// Checks that two reduced words of random permutations lift to the same
/// operator on every word of length `n` (the braid relations at work).
pub fn matsumoto_spot_check(space: &BraidedSpace, n: usize, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = permutations(n);
    let words = all_words(space.dim(), n);
    for _ in 0..trials {
        let perm = &perms[rng.gen_range(0..perms.len())];
        let a = reduced_word(perm);
        let b = random_reduced_word(perm, &mut rng);
        for w in &words {
            if space.apply_seq(w, &a) != space.apply_seq(w, &b) {
                return false;
            }
        }
    }
    true
}

pub fn all_words(dim: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..dim as u8).map(move |x| {
                    let mut u = w.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// `dim B^n` for `n = 0..=max_degree` by ranking the brute-force symmetrizer
/// block by block.  Refuses when `n! · dim^n` exceeds `budget`.
pub fn brute_force_dims(
    space: &BraidedSpace,
    max_degree: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    let mut dims = vec![1];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=max_degree {
        let work = (1..=n)
            .product::<usize>()
            .saturating_mul(space.dim().saturating_pow(n as u32));
        if work > budget {
            return Err(Error::BudgetExceeded { dim: work, budget });
        }
        let mut blocks: BTreeMap<Vec<i64>, Vec<Word>> = BTreeMap::new();
        for w in all_words(space.dim(), n) {
            blocks.entry(space.word_key(&w)).or_default().push(w);
        }
        let mut total = 0;
        for words in blocks.values() {
            let index: HashMap<&Word, usize> =
                words.iter().enumerate().map(|(i, w)| (w, i)).collect();
            // Columns of S_n; rank of the transpose is the same.
            let rows: Vec<Vec<LaurentScalar>> = words
                .iter()
                .map(|w| {
                    let mut r = vec![LaurentScalar::zero(); words.len()];
                    for (u, k) in symmetrizer_brute(space, w) {
                        r[index[&u]] = k;
                    }
                    r
                })
                .collect();
            total += rank::certified_rank(&rows, &mut rng).0;
        }
        dims.push(total);
    }
    Ok(dims)
}
