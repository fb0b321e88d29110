//! Finite-dimensional braided vector spaces with Laurent coefficients.

use std::collections::HashMap;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::LaurentScalar;
use crate::shuffle::modp;

pub type Word = Vec<u8>;

/// `c(x ⊗ y) = Σ coeff · (a ⊗ b)`, stored per ordered pair `(x, y)`.
pub type BraidTable = Vec<Vec<Vec<(usize, usize, LaurentScalar)>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct BraidedSpace {
    pub labels: Vec<String>,
    /// `c(x ⊗ y)` for every pair.
    pub c: BraidTable,
    pub diagonal: bool,
    /// Block key of each basis vector; `c` preserves the sum over a word.
    pub weights: Vec<Vec<i64>>,
    /// Regrading degree of each basis vector.
    pub degrees: Vec<u32>,
}

impl BraidedSpace {
    /// Diagonal braiding `c(x ⊗ y) = v^{e_xy} y ⊗ x`.
    pub fn from_exponents(labels: Vec<String>, e: &[Vec<i64>]) -> Result<Self> {
        let q: Vec<Vec<LaurentScalar>> = e
            .iter()
            .map(|r| r.iter().map(|&k| LaurentScalar::v_pow(k)).collect())
            .collect();
        Self::diagonal(labels, q)
    }

    /// Diagonal braiding with monomial coefficients `q_xy`.
    pub fn diagonal(labels: Vec<String>, q: Vec<Vec<LaurentScalar>>) -> Result<Self> {
        let n = labels.len();
        if q.len() != n || q.iter().any(|r| r.len() != n) {
            return Err(Error::Schema(format!(
                "expected a {n}x{n} coefficient matrix"
            )));
        }
        if n > 255 {
            return Err(Error::Schema("at most 255 basis vectors".into()));
        }
        let mut c = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                if !q[x][y].is_monomial() {
                    return Err(Error::Schema(format!(
                        "q[{x}][{y}] = {} is not a nonzero monomial",
                        q[x][y]
                    )));
                }
                c[x][y].push((y, x, q[x][y].clone()));
            }
        }
        let weights = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Ok(Self {
            labels,
            c,
            diagonal: true,
            weights,
            degrees: vec![1; n],
        })
    }

    /// General braiding; checks grading, invertibility and the braid equation.
    pub fn general(
        labels: Vec<String>,
        c: BraidTable,
        weights: Vec<Vec<i64>>,
        degrees: Vec<u32>,
    ) -> Result<Self> {
        let n = labels.len();
        if c.len() != n
            || c.iter().any(|r| r.len() != n)
            || weights.len() != n
            || degrees.len() != n
        {
            return Err(Error::Schema("dimension mismatch in braided space".into()));
        }
        if n > 255 {
            return Err(Error::Schema("at most 255 basis vectors".into()));
        }
        let mut c = c;
        for row in c.iter_mut() {
            for terms in row.iter_mut() {
                terms.retain(|(_, _, k)| !k.is_zero());
            }
        }
        let s = Self {
            labels,
            c,
            diagonal: false,
            weights,
            degrees,
        };
        s.check_grading()?;
        s.check_invertible()?;
        s.check_braid_equation()?;
        Ok(s)
    }

    pub fn with_degrees(mut self, degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() != self.dim() || degrees.contains(&0) {
            return Err(Error::Schema(
                "degrees must be positive, one per basis vector".into(),
            ));
        }
        self.degrees = degrees;
        self.check_grading()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `q_xy` of a diagonal braiding.
    pub fn q(&self, x: usize, y: usize) -> Option<&LaurentScalar> {
        if !self.diagonal {
            return None;
        }
        self.c[x][y].first().map(|(_, _, k)| k)
    }

    fn key_of(&self, x: usize) -> Vec<i64> {
        let mut k = self.weights[x].clone();
        k.push(i64::from(self.degrees[x]));
        k
    }

    /// Block key of a word: summed weights followed by the summed degree.
    pub fn word_key(&self, w: &[u8]) -> Vec<i64> {
        let mut k = vec![0; self.weights.first().map_or(0, |v| v.len()) + 1];
        for &x in w {
            for (a, b) in k.iter_mut().zip(self.key_of(x as usize)) {
                *a += b;
            }
        }
        k
    }

    pub fn letter_key(&self, x: usize) -> Vec<i64> {
        self.key_of(x)
    }

    fn check_grading(&self) -> Result<()> {
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                let k = self.word_key(&[x as u8, y as u8]);
                for (a, b, _) in &self.c[x][y] {
                    if self.word_key(&[*a as u8, *b as u8]) != k {
                        return Err(Error::GradingViolation);
                    }
                }
            }
        }
        Ok(())
    }

    fn check_invertible(&self) -> Result<()> {
        // Full rank at one specialization proves invertibility over Q(v).
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..4 {
            let p = modp::random_prime(&mut rng);
            let t = rand::Rng::gen_range(&mut rng, 2..p - 1);
            let mut m = vec![vec![0u64; n * n]; n * n];
            let mut ok = true;
            for x in 0..n {
                for y in 0..n {
                    for (a, b, k) in &self.c[x][y] {
                        match k.eval_mod(t, p) {
                            Some(val) => {
                                let r = a * n + b;
                                m[r][x * n + y] = modp::add(m[r][x * n + y], val, p);
                            }
                            None => ok = false,
                        }
                    }
                }
            }
            if ok && modp::rank_rows(m, p).0 == n * n {
                return Ok(());
            }
        }
        Err(Error::NotInvertible)
    }

    /// `(c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c)` on every basis word.
    pub fn check_braid_equation(&self) -> Result<()> {
        let n = self.dim() as u8;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let w = vec![x, y, z];
                    let lhs = self.apply_seq(&w, &[0, 1, 0]);
                    let rhs = self.apply_seq(&w, &[1, 0, 1]);
                    if lhs != rhs {
                        return Err(Error::NotBraided);
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies `c` at positions `(i, i+1)` to a sparse vector.
    pub fn apply_c(
        &self,
        v: &HashMap<Word, LaurentScalar>,
        i: usize,
    ) -> HashMap<Word, LaurentScalar> {
        let mut out: HashMap<Word, LaurentScalar> = HashMap::new();
        for (w, k) in v {
            let (x, y) = (w[i] as usize, w[i + 1] as usize);
            for (a, b, c) in &self.c[x][y] {
                let mut u = w.clone();
                u[i] = *a as u8;
                u[i + 1] = *b as u8;
                let e = out.entry(u).or_insert_with(LaurentScalar::zero);
                *e += &(k * c);
            }
        }
        out.retain(|_, k| !k.is_zero());
        out
    }

    /// Applies `c_{s_1}` first, then `c_{s_2}`, ... to a basis word.
    pub fn apply_seq(&self, w: &[u8], seq: &[usize]) -> HashMap<Word, LaurentScalar> {
        let mut v = HashMap::new();
        v.insert(w.to_vec(), LaurentScalar::one());
        for &i in seq {
            v = self.apply_c(&v, i);
        }
        v
    }

    /// Divides every exponent by their gcd `g` (rank over `Q(v^g)` equals
    /// rank over `Q(v)`); returns the new space and `g`.
    pub fn reduce_exponents(&self) -> (Self, i64) {
        let mut g = 0i64;
        for row in &self.c {
            for terms in row {
                for (_, _, k) in terms {
                    for (e, _) in k.terms() {
                        g = g.gcd(&e);
                    }
                }
            }
        }
        if g <= 1 {
            return (self.clone(), 1);
        }
        let mut s = self.clone();
        for row in s.c.iter_mut() {
            for terms in row.iter_mut() {
                for (_, _, k) in terms.iter_mut() {
                    *k = LaurentScalar::from_terms(k.terms().map(|(e, c)| (e / g, c.clone())));
                }
            }
        }
        (s, g)
    }

    pub fn to_description(&self) -> SpaceDescription {
        if self.diagonal {
            let n = self.dim();
            let exps: Option<Vec<Vec<i64>>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| self.q(x, y).and_then(|k| k.unit_monomial_exponent()))
                        .collect()
                })
                .collect();
            if let Some(e) = exps {
                return SpaceDescription::Diagonal {
                    basis: self.labels.clone(),
                    exponents: e,
                    degrees: Some(self.degrees.clone()),
                };
            }
        }
        let mut terms = Vec::new();
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                for (a, b, k) in &self.c[x][y] {
                    terms.push(TensorEntry {
                        from: [x, y],
                        to: [*a, *b],
                        coeff: k.clone(),
                    });
                }
            }
        }
        SpaceDescription::Tensor {
            basis: self.labels.clone(),
            braiding: terms,
            weights: Some(self.weights.clone()),
            degrees: Some(self.degrees.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub from: [usize; 2],
    pub to: [usize; 2],
    pub coeff: LaurentScalar,
}

/// JSON description of a space: either `{"basis", "exponents"}` for a
/// diagonal braiding or `{"basis", "braiding": [{from, to, coeff}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SpaceDescription {
    Diagonal {
        basis: Vec<String>,
        exponents: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degrees: Option<Vec<u32>>,
    },
    Tensor {
        basis: Vec<String>,
        braiding: Vec<TensorEntry>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degrees: Option<Vec<u32>>,
    },
}

impl SpaceDescription {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn build(&self) -> Result<BraidedSpace> {
        match self {
            SpaceDescription::Diagonal {
                basis,
                exponents,
                degrees,
            } => {
                let s = BraidedSpace::from_exponents(basis.clone(), exponents)?;
                match degrees {
                    Some(d) => s.with_degrees(d.clone()),
                    None => Ok(s),
                }
            }
            SpaceDescription::Tensor {
                basis,
                braiding,
                weights,
                degrees,
            } => {
                let n = basis.len();
                let mut c: BraidTable = vec![vec![Vec::new(); n]; n];
                for t in braiding {
                    if t.from.iter().chain(t.to.iter()).any(|&i| i >= n) {
                        return Err(Error::Schema(format!("index out of range in {:?}", t.from)));
                    }
                    c[t.from[0]][t.from[1]].push((t.to[0], t.to[1], t.coeff.clone()));
                }
                // Without explicit weights every vector shares one block.
                let w = weights.clone().unwrap_or_else(|| vec![vec![]; n]);
                let d = degrees.clone().unwrap_or_else(|| vec![1; n]);
                BraidedSpace::general(basis.clone(), c, w, d)
            }
        }
    }
}
