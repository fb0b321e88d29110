//! Finite root systems, weight lattices and the invariant form `(-,-)`.
//!
//! Conventions:
//! - nodes are numbered as in Humphreys (B_n: `α_n` short, C_n: `α_n` long,
//!   F_4: `α_1, α_2` long, G_2: `α_1` short, E_n: `α_2` on the short arm);
//! - the Cartan matrix is `a_ij = 2(α_i, α_j)/(α_i, α_i)`;
//! - fundamental weights satisfy `(λ_i, α_j) = δ_ij (α_j, α_j)/2`;
//! - the form is scaled so that short roots have `(α, α) = 2t`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{fmt_rational, int, parse_rational, rat, rational_to_i64, Rational};
use crate::ratmat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub const ALL: [TypeLetter; 7] = [
        TypeLetter::A,
        TypeLetter::B,
        TypeLetter::C,
        TypeLetter::D,
        TypeLetter::E,
        TypeLetter::F,
        TypeLetter::G,
    ];

    pub fn is_valid_rank(self, n: usize) -> bool {
        match self {
            TypeLetter::A => n >= 1,
            TypeLetter::B => n >= 2,
            TypeLetter::C => n >= 3,
            TypeLetter::D => n >= 4,
            TypeLetter::E => (6..=8).contains(&n),
            TypeLetter::F => n == 4,
            TypeLetter::G => n == 2,
        }
    }

    pub fn simply_laced(self) -> bool {
        matches!(self, TypeLetter::A | TypeLetter::D | TypeLetter::E)
    }
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeLetter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLetter::A),
            "B" => Ok(TypeLetter::B),
            "C" => Ok(TypeLetter::C),
            "D" => Ok(TypeLetter::D),
            "E" => Ok(TypeLetter::E),
            "F" => Ok(TypeLetter::F),
            "G" => Ok(TypeLetter::G),
            _ => Err(Error::InvalidType(s.to_string())),
        }
    }
}

/// Simple type `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub letter: TypeLetter,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        if letter.is_valid_rank(rank) {
            Ok(Self { letter, rank })
        } else {
            Err(Error::InvalidType(format!("{letter}{rank}")))
        }
    }

    /// Every simple type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for letter in TypeLetter::ALL {
            for rank in 1..=max_rank {
                if letter.is_valid_rank(rank) {
                    out.push(SimpleType { letter, rank });
                }
            }
        }
        out
    }

    /// Edges of the Dynkin diagram, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.letter {
            TypeLetter::A | TypeLetter::B | TypeLetter::C | TypeLetter::F | TypeLetter::G => {
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            TypeLetter::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            TypeLetter::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// `(α_i, α_i)` with short roots of squared length 2.
    pub fn base_root_norms(&self) -> Vec<i64> {
        let n = self.rank;
        match self.letter {
            TypeLetter::A | TypeLetter::D | TypeLetter::E => vec![2; n],
            TypeLetter::B => (0..n).map(|i| if i + 1 == n { 2 } else { 4 }).collect(),
            TypeLetter::C => (0..n).map(|i| if i + 1 == n { 4 } else { 2 }).collect(),
            TypeLetter::F => vec![4, 4, 2, 2],
            TypeLetter::G => vec![2, 6],
        }
    }

    /// Root Gram matrix with short roots of squared length 2.
    pub fn base_root_gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let norms = self.base_root_norms();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = norms[i];
        }
        for (i, j) in self.edges() {
            let v = -norms[i].max(norms[j]) / 2;
            g[i][j] = v;
            g[j][i] = v;
        }
        g
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.base_root_gram();
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect())
            .collect()
    }

    /// Scale turning long roots into squared length 2.
    pub fn long2_scale(&self) -> Rational {
        let max = *self.base_root_norms().iter().max().unwrap();
        rat(2, max)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let letter: TypeLetter = chars.next().ok_or_else(bad)?.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| bad())?;
        SimpleType::new(letter, rank)
    }
}

/// Scale of the invariant form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Short roots have `(α, α) = 2`.
    Short2,
    /// Long roots have `(α, α) = 2`.
    Long2,
    /// Short roots have `(α, α) = 2t`.
    Scale(#[serde(with = "crate::exactq::rational_str")] Rational),
}

impl Normalization {
    pub fn scale_for(&self, ty: &SimpleType) -> Rational {
        match self {
            Normalization::Short2 => int(1),
            Normalization::Long2 => ty.long2_scale(),
            Normalization::Scale(t) => t.clone(),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalization::Short2 => write!(f, "short2"),
            Normalization::Long2 => write!(f, "long2"),
            Normalization::Scale(t) => write!(f, "{}", fmt_rational(t)),
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "short2" => Ok(Normalization::Short2),
            "long2" => Ok(Normalization::Long2),
            other => {
                let t = parse_rational(other)?;
                if t.is_positive() {
                    Ok(Normalization::Scale(t))
                } else {
                    Err(Error::InvalidType(format!("normalization {other}")))
                }
            }
        }
    }
}

/// `λ = Σ c_i λ_i` in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "crate::exactq::rational_vec_str")]
    pub coeffs: Vec<Rational>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); rank],
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self {
            coeffs: c.iter().map(|x| int(*x)).collect(),
        }
    }

    /// `k λ_i` (0-based `i`).
    pub fn fundamental(rank: usize, i: usize, k: i64) -> Self {
        let mut w = Self::zero(rank);
        w.coeffs[i] = int(k);
        w
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.denom().is_one() && !c.is_negative())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(rational_to_i64).collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Renders as `2λ1 + λ3`, or `0`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("λ{}", i + 1)
                } else {
                    format!("{}λ{}", fmt_rational(c), i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub ty: SimpleType,
    pub cartan: Vec<Vec<i64>>,
    #[serde(with = "crate::exactq::rational_str")]
    pub scale: Rational,
    /// `(α_i, α_j)`
    #[serde(with = "crate::exactq::rational_mat_str")]
    pub root_gram: Vec<Vec<Rational>>,
    /// `(λ_i, λ_j)`
    #[serde(with = "crate::exactq::rational_mat_str")]
    pub weight_gram: Vec<Vec<Rational>>,
    /// `(λ_i, α_j)`
    #[serde(with = "crate::exactq::rational_mat_str")]
    pub pairing: Vec<Vec<Rational>>,
    pub det: i64,
}

/// Builds the root datum of a simple type with form scale `t`.
pub fn root_datum(ty: SimpleType, norm: &Normalization) -> Result<RootDatum> {
    let ty = SimpleType::new(ty.letter, ty.rank)?;
    let t = norm.scale_for(&ty);
    if !t.is_positive() {
        return Err(Error::InvalidType(format!("normalization {t}")));
    }
    let n = ty.rank;
    let root_gram: Vec<Vec<Rational>> = ratmat::from_i64(&ty.base_root_gram())
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * &t).collect())
        .collect();
    let cartan = ty.cartan_matrix();
    let inv = ratmat::inverse(&root_gram).expect("root Gram matrix of a finite type is invertible");
    // λ_i = Σ_k M_ik α_k with M = (D/2) G^{-1}.
    let half_norm: Vec<Rational> = (0..n).map(|i| &root_gram[i][i] / int(2)).collect();
    let weight_gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &half_norm[i] * &inv[i][j] * &half_norm[j])
                .collect()
        })
        .collect();
    let pairing = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        half_norm[j].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = ratmat::determinant(&ratmat::from_i64(&cartan));
    let det = rational_to_i64(&det).expect("Cartan determinant is an integer");
    Ok(RootDatum {
        ty,
        cartan,
        scale: t,
        root_gram,
        weight_gram,
        pairing,
        det,
    })
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: w.rank(),
            });
        }
        Ok(())
    }

    /// `(u, w)`
    pub fn bilinear(&self, u: &Weight, w: &Weight) -> Result<Rational> {
        self.check(u)?;
        self.check(w)?;
        let mut acc = Rational::zero();
        for (i, a) in u.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc += a * b * &self.weight_gram[i][j];
                }
            }
        }
        Ok(acc)
    }

    /// `(α_j, w)`
    pub fn root_pairing(&self, j: usize, w: &Weight) -> Result<Rational> {
        self.check(w)?;
        Ok(&w.coeffs[j] * &self.pairing[j][j])
    }

    /// `α_j` written in fundamental weights: `α_j = Σ_k a_kj λ_k`.
    pub fn root_as_weight(&self, j: usize) -> Weight {
        Weight {
            coeffs: (0..self.rank()).map(|k| int(self.cartan[k][j])).collect(),
        }
    }

    pub fn root_norm(&self, j: usize) -> &Rational {
        &self.root_gram[j][j]
    }
}
