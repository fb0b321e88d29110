//! Braiding data of a g-module of exponential type and its extended
//! Cartan matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{int, rational_to_i64, Rational};
use crate::gcm::{self, FiniteTypeLabel, Gcm};
use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidSpec {
    pub root: RootDatum,
    pub weights: Vec<Weight>,
    /// `φ(λ_i, λ_j)`
    #[serde(with = "crate::exactq::rational_mat_str")]
    pub phi: Vec<Vec<Rational>>,
    #[serde(with = "opt_rational")]
    pub x: Option<Rational>,
    pub d_prime: i64,
    pub d: i64,
}

mod opt_rational {
    use super::Rational;
    use crate::exactq::{fmt_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(fmt_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn lcm_i64(a: i64, b: &BigInt) -> i64 {
    let b: i64 = b.try_into().expect("denominator fits in i64");
    a.lcm(&b)
}

/// Spec with `φ(λ, μ) = (λ, μ) + x`.
pub fn braid_spec(root: &RootDatum, weights: &[Weight], x: &Rational) -> Result<BraidSpec> {
    check_weights(root, weights)?;
    let r = weights.len();
    let mut phi = vec![vec![Rational::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            phi[i][j] = root.bilinear(&weights[i], &weights[j])? + x;
        }
    }
    let d_prime = lcm_i64(root.det.abs(), x.denom());
    finish(root, weights, phi, Some(x.clone()), d_prime)
}

/// Spec from an explicit `φ` table (not necessarily symmetric).
pub fn braid_spec_with_phi(
    root: &RootDatum,
    weights: &[Weight],
    phi: Vec<Vec<Rational>>,
) -> Result<BraidSpec> {
    check_weights(root, weights)?;
    let r = weights.len();
    if phi.len() != r || phi.iter().any(|row| row.len() != r) {
        return Err(Error::RankMismatch {
            expected: r,
            got: phi.len(),
        });
    }
    let mut d_prime = root.det.abs();
    for row in &phi {
        for v in row {
            d_prime = lcm_i64(d_prime, v.denom());
        }
    }
    finish(root, weights, phi, None, d_prime)
}

fn check_weights(root: &RootDatum, weights: &[Weight]) -> Result<()> {
    for w in weights {
        if w.rank() != root.rank() {
            return Err(Error::RankMismatch {
                expected: root.rank(),
                got: w.rank(),
            });
        }
        if !w.is_dominant_integral() {
            return Err(Error::NotDominant(w.to_string()));
        }
    }
    Ok(())
}

fn finish(
    root: &RootDatum,
    weights: &[Weight],
    phi: Vec<Vec<Rational>>,
    x: Option<Rational>,
    mut d_prime: i64,
) -> Result<BraidSpec> {
    // Non-default scales can put denominators into the form beyond det a;
    // enlarge d' until every exponent is integral.
    let n = root.rank();
    let mut vals: Vec<Rational> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            vals.push(&root.root_gram[i][j] * int(2));
        }
        for w in weights {
            vals.push(root.root_pairing(i, w)? * int(2));
        }
    }
    for row in &phi {
        vals.extend(row.iter().map(|v| v * int(2)));
    }
    for v in &vals {
        d_prime = lcm_i64(d_prime, v.denom());
    }
    Ok(BraidSpec {
        root: root.clone(),
        weights: weights.to_vec(),
        phi,
        x,
        d_prime,
        d: 2 * d_prime,
    })
}

impl BraidSpec {
    pub fn rank(&self) -> usize {
        self.root.rank()
    }

    pub fn modules(&self) -> usize {
        self.weights.len()
    }

    pub fn phi_symmetric(&self) -> bool {
        let r = self.modules();
        (0..r).all(|i| (0..r).all(|j| self.phi[i][j] == self.phi[j][i]))
    }

    /// Labels of `P = Π ∪ {1..r}`.
    pub fn index(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.rank()).map(|i| format!("a{i}")).collect();
        v.extend((1..=self.modules()).map(|i| format!("m{i}")));
        v
    }

    /// `f(λ_i, λ_j) = v^{-d φ(λ_i, λ_j)}` as an exponent of `v`.
    pub fn f_exponent(&self, i: usize, j: usize) -> Result<i64> {
        let e = -(&self.phi[i][j] * int(self.d));
        rational_to_i64(&e).ok_or(Error::NonIntegralExponent(i, j))
    }
}

/// `q_ij = v^{e_ij}` on the basis `{F̂_α} ∪ {m_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub index: Vec<String>,
    pub e: Vec<Vec<i64>>,
}

pub fn exponent_matrix(spec: &BraidSpec) -> Result<ExponentMatrix> {
    let n = spec.rank();
    let r = spec.modules();
    let d = int(spec.d);
    let rd = &spec.root;
    let mut e = vec![vec![0i64; n + r]; n + r];
    let conv = |v: Rational, i: usize, j: usize| -> Result<i64> {
        rational_to_i64(&v).ok_or(Error::NonIntegralExponent(i, j))
    };
    for a in 0..n {
        for b in 0..n {
            e[a][b] = conv(-(&d * &rd.root_gram[b][a]), a, b)?;
        }
        for i in 0..r {
            let pair = rd.root_pairing(a, &spec.weights[i])?;
            e[a][n + i] = conv(&d * &pair, a, n + i)?;
            e[n + i][a] = conv(&d * &pair, n + i, a)?;
        }
    }
    for i in 0..r {
        for j in 0..r {
            e[n + i][n + j] = conv(-(&d * &spec.phi[i][j]), n + i, n + j)?;
        }
    }
    Ok(ExponentMatrix {
        index: spec.index(),
        e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedCartan {
    pub index: Vec<String>,
    pub rank: usize,
    pub b: Vec<Vec<i64>>,
    /// `d_α = d(α,α)/2`, `d_i = dφ(λ_i,λ_i)/2` (or 1 when `φ(λ_i,λ_i) = 0`)
    #[serde(with = "crate::exactq::rational_vec_str")]
    pub sym: Vec<Rational>,
}

impl ExtendedCartan {
    pub fn gcm(&self) -> Gcm {
        Gcm {
            index: self.index.clone(),
            entries: self.b.clone(),
        }
    }
}

/// The strong-exponential condition on the highest weights of the spec.
pub fn check_strong_exponential(spec: &BraidSpec) -> Result<()> {
    let r = spec.modules();
    for i in 0..r {
        if spec.phi[i][i].is_positive() {
            continue;
        }
        if !spec.weights[i].is_zero() {
            return Err(Error::NotStrongExponential(format!(
                "phi(l{0},l{0}) = {1} <= 0 for nonzero weight {2}",
                i + 1,
                crate::exactq::fmt_rational(&spec.phi[i][i]),
                spec.weights[i]
            )));
        }
        for j in 0..r {
            if !(&spec.phi[i][j] + &spec.phi[j][i]).is_zero() {
                return Err(Error::NotStrongExponential(format!(
                    "phi(l{0},l{0}) <= 0 but phi(l{0},l{1}) + phi(l{1},l{0}) != 0",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Solves the defining equations for `b` and checks it is a GCM.
pub fn extended_cartan(spec: &BraidSpec) -> Result<ExtendedCartan> {
    check_strong_exponential(spec)?;
    let n = spec.rank();
    let r = spec.modules();
    let rd = &spec.root;
    let mut b = vec![vec![Rational::zero(); n + r]; n + r];
    for a in 0..n {
        for c in 0..n {
            b[a][c] = int(rd.cartan[a][c]);
        }
    }
    for i in 0..r {
        let phi_ii = &spec.phi[i][i];
        let m = n + i;
        b[m][m] = int(2);
        for a in 0..n {
            let two_pair = rd.root_pairing(a, &spec.weights[i])? * int(2);
            b[a][m] = -(&two_pair / rd.root_norm(a));
            // with φ(λ_i,λ_i) = 0 the row of m_i vanishes off the diagonal
            if !phi_ii.is_zero() {
                b[m][a] = -(&two_pair / phi_ii);
            }
        }
        if !phi_ii.is_zero() {
            for j in 0..r {
                if j != i {
                    b[m][n + j] = (&spec.phi[i][j] + &spec.phi[j][i]) / phi_ii;
                }
            }
        }
    }
    let mut bad = Vec::new();
    let mut bi = vec![vec![0i64; n + r]; n + r];
    let index = spec.index();
    for i in 0..n + r {
        for j in 0..n + r {
            match rational_to_i64(&b[i][j]) {
                Some(v) => bi[i][j] = v,
                None => bad.push(format!(
                    "b[{}][{}] = {} is not an integer",
                    index[i],
                    index[j],
                    crate::exactq::fmt_rational(&b[i][j])
                )),
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotGcm(bad));
    }
    let g = gcm::validate_labeled(index.clone(), bi)?;
    let d = int(spec.d);
    let mut sym: Vec<Rational> = (0..n).map(|a| &d * rd.root_norm(a) / int(2)).collect();
    for i in 0..r {
        let p = &spec.phi[i][i];
        sym.push(if p.is_zero() {
            Rational::one()
        } else {
            &d * p / int(2)
        });
    }
    Ok(ExtendedCartan {
        index,
        rank: n,
        b: g.entries,
        sym,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum GkVerdict {
    Finite {
        label: FiniteTypeLabel,
        name: String,
    },
    Infinite {
        stage: String,
        reason: String,
    },
}

impl GkVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, GkVerdict::Finite { .. })
    }
}

/// Finite GK dimension iff strong exponential type and `b` of finite type.
pub fn gk_finite(spec: &BraidSpec) -> Result<GkVerdict> {
    if !spec.phi_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let ec = match extended_cartan(spec) {
        Ok(ec) => ec,
        Err(e @ Error::NotStrongExponential(_)) => {
            return Ok(GkVerdict::Infinite {
                stage: "NotStrongExponential".into(),
                reason: e.to_string(),
            })
        }
        Err(e @ Error::NotGcm(_)) => {
            return Ok(GkVerdict::Infinite {
                stage: "NotGCM".into(),
                reason: e.to_string(),
            })
        }
        Err(e) => return Err(e),
    };
    Ok(match gcm::finite_type(&ec.gcm()) {
        Some(label) => GkVerdict::Finite {
            name: label.to_string(),
            label,
        },
        None => GkVerdict::Infinite {
            stage: "NotFinite".into(),
            reason: Error::NotFinite.to_string(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDegree {
    pub from: String,
    pub to: String,
    pub degree: i64,
}

/// Degrees `2 - b_ij` for module pairs and `1 - b_iα` for `b_iα != 0`.
pub fn relation_degrees(ec: &ExtendedCartan) -> Vec<RelationDegree> {
    let n = ec.rank;
    let total = ec.b.len();
    let mut out = Vec::new();
    for i in n..total {
        for a in 0..n {
            if ec.b[i][a] != 0 {
                out.push(RelationDegree {
                    from: ec.index[i].clone(),
                    to: ec.index[a].clone(),
                    degree: 1 - ec.b[i][a],
                });
            }
        }
        for j in n..total {
            if j != i {
                out.push(RelationDegree {
                    from: ec.index[i].clone(),
                    to: ec.index[j].clone(),
                    degree: 2 - ec.b[i][j],
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;
    use crate::rootdata::{root_datum, Normalization};

    fn a(n: usize) -> RootDatum {
        root_datum(format!("A{n}").parse().unwrap(), &Normalization::Short2).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(3, 2)).unwrap();
        assert_eq!((s.d_prime, s.d), (2, 4));
        assert_eq!(s.phi[0][0], int(2));
        let s = braid_spec(&a(1), &[Weight::from_ints(&[3])], &rat(3, 2)).unwrap();
        assert_eq!(s.phi[0][0], int(6));
        let s = braid_spec(&a(2), &[Weight::from_ints(&[1, 0])], &rat(4, 3)).unwrap();
        assert_eq!(s.phi[0][0], int(2));
        let neg = Weight {
            coeffs: vec![int(-1)],
        };
        assert!(matches!(
            braid_spec(&a(1), &[neg], &int(1)),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn exponent_examples() {
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(3, 2)).unwrap();
        assert_eq!(
            exponent_matrix(&s).unwrap().e,
            vec![vec![-8, 4], vec![4, -8]]
        );
        let s = braid_spec(&a(1), &[Weight::from_ints(&[3])], &rat(3, 2)).unwrap();
        let e = exponent_matrix(&s).unwrap().e;
        assert_eq!(e[1][1], -24);
        assert_eq!(e[0][1], 12);
        let s = braid_spec(&a(2), &[], &int(1)).unwrap();
        assert_eq!(
            exponent_matrix(&s).unwrap().e,
            vec![vec![-12, 6], vec![6, -12]]
        );
    }

    #[test]
    fn extended_cartan_examples() {
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(3, 2)).unwrap();
        let ec = extended_cartan(&s).unwrap();
        assert_eq!(ec.b, vec![vec![2, -1], vec![-1, 2]]);
        let s = braid_spec(&a(1), &[Weight::from_ints(&[3])], &rat(3, 2)).unwrap();
        let ec = extended_cartan(&s).unwrap();
        assert_eq!(ec.b, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(gk_finite(&s).unwrap().to_name(), "G2");
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(-1, 2)).unwrap();
        assert!(matches!(
            extended_cartan(&s),
            Err(Error::NotStrongExponential(_))
        ));
    }

    #[test]
    fn gk_examples() {
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(3, 2)).unwrap();
        assert_eq!(gk_finite(&s).unwrap().to_name(), "A2");
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &int(5)).unwrap();
        match gk_finite(&s).unwrap() {
            GkVerdict::Infinite { stage, .. } => assert_eq!(stage, "NotGCM"),
            v => panic!("{v:?}"),
        }
        let s = braid_spec_with_phi(
            &a(1),
            &[Weight::from_ints(&[1]), Weight::from_ints(&[1])],
            vec![vec![int(2), int(1)], vec![int(-3), int(2)]],
        )
        .unwrap();
        assert!(matches!(gk_finite(&s), Err(Error::NotSymmetric)));
        assert!(extended_cartan(&s).is_ok());
    }

    #[test]
    fn relation_degree_examples() {
        let s = braid_spec(&a(1), &[Weight::from_ints(&[1])], &rat(3, 2)).unwrap();
        let rel = relation_degrees(&extended_cartan(&s).unwrap());
        assert_eq!(rel.len(), 1);
        assert_eq!(
            (rel[0].from.as_str(), rel[0].to.as_str(), rel[0].degree),
            ("m1", "a1", 2)
        );
        // two modules linked by b_12 = -1
        let ec = ExtendedCartan {
            index: vec!["a1".into(), "m1".into(), "m2".into()],
            rank: 1,
            b: vec![vec![2, 0, 0], vec![0, 2, -1], vec![0, -1, 2]],
            sym: vec![int(1); 3],
        };
        let rel = relation_degrees(&ec);
        assert_eq!(rel.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![3, 3]);
    }

    impl GkVerdict {
        fn to_name(&self) -> String {
            match self {
                GkVerdict::Finite { name, .. } => name.clone(),
                GkVerdict::Infinite { stage, .. } => stage.clone(),
            }
        }
    }
}
