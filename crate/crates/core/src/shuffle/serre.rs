//! Quantum Serre elements `ad_c(x_i)^n (x_j)` of diagonal braidings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactq::{int, q_binomial, LaurentScalar};
use crate::shuffle::oracle;
use crate::shuffle::space::{BraidedSpace, Word};

/// Coefficients `c_s = (-1)^s [n s]_γ γ^{s(s-1)/2} η^s`, `s = 0..=n`, of
/// `ad_c(x_i)^n (x_j) = Σ_s c_s x_i^{n-s} x_j x_i^s` with `γ = q_ii`, `η = q_ij`.
pub fn serre_expand(n: u32, gamma: &LaurentScalar, eta: &LaurentScalar) -> Vec<LaurentScalar> {
    (0..=n)
        .map(|s| {
            let bin = q_binomial(n, s).expect("s <= n").substitute(gamma);
            let g = gamma.pow(s * s.saturating_sub(1) / 2);
            let term = &(&bin * &g) * &eta.pow(s);
            if s % 2 == 1 {
                term.scale(&int(-1))
            } else {
                term
            }
        })
        .collect()
}

/// The Serre element as a vector in `V^{⊗(n+1)}`.
pub fn serre_element(
    space: &BraidedSpace,
    i: usize,
    j: usize,
    n: u32,
) -> Result<HashMap<Word, LaurentScalar>> {
    let (gamma, eta) = match (space.q(i, i), space.q(i, j)) {
        (Some(g), Some(e)) => (g.clone(), e.clone()),
        _ => {
            return Err(Error::Schema(
                "Serre elements need a diagonal braiding".into(),
            ))
        }
    };
    let mut out = HashMap::new();
    for (s, c) in serre_expand(n, &gamma, &eta).into_iter().enumerate() {
        let mut w = vec![i as u8; n as usize - s];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, s));
        if !c.is_zero() {
            out.insert(w, c);
        }
    }
    Ok(out)
}

/// Whether `ad_c(x_i)^{1-b_ij}(x_j)` lies in the kernel of the symmetrizer.
/// Requires `i != j` and `q_ij q_ji = q_ii^{b_ij}`.
pub fn serre_in_kernel(space: &BraidedSpace, i: usize, j: usize, b_ij: i64) -> Result<bool> {
    if i == j {
        return Err(Error::CartanMismatch(format!("i = j = {i}")));
    }
    if i >= space.dim() || j >= space.dim() {
        return Err(Error::Schema(format!("index out of range: ({i}, {j})")));
    }
    if b_ij > 0 {
        return Err(Error::CartanMismatch(format!("b_ij = {b_ij} is positive")));
    }
    let (qii, qij, qji) = match (space.q(i, i), space.q(i, j), space.q(j, i)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(Error::Schema(
                "Serre elements need a diagonal braiding".into(),
            ))
        }
    };
    let lhs = qij * qji;
    let rhs = qii.monomial_pow(b_ij).map_err(Error::Exact)?;
    if lhs != rhs {
        return Err(Error::CartanMismatch(format!(
            "q_ij q_ji = {lhs} but q_ii^b_ij = {rhs}"
        )));
    }
    let elem = serre_element(space, i, j, (1 - b_ij) as u32)?;
    Ok(oracle::symmetrize(space, &elem).is_empty())
}
