//! Generalized Cartan matrices and recognition of finite type.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{int, Rational};
use crate::ratmat;
use crate::rootdata::{SimpleType, TypeLetter};

/// A validated generalized Cartan matrix with optional index labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gcm {
    pub index: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

/// Checks the three axioms; returns every violation found.
pub fn validate_gcm(entries: Vec<Vec<i64>>) -> Result<Gcm> {
    let index = (0..entries.len()).map(|i| (i + 1).to_string()).collect();
    validate_labeled(index, entries)
}

pub fn validate_labeled(index: Vec<String>, entries: Vec<Vec<i64>>) -> Result<Gcm> {
    let n = entries.len();
    let mut bad = Vec::new();
    if index.len() != n {
        bad.push(format!("{} labels for {} rows", index.len(), n));
    }
    for (i, row) in entries.iter().enumerate() {
        if row.len() != n {
            bad.push(format!(
                "row {} has length {}, expected {}",
                i + 1,
                row.len(),
                n
            ));
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotGcm(bad));
    }
    for i in 0..n {
        if entries[i][i] != 2 {
            bad.push(format!("b[{0}][{0}] = {1} != 2", i + 1, entries[i][i]));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if entries[i][j] > 0 {
                bad.push(format!("b[{}][{}] = {} > 0", i + 1, j + 1, entries[i][j]));
            }
            if (entries[i][j] == 0) != (entries[j][i] == 0) {
                bad.push(format!(
                    "b[{}][{}] = {} but b[{}][{}] = {}",
                    i + 1,
                    j + 1,
                    entries[i][j],
                    j + 1,
                    i + 1,
                    entries[j][i]
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok(Gcm { index, entries })
    } else {
        Err(Error::NotGcm(bad))
    }
}

impl Gcm {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&j| j != i && self.entries[i][j] * self.entries[j][i] > 0)
    }

    /// Connected components of the Coxeter graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                k += 1;
                for j in self.neighbours(i) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn sub(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
            .collect()
    }
}

/// One simple component of a finite-type matrix.  `nodes[k]` is the input
/// index sitting at standard node `k` (Humphreys numbering).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub ty: SimpleType,
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTypeLabel {
    pub components: Vec<Component>,
}

impl FiniteTypeLabel {
    /// Component types, sorted.
    pub fn types(&self) -> Vec<SimpleType> {
        let mut t: Vec<_> = self.components.iter().map(|c| c.ty).collect();
        t.sort();
        t
    }

    /// Input index to `(component, standard node)`.
    pub fn relabeling(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            for (k, &i) in c.nodes.iter().enumerate() {
                out.push((i, ci, k));
            }
        }
        out.sort_unstable();
        out
    }

    /// Rebuilds the matrix from the standard Cartan matrices.
    pub fn reconstruct(&self, n: usize) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0; n]; n];
        for c in &self.components {
            let a = c.ty.cartan_matrix();
            for (k, &i) in c.nodes.iter().enumerate() {
                for (l, &j) in c.nodes.iter().enumerate() {
                    b[i][j] = a[k][l];
                }
            }
        }
        b
    }
}

impl fmt::Display for FiniteTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let names: Vec<String> = self.components.iter().map(|c| c.ty.to_string()).collect();
        write!(f, "{}", names.join("+"))
    }
}

fn candidates(k: usize) -> Vec<SimpleType> {
    TypeLetter::ALL
        .iter()
        .filter(|l| l.is_valid_rank(k))
        .map(|&letter| SimpleType { letter, rank: k })
        .collect()
}

/// Finds `σ` with `sub[i][j] == std[σ(i)][σ(j)]` by backtracking.
fn match_template(sub: &[Vec<i64>], std: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = sub.len();
    let deg = |m: &[Vec<i64>], i: usize| (0..n).filter(|&j| j != i && m[i][j] != 0).count();
    let sub_deg: Vec<usize> = (0..n).map(|i| deg(sub, i)).collect();
    let std_deg: Vec<usize> = (0..n).map(|i| deg(std, i)).collect();
    // Visit input nodes in BFS order so each new node has an assigned neighbour.
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let i = order[k];
        k += 1;
        for j in 0..n {
            if !seen[j] && sub[i][j] != 0 {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        pos: usize,
        order: &[usize],
        sub: &[Vec<i64>],
        std: &[Vec<i64>],
        sub_deg: &[usize],
        std_deg: &[usize],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for t in 0..std.len() {
            if used[t] || std_deg[t] != sub_deg[i] {
                continue;
            }
            let ok = order[..pos].iter().all(|&j| {
                let s = sigma[j];
                sub[i][j] == std[t][s] && sub[j][i] == std[s][t]
            });
            if !ok {
                continue;
            }
            sigma[i] = t;
            used[t] = true;
            if go(pos + 1, order, sub, std, sub_deg, std_deg, sigma, used) {
                return true;
            }
            used[t] = false;
            sigma[i] = usize::MAX;
        }
        false
    }
    if go(
        0, &order, sub, std, &sub_deg, &std_deg, &mut sigma, &mut used,
    ) {
        Some(sigma)
    } else {
        None
    }
}

/// Decomposes `b` into finite simple components, or `None` if some
/// component is not of finite type.
pub fn finite_type(b: &Gcm) -> Option<FiniteTypeLabel> {
    let mut components = Vec::new();
    for comp in b.components() {
        let sub = b.sub(&comp);
        let k = comp.len();
        // Finite diagrams are trees.
        let edges: usize = (0..k)
            .map(|i| (i + 1..k).filter(|&j| sub[i][j] != 0).count())
            .sum();
        if edges + 1 != k {
            return None;
        }
        let mut found = None;
        for ty in candidates(k) {
            if let Some(sigma) = match_template(&sub, &ty.cartan_matrix()) {
                let mut nodes = vec![0; k];
                for (local, &std) in sigma.iter().enumerate() {
                    nodes[std] = comp[local];
                }
                found = Some(Component { ty, nodes });
                break;
            }
        }
        components.push(found?);
    }
    components.sort_by(|a, c| a.ty.cmp(&c.ty).then(a.nodes.cmp(&c.nodes)));
    Some(FiniteTypeLabel { components })
}

pub fn finite_type_or_err(b: &Gcm) -> Result<FiniteTypeLabel> {
    finite_type(b).ok_or(Error::NotFinite)
}

/// A positive diagonal `d` with `d_i b_ij = d_j b_ji`, normalized so the
/// smallest entry on each component is 1; `None` if none exists.
pub fn symmetrizer(b: &Gcm) -> Option<Vec<Rational>> {
    let n = b.size();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for comp in b.components() {
        d[comp[0]] = Some(int(1));
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            for j in b.neighbours(i) {
                if d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * int(b.entries[i][j]) / int(b.entries[j][i]));
                    stack.push(j);
                }
            }
        }
        let m = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].take().unwrap() / &m);
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.unwrap()).collect();
    for i in 0..n {
        for j in 0..n {
            if &d[i] * int(b.entries[i][j]) != &d[j] * int(b.entries[j][i]) {
                return None;
            }
        }
    }
    Some(d)
}

/// Independent finiteness test: `D b` positive definite (Sylvester).
pub fn symmetrized_positive_definite(b: &Gcm) -> bool {
    let Some(d) = symmetrizer(b) else {
        return false;
    };
    let n = b.size();
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| &d[i] * int(b.entries[i][j])).collect())
        .collect();
    ratmat::leading_minors(&m).iter().all(|x| x.is_positive())
}

/// Positive roots as coefficient vectors in the simple roots, by height.
pub fn positive_roots(b: &Gcm) -> Result<Vec<Vec<i64>>> {
    if finite_type(b).is_none() {
        return Err(Error::NotFinite);
    }
    let n = b.size();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let is_simple_i = beta
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == i64::from(j == i));
                if is_simple_i {
                    continue;
                }
                // α_i-string through β: β - pα_i, ..., β + qα_i
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if down[i] >= 0 && all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * b.entries[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    Ok(roots)
}

impl SimpleType {
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.letter {
            TypeLetter::A => n * (n + 1) / 2,
            TypeLetter::B | TypeLetter::C => n * n,
            TypeLetter::D => n * (n - 1),
            TypeLetter::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            TypeLetter::F => 24,
            TypeLetter::G => 6,
        }
    }
}
