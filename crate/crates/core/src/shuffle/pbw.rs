//! Hilbert series predicted by a PBW basis of root vectors:
//! `Π_{β > 0} 1 / (1 - t^{deg β})`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gcm::{positive_roots, Gcm};

/// Coefficients up to `max_degree`, where node `i` has degree `node_degrees[i]`.
pub fn pbw_hilbert(b: &Gcm, node_degrees: &[u32], max_degree: usize) -> Result<Vec<u64>> {
    if node_degrees.len() != b.size() {
        return Err(Error::RankMismatch {
            expected: b.size(),
            got: node_degrees.len(),
        });
    }
    let mut series = vec![0u64; max_degree + 1];
    series[0] = 1;
    for beta in positive_roots(b)? {
        let d: usize = beta
            .iter()
            .zip(node_degrees)
            .map(|(c, g)| *c as usize * *g as usize)
            .sum();
        // multiply by 1/(1 - t^d)
        for k in d..=max_degree {
            series[k] += series[k - d];
        }
    }
    Ok(series)
}

/// The standard grading, every node in degree one.
pub fn pbw_hilbert_standard(b: &Gcm, max_degree: usize) -> Result<Vec<u64>> {
    pbw_hilbert(b, &vec![1; b.size()], max_degree)
}

/// Multigraded version: the number of PBW monomials of each multidegree
/// with total height at most `max_height`.
pub fn pbw_multigraded(b: &Gcm, max_height: usize) -> Result<BTreeMap<Vec<i64>, u64>> {
    let n = b.size();
    let mut series: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(vec![0; n], 1)]);
    for beta in positive_roots(b)? {
        let h: i64 = beta.iter().sum();
        // Process in increasing height so that repeated use of β is counted.
        let mut keys: Vec<Vec<i64>> = series.keys().cloned().collect();
        keys.sort_by_key(|k| k.iter().sum::<i64>());
        let mut acc = series.clone();
        for k in keys {
            let mut cur = k.clone();
            let base = series[&k];
            let mut height: i64 = cur.iter().sum();
            loop {
                height += h;
                if height > max_height as i64 {
                    break;
                }
                for (c, bc) in cur.iter_mut().zip(&beta) {
                    *c += bc;
                }
                *acc.entry(cur.clone()).or_insert(0) += base;
            }
        }
        series = acc;
    }
    Ok(series)
}
