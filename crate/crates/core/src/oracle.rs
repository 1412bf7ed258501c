//! Exact optimal error probabilities of tiny instances by exhaustive search
//! over deterministic encoders, each paired with its MAP decoder.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relaxations::{ScInstance, Side, SwInstance};

pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Largest number of encoder tuples searched.
    pub cap: u128,
    /// Visit one encoder per relabeling class of the codewords.
    pub prune: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cap: DEFAULT_ENUM_CAP, prune: false }
    }
}

fn count(m: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(m as u128))
}

fn check_cap(size: u128, opts: &OracleOptions) -> Result<()> {
    if size > opts.cap {
        return Err(Error::EnumerationTooLarge { size, cap: opts.cap });
    }
    Ok(())
}

/// Every map `{0..n} -> {0..m}`, or only restricted-growth ones (first
/// occurrences of codewords in increasing order) when pruning.
fn encoders(n: usize, m: usize, prune: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let keep = !prune || {
            let mut next = 0;
            f.iter().all(|&y| {
                if y > next {
                    return false;
                }
                if y == next {
                    next += 1;
                }
                true
            })
        };
        if keep {
            out.push(f.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < m {
                break;
            }
            f[k] = 0;
        }
    }
}

/// Mass lost by the MAP decoder in each cell: total minus largest member.
fn cell_loss(total: &[f64], best: &[f64]) -> f64 {
    total.iter().zip(best).map(|(t, b)| t - b).sum()
}

/// Least error probability of separate encoders with a joint decoder.
pub fn exact_opt_sw(inst: &SwInstance, opts: &OracleOptions) -> Result<f64> {
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    check_cap(count(m1, n1).saturating_mul(count(m2, n2)), opts)?;
    let f1s = encoders(n1, m1, opts.prune);
    let f2s = encoders(n2, m2, opts.prune);
    let best = f1s
        .par_iter()
        .map(|f1| {
            let mut total = vec![0.0; m1 * m2];
            let mut top = vec![0.0; m1 * m2];
            let mut best = f64::INFINITY;
            for f2 in &f2s {
                total.iter_mut().for_each(|v| *v = 0.0);
                top.iter_mut().for_each(|v| *v = 0.0);
                for s1 in 0..n1 {
                    for s2 in 0..n2 {
                        let c = f1[s1] * m2 + f2[s2];
                        let p = inst.p(s1, s2);
                        total[c] += p;
                        if p > top[c] {
                            top[c] = p;
                        }
                    }
                }
                best = best.min(cell_loss(&total, &top));
            }
            best
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}

/// Least excess-distortion probability of a single-source code.
pub fn exact_opt_sc(inst: &ScInstance, opts: &OracleOptions) -> Result<f64> {
    let (n, m, nr) = (inst.n_src(), inst.m, inst.n_rec());
    check_cap(count(m, n), opts)?;
    let best = encoders(n, m, opts.prune)
        .par_iter()
        .map(|f| {
            let mut total = vec![0.0; m];
            let mut covered = vec![0.0; m * nr];
            for s in 0..n {
                let p = inst.source.get(s);
                total[f[s]] += p;
                for r in 0..nr {
                    if inst.distortion.covers(s, r) {
                        covered[f[s] * nr + r] += p;
                    }
                }
            }
            let top: Vec<f64> =
                (0..m).map(|y| covered[y * nr..(y + 1) * nr].iter().copied().fold(0.0, f64::max)).collect();
            cell_loss(&total, &top)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}

/// Least error probability when one source is encoded and the other is
/// known to the decoder.
pub fn exact_opt_sid(inst: &SwInstance, side: Side, opts: &OracleOptions) -> Result<f64> {
    let o = match side {
        Side::One => inst.clone(),
        Side::Two => inst.mirrored(),
    };
    let (ne, no, m) = (o.n1(), o.n2(), o.m1());
    check_cap(count(m, ne), opts)?;
    let best = encoders(ne, m, opts.prune)
        .par_iter()
        .map(|f| {
            let mut total = vec![0.0; m * no];
            let mut top = vec![0.0; m * no];
            for e in 0..ne {
                for k in 0..no {
                    let c = f[e] * no + k;
                    let p = o.p(e, k);
                    total[c] += p;
                    if p > top[c] {
                        top[c] = p;
                    }
                }
            }
            cell_loss(&total, &top)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}
