//! Instance generators and independent reference evaluators shared by the
//! integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use sw_converse::probability::{JointPmf, SinglePmf};
use sw_converse::relaxations::SwInstance;

/// Integer weights scaled to a pmf; zero weights become structural zeros.
pub fn normalize(w: &[u32]) -> Vec<f64> {
    let total: f64 = w.iter().map(|&x| x as f64).sum();
    w.iter().map(|&x| x as f64 / total).collect()
}

fn weights(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(prop_oneof![1 => Just(0u32), 4 => 1u32..=100], len)
        .prop_filter("some mass", |w| w.iter().any(|&x| x > 0))
}

pub fn single_pmf(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SinglePmf> {
    sizes.prop_flat_map(weights).prop_map(|w| SinglePmf::new(normalize(&w)).unwrap())
}

pub fn joint_pmf() -> impl Strategy<Value = JointPmf> {
    (2usize..=3, 2usize..=3).prop_flat_map(|(n1, n2)| {
        weights(n1 * n2).prop_map(move |w| JointPmf::new(n1, n2, normalize(&w)).unwrap())
    })
}

/// Alphabets of 2 or 3 symbols, one or two codewords per encoder.
pub fn sw_instance() -> impl Strategy<Value = SwInstance> {
    (joint_pmf(), 1usize..=2, 1usize..=2).prop_map(|(j, m1, m2)| SwInstance::new(j, m1, m2).unwrap())
}

fn random_weights(rng: &mut impl Rng, len: usize) -> Vec<u32> {
    loop {
        let w: Vec<u32> = (0..len).map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=100) }).collect();
        if w.iter().any(|&x| x > 0) {
            return w;
        }
    }
}

pub fn random_single(rng: &mut impl Rng, lo: usize, hi: usize) -> SinglePmf {
    let n = rng.gen_range(lo..=hi);
    SinglePmf::new(normalize(&random_weights(rng, n))).unwrap()
}

pub fn random_sw(rng: &mut impl Rng) -> SwInstance {
    let (n1, n2) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
    let j = JointPmf::new(n1, n2, normalize(&random_weights(rng, n1 * n2))).unwrap();
    SwInstance::new(j, rng.gen_range(1..=2), rng.gen_range(1..=2)).unwrap()
}

/// Entrywise `u * P` with `u` uniform in `[0, 1]`.
pub fn random_below(rng: &mut impl Rng, p: &[f64]) -> Vec<f64> {
    p.iter().map(|&x| x * rng.gen::<f64>()).collect()
}

/// The doubly symmetric binary source on `n`-bit strings, row-major over
/// `(s1, s2)`.
pub fn dsbs_joint(n: usize, p: f64) -> JointPmf {
    let size = 1usize << n;
    let scale = 1.0 / size as f64;
    let mass = (0..size * size)
        .map(|k| {
            let d = ((k / size) ^ (k % size)).count_ones() as i32;
            scale * p.powi(d) * (1.0 - p).powi(n as i32 - d)
        })
        .collect();
    JointPmf::new(size, size, mass).unwrap()
}

/// `sup_t { sum min(P, e1+e2+e3) - M1 M2 max_s [min(P,e1) + min(P,e2) + min(P,e3)] }`
/// with `e1 = t/(M1 M2)`, `e2 = P2 t/M1`, `e3 = P1 t/M2`, by scanning every `t`
/// at which some term switches. Exact when the penalty's maximizer does not
/// change between switch points, as for sources with uniform marginals.
pub fn split_penalty_sup(inst: &SwInstance) -> f64 {
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let p1: Vec<f64> = (0..n1).map(|a| (0..n2).map(|b| inst.p(a, b)).sum()).collect();
    let p2: Vec<f64> = (0..n2).map(|b| (0..n1).map(|a| inst.p(a, b)).sum()).collect();
    let rates = |s1: usize, s2: usize| [1.0 / (m1 * m2), p2[s2] / m1, p1[s1] / m2];
    let value = |t: f64| {
        let mut total = 0.0;
        let mut worst: f64 = 0.0;
        for s1 in 0..n1 {
            for s2 in 0..n2 {
                let p = inst.p(s1, s2);
                let r = rates(s1, s2);
                total += p.min(t * (r[0] + r[1] + r[2]));
                worst = worst.max(r.iter().map(|c| p.min(t * c)).sum());
            }
        }
        total - m1 * m2 * worst
    };
    let mut cands = vec![1.0];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let p = inst.p(s1, s2);
            let r = rates(s1, s2);
            cands.extend(r.iter().map(|c| p / c));
            cands.push(p / (r[0] + r[1] + r[2]));
        }
    }
    cands.into_iter().filter(|&t| t > 0.0 && t <= 1.0).map(value).fold(0.0, f64::max)
}

pub fn max_abs(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a, x| a.max(x.abs()))
}
