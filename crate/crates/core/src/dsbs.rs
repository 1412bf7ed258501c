//! Doubly symmetric binary source: two uniform `n`-bit strings that differ
//! in each bit independently with probability `p`.
//!
//! A pair at Hamming distance `k` has mass `q_k / 2^n` with
//! `q_k = p^k (1-p)^(n-k)`, so every sum over the `4^n` pairs collapses to a
//! sum over `k` with multiplicity `2^n C(n,k)`. All such sums run in log
//! space.

use std::fmt::Write as _;
use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::converse::{BoundReport, Witness};
use crate::error::{Error, Result};

/// Tolerance of the rate-region classification, in bits.
pub const REGION_TOL: f64 = 1e-9;

/// Number of log-spaced guard points added to every breakpoint scan.
const GUARD_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DsbsSpec {
    pub n: usize,
    pub p: f64,
    /// Rates in bits per source symbol.
    pub r1: f64,
    pub r2: f64,
}

/// A code size `round(2^(nR))`, kept as a logarithm since it overflows
/// quickly. `exact` is present while the size fits in 64 bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeSize {
    pub ln: f64,
    pub exact: Option<u64>,
}

impl CodeSize {
    fn from_rate(n: usize, r: f64) -> (CodeSize, Option<String>) {
        let bits = n as f64 * r;
        if bits < 63.0 {
            let raw = bits.exp2();
            let m = raw.round().max(1.0);
            let warn = ((m - raw).abs() > 1e-9 * raw.max(1.0))
                .then(|| format!("2^({}*{}) = {} rounded to {}", n, r, raw, m));
            (CodeSize { ln: m.ln(), exact: Some(m as u64) }, warn)
        } else {
            (CodeSize { ln: bits * LN_2, exact: None }, None)
        }
    }
}

impl DsbsSpec {
    pub fn new(n: usize, p: f64, r1: f64, r2: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("blocklength must be positive".into()));
        }
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::InvalidArgument(format!("crossover probability must lie in (0, 0.5), got {}", p)));
        }
        if !(r1 >= 0.0 && r2 >= 0.0) || !r1.is_finite() || !r2.is_finite() {
            return Err(Error::InvalidArgument("rates must be finite and nonnegative".into()));
        }
        Ok(DsbsSpec { n, p, r1, r2 })
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        DsbsSpec::new(n, self.p, self.r1, self.r2)
    }

    /// Both code sizes and any rounding notes.
    pub fn code_sizes(&self) -> (CodeSize, CodeSize, Vec<String>) {
        let (a, wa) = CodeSize::from_rate(self.n, self.r1);
        let (b, wb) = CodeSize::from_rate(self.n, self.r2);
        (a, b, wa.into_iter().chain(wb).collect())
    }
}

/// `ln sum exp(x_i)`; empty or all `-inf` input gives `-inf`.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let top = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + xs.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// `ln(n!) - ln(sqrt(2 pi n) (n/e)^n)`.
fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        if n == 0.0 {
            return 0.0;
        }
        let ln_fact: f64 = (2..=n as u64).map(|k| (k as f64).ln()).sum();
        return ln_fact - (0.5 * (2.0 * std::f64::consts::PI * n).ln() + n * n.ln() - n);
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance `x ln(x / m) + m - x`, without cancellation when `x` is near `m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let mut v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        return s;
    }
    x * (x / m).ln() + m - x
}

/// `ln(C(n,k) p^k (1-p)^(n-k))` by the saddle-point expansion, accurate to a
/// few ulps even when both factors are astronomically large or small.
fn ln_binomial_pmf(k: usize, n: usize, p: f64) -> f64 {
    let q = 1.0 - p;
    if k == 0 {
        return n as f64 * (-p).ln_1p();
    }
    if k == n {
        return n as f64 * p.ln();
    }
    let (x, nf) = (k as f64, n as f64);
    let lc = stirling_error(nf)
        - stirling_error(x)
        - stirling_error(nf - x)
        - deviance(x, nf * p)
        - deviance(nf - x, nf * q);
    let lf = (2.0 * std::f64::consts::PI).ln() + x.ln() + (-x / nf).ln_1p();
    lc - 0.5 * lf
}

/// Per-weight logarithms shared by every bound.
struct Weights {
    n: usize,
    /// `ln P[weight = k]`.
    ln_b: Vec<f64>,
    ln_q: Vec<f64>,
    ln_m1: f64,
    ln_m2: f64,
}

impl Weights {
    fn new(spec: &DsbsSpec) -> Self {
        let n = spec.n;
        let (a, b) = (spec.p.ln(), (-spec.p).ln_1p());
        let ln_b = (0..=n).map(|k| ln_binomial_pmf(k, n, spec.p)).collect();
        let ln_q = (0..=n).map(|k| k as f64 * a + (n - k) as f64 * b).collect();
        let (m1, m2, _) = spec.code_sizes();
        Weights { n, ln_b, ln_q, ln_m1: m1.ln, ln_m2: m2.ln }
    }

    fn ln_2n(&self) -> f64 {
        self.n as f64 * LN_2
    }

    /// `ln(1/M1 + 1/M2 + 2^n/(M1 M2))`.
    fn ln_a(&self) -> f64 {
        log_sum_exp([-self.ln_m1, -self.ln_m2, self.ln_2n() - self.ln_m1 - self.ln_m2])
    }

    /// `ln sum_k C(n,k) min(q_k, t A)`.
    fn ln_capped_mass(&self, lt: f64) -> f64 {
        let cap = lt + self.ln_a();
        log_sum_exp((0..=self.n).map(|k| self.ln_b[k] + (cap - self.ln_q[k]).min(0.0)))
    }

    /// `ln(M1 M2 q_0 / 2^n)`.
    fn ln_joint_top(&self) -> f64 {
        self.ln_m1 + self.ln_m2 + self.ln_q[0] - self.ln_2n()
    }
}

fn e(x: f64) -> f64 {
    x.exp()
}

fn converse_at(w: &Weights, lt: f64) -> f64 {
    if lt == f64::NEG_INFINITY {
        return 0.0;
    }
    e(w.ln_capped_mass(lt))
        - e((w.ln_m1 + w.ln_q[0]).min(lt))
        - e((w.ln_m2 + w.ln_q[0]).min(lt))
        - e(w.ln_joint_top().min(lt))
}

fn je_at(w: &Weights, lt: f64) -> f64 {
    if lt == f64::NEG_INFINITY {
        return 0.0;
    }
    let top = w.ln_joint_top();
    e(w.ln_capped_mass(lt))
        - e(top.min(w.ln_m2 + lt - w.ln_2n()))
        - e(top.min(w.ln_m1 + lt - w.ln_2n()))
        - e(top.min(lt))
}

/// `ln q_k + ln min(M1 M2 / 2^n, M1, M2)`: the pair enters the union event
/// once `t` reaches this.
fn ln_union_thresholds(w: &Weights) -> Vec<f64> {
    let scale = (w.ln_m1 + w.ln_m2 - w.ln_2n()).min(w.ln_m1).min(w.ln_m2);
    w.ln_q.iter().map(|q| q + scale).collect()
}

fn mk_at(w: &Weights, lt: f64) -> f64 {
    if lt == f64::NEG_INFINITY {
        return 0.0;
    }
    let th = ln_union_thresholds(w);
    let inside = log_sum_exp((0..=w.n).filter(|&k| th[k] <= lt).map(|k| w.ln_b[k]));
    e(inside) - 3.0 * e(lt)
}

/// Maximize `f` over `ln t` in the breakpoints below zero, `t = 1`, the
/// `t -> 0` limit and a log-spaced guard grid.
fn scan(breaks: Vec<f64>, include_one: bool, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut cands: Vec<f64> = breaks.into_iter().filter(|&x| x.is_finite() && x < 0.0).collect();
    let lo = cands.iter().copied().fold(-1.0, f64::min);
    cands.extend((0..GUARD_POINTS).map(|i| lo * (1.0 - i as f64 / GUARD_POINTS as f64)));
    if include_one {
        cands.push(0.0);
    }
    let mut best = (0.0, f64::NEG_INFINITY);
    for lt in cands {
        let v = f(lt);
        if v > best.0 {
            best = (v, lt);
        }
    }
    best
}

fn common_breaks(w: &Weights) -> Vec<f64> {
    let ln_a = w.ln_a();
    let mut b: Vec<f64> = w.ln_q.iter().map(|q| q - ln_a).collect();
    b.extend([w.ln_m1 + w.ln_q[0], w.ln_m2 + w.ln_q[0], w.ln_joint_top()]);
    b
}

fn report(name: &str, (v, lt): (f64, f64), origin: &'static str) -> BoundReport {
    BoundReport::new(name, v, Witness::Threshold { t: lt.exp() }, origin)
}

/// Slepian-Wolf metaconverse at the threshold weights, collapsed by weight.
pub fn dsbs_converse(spec: &DsbsSpec) -> BoundReport {
    let w = Weights::new(spec);
    report("dsbs-converse", scan(common_breaks(&w), true, |lt| converse_at(&w, lt)), "Slepian-Wolf metaconverse")
}

/// Jointly encoded metaconverse at a sum of three capped weights, with the
/// penalty split term by term.
pub fn dsbs_je_bound(spec: &DsbsSpec) -> BoundReport {
    let w = Weights::new(spec);
    report("dsbs-je", scan(common_breaks(&w), true, |lt| je_at(&w, lt)), "jointly encoded metaconverse")
}

/// Union information-spectrum converse.
pub fn dsbs_mk(spec: &DsbsSpec) -> BoundReport {
    let w = Weights::new(spec);
    report("dsbs-mk", scan(ln_union_thresholds(&w), false, |lt| mk_at(&w, lt)), "union information-spectrum converse")
}

/// The three bound expressions at a given `t`, for cross-checks.
pub fn dsbs_values_at(spec: &DsbsSpec, t: f64) -> (f64, f64, f64) {
    let w = Weights::new(spec);
    let lt = t.ln();
    (converse_at(&w, lt), je_at(&w, lt), mk_at(&w, lt))
}

/// `ln sum_k C(n,k) q_k`, which must be zero.
pub fn ln_total_mass(spec: &DsbsSpec) -> f64 {
    let w = Weights::new(spec);
    log_sum_exp(w.ln_b.iter().copied())
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Inside,
    Outside,
    Boundary,
}

/// Position of `(R1, R2)` relative to the optimal rate region.
pub fn rate_region(spec: &DsbsSpec) -> Region {
    let h = binary_entropy(spec.p);
    let margins = [spec.r1 - h, spec.r2 - h, spec.r1 + spec.r2 - 1.0 - h];
    if margins.iter().any(|&m| m < -REGION_TOL) {
        Region::Outside
    } else if margins.iter().any(|&m| m.abs() <= REGION_TOL) {
        Region::Boundary
    } else {
        Region::Inside
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub bound: String,
    pub raw: f64,
    pub clamped: f64,
    pub t_opt: f64,
}

impl SweepRow {
    fn from_report(n: usize, r: BoundReport) -> Self {
        let t_opt = match r.witness {
            Witness::Threshold { t } => t,
            _ => f64::NAN,
        };
        SweepRow { n, bound: r.name, raw: r.raw_value, clamped: r.clamped_value, t_opt }
    }
}

/// All three bounds at every blocklength, ordered by `n` then bound name.
pub fn sweep(template: &DsbsSpec, ns: &[usize]) -> Result<Vec<SweepRow>> {
    let specs: Vec<DsbsSpec> = ns.iter().map(|&n| template.with_n(n)).collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = specs
        .par_iter()
        .flat_map_iter(|s| {
            [dsbs_converse(s), dsbs_je_bound(s), dsbs_mk(s)].into_iter().map(move |r| SweepRow::from_report(s.n, r))
        })
        .collect();
    rows.sort_by(|a, b| a.n.cmp(&b.n).then_with(|| a.bound.cmp(&b.bound)));
    Ok(rows)
}

pub const CSV_HEADER: &str = "n,bound,raw,clamped,t_opt";

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        writeln!(s, "{},{},{:?},{:?},{:?}", r.n, r.bound, r.raw, r.clamped, r.t_opt).unwrap();
    }
    s
}

/// Gnuplot script plotting the clamped value of each bound against `n`.
pub fn gnuplot_script(csv_name: &str, spec: &DsbsSpec) -> String {
    let mut s = String::new();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set key top left").unwrap();
    writeln!(s, "set xlabel 'n'").unwrap();
    writeln!(s, "set ylabel 'error probability lower bound'").unwrap();
    writeln!(s, "set title 'DSBS p={} R1={} R2={}'", spec.p, spec.r1, spec.r2).unwrap();
    let plots: Vec<String> = ["dsbs-converse", "dsbs-je", "dsbs-mk"]
        .iter()
        .map(|b| {
            format!(
                "'{}' using 1:(stringcolumn(2) eq '{}' ? $4 : 1/0) skip 1 with linespoints title '{}'",
                csv_name, b, b
            )
        })
        .collect();
    writeln!(s, "plot {}", plots.join(", \\\n     ")).unwrap();
    s
}
