//! Point-to-point converses: lossy and lossless single-source coding,
//! jointly encoded pairs and coding with decoder side information.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{LpModel, Relation, Sense};
use crate::probability::{Axis, SinglePmf};
use crate::relaxations::{ScInstance, Side, SwInstance};

use super::{argmax, solve_optimal, BoundReport, Witness};

/// Tilted information of every source symbol, in nats.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltedInfo {
    j: Vec<f64>,
}

impl TiltedInfo {
    pub fn new(j: Vec<f64>) -> Result<Self> {
        if let Some(k) = j.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("tilted information at symbol {} is not finite", k)));
        }
        Ok(TiltedInfo { j })
    }

    /// `-ln P(s)`; symbols of zero mass get `+inf` and are ignored by every
    /// evaluator.
    pub fn lossless(source: &SinglePmf) -> Self {
        TiltedInfo { j: source.self_information() }
    }

    pub fn values(&self) -> &[f64] {
        &self.j
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!("{} has {} entries, expected {}", what, got, want)));
    }
    Ok(())
}

/// `sum(phi) - M * max_r sum_{s covered by r} phi(s)`.
fn lossy_objective(inst: &ScInstance, phi: &[f64]) -> f64 {
    let covered = (0..inst.n_rec())
        .map(|r| (0..inst.n_src()).filter(|&s| inst.distortion.covers(s, r)).map(|s| phi[s]).sum::<f64>())
        .fold(0.0, f64::max);
    phi.iter().sum::<f64>() - inst.m as f64 * covered
}

pub fn meta_lossy(inst: &ScInstance) -> Result<BoundReport> {
    let n = inst.n_src();
    let mut lp = LpModel::new(Sense::Maximize);
    for s in 0..n {
        lp.add_var(format!("phi{}", s), 0.0, inst.source.get(s), 1.0);
    }
    let u = lp.add_var("u", f64::NEG_INFINITY, f64::INFINITY, -(inst.m as f64));
    for r in 0..inst.n_rec() {
        let mut terms = vec![(u, 1.0)];
        terms.extend((0..n).filter(|&s| inst.distortion.covers(s, r)).map(|s| (s, -1.0)));
        lp.add_constraint(&terms, Relation::Ge, 0.0);
    }
    let sol = solve_optimal(&lp)?;
    let phi: Vec<f64> = (0..n).map(|s| sol.primal[s].clamp(0.0, inst.source.get(s))).collect();
    let raw = lossy_objective(inst, &phi);
    Ok(BoundReport::new("meta-lossy", raw, Witness::Weights { phi }, "lossy metaconverse"))
}

/// The lossy metaconverse at the weight `min(P, z)`.
pub fn meta_lossy_z(inst: &ScInstance, z: &[f64]) -> Result<BoundReport> {
    check_len("z", z.len(), inst.n_src())?;
    if z.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidArgument("z must be nonnegative".into()));
    }
    let phi: Vec<f64> = z.iter().zip(inst.source.mass()).map(|(z, p)| p.min(*z)).collect();
    let raw = lossy_objective(inst, &phi);
    Ok(BoundReport::new("meta-lossy-z", raw, Witness::Weights { phi }, "lossy metaconverse at a fixed weight"))
}

/// Tilted-information converse, as a function of the scale `u = exp(-gamma)`:
/// `sum min(P, P e^j u / M) - u * max_r sum_{covered} P e^j`.
pub fn kv_tilted_improved(inst: &ScInstance, j: &TiltedInfo) -> Result<BoundReport> {
    check_len("tilted information", j.j.len(), inst.n_src())?;
    let m = inst.m as f64;
    let p = inst.source.mass();
    let live: Vec<usize> = (0..p.len()).filter(|&s| p[s] > 0.0).collect();
    let w = |s: usize| p[s] * j.j[s].exp();
    let slope = (0..inst.n_rec())
        .map(|r| live.iter().filter(|&&s| inst.distortion.covers(s, r)).map(|&s| w(s)).sum::<f64>())
        .fold(0.0, f64::max);
    let value = |u: f64| live.iter().map(|&s| p[s].min(w(s) * u / m)).sum::<f64>() - u * slope;
    let cands = std::iter::once((0.0, 0.0)).chain(live.iter().map(|&s| {
        let u = m * (-j.j[s]).exp();
        (value(u), u)
    }));
    let (raw, u) = argmax(cands).unwrap();
    Ok(BoundReport::new("kv-improved", raw, Witness::Scale { u }, "tilted-information converse"))
}

/// Least type-I error of a randomized test whose type-II error is at most
/// `theta`.
pub fn np_alpha(p: &SinglePmf, q: &SinglePmf, theta: f64) -> Result<f64> {
    check_len("Q", q.len(), p.len())?;
    if theta >= 1.0 {
        return Ok(0.0);
    }
    let mut order: Vec<usize> = (0..q.len()).filter(|&s| q.get(s) > 0.0).collect();
    order.sort_by(|&a, &b| (p.get(a) / q.get(a)).total_cmp(&(p.get(b) / q.get(b))));
    let mut need = 1.0 - theta.max(0.0);
    let mut alpha = 0.0;
    for s in order {
        if need <= 0.0 {
            break;
        }
        let take = q.get(s).min(need);
        alpha += p.get(s) * take / q.get(s);
        need -= take;
    }
    Ok(alpha)
}

/// `sup_{beta >= 0} sum min(P, beta Q) - beta * mstar`.
pub fn alpha_sup_form(p: &SinglePmf, q: &SinglePmf, mstar: f64) -> Result<f64> {
    check_len("Q", q.len(), p.len())?;
    let value = |b: f64| p.mass().iter().zip(q.mass()).map(|(p, q)| p.min(b * q)).sum::<f64>() - b * mstar;
    let ratios = (0..q.len()).filter(|&s| q.get(s) > 0.0).map(|s| p.get(s) / q.get(s));
    Ok(std::iter::once(0.0).chain(ratios).map(value).fold(f64::NEG_INFINITY, f64::max))
}

pub fn hypothesis_testing_bound(inst: &ScInstance, q: &SinglePmf) -> Result<BoundReport> {
    check_len("Q", q.len(), inst.n_src())?;
    let covered = (0..inst.n_rec())
        .map(|r| (0..inst.n_src()).filter(|&s| inst.distortion.covers(s, r)).map(|s| q.get(s)).sum::<f64>())
        .fold(0.0, f64::max);
    let mstar = inst.m as f64 * covered;
    let vacuous = mstar >= 1.0;
    let raw = if vacuous { 0.0 } else { np_alpha(&inst.source, q, mstar)? };
    let witness = Witness::TestDistribution { q: q.mass().to_vec(), vacuous };
    Ok(BoundReport::new("ht", raw, witness, "hypothesis-testing converse"))
}

/// `sup_beta P[j >= beta] - M max_r P[j >= beta, covered by r]`.
pub fn palzer_timo(inst: &ScInstance, j: &TiltedInfo) -> Result<BoundReport> {
    check_len("tilted information", j.j.len(), inst.n_src())?;
    let p = inst.source.mass();
    let live: Vec<usize> = (0..p.len()).filter(|&s| p[s] > 0.0).collect();
    let value = |beta: f64| {
        let kept: Vec<usize> = live.iter().copied().filter(|&s| j.j[s] >= beta).collect();
        let covered = (0..inst.n_rec())
            .map(|r| kept.iter().filter(|&&s| inst.distortion.covers(s, r)).map(|&s| p[s]).sum::<f64>())
            .fold(0.0, f64::max);
        kept.iter().map(|&s| p[s]).sum::<f64>() - inst.m as f64 * covered
    };
    let cands = std::iter::once(f64::NEG_INFINITY).chain(live.iter().map(|&s| j.j[s])).map(|b| (value(b), b));
    let (raw, beta) = argmax(cands).unwrap();
    Ok(BoundReport::new("palzer-timo", raw, Witness::Level { beta }, "tilted-information level converse"))
}

/// `sup_{0 <= phi <= P} |phi|_1 - M |phi|_inf`, attained at `phi = min(P, c)`
/// for a cap `c` among the masses.
pub fn meta_lossless(source: &SinglePmf, m: usize) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("code size must be at least 1".into()));
    }
    let value = |c: f64| source.mass().iter().map(|p| p.min(c)).sum::<f64>() - m as f64 * c;
    let cands = std::iter::once(0.0).chain(source.mass().iter().copied()).map(|c| (value(c), c));
    let (raw, c) = argmax(cands).unwrap();
    Ok(BoundReport::new("meta-lossless", raw, Witness::Cap { c }, "lossless metaconverse"))
}

/// `sup_t P[M P(S) <= t] - t` over `t` in `(0, 1]`.
pub fn lossless_gamma_bound(source: &SinglePmf, m: usize) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("code size must be at least 1".into()));
    }
    let m = m as f64;
    let value = |t: f64| source.mass().iter().filter(|&&p| p > 0.0 && m * p <= t).sum::<f64>() - t;
    let bps = source.mass().iter().map(|&p| m * p).filter(|&t| t > 0.0 && t <= 1.0);
    let cands = std::iter::once((0.0, 0.0)).chain(bps.chain(std::iter::once(1.0)).map(|t| (value(t), t)));
    let (raw, t) = argmax(cands).unwrap();
    Ok(BoundReport::new("lossless-gamma", raw, Witness::Threshold { t }, "lossless information-spectrum converse"))
}

/// Lossless metaconverse for the pair encoded by one encoder with
/// `M1 * M2` messages. The witness is the joint weight, row-major.
pub fn meta_je(inst: &SwInstance) -> Result<BoundReport> {
    let src = inst.joint.flatten();
    let r = meta_lossless(&src, inst.m1() * inst.m2())?;
    let c = match r.witness {
        Witness::Cap { c } => c,
        _ => unreachable!(),
    };
    let phi = src.mass().iter().map(|p| p.min(c)).collect();
    Ok(BoundReport::new("meta-je", r.raw_value, Witness::Weights { phi }, "jointly encoded metaconverse"))
}

/// The instance with the encoded source first.
fn orient(inst: &SwInstance, side: Side) -> SwInstance {
    match side {
        Side::One => inst.clone(),
        Side::Two => inst.mirrored(),
    }
}

fn side_suffix(side: Side) -> &'static str {
    match side {
        Side::One => "12",
        Side::Two => "21",
    }
}

/// Back to row-major `(s1, s2)` order from an encoded-first weight.
fn unorient(inst: &SwInstance, side: Side, phi: &[f64]) -> Vec<f64> {
    match side {
        Side::One => phi.to_vec(),
        Side::Two => {
            let (n1, n2) = (inst.n1(), inst.n2());
            (0..n1 * n2).map(|k| phi[(k % n2) * n1 + k / n2]).collect()
        }
    }
}

/// `sum phi - M_e sum_o max_e phi(e, o)` in encoded-first order.
fn sid_objective(o: &SwInstance, phi: &[f64]) -> f64 {
    let (ne, no) = (o.n1(), o.n2());
    let pen: f64 = (0..no).map(|k| (0..ne).map(|e| phi[e * no + k]).fold(0.0, f64::max)).sum();
    phi.iter().sum::<f64>() - o.m1() as f64 * pen
}

/// Side-information metaconverse: `sup_{0 <= phi <= P} sum phi - M sum_o max_e phi`,
/// where `o` is the source available at the decoder.
pub fn meta_sid(inst: &SwInstance, side: Side) -> Result<BoundReport> {
    let o = orient(inst, side);
    let (ne, no) = (o.n1(), o.n2());
    let mut lp = LpModel::new(Sense::Maximize);
    for e in 0..ne {
        for k in 0..no {
            lp.add_var(format!("phi{}_{}", e, k), 0.0, o.p(e, k), 1.0);
        }
    }
    let w0 = lp.num_vars();
    for k in 0..no {
        lp.add_var(format!("w{}", k), f64::NEG_INFINITY, f64::INFINITY, -(o.m1() as f64));
    }
    for e in 0..ne {
        for k in 0..no {
            lp.add_constraint(&[(w0 + k, 1.0), (e * no + k, -1.0)], Relation::Ge, 0.0);
        }
    }
    let sol = solve_optimal(&lp)?;
    let phi: Vec<f64> = (0..ne * no).map(|i| sol.primal[i].clamp(0.0, o.p(i / no, i % no))).collect();
    let raw = sid_objective(&o, &phi);
    let phi = unorient(inst, side, &phi);
    Ok(BoundReport::new(
        format!("meta-sid{}", side_suffix(side)),
        raw,
        Witness::Weights { phi },
        "side-information metaconverse",
    ))
}

/// Breakpoints `M P(e|o)` of the conditional-density threshold family.
fn conditional_breakpoints(o: &SwInstance) -> (Vec<f64>, Vec<(usize, usize, f64)>) {
    let side = o.joint.marginal(Axis::Second);
    let m = o.m1() as f64;
    let mut cells = Vec::new();
    for e in 0..o.n1() {
        for k in 0..o.n2() {
            let p = o.p(e, k);
            if p > 0.0 {
                cells.push((e, k, m * p / side.get(k)));
            }
        }
    }
    (side.mass().to_vec(), cells)
}

fn threshold_sup(cells: &[(usize, usize, f64)], value: impl Fn(f64) -> f64) -> (f64, f64) {
    let bps = cells.iter().map(|c| c.2).filter(|&t| t > 0.0 && t <= 1.0);
    let cands = std::iter::once((0.0, 0.0)).chain(bps.chain(std::iter::once(1.0)).map(|t| (value(t), t)));
    argmax(cands).unwrap()
}

/// Side-information metaconverse at `phi = min(P, P_o t / M)`, maximized over `t`.
pub fn sid_improved(inst: &SwInstance, side: Side) -> Result<BoundReport> {
    let o = orient(inst, side);
    let (marg, cells) = conditional_breakpoints(&o);
    let m = o.m1() as f64;
    let (ne, no) = (o.n1(), o.n2());
    let value = |t: f64| {
        let phi: Vec<f64> = (0..ne * no).map(|i| o.p(i / no, i % no).min(marg[i % no] * t / m)).collect();
        sid_objective(&o, &phi)
    };
    let (raw, t) = threshold_sup(&cells, value);
    Ok(BoundReport::new(
        format!("sid-improved{}", side_suffix(side)),
        raw,
        Witness::Threshold { t },
        "side-information threshold converse",
    ))
}

/// `sup_t P[M P(e|o) <= t] - t`.
pub fn sid_classic(inst: &SwInstance, side: Side) -> Result<BoundReport> {
    let o = orient(inst, side);
    let (_, cells) = conditional_breakpoints(&o);
    let value = |t: f64| cells.iter().filter(|c| c.2 <= t).map(|c| o.p(c.0, c.1)).sum::<f64>() - t;
    let (raw, t) = threshold_sup(&cells, value);
    Ok(BoundReport::new(
        format!("sid-classic{}", side_suffix(side)),
        raw,
        Witness::Threshold { t },
        "side-information information-spectrum converse",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probability::{DistortionSpec, JointPmf};

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    fn lossless(mass: &[f64], m: usize) -> ScInstance {
        ScInstance::lossless(SinglePmf::new(mass.to_vec()).unwrap(), m).unwrap()
    }

    #[test]
    fn lossy_metaconverse_values() {
        close(meta_lossy(&lossless(&[0.25; 4], 2)).unwrap().raw_value, 0.5);
        close(meta_lossy(&lossless(&[0.7, 0.2, 0.1], 1)).unwrap().raw_value, 0.3);
        assert!(meta_lossy(&lossless(&[0.5, 0.3, 0.2], 3)).unwrap().raw_value <= 1e-12);
    }

    #[test]
    fn fixed_weight_form() {
        let inst = lossless(&[0.5, 0.25, 0.125, 0.125], 2);
        close(meta_lossy_z(&inst, &[0.0; 4]).unwrap().raw_value, 0.0);
        let at_p = meta_lossy_z(&inst, inst.source.mass()).unwrap().raw_value;
        close(at_p, 1.0 - 2.0 * 0.5);
        close(meta_lossy_z(&inst, &[9.0; 4]).unwrap().raw_value, at_p);
    }

    #[test]
    fn lossy_with_wide_threshold_is_free() {
        let d = DistortionSpec::new(2, 2, vec![0.0, 1.0, 1.0, 0.0], 1.0).unwrap();
        let inst = ScInstance::new(SinglePmf::uniform(2), 1, d).unwrap();
        assert!(meta_lossy(&inst).unwrap().raw_value <= 1e-12);
    }

    #[test]
    fn neyman_pearson_values() {
        let p = SinglePmf::new(vec![0.5, 0.5]).unwrap();
        let q = SinglePmf::new(vec![0.9, 0.1]).unwrap();
        close(np_alpha(&p, &q, 1.0).unwrap(), 0.0);
        close(np_alpha(&p, &q, 0.1).unwrap(), 0.5);
        close(np_alpha(&p, &p, 0.5).unwrap(), 0.5);
        close(alpha_sup_form(&p, &q, 0.9).unwrap(), np_alpha(&p, &q, 0.9).unwrap());
        close(alpha_sup_form(&p, &p, 0.3).unwrap(), 0.7);
        close(alpha_sup_form(&p, &q, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn hypothesis_testing_values() {
        let inst = lossless(&[0.25; 4], 1);
        close(hypothesis_testing_bound(&inst, &inst.source).unwrap().raw_value, 0.75);
        let inst = lossless(&[0.25; 4], 2);
        close(hypothesis_testing_bound(&inst, &SinglePmf::uniform(4)).unwrap().raw_value, 0.5);
        let r = hypothesis_testing_bound(&lossless(&[0.6, 0.4], 2), &SinglePmf::uniform(2)).unwrap();
        assert_eq!(r.raw_value, 0.0);
        assert!(matches!(r.witness, Witness::TestDistribution { vacuous: true, .. }));
    }

    #[test]
    fn level_converse_values() {
        let inst = lossless(&[0.25; 4], 2);
        close(palzer_timo(&inst, &TiltedInfo::lossless(&inst.source)).unwrap().raw_value, 0.5);
        let inst = lossless(&[0.7, 0.3], 1);
        let r = palzer_timo(&inst, &TiltedInfo::lossless(&inst.source)).unwrap();
        close(r.raw_value, 0.3);
    }

    #[test]
    fn lossless_values() {
        let u4 = SinglePmf::uniform(4);
        close(meta_lossless(&u4, 2).unwrap().raw_value, 0.5);
        let p = SinglePmf::new(vec![0.7, 0.2, 0.1]).unwrap();
        close(meta_lossless(&p, 1).unwrap().raw_value, 0.3);
        close(meta_lossless(&SinglePmf::new(vec![1.0]).unwrap(), 1).unwrap().raw_value, 0.0);
        close(lossless_gamma_bound(&u4, 2).unwrap().raw_value, 0.5);
        close(lossless_gamma_bound(&SinglePmf::uniform(2), 2).unwrap().raw_value, 0.0);
        // both symbols enter at t = 0.7
        let r = lossless_gamma_bound(&SinglePmf::new(vec![0.7, 0.3]).unwrap(), 1).unwrap();
        close(r.raw_value, 0.3);
        assert_eq!(r.witness, Witness::Threshold { t: 0.7 });
    }

    #[test]
    fn tilted_converse_sits_between() {
        let inst = lossless(&[0.5, 0.25, 0.125, 0.125], 2);
        let kv = kv_tilted_improved(&inst, &TiltedInfo::lossless(&inst.source)).unwrap().raw_value;
        let lo = lossless_gamma_bound(&inst.source, 2).unwrap().raw_value;
        let hi = meta_lossy(&inst).unwrap().raw_value;
        assert!(lo <= kv + 1e-9 && kv <= hi + 1e-9, "{} {} {}", lo, kv, hi);
        let one = lossless(&[1.0], 1);
        assert!(kv_tilted_improved(&one, &TiltedInfo::lossless(&one.source)).unwrap().raw_value <= 1e-12);
    }

    #[test]
    fn joint_and_side_information_values() {
        let u = SwInstance::new(JointPmf::uniform(2, 2), 1, 1).unwrap();
        close(meta_je(&u).unwrap().raw_value, 0.75);
        close(meta_sid(&u, Side::One).unwrap().raw_value, 0.5);
        close(meta_sid(&u, Side::Two).unwrap().raw_value, 0.5);
        close(sid_classic(&u, Side::One).unwrap().raw_value, 0.5);
        let u2 = SwInstance::new(JointPmf::uniform(2, 2), 2, 2).unwrap();
        assert!(meta_je(&u2).unwrap().raw_value <= 1e-12);
        let diag = SwInstance::new(JointPmf::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap(), 1, 1).unwrap();
        close(meta_sid(&diag, Side::One).unwrap().raw_value, 0.0);
        close(sid_classic(&diag, Side::One).unwrap().raw_value, 0.0);
        close(meta_je(&diag).unwrap().raw_value, 0.5);
        let d = JointPmf::new(2, 2, vec![0.375, 0.125, 0.125, 0.375]).unwrap();
        close(meta_je(&SwInstance::new(d, 1, 1).unwrap()).unwrap().raw_value, 0.625);
    }

    #[test]
    fn mirrored_weights_return_in_original_order() {
        let j = JointPmf::new(2, 3, vec![0.1, 0.2, 0.05, 0.3, 0.15, 0.2]).unwrap();
        let inst = SwInstance::new(j, 1, 2).unwrap();
        let r = meta_sid(&inst, Side::Two).unwrap();
        let Witness::Weights { phi } = &r.witness else { panic!() };
        for (k, v) in phi.iter().enumerate() {
            assert!(*v <= inst.joint.mass()[k] + 1e-12);
        }
        let o = inst.mirrored();
        let back: Vec<f64> = (0..6).map(|k| phi[(k % 2) * 3 + k / 2]).collect();
        close(sid_objective(&o, &back), r.raw_value);
    }
}
