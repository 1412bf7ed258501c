//! Slepian-Wolf converses and explicit feasible points of the relaxation
//! dual built from point-to-point dual points.

use crate::error::{Error, Result};
use crate::lp::{LpModel, Relation, Sense};
use crate::probability::Axis;
use crate::relaxations::tensor::Tensor;
use crate::relaxations::{
    check_dpje_feasible, check_dpsi_feasible, infeasible, DualPointJe, DualPointSW, DualPointSid, Side, SwInstance,
};

use super::ptp::{meta_je, meta_sid};
use super::{argmax, solve_optimal, BoundReport, Witness};

/// Tolerance for accepting caller-supplied point-to-point dual points.
const INPUT_TOL: f64 = 1e-9;

/// `sum min(P, phi_hat + phi_12 + phi_21) - M1 M2 max phi_hat
///  - M2 sum_{s1} max_{s2} phi_21 - M1 sum_{s2} max_{s1} phi_12`,
/// all weights row-major over `(s1, s2)`.
pub fn sw_weights_objective(inst: &SwInstance, phi_hat: &[f64], phi_12: &[f64], phi_21: &[f64]) -> f64 {
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let p = inst.joint.mass();
    let mut total = 0.0;
    for k in 0..n1 * n2 {
        total += p[k].min(phi_hat[k] + phi_12[k] + phi_21[k]);
    }
    let joint = phi_hat.iter().copied().fold(0.0, f64::max);
    let given2: f64 = (0..n2).map(|s2| (0..n1).map(|s1| phi_12[s1 * n2 + s2]).fold(0.0, f64::max)).sum();
    let given1: f64 = (0..n1).map(|s1| (0..n2).map(|s2| phi_21[s1 * n2 + s2]).fold(0.0, f64::max)).sum();
    total - m1 * m2 * joint - m2 * given1 - m1 * given2
}

/// Slepian-Wolf metaconverse, solved as an LP over the three weights.
pub fn meta_sw(inst: &SwInstance) -> Result<BoundReport> {
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let n = n1 * n2;
    let p = inst.joint.mass();
    let mut lp = LpModel::new(Sense::Maximize);
    for block in ["hat", "12", "21"] {
        for k in 0..n {
            lp.add_var(format!("phi_{}_{}", block, k), 0.0, p[k], 0.0);
        }
    }
    for k in 0..n {
        lp.add_var(format!("t{}", k), f64::NEG_INFINITY, p[k], 1.0);
    }
    let u = lp.add_var("u", f64::NEG_INFINITY, f64::INFINITY, -m1 * m2);
    let v0 = lp.num_vars();
    for s1 in 0..n1 {
        lp.add_var(format!("v{}", s1), f64::NEG_INFINITY, f64::INFINITY, -m2);
    }
    let w0 = lp.num_vars();
    for s2 in 0..n2 {
        lp.add_var(format!("w{}", s2), f64::NEG_INFINITY, f64::INFINITY, -m1);
    }
    for k in 0..n {
        lp.add_constraint(&[(3 * n + k, 1.0), (k, -1.0), (n + k, -1.0), (2 * n + k, -1.0)], Relation::Le, 0.0);
        lp.add_constraint(&[(u, 1.0), (k, -1.0)], Relation::Ge, 0.0);
        let (s1, s2) = (k / n2, k % n2);
        lp.add_constraint(&[(v0 + s1, 1.0), (2 * n + k, -1.0)], Relation::Ge, 0.0);
        lp.add_constraint(&[(w0 + s2, 1.0), (n + k, -1.0)], Relation::Ge, 0.0);
    }
    let sol = solve_optimal(&lp)?;
    let clip = |off: usize| (0..n).map(|k| sol.primal[off + k].clamp(0.0, p[k])).collect::<Vec<_>>();
    let (phi_hat, phi_12, phi_21) = (clip(0), clip(n), clip(2 * n));
    let raw = sw_weights_objective(inst, &phi_hat, &phi_12, &phi_21);
    Ok(BoundReport::new("meta-sw", raw, Witness::SwWeights { phi_hat, phi_12, phi_21 }, "Slepian-Wolf metaconverse"))
}

/// The metaconverse at weights `min(P, eta_i)`: `eta1` joint, `eta2` for the
/// first source given the second, `eta3` for the second given the first.
pub fn meta_sw_eta(inst: &SwInstance, eta1: &[f64], eta2: &[f64], eta3: &[f64]) -> Result<BoundReport> {
    let n = inst.n1() * inst.n2();
    for (name, e) in [("eta1", eta1), ("eta2", eta2), ("eta3", eta3)] {
        if e.len() != n {
            return Err(Error::DimensionMismatch(format!("{} has {} entries, expected {}", name, e.len(), n)));
        }
        if e.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidArgument(format!("{} must be nonnegative", name)));
        }
    }
    let p = inst.joint.mass();
    let cap = |e: &[f64]| e.iter().zip(p).map(|(e, p)| p.min(*e)).collect::<Vec<_>>();
    let (phi_hat, phi_12, phi_21) = (cap(eta1), cap(eta2), cap(eta3));
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let total: f64 = (0..n).map(|k| p[k].min(eta1[k] + eta2[k] + eta3[k])).sum();
    let joint = phi_hat.iter().copied().fold(0.0, f64::max);
    let given1: f64 = (0..n1).map(|s1| (0..n2).map(|s2| phi_21[s1 * n2 + s2]).fold(0.0, f64::max)).sum();
    let given2: f64 = (0..n2).map(|s2| (0..n1).map(|s1| phi_12[s1 * n2 + s2]).fold(0.0, f64::max)).sum();
    let raw = total - m1 * m2 * joint - m2 * given1 - m1 * given2;
    Ok(BoundReport::new(
        "meta-sw-eta",
        raw,
        Witness::SwWeights { phi_hat, phi_12, phi_21 },
        "Slepian-Wolf metaconverse at fixed weights",
    ))
}

/// Threshold weights `eta1 = t/(M1 M2)`, `eta2 = P2 t/M1`, `eta3 = P1 t/M2`.
fn threshold_etas(inst: &SwInstance, t: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let p1 = inst.joint.marginal(Axis::First);
    let p2 = inst.joint.marginal(Axis::Second);
    let n = n1 * n2;
    let e1 = vec![t / (m1 * m2); n];
    let e2 = (0..n).map(|k| p2.get(k % n2) * t / m1).collect();
    let e3 = (0..n).map(|k| p1.get(k / n2) * t / m2).collect();
    (e1, e2, e3)
}

/// Sup over `t` of [`meta_sw_eta`] on the threshold weights.
pub fn meta_sw_eta_family(inst: &SwInstance) -> Result<BoundReport> {
    let (n1, n2) = (inst.n1(), inst.n2());
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let p1 = inst.joint.marginal(Axis::First);
    let p2 = inst.joint.marginal(Axis::Second);
    let mut bps = vec![1.0];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let p = inst.p(s1, s2);
            if p > 0.0 {
                let a = 1.0 / (m1 * m2) + p2.get(s2) / m1 + p1.get(s1) / m2;
                bps.extend([p * m1 * m2, p * m1 / p2.get(s2), p * m2 / p1.get(s1), p / a]);
            }
        }
    }
    bps.retain(|&t| t > 0.0 && t <= 1.0);
    let mut best = (0.0, 0.0);
    for t in bps {
        let (e1, e2, e3) = threshold_etas(inst, t);
        let v = meta_sw_eta(inst, &e1, &e2, &e3)?.raw_value;
        if v > best.0 {
            best = (v, t);
        }
    }
    Ok(BoundReport::new(
        "meta-sw-eta",
        best.0,
        Witness::Threshold { t: best.1 },
        "Slepian-Wolf metaconverse at threshold weights",
    ))
}

/// Best of the jointly encoded and the two side-information metaconverses.
pub fn max_converse(inst: &SwInstance) -> Result<BoundReport> {
    let parts = [meta_je(inst)?, meta_sid(inst, Side::One)?, meta_sid(inst, Side::Two)?];
    let (raw, k) = argmax(parts.iter().enumerate().map(|(k, r)| (r.raw_value, k))).unwrap();
    let witness = Witness::Component { name: parts[k].name.clone(), inner: Box::new(parts[k].witness.clone()) };
    Ok(BoundReport::new("max-converse", raw, witness, "best point-to-point metaconverse"))
}

/// Per-pair threshold `min(M1 M2 P, M1 P(s1|s2), M2 P(s2|s1))` at which the
/// pair enters the union event, and the weight `max(1/(M1 M2), P2/M1, P1/M2)`
/// of its share below that threshold.
fn mk_cells(inst: &SwInstance) -> Vec<(f64, f64, f64)> {
    let (m1, m2) = (inst.m1() as f64, inst.m2() as f64);
    let p1 = inst.joint.marginal(Axis::First);
    let p2 = inst.joint.marginal(Axis::Second);
    let mut cells = Vec::new();
    for s1 in 0..inst.n1() {
        for s2 in 0..inst.n2() {
            let p = inst.p(s1, s2);
            if p > 0.0 {
                let b = (m1 * m2 * p).min(m1 * p / p2.get(s2)).min(m2 * p / p1.get(s1));
                let slope = (1.0 / (m1 * m2)).max(p2.get(s2) / m1).max(p1.get(s1) / m2);
                cells.push((p, b, slope));
            }
        }
    }
    cells
}

/// `sup_t P[union of the three density events] - 3t` over `t` in `(0, 1)`.
pub fn mk_classic(inst: &SwInstance) -> Result<BoundReport> {
    let cells = mk_cells(inst);
    let value = |t: f64| cells.iter().filter(|c| c.1 <= t).map(|c| c.0).sum::<f64>() - 3.0 * t;
    let bps = cells.iter().map(|c| c.1).filter(|&t| t > 0.0 && t < 1.0);
    let (raw, t) = argmax(std::iter::once((0.0, 0.0)).chain(bps.map(|t| (value(t), t)))).unwrap();
    Ok(BoundReport::new("mk", raw, Witness::Threshold { t }, "union information-spectrum converse"))
}

/// [`mk_classic`] plus the mass `t * max(1/(M1 M2), P2/M1, P1/M2)` of every
/// pair outside the union event.
pub fn mk_improved(inst: &SwInstance) -> Result<BoundReport> {
    let cells = mk_cells(inst);
    let value = |t: f64| {
        cells.iter().map(|&(p, b, slope)| if b <= t { p } else { slope * t }).sum::<f64>() - 3.0 * t
    };
    let bps = cells.iter().map(|c| c.1).filter(|&t| t > 0.0 && t < 1.0).chain(std::iter::once(1.0));
    let (raw, t) = argmax(std::iter::once((0.0, 0.0)).chain(bps.map(|t| (value(t), t)))).unwrap();
    Ok(BoundReport::new("mk-improved", raw, Witness::Threshold { t }, "improved union converse"))
}

fn require_feasible(v: Vec<crate::relaxations::ConstraintViolation>) -> Result<()> {
    if v.is_empty() {
        Ok(())
    } else {
        Err(infeasible(&v))
    }
}

/// Lift a side-information dual point to the Slepian-Wolf dual. The point's
/// own side decides which source is encoded.
pub fn embed_sid_feasible(inst: &SwInstance, pt: &DualPointSid) -> Result<DualPointSW> {
    require_feasible(check_dpsi_feasible(inst, pt, INPUT_TOL)?)?;
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let mut th = DualPointSW::zeros(inst);
    match pt.side {
        Side::One => {
            let (ls, lc, gb) = (&pt.lambda_s, &pt.lambda_c, &pt.gamma_b);
            th.lambda_s_12 = Tensor::from_fn(&[n1, n2, m2, m1, m2, n1, n2], |i| {
                if i[2] == i[4] { ls.get(&[i[0], i[1], i[5], i[3]]) } else { 0.0 }
            });
            th.lambda_c = Tensor::from_fn(&[n1, n2, m1, m2, m1, m2], |i| {
                if i[3] == i[5] { lc.get(&[i[0], i[1], i[2], i[4]]) } else { 0.0 }
            });
            th.mu_c_2 =
                Tensor::from_fn(&[n2, m2, m1, m2], |i| if i[1] == i[3] { gb.get(&[i[0], i[2]]) } else { 0.0 });
            th.mu_c_12 = Tensor::from_fn(&[m1, n1, n2], |i| (0..m1).map(|y1| lc.get(&[i[1], i[2], i[0], y1])).sum());
            th.gamma_a = Some(pt.gamma_a.clone());
            th.gamma_b = Some((0..n2).map(|s2| (0..m1).map(|y1| gb.get(&[s2, y1])).sum()).collect());
        }
        Side::Two => {
            let (ls, lc, gb) = (&pt.lambda_s, &pt.lambda_c, &pt.gamma_b);
            th.lambda_s_21 = Tensor::from_fn(&[n1, n2, m1, m1, m2, n1, n2], |i| {
                if i[2] == i[3] { ls.get(&[i[1], i[0], i[6], i[4]]) } else { 0.0 }
            });
            th.lambda_c = Tensor::from_fn(&[n1, n2, m1, m2, m1, m2], |i| {
                if i[2] == i[4] { lc.get(&[i[1], i[0], i[3], i[5]]) } else { 0.0 }
            });
            th.mu_c_1 =
                Tensor::from_fn(&[n1, m1, m1, m2], |i| if i[1] == i[2] { gb.get(&[i[0], i[3]]) } else { 0.0 });
            th.mu_c_21 = Tensor::from_fn(&[m2, n1, n2], |i| (0..m2).map(|y2| lc.get(&[i[2], i[1], i[0], y2])).sum());
            th.gamma_b = Some(pt.gamma_a.clone());
            th.gamma_a = Some((0..n1).map(|s1| (0..m2).map(|y2| gb.get(&[s1, y2])).sum()).collect());
        }
    }
    th.gamma_c = Some(Tensor::zeros(&[m1, m2]));
    Ok(th)
}

/// Lift a jointly-encoded dual point to the Slepian-Wolf dual.
pub fn embed_je_feasible(inst: &SwInstance, pt: &DualPointJe) -> Result<DualPointSW> {
    require_feasible(check_dpje_feasible(inst, pt, INPUT_TOL)?)?;
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let (ls, ga) = (&pt.lambda_s, &pt.gamma_a);
    let mut th = DualPointSW::zeros(inst);
    th.lambda_s_12 =
        Tensor::from_fn(&[n1, n2, m2, m1, m2, n1, n2], |i| ls.get(&[i[0], i[1], i[5], i[6], i[3], i[4]]));
    th.lambda_c = pt.lambda_c.clone();
    th.mu_c_21 = Tensor::from_fn(&[m2, n1, n2], |i| ga.get(&[i[1], i[2]]));
    th.mu_s_2 = Tensor::from_fn(&[n2, n1, n2, m1, m2], |i| {
        (0..n1).map(|s1| ls.get(&[s1, i[0], i[1], i[2], i[3], i[4]])).sum()
    });
    th.gamma_a = Some(vec![0.0; n1]);
    th.gamma_b = Some((0..n2).map(|s2| (0..n1).map(|s1| ga.get(&[s1, s2])).sum()).collect());
    th.gamma_c = Some(pt.gamma_b.clone());
    Ok(th)
}

/// Combine a first-encoded and a second-encoded side-information point with
/// a jointly-encoded point, splitting the joint source flow `alpha : 1 - alpha`
/// between the two conditional source flows. Gammas are binding.
pub fn combine_feasible(
    inst: &SwInstance,
    sid12: &DualPointSid,
    sid21: &DualPointSid,
    je: &DualPointJe,
    alpha: f64,
) -> Result<DualPointSW> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {}", alpha)));
    }
    if sid12.side != Side::One || sid21.side != Side::Two {
        return Err(Error::InvalidArgument("side-information points must encode the first, then the second source".into()));
    }
    require_feasible(check_dpsi_feasible(inst, sid12, INPUT_TOL)?)?;
    require_feasible(check_dpsi_feasible(inst, sid21, INPUT_TOL)?)?;
    require_feasible(check_dpje_feasible(inst, je, INPUT_TOL)?)?;
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let (bar_s, bar_c, bar_b) = (&sid12.lambda_s, &sid12.lambda_c, &sid12.gamma_b);
    let (til_s, til_c, til_b) = (&sid21.lambda_s, &sid21.lambda_c, &sid21.gamma_b);
    let (hat_s, hat_c) = (&je.lambda_s, &je.lambda_c);
    let mut th = DualPointSW::zeros(inst);

    // i = [s1, s2, x2, y1, y2, r1, r2]
    th.lambda_s_12 = Tensor::from_fn(&[n1, n2, m2, m1, m2, n1, n2], |i| {
        if (i[0], i[1]) != (i[5], i[6]) {
            return 0.0;
        }
        let own = if i[2] == i[4] { bar_s.get(&[i[0], i[1], i[5], i[3]]) } else { 0.0 };
        own + alpha * hat_s.get(&[i[0], i[1], i[5], i[6], i[3], i[4]])
    });
    // i = [s1, s2, x1, y1, y2, r1, r2]
    th.lambda_s_21 = Tensor::from_fn(&[n1, n2, m1, m1, m2, n1, n2], |i| {
        if (i[0], i[1]) != (i[5], i[6]) {
            return 0.0;
        }
        let own = if i[2] == i[3] { til_s.get(&[i[1], i[0], i[6], i[4]]) } else { 0.0 };
        own + (1.0 - alpha) * hat_s.get(&[i[0], i[1], i[5], i[6], i[3], i[4]])
    });
    // i = [s1, s2, x1, x2, y1, y2]
    th.lambda_c = Tensor::from_fn(&[n1, n2, m1, m2, m1, m2], |i| {
        let (x1, x2, y1, y2) = (i[2], i[3], i[4], i[5]);
        let cap = if (x1, x2) == (y1, y2) { inst.p(i[0], i[1]) } else { 0.0 };
        let mut f = hat_c.get(i);
        if x2 == y2 {
            f += bar_c.get(&[i[0], i[1], x1, y1]);
        }
        if x1 == y1 {
            f += til_c.get(&[i[1], i[0], x2, y2]);
        }
        cap.min(f)
    });
    // i = [s2, r1, r2, y1, y2]
    th.mu_s_2 = Tensor::from_fn(&[n2, n1, n2, m1, m2], |i| {
        if i[0] == i[2] { alpha * hat_s.get(&[i[1], i[0], i[1], i[2], i[3], i[4]]) } else { 0.0 }
    });
    // i = [s1, r1, r2, y1, y2]
    th.mu_s_1 = Tensor::from_fn(&[n1, n1, n2, m1, m2], |i| {
        if i[0] == i[1] { (1.0 - alpha) * hat_s.get(&[i[0], i[2], i[1], i[2], i[3], i[4]]) } else { 0.0 }
    });
    // i = [s2, x2, y1, y2]
    th.mu_c_2 = Tensor::from_fn(&[n2, m2, m1, m2], |i| {
        if i[1] != i[3] {
            return 0.0;
        }
        let (s2, y1) = (i[0], i[2]);
        let mut best = if n2 >= 2 { 0.0 } else { f64::INFINITY };
        for r1 in 0..n1 {
            let others: f64 = (0..n1).filter(|&s1| s1 != r1).map(|s1| bar_s.get(&[s1, s2, r1, y1])).sum();
            best = best.min(bar_b.get(&[s2, y1]) - others);
        }
        best
    });
    // i = [s1, x1, y1, y2]
    th.mu_c_1 = Tensor::from_fn(&[n1, m1, m1, m2], |i| {
        if i[1] != i[2] {
            return 0.0;
        }
        let (s1, y2) = (i[0], i[3]);
        let mut best = if n1 >= 2 { 0.0 } else { f64::INFINITY };
        for r2 in 0..n2 {
            let others: f64 = (0..n2).filter(|&s2| s2 != r2).map(|s2| til_s.get(&[s2, s1, r2, y2])).sum();
            best = best.min(til_b.get(&[s1, y2]) - others);
        }
        best
    });
    let lc = &th.lambda_c;
    th.mu_c_21 = Tensor::from_fn(&[m2, n1, n2], |i| {
        (0..m1)
            .map(|x1| {
                let mut f = 0.0;
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        f += lc.get(&[i[1], i[2], x1, i[0], y1, y2]);
                    }
                }
                f
            })
            .fold(f64::INFINITY, f64::min)
    });
    Ok(th.with_binding_gammas(inst))
}

/// The full chain from three weights: side-information flows from `phi_12`
/// and `phi_21`, joint flows from `phi_hat`, combined at `alpha`.
pub fn weights_point(
    inst: &SwInstance,
    phi_hat: &[f64],
    phi_12: &[f64],
    phi_21: &[f64],
    alpha: f64,
) -> Result<DualPointSW> {
    let sid12 = DualPointSid::from_phi(inst, Side::One, phi_12);
    let sid21 = DualPointSid::from_phi(inst, Side::Two, phi_21);
    let je = DualPointJe::from_phi(inst, phi_hat);
    combine_feasible(inst, &sid12, &sid21, &je, alpha)
}

/// Dual point whose objective is the improved union bound at threshold `t`.
/// Gammas are left binding.
pub fn mk_flows(inst: &SwInstance, t: f64) -> Result<DualPointSW> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidArgument(format!("t must lie in (0, 1], got {}", t)));
    }
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let (fm1, fm2) = (m1 as f64, m2 as f64);
    let p1 = inst.joint.marginal(Axis::First);
    let p2 = inst.joint.marginal(Axis::Second);
    let mut th = DualPointSW::zeros(inst);
    th.lambda_s_12 = Tensor::from_fn(&[n1, n2, m2, m1, m2, n1, n2], |i| {
        if (i[0], i[1]) == (i[5], i[6]) && i[4] == i[2] { -p2.get(i[1]) * t / fm1 } else { 0.0 }
    });
    th.lambda_s_21 = Tensor::from_fn(&[n1, n2, m1, m1, m2, n1, n2], |i| {
        if (i[0], i[1]) != (i[5], i[6]) {
            return 0.0;
        }
        let own = if i[3] == i[2] { p1.get(i[0]) * t / fm2 } else { 0.0 };
        -(own + t / (fm1 * fm2))
    });
    let kept = |s1: usize, s2: usize| {
        let p = inst.p(s1, s2);
        let level = (p2.get(s2) * t / fm1).max(p1.get(s1) * t / fm2).max(t / (fm1 * fm2));
        if p <= level { p } else { 0.0 }
    };
    th.lambda_c = Tensor::from_fn(&[n1, n2, m1, m2, m1, m2], |i| {
        if (i[2], i[3]) == (i[4], i[5]) { kept(i[0], i[1]) } else { 0.0 }
    });
    th.mu_c_2 = Tensor::from_fn(&[n2, m2, m1, m2], |i| if i[3] == i[1] { -(t / fm1) * p2.get(i[0]) } else { 0.0 });
    th.mu_c_1 = Tensor::from_fn(&[n1, m1, m1, m2], |i| if i[2] == i[1] { -(t / fm2) * p1.get(i[0]) } else { 0.0 });
    th.mu_s_1 = Tensor::from_fn(&[n1, n1, n2, m1, m2], |i| if i[0] == i[1] { -t / (fm1 * fm2) } else { 0.0 });
    th.mu_c_21 = Tensor::from_fn(&[m2, n1, n2], |i| kept(i[1], i[2]));
    Ok(th)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probability::JointPmf;
    use crate::relaxations::{check_dpsw_feasible, dpsw_objective};

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    fn uniform22(m1: usize, m2: usize) -> SwInstance {
        SwInstance::new(JointPmf::uniform(2, 2), m1, m2).unwrap()
    }

    fn dsbs1() -> SwInstance {
        SwInstance::new(JointPmf::new(2, 2, vec![0.375, 0.125, 0.125, 0.375]).unwrap(), 1, 1).unwrap()
    }

    #[test]
    fn metaconverse_values() {
        close(meta_sw(&uniform22(1, 1)).unwrap().raw_value, 0.75);
        assert!(meta_sw(&uniform22(2, 2)).unwrap().raw_value <= 1e-9);
        let d = dsbs1();
        let v = meta_sw(&d).unwrap().raw_value;
        assert!(v >= 0.625 - 1e-9);
        assert!(v >= meta_sid(&d, Side::One).unwrap().raw_value - 1e-9);
        assert!(v >= meta_sid(&d, Side::Two).unwrap().raw_value - 1e-9);
    }

    #[test]
    fn fixed_weight_values() {
        let inst = dsbs1();
        let z = vec![0.0; 4];
        close(meta_sw_eta(&inst, &z, &z, &z).unwrap().raw_value, 0.0);
        let big = vec![1.0; 4];
        let p = inst.joint.mass().to_vec();
        close(meta_sw_eta(&inst, &big, &big, &big).unwrap().raw_value, sw_weights_objective(&inst, &p, &p, &p));
    }

    #[test]
    fn max_of_components() {
        let r = max_converse(&uniform22(1, 1)).unwrap();
        close(r.raw_value, 0.75);
        assert!(matches!(&r.witness, Witness::Component { name, .. } if name == "meta-je"));
        let diag = SwInstance::new(JointPmf::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap(), 1, 1).unwrap();
        close(max_converse(&diag).unwrap().raw_value, 0.5);
        let wide = uniform22(2, 1);
        close(max_converse(&wide).unwrap().raw_value, meta_sid(&wide, Side::Two).unwrap().raw_value);
    }

    #[test]
    fn union_bound_values() {
        let u = uniform22(1, 1);
        let r = mk_classic(&u).unwrap();
        close(r.raw_value, 0.25);
        assert_eq!(r.witness, Witness::Threshold { t: 0.25 });
        close(mk_improved(&u).unwrap().raw_value, 0.25);
        assert!(mk_classic(&uniform22(2, 2)).unwrap().raw_value <= 0.0);
        let point = SwInstance::new(JointPmf::new(1, 1, vec![1.0]).unwrap(), 1, 1).unwrap();
        assert!(mk_classic(&point).unwrap().clamped_value == 0.0);
        assert!(mk_improved(&point).unwrap().clamped_value == 0.0);
        let d = dsbs1();
        let (a, b, c) =
            (mk_classic(&d).unwrap().raw_value, mk_improved(&d).unwrap().raw_value, meta_sw(&d).unwrap().raw_value);
        assert!(a <= b + 1e-9 && b <= c + 1e-9, "{} {} {}", a, b, c);
    }

    #[test]
    fn embeddings_preserve_objectives() {
        let u = uniform22(1, 1);
        let p = u.joint.mass().to_vec();
        let je = DualPointJe::from_phi(&u, &p);
        let th = embed_je_feasible(&u, &je).unwrap();
        assert!(check_dpsw_feasible(&u, &th, 1e-12).unwrap().is_empty());
        close(dpsw_objective(&u, &th).unwrap(), 0.75);
        let phi = vec![0.25; 4];
        let sid = DualPointSid::from_phi(&u, Side::One, &phi);
        let th = embed_sid_feasible(&u, &sid).unwrap();
        assert!(check_dpsw_feasible(&u, &th, 1e-12).unwrap().is_empty());
        close(dpsw_objective(&u, &th).unwrap(), sid.objective());
        let zero = embed_je_feasible(&u, &DualPointJe::zeros(&u).with_binding_gammas(&u)).unwrap();
        assert_eq!(dpsw_objective(&u, &zero).unwrap(), 0.0);
    }

    #[test]
    fn infeasible_inputs_are_rejected() {
        let u = uniform22(1, 1);
        let mut sid = DualPointSid::zeros(&u, Side::One);
        sid.gamma_a[0] = 1.0;
        assert!(matches!(embed_sid_feasible(&u, &sid), Err(Error::InfeasibleInput { .. })));
    }

    #[test]
    fn combined_point_reaches_the_metaconverse() {
        let u = uniform22(1, 1);
        let r = meta_sw(&u).unwrap();
        let Witness::SwWeights { phi_hat, phi_12, phi_21 } = &r.witness else { panic!() };
        let th = weights_point(&u, phi_hat, phi_12, phi_21, 0.5).unwrap();
        assert!(check_dpsw_feasible(&u, &th, 1e-12).unwrap().is_empty());
        close(dpsw_objective(&u, &th).unwrap(), 0.75);
    }

    #[test]
    fn union_flows_are_feasible() {
        let u = uniform22(1, 1);
        let th = mk_flows(&u, 0.25).unwrap();
        assert!(check_dpsw_feasible(&u, &th, 1e-12).unwrap().is_empty());
        assert!(dpsw_objective(&u, &th).unwrap() >= 0.25 - 1e-9);
        let th = mk_flows(&u, 1.0 - 1e-12).unwrap();
        assert!(check_dpsw_feasible(&u, &th, 1e-12).unwrap().is_empty());
    }
}
