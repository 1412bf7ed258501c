use serde::Serialize;

use crate::error::{Error, Result};

use super::primal::{LpscLayout, LpsiLayout, LpswLayout, SwRowFamily};
use super::tensor::Tensor;
use super::{ConstraintId, ConstraintViolation, ScInstance, Side, SwInstance};

fn min_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::INFINITY, f64::min)
}

fn expect_dims(name: &str, t: &Tensor, dims: &[usize]) -> Result<()> {
    if t.dims() != dims {
        return Err(Error::ShapeMismatch(format!("{} has shape {:?}, expected {:?}", name, t.dims(), dims)));
    }
    Ok(())
}

struct Violations {
    tol: f64,
    out: Vec<ConstraintViolation>,
}

impl Violations {
    fn new(tol: f64) -> Self {
        Violations { tol, out: Vec::new() }
    }

    #[inline]
    fn le(&mut self, id: ConstraintId, index: &[usize], lhs: f64, rhs: f64) {
        let residual = lhs - rhs;
        if residual > self.tol || residual.is_nan() {
            self.out.push(ConstraintViolation { id, index: index.to_vec(), residual });
        }
    }
}

/// Dual point of the point-to-point relaxation.
///
/// `lambda_s(s, r, y)`, `lambda_c(s, x, y)`, `gamma_a(s)`, `gamma_b(y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPointDp {
    pub lambda_s: Tensor,
    pub lambda_c: Tensor,
    pub gamma_a: Vec<f64>,
    pub gamma_b: Vec<f64>,
}

impl DualPointDp {
    pub fn zeros(inst: &ScInstance) -> Self {
        let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
        DualPointDp {
            lambda_s: Tensor::zeros(&[ns, nr, m]),
            lambda_c: Tensor::zeros(&[ns, m, m]),
            gamma_a: vec![0.0; ns],
            gamma_b: vec![0.0; m],
        }
    }

    /// Flows induced by a weight `0 <= phi <= P`: channel flow `phi(s)` on
    /// matching symbols, source flow `-phi(s)` on admissible reconstructions.
    /// Gammas are set binding.
    pub fn from_phi(inst: &ScInstance, phi: &[f64]) -> Self {
        let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
        let lambda_c = Tensor::from_fn(&[ns, m, m], |i| if i[1] == i[2] { phi[i[0]] } else { 0.0 });
        let lambda_s =
            Tensor::from_fn(&[ns, nr, m], |i| if inst.distortion.covers(i[0], i[1]) { -phi[i[0]] } else { 0.0 });
        let mut pt = DualPointDp { lambda_s, lambda_c, gamma_a: Vec::new(), gamma_b: Vec::new() };
        let (a, b) = pt.binding_gammas(inst);
        pt.gamma_a = a;
        pt.gamma_b = b;
        pt
    }

    /// Read the point off solver multipliers of [`super::build_lp_sc`].
    pub fn from_lp_duals(inst: &ScInstance, dual: &[f64]) -> Self {
        let l = LpscLayout::new(inst);
        let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
        DualPointDp {
            lambda_s: Tensor::from_vec(&[ns, nr, m], dual[l.rec.offset..l.rec.end()].to_vec()).unwrap(),
            lambda_c: Tensor::from_vec(&[ns, m, m], dual[l.enc.offset..l.enc.end()].to_vec()).unwrap(),
            gamma_a: dual[l.norm_x.offset..l.norm_x.end()].to_vec(),
            gamma_b: dual[l.norm_r.offset..l.norm_r.end()].to_vec(),
        }
    }

    pub fn binding_gammas(&self, inst: &ScInstance) -> (Vec<f64>, Vec<f64>) {
        let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
        let a = (0..ns)
            .map(|s| min_of((0..m).map(|x| (0..m).map(|y| self.lambda_c.get(&[s, x, y])).sum())))
            .collect();
        let b = (0..m)
            .map(|y| min_of((0..nr).map(|r| (0..ns).map(|s| self.lambda_s.get(&[s, r, y])).sum())))
            .collect();
        (a, b)
    }

    pub fn objective(&self) -> f64 {
        self.gamma_a.iter().sum::<f64>() + self.gamma_b.iter().sum::<f64>()
    }

    fn check_shapes(&self, ns: usize, nr: usize, m: usize) -> Result<()> {
        expect_dims("lambda_s", &self.lambda_s, &[ns, nr, m])?;
        expect_dims("lambda_c", &self.lambda_c, &[ns, m, m])?;
        if self.gamma_a.len() != ns || self.gamma_b.len() != m {
            return Err(Error::ShapeMismatch("gamma lengths".into()));
        }
        Ok(())
    }
}

pub fn check_dp_feasible(inst: &ScInstance, pt: &DualPointDp, tol: f64) -> Result<Vec<ConstraintViolation>> {
    let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
    pt.check_shapes(ns, nr, m)?;
    let mut v = Violations::new(tol);
    for x in 0..m {
        for s in 0..ns {
            let flow: f64 = (0..m).map(|y| pt.lambda_c.get(&[s, x, y])).sum();
            v.le(ConstraintId::P1, &[x, s], pt.gamma_a[s] - flow, 0.0);
        }
    }
    for r in 0..nr {
        for y in 0..m {
            let flow: f64 = (0..ns).map(|s| pt.lambda_s.get(&[s, r, y])).sum();
            v.le(ConstraintId::P2, &[r, y], pt.gamma_b[y] - flow, 0.0);
        }
    }
    for s in 0..ns {
        for x in 0..m {
            for y in 0..m {
                for r in 0..nr {
                    let density =
                        if x == y && !inst.distortion.covers(s, r) { inst.source.get(s) } else { 0.0 };
                    let lhs = pt.lambda_s.get(&[s, r, y]) + pt.lambda_c.get(&[s, x, y]);
                    v.le(ConstraintId::P3, &[s, x, y, r], lhs, density);
                }
            }
        }
    }
    Ok(v.out)
}

/// Dual point of the jointly-encoded relaxation.
///
/// `lambda_s(s1,s2,r1,r2,y1,y2)`, `lambda_c(s1,s2,x1,x2,y1,y2)`,
/// `gamma_a(s1,s2)`, `gamma_b(y1,y2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPointJe {
    pub lambda_s: Tensor,
    pub lambda_c: Tensor,
    pub gamma_a: Tensor,
    pub gamma_b: Tensor,
}

impl DualPointJe {
    pub fn zeros(inst: &SwInstance) -> Self {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        DualPointJe {
            lambda_s: Tensor::zeros(&[n1, n2, n1, n2, m1, m2]),
            lambda_c: Tensor::zeros(&[n1, n2, m1, m2, m1, m2]),
            gamma_a: Tensor::zeros(&[n1, n2]),
            gamma_b: Tensor::zeros(&[m1, m2]),
        }
    }

    /// Flows induced by a joint weight `0 <= phi_hat <= P` (row-major over
    /// `(s1, s2)`), with binding gammas.
    pub fn from_phi(inst: &SwInstance, phi_hat: &[f64]) -> Self {
        Self::from_dp(inst, &DualPointDp::from_phi(&inst.jointly_encoded(), phi_hat))
    }

    pub fn from_dp(inst: &SwInstance, dp: &DualPointDp) -> Self {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        DualPointJe {
            lambda_s: dp.lambda_s.reshaped(&[n1, n2, n1, n2, m1, m2]).unwrap(),
            lambda_c: dp.lambda_c.reshaped(&[n1, n2, m1, m2, m1, m2]).unwrap(),
            gamma_a: Tensor::from_vec(&[n1, n2], dp.gamma_a.clone()).unwrap(),
            gamma_b: Tensor::from_vec(&[m1, m2], dp.gamma_b.clone()).unwrap(),
        }
    }

    pub fn to_dp(&self) -> DualPointDp {
        let ns = self.gamma_a.data().len();
        let m = self.gamma_b.data().len();
        DualPointDp {
            lambda_s: self.lambda_s.reshaped(&[ns, ns, m]).unwrap(),
            lambda_c: self.lambda_c.reshaped(&[ns, m, m]).unwrap(),
            gamma_a: self.gamma_a.data().to_vec(),
            gamma_b: self.gamma_b.data().to_vec(),
        }
    }

    pub fn objective(&self) -> f64 {
        self.gamma_a.sum() + self.gamma_b.sum()
    }

    pub fn with_binding_gammas(mut self, inst: &SwInstance) -> Self {
        let (a, b) = self.to_dp().binding_gammas(&inst.jointly_encoded());
        self.gamma_a = Tensor::from_vec(self.gamma_a.dims(), a).unwrap();
        self.gamma_b = Tensor::from_vec(self.gamma_b.dims(), b).unwrap();
        self
    }

    fn check_shapes(&self, inst: &SwInstance) -> Result<()> {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        expect_dims("lambda_s", &self.lambda_s, &[n1, n2, n1, n2, m1, m2])?;
        expect_dims("lambda_c", &self.lambda_c, &[n1, n2, m1, m2, m1, m2])?;
        expect_dims("gamma_a", &self.gamma_a, &[n1, n2])?;
        expect_dims("gamma_b", &self.gamma_b, &[m1, m2])
    }
}

/// Constraints reported with flattened indices, `s = s1 * n2 + s2`, `x = x1 * m2 + x2`.
pub fn check_dpje_feasible(inst: &SwInstance, pt: &DualPointJe, tol: f64) -> Result<Vec<ConstraintViolation>> {
    pt.check_shapes(inst)?;
    let mut out = check_dp_feasible(&inst.jointly_encoded(), &pt.to_dp(), tol)?;
    for v in &mut out {
        v.id = match v.id {
            ConstraintId::P1 => ConstraintId::A1,
            ConstraintId::P2 => ConstraintId::A2,
            _ => ConstraintId::A3,
        };
    }
    Ok(out)
}

/// Dual point of a side-information relaxation, in encoded-first order
/// (`e` encoded source, `o` side information).
///
/// `lambda_s(e, o, r, y)`, `lambda_c(e, o, x, y)`, `gamma_a(e)`, `gamma_b(o, y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPointSid {
    pub side: Side,
    pub lambda_s: Tensor,
    pub lambda_c: Tensor,
    pub gamma_a: Vec<f64>,
    pub gamma_b: Tensor,
}

fn oriented(inst: &SwInstance, side: Side) -> (SwInstance, usize, usize, usize) {
    let o = match side {
        Side::One => inst.clone(),
        Side::Two => inst.mirrored(),
    };
    let dims = (o.n1(), o.n2(), o.m1());
    (o, dims.0, dims.1, dims.2)
}

impl DualPointSid {
    pub fn zeros(inst: &SwInstance, side: Side) -> Self {
        let (_, ne, no, m) = oriented(inst, side);
        DualPointSid {
            side,
            lambda_s: Tensor::zeros(&[ne, no, ne, m]),
            lambda_c: Tensor::zeros(&[ne, no, m, m]),
            gamma_a: vec![0.0; ne],
            gamma_b: Tensor::zeros(&[no, m]),
        }
    }

    /// Flows induced by a weight `0 <= phi <= P` given row-major over the
    /// original `(s1, s2)` order; gammas binding.
    pub fn from_phi(inst: &SwInstance, side: Side, phi: &[f64]) -> Self {
        let (_, ne, no, m) = oriented(inst, side);
        let n2 = inst.n2();
        let w = |e: usize, o: usize| match side {
            Side::One => phi[e * n2 + o],
            Side::Two => phi[o * n2 + e],
        };
        let lambda_c = Tensor::from_fn(&[ne, no, m, m], |i| if i[2] == i[3] { w(i[0], i[1]) } else { 0.0 });
        let lambda_s = Tensor::from_fn(&[ne, no, ne, m], |i| if i[0] == i[2] { -w(i[0], i[1]) } else { 0.0 });
        let pt = DualPointSid {
            side,
            lambda_s,
            lambda_c,
            gamma_a: vec![0.0; ne],
            gamma_b: Tensor::zeros(&[no, m]),
        };
        pt.with_binding_gammas(inst)
    }

    pub fn from_lp_duals(inst: &SwInstance, side: Side, dual: &[f64]) -> Self {
        let l = LpsiLayout::for_instance(inst, side);
        let (_, ne, no, m) = oriented(inst, side);
        DualPointSid {
            side,
            lambda_s: Tensor::from_vec(&[ne, no, ne, m], dual[l.rec.offset..l.rec.end()].to_vec()).unwrap(),
            lambda_c: Tensor::from_vec(&[ne, no, m, m], dual[l.enc.offset..l.enc.end()].to_vec()).unwrap(),
            gamma_a: dual[l.norm_x.offset..l.norm_x.end()].to_vec(),
            gamma_b: Tensor::from_vec(&[no, m], dual[l.norm_r.offset..l.norm_r.end()].to_vec()).unwrap(),
        }
    }

    pub fn with_binding_gammas(mut self, inst: &SwInstance) -> Self {
        let (_, ne, no, m) = oriented(inst, self.side);
        self.gamma_a = (0..ne)
            .map(|e| {
                min_of((0..m).map(|x| {
                    let mut f = 0.0;
                    for o in 0..no {
                        for y in 0..m {
                            f += self.lambda_c.get(&[e, o, x, y]);
                        }
                    }
                    f
                }))
            })
            .collect();
        let lambda_s = &self.lambda_s;
        self.gamma_b = Tensor::from_fn(&[no, m], |i| {
            min_of((0..ne).map(|r| (0..ne).map(|e| lambda_s.get(&[e, i[0], r, i[1]])).sum()))
        });
        self
    }

    pub fn objective(&self) -> f64 {
        self.gamma_a.iter().sum::<f64>() + self.gamma_b.sum()
    }

    fn check_shapes(&self, ne: usize, no: usize, m: usize) -> Result<()> {
        expect_dims("lambda_s", &self.lambda_s, &[ne, no, ne, m])?;
        expect_dims("lambda_c", &self.lambda_c, &[ne, no, m, m])?;
        expect_dims("gamma_b", &self.gamma_b, &[no, m])?;
        if self.gamma_a.len() != ne {
            return Err(Error::ShapeMismatch("gamma_a length".into()));
        }
        Ok(())
    }
}

pub fn check_dpsi_feasible(inst: &SwInstance, pt: &DualPointSid, tol: f64) -> Result<Vec<ConstraintViolation>> {
    let (o_inst, ne, no, m) = oriented(inst, pt.side);
    pt.check_shapes(ne, no, m)?;
    let ids = match pt.side {
        Side::One => [ConstraintId::B1, ConstraintId::B2, ConstraintId::B3],
        Side::Two => [ConstraintId::C1, ConstraintId::C2, ConstraintId::C3],
    };
    let mut v = Violations::new(tol);
    for x in 0..m {
        for e in 0..ne {
            let mut flow = 0.0;
            for o in 0..no {
                for y in 0..m {
                    flow += pt.lambda_c.get(&[e, o, x, y]);
                }
            }
            v.le(ids[0], &[x, e], pt.gamma_a[e] - flow, 0.0);
        }
    }
    for o in 0..no {
        for r in 0..ne {
            for y in 0..m {
                let flow: f64 = (0..ne).map(|e| pt.lambda_s.get(&[e, o, r, y])).sum();
                v.le(ids[1], &[o, r, y], pt.gamma_b.get(&[o, y]) - flow, 0.0);
            }
        }
    }
    for e in 0..ne {
        for o in 0..no {
            for x in 0..m {
                for y in 0..m {
                    for r in 0..ne {
                        let density = if x == y && e != r { o_inst.p(e, o) } else { 0.0 };
                        let lhs = pt.lambda_s.get(&[e, o, r, y]) + pt.lambda_c.get(&[e, o, x, y]);
                        v.le(ids[2], &[e, o, x, y, r], lhs, density);
                    }
                }
            }
        }
    }
    Ok(v.out)
}

/// Full dual point of the Slepian-Wolf relaxation.
///
/// Shapes (`r` are reconstructions):
/// `lambda_s_12(s1,s2,x2,y1,y2,r1,r2)`, `lambda_s_21(s1,s2,x1,y1,y2,r1,r2)`,
/// `lambda_c(s1,s2,x1,x2,y1,y2)`, `mu_s_1(s1,r1,r2,y1,y2)`,
/// `mu_s_2(s2,r1,r2,y1,y2)`, `mu_c_1(s1,x1,y1,y2)`, `mu_c_2(s2,x2,y1,y2)`,
/// `mu_c_12(x1,s1,s2)`, `mu_c_21(x2,s1,s2)`, `gamma_a(s1)`, `gamma_b(s2)`,
/// `gamma_c(y1,y2)`. Absent gammas are taken binding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPointSW {
    pub lambda_s_12: Tensor,
    pub lambda_s_21: Tensor,
    pub lambda_c: Tensor,
    pub mu_s_1: Tensor,
    pub mu_s_2: Tensor,
    pub mu_c_1: Tensor,
    pub mu_c_2: Tensor,
    pub mu_c_12: Tensor,
    pub mu_c_21: Tensor,
    pub gamma_a: Option<Vec<f64>>,
    pub gamma_b: Option<Vec<f64>>,
    pub gamma_c: Option<Tensor>,
}

struct Gammas {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Tensor,
}

impl DualPointSW {
    pub fn zeros(inst: &SwInstance) -> Self {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        DualPointSW {
            lambda_s_12: Tensor::zeros(&[n1, n2, m2, m1, m2, n1, n2]),
            lambda_s_21: Tensor::zeros(&[n1, n2, m1, m1, m2, n1, n2]),
            lambda_c: Tensor::zeros(&[n1, n2, m1, m2, m1, m2]),
            mu_s_1: Tensor::zeros(&[n1, n1, n2, m1, m2]),
            mu_s_2: Tensor::zeros(&[n2, n1, n2, m1, m2]),
            mu_c_1: Tensor::zeros(&[n1, m1, m1, m2]),
            mu_c_2: Tensor::zeros(&[n2, m2, m1, m2]),
            mu_c_12: Tensor::zeros(&[m1, n1, n2]),
            mu_c_21: Tensor::zeros(&[m2, n1, n2]),
            gamma_a: None,
            gamma_b: None,
            gamma_c: None,
        }
    }

    /// Read the point off solver multipliers of [`super::build_lp_sw`].
    pub fn from_lp_duals(inst: &SwInstance, dual: &[f64]) -> Self {
        use SwRowFamily::*;
        let l = LpswLayout::new(inst);
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        let take = |f: SwRowFamily| {
            let b = l.row(f);
            Tensor::from_vec(&LpswLayout::row_dims(f, n1, n2, m1, m2), dual[b.offset..b.end()].to_vec()).unwrap()
        };
        DualPointSW {
            lambda_s_12: take(LambdaS12),
            lambda_s_21: take(LambdaS21),
            lambda_c: take(LambdaC),
            mu_s_1: take(MuS1),
            mu_s_2: take(MuS2),
            mu_c_1: take(MuC1),
            mu_c_2: take(MuC2),
            mu_c_12: take(MuC12),
            mu_c_21: take(MuC21),
            gamma_a: Some(take(GammaA).data().to_vec()),
            gamma_b: Some(take(GammaB).data().to_vec()),
            gamma_c: Some(take(GammaC)),
        }
    }

    pub fn check_shapes(&self, inst: &SwInstance) -> Result<()> {
        let z = DualPointSW::zeros(inst);
        expect_dims("lambda_s_12", &self.lambda_s_12, z.lambda_s_12.dims())?;
        expect_dims("lambda_s_21", &self.lambda_s_21, z.lambda_s_21.dims())?;
        expect_dims("lambda_c", &self.lambda_c, z.lambda_c.dims())?;
        expect_dims("mu_s_1", &self.mu_s_1, z.mu_s_1.dims())?;
        expect_dims("mu_s_2", &self.mu_s_2, z.mu_s_2.dims())?;
        expect_dims("mu_c_1", &self.mu_c_1, z.mu_c_1.dims())?;
        expect_dims("mu_c_2", &self.mu_c_2, z.mu_c_2.dims())?;
        expect_dims("mu_c_12", &self.mu_c_12, z.mu_c_12.dims())?;
        expect_dims("mu_c_21", &self.mu_c_21, z.mu_c_21.dims())?;
        if self.gamma_a.as_ref().is_some_and(|g| g.len() != inst.n1())
            || self.gamma_b.as_ref().is_some_and(|g| g.len() != inst.n2())
        {
            return Err(Error::ShapeMismatch("gamma lengths".into()));
        }
        if let Some(g) = &self.gamma_c {
            expect_dims("gamma_c", g, &[inst.m1(), inst.m2()])?;
        }
        Ok(())
    }

    /// Largest gammas allowed by the three normalization constraints.
    fn binding(&self, inst: &SwInstance) -> Gammas {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        let a = (0..n1)
            .map(|s1| {
                min_of((0..m1).map(|x1| {
                    let mut f = 0.0;
                    for y1 in 0..m1 {
                        for y2 in 0..m2 {
                            f += self.mu_c_1.get(&[s1, x1, y1, y2]);
                        }
                    }
                    f + (0..n2).map(|s2| self.mu_c_12.get(&[x1, s1, s2])).sum::<f64>()
                }))
            })
            .collect();
        let b = (0..n2)
            .map(|s2| {
                min_of((0..m2).map(|x2| {
                    let mut f = 0.0;
                    for y1 in 0..m1 {
                        for y2 in 0..m2 {
                            f += self.mu_c_2.get(&[s2, x2, y1, y2]);
                        }
                    }
                    f + (0..n1).map(|s1| self.mu_c_21.get(&[x2, s1, s2])).sum::<f64>()
                }))
            })
            .collect();
        let c = Tensor::from_fn(&[m1, m2], |y| {
            let mut best = f64::INFINITY;
            for r1 in 0..n1 {
                for r2 in 0..n2 {
                    let f: f64 = (0..n2).map(|s2| self.mu_s_2.get(&[s2, r1, r2, y[0], y[1]])).sum::<f64>()
                        + (0..n1).map(|s1| self.mu_s_1.get(&[s1, r1, r2, y[0], y[1]])).sum::<f64>();
                    best = best.min(f);
                }
            }
            best
        });
        Gammas { a, b, c }
    }

    /// Replace every gamma by its binding value.
    pub fn with_binding_gammas(mut self, inst: &SwInstance) -> Self {
        let g = self.binding(inst);
        self.gamma_a = Some(g.a);
        self.gamma_b = Some(g.b);
        self.gamma_c = Some(g.c);
        self
    }

    /// Objective with the stored gammas; absent ones count as binding.
    pub fn stated_objective(&self, inst: &SwInstance) -> f64 {
        let g = self.binding(inst);
        let a: f64 = self.gamma_a.as_ref().unwrap_or(&g.a).iter().sum();
        let b: f64 = self.gamma_b.as_ref().unwrap_or(&g.b).iter().sum();
        let c: f64 = self.gamma_c.as_ref().unwrap_or(&g.c).sum();
        a + b + c
    }
}

/// Lower bound on the relaxation value from the flows of `theta`, with every
/// gamma at its binding minimum.
pub fn dpsw_objective(inst: &SwInstance, theta: &DualPointSW) -> Result<f64> {
    theta.check_shapes(inst)?;
    let g = theta.binding(inst);
    Ok(g.a.iter().sum::<f64>() + g.b.iter().sum::<f64>() + g.c.sum())
}

pub fn check_dpsw_feasible(inst: &SwInstance, theta: &DualPointSW, tol: f64) -> Result<Vec<ConstraintViolation>> {
    use ConstraintId::*;
    theta.check_shapes(inst)?;
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let t = theta;
    let mut v = Violations::new(tol);
    if let Some(ga) = &t.gamma_a {
        for x1 in 0..m1 {
            for s1 in 0..n1 {
                let mut f = 0.0;
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        f += t.mu_c_1.get(&[s1, x1, y1, y2]);
                    }
                }
                f += (0..n2).map(|s2| t.mu_c_12.get(&[x1, s1, s2])).sum::<f64>();
                v.le(D1, &[x1, s1], ga[s1] - f, 0.0);
            }
        }
    }
    if let Some(gb) = &t.gamma_b {
        for x2 in 0..m2 {
            for s2 in 0..n2 {
                let mut f = 0.0;
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        f += t.mu_c_2.get(&[s2, x2, y1, y2]);
                    }
                }
                f += (0..n1).map(|s1| t.mu_c_21.get(&[x2, s1, s2])).sum::<f64>();
                v.le(D2, &[x2, s2], gb[s2] - f, 0.0);
            }
        }
    }
    if let Some(gc) = &t.gamma_c {
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        let f: f64 = (0..n2).map(|s2| t.mu_s_2.get(&[s2, r1, r2, y1, y2])).sum::<f64>()
                            + (0..n1).map(|s1| t.mu_s_1.get(&[s1, r1, r2, y1, y2])).sum::<f64>();
                        v.le(D3, &[r1, r2, y1, y2], gc.get(&[y1, y2]) - f, 0.0);
                    }
                }
            }
        }
    }
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            for x1 in 0..m1 {
                for x2 in 0..m2 {
                    for y1 in 0..m1 {
                        for y2 in 0..m2 {
                            let lc = t.lambda_c.get(&[s1, s2, x1, x2, y1, y2]);
                            for r1 in 0..n1 {
                                for r2 in 0..n2 {
                                    let density = if x1 == y1 && x2 == y2 && (s1, s2) != (r1, r2) {
                                        inst.p(s1, s2)
                                    } else {
                                        0.0
                                    };
                                    let lhs = t.lambda_s_12.get(&[s1, s2, x2, y1, y2, r1, r2])
                                        + t.lambda_s_21.get(&[s1, s2, x1, y1, y2, r1, r2])
                                        + lc;
                                    v.le(D4, &[s1, s2, x1, x2, y1, y2, r1, r2], lhs, density);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for s2 in 0..n2 {
        for x2 in 0..m2 {
            for y1 in 0..m1 {
                for y2 in 0..m2 {
                    let mc = t.mu_c_2.get(&[s2, x2, y1, y2]);
                    for r1 in 0..n1 {
                        for r2 in 0..n2 {
                            let inflow: f64 =
                                (0..n1).map(|s1| t.lambda_s_12.get(&[s1, s2, x2, y1, y2, r1, r2])).sum();
                            let lhs = t.mu_s_2.get(&[s2, r1, r2, y1, y2]) + mc - inflow;
                            v.le(D5, &[s2, x2, y1, y2, r1, r2], lhs, 0.0);
                        }
                    }
                }
            }
        }
    }
    for s1 in 0..n1 {
        for x1 in 0..m1 {
            for y1 in 0..m1 {
                for y2 in 0..m2 {
                    let mc = t.mu_c_1.get(&[s1, x1, y1, y2]);
                    for r1 in 0..n1 {
                        for r2 in 0..n2 {
                            let inflow: f64 =
                                (0..n2).map(|s2| t.lambda_s_21.get(&[s1, s2, x1, y1, y2, r1, r2])).sum();
                            let lhs = t.mu_s_1.get(&[s1, r1, r2, y1, y2]) + mc - inflow;
                            v.le(D6, &[s1, x1, y1, y2, r1, r2], lhs, 0.0);
                        }
                    }
                }
            }
        }
    }
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            for x1 in 0..m1 {
                for x2 in 0..m2 {
                    let mut flow = 0.0;
                    for y1 in 0..m1 {
                        for y2 in 0..m2 {
                            flow += t.lambda_c.get(&[s1, s2, x1, x2, y1, y2]);
                        }
                    }
                    let lhs = t.mu_c_21.get(&[x2, s1, s2]) + t.mu_c_12.get(&[x1, s1, s2]) - flow;
                    v.le(D7, &[s1, s2, x1, x2], lhs, 0.0);
                }
            }
        }
    }
    Ok(v.out)
}
