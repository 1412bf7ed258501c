use crate::error::{Error, Result};
use crate::lp::{LpModel, Relation, Sense};

use super::tensor::Shape;
use super::{ScInstance, Side, SwInstance};

/// A contiguous run of LP variables or rows sharing one index shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub offset: usize,
    pub shape: Shape,
}

impl Block {
    #[inline]
    pub fn at(&self, idx: &[usize]) -> usize {
        self.offset + self.shape.at(idx)
    }

    pub fn end(&self) -> usize {
        self.offset + self.shape.len()
    }
}

struct Alloc(usize);

impl Alloc {
    fn take(&mut self, dims: &[usize]) -> Block {
        let b = Block { offset: self.0, shape: Shape::new(dims) };
        self.0 = b.end();
        b
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::InstanceTooLarge { size: n, cap })
    } else {
        Ok(())
    }
}

fn add_block(model: &mut LpModel, name: &str, b: &Block, cost: impl Fn(&[usize]) -> f64) {
    b.shape.for_each(|i| {
        model.add_var(format!("{}{:?}", name, i), 0.0, f64::INFINITY, cost(i));
    });
}

/// Variables and rows of the relaxation of point-to-point source coding.
///
/// Variables: `qx(s, x)`, `qr(y, r)`, `w(s, x, y, r)`.
/// Rows: `norm_x(s)`, `norm_r(y)`, `rec(s, r, y)`, `enc(s, x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpscLayout {
    pub qx: Block,
    pub qr: Block,
    pub w: Block,
    pub norm_x: Block,
    pub norm_r: Block,
    pub rec: Block,
    pub enc: Block,
}

impl LpscLayout {
    pub fn new(inst: &ScInstance) -> Self {
        let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
        let mut v = Alloc(0);
        let qx = v.take(&[ns, m]);
        let qr = v.take(&[m, nr]);
        let w = v.take(&[ns, m, m, nr]);
        let mut r = Alloc(0);
        let norm_x = r.take(&[ns]);
        let norm_r = r.take(&[m]);
        let rec = r.take(&[ns, nr, m]);
        let enc = r.take(&[ns, m, m]);
        LpscLayout { qx, qr, w, norm_x, norm_r, rec, enc }
    }

    pub fn num_vars(&self) -> usize {
        self.w.end()
    }

    pub fn num_rows(&self) -> usize {
        self.enc.end()
    }
}

pub fn build_lp_sc(inst: &ScInstance, cap: usize) -> Result<LpModel> {
    let l = LpscLayout::new(inst);
    check_cap(l.num_vars(), cap)?;
    let (ns, nr, m) = (inst.n_src(), inst.n_rec(), inst.m);
    let mut model = LpModel::new(Sense::Minimize);
    add_block(&mut model, "qx", &l.qx, |_| 0.0);
    add_block(&mut model, "qr", &l.qr, |_| 0.0);
    add_block(&mut model, "w", &l.w, |i| {
        let (s, x, y, r) = (i[0], i[1], i[2], i[3]);
        if x == y && !inst.distortion.covers(s, r) {
            inst.source.get(s)
        } else {
            0.0
        }
    });
    for s in 0..ns {
        let t: Vec<_> = (0..m).map(|x| (l.qx.at(&[s, x]), 1.0)).collect();
        model.add_constraint(&t, Relation::Eq, 1.0);
    }
    for y in 0..m {
        let t: Vec<_> = (0..nr).map(|r| (l.qr.at(&[y, r]), 1.0)).collect();
        model.add_constraint(&t, Relation::Eq, 1.0);
    }
    l.rec.shape.for_each(|i| {
        let (s, r, y) = (i[0], i[1], i[2]);
        let mut t: Vec<_> = (0..m).map(|x| (l.w.at(&[s, x, y, r]), 1.0)).collect();
        t.push((l.qr.at(&[y, r]), -1.0));
        model.add_constraint(&t, Relation::Eq, 0.0);
    });
    l.enc.shape.for_each(|i| {
        let (s, x, y) = (i[0], i[1], i[2]);
        let mut t: Vec<_> = (0..nr).map(|r| (l.w.at(&[s, x, y, r]), 1.0)).collect();
        t.push((l.qx.at(&[s, x]), -1.0));
        model.add_constraint(&t, Relation::Eq, 0.0);
    });
    Ok(model)
}

/// The relaxation for the pair coded jointly with `m1 * m2` messages. Indices
/// flatten row-major, so `s = s1 * n2 + s2` and `x = x1 * m2 + x2`.
pub fn build_lp_je(inst: &SwInstance, cap: usize) -> Result<LpModel> {
    build_lp_sc(&inst.jointly_encoded(), cap)
}

/// Variables and rows of the side-information relaxation, in encoded-first
/// order: `e` is the encoded source, `o` the side information.
///
/// Variables: `qx(e, x)`, `qr(y, o, r)`, `w(e, o, x, y, r)`.
/// Rows: `norm_x(e)`, `norm_r(o, y)`, `rec(e, o, r, y)`, `enc(e, o, x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpsiLayout {
    pub qx: Block,
    pub qr: Block,
    pub w: Block,
    pub norm_x: Block,
    pub norm_r: Block,
    pub rec: Block,
    pub enc: Block,
}

impl LpsiLayout {
    /// `ne`, `no`: alphabet sizes of encoded and side source; `m`: code size.
    pub fn new(ne: usize, no: usize, m: usize) -> Self {
        let mut v = Alloc(0);
        let qx = v.take(&[ne, m]);
        let qr = v.take(&[m, no, ne]);
        let w = v.take(&[ne, no, m, m, ne]);
        let mut r = Alloc(0);
        let norm_x = r.take(&[ne]);
        let norm_r = r.take(&[no, m]);
        let rec = r.take(&[ne, no, ne, m]);
        let enc = r.take(&[ne, no, m, m]);
        LpsiLayout { qx, qr, w, norm_x, norm_r, rec, enc }
    }

    pub fn for_instance(inst: &SwInstance, side: Side) -> Self {
        match side {
            Side::One => LpsiLayout::new(inst.n1(), inst.n2(), inst.m1()),
            Side::Two => LpsiLayout::new(inst.n2(), inst.n1(), inst.m2()),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.w.end()
    }
}

pub fn build_lpsi(inst: &SwInstance, side: Side, cap: usize) -> Result<LpModel> {
    let oriented = match side {
        Side::One => inst.clone(),
        Side::Two => inst.mirrored(),
    };
    let (ne, no, m) = (oriented.n1(), oriented.n2(), oriented.m1());
    let l = LpsiLayout::new(ne, no, m);
    check_cap(l.num_vars(), cap)?;
    let mut model = LpModel::new(Sense::Minimize);
    add_block(&mut model, "qx", &l.qx, |_| 0.0);
    add_block(&mut model, "qr", &l.qr, |_| 0.0);
    add_block(&mut model, "w", &l.w, |i| {
        let (e, o, x, y, r) = (i[0], i[1], i[2], i[3], i[4]);
        if x == y && e != r {
            oriented.p(e, o)
        } else {
            0.0
        }
    });
    for e in 0..ne {
        let t: Vec<_> = (0..m).map(|x| (l.qx.at(&[e, x]), 1.0)).collect();
        model.add_constraint(&t, Relation::Eq, 1.0);
    }
    l.norm_r.shape.for_each(|i| {
        let (o, y) = (i[0], i[1]);
        let t: Vec<_> = (0..ne).map(|r| (l.qr.at(&[y, o, r]), 1.0)).collect();
        model.add_constraint(&t, Relation::Eq, 1.0);
    });
    l.rec.shape.for_each(|i| {
        let (e, o, r, y) = (i[0], i[1], i[2], i[3]);
        let mut t: Vec<_> = (0..m).map(|x| (l.w.at(&[e, o, x, y, r]), 1.0)).collect();
        t.push((l.qr.at(&[y, o, r]), -1.0));
        model.add_constraint(&t, Relation::Eq, 0.0);
    });
    l.enc.shape.for_each(|i| {
        let (e, o, x, y) = (i[0], i[1], i[2], i[3]);
        let mut t: Vec<_> = (0..ne).map(|r| (l.w.at(&[e, o, x, y, r]), 1.0)).collect();
        t.push((l.qx.at(&[e, x]), -1.0));
        model.add_constraint(&t, Relation::Eq, 0.0);
    });
    Ok(model)
}

/// The twelve row families of the Slepian-Wolf relaxation, in build order.
/// Each is named by the dual variable it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwRowFamily {
    GammaA,
    GammaB,
    GammaC,
    MuC21,
    MuS1,
    LambdaS12,
    MuC12,
    MuS2,
    LambdaS21,
    LambdaC,
    MuC2,
    MuC1,
}

impl SwRowFamily {
    pub const ALL: [SwRowFamily; 12] = [
        SwRowFamily::GammaA,
        SwRowFamily::GammaB,
        SwRowFamily::GammaC,
        SwRowFamily::MuC21,
        SwRowFamily::MuS1,
        SwRowFamily::LambdaS12,
        SwRowFamily::MuC12,
        SwRowFamily::MuS2,
        SwRowFamily::LambdaS21,
        SwRowFamily::LambdaC,
        SwRowFamily::MuC2,
        SwRowFamily::MuC1,
    ];
}

/// Variables and rows of the Slepian-Wolf relaxation.
///
/// Variable shapes: `w(s1,s2,x1,x2,y1,y2,r1,r2)`, `u(s1,x1,y1,y2,r1,r2)`,
/// `v(s2,x2,y1,y2,r1,r2)`, `t(s1,s2,x1,x2)`, `q1(s1,x1)`, `q2(s2,x2)`,
/// `qr(y1,y2,r1,r2)`. Row shapes match the dual tensors of [`super::DualPointSW`].
#[derive(Debug, Clone, PartialEq)]
pub struct LpswLayout {
    pub w: Block,
    pub u: Block,
    pub v: Block,
    pub t: Block,
    pub q1: Block,
    pub q2: Block,
    pub qr: Block,
    pub rows: Vec<Block>,
}

impl LpswLayout {
    pub fn new(inst: &SwInstance) -> Self {
        let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
        let mut v = Alloc(0);
        let w = v.take(&[n1, n2, m1, m2, m1, m2, n1, n2]);
        let u = v.take(&[n1, m1, m1, m2, n1, n2]);
        let vv = v.take(&[n2, m2, m1, m2, n1, n2]);
        let t = v.take(&[n1, n2, m1, m2]);
        let q1 = v.take(&[n1, m1]);
        let q2 = v.take(&[n2, m2]);
        let qr = v.take(&[m1, m2, n1, n2]);
        let mut r = Alloc(0);
        let rows = SwRowFamily::ALL
            .iter()
            .map(|f| r.take(&Self::row_dims(*f, n1, n2, m1, m2)))
            .collect();
        LpswLayout { w, u, v: vv, t, q1, q2, qr, rows }
    }

    pub fn row_dims(f: SwRowFamily, n1: usize, n2: usize, m1: usize, m2: usize) -> Vec<usize> {
        use SwRowFamily::*;
        match f {
            GammaA => vec![n1],
            GammaB => vec![n2],
            GammaC => vec![m1, m2],
            MuC21 => vec![m2, n1, n2],
            MuS1 => vec![n1, n1, n2, m1, m2],
            LambdaS12 => vec![n1, n2, m2, m1, m2, n1, n2],
            MuC12 => vec![m1, n1, n2],
            MuS2 => vec![n2, n1, n2, m1, m2],
            LambdaS21 => vec![n1, n2, m1, m1, m2, n1, n2],
            LambdaC => vec![n1, n2, m1, m2, m1, m2],
            MuC2 => vec![n2, m2, m1, m2],
            MuC1 => vec![n1, m1, m1, m2],
        }
    }

    pub fn row(&self, f: SwRowFamily) -> &Block {
        &self.rows[f as usize]
    }

    pub fn num_vars(&self) -> usize {
        self.qr.end()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.last().map_or(0, |b| b.end())
    }
}

pub fn build_lp_sw(inst: &SwInstance, cap: usize) -> Result<LpModel> {
    use SwRowFamily::*;
    let l = LpswLayout::new(inst);
    check_cap(l.num_vars(), cap)?;
    let (n1, n2, m1, m2) = (inst.n1(), inst.n2(), inst.m1(), inst.m2());
    let mut model = LpModel::new(Sense::Minimize);
    add_block(&mut model, "w", &l.w, |i| {
        let (s1, s2, x1, x2, y1, y2, r1, r2) = (i[0], i[1], i[2], i[3], i[4], i[5], i[6], i[7]);
        if x1 == y1 && x2 == y2 && (s1, s2) != (r1, r2) {
            inst.p(s1, s2)
        } else {
            0.0
        }
    });
    for (name, b) in [("u", &l.u), ("v", &l.v), ("t", &l.t), ("q1", &l.q1), ("q2", &l.q2), ("qr", &l.qr)] {
        add_block(&mut model, name, b, |_| 0.0);
    }
    let mut row = |terms: Vec<(usize, f64)>, rhs: f64| {
        model.add_constraint(&terms, Relation::Eq, rhs);
    };
    l.row(GammaA).shape.for_each(|i| {
        row((0..m1).map(|x1| (l.q1.at(&[i[0], x1]), 1.0)).collect(), 1.0);
    });
    l.row(GammaB).shape.for_each(|i| {
        row((0..m2).map(|x2| (l.q2.at(&[i[0], x2]), 1.0)).collect(), 1.0);
    });
    l.row(GammaC).shape.for_each(|i| {
        let mut t = Vec::new();
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                t.push((l.qr.at(&[i[0], i[1], r1, r2]), 1.0));
            }
        }
        row(t, 1.0);
    });
    l.row(MuC21).shape.for_each(|i| {
        let (x2, s1, s2) = (i[0], i[1], i[2]);
        let mut t: Vec<_> = (0..m1).map(|x1| (l.t.at(&[s1, s2, x1, x2]), 1.0)).collect();
        t.push((l.q2.at(&[s2, x2]), -1.0));
        row(t, 0.0);
    });
    l.row(MuS1).shape.for_each(|i| {
        let (s1, r1, r2, y1, y2) = (i[0], i[1], i[2], i[3], i[4]);
        let mut t: Vec<_> = (0..m1).map(|x1| (l.u.at(&[s1, x1, y1, y2, r1, r2]), 1.0)).collect();
        t.push((l.qr.at(&[y1, y2, r1, r2]), -1.0));
        row(t, 0.0);
    });
    l.row(LambdaS12).shape.for_each(|i| {
        let (s1, s2, x2, y1, y2, r1, r2) = (i[0], i[1], i[2], i[3], i[4], i[5], i[6]);
        let mut t: Vec<_> = (0..m1).map(|x1| (l.w.at(&[s1, s2, x1, x2, y1, y2, r1, r2]), 1.0)).collect();
        t.push((l.v.at(&[s2, x2, y1, y2, r1, r2]), -1.0));
        row(t, 0.0);
    });
    l.row(MuC12).shape.for_each(|i| {
        let (x1, s1, s2) = (i[0], i[1], i[2]);
        let mut t: Vec<_> = (0..m2).map(|x2| (l.t.at(&[s1, s2, x1, x2]), 1.0)).collect();
        t.push((l.q1.at(&[s1, x1]), -1.0));
        row(t, 0.0);
    });
    l.row(MuS2).shape.for_each(|i| {
        let (s2, r1, r2, y1, y2) = (i[0], i[1], i[2], i[3], i[4]);
        let mut t: Vec<_> = (0..m2).map(|x2| (l.v.at(&[s2, x2, y1, y2, r1, r2]), 1.0)).collect();
        t.push((l.qr.at(&[y1, y2, r1, r2]), -1.0));
        row(t, 0.0);
    });
    l.row(LambdaS21).shape.for_each(|i| {
        let (s1, s2, x1, y1, y2, r1, r2) = (i[0], i[1], i[2], i[3], i[4], i[5], i[6]);
        let mut t: Vec<_> = (0..m2).map(|x2| (l.w.at(&[s1, s2, x1, x2, y1, y2, r1, r2]), 1.0)).collect();
        t.push((l.u.at(&[s1, x1, y1, y2, r1, r2]), -1.0));
        row(t, 0.0);
    });
    l.row(LambdaC).shape.for_each(|i| {
        let (s1, s2, x1, x2, y1, y2) = (i[0], i[1], i[2], i[3], i[4], i[5]);
        let mut t = Vec::new();
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                t.push((l.w.at(&[s1, s2, x1, x2, y1, y2, r1, r2]), 1.0));
            }
        }
        t.push((l.t.at(&[s1, s2, x1, x2]), -1.0));
        row(t, 0.0);
    });
    l.row(MuC2).shape.for_each(|i| {
        let (s2, x2, y1, y2) = (i[0], i[1], i[2], i[3]);
        let mut t = Vec::new();
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                t.push((l.v.at(&[s2, x2, y1, y2, r1, r2]), 1.0));
            }
        }
        t.push((l.q2.at(&[s2, x2]), -1.0));
        row(t, 0.0);
    });
    l.row(MuC1).shape.for_each(|i| {
        let (s1, x1, y1, y2) = (i[0], i[1], i[2], i[3]);
        let mut t = Vec::new();
        for r1 in 0..n1 {
            for r2 in 0..n2 {
                t.push((l.u.at(&[s1, x1, y1, y2, r1, r2]), 1.0));
            }
        }
        t.push((l.q1.at(&[s1, x1]), -1.0));
        row(t, 0.0);
    });
    debug_assert_eq!(model.num_constraints(), l.num_rows());
    Ok(model)
}
