//! Dense linear programs, a two-phase revised simplex solver and textbook
//! dualization.
//!
//! The solver converts to the internal form `min c'x, A'x = b', x >= 0` with
//! `b' >= 0`, one slack or artificial column per row. The basis inverse is kept
//! in product form (one sparse eta factor per pivot) and refactorized every
//! few pivots and at the end of each phase, so returned points do not carry
//! drift.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub rel: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(f64, f64)>,
    pub names: Vec<String>,
}

impl LpModel {
    pub fn new(sense: Sense) -> Self {
        LpModel {
            sense,
            objective: Vec::new(),
            constraints: Vec::new(),
            bounds: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Append a variable; existing rows get a zero coefficient for it.
    pub fn add_var(&mut self, name: impl Into<String>, lower: f64, upper: f64, cost: f64) -> usize {
        self.objective.push(cost);
        self.bounds.push((lower, upper));
        self.names.push(name.into());
        for c in &mut self.constraints {
            c.coeffs.push(0.0);
        }
        self.objective.len() - 1
    }

    /// Append a row given as sparse `(variable, coefficient)` terms.
    /// Repeated variables accumulate.
    pub fn add_constraint(&mut self, terms: &[(usize, f64)], rel: Relation, rhs: f64) -> usize {
        let mut coeffs = vec![0.0; self.num_vars()];
        for &(j, a) in terms {
            coeffs[j] += a;
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self.constraints.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::DimensionMismatch(format!("{} bounds for {} variables", self.bounds.len(), n)));
        }
        if !self.names.is_empty() && self.names.len() != n {
            return Err(Error::DimensionMismatch("variable name count".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} coefficients, expected {}",
                    i,
                    c.coeffs.len(),
                    n
                )));
            }
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(Error::InvalidArgument(format!("bad bounds on variable {}", j)));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest absolute violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match c.rel {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (&(lo, hi), &v) in self.bounds.iter().zip(x) {
            worst = worst.max(lo - v).max(v - hi);
        }
        worst
    }

    /// Plain-text dump: an `obj` line, one `coeffs... <rel> rhs` line per row,
    /// then one `bound lo hi` line per variable.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Maximize => "max",
            Sense::Minimize => "min",
        };
        out.push_str(sense);
        for c in &self.objective {
            let _ = write!(out, " {:?}", c);
        }
        out.push('\n');
        for c in &self.constraints {
            let mut first = true;
            for a in &c.coeffs {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{:?}", a);
            }
            let _ = writeln!(out, " {} {:?}", c.rel.symbol(), c.rhs);
        }
        for &(lo, hi) in &self.bounds {
            let _ = writeln!(out, "bound {:?} {:?}", lo, hi);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub status: Status,
    pub value: f64,
    pub primal: Vec<f64>,
    /// One multiplier per row: the rate of change of the optimal value with
    /// respect to that row's right-hand side.
    pub dual: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    fn without_point(status: Status, iterations: usize) -> Self {
        LpSolution { status, value: f64::NAN, primal: Vec::new(), dual: Vec::new(), iterations }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub feas_tol: f64,
    pub opt_tol: f64,
    pub pivot_tol: f64,
    pub max_iterations: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { feas_tol: 1e-9, opt_tol: 1e-9, pivot_tol: 1e-9, max_iterations: None }
    }
}

pub fn solve(model: &LpModel) -> Result<LpSolution> {
    solve_with(model, &SolverOptions::default())
}

/// How a user variable is recovered from internal nonnegative columns.
struct VarMap {
    offset: f64,
    cols: Vec<(usize, f64)>,
}

struct StandardForm {
    /// Sparse columns of the structural part.
    cols: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
    rhs: Vec<f64>,
    rel: Vec<Relation>,
    /// +1 or -1 per row, recording sign flips done to make `rhs >= 0`.
    flip: Vec<f64>,
    vars: Vec<VarMap>,
    user_rows: usize,
}

fn standard_form(model: &LpModel) -> StandardForm {
    let sign = match model.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut vars = Vec::with_capacity(model.num_vars());
    let mut cost = Vec::new();
    let mut extra: Vec<(usize, f64, Relation, f64)> = Vec::new();
    let mut ncols = 0;
    for (j, &(lo, hi)) in model.bounds.iter().enumerate() {
        let c = model.objective[j];
        if lo.is_finite() {
            vars.push(VarMap { offset: lo, cols: vec![(ncols, 1.0)] });
            cost.push(sign * c);
            if hi.is_finite() {
                extra.push((ncols, 1.0, Relation::Le, hi - lo));
            }
            ncols += 1;
        } else if hi.is_finite() {
            vars.push(VarMap { offset: hi, cols: vec![(ncols, -1.0)] });
            cost.push(-sign * c);
            ncols += 1;
        } else {
            vars.push(VarMap { offset: 0.0, cols: vec![(ncols, 1.0), (ncols + 1, -1.0)] });
            cost.push(sign * c);
            cost.push(-sign * c);
            ncols += 2;
        }
    }
    let user_rows = model.num_constraints();
    let m = user_rows + extra.len();
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ncols];
    let mut rhs = Vec::with_capacity(m);
    let mut rel = Vec::with_capacity(m);
    for (i, c) in model.constraints.iter().enumerate() {
        let mut b = c.rhs;
        for (j, &a) in c.coeffs.iter().enumerate() {
            if a != 0.0 {
                let vm = &vars[j];
                b -= a * vm.offset;
                for &(col, s) in &vm.cols {
                    cols[col].push((i, a * s));
                }
            }
        }
        rhs.push(b);
        rel.push(c.rel);
    }
    for (k, &(col, a, r, b)) in extra.iter().enumerate() {
        cols[col].push((user_rows + k, a));
        rhs.push(b);
        rel.push(r);
    }
    let mut flip = vec![1.0; m];
    for i in 0..m {
        if rhs[i] < 0.0 {
            flip[i] = -1.0;
            rhs[i] = -rhs[i];
            rel[i] = rel[i].flipped();
        }
    }
    for col in &mut cols {
        for e in col.iter_mut() {
            e.1 *= flip[e.0];
        }
    }
    StandardForm { cols, cost, rhs, rel, flip, vars, user_rows }
}

/// One elementary factor of the product-form inverse: the transformed
/// entering column at the moment it was pivoted in at `row`.
struct Eta {
    row: usize,
    pivot: f64,
    idx: Vec<usize>,
    val: Vec<f64>,
}

/// Pivots between refactorizations.
const REFACTOR_EVERY: usize = 100;
/// Magnitude below which transformed column entries are dropped from an eta.
const DROP_TOL: f64 = 1e-14;

struct Simplex<'a> {
    opts: &'a SolverOptions,
    m: usize,
    cols: Vec<Vec<(usize, f64)>>,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    rhs: Vec<f64>,
    /// The basis inverse as a product of elementary factors, applied in order.
    etas: Vec<Eta>,
    /// Length of `etas` right after the last refactorization.
    fresh_etas: usize,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    xb: Vec<f64>,
    iterations: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl<'a> Simplex<'a> {
    /// `v <- B^-1 v`.
    fn ftran(&self, v: &mut [f64]) {
        for e in &self.etas {
            let t = v[e.row];
            if t == 0.0 {
                continue;
            }
            let t = t / e.pivot;
            for (&i, &a) in e.idx.iter().zip(&e.val) {
                v[i] -= a * t;
            }
            v[e.row] = t;
        }
    }

    /// `w' <- w' B^-1`.
    fn btran(&self, w: &mut [f64]) {
        for e in self.etas.iter().rev() {
            let mut t = w[e.row];
            for (&i, &a) in e.idx.iter().zip(&e.val) {
                t -= a * w[i];
            }
            w[e.row] = t / e.pivot;
        }
    }

    fn push_eta(&mut self, row: usize, alpha: &[f64]) {
        let mut idx = Vec::new();
        let mut val = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            if i != row && a.abs() > DROP_TOL {
                idx.push(i);
                val.push(a);
            }
        }
        self.etas.push(Eta { row, pivot: alpha[row], idx, val });
    }

    fn row(&self, p: usize) -> Vec<f64> {
        let mut w = vec![0.0; self.m];
        w[p] = 1.0;
        self.btran(&mut w);
        w
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
        self.btran(&mut y);
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[f64], y: &[f64]) -> f64 {
        let mut d = cost[j];
        for &(i, a) in &self.cols[j] {
            d -= y[i] * a;
        }
        d
    }

    fn column(&self, j: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.m];
        for &(i, a) in &self.cols[j] {
            v[i] = a;
        }
        v
    }

    fn direction(&self, q: usize) -> Vec<f64> {
        let mut alpha = self.column(q);
        self.ftran(&mut alpha);
        alpha
    }

    fn pivot(&mut self, p: usize, q: usize, alpha: &[f64]) {
        let theta = self.xb[p] / alpha[p];
        for i in 0..self.m {
            if i != p && alpha[i] != 0.0 {
                self.xb[i] -= theta * alpha[i];
            }
        }
        self.xb[p] = theta;
        self.push_eta(p, alpha);
        self.is_basic[self.basis[p]] = false;
        self.is_basic[q] = true;
        self.basis[p] = q;
        self.iterations += 1;
    }

    /// Refactorize the current basis from scratch and recompute the basic
    /// values. Positions are reassigned; the set of basic columns is kept.
    fn reinvert(&mut self) -> Result<()> {
        let m = self.m;
        let mut members: Vec<usize> = self.basis.clone();
        members.sort_by_key(|&j| (self.cols[j].len(), j));
        self.etas.clear();
        let mut basis = vec![usize::MAX; m];
        let mut rest = Vec::new();
        for &j in &members {
            match self.cols[j][..] {
                [(i, a)] if basis[i] == usize::MAX => {
                    if a != 1.0 {
                        self.etas.push(Eta { row: i, pivot: a, idx: Vec::new(), val: Vec::new() });
                    }
                    basis[i] = j;
                }
                _ => rest.push(j),
            }
        }
        for j in rest {
            let alpha = self.direction(j);
            let mut best: Option<usize> = None;
            for i in 0..m {
                if basis[i] == usize::MAX && best.is_none_or(|b| alpha[i].abs() > alpha[b].abs()) {
                    best = Some(i);
                }
            }
            let r = match best {
                Some(r) if alpha[r].abs() >= 1e-11 => r,
                _ => return Err(Error::NumericalBreakdown("singular basis during reinversion".into())),
            };
            self.push_eta(r, &alpha);
            basis[r] = j;
        }
        self.basis = basis;
        self.fresh_etas = self.etas.len();
        let mut xb = self.rhs.clone();
        self.ftran(&mut xb);
        self.xb = xb;
        Ok(())
    }

    fn run_phase(&mut self, cost: &[f64], allow: &dyn Fn(usize) -> bool) -> Result<PhaseEnd> {
        let ncols = self.cols.len();
        let limit = self.opts.max_iterations.unwrap_or(50 * (self.m + ncols) + 1000);
        let stall_limit = 2 * ncols + 10;
        let mut bland = false;
        let mut best_obj = f64::INFINITY;
        let mut stall = 0;
        loop {
            if self.iterations > limit {
                return Err(Error::NumericalBreakdown(format!(
                    "no convergence after {} pivots",
                    self.iterations
                )));
            }
            if self.etas.len() - self.fresh_etas >= REFACTOR_EVERY {
                self.reinvert()?;
            }
            let y = self.duals(cost);
            let mut entering = None;
            let mut best_d = -self.opts.opt_tol;
            for j in 0..ncols {
                if self.is_basic[j] || !allow(j) {
                    continue;
                }
                let d = self.reduced_cost(j, cost, &y);
                if d < best_d {
                    entering = Some((j, d));
                    if bland {
                        break;
                    }
                    best_d = d;
                }
            }
            let Some((q, _)) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            let alpha = self.direction(q);
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.m {
                if alpha[i] > self.opts.pivot_tol {
                    let ratio = self.xb[i].max(0.0) / alpha[i];
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            if ratio < best_ratio - 1e-12 {
                                true
                            } else if ratio <= best_ratio + 1e-12 {
                                if bland {
                                    self.basis[i] < self.basis[l]
                                } else {
                                    alpha[i] > alpha[l]
                                }
                            } else {
                                false
                            }
                        }
                    };
                    if better {
                        leave = Some(i);
                        best_ratio = best_ratio.min(ratio);
                    }
                }
            }
            let Some(p) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            self.xb[p] = self.xb[p].max(0.0);
            self.pivot(p, q, &alpha);
            let obj: f64 = (0..self.m).map(|i| cost[self.basis[i]] * self.xb[i]).sum();
            if obj < best_obj - 1e-12 * best_obj.abs().max(1.0) {
                best_obj = obj;
                stall = 0;
            } else {
                stall += 1;
                if stall > stall_limit {
                    bland = true;
                }
            }
        }
    }

    /// Run a phase, re-invert, and repeat if re-inversion exposes remaining
    /// improving columns.
    fn run_phase_clean(&mut self, cost: &[f64], allow: &dyn Fn(usize) -> bool) -> Result<PhaseEnd> {
        for _ in 0..5 {
            match self.run_phase(cost, allow)? {
                PhaseEnd::Unbounded => return Ok(PhaseEnd::Unbounded),
                PhaseEnd::Optimal => {}
            }
            self.reinvert()?;
            let y = self.duals(cost);
            let more = (0..self.cols.len())
                .any(|j| !self.is_basic[j] && allow(j) && self.reduced_cost(j, cost, &y) < -self.opts.opt_tol);
            let neg = self.xb.iter().any(|&v| v < -self.opts.feas_tol);
            if !more && !neg {
                return Ok(PhaseEnd::Optimal);
            }
            for v in &mut self.xb {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
        }
        Err(Error::NumericalBreakdown("basis drift not resolved by reinversion".into()))
    }
}

pub fn solve_with(model: &LpModel, opts: &SolverOptions) -> Result<LpSolution> {
    model.validate()?;
    let sf = standard_form(model);
    let m = sf.rhs.len();
    let n_struct = sf.cols.len();

    let mut cols = sf.cols.clone();
    let mut identity_col = vec![0; m];
    for i in 0..m {
        match sf.rel[i] {
            Relation::Le => {
                identity_col[i] = cols.len();
                cols.push(vec![(i, 1.0)]);
            }
            Relation::Ge => cols.push(vec![(i, -1.0)]),
            Relation::Eq => {}
        }
    }
    let first_artificial = cols.len();
    for i in 0..m {
        if sf.rel[i] != Relation::Le {
            identity_col[i] = cols.len();
            cols.push(vec![(i, 1.0)]);
        }
    }
    let ncols = cols.len();
    let mut is_basic = vec![false; ncols];
    for &j in &identity_col {
        is_basic[j] = true;
    }
    let mut spx = Simplex {
        opts,
        m,
        cols,
        first_artificial,
        rhs: sf.rhs.clone(),
        etas: Vec::new(),
        fresh_etas: 0,
        basis: identity_col.clone(),
        is_basic,
        xb: sf.rhs.clone(),
        iterations: 0,
    };

    if first_artificial < ncols {
        let mut c1 = vec![0.0; ncols];
        for c in c1.iter_mut().skip(first_artificial) {
            *c = 1.0;
        }
        let all = |_: usize| true;
        spx.run_phase_clean(&c1, &all)?;
        let infeas: f64 = (0..m)
            .filter(|&i| spx.basis[i] >= first_artificial)
            .map(|i| spx.xb[i])
            .sum();
        let scale = sf.rhs.iter().cloned().fold(1.0, f64::max);
        if infeas > opts.feas_tol * scale {
            return Ok(LpSolution::without_point(Status::Infeasible, spx.iterations));
        }
        // Drive zero-level artificials out of the basis where possible.
        for p in 0..m {
            if spx.basis[p] < first_artificial {
                continue;
            }
            let row = spx.row(p);
            let mut best: Option<(usize, f64)> = None;
            for j in 0..first_artificial {
                if spx.is_basic[j] {
                    continue;
                }
                let r: f64 = spx.cols[j].iter().map(|&(i, a)| row[i] * a).sum();
                if r.abs() > 1e-7 && best.is_none_or(|(_, b)| r.abs() > b.abs()) {
                    best = Some((j, r));
                }
            }
            if let Some((q, _)) = best {
                let alpha = spx.direction(q);
                spx.xb[p] = 0.0;
                spx.pivot(p, q, &alpha);
            }
        }
        spx.reinvert()?;
    }

    let mut c2 = vec![0.0; ncols];
    c2[..n_struct].copy_from_slice(&sf.cost);
    let fa = spx.first_artificial;
    let structural = move |j: usize| j < fa;
    if let PhaseEnd::Unbounded = spx.run_phase_clean(&c2, &structural)? {
        return Ok(LpSolution::without_point(Status::Unbounded, spx.iterations));
    }

    let mut xs = vec![0.0; ncols];
    for i in 0..m {
        xs[spx.basis[i]] = spx.xb[i].max(0.0);
    }
    let primal: Vec<f64> = sf
        .vars
        .iter()
        .map(|vm| vm.offset + vm.cols.iter().map(|&(c, s)| s * xs[c]).sum::<f64>())
        .collect();
    let y = spx.duals(&c2);
    let out_sign = match model.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let dual: Vec<f64> = (0..sf.user_rows).map(|i| out_sign * sf.flip[i] * y[i]).collect();
    let value = model.objective_value(&primal);
    Ok(LpSolution { status: Status::Optimal, value, primal, dual, iterations: spx.iterations })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Nonneg,
    Nonpos,
    Free,
}

/// Standard LP dual. Variable bounds other than `>= 0`, `<= 0` or free become
/// explicit rows of the primal first, so every row carries one dual variable.
pub fn dualize(model: &LpModel) -> LpModel {
    let n = model.num_vars();
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = model
        .constraints
        .iter()
        .map(|c| {
            let terms = c.coeffs.iter().enumerate().filter(|(_, a)| **a != 0.0).map(|(j, a)| (j, *a)).collect();
            (terms, c.rel, c.rhs)
        })
        .collect();
    let mut signs = Vec::with_capacity(n);
    for (j, &(lo, hi)) in model.bounds.iter().enumerate() {
        let sign = match (lo, hi) {
            (l, h) if l == 0.0 && h == f64::INFINITY => Sign::Nonneg,
            (l, h) if l == f64::NEG_INFINITY && h == 0.0 => Sign::Nonpos,
            (l, h) if l == 0.0 && h.is_finite() => {
                rows.push((vec![(j, 1.0)], Relation::Le, h));
                Sign::Nonneg
            }
            (l, h) => {
                if l.is_finite() {
                    rows.push((vec![(j, 1.0)], Relation::Ge, l));
                }
                if h.is_finite() {
                    rows.push((vec![(j, 1.0)], Relation::Le, h));
                }
                Sign::Free
            }
        };
        signs.push(sign);
    }
    let maximize = model.sense == Sense::Maximize;
    let mut dual = LpModel::new(if maximize { Sense::Minimize } else { Sense::Maximize });
    for (i, (_, rel, rhs)) in rows.iter().enumerate() {
        let (lo, hi) = match (maximize, rel) {
            (_, Relation::Eq) => (f64::NEG_INFINITY, f64::INFINITY),
            (true, Relation::Le) | (false, Relation::Ge) => (0.0, f64::INFINITY),
            (true, Relation::Ge) | (false, Relation::Le) => (f64::NEG_INFINITY, 0.0),
        };
        dual.add_var(format!("y{}", i), lo, hi, *rhs);
    }
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (i, (terms, _, _)) in rows.iter().enumerate() {
        for &(j, a) in terms {
            columns[j].push((i, a));
        }
    }
    for j in 0..n {
        let rel = match (maximize, signs[j]) {
            (_, Sign::Free) => Relation::Eq,
            (true, Sign::Nonneg) | (false, Sign::Nonpos) => Relation::Ge,
            (true, Sign::Nonpos) | (false, Sign::Nonneg) => Relation::Le,
        };
        dual.add_constraint(&columns[j], rel, model.objective[j]);
    }
    dual
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(sense: Sense, c: &[f64], rows: &[(&[f64], Relation, f64)]) -> LpModel {
        let mut m = LpModel::new(sense);
        for (j, &cj) in c.iter().enumerate() {
            m.add_var(format!("x{}", j), 0.0, f64::INFINITY, cj);
        }
        for (a, r, b) in rows {
            let terms: Vec<(usize, f64)> = a.iter().cloned().enumerate().collect();
            m.add_constraint(&terms, *r, *b);
        }
        m
    }

    #[test]
    fn single_variable() {
        let m = lp(Sense::Maximize, &[1.0], &[(&[1.0], Relation::Le, 1.0)]);
        let s = solve(&m).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!((s.primal[0] - 1.0).abs() < 1e-12);
        assert!((s.dual[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_face() {
        let m = lp(Sense::Maximize, &[1.0, 1.0], &[(&[1.0, 1.0], Relation::Le, 1.0)]);
        let s = solve(&m).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!(m.max_violation(&s.primal) < 1e-12);
    }

    #[test]
    fn two_constraint_vertex() {
        // Vertices of {x+y<=4, x+3y<=6, x,y>=0}: (0,0),(4,0),(0,2),(3,1).
        let verts = [(0.0, 0.0), (4.0, 0.0), (0.0, 2.0), (3.0, 1.0)];
        let best = verts.iter().map(|(x, y)| 3.0 * x + 2.0 * y).fold(f64::MIN, f64::max);
        let m = lp(
            Sense::Maximize,
            &[3.0, 2.0],
            &[(&[1.0, 1.0], Relation::Le, 4.0), (&[1.0, 3.0], Relation::Le, 6.0)],
        );
        let s = solve(&m).unwrap();
        assert!((s.value - best).abs() < 1e-12);
        assert!((s.primal[0] - 4.0).abs() < 1e-12 && s.primal[1].abs() < 1e-12);
        let dual_obj: f64 = s.dual.iter().zip([4.0, 6.0]).map(|(y, b)| y * b).sum();
        assert!((dual_obj - s.value).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let m = lp(
            Sense::Maximize,
            &[1.0],
            &[(&[1.0], Relation::Le, 1.0), (&[1.0], Relation::Ge, 2.0)],
        );
        assert_eq!(solve(&m).unwrap().status, Status::Infeasible);
        let m = lp(Sense::Maximize, &[1.0, 0.0], &[(&[1.0, -1.0], Relation::Le, 1.0)]);
        assert_eq!(solve(&m).unwrap().status, Status::Unbounded);
    }

    #[test]
    fn general_bounds_and_equalities() {
        // min x - y, x in [-2, 3], y free, x + y = 1, y <= 5.
        let mut m = LpModel::new(Sense::Minimize);
        let x = m.add_var("x", -2.0, 3.0, 1.0);
        let y = m.add_var("y", f64::NEG_INFINITY, f64::INFINITY, -1.0);
        m.add_constraint(&[(x, 1.0), (y, 1.0)], Relation::Eq, 1.0);
        m.add_constraint(&[(y, 1.0)], Relation::Le, 5.0);
        let s = solve(&m).unwrap();
        // y = 1 - x; objective 2x - 1, x >= -4 from y <= 5, so x = -2.
        assert!((s.value + 5.0).abs() < 1e-12, "{}", s.value);
        let d = solve(&dualize(&m)).unwrap();
        assert!((d.value - s.value).abs() < 1e-9);
    }

    #[test]
    fn textbook_dual_pair() {
        let m = lp(
            Sense::Maximize,
            &[3.0, 2.0],
            &[(&[1.0, 1.0], Relation::Le, 4.0), (&[1.0, 3.0], Relation::Le, 6.0)],
        );
        let d = dualize(&m);
        assert_eq!(d.sense, Sense::Minimize);
        assert_eq!(d.objective, vec![4.0, 6.0]);
        assert!(d.bounds.iter().all(|&b| b == (0.0, f64::INFINITY)));
        assert!(d.constraints.iter().all(|c| c.rel == Relation::Ge));
        assert_eq!(d.constraints[0].coeffs, vec![1.0, 1.0]);
        assert_eq!(d.constraints[1].coeffs, vec![1.0, 3.0]);
        let dd = dualize(&d);
        let v = solve(&m).unwrap().value;
        assert!((solve(&dd).unwrap().value - v).abs() < 1e-9);
        assert!((solve(&d).unwrap().value - v).abs() < 1e-9);
    }

    #[test]
    fn dump_has_one_line_per_row() {
        let m = lp(Sense::Minimize, &[1.0, 2.0], &[(&[1.0, 1.0], Relation::Ge, 1.0)]);
        let text = m.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "min 1.0 2.0");
        assert_eq!(lines[1], "1.0 1.0 >= 1.0");
        assert_eq!(lines.len(), 1 + 1 + 2);
    }
}
