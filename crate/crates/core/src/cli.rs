//! Command-line front end.
//!
//! [`run`] takes the argument vector and two writers so the whole tool can be
//! driven in-process; the binary only forwards `std::env::args`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::converse::{
    self, hypothesis_testing_bound, kv_tilted_improved, lossless_gamma_bound, meta_lossless, meta_lossy, BoundReport,
    TiltedInfo, Witness, DENSE_LP_CAP,
};
use crate::dsbs::{self, DsbsSpec};
use crate::error::{Error, Result};
use crate::fmt_num;
use crate::lp::{dualize, solve, LpModel, Status};
use crate::oracle::{exact_opt_sc, exact_opt_sid, exact_opt_sw, OracleOptions, DEFAULT_ENUM_CAP};
use crate::probability::{parse_pmf, Pmf, SinglePmf};
use crate::relaxations::{
    build_lp_je, build_lp_sc, build_lp_sw, build_lpsi, check_dp_feasible, check_dpsw_feasible, dpsw_objective,
    ConstraintViolation, DualPointDp, DualPointJe, DualPointSW, DualPointSid, ScInstance, Side, SwInstance,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sw-converse", version, about = "Converse bounds for source coding and Slepian-Wolf coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate bounds on one instance.
    Bound(BoundArgs),
    /// Run the consistency checks on one instance.
    Verify(VerifyArgs),
    /// Sweep the doubly symmetric binary source over blocklengths.
    Dsbs(DsbsArgs),
}

#[derive(Debug, clap::Args)]
struct InstanceArgs {
    /// Pmf file in the `pmf1` / `pmf2` text format.
    pmf: PathBuf,
    #[arg(long, default_value_t = 1)]
    m1: usize,
    #[arg(long, default_value_t = 1)]
    m2: usize,
    /// Override both the enumeration cap and the LP variable cap.
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Debug, clap::Args)]
struct BoundArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Comma-separated bound names.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    bounds: Vec<BoundName>,
    /// Every bound that applies to the instance.
    #[arg(long)]
    all: bool,
    /// One JSON record per line instead of text.
    #[arg(long)]
    json: bool,
    /// Skip encoder relabelings in the oracle.
    #[arg(long)]
    prune: bool,
    /// Write the LP of each `lp`/`lp-sw` bound to this file.
    #[arg(long)]
    lp_dump: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Corrupt one constructed dual point before checking it.
    #[arg(long)]
    fuzz_dual: bool,
}

#[derive(Debug, clap::Args)]
struct DsbsArgs {
    /// Comma-separated blocklengths.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long)]
    p: f64,
    /// Rate of the first encoder in bits per symbol.
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    /// CSV output path; the gnuplot script goes next to it with a `.gp` extension.
    #[arg(short = 'o', long = "out")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundName {
    #[value(name = "meta-sw")]
    MetaSw,
    #[value(name = "meta-je")]
    MetaJe,
    #[value(name = "meta-sid12")]
    MetaSid12,
    #[value(name = "meta-sid21")]
    MetaSid21,
    #[value(name = "mk")]
    Mk,
    #[value(name = "mk-improved")]
    MkImproved,
    #[value(name = "max-converse")]
    MaxConverse,
    #[value(name = "meta-lossless")]
    MetaLossless,
    #[value(name = "meta-lossy")]
    MetaLossy,
    #[value(name = "ht")]
    Ht,
    #[value(name = "palzer-timo")]
    PalzerTimo,
    #[value(name = "kv-improved")]
    KvImproved,
    #[value(name = "sid-classic")]
    SidClassic,
    #[value(name = "sid-improved")]
    SidImproved,
    #[value(name = "lp")]
    Lp,
    #[value(name = "lp-sw")]
    LpSw,
    #[value(name = "oracle")]
    Oracle,
}

impl BoundName {
    fn needs_pair(self) -> bool {
        use BoundName::*;
        matches!(self, MetaSw | MetaJe | MetaSid12 | MetaSid21 | Mk | MkImproved | MaxConverse | SidClassic | SidImproved | LpSw)
    }
}

/// Parsed input: a single source, or a pair with its code sizes.
enum Instance {
    Single(ScInstance),
    Pair(SwInstance),
}

impl Instance {
    fn load(a: &InstanceArgs) -> Result<Instance> {
        let text = fs::read_to_string(&a.pmf)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {}", a.pmf.display(), e)))?;
        match parse_pmf(&text)? {
            Pmf::Single(p) => {
                if a.m2 != 1 {
                    return Err(Error::InvalidArgument("a single source takes only --m1".into()));
                }
                Ok(Instance::Single(ScInstance::lossless(p, a.m1)?))
            }
            Pmf::Joint(j) => Ok(Instance::Pair(SwInstance::new(j, a.m1, a.m2)?)),
        }
    }

    /// The point-to-point view: the source itself, or the pair coded jointly.
    fn single(&self) -> ScInstance {
        match self {
            Instance::Single(s) => s.clone(),
            Instance::Pair(p) => p.jointly_encoded(),
        }
    }
}

struct Caps {
    lp: usize,
    oracle: OracleOptions,
}

impl Caps {
    fn new(cap: Option<u128>, prune: bool) -> Caps {
        Caps {
            lp: cap.map(|c| c.min(usize::MAX as u128) as usize).unwrap_or(DENSE_LP_CAP),
            oracle: OracleOptions { cap: cap.unwrap_or(DEFAULT_ENUM_CAP), prune },
        }
    }
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
            } else {
                let _ = write!(out, "{}", text);
            }
            return code;
        }
    };
    let res = match cli.command {
        Command::Bound(a) => cmd_bound(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Dsbs(a) => cmd_dsbs(&a, out, err),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {}", e.kind(), e);
            if e.is_resource_cap() {
                EXIT_CAP
            } else {
                EXIT_INPUT
            }
        }
    }
}

const ALL_BOUNDS: [BoundName; 17] = {
    use BoundName::*;
    [
        MetaSw, MetaJe, MetaSid12, MetaSid21, MaxConverse, Mk, MkImproved, SidClassic, SidImproved, MetaLossless,
        MetaLossy, Ht, PalzerTimo, KvImproved, Lp, LpSw, Oracle,
    ]
};

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inst = Instance::load(&a.inst)?;
    let caps = Caps::new(a.inst.cap, a.prune);
    let names: Vec<BoundName> = if a.all {
        ALL_BOUNDS.iter().copied().filter(|b| matches!(inst, Instance::Pair(_)) || !b.needs_pair()).collect()
    } else if a.bounds.is_empty() {
        return Err(Error::InvalidArgument("give --bounds or --all".into()));
    } else {
        a.bounds.clone()
    };
    let mut dump = String::new();
    let mut reports = Vec::new();
    for &name in &names {
        match evaluate(&inst, name, &caps, &mut dump) {
            Ok(rs) => reports.extend(rs),
            // under --all a bound too large to evaluate is reported and skipped
            Err(e) if a.all && e.is_resource_cap() => {
                let _ = writeln!(err, "skipped {}: {}", name.to_possible_value().unwrap().get_name(), e);
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(path) = &a.lp_dump {
        fs::write(path, dump).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {}", path.display(), e)))?;
    }
    for r in &reports {
        let line = if a.json {
            json!({
                "name": r.name,
                "raw": r.raw_value,
                "clamped": r.clamped_value,
                "witness": r.witness,
                "origin": r.origin,
            })
            .to_string()
        } else {
            format!(
                "{} raw={} clamped={} witness={}",
                r.name,
                fmt_num(r.raw_value),
                fmt_num(r.clamped_value),
                r.witness.summary()
            )
        };
        let _ = writeln!(out, "{}", line);
    }
    Ok(EXIT_OK)
}

fn pair(inst: &Instance, name: BoundName) -> Result<&SwInstance> {
    match inst {
        Instance::Pair(p) => Ok(p),
        Instance::Single(_) => Err(Error::InvalidArgument(format!(
            "{} needs a pmf2 instance",
            name.to_possible_value().unwrap().get_name()
        ))),
    }
}

fn solve_value(model: &LpModel) -> Result<f64> {
    let sol = solve(model)?;
    if sol.status != Status::Optimal {
        return Err(Error::NumericalBreakdown(format!("relaxation ended {:?}", sol.status)));
    }
    Ok(sol.value)
}

fn evaluate(inst: &Instance, name: BoundName, caps: &Caps, dump: &mut String) -> Result<Vec<BoundReport>> {
    use BoundName::*;
    let one = |r: Result<BoundReport>| r.map(|r| vec![r]);
    match name {
        MetaSw => one(converse::meta_sw(pair(inst, name)?)),
        MetaJe => one(converse::meta_je(pair(inst, name)?)),
        MetaSid12 => one(converse::meta_sid(pair(inst, name)?, Side::One)),
        MetaSid21 => one(converse::meta_sid(pair(inst, name)?, Side::Two)),
        Mk => one(converse::mk_classic(pair(inst, name)?)),
        MkImproved => one(converse::mk_improved(pair(inst, name)?)),
        MaxConverse => one(converse::max_converse(pair(inst, name)?)),
        SidClassic => {
            let p = pair(inst, name)?;
            Ok(vec![converse::sid_classic(p, Side::One)?, converse::sid_classic(p, Side::Two)?])
        }
        SidImproved => {
            let p = pair(inst, name)?;
            Ok(vec![converse::sid_improved(p, Side::One)?, converse::sid_improved(p, Side::Two)?])
        }
        MetaLossless => {
            let s = inst.single();
            one(meta_lossless(&s.source, s.m))
        }
        MetaLossy => one(meta_lossy(&inst.single())),
        Ht => {
            let s = inst.single();
            one(hypothesis_testing_bound(&s, &SinglePmf::uniform(s.n_src())))
        }
        PalzerTimo => {
            let s = inst.single();
            one(converse::palzer_timo(&s, &TiltedInfo::lossless(&s.source)))
        }
        KvImproved => {
            let s = inst.single();
            one(kv_tilted_improved(&s, &TiltedInfo::lossless(&s.source)))
        }
        Lp => {
            let model = match inst {
                Instance::Single(s) => build_lp_sc(s, caps.lp)?,
                Instance::Pair(p) => build_lp_je(p, caps.lp)?,
            };
            push_dump(dump, "lp", &model);
            let v = solve_value(&model)?;
            Ok(vec![BoundReport::new("lp", v, Witness::None, "point-to-point lp relaxation")])
        }
        LpSw => {
            let model = build_lp_sw(pair(inst, name)?, caps.lp)?;
            push_dump(dump, "lp-sw", &model);
            let v = solve_value(&model)?;
            Ok(vec![BoundReport::new("lp-sw", v, Witness::None, "Slepian-Wolf lp relaxation")])
        }
        Oracle => {
            let v = match inst {
                Instance::Single(s) => exact_opt_sc(s, &caps.oracle)?,
                Instance::Pair(p) => exact_opt_sw(p, &caps.oracle)?,
            };
            Ok(vec![BoundReport::new("oracle", v, Witness::None, "exhaustive code search")])
        }
    }
}

fn push_dump(dump: &mut String, name: &str, model: &LpModel) {
    dump.push_str("# ");
    dump.push_str(name);
    dump.push('\n');
    dump.push_str(&model.dump());
}

const BOUND_TOL: f64 = 1e-9;
const DUALITY_TOL: f64 = 1e-7;
const CONSTRUCTED_TOL: f64 = 1e-12;

enum Outcome {
    Pass(f64),
    Fail(f64, String),
    Skipped(String),
}

/// Collects named checks and prints them as they complete.
struct Report<'a> {
    out: &'a mut dyn Write,
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl Report<'_> {
    fn record(&mut self, name: &str, o: Outcome) {
        let line = match o {
            Outcome::Pass(r) => {
                self.passed += 1;
                format!("{} PASS residual={}", name, fmt_num(r))
            }
            Outcome::Fail(r, why) => {
                self.failed += 1;
                if why.is_empty() {
                    format!("{} FAIL residual={}", name, fmt_num(r))
                } else {
                    format!("{} FAIL residual={} {}", name, fmt_num(r), why)
                }
            }
            Outcome::Skipped(why) => {
                self.skipped += 1;
                format!("{} SKIPPED {}", name, why)
            }
        };
        let _ = writeln!(self.out, "{}", line);
    }

    /// Pass when `residual <= tol`; a resource cap becomes a skip, any other
    /// error a failure.
    fn bound(&mut self, name: &str, residual: Result<f64>, tol: f64) {
        let o = match residual {
            Ok(r) if r <= tol => Outcome::Pass(r.max(0.0)),
            Ok(r) => Outcome::Fail(r, String::new()),
            Err(e) if e.is_resource_cap() => Outcome::Skipped(e.to_string()),
            Err(e) => Outcome::Fail(f64::NAN, format!("{}: {}", e.kind(), e)),
        };
        self.record(name, o);
    }

    fn feasible(&mut self, name: &str, violations: Result<Vec<ConstraintViolation>>) {
        let o = match violations {
            Ok(v) if v.is_empty() => Outcome::Pass(0.0),
            Ok(v) => {
                let worst = v.iter().map(|c| c.residual).fold(0.0, f64::max);
                let mut ids: Vec<String> = v.iter().map(|c| format!("{:?}", c.id)).collect();
                ids.dedup();
                ids.sort();
                ids.dedup();
                Outcome::Fail(worst, format!("violated={}", ids.join(",")))
            }
            Err(e) => Outcome::Fail(f64::NAN, format!("{}: {}", e.kind(), e)),
        };
        self.record(name, o);
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::load(&a.inst)?;
    let caps = Caps::new(a.inst.cap, false);
    let mut rep = Report { out, passed: 0, failed: 0, skipped: 0 };
    match &inst {
        Instance::Single(s) => verify_single(s, &caps, a.fuzz_dual, &mut rep),
        Instance::Pair(p) => verify_pair(p, &caps, a.fuzz_dual, &mut rep),
    }
    let _ = writeln!(rep.out, "verify: {} passed, {} failed, {} skipped", rep.passed, rep.failed, rep.skipped);
    Ok(if rep.failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn raw(r: &Result<BoundReport>) -> Result<f64> {
    r.as_ref().map(|r| r.raw_value).map_err(|e| e.clone())
}

/// `max(a - b, ...)` over pairs, propagating the first error.
fn excess(pairs: &[(Result<f64>, Result<f64>)]) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for (a, b) in pairs {
        worst = worst.max(a.clone()? - b.clone()?);
    }
    Ok(worst)
}

fn duality_gap(model: Result<LpModel>) -> Result<f64> {
    let m = model?;
    let p = solve_value(&m)?;
    let d = solve_value(&dualize(&m))?;
    Ok((p - d).abs() / p.abs().max(1.0))
}

/// Checks on a single lossless source.
fn verify_single(s: &ScInstance, caps: &Caps, fuzz: bool, rep: &mut Report) {
    let j = TiltedInfo::lossless(&s.source);
    let opt = exact_opt_sc(s, &caps.oracle);
    let lossy = meta_lossy(s);
    let lossless = meta_lossless(&s.source, s.m);
    let kv = kv_tilted_improved(s, &j);
    let gamma = lossless_gamma_bound(&s.source, s.m);
    let bounds = [
        ("meta-lossy", raw(&lossy)),
        ("meta-lossless", raw(&lossless)),
        ("kv-improved", raw(&kv)),
        ("lossless-gamma", raw(&gamma)),
        ("palzer-timo", raw(&converse::palzer_timo(s, &j))),
        ("ht", raw(&hypothesis_testing_bound(s, &SinglePmf::uniform(s.n_src())))),
    ];
    for (name, v) in &bounds {
        rep.bound(&format!("sandwich:{}", name), excess(&[(v.clone(), opt.clone())]), BOUND_TOL);
    }
    rep.bound(
        "chain:lossless",
        excess(&[(raw(&gamma), raw(&kv)), (raw(&kv), raw(&lossless))]),
        BOUND_TOL,
    );
    rep.bound("equal:lossless-lp", excess(&[(raw(&lossless), raw(&lossy)), (raw(&lossy), raw(&lossless))]), BOUND_TOL);
    let lp = build_lp_sc(s, caps.lp);
    let lp_value = lp.clone().and_then(|m| solve_value(&m));
    rep.bound("duality:lp", duality_gap(lp), DUALITY_TOL);
    rep.bound("relaxation:lp", excess(&[(lp_value.clone(), opt.clone())]), DUALITY_TOL);
    rep.bound("relaxation:meta-lossy", excess(&[(raw(&lossy), lp_value.clone())]), DUALITY_TOL);

    let mut point = match &lossy {
        Ok(BoundReport { witness: Witness::Weights { phi }, .. }) => DualPointDp::from_phi(s, phi),
        _ => DualPointDp::zeros(s),
    };
    rep.feasible("feasible:dp-weights", check_dp_feasible(s, &point, CONSTRUCTED_TOL));
    rep.bound("weak-duality:dp-weights", excess(&[(Ok(point.objective()), lp_value)]), DUALITY_TOL);
    if fuzz {
        let p0 = s.source.get(0);
        let idx = [0, 0, 0];
        point.lambda_c.set(&idx, point.lambda_c.get(&idx) + 2.0 * p0 + 1.0);
        rep.feasible("feasible:fuzzed", check_dp_feasible(s, &point, CONSTRUCTED_TOL));
    }
}

fn is_clean(v: &Result<Vec<ConstraintViolation>>) -> bool {
    matches!(v, Ok(v) if v.is_empty())
}

/// Checks on a Slepian-Wolf instance.
fn verify_pair(p: &SwInstance, caps: &Caps, fuzz: bool, rep: &mut Report) {
    let opt = exact_opt_sw(p, &caps.oracle);
    let sw = converse::meta_sw(p);
    let je = converse::meta_je(p);
    let sid = [converse::meta_sid(p, Side::One), converse::meta_sid(p, Side::Two)];
    let mk = converse::mk_classic(p);
    let mki = converse::mk_improved(p);
    let sw_bounds = [
        ("meta-sw", raw(&sw)),
        ("meta-je", raw(&je)),
        ("meta-sid12", raw(&sid[0])),
        ("meta-sid21", raw(&sid[1])),
        ("max-converse", raw(&converse::max_converse(p))),
        ("meta-sw-eta-family", raw(&converse::meta_sw_eta_family(p))),
        ("mk", raw(&mk)),
        ("mk-improved", raw(&mki)),
    ];
    for (name, v) in &sw_bounds {
        rep.bound(&format!("sandwich:{}", name), excess(&[(v.clone(), opt.clone())]), BOUND_TOL);
    }
    for (k, side) in [Side::One, Side::Two].into_iter().enumerate() {
        let tag = if k == 0 { "12" } else { "21" };
        let sid_opt = exact_opt_sid(p, side, &caps.oracle);
        let classic = raw(&converse::sid_classic(p, side));
        let improved = raw(&converse::sid_improved(p, side));
        rep.bound(&format!("sandwich:sid{}", tag), excess(&[(raw(&sid[k]), sid_opt.clone())]), BOUND_TOL);
        rep.bound(
            &format!("chain:sid{}", tag),
            excess(&[(classic, improved.clone()), (improved, raw(&sid[k]))]),
            BOUND_TOL,
        );
    }
    rep.bound("chain:mk", excess(&[(raw(&mk), raw(&mki)), (raw(&mki), raw(&sw))]), BOUND_TOL);
    rep.bound(
        "dominance:meta-sw",
        excess(&[(raw(&je), raw(&sw)), (raw(&sid[0]), raw(&sw)), (raw(&sid[1]), raw(&sw))]),
        BOUND_TOL,
    );
    let joint = p.jointly_encoded();
    let lossless = meta_lossless(&joint.source, joint.m);
    let kv = kv_tilted_improved(&joint, &TiltedInfo::lossless(&joint.source));
    let gamma = lossless_gamma_bound(&joint.source, joint.m);
    rep.bound(
        "chain:lossless",
        excess(&[(raw(&gamma), raw(&kv)), (raw(&kv), raw(&lossless))]),
        BOUND_TOL,
    );
    let lossy = meta_lossy(&joint);
    rep.bound("equal:lossless-lp", excess(&[(raw(&lossless), raw(&lossy)), (raw(&lossy), raw(&lossless))]), BOUND_TOL);

    let lpsw = build_lp_sw(p, caps.lp);
    let lpsw_value = lpsw.clone().and_then(|m| solve_value(&m));
    rep.bound("duality:lp-sw", duality_gap(lpsw), DUALITY_TOL);
    rep.bound("duality:lp-je", duality_gap(build_lp_je(p, caps.lp)), DUALITY_TOL);
    rep.bound("duality:lpsi12", duality_gap(build_lpsi(p, Side::One, caps.lp)), DUALITY_TOL);
    rep.bound("duality:lpsi21", duality_gap(build_lpsi(p, Side::Two, caps.lp)), DUALITY_TOL);
    rep.bound("relaxation:lp-sw", excess(&[(lpsw_value.clone(), opt.clone())]), DUALITY_TOL);

    let weights = |r: &Result<BoundReport>| match r {
        Ok(BoundReport { witness: Witness::Weights { phi }, .. }) => Some(phi.clone()),
        _ => None,
    };
    let mut points: Vec<(&str, Result<DualPointSW>)> = Vec::new();
    for (k, side) in [Side::One, Side::Two].into_iter().enumerate() {
        let phi = weights(&sid[k]).unwrap_or_else(|| vec![0.0; p.n1() * p.n2()]);
        let pt = DualPointSid::from_phi(p, side, &phi);
        let embedded = converse::embed_sid_feasible(p, &pt);
        let preserved = embedded.as_ref().map_err(|e| e.clone()).and_then(|th| dpsw_objective(p, th));
        let name = if k == 0 { "preserve:sid12-embed" } else { "preserve:sid21-embed" };
        rep.bound(name, preserved.map(|v| (v - pt.objective()).abs()), CONSTRUCTED_TOL);
        points.push((if k == 0 { "sid12-embed" } else { "sid21-embed" }, embedded));
    }
    let phi_hat = weights(&je).unwrap_or_else(|| vec![0.0; p.n1() * p.n2()]);
    let je_pt = DualPointJe::from_phi(p, &phi_hat);
    let embedded = converse::embed_je_feasible(p, &je_pt);
    let preserved = embedded.as_ref().map_err(|e| e.clone()).and_then(|th| dpsw_objective(p, th));
    rep.bound("preserve:je-embed", preserved.map(|v| (v - je_pt.objective()).abs()), CONSTRUCTED_TOL);
    points.push(("je-embed", embedded));

    let combined = match &sw {
        Ok(BoundReport { witness: Witness::SwWeights { phi_hat, phi_12, phi_21 }, .. }) => {
            converse::weights_point(p, phi_hat, phi_12, phi_21, 0.5)
        }
        Ok(_) => Err(Error::NumericalBreakdown("unexpected witness".into())),
        Err(e) => Err(e.clone()),
    };
    let reached = combined.as_ref().map_err(|e| e.clone()).and_then(|th| dpsw_objective(p, th));
    rep.bound("attain:combined", excess(&[(raw(&sw), reached)]), BOUND_TOL);
    points.push(("combined", combined));

    let t = match &mk {
        Ok(BoundReport { witness: Witness::Threshold { t }, .. }) if *t > 0.0 && *t <= 1.0 => Some(*t),
        _ => None,
    };
    let flows = converse::mk_flows(p, t.unwrap_or(0.5));
    if t.is_some() {
        let reached = flows.as_ref().map_err(|e| e.clone()).and_then(|th| dpsw_objective(p, th));
        rep.bound("attain:mk-flows", excess(&[(raw(&mk), reached)]), BOUND_TOL);
    }
    points.push(("mk-flows", flows));

    let mut fuzzed = None;
    for (name, pt) in &points {
        let checked = pt.as_ref().map_err(|e| e.clone()).and_then(|th| check_dpsw_feasible(p, th, CONSTRUCTED_TOL));
        let ok = is_clean(&checked);
        rep.feasible(&format!("feasible:{}", name), checked);
        let obj = pt.as_ref().map_err(|e| e.clone()).and_then(|th| dpsw_objective(p, th));
        if ok {
            rep.bound(&format!("weak-duality:{}", name), excess(&[(obj, lpsw_value.clone())]), DUALITY_TOL);
        }
        if fuzz && *name == "combined" {
            fuzzed = pt.as_ref().ok().cloned();
        }
    }
    if fuzz {
        let mut th = fuzzed.unwrap_or_else(|| DualPointSW::zeros(p));
        let (s1, s2) = (0..p.n1() * p.n2())
            .map(|k| (k / p.n2(), k % p.n2()))
            .max_by(|a, b| p.p(a.0, a.1).total_cmp(&p.p(b.0, b.1)))
            .unwrap();
        let idx = [s1, s2, 0, 0, 0, 0];
        th.lambda_c.set(&idx, 2.0 * p.p(s1, s2) + 1.0);
        rep.feasible("feasible:fuzzed", check_dpsw_feasible(p, &th, CONSTRUCTED_TOL));
    }
}

fn cmd_dsbs(a: &DsbsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let first = *a.ns.first().ok_or_else(|| Error::InvalidArgument("no blocklengths".into()))?;
    let template = DsbsSpec::new(first, a.p, a.r1, a.r2)?;
    let mut ns = a.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        let mut notes = template.with_n(n)?.code_sizes().2;
        notes.dedup();
        for w in notes {
            let _ = writeln!(err, "warning: n={}: {}", n, w);
        }
    }
    let rows = dsbs::sweep(&template, &ns)?;
    let csv = dsbs::to_csv(&rows);
    let gp_path = a.out.with_extension("gp");
    let csv_name = a.out.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    write_file(&a.out, &csv)?;
    write_file(&gp_path, &dsbs::gnuplot_script(&csv_name, &template))?;
    let _ = writeln!(out, "region={}", format!("{:?}", dsbs::rate_region(&template)).to_lowercase());
    let _ = writeln!(out, "wrote {} ({} rows)", a.out.display(), rows.len());
    let _ = writeln!(out, "wrote {}", gp_path.display());
    Ok(EXIT_OK)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {}", path.display(), e)))
}
