mod common;

use common::*;
use sw_converse::converse;
use sw_converse::dsbs::{self, rate_region, DsbsSpec, Region};
use sw_converse::oracle::{exact_opt_sw, OracleOptions};
use sw_converse::relaxations::SwInstance;

fn expanded(spec: &DsbsSpec) -> SwInstance {
    let (a, b, _) = spec.code_sizes();
    SwInstance::new(dsbs_joint(spec.n, spec.p), a.exact.unwrap() as usize, b.exact.unwrap() as usize).unwrap()
}

#[test]
fn collapse_matches_expansion_at_uneven_rates() {
    for (n, p, r1, r2) in [(3, 0.2, 0.4, 0.9), (4, 0.11, 0.75, 0.25), (5, 0.3, 0.2, 0.6)] {
        let spec = DsbsSpec::new(n, p, r1, r2).unwrap();
        let inst = expanded(&spec);
        let pairs = [
            (dsbs::dsbs_converse(&spec).raw_value, converse::meta_sw_eta_family(&inst).unwrap().raw_value),
            (dsbs::dsbs_je_bound(&spec).raw_value, split_penalty_sup(&inst)),
            (dsbs::dsbs_mk(&spec).raw_value, converse::mk_classic(&inst).unwrap().raw_value),
        ];
        for (fast, slow) in pairs {
            assert!((fast - slow).abs() < 1e-9, "n={} p={}: {} vs {}", n, p, fast, slow);
        }
    }
}

#[test]
fn small_blocks_sit_below_the_oracle() {
    for n in [1, 2] {
        for p in [0.11, 0.25] {
            for (r1, r2) in [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0), (0.5, 1.0)] {
                let spec = DsbsSpec::new(n, p, r1, r2).unwrap();
                let opt = exact_opt_sw(&expanded(&spec), &OracleOptions::default()).unwrap();
                for r in [dsbs::dsbs_converse(&spec), dsbs::dsbs_je_bound(&spec), dsbs::dsbs_mk(&spec)] {
                    assert!(r.raw_value <= opt + 1e-9, "{} n={} p={}: {} > {}", r.name, n, p, r.raw_value, opt);
                }
            }
        }
    }
}

#[test]
fn expanded_source_has_uniform_marginals() {
    let j = dsbs_joint(3, 0.2);
    let total: f64 = j.mass().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
    let m = j.marginal(sw_converse::probability::Axis::First);
    assert!(m.mass().iter().all(|&x| (x - 0.125).abs() < 1e-12));
}

#[test]
fn converse_dominates_mk_along_a_sweep() {
    let spec = DsbsSpec::new(10, 0.11, 0.45, 0.45).unwrap();
    let ns: Vec<usize> = (10..=300).step_by(10).collect();
    let rows = dsbs::sweep(&spec, &ns).unwrap();
    assert_eq!(rows.len(), 3 * ns.len());
    for chunk in rows.chunks(3) {
        let get = |name: &str| chunk.iter().find(|r| r.bound == name).unwrap();
        let (c, j, m) = (get("dsbs-converse"), get("dsbs-je"), get("dsbs-mk"));
        assert!(c.raw >= m.raw - 1e-9, "n={}", c.n);
        assert!(j.raw >= m.raw - 1e-9, "n={}", c.n);
        for r in chunk {
            assert!(r.raw <= 1.0 + 1e-12 && r.clamped >= 0.0 && r.raw.is_finite());
        }
    }
}

#[test]
fn long_blocks_stay_finite() {
    for n in [1000, 10_000] {
        let spec = DsbsSpec::new(n, 0.11, 0.45, 0.45).unwrap();
        let c = dsbs::dsbs_converse(&spec);
        let m = dsbs::dsbs_mk(&spec);
        assert!(c.raw_value.is_finite() && m.raw_value.is_finite());
        assert!(c.raw_value >= m.raw_value - 1e-9);
        assert!(c.clamped_value > 0.99, "n={} gives {}", n, c.clamped_value);
    }
}

#[test]
fn bounds_vanish_well_inside_the_region() {
    let spec = DsbsSpec::new(2000, 0.11, 0.9, 0.9).unwrap();
    assert_eq!(rate_region(&spec), Region::Inside);
    assert!(dsbs::dsbs_converse(&spec).clamped_value < 1e-9);
}

#[test]
fn region_classification() {
    let at = |r1, r2| rate_region(&DsbsSpec::new(10, 0.11, r1, r2).unwrap());
    assert_eq!(at(0.45, 0.45), Region::Outside);
    assert_eq!(at(0.7, 0.7), Region::Outside);
    assert_eq!(at(0.8, 0.8), Region::Inside);
    let h = dsbs::binary_entropy(0.11);
    assert_eq!(at(h, 1.0), Region::Boundary);
}

#[test]
fn csv_is_deterministic() {
    let spec = DsbsSpec::new(10, 0.11, 0.45, 0.45).unwrap();
    let a = dsbs::to_csv(&dsbs::sweep(&spec, &[10, 20, 50]).unwrap());
    let b = dsbs::to_csv(&dsbs::sweep(&spec, &[10, 20, 50]).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 10);
    assert!(a.starts_with(dsbs::CSV_HEADER));
}
