mod common;

use proptest::prelude::*;

use common::*;
use sw_converse::converse::{self, TiltedInfo, Witness};
use sw_converse::lp::{dualize, solve, Status};
use sw_converse::oracle::{exact_opt_sc, exact_opt_sid, exact_opt_sw, OracleOptions};
use sw_converse::probability::{Axis, JointPmf, SinglePmf};
use sw_converse::relaxations::{
    build_lp_je, build_lp_sc, build_lp_sw, check_dp_feasible, check_dpje_feasible, check_dpsi_feasible,
    check_dpsw_feasible, dpsw_objective, DualPointDp, DualPointJe, DualPointSW, DualPointSid, ScInstance, Side,
    SwInstance, DEFAULT_VAR_CAP,
};

const TOL: f64 = 1e-9;

fn oracle(inst: &SwInstance) -> f64 {
    exact_opt_sw(inst, &OracleOptions::default()).unwrap()
}

fn lp_value(model: sw_converse::lp::LpModel) -> f64 {
    let sol = solve(&model).unwrap();
    assert_eq!(sol.status, Status::Optimal);
    sol.value
}

fn phi_of(w: &Witness) -> Vec<f64> {
    match w {
        Witness::Weights { phi } => phi.clone(),
        other => panic!("unexpected witness {:?}", other),
    }
}

fn lossless_instance() -> impl Strategy<Value = ScInstance> {
    (single_pmf(1..=6), 1usize..=3).prop_map(|(s, m)| ScInstance::lossless(s, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sw_converses_lower_bound_the_optimum(inst in sw_instance()) {
        let opt = oracle(&inst);
        for r in [
            converse::meta_sw(&inst).unwrap(),
            converse::meta_je(&inst).unwrap(),
            converse::max_converse(&inst).unwrap(),
            converse::mk_improved(&inst).unwrap(),
            converse::meta_sw_eta_family(&inst).unwrap(),
        ] {
            prop_assert!(r.raw_value <= opt + TOL, "{} = {} above {}", r.name, r.raw_value, opt);
            prop_assert_eq!(r.clamped_value, r.raw_value.max(0.0));
        }
    }

    #[test]
    fn side_information_bounds_lower_bound_their_optimum(inst in sw_instance()) {
        for side in [Side::One, Side::Two] {
            let opt = exact_opt_sid(&inst, side, &OracleOptions::default()).unwrap();
            prop_assert!(converse::meta_sid(&inst, side).unwrap().raw_value <= opt + TOL);
            prop_assert!(opt <= oracle(&inst) + TOL);
        }
    }

    #[test]
    fn more_codewords_never_hurt(inst in sw_instance()) {
        let (m1, m2) = (inst.m1(), inst.m2());
        let bigger = SwInstance::new(inst.joint.clone(), m1 + 1, m2).unwrap();
        prop_assert!(oracle(&bigger) <= oracle(&inst) + TOL);
        prop_assert!(converse::meta_sw(&bigger).unwrap().raw_value <= converse::meta_sw(&inst).unwrap().raw_value + TOL);
    }

    #[test]
    fn witnesses_reproduce_their_values(inst in sw_instance()) {
        let sw = converse::meta_sw(&inst).unwrap();
        match &sw.witness {
            Witness::SwWeights { phi_hat, phi_12, phi_21 } => {
                let v = converse::sw_weights_objective(&inst, phi_hat, phi_12, phi_21);
                prop_assert!((v - sw.raw_value).abs() <= TOL);
            }
            other => prop_assert!(false, "unexpected witness {:?}", other),
        }
        let je = converse::meta_je(&inst).unwrap();
        let pt = DualPointJe::from_phi(&inst, &phi_of(&je.witness));
        prop_assert!((pt.objective() - je.raw_value).abs() <= TOL);
        prop_assert!(check_dpje_feasible(&inst, &pt, 1e-12).unwrap().is_empty());
        for side in [Side::One, Side::Two] {
            let sid = converse::meta_sid(&inst, side).unwrap();
            let pt = DualPointSid::from_phi(&inst, side, &phi_of(&sid.witness));
            prop_assert!((pt.objective() - sid.raw_value).abs() <= TOL);
            prop_assert!(check_dpsi_feasible(&inst, &pt, 1e-12).unwrap().is_empty());
        }
    }

    #[test]
    fn mirroring_swaps_the_sides(inst in sw_instance()) {
        let mirror = inst.mirrored();
        let a = converse::meta_sid(&inst, Side::One).unwrap().raw_value;
        let b = converse::meta_sid(&mirror, Side::Two).unwrap().raw_value;
        prop_assert!((a - b).abs() <= TOL);
        let a = converse::meta_sw(&inst).unwrap().raw_value;
        let b = converse::meta_sw(&mirror).unwrap().raw_value;
        prop_assert!((a - b).abs() <= TOL);
        prop_assert!((oracle(&inst) - oracle(&mirror)).abs() <= TOL);
    }

    #[test]
    fn chains_hold(inst in sw_instance()) {
        let c = converse::mk_classic(&inst).unwrap().raw_value;
        let i = converse::mk_improved(&inst).unwrap().raw_value;
        prop_assert!(c <= i + TOL);
        prop_assert!(i <= converse::meta_sw(&inst).unwrap().raw_value + TOL);
        for side in [Side::One, Side::Two] {
            let c = converse::sid_classic(&inst, side).unwrap().raw_value;
            let i = converse::sid_improved(&inst, side).unwrap().raw_value;
            prop_assert!(c <= i + TOL);
            prop_assert!(i <= converse::meta_sid(&inst, side).unwrap().raw_value + TOL);
        }
        let max = converse::max_converse(&inst).unwrap().raw_value;
        prop_assert!(converse::meta_je(&inst).unwrap().raw_value <= max + TOL);
        prop_assert!(converse::meta_sid(&inst, Side::One).unwrap().raw_value <= max + TOL);
    }

    #[test]
    fn weights_points_are_feasible(inst in sw_instance(), seed in any::<u64>(), alpha in 0.0f64..=1.0) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let p = inst.joint.mass().to_vec();
        let (a, b, c) = (random_below(&mut rng, &p), random_below(&mut rng, &p), random_below(&mut rng, &p));
        let th = converse::weights_point(&inst, &a, &b, &c, alpha).unwrap();
        prop_assert!(check_dpsw_feasible(&inst, &th, 1e-12).unwrap().is_empty());
        prop_assert!(dpsw_objective(&inst, &th).unwrap() <= oracle(&inst) + TOL);
    }

    #[test]
    fn mk_flows_attain_the_classic_bound(inst in sw_instance(), t in 1e-3f64..=1.0) {
        let th = converse::mk_flows(&inst, t).unwrap();
        prop_assert!(check_dpsw_feasible(&inst, &th, 1e-12).unwrap().is_empty());
        prop_assert!(dpsw_objective(&inst, &th).unwrap() <= converse::mk_classic(&inst).unwrap().raw_value + TOL);
    }

    #[test]
    fn joint_encoding_lp_matches_its_dual(inst in sw_instance()) {
        let model = build_lp_je(&inst, DEFAULT_VAR_CAP).unwrap();
        let p = lp_value(model.clone());
        let d = lp_value(dualize(&model));
        prop_assert!((p - d).abs() <= 1e-7 * p.abs().max(1.0));
        prop_assert!(converse::meta_je(&inst).unwrap().raw_value <= p + 1e-7);
    }

    #[test]
    fn lossless_chain_and_lp(inst in lossless_instance()) {
        let src = inst.source.clone();
        let j = TiltedInfo::lossless(&src);
        let gamma = converse::lossless_gamma_bound(&src, inst.m).unwrap().raw_value;
        let kv = converse::kv_tilted_improved(&inst, &j).unwrap().raw_value;
        let caps = converse::meta_lossless(&src, inst.m).unwrap().raw_value;
        let lossy = converse::meta_lossy(&inst).unwrap().raw_value;
        prop_assert!(gamma <= kv + TOL && kv <= caps + TOL);
        prop_assert!((caps - lossy).abs() <= TOL);
        let lp = lp_value(build_lp_sc(&inst, DEFAULT_VAR_CAP).unwrap());
        prop_assert!(lossy <= lp + 1e-7);
        prop_assert!(lp <= exact_opt_sc(&inst, &OracleOptions::default()).unwrap() + 1e-7);
        prop_assert!(converse::palzer_timo(&inst, &j).unwrap().raw_value <= caps + TOL);
    }

    #[test]
    fn hypothesis_testing_is_dominated(inst in lossless_instance(), q in single_pmf(1..=6)) {
        prop_assume!(q.len() == inst.n_src());
        let ht = converse::hypothesis_testing_bound(&inst, &q).unwrap().raw_value;
        prop_assert!(ht <= converse::meta_lossy(&inst).unwrap().raw_value + TOL);
    }

    #[test]
    fn lp_duals_are_dual_feasible(inst in lossless_instance()) {
        let sol = solve(&build_lp_sc(&inst, DEFAULT_VAR_CAP).unwrap()).unwrap();
        let pt = DualPointDp::from_lp_duals(&inst, &sol.dual);
        prop_assert!(check_dp_feasible(&inst, &pt, 1e-7).unwrap().is_empty());
        prop_assert!((pt.objective() - sol.value).abs() <= 1e-7);
    }

    #[test]
    fn np_function_matches_sup_form(p in single_pmf(1..=6), seed in any::<u64>(), mstar in 0.0f64..=1.0) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let q = random_single(&mut rng, p.len(), p.len());
        let a = converse::np_alpha(&p, &q, mstar).unwrap();
        let b = converse::alpha_sup_form(&p, &q, mstar).unwrap();
        prop_assert!((a - b).abs() <= TOL);
    }

    #[test]
    fn joint_pmf_marginals_and_transpose(j in joint_pmf()) {
        let (n1, n2) = j.sizes();
        let m1 = j.marginal(Axis::First);
        let m2 = j.marginal(Axis::Second);
        prop_assert_eq!((m1.len(), m2.len()), (n1, n2));
        prop_assert!((m1.mass().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!((m2.mass().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let t = j.transpose();
        prop_assert_eq!(t.sizes(), (n2, n1));
        prop_assert_eq!(&t.transpose(), &j);
        prop_assert!(max_abs(t.marginal(Axis::First).mass().iter().zip(m2.mass()).map(|(a, b)| a - b)) <= 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sw_lp_duals_certify_the_relaxation(inst in sw_instance()) {
        let model = build_lp_sw(&inst, DEFAULT_VAR_CAP).unwrap();
        let sol = solve(&model).unwrap();
        prop_assert_eq!(sol.status, Status::Optimal);
        let theta = DualPointSW::from_lp_duals(&inst, &sol.dual);
        prop_assert!(check_dpsw_feasible(&inst, &theta, 1e-7).unwrap().is_empty());
        prop_assert!((dpsw_objective(&inst, &theta).unwrap() - sol.value).abs() <= 1e-7);
        prop_assert!(converse::meta_sw(&inst).unwrap().raw_value <= sol.value + 1e-7);
        prop_assert!(sol.value <= oracle(&inst) + 1e-7);
    }
}

#[test]
fn invalid_pmfs_are_rejected() {
    assert!(SinglePmf::new(vec![0.5, 0.6]).is_err());
    assert!(SinglePmf::new(vec![1.2, -0.2]).is_err());
    assert!(JointPmf::new(2, 2, vec![0.5, 0.5]).is_err());
    assert!(SwInstance::new(JointPmf::uniform(2, 2), 0, 1).is_err());
}
