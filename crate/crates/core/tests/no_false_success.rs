use braidkit::attack::{
    attack_decomposition, attack_dehornoy_centralizer, attack_stickel, AttackConfig,
    StickelConfig, KEY,
};
use braidkit::braid::{words_equal, BraidWord};
use braidkit::protocol::{ka_run, stickel_publics, stickel_token, DehornoyKeys, KaConfig, Preset};
use braidkit::solve::SolverConfig;
use braidkit::subgroup::SubgroupSpec;
use proptest::prelude::*;

fn cfg(max_len: usize) -> AttackConfig {
    AttackConfig {
        solver: SolverConfig {
            max_len,
            ..SolverConfig::default()
        },
        ..AttackConfig::default()
    }
}

fn letter(n: usize) -> impl Strategy<Value = i32> {
    let m = (n - 1) as i32;
    (1..=m, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tampered_ka_token(seed in 0u64..1000, l in letter(5), preset in prop::sample::select(vec![Preset::Klchkp, Preset::Cklhc])) {
        let config = KaConfig::preset(preset, 5, 2, seed).unwrap();
        let (mut public, _) = ka_run(&config, seed).unwrap().into_parts();
        public.k_a = public.k_a.compose(&BraidWord::new(5, vec![l]).unwrap());
        let report = attack_decomposition(&public, &cfg(2)).unwrap();
        prop_assert_eq!(report.success, report.checks_pass());
        if report.success {
            // the recovered factorisation must really explain the tampered token
            let a = report.recovered("a-candidate").unwrap();
            let b = report.recovered("b-candidate").unwrap();
            prop_assert!(words_equal(&a.compose(&public.z).compose(b), &public.k_a));
            for g in public.l_b.generators() {
                prop_assert!(words_equal(&a.compose(g), &g.compose(a)));
            }
        } else {
            prop_assert!(report.recovered(KEY).is_none());
        }
    }

    #[test]
    fn tampered_stickel_token(r in 0u32..=4, s in 0u32..=4, l in letter(5)) {
        let (a, b) = stickel_publics(5).unwrap();
        let c = stickel_token(&a, &b, r, s).compose(&BraidWord::new(5, vec![l]).unwrap());
        let d = stickel_token(&a, &b, 1, 2);
        let report = attack_stickel(&a, &b, &c, &d, &StickelConfig::default()).unwrap();
        prop_assert_eq!(report.success, report.checks_pass());
        if report.success {
            let ar = report.recovered("a^r-candidate").unwrap();
            let bs = report.recovered("b^s-candidate").unwrap();
            prop_assert!(words_equal(&ar.compose(bs), &c));
        }
    }

    #[test]
    fn tampered_dehornoy_commitment(seed in 0u64..1000, k in -2i64..=2, l in letter(5)) {
        let keys = DehornoyKeys::generate(5, 4, seed).unwrap();
        let r_spec = SubgroupSpec::new("R", 5, vec![BraidWord::new(5, vec![1]).unwrap()]).unwrap();
        let r = BraidWord::new(5, vec![1]).unwrap().pow(k);
        let mut commitment = keys.commit(&r);
        commitment.x = commitment.x.compose(&BraidWord::new(5, vec![l]).unwrap());
        let report = attack_dehornoy_centralizer(&keys.public, &r_spec, &commitment, &cfg(2)).unwrap();
        prop_assert_eq!(report.success, report.checks_pass());
        if report.success {
            let rc = report.recovered("r-candidate").unwrap();
            prop_assert!(words_equal(&braidkit::braid::shifted_conjugate(rc, &keys.public.p), &commitment.x));
        }
    }
}
