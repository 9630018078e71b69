//! Quick invariant suite behind `selftest`: small samples of the properties
//! the test suites check at scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidkit::attack::{attack_decomposition, AttackConfig, Check};
use braidkit::braid::{
    artin_generators, is_trivial_handle_reduction, random_word_with, shifted_conjugate,
    words_equal, BraidWord, DEFAULT_REDUCTION_BUDGET,
};
use braidkit::extract::{build_mscsp_dhdp, prescribed_probes, DhdpTarget};
use braidkit::protocol::dehornoy::secret_alphabet;
use braidkit::protocol::{ka_run, KaConfig, Preset};
use braidkit::solve::SolverConfig;

fn word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
    random_word_with(&artin_generators(n), len, true, rng).expect("n >= 2")
}

fn braid_relations(rng: &mut ChaCha8Rng) -> bool {
    (0..200).all(|_| {
        let n = rng.gen_range(3..=8);
        let len = rng.gen_range(0..=12);
        let w = word(rng, n, len);
        let i = rng.gen_range(1..n as i32 - 1);
        let s = |k: i32| BraidWord::new(n, vec![k]).expect("in range");
        let braid = s(i).compose(&s(i + 1)).compose(&s(i));
        let braid_r = s(i + 1).compose(&s(i)).compose(&s(i + 1));
        let far = (i + 2..n as i32).all(|j| words_equal(&s(i).compose(&s(j)), &s(j).compose(&s(i))));
        words_equal(&braid, &braid_r)
            && far
            && words_equal(&w.compose(&w.invert()), &BraidWord::identity(n))
            && words_equal(&w.conjugate(&braid), &w.conjugate(&braid_r))
    })
}

fn nf_agrees_with_handles(rng: &mut ChaCha8Rng) -> bool {
    (0..200).all(|k| {
        let n = rng.gen_range(2..=6);
        let len = rng.gen_range(0..=10);
        let a = word(rng, n, len);
        // half the pairs are equal by construction
        let b = if k % 2 == 0 {
            let c = word(rng, n, 4);
            c.compose(&a).compose(&c.invert()).conjugate(&c.invert())
        } else {
            a.compose(&word(rng, n, 3))
        };
        let trivial = is_trivial_handle_reduction(&a.compose(&b.invert()), DEFAULT_REDUCTION_BUDGET);
        trivial.is_ok_and(|t| t == words_equal(&a, &b))
    })
}

fn protocol_agreement(seed: u64) -> bool {
    Preset::ALL.iter().all(|&p| {
        (0..3).all(|i| {
            KaConfig::preset(p, 8, 8, seed + i)
                .and_then(|c| ka_run(&c, seed + i))
                .is_ok()
        })
    })
}

fn ce_exactness(seed: u64) -> bool {
    (0..5).all(|i| {
        let Ok(t) = KaConfig::preset(Preset::Klchkp, 8, 8, seed + i).and_then(|c| ka_run(&c, seed + i)) else {
            return false;
        };
        let (public, secret) = (t.public(), t.secret());
        let target = secret.a1.compose(&public.z);
        let Ok(inst) = prescribed_probes(public, DhdpTarget::A)
            .and_then(|s| build_mscsp_dhdp(public, DhdpTarget::A, s.generators()))
        else {
            return false;
        };
        inst.pairs
            .iter()
            .all(|p| words_equal(&p.y, &target.compose(&p.x).compose(&target.invert())))
    })
}

fn ld_identity(rng: &mut ChaCha8Rng) -> bool {
    (0..100).all(|_| {
        let alpha = secret_alphabet(6).expect("n >= 3");
        let mut w = || random_word_with(alpha.generators(), 3, true, rng).expect("nonempty");
        let (r, s, t) = (w(), w(), w());
        let lhs = shifted_conjugate(&r, &shifted_conjugate(&s, &t));
        let rhs = shifted_conjugate(&shifted_conjugate(&r, &s), &shifted_conjugate(&r, &t));
        words_equal(&lhs, &rhs)
    })
}

fn attack_smoke(seed: u64) -> bool {
    let Ok(t) = KaConfig::preset(Preset::Klchkp, 5, 2, seed).and_then(|c| ka_run(&c, seed)) else {
        return false;
    };
    let cfg = AttackConfig {
        solver: SolverConfig {
            max_len: 2,
            ..SolverConfig::default()
        },
        ..AttackConfig::default()
    };
    attack_decomposition(t.public(), &cfg).is_ok_and(|mut r| {
        r.set_verdict(&t.secret().kappa);
        r.success && r.harness_verdict == Some(true)
    })
}

pub fn run_all(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |name: &str, pass: bool| Check {
        name: name.to_string(),
        pass,
    };
    vec![
        check("braid-relations", braid_relations(&mut rng)),
        check("normal-form-vs-handle-reduction", nf_agrees_with_handles(&mut rng)),
        check("protocol-agreement", protocol_agreement(seed)),
        check("ce-exactness", ce_exactness(seed)),
        check("left-self-distributivity", ld_identity(&mut rng)),
        check("decomposition-smoke", attack_smoke(seed)),
    ]
}
