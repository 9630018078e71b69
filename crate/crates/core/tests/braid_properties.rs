use braidkit::braid::{
    self, artin_generators, delta, is_trivial_handle_reduction, normal_form, shift,
    shifted_conjugate, unshift, words_equal, BraidWord, DEFAULT_REDUCTION_BUDGET,
};
use proptest::prelude::*;

fn w(n: usize, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let m = (n - 1) as i32;
    prop::collection::vec((1..=m, any::<bool>()), 0..=max_len)
        .prop_map(move |v| w(n, &v.into_iter().map(|(i, s)| if s { i } else { -i }).collect::<Vec<_>>()))
}

fn arb_sized_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=8).prop_flat_map(move |n| arb_word(n, max_len))
}

// --- independent small-case oracle -------------------------------------

/// Final position of each strand after running a positive word.
fn final_positions(n: usize, letters: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..n).collect(); // at[pos] = strand
    for &l in letters {
        let i = l as usize;
        at.swap(i - 1, i);
    }
    let mut pos = vec![0; n];
    for (p, s) in at.iter().enumerate() {
        pos[*s] = p;
    }
    pos
}

fn is_permutation_braid(n: usize, letters: &[i32]) -> bool {
    let mut crossed = vec![vec![false; n]; n];
    let mut at: Vec<usize> = (0..n).collect();
    for &l in letters {
        if l < 0 {
            return false;
        }
        let i = l as usize;
        let (a, b) = (at[i - 1].min(at[i]), at[i - 1].max(at[i]));
        if crossed[a][b] {
            return false;
        }
        crossed[a][b] = true;
        at.swap(i - 1, i);
    }
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Bubble-sort word whose final positions are `pos`.
fn word_for_positions(pos: &[usize]) -> Vec<i32> {
    let n = pos.len();
    // arrangement: strand at each final position
    let mut target = vec![0; n];
    for (s, p) in pos.iter().enumerate() {
        target[*p] = s;
    }
    let mut at: Vec<usize> = (0..n).collect();
    let mut letters = Vec::new();
    for p in 0..n {
        let k = at.iter().position(|&s| s == target[p]).unwrap();
        for j in (p + 1..=k).rev() {
            at.swap(j - 1, j);
            letters.push(j as i32);
        }
    }
    letters
}

fn starting_set(n: usize, letters: &[i32]) -> Vec<usize> {
    let pos = final_positions(n, letters);
    (1..n).filter(|&i| pos[i - 1] > pos[i]).collect()
}

fn finishing_set(n: usize, letters: &[i32]) -> Vec<usize> {
    let pos = final_positions(n, letters);
    let mut at = vec![0; n];
    for (s, p) in pos.iter().enumerate() {
        at[*p] = s;
    }
    (1..n).filter(|&i| at[i - 1] > at[i]).collect()
}

#[test]
fn normal_forms_match_exhaustive_left_weighted_enumeration() {
    for n in 3..=4 {
        let delta_len = n * (n - 1) / 2;
        let simples: Vec<Vec<i32>> = all_permutations(n)
            .into_iter()
            .map(|p| word_for_positions(&p))
            .filter(|l| !l.is_empty() && l.len() != delta_len)
            .collect();
        for s in &simples {
            assert!(is_permutation_braid(n, s));
        }
        let mut forms: Vec<Vec<Vec<i32>>> = vec![vec![]];
        for a in &simples {
            forms.push(vec![a.clone()]);
            for b in &simples {
                let sb = starting_set(n, b);
                let fa = finishing_set(n, a);
                if sb.iter().all(|i| fa.contains(i)) {
                    forms.push(vec![a.clone(), b.clone()]);
                }
            }
        }
        let d = delta(n).unwrap();
        for inf in -1i64..=1 {
            for form in &forms {
                let mut word = d.pow(inf);
                for f in form {
                    word = word.compose(&w(n, f));
                }
                let nf = normal_form(&word);
                assert_eq!(nf.infimum(), inf, "{form:?}");
                assert_eq!(nf.canonical_length(), form.len(), "{form:?}");
                for (got, want) in nf.factors().iter().zip(form) {
                    assert_eq!(
                        final_positions(n, &got.to_letters()),
                        final_positions(n, want)
                    );
                }
            }
        }
    }
}

#[test]
fn sigma2_sigma1_is_one_factor() {
    let nf = normal_form(&w(3, &[2, 1]));
    assert_eq!((nf.infimum(), nf.canonical_length()), (0, 1));
    assert_eq!(
        final_positions(3, &nf.factors()[0].to_letters()),
        final_positions(3, &[2, 1])
    );
}

#[test]
fn sigma1_sigma3_canonical_length_matches_oracle() {
    // a permutation braid that is neither e nor Δ has canonical length 1
    assert!(is_permutation_braid(4, &[1, 3]));
    assert_eq!(braid::canonical_length(&w(4, &[1, 3])), 1);
}

#[test]
fn braid_relations_hold_up_to_eight_strands() {
    for n in 2..=8 {
        for i in 1..n as i32 {
            for j in 1..n as i32 {
                let (a, b) = (w(n, &[i]), w(n, &[j]));
                if (i - j).abs() >= 2 {
                    assert!(braid::commute(&a, &b));
                } else if (i - j).abs() == 1 {
                    assert!(words_equal(&w(n, &[i, j, i]), &w(n, &[j, i, j])));
                    assert!(!braid::commute(&a, &b));
                }
            }
        }
    }
}

#[test]
fn handle_reduction_agrees_with_normal_form_on_random_words() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut trivial = 0;
    for k in 0..1000 {
        let n = rng.gen_range(2..=6);
        let gens = artin_generators(n);
        let len = rng.gen_range(0..=16);
        let a = braid::random_word_with(&gens, len, true, &mut rng).unwrap();
        // half of the inputs are made trivial on purpose
        let x = if k % 2 == 0 {
            let b = braid::random_word_with(&gens, len, true, &mut rng).unwrap();
            a.compose(&b.invert())
        } else {
            let r = braid::random_word_with(&gens, 4, true, &mut rng).unwrap();
            r.conjugate(&a).compose(&r.compose(&a).compose(&r.invert()).invert())
        };
        let by_nf = braid::is_identity(&x);
        let by_handles = is_trivial_handle_reduction(&x, DEFAULT_REDUCTION_BUDGET).unwrap();
        assert_eq!(by_nf, by_handles, "{x:?}");
        trivial += by_nf as usize;
    }
    assert!(trivial >= 500);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity(a in arb_word(6, 10), b in arb_word(6, 10), c in arb_word(6, 10)) {
        prop_assert!(words_equal(&a.compose(&b).compose(&c), &a.compose(&b.compose(&c))));
    }

    #[test]
    fn group_laws(a in arb_sized_word(20)) {
        let e = BraidWord::identity(a.strands());
        prop_assert!(words_equal(&a.compose(&a.invert()), &e));
        prop_assert!(words_equal(&e.compose(&a), &a));
        prop_assert!(words_equal(&a.compose(&e), &a));
        prop_assert_eq!(a.invert().invert(), a);
    }

    #[test]
    fn normal_form_is_sound(a in arb_sized_word(30)) {
        let nf = normal_form(&a);
        prop_assert!(nf.is_well_formed());
        prop_assert!(words_equal(&nf.to_word(), &a));
        prop_assert_eq!(normal_form(&nf.to_word()), nf);
    }

    #[test]
    fn equal_inputs_share_a_normal_form(a in arb_word(5, 12), r in arb_word(5, 6)) {
        // insert r r⁻¹ and a braid relation into the middle of a
        let mid = a.len() / 2;
        let mut letters = a.letters()[..mid].to_vec();
        letters.extend_from_slice(r.letters());
        letters.extend_from_slice(&[1, 2, 1, -2, -1, -2]);
        letters.extend_from_slice(r.invert().letters());
        letters.extend_from_slice(&a.letters()[mid..]);
        prop_assert_eq!(normal_form(&w(5, &letters)), normal_form(&a));
    }

    #[test]
    fn oracle_agreement(a in arb_word(5, 10), b in arb_word(5, 10)) {
        let diff = a.compose(&b.invert());
        let trivial = is_trivial_handle_reduction(&diff, DEFAULT_REDUCTION_BUDGET).unwrap();
        prop_assert_eq!(words_equal(&a, &b), trivial);
    }

    #[test]
    fn delta_squared_is_central(g in arb_sized_word(20)) {
        let d2 = delta(g.strands()).unwrap().pow(2);
        prop_assert!(words_equal(&d2.compose(&g), &g.compose(&d2)));
    }

    #[test]
    fn shift_is_an_injective_homomorphism(a in arb_word(6, 12), b in arb_word(6, 12)) {
        prop_assert!(words_equal(&shift(&a.compose(&b)), &shift(&a).compose(&shift(&b))));
        prop_assert_eq!(unshift(&shift(&a)).unwrap(), a.clone());
        prop_assert_eq!(words_equal(&a, &b), words_equal(&shift(&a), &shift(&b)));
    }

    #[test]
    fn endomorphisms_are_homomorphisms(a in arb_word(5, 10), b in arb_word(5, 10), h in arb_word(5, 6)) {
        for f in [braid::Endomorphism::Identity, braid::Endomorphism::Shift, braid::Endomorphism::Inner(h.clone())] {
            prop_assert!(words_equal(&f.apply(&a.compose(&b)), &f.apply(&a).compose(&f.apply(&b))));
        }
    }
}

#[test]
fn shifted_conjugation_is_left_self_distributive() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let gens = artin_generators(4);
    for _ in 0..1000 {
        let r = braid::random_word_with(&gens, 4, true, &mut rng).unwrap();
        let p = braid::random_word_with(&gens, 4, true, &mut rng).unwrap();
        let q = braid::random_word_with(&gens, 4, true, &mut rng).unwrap();
        let lhs = shifted_conjugate(&r, &shifted_conjugate(&p, &q));
        let rhs = shifted_conjugate(&shifted_conjugate(&r, &p), &shifted_conjugate(&r, &q));
        assert!(words_equal(&lhs, &rhs));
    }
}
