mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use tauq::additive::{
    compose_right_additive, decompose_right_additive, find, verify_additive, Flavor,
    LMinusConstraint,
};
use tauq::chains::{
    default_bound, nakayama_minus, nakayama_pairs, nakayama_plus, theta_chain, theta_n, Termination,
};
use tauq::classify::classify;
use tauq::io::corpus;
use tauq::{TranslationQuiver, VertexCombination, VertexId};

fn fixtures() -> &'static [TranslationQuiver] {
    static CELL: OnceLock<Vec<TranslationQuiver>> = OnceLock::new();
    CELL.get_or_init(|| {
        common::FIXTURES
            .iter()
            .map(|n| corpus::load(n).unwrap())
            .collect()
    })
}

fn combination(q: &TranslationQuiver, terms: &[(usize, i32)]) -> VertexCombination {
    let vs: Vec<&VertexId> = q.vertices().iter().collect();
    VertexCombination::from_terms(
        terms
            .iter()
            .map(|&(i, c)| (vs[i % vs.len()].clone(), BigInt::from(c))),
    )
}

fn terms(lo: i32) -> impl Strategy<Value = Vec<(usize, i32)>> {
    prop::collection::vec((0usize..64, lo..=4), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn operators_are_additive(k in 0..common::FIXTURES.len(), u in terms(-4), v in terms(-4), s in -3i32..=3) {
        let q = &fixtures()[k];
        let (u, v) = (combination(q, &u), combination(q, &v));
        let sum = &u + &v;
        let s = BigInt::from(s);
        for op in [
            TranslationQuiver::theta_plus,
            TranslationQuiver::theta_minus,
            TranslationQuiver::tau_plus_ext,
            TranslationQuiver::tau_minus_ext,
            TranslationQuiver::phi_plus,
            TranslationQuiver::phi_minus,
        ] {
            prop_assert_eq!(op(q, &sum).unwrap(), op(q, &u).unwrap() + op(q, &v).unwrap());
            prop_assert_eq!(op(q, &u.scale(&s)).unwrap(), op(q, &u).unwrap().scale(&s));
        }
    }

    #[test]
    fn tau_plus_and_minus_are_inverse(k in 0..common::FIXTURES.len(), u in terms(-4)) {
        let q = &fixtures()[k];
        let u = combination(q, &u);
        let off_proj = u.restrict(|x| !q.is_projective(x));
        let off_inj = u.restrict(|x| !q.is_injective(x));
        prop_assert_eq!(q.tau_minus_ext(&q.tau_plus_ext(&u).unwrap()).unwrap(), off_proj.clone());
        prop_assert_eq!(q.tau_plus_ext(&q.tau_minus_ext(&u).unwrap()).unwrap(), off_inj);
        prop_assert_eq!(q.tau_plus_ext(&u).unwrap(), q.tau_plus_ext(&off_proj).unwrap());
    }

    #[test]
    fn theta_n_is_additive_on_effective_combinations(
        k in 0..common::FIXTURES.len(),
        u in terms(0),
        v in terms(0),
        n in 0usize..10,
    ) {
        let q = &fixtures()[k];
        let (u, v) = (combination(q, &u), combination(q, &v));
        prop_assert_eq!(theta_n(q, n, &(&u + &v)).unwrap(), theta_n(q, n, &u).unwrap() + theta_n(q, n, &v).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chain_and_solver_verdicts_agree_on_za_slices(n in 1usize..9, r in 1usize..6, flip: bool) {
        prop_assume!(common::za_valid(n, r));
        let q = common::za_slice(n, r);
        let q = if flip { common::opposite(&q) } else { q };
        prop_assert!(q.validate().ok);
        let report = classify(&q, default_bound(&q)).unwrap();
        prop_assert!(report.artinian.artinian);
        prop_assert_eq!(report.chain_verdicts(), report.solver_verdicts());
    }

    #[test]
    fn decomposition_reconstructs(k in 0usize..3, coeffs in prop::collection::vec(1i64..=6, 20)) {
        let q = corpus::load(["A2", "PT1", "EX453"][k]).unwrap();
        let bound = default_bound(&q);
        let a: BTreeMap<VertexId, BigInt> = q
            .projectives()
            .iter()
            .zip(&coeffs)
            .map(|(x, &c)| (x.clone(), BigInt::from(c)))
            .collect();
        let l = compose_right_additive(&q, &a, bound).unwrap();
        prop_assert!(verify_additive(&q, &l, Flavor::Right, LMinusConstraint::Free).ok);
        prop_assert_eq!(decompose_right_additive(&q, &l, bound).unwrap(), a);
    }
}

#[test]
fn za_slices_are_translation_quivers() {
    for n in 1..9 {
        for r in 1..6 {
            let q = common::za_slice(n, r);
            assert_eq!(q.validate().ok, common::za_valid(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn nakayama_differences_are_constant() {
    for q in fixtures() {
        let bound = default_bound(q);
        for (flavor, c) in [
            (Flavor::Right, LMinusConstraint::Free),
            (Flavor::Both, LMinusConstraint::Free),
        ] {
            let Some(found) = find(q, flavor, c).result else {
                continue;
            };
            let l = |x: &VertexId| found.values.get(x).cloned().unwrap_or_default();
            for (a, pair) in nakayama_pairs(q, bound) {
                let n = pair.n.unwrap();
                let chain = &pair.chain;
                let diffs: Vec<BigInt> = (0..=n)
                    .map(|i| chain.top[i].evaluate(l) - chain.bottom[i].evaluate(l))
                    .collect();
                assert!(
                    diffs.windows(2).all(|w| w[0] == w[1]),
                    "{} {a} {flavor}: {diffs:?}",
                    q.name()
                );
            }
        }
    }
}

#[test]
fn nakayama_plus_inverts_minus() {
    for q in fixtures() {
        let bound = default_bound(q);
        for a in q.vertices() {
            let r = nakayama_minus(q, a, bound).unwrap();
            if let Some(b) = &r.target {
                assert_eq!(
                    nakayama_plus(q, b, bound).unwrap().source.as_ref(),
                    Some(a),
                    "{}",
                    q.name()
                );
            }
        }
    }
}

#[test]
fn untruncated_ladders_follow_the_plain_recursion() {
    for q in fixtures() {
        for x in q.vertices() {
            let chain = theta_chain(q, x, default_bound(q)).unwrap();
            assert_eq!(chain.termination, Termination::ReachedZero);
            if !chain.truncated.is_empty() {
                continue;
            }
            let b = &chain.bottom;
            assert_eq!(b[1], q.theta_plus(&b[0]).unwrap());
            for n in 2..b.len() {
                let raw = q.theta_plus(&b[n - 1]).unwrap() - q.tau_plus_ext(&b[n - 2]).unwrap();
                assert_eq!(b[n], raw, "{} {x} step {n}", q.name());
            }
            let last = b.len() - 1;
            assert!(q.tau_plus_ext(&b[last - 1]).unwrap().is_zero());
        }
    }
}

#[test]
fn non_artinian_fixture_cycles() {
    let q = corpus::load("LOOP2").unwrap();
    let chain = theta_chain(&q, &VertexId::from("X"), 64).unwrap();
    assert!(matches!(chain.termination, Termination::StateCycle { .. }));
}
