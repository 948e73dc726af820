//! Invariants checked on random inputs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use glbc::chars::{dual_spec, regular_thetas, CharSpec, Evaluator};
use glbc::cyclo::CycValue;
use glbc::fields::FieldTower;
use glbc::matrices::{basechange_class, class_of, descend_class, enumerate_classes, MatF};
use glbc::mult::{EmbeddedSubgroup, Method, MultEngine};
use proptest::prelude::*;

fn cyc(m: u64) -> impl Strategy<Value = CycValue> {
    prop::collection::vec((0..m, -5i128..=5), 0..6).prop_map(move |t| CycValue::from_terms(m, t))
}

type Engines = Mutex<HashMap<(u64, usize), Arc<MultEngine>>>;

fn engine(q: u64, top: usize) -> Arc<MultEngine> {
    static E: OnceLock<Engines> = OnceLock::new();
    let mut g = E.get_or_init(Default::default).lock().unwrap();
    g.entry((q, top)).or_insert_with(|| Arc::new(MultEngine::build(q, &[top]).unwrap())).clone()
}

fn matrix(level: usize, n: usize, entries: &[u32], size: u32) -> MatF {
    MatF::from_fn(level, n, |i, j| entries[i * n + j] % size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring_laws(a in cyc(24), b in cyc(24), c in cyc(24), k in prop::sample::select(vec![1u64, 5, 7, 11, 13])) {
        let lhs = (&(&a + &b) * &c).reduce().unwrap();
        let rhs = (&(&a * &c) + &(&b * &c)).reduce().unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
    }

    #[test]
    fn cuspidal_values_are_frobenius_invariant(case in 0usize..4, pick in any::<prop::sample::Index>()) {
        let (n, q) = [(2usize, 3u64), (2, 4), (3, 2), (4, 2)][case];
        let eng = engine(q, n);
        let ev = eng.evaluator();
        let thetas = regular_thetas(n, q);
        let a = thetas[pick.index(thetas.len())];
        let m = q.pow(n as u32) - 1;
        let b = a * q % m;
        for c in enumerate_classes(ev.tower(), n, 1).unwrap() {
            prop_assert_eq!(
                ev.value(&CharSpec::cuspidal(n, q, a), &c).unwrap(),
                ev.value(&CharSpec::cuspidal(n, q, b), &c).unwrap()
            );
        }
    }

    #[test]
    fn inverse_gives_conjugate_value(entries in prop::collection::vec(0u32..4, 4), pick in any::<prop::sample::Index>()) {
        let eng = engine(4, 2);
        let t = eng.tower();
        let lv = t.level(1).unwrap();
        let g = matrix(1, 2, &entries, 4);
        prop_assume!(g.is_invertible(lv));
        let thetas = regular_thetas(2, 4);
        let pi = CharSpec::cuspidal(2, 4, thetas[pick.index(thetas.len())]);
        let v = eng.evaluator().value_at(&pi, &g).unwrap();
        let w = eng.evaluator().value_at(&pi, &g.inverse(lv).unwrap()).unwrap();
        prop_assert_eq!(w.clone(), v.conj());
        prop_assert_eq!(w, eng.evaluator().value_at(&dual_spec(&pi).unwrap(), &g).unwrap());
    }

    #[test]
    fn class_is_conjugation_invariant(g in prop::collection::vec(0u32..2, 9), x in prop::collection::vec(0u32..2, 9)) {
        let t = FieldTower::build(2, &[3]).unwrap();
        let lv = t.level(1).unwrap();
        let (g, x) = (matrix(1, 3, &g, 2), matrix(1, 3, &x, 2));
        prop_assume!(g.is_invertible(lv) && x.is_invertible(lv));
        prop_assert_eq!(class_of(&t, &g).unwrap(), class_of(&t, &g.conjugate_by(lv, &x).unwrap()).unwrap());
    }

    #[test]
    fn basechange_then_descend_is_identity(case in 0usize..3, pick in any::<prop::sample::Index>()) {
        let (n, q) = [(2usize, 2u64), (2, 3), (3, 2)][case];
        let t = FieldTower::build(q, &[2 * n]).unwrap();
        let classes = enumerate_classes(&t, n, 1).unwrap();
        let c = &classes[pick.index(classes.len())];
        let up = basechange_class(&t, c, 2).unwrap();
        prop_assert_eq!(&descend_class(&t, &up, 1).unwrap(), c);
    }

    #[test]
    fn descend_then_basechange_on_stable_classes(case in 0usize..2, pick in any::<prop::sample::Index>()) {
        let (n, q) = [(2usize, 2u64), (2, 3)][case];
        let t = FieldTower::build(q, &[2 * n]).unwrap();
        let stable: Vec<_> = enumerate_classes(&t, n, 2)
            .unwrap()
            .into_iter()
            .filter_map(|c| descend_class(&t, &c, 1).ok().map(|d| (c, d)))
            .collect();
        prop_assume!(!stable.is_empty());
        let (c, d) = &stable[pick.index(stable.len())];
        prop_assert_eq!(&basechange_class(&t, d, 2).unwrap(), c);
    }

    #[test]
    fn elementwise_equals_classwise(case in 0usize..5, pick in any::<prop::sample::Index>(), c1 in 0u64..3, c2 in 0u64..3) {
        let (q, top) = (2u64, 4usize);
        let eng = engine(q, top);
        let (h, chis) = match case {
            0 => (EmbeddedSubgroup::LeviNN { n: 2, level: 1 }, vec![CharSpec::det(2, 2, 0); 2]),
            1 => (EmbeddedSubgroup::WeilGLnE { n: 2, small: 1, big: 2 }, vec![CharSpec::det(2, 4, c1)]),
            2 => (EmbeddedSubgroup::SplitTorus { k: 2, level: 2 }, vec![CharSpec::gl1(4, c1), CharSpec::gl1(4, c2)]),
            3 => (EmbeddedSubgroup::SubfieldGLn { n: 2, sub: 1, level: 2 }, vec![CharSpec::det(2, 2, 0)]),
            _ => (EmbeddedSubgroup::LeviNN { n: 1, level: 2 }, vec![CharSpec::gl1(4, c1), CharSpec::gl1(4, c2)]),
        };
        let (n, level) = h.ambient();
        let size = q.pow(level as u32);
        let thetas = regular_thetas(n, size);
        let pi = CharSpec::cuspidal(n, size, thetas[pick.index(thetas.len())]);
        let a = eng.inner_product(std::slice::from_ref(&pi), &h, &chis, Method::Elementwise).unwrap().m;
        let b = eng.inner_product(std::slice::from_ref(&pi), &h, &chis, Method::Classwise).unwrap().m;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn engine_evaluators_share_tower() {
    let e = engine(3, 2);
    let ev = Evaluator::new(Arc::new(FieldTower::build(3, &[2]).unwrap()));
    assert_eq!(e.tower().descriptor().hash(), ev.tower().descriptor().hash());
}
