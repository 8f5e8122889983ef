use kaleido_core::factorization::{find_complement, is_factorization, period_index};
use kaleido_core::group::abelian_groups_up_to;
use kaleido_core::metric::{rigidity_check, verify_witness, PlanarPointSet};
use kaleido_core::space::{cayley_space, congruences, join, set_orbit};
use kaleido_core::splitting::generate_splittable;
use kaleido_core::transversal::{find_kaleidoscopic_coloring, verify_kaleidoscopic};
use kaleido_core::{AbelianGroupSpec, Configuration, Exec};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = AbelianGroupSpec> {
    let groups = abelian_groups_up_to(16);
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

fn group_and_subset() -> impl Strategy<Value = (AbelianGroupSpec, Configuration)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), proptest::collection::btree_set(0..n, 1..=n))
            .prop_map(|(g, s)| (g, Configuration::new(s)))
    })
}

fn translate(g: &AbelianGroupSpec, a: &Configuration, t: usize) -> Configuration {
    a.iter().map(|x| g.add(x, t)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn orbits_are_closed((g, a) in group_and_subset()) {
        let orbit = set_orbit(&cayley_space(&g), &a).unwrap();
        prop_assert!(orbit.contains(&a));
        for b in &orbit {
            for t in 0..g.order() {
                prop_assert!(orbit.binary_search(&translate(&g, b, t)).is_ok());
            }
        }
        prop_assert_eq!(g.order() % orbit.len(), 0);
    }

    #[test]
    fn periodicity_is_translation_invariant((g, a) in group_and_subset(), t in 0usize..16) {
        let t = t % g.order();
        let shifted = translate(&g, &a, t);
        prop_assert_eq!(period_index(&g, &a).unwrap(), period_index(&g, &shifted).unwrap());
    }

    #[test]
    fn complements_survive_translation((g, a) in group_and_subset(), t in 0usize..16) {
        let t = t % g.order();
        let shifted = translate(&g, &a, t);
        let c1 = find_complement(&g, &a).unwrap();
        let c2 = find_complement(&g, &shifted).unwrap();
        prop_assert_eq!(c1.is_some(), c2.is_some());
        if let Some(b) = c1 {
            prop_assert!(is_factorization(&g, &a, &b));
            prop_assert!(is_factorization(&g, &shifted, &b));
        }
    }

    #[test]
    fn colorings_verify((g, a) in group_and_subset()) {
        let space = cayley_space(&g);
        if let Some(chi) = find_kaleidoscopic_coloring(&space, &a).unwrap() {
            prop_assert!(verify_kaleidoscopic(&space, &a, &chi));
            prop_assert!(chi.classes().iter().all(|c| c.len() * a.len() == g.order()));
        }
    }

    #[test]
    fn rigidity_ignores_order_and_isometries(
        pts in proptest::collection::btree_set((-4i64..5, -4i64..5), 3..6),
        shift in (-3i64..4, -3i64..4),
        turns in 0u8..4,
        mirror in any::<bool>(),
        rot in 0usize..6,
    ) {
        let mut list: Vec<(i64, i64)> = pts.into_iter().collect();
        let base = rigidity_check(&PlanarPointSet::from_integers(&list).unwrap()).unwrap();
        if let Some(w) = &base.witness {
            prop_assert!(verify_witness(&PlanarPointSet::from_integers(&list).unwrap(), w));
        }
        let len = list.len();
        list.rotate_left(rot % len);
        let moved: Vec<(i64, i64)> = list
            .iter()
            .map(|&(x, y)| {
                let (x, y) = if mirror { (x, -y) } else { (x, y) };
                let (x, y) = (0..turns).fold((x, y), |(x, y), _| (-y, x));
                (x + shift.0, y + shift.1)
            })
            .collect();
        let k = PlanarPointSet::from_integers(&moved).unwrap();
        let v = rigidity_check(&k).unwrap();
        prop_assert_eq!(v.rigid, base.rigid);
        if let Some(w) = &v.witness {
            prop_assert!(verify_witness(&k, w));
        }
    }
}

#[test]
fn congruences_closed_under_join_and_meet() {
    for g in abelian_groups_up_to(12) {
        let space = cayley_space(&g);
        let lattice = congruences(&space);
        for e in &lattice {
            for f in &lattice {
                assert!(lattice.contains(&join(&space, e, f)), "{g}");
                assert!(lattice.contains(&e.meet(f).unwrap()), "{g}");
            }
        }
    }
}

#[test]
fn exec_strategies_agree_on_splitting() {
    for g in abelian_groups_up_to(8) {
        let space = cayley_space(&g);
        assert_eq!(
            generate_splittable(&space, 256, Exec::Sequential).unwrap(),
            generate_splittable(&space, 256, Exec::Parallel).unwrap()
        );
    }
}
