use std::sync::Arc;

use itertools::Itertools;
use lattice_sugeno::axioms::{axiom_check, enumerate_aggregations, AggregationEnumeration, AxiomKind, FunctionTable};
use lattice_sugeno::lattice::{distributive_expansion_check, TwoFamily};
use lattice_sugeno::recognizer::{recognize, recover_capacity, Method};
use lattice_sugeno::relations::{check_coords, common_sorting_permutation};
use lattice_sugeno::subset::Domain;
use lattice_sugeno::{Capacity, Elem, IndexSet, Lattice, LatticeSpec, RelationKind, SugenoForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POOL: &[&str] = &[
    "chain:2",
    "chain:3",
    "chain:4",
    "chain:5",
    "boolean:1",
    "boolean:2",
    "boolean:3",
    "prod:chain:2xchain:3",
    "prod:chain:3xchain:3",
    "builtin:N5",
    "builtin:M3",
    "prod:builtin:N5xchain:2",
    "prod:builtin:M3xchain:2",
];

fn lattice(spec: &str) -> Arc<Lattice> {
    Arc::new(LatticeSpec::parse(spec).unwrap().build().unwrap())
}

fn pool() -> Vec<Arc<Lattice>> {
    POOL.iter().map(|s| lattice(s)).collect()
}

fn distributive_pool() -> Vec<Arc<Lattice>> {
    pool().into_iter().filter(|l| l.is_distributive()).collect()
}

fn small_distributive() -> Vec<Arc<Lattice>> {
    distributive_pool().into_iter().filter(|l| l.size() <= 5).collect()
}

fn holds(l: &Lattice, x: &[Elem], y: &[Elem], kind: RelationKind) -> bool {
    check_coords(l, x, y, kind).is_none()
}

fn points(l: &Lattice, n: usize) -> Vec<Vec<Elem>> {
    Domain::new(l.size(), n).unwrap().points().collect()
}

/// A lattice from the pool plus a vector pair of arity `1..=3` over it.
fn lattice_and_pair(distributive_only: bool) -> impl Strategy<Value = (Arc<Lattice>, Vec<Elem>, Vec<Elem>)> {
    let lats = if distributive_only { distributive_pool() } else { pool() };
    (0..lats.len(), 1usize..=3).prop_flat_map(move |(i, n)| {
        let l = lats[i].clone();
        let k = l.size();
        (Just(l), prop::collection::vec(0..k, n), prop::collection::vec(0..k, n))
    })
}

fn capacity_strategy() -> impl Strategy<Value = Capacity> {
    let lats = distributive_pool();
    (0..lats.len(), 1usize..=3, any::<u64>()).prop_map(move |(i, n, seed)| {
        Capacity::sample(lats[i].clone(), n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lattice_laws(i in 0..POOL.len(), seed in any::<u64>()) {
        let l = lattice(POOL[i]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c]: [Elem; 3] = std::array::from_fn(|_| rand::Rng::random_range(&mut rng, 0..l.size()));
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, b), l.join(b, a));
        prop_assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
        prop_assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
        prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
        prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
    }

    #[test]
    fn every_relation_is_symmetric((l, x, y) in lattice_and_pair(false)) {
        for kind in RelationKind::ALL {
            prop_assert_eq!(holds(&l, &x, &y, kind), holds(&l, &y, &x, kind), "{}", kind);
        }
    }

    #[test]
    fn comonotone_or_comparable_implies_both_g_forms((l, x, y) in lattice_and_pair(false)) {
        if holds(&l, &x, &y, RelationKind::Comonotone) || holds(&l, &x, &y, RelationKind::Comparable) {
            prop_assert!(holds(&l, &x, &y, RelationKind::GComonotone));
            prop_assert!(holds(&l, &x, &y, RelationKind::DualGComonotone));
        }
    }

    #[test]
    fn distributive_relations_coincide((l, x, y) in lattice_and_pair(true)) {
        let g = holds(&l, &x, &y, RelationKind::GComonotone);
        for kind in [RelationKind::DualGComonotone, RelationKind::SubsetwiseJoin, RelationKind::SubsetwiseMeet] {
            prop_assert_eq!(holds(&l, &x, &y, kind), g, "{}", kind);
        }
    }

    #[test]
    fn sugeno_forms_agree_and_aggregate(m in capacity_strategy(), seed in any::<u64>()) {
        let l = m.lattice().clone();
        let n = m.arity();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Elem> = (0..n).map(|_| rand::Rng::random_range(&mut rng, 0..l.size())).collect();
        let y: Vec<Elem> = x.iter().map(|&xi| l.join(xi, rand::Rng::random_range(&mut rng, 0..l.size()))).collect();
        let sup = m.eval(&x, SugenoForm::SupOfMeets);
        prop_assert_eq!(sup, m.eval(&x, SugenoForm::InfOfJoins));
        prop_assert!(l.leq(sup, m.eval(&y, SugenoForm::SupOfMeets)));
        prop_assert_eq!(m.eval(&vec![l.bottom(); n], SugenoForm::SupOfMeets), l.bottom());
        prop_assert_eq!(m.eval(&vec![l.top(); n], SugenoForm::SupOfMeets), l.top());
        for set in IndexSet::all(n) {
            let indicator: Vec<Elem> = (0..n).map(|i| if set.contains(i) { l.top() } else { l.bottom() }).collect();
            prop_assert_eq!(m.eval(&indicator, SugenoForm::InfOfJoins), m.value(set));
        }
    }

    #[test]
    fn capacity_is_recovered_uniquely(m in capacity_strategy()) {
        let f = FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets);
        prop_assert_eq!(&recover_capacity(&f).unwrap(), &m);
        for method in [Method::BooleanHomogeneity, Method::DirectComparison] {
            let result = recognize(&f, method).unwrap();
            prop_assert_eq!(result.capacity(), Some(&m));
        }
    }

    #[test]
    fn axiom_implications_on_sampled_tables(i in 0..4usize, n in 1usize..=2, seed in any::<u64>()) {
        let l = lattice(["chain:3", "chain:4", "boolean:2", "builtin:N5"][i]);
        let mode = AggregationEnumeration::Sample { seed, count: 8 };
        for f in enumerate_aggregations(l, n, mode).unwrap() {
            let check = |k| axiom_check(&f, k).holds();
            use AxiomKind::*;
            let idempotent = check(Idempotent);
            prop_assert!(!check(GComonotoneSupremal) || check(ComonotoneSupremal));
            prop_assert!(!(check(ComonotoneSupremal) && idempotent) || check(BooleanSupHomogeneous));
            prop_assert!(!check(GComonotoneInfimal) || check(ComonotoneInfimal));
            prop_assert!(!(check(ComonotoneInfimal) && idempotent) || check(BooleanInfHomogeneous));
            prop_assert!(!(check(BooleanInfHomogeneous) && check(BooleanSupHomogeneous)) || check(Idempotent));
        }
    }

    #[test]
    fn pair_counters_match_shadow_tally(i in 0..4usize, n in 1usize..=2, seed in any::<u64>()) {
        let l = lattice(["chain:3", "chain:4", "boolean:2", "builtin:N5"][i]);
        let k = l.size() as u64;
        let pts = points(&l, n);
        let tally = |kind| {
            let mut count = 0u64;
            for (a, x) in pts.iter().enumerate() {
                for y in &pts[a..] {
                    if holds(&l, x, y, kind) {
                        count += 1;
                    }
                }
            }
            count
        };
        let comonotone = tally(RelationKind::Comonotone);
        let g_comonotone = tally(RelationKind::GComonotone);
        let dual_g = tally(RelationKind::DualGComonotone);
        let covers = l.cover_pairs().len() as u64;
        let f = enumerate_aggregations(l.clone(), n, AggregationEnumeration::Sample { seed, count: 1 })
            .unwrap()
            .next()
            .unwrap();
        use AxiomKind::*;
        let expected = [
            (MonotoneBoundary, 2 + covers * n as u64 * k.pow(n as u32 - 1)),
            (Idempotent, k),
            (InfHomogeneous, k.pow(n as u32 + 1)),
            (SupHomogeneous, k.pow(n as u32 + 1)),
            (BooleanInfHomogeneous, k << n),
            (BooleanSupHomogeneous, k << n),
            (ComonotoneSupremal, comonotone),
            (ComonotoneInfimal, comonotone),
            (GComonotoneSupremal, g_comonotone),
            (GComonotoneInfimal, dual_g),
        ];
        for (kind, want) in expected {
            prop_assert_eq!(axiom_check(&f, kind).pairs_checked as u64, want, "{}", kind);
        }
    }
}

#[test]
fn forbidden_sublattice_matches_distributivity() {
    for l in pool() {
        let forbidden = l.forbidden_sublattice();
        assert_eq!(forbidden.is_none(), l.is_distributive(), "{}", l.name());
        assert_eq!(l.distributivity_violation().is_none(), l.is_distributive(), "{}", l.name());
        if let Some((_, five)) = forbidden {
            assert_eq!(five.iter().unique().count(), 5);
        }
    }
}

#[test]
fn birkhoff_round_trip() {
    for l in distributive_pool() {
        let b = l.birkhoff().unwrap();
        assert!(b.reconstructs(&l), "{}", l.name());
        for (x, y) in l.elements().cartesian_product(l.elements()) {
            assert_eq!(b.meet(x, y), Some(l.meet(x, y)));
            assert_eq!(b.join(x, y), Some(l.join(x, y)));
            assert_eq!(b.element_of(b.downset_of(x)), Some(x));
        }
    }
    for l in pool().into_iter().filter(|l| !l.is_distributive()) {
        assert!(l.birkhoff().is_err(), "{}", l.name());
    }
}

#[test]
fn expansion_identity_exhaustive_on_small_lattices() {
    for l in pool().into_iter().filter(|l| l.size() <= 5) {
        let mut all_hold = true;
        for size in 1..=3 {
            let elems: Vec<Elem> = l.elements().collect();
            for family in std::iter::repeat_n(elems, 2 * size).multi_cartesian_product() {
                let tf = TwoFamily::new(family[..size].to_vec(), family[size..].to_vec()).unwrap();
                all_hold &= distributive_expansion_check(&l, &tf).unwrap();
            }
        }
        assert_eq!(all_hold, l.is_distributive(), "{}", l.name());
    }
}

#[test]
fn relations_exhaustive_on_small_lattices() {
    for l in small_distributive().into_iter().chain([lattice("builtin:N5"), lattice("builtin:M3")]) {
        for n in 1..=3 {
            if l.size().pow(n as u32) > 125 {
                continue;
            }
            let pts = points(&l, n);
            for (x, y) in pts.iter().cartesian_product(&pts) {
                let g = holds(&l, x, y, RelationKind::GComonotone);
                if holds(&l, x, y, RelationKind::Comonotone) || holds(&l, x, y, RelationKind::Comparable) {
                    assert!(g && holds(&l, x, y, RelationKind::DualGComonotone));
                }
                if l.is_distributive() {
                    for kind in RelationKind::ALL[3..].iter() {
                        assert_eq!(holds(&l, x, y, *kind), g, "{} {kind} {x:?} {y:?}", l.name());
                    }
                }
            }
        }
    }
}

#[test]
fn nondistributive_lattices_separate_the_g_forms() {
    let diverges = |l: &Lattice| {
        let pts = points(l, 2);
        pts.iter()
            .cartesian_product(&pts)
            .any(|(x, y)| holds(l, x, y, RelationKind::GComonotone) != holds(l, x, y, RelationKind::DualGComonotone))
    };
    assert!(diverges(&lattice("builtin:N5")) || diverges(&lattice("builtin:M3")));
}

#[test]
fn comonotone_iff_common_sorting_permutation() {
    for k in 2..=4 {
        let l = Lattice::chain(k).unwrap();
        for n in 1..=4 {
            let pts = points(&l, n);
            for (x, y) in pts.iter().cartesian_product(&pts) {
                let sorts = |v: &[Elem], p: &[usize]| p.windows(2).all(|w| v[w[0]] <= v[w[1]]);
                let brute = (0..n).permutations(n).any(|p| sorts(x, &p) && sorts(y, &p));
                assert_eq!(holds(&l, x, y, RelationKind::Comonotone), brute, "{x:?} {y:?}");
                let found = common_sorting_permutation(&l, x, y);
                assert_eq!(found.is_some(), brute);
                if let Some(p) = found {
                    assert!(sorts(x, &p) && sorts(y, &p));
                }
            }
        }
    }
}

#[test]
fn chain_regions_are_unions_in_two_dimensions() {
    for k in 2..=6 {
        let l = Lattice::chain(k).unwrap();
        let pts = points(&l, 2);
        for (x, y) in pts.iter().cartesian_product(&pts) {
            let union = holds(&l, x, y, RelationKind::Comonotone) || holds(&l, x, y, RelationKind::Comparable);
            assert_eq!(holds(&l, x, y, RelationKind::GComonotone), union, "{x:?} {y:?}");
        }
    }
}

#[test]
fn axiom_implications_exhaustive_on_chain3() {
    let l = lattice("chain:3");
    for n in 1..=2 {
        for f in enumerate_aggregations(l.clone(), n, AggregationEnumeration::EXHAUSTIVE).unwrap() {
            let check = |k| axiom_check(&f, k).holds();
            use AxiomKind::*;
            let idempotent = check(Idempotent);
            assert!(!check(GComonotoneSupremal) || check(ComonotoneSupremal));
            assert!(!(check(ComonotoneSupremal) && idempotent) || check(BooleanSupHomogeneous));
            assert!(!check(GComonotoneInfimal) || check(ComonotoneInfimal));
            assert!(!(check(ComonotoneInfimal) && idempotent) || check(BooleanInfHomogeneous));
            assert!(!(check(BooleanInfHomogeneous) && check(BooleanSupHomogeneous)) || check(Idempotent));
        }
    }
}

#[test]
fn composing_with_a_collapsing_join_endomorphism() {
    for spec in ["chain:3", "chain:4", "prod:chain:2xchain:3"] {
        let l = lattice(spec);
        // Bottom stays put, everything else goes to top.
        let g = |a: Elem| if a == l.bottom() { l.bottom() } else { l.top() };
        for (a, b) in l.elements().cartesian_product(l.elements()) {
            assert_eq!(g(l.join(a, b)), l.join(g(a), g(b)));
        }
        assert!(l.elements().map(g).unique().count() < l.size());

        let m = Capacity::validate(l.clone(), 2, vec![l.bottom(), l.bottom(), l.bottom(), l.top()]).unwrap();
        let f = FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets);
        assert!(axiom_check(&f, AxiomKind::ComonotoneSupremal).holds());
        let composite = FunctionTable::from_fn(l.clone(), 2, |x| f.value(&[g(x[0]), g(x[1])])).unwrap();
        assert!(axiom_check(&composite, AxiomKind::MonotoneBoundary).holds());
        assert!(axiom_check(&composite, AxiomKind::ComonotoneSupremal).holds(), "{spec}");
        assert!(!axiom_check(&composite, AxiomKind::Idempotent).holds(), "{spec}");
    }
}

#[test]
fn comonotone_supremal_without_idempotency_is_not_boolean_sup_homogeneous() {
    for spec in ["chain:3", "boolean:2"] {
        let l = lattice(spec);
        let h =
            FunctionTable::from_fn(l.clone(), 2, |x| if x == [l.bottom(), l.bottom()] { l.bottom() } else { l.top() })
                .unwrap();
        assert!(axiom_check(&h, AxiomKind::ComonotoneSupremal).holds());
        assert!(axiom_check(&h, AxiomKind::GComonotoneSupremal).holds());
        assert!(!axiom_check(&h, AxiomKind::BooleanSupHomogeneous).holds(), "{spec}");
    }
}
