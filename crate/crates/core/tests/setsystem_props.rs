mod common;

use common::*;
use predynkin::setsystem::is_compatibility_structure;
use predynkin::{EventSet, Partition, SetSystem};
use proptest::prelude::*;
use rand::Rng;

fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n);
    let mut blocks = vec![0u32; k];
    for atom in 0..n {
        blocks[rng.gen_range(0..k)] |= 1 << atom;
    }
    let blocks = blocks.into_iter().filter(|&b| b != 0).map(EventSet::from_mask);
    Partition::new(ground(n), blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent_and_minimal(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = random_system(&mut rng, n, 4);
        let h = a.pre_dynkin_hull();
        prop_assert!(h.is_pre_dynkin());
        prop_assert!(a.is_subset_of(&h));
        prop_assert_eq!(h.pre_dynkin_hull(), h.clone());
        // every member is forced: dropping a non-trivial member breaks closure
        // or loses a generator
        for e in h.iter().filter(|e| !e.is_empty() && *e != ground(n).full()) {
            let smaller = SetSystem::new(ground(n), h.iter().filter(|&f| f != e)).unwrap();
            prop_assert!(!smaller.is_pre_dynkin() || !a.is_subset_of(&smaller));
        }
    }

    #[test]
    fn differences_and_cup_cap(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let d = random_pre_dynkin(&mut rng, n, 4);
        for a in d.iter() {
            for b in d.iter() {
                if a.is_subset_of(b) {
                    prop_assert!(d.contains(b.difference(a)));
                }
                prop_assert_eq!(d.contains(a.intersection(b)), d.contains(a.union(b)));
                prop_assert_eq!(d.is_compatible(a, b).unwrap(), d.contains(a.intersection(b)));
            }
        }
    }

    #[test]
    fn blocks_are_sound(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = rng(seed);
        let d = random_pre_dynkin(&mut rng, n, 4);
        let blocks = d.blocks();
        prop_assert!(!blocks.is_empty());
        let mut union = SetSystem::empty(ground(n));
        for b in &blocks {
            prop_assert!(b.is_algebra());
            prop_assert!(b.is_subset_of(&d));
            union = union.union(b).unwrap();
        }
        prop_assert_eq!(union, d.clone());
        for (i, b) in blocks.iter().enumerate() {
            for c in &blocks[i + 1..] {
                prop_assert!(!b.is_subset_of(c) && !c.is_subset_of(b));
            }
        }
    }

    #[test]
    fn compatible_algebras_union_to_pre_dynkin(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = rng(seed);
        let k = rng.gen_range(1..=3);
        let algebras: Vec<SetSystem> =
            (0..k).map(|_| random_partition(&mut rng, n).algebra()).collect();
        let mut union = SetSystem::empty(ground(n));
        for a in &algebras {
            prop_assert!(a.is_algebra());
            union = union.union(a).unwrap();
        }
        if is_compatibility_structure(&algebras).unwrap() {
            prop_assert!(union.is_pre_dynkin());
        }
    }

    #[test]
    fn decomposition_yields_weak_atoms(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = rng(seed);
        let d = random_pre_dynkin(&mut rng, n, 3);
        let weak = d.weak_atoms();
        for b in ground(n).events().filter(|e| !e.is_empty()) {
            prop_assert_eq!(d.is_weak_atom(b), weak.contains(&b));
        }
        for b in ground(n).events().filter(|e| !d.contains(*e) && !e.is_empty()) {
            if let Ok((inner, rest)) = d.decompose_atom(b) {
                prop_assert!(d.contains(inner));
                prop_assert!(!d.contains(rest));
                prop_assert!(weak.contains(&rest));
                prop_assert_eq!(inner.union(rest), b);
                prop_assert!(inner.is_disjoint(rest));
            }
        }
    }

    #[test]
    fn lattice_laws(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = rng(seed);
        let a = random_pre_dynkin(&mut rng, n, 3);
        let b = random_pre_dynkin(&mut rng, n, 3);
        let c = random_pre_dynkin(&mut rng, n, 3);
        let join = |x: &SetSystem, y: &SetSystem| x.lattice_join(y).unwrap();
        let meet = |x: &SetSystem, y: &SetSystem| x.lattice_meet(y).unwrap();
        prop_assert_eq!(join(&a, &b), join(&b, &a));
        prop_assert_eq!(meet(&a, &b), meet(&b, &a));
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
        prop_assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
        prop_assert_eq!(join(&a, &a), a.clone());
        prop_assert_eq!(meet(&a, &a), a.clone());
        prop_assert_eq!(join(&a, &meet(&a, &b)), a.clone());
        prop_assert_eq!(meet(&a, &join(&a, &b)), a.clone());
        let bottom = SetSystem::trivial(ground(n));
        let top = SetSystem::power_set(ground(n));
        prop_assert_eq!(join(&a, &bottom), a.clone());
        prop_assert_eq!(meet(&a, &top), a.clone());
        prop_assert_eq!(join(&a, &top), top);
        prop_assert_eq!(meet(&a, &bottom), bottom);
    }
}

#[test]
fn paper_style_fixtures() {
    let d = d4();
    assert!(d.is_pre_dynkin());
    assert!(!d.is_algebra());
    assert_eq!(d.blocks().len(), 2);
    let hull = sys(4, &[&[1, 2], &[3]]).pre_dynkin_hull();
    assert_eq!(
        hull,
        sys(4, &[&[], &[1, 2], &[3], &[4], &[3, 4], &[1, 2, 3], &[1, 2, 4], &[1, 2, 3, 4]])
    );
    assert_eq!(SetSystem::empty(ground(3)).pre_dynkin_hull(), SetSystem::trivial(ground(3)));
}
