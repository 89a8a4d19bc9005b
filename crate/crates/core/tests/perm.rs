use std::collections::VecDeque;

use permchar::corpus::{construct, default_data_dir, sweep_families, Family};
use permchar::perm::subgroups::{core_by_conjugation, is_primitive};
use permchar::perm::*;
use permchar::verify::sample_subgroups;
use proptest::prelude::*;
use rustc_hash::FxHashSet;

fn perm(degree: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).unwrap()
}

fn group(spec: &str) -> Group {
    construct(&spec.parse::<Family>().unwrap(), &default_data_dir()).unwrap().group
}

/// Number of elements reached by multiplying out the generators.
fn closure_size(gens: &[Permutation], degree: usize) -> u64 {
    let id = Permutation::identity(degree);
    let mut seen = FxHashSet::default();
    seen.insert(id.key());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.key()) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u64
}

#[test]
fn group_orders() {
    let s4 = Group::build(vec![perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], 4).unwrap();
    assert_eq!(s4.order_u64(), 24);
    assert_eq!(closure_size(s4.generators(), 4), 24);
    assert_eq!(Group::build(vec![], 5).unwrap().order_u64(), 1);
    assert_eq!(group("m22").order_u64(), 443520);
}

#[test]
fn chain_order_matches_closure_on_corpus() {
    for f in sweep_families() {
        let g = construct(&f, &default_data_dir()).unwrap().group;
        assert_eq!(g.order_u64(), closure_size(g.generators(), g.degree()), "{f}");
    }
    for spec in ["psl2:16", "sl:2:9", "agl1:81"] {
        let g = group(spec);
        assert!(g.order_u64() <= 10_000);
        assert_eq!(g.order_u64(), closure_size(g.generators(), g.degree()), "{spec}");
    }
}

#[test]
fn coset_actions() {
    let s4 = group("s4");
    let d8 = construct(&Family::Sym(4), &default_data_dir()).unwrap().subgroup("d8", 0).unwrap();
    let a = CosetAction::new(&s4, &d8).unwrap();
    assert_eq!(a.degree(), 3);
    assert!(a.image().is_transitive());
    let whole = CosetAction::new(&s4, &s4).unwrap();
    assert_eq!(whole.degree(), 1);
    let m22 = construct(&"m22".parse().unwrap(), &default_data_dir()).unwrap();
    let hexad = m22.subgroup("hexad", 0).unwrap();
    let a = CosetAction::new(&m22.group, &hexad).unwrap();
    assert_eq!(a.degree(), 77);
    assert!(is_primitive(a.image()));
    assert!(CosetAction::new(&d8, &s4).is_err());
}

#[test]
fn class_examples() {
    let s3 = conjugacy_classes(&group("s3"), DEFAULT_THRESHOLD).unwrap();
    assert_eq!(s3.sizes(), [1, 3, 2]);
    assert_eq!(s3.power_map(2), vec![0, 0, 2]);
    assert_eq!(s3.power_map(1), vec![0, 1, 2]);
    assert_eq!(s3.power_map(-1)[0], 0);
    let trivial = conjugacy_classes(&Group::trivial(4), DEFAULT_THRESHOLD).unwrap();
    assert_eq!(trivial.len(), 1);
    let m22 = conjugacy_classes(&group("m22"), DEFAULT_THRESHOLD).unwrap();
    assert_eq!(m22.len(), 12);
    assert_eq!(m22.sizes().iter().sum::<u64>(), 443520);
}

#[test]
fn classes_partition_the_group_and_are_reproducible() {
    for spec in ["a5", "sl23", "agl1:27", "c3_q16", "psl2:11"] {
        let g = group(spec);
        let c = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(c.sizes().iter().sum::<u64>(), g.order_u64());
        let mut counts = vec![0u64; c.len()];
        g.for_each_element(|x| counts[c.class_of(x).unwrap()] += 1);
        assert_eq!(counts, c.sizes());
        let again = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(again.reps(), c.reps());
    }
}

#[test]
fn sylow_and_odd_quotient_examples() {
    assert_eq!(sylow_2(&group("d10"), 0).order_u64(), 2);
    assert_eq!(sylow_2(&group("s4"), 0).order_u64(), 8);
    assert_eq!(sylow_2(&group("m22"), 0).order_u64(), 128);
    assert!(o_2prime(&group("c15"), 0).is_trivial());
    assert_eq!(o_2prime(&group("c6"), 0).order_u64(), 2);
    assert_eq!(o_2prime(&group("s4"), 0).order_u64(), 24);
}

#[test]
fn core_examples() {
    let s3 = group("s3");
    let t = s3.subgroup(vec![perm(3, &[&[0, 1]])]).unwrap();
    assert!(core(&s3, &t).unwrap().is_trivial());
    let a3 = s3.derived_subgroup();
    assert!(core(&s3, &a3).unwrap().same_subgroup(&a3));
    let s4 = construct(&Family::Sym(4), &default_data_dir()).unwrap();
    let d8 = s4.subgroup("d8", 0).unwrap();
    let v4 = s4.subgroup("v4", 0).unwrap();
    assert!(core(&s4.group, &d8).unwrap().same_subgroup(&v4));
    assert!(core(&d8, &s4.group).is_err());
}

#[test]
fn subgroup_invariants_on_corpus() {
    for f in sweep_families() {
        let g = construct(&f, &default_data_dir()).unwrap().group;
        let order = g.order_u64();
        let p = sylow_2(&g, 0);
        let two_part = 1u64 << order.trailing_zeros();
        assert_eq!(p.order_u64(), two_part, "{f}");
        let k = o_2prime(&g, 0);
        assert_eq!((order / k.order_u64()) % 2, 1, "{f}");
        assert!(k.is_normal_in(&g), "{f}");
        assert!(p.is_subgroup_of(&k), "{f}");
        for (label, h) in sample_subgroups(&g, 7, 6).unwrap() {
            let kernel = CosetAction::new(&g, &h).unwrap().kernel();
            let by_conjugation = core_by_conjugation(&g, &h).unwrap();
            assert!(kernel.same_subgroup(&by_conjugation), "{f} / {label}");
            assert!(kernel.is_normal_in(&g) && kernel.is_subgroup_of(&h), "{f} / {label}");
        }
    }
}

fn arb_subgroup_gens() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(Just((0..6u32).collect::<Vec<_>>()).prop_shuffle(), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_subgroups_of_s6(images in arb_subgroup_gens()) {
        let gens: Vec<Permutation> = images.into_iter().map(|i| Permutation::from_images(i).unwrap()).collect();
        let h = Group::build(gens.clone(), 6).unwrap();
        prop_assert_eq!(h.order_u64(), closure_size(&gens, 6));
        prop_assert_eq!(720 % h.order_u64(), 0);
        for g in &gens {
            prop_assert!(h.contains(g));
        }
        let c = conjugacy_classes(&h, DEFAULT_THRESHOLD).unwrap();
        prop_assert_eq!(c.sizes().iter().sum::<u64>(), h.order_u64());
    }
}
