use num_traits::One;
use permchar::charfun::*;
use permchar::context::TableContext;
use permchar::corpus::{construct, default_data_dir, Family, NamedGroup};
use permchar::cyclo::Cyclotomic;
use permchar::perm::{Group, Permutation, DEFAULT_THRESHOLD};
use proptest::prelude::*;

fn named(spec: &str) -> NamedGroup {
    construct(&spec.parse::<Family>().unwrap(), &default_data_dir()).unwrap()
}

fn ctx(spec: &str) -> TableContext {
    let g = named(spec);
    TableContext::for_group(&g, &default_data_dir(), DEFAULT_THRESHOLD, 0).unwrap()
}

fn ints(f: &[Cyclotomic]) -> Vec<i64> {
    f.iter().map(|v| v.as_i64().unwrap()).collect()
}

#[test]
fn permutation_character_examples() {
    let s3 = ctx("s3");
    assert_eq!(ints(&s3.perm_character(&s3.group).unwrap()), vec![1, 1, 1]);
    let a3 = s3.group.derived_subgroup();
    // classes 1A, 2A, 3A
    assert_eq!(ints(&s3.perm_character(&a3).unwrap()), vec![2, 0, 2]);

    let m22 = named("m22");
    let c = ctx("m22");
    let pi = c.perm_character(&m22.subgroup("hexad", 0).unwrap()).unwrap();
    assert_eq!(pi[0].as_i64(), Some(77));
    let chi21 = c.table.degrees().iter().position(|&d| d == 21).unwrap();
    let ip = inner_product(&pi, c.table.row(chi21), c.table.sizes(), c.order()).unwrap();
    assert!(ip.is_one());
    let trivial = inner_product(&pi, c.table.row(0), c.table.sizes(), c.order()).unwrap();
    assert!(trivial.is_one());
}

#[test]
fn rows_have_norm_one() {
    for spec in ["a5", "sl23", "m11"] {
        let c = ctx(spec);
        for row in c.table.rows() {
            assert!(inner_product(row, row, c.table.sizes(), c.order()).unwrap().is_one());
        }
    }
}

#[test]
fn regular_character_of_s3() {
    let c = ctx("s3");
    let pi = c.perm_character(&Group::trivial(3)).unwrap();
    assert_eq!(decompose(&pi, &c.table).unwrap().multiplicities, vec![1, 1, 2]);
}

#[test]
fn indicators() {
    let q8 = ctx("q8");
    let two = q8.table.degrees().iter().position(|&d| d == 2).unwrap();
    assert_eq!(q8.table.indicators()[two], -1);
    assert_eq!(q8.table.indicators()[0], 1);
    let s3 = ctx("s3");
    assert_eq!(s3.table.indicators(), [1, 1, 1]);
}

#[test]
fn real_class_examples() {
    let agl = ctx("agl1:27");
    let real = real_classes(&agl.table);
    assert_eq!(real.len(), 3);
    let orders: Vec<u64> = real.iter().map(|&c| agl.table.orders()[c]).collect();
    assert_eq!(orders, vec![1, 2, 3]);
    // element-wise: x real iff conjugate to its inverse
    let classes = agl.classes().unwrap();
    let brute: Vec<usize> = (0..classes.len())
        .filter(|&c| classes.class_of(&classes.reps()[c].inverse()) == Some(c))
        .collect();
    assert_eq!(real, brute);
    assert_eq!(real_classes(&ctx("d10").table).len(), 4);
}

#[test]
fn non_characters_are_rejected() {
    let c = ctx("s3");
    let half = vec![Cyclotomic::from_int(1), Cyclotomic::zero(), Cyclotomic::zero()];
    assert!(decompose(&half, &c.table).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn permutation_characters_recompose(images in prop::collection::vec(Just((0..5u32).collect::<Vec<_>>()).prop_shuffle(), 0..3)) {
        let c = ctx("s5");
        let gens: Vec<Permutation> = images.into_iter().map(|i| Permutation::from_images(i).unwrap()).collect();
        let h = c.group.subgroup(gens).unwrap();
        let pi = c.perm_character(&h).unwrap();
        prop_assert!(pi.iter().all(|v| v.is_rational() && v.conj() == *v));
        let d = decompose(&pi, &c.table).unwrap();
        prop_assert_eq!(recompose(&d.multiplicities, &c.table), pi.clone());
        prop_assert_eq!(pi[0].as_i64().unwrap() as u64, c.group.index_of(&h));
    }
}
