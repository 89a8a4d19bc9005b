use permchar::corpus::{construct, default_data_dir, Family};
use permchar::cyclo::Cyclotomic;
use permchar::dixon::character_table_from_classes;
use permchar::perm::{conjugacy_classes, ConjugacyClasses, Group, Permutation, DEFAULT_THRESHOLD};
use permchar::table::CharacterTable;
use permchar::tableio::*;
use proptest::prelude::*;

fn bundled(name: &str) -> CharacterTable {
    load_table(&default_data_dir().join("tables").join(format!("{name}.ctbl")))
        .unwrap()
        .table
}

fn group(spec: &str) -> Group {
    construct(&spec.parse::<Family>().unwrap(), &default_data_dir()).unwrap().group
}

fn sorted_values(values: impl Iterator<Item = Cyclotomic>) -> Vec<String> {
    let mut out: Vec<String> = values.map(|v| v.to_string()).collect();
    out.sort();
    out
}

/// Within an ambiguity group the representatives are fixed only up to
/// algebraic conjugacy, so column `j` is accepted when the enumerated class
/// of `reps[j]` carries a Galois conjugate of column `j`. Rational class
/// functions such as permutation characters cannot see the difference.
fn assignment_is_valid(table: &CharacterTable, reps: &[Permutation], classes: &ConjugacyClasses) -> bool {
    let computed = character_table_from_classes(classes).unwrap();
    reps.iter().enumerate().all(|(j, r)| {
        let c = classes.class_of(r).unwrap();
        let o = table.orders()[j];
        let got = sorted_values(computed.rows().iter().map(|row| row[c].clone()));
        computed.sizes()[c] == table.sizes()[j]
            && computed.orders()[c] == o
            && (1..=o as i64)
                .filter(|&k| num_integer::gcd(k, o as i64) == 1)
                .any(|k| sorted_values(table.rows().iter().map(|row| row[j].galois(k))) == got)
    })
}

fn fixed_point_character(reps: &[Permutation]) -> Vec<usize> {
    reps.iter().map(Permutation::fixed_points).collect()
}

#[test]
fn every_bundled_file_round_trips() {
    for entry in std::fs::read_dir(default_data_dir().join("tables")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let file = parse_table_file(&text).unwrap();
        assert_eq!(serialize_table_file(&file), text, "{}", path.display());
    }
}

#[test]
fn bundled_s3_matches_computed_table() {
    let t = bundled("s3");
    assert_eq!((t.num_classes(), t.rows().len()), (3, 3));
    let computed = character_table_from_classes(&conjugacy_classes(&group("s3"), DEFAULT_THRESHOLD).unwrap()).unwrap();
    assert!(match_tables(&t, &computed).is_some());
}

#[test]
fn mathieu_tables_have_expected_degrees() {
    assert_eq!(bundled("m11").degrees(), vec![1, 10, 10, 10, 11, 16, 16, 44, 45, 55]);
    assert_eq!(bundled("m22").degrees(), vec![1, 21, 45, 45, 55, 99, 154, 210, 231, 280, 280, 385]);
    assert_eq!(
        bundled("m23").degrees(),
        vec![1, 22, 45, 45, 230, 231, 231, 231, 253, 770, 770, 896, 896, 990, 990, 1035, 2024]
    );
}

#[test]
fn m22_matching_agrees_with_enumeration() {
    let g = group("m22");
    let t = bundled("m22");
    let m = find_representatives(&g, &t, 0, default_budget(&t)).unwrap();
    assert_eq!(m.buckets.iter().map(Vec::len).sum::<usize>(), 12);
    let names = t.class_names();
    let ambiguous: Vec<Vec<&str>> = m
        .ambiguity_groups
        .iter()
        .map(|grp| grp.iter().map(|&c| names[c].as_str()).collect())
        .collect();
    // 7A/7B and 11A/11B are each an element and its inverse, with all
    // invariants but the character values equal.
    assert_eq!(ambiguous, vec![vec!["7A", "7B"], vec!["11A", "11B"]]);
    let classes = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
    assert_eq!(classes.len(), 12);
    assert!(assignment_is_valid(&t, &m.reps, &classes));
    assert!(assignment_is_valid(&t, &m.alternative_reps(), &classes));
    assert_eq!(fixed_point_character(&m.reps), fixed_point_character(&m.alternative_reps()));
}

#[test]
fn small_group_matching_agrees_with_enumeration() {
    for (spec, file) in [("s4", "s4"), ("a5", "a5"), ("psl3:2", "psl32"), ("sl23", "sl23"), ("q8", "q8")] {
        let g = group(spec);
        let t = bundled(file);
        let classes = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        for seed in 0..4 {
            let m = find_representatives(&g, &t, seed, default_budget(&t)).unwrap();
            assert!(assignment_is_valid(&t, &m.reps, &classes), "{spec} seed {seed}");
            assert!(assignment_is_valid(&t, &m.alternative_reps(), &classes), "{spec} seed {seed}");
        }
    }
}

#[test]
fn matching_a_table_to_the_wrong_group_fails() {
    assert!(find_representatives(&group("s4"), &bundled("sl23"), 0, 10_000).is_err());
}

#[test]
fn trivial_group_needs_no_samples() {
    let t = parse_table("name 1\norder 1\nclasses 1\nsizes 1\norders 1\nchi 1\n").unwrap();
    let m = find_representatives(&Group::trivial(3), &t, 0, 100).unwrap();
    assert_eq!((m.samples, m.buckets.len()), (0, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn permuted_columns_still_match(seed in any::<u64>(), which in 0usize..5) {
        let name = ["s4", "a5", "psl32", "sl23", "d10"][which];
        let t = bundled(name);
        let k = t.num_classes();
        let mut perm: Vec<usize> = (1..k).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        perm.insert(0, 0);
        let shuffled = t.permute_columns(&perm).unwrap();
        let iso = match_tables(&t, &shuffled);
        prop_assert!(iso.is_some());
        let text = serialize_table(&shuffled, &[]);
        prop_assert_eq!(serialize_table(&parse_table(&text).unwrap(), &[]), text);
    }
}
