use num_traits::One;
use permchar::charfun::inner_product;
use permchar::corpus::{construct, default_data_dir, sweep_families, Family};
use permchar::cyclo::Cyclotomic;
use permchar::dixon::{character_table, character_table_from_classes, class_matrices};
use permchar::perm::{conjugacy_classes, Group, DEFAULT_THRESHOLD};
use permchar::table::CharacterTable;
use permchar::tableio::{load_table, match_tables};

fn group(spec: &str) -> Group {
    construct(&spec.parse::<Family>().unwrap(), &default_data_dir()).unwrap().group
}

fn golden(name: &str) -> CharacterTable {
    load_table(&default_data_dir().join("tables").join(format!("{name}.ctbl"))).unwrap().table
}

fn column(t: &CharacterTable, c: usize) -> Vec<Cyclotomic> {
    t.rows().iter().map(|r| r[c].clone()).collect()
}

/// Both orthogonality relations, checked directly.
fn assert_orthogonal(t: &CharacterTable) {
    let k = t.num_classes();
    for a in 0..k {
        for b in 0..k {
            let ip = inner_product(t.row(a), t.row(b), t.sizes(), t.order()).unwrap();
            assert_eq!(ip.is_one(), a == b, "{} rows {a},{b}", t.name());
            let mut sum = Cyclotomic::zero();
            for (x, y) in column(t, a).iter().zip(column(t, b)) {
                sum += &(x * &y.conj());
            }
            let expected = if a == b { Cyclotomic::from_int((t.order() / t.sizes()[a]) as i64) } else { Cyclotomic::zero() };
            assert_eq!(sum, expected, "{} columns {a},{b}", t.name());
        }
    }
}

#[test]
fn small_tables() {
    let c3 = character_table(&group("c3"), DEFAULT_THRESHOLD).unwrap();
    let allowed = ["1", "E(3)", "-1-E(3)"];
    assert!(c3.rows().iter().flatten().all(|v| allowed.contains(&v.to_string().as_str())));
    assert_eq!(character_table(&group("s3"), DEFAULT_THRESHOLD).unwrap().degrees(), vec![1, 1, 2]);
    assert_eq!(character_table(&group("a5"), DEFAULT_THRESHOLD).unwrap().degrees(), vec![1, 3, 3, 4, 5]);
}

#[test]
fn computed_tables_match_golden_files() {
    for (spec, file) in [
        ("s3", "s3"),
        ("s4", "s4"),
        ("a5", "a5"),
        ("d10", "d10"),
        ("q8", "q8"),
        ("sl23", "sl23"),
        ("psl3:2", "psl32"),
    ] {
        let t = character_table(&group(spec), DEFAULT_THRESHOLD).unwrap();
        assert!(match_tables(&golden(file), &t).is_some(), "{spec}");
    }
}

#[test]
fn orthogonality_on_corpus() {
    for f in sweep_families() {
        let g = construct(&f, &default_data_dir()).unwrap().group;
        assert_orthogonal(&character_table(&g, DEFAULT_THRESHOLD).unwrap());
    }
}

#[test]
fn structure_constants_and_central_characters() {
    for spec in ["s4", "a5", "sl23", "psl2:7", "agl1:9", "c3_q16"] {
        let c = conjugacy_classes(&group(spec), DEFAULT_THRESHOLD).unwrap();
        let sizes = c.sizes();
        let ms = class_matrices(&c).unwrap();
        for (i, m) in ms.iter().enumerate() {
            for j in 0..c.len() {
                let total: u64 = (0..c.len()).map(|k| m.entries[j][k] * sizes[k]).sum();
                assert_eq!(total, sizes[i] * sizes[j], "{spec} {i} {j}");
            }
        }
        let t = character_table_from_classes(&c).unwrap();
        for row in t.rows() {
            let degree = row[0].as_i64().unwrap();
            for (i, v) in row.iter().enumerate() {
                let omega = v.scale_int(sizes[i] as i64).scale(&num_rational::BigRational::new(1.into(), degree.into()));
                assert!(omega.coords().iter().all(|q| q.is_integer()), "{spec}: {omega}");
            }
        }
    }
}

#[test]
fn mathieu_tables_are_orthogonal() {
    for name in ["m11", "m22", "m23"] {
        assert_orthogonal(&golden(name));
    }
}
