//! Ordinary character tables with class metadata.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charfun;
use crate::cyclo::{CycloSum, Cyclotomic};
use crate::error::{Error, Result};
use crate::perm::classes::compose_power_map;

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    rows: Vec<Vec<Cyclotomic>>,
    inverse_map: Vec<usize>,
    indicators: Vec<i32>,
}

fn invalid(relation: &str, detail: impl Into<String>) -> Error {
    Error::Validation {
        relation: relation.to_string(),
        detail: detail.into(),
    }
}

/// `A, B, …, Z, AA, AB, …`
pub fn letters(mut i: usize, upper: bool) -> String {
    let base = if upper { b'A' } else { b'a' };
    let mut out = Vec::new();
    loop {
        out.push(base + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Class names from element orders: `1A`, `2A`, `4A`, `4B`, …
pub fn class_names(orders: &[u64]) -> Vec<String> {
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    orders
        .iter()
        .map(|&o| {
            let n = seen.entry(o).or_insert(0);
            let name = format!("{o}{}", letters(*n, true));
            *n += 1;
            name
        })
        .collect()
}

impl CharacterTable {
    /// Builds a table and checks every defining relation: class sizes, the
    /// degree sum, both orthogonality relations, power-map consistency and
    /// Frobenius–Schur indicators.
    pub fn new(
        name: impl Into<String>,
        order: u64,
        sizes: Vec<u64>,
        orders: Vec<u64>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        rows: Vec<Vec<Cyclotomic>>,
    ) -> Result<CharacterTable> {
        let k = sizes.len();
        if orders.len() != k {
            return Err(invalid("shape", format!("{} sizes but {} element orders", k, orders.len())));
        }
        if rows.len() != k {
            return Err(invalid("shape", format!("{} classes but {} characters", k, rows.len())));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(invalid("shape", format!("row {} has {} entries, expected {k}", i + 1, r.len())));
        }
        if k == 0 || sizes[0] != 1 || orders[0] != 1 {
            return Err(invalid("class sizes", "the first class must be the identity"));
        }
        if sizes.iter().sum::<u64>() != order {
            return Err(invalid("class sizes", format!("sizes sum to {}, not {order}", sizes.iter().sum::<u64>())));
        }
        if let Some(s) = sizes.iter().find(|&&s| s == 0 || order % s != 0) {
            return Err(invalid("class sizes", format!("size {s} does not divide {order}")));
        }
        let mut degree_sq = BigInt::zero();
        for (i, row) in rows.iter().enumerate() {
            match row[0].as_integer() {
                Some(d) if d > BigInt::zero() => degree_sq += &d * &d,
                _ => return Err(invalid("degrees", format!("row {} has degree {}", i + 1, row[0]))),
            }
        }
        if degree_sq != BigInt::from(order) {
            return Err(invalid("sum of squared degrees", format!("{degree_sq} != {order}")));
        }
        for (&p, map) in &power_maps {
            if map.len() != k || map.iter().any(|&c| c >= k) {
                return Err(invalid("power maps", format!("map for {p} is malformed")));
            }
            for (c, &img) in map.iter().enumerate() {
                let o = orders[c];
                let expect = o / num_integer::gcd(o, p);
                if orders[img] != expect {
                    return Err(invalid(
                        "power maps",
                        format!("class {} to the power {p} has order {}, expected {expect}", c + 1, orders[img]),
                    ));
                }
            }
        }

        let conj: Vec<Vec<Cyclotomic>> = rows.iter().map(|r| r.iter().map(|v| v.conj()).collect()).collect();
        let inverse_map = (0..k)
            .map(|j| {
                (0..k)
                    .find(|&j2| (0..k).all(|r| rows[r][j2] == conj[r][j]))
                    .ok_or_else(|| invalid("column orthogonality", format!("class {} has no inverse column", j + 1)))
            })
            .collect::<Result<Vec<usize>>>()?;

        // Σ_χ χ(K) conj χ(K') = δ |G|/|K|
        for a in 0..k {
            for b in a..k {
                let mut s = CycloSum::new();
                for r in 0..k {
                    s.add(&(&rows[r][a] * &conj[r][b]));
                }
                let expect = if a == b { Cyclotomic::from_int((order / sizes[a]) as i64) } else { Cyclotomic::zero() };
                let got = s.total();
                if got != expect {
                    return Err(invalid(
                        "column orthogonality",
                        format!("columns {} and {} give {got}, expected {expect}", a + 1, b + 1),
                    ));
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let ip = charfun::inner_product(&rows[a], &rows[b], &sizes, order)?;
                let expect = if a == b { BigRational::one() } else { BigRational::zero() };
                if ip != expect {
                    return Err(invalid(
                        "row orthogonality",
                        format!("rows {} and {} have inner product {ip}", a + 1, b + 1),
                    ));
                }
            }
        }
        let mut table = CharacterTable {
            name: name.into(),
            order,
            sizes,
            orders,
            power_maps,
            rows,
            inverse_map,
            indicators: Vec::new(),
        };
        let squares = table
            .power_map(2)
            .ok_or_else(|| invalid("power maps", "stored maps do not determine squares"))?;
        table.indicators = (0..k)
            .map(|r| charfun::fs_indicator(&table.rows[r], &squares, &table.sizes, order).map_err(|e| match e {
                Error::BadIndicator { value, .. } => Error::BadIndicator { row: r, value },
                other => other,
            }))
            .collect::<Result<Vec<i32>>>()?;
        Ok(table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }

    pub fn indicators(&self) -> &[i32] {
        &self.indicators
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r[0].as_i64().expect("validated degree") as u64)
            .collect()
    }

    /// Class map for `g ↦ g^k`, derived from the stored prime power maps.
    /// Exponents they cannot reach are resolved through the Galois action on
    /// columns: for `u` prime to the order of `g`, `χ(g^u)` is `χ(g)` with
    /// every root of unity raised to the `u`-th power.
    pub fn power_map(&self, k: i64) -> Option<Vec<usize>> {
        if let Some(m) = compose_power_map(&self.orders, &self.power_maps, &self.inverse_map, k) {
            return Some(m);
        }
        if self.rows.is_empty() {
            return None;
        }
        (0..self.orders.len())
            .map(|c| {
                let o = self.orders[c] as i64;
                let e = k.rem_euclid(o);
                let d = num_integer::gcd(e, o);
                let base = compose_power_map(&self.orders, &self.power_maps, &self.inverse_map, d)?[c];
                let column: Vec<Cyclotomic> = self.rows.iter().map(|r| r[base].galois(e / d)).collect();
                (0..self.orders.len()).find(|&j| self.rows.iter().zip(&column).all(|(r, v)| &r[j] == v))
            })
            .collect()
    }

    pub fn is_row_real(&self, i: usize) -> bool {
        self.rows[i].iter().all(|v| v.is_real())
    }

    pub fn is_row_rational(&self, i: usize) -> bool {
        self.rows[i].iter().all(|v| v.is_rational())
    }

    /// Classes on which every character is real.
    pub fn real_classes(&self) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| self.rows.iter().all(|r| r[c].is_real()))
            .collect()
    }

    /// ATLAS-style class names: element order followed by a letter counting
    /// classes of that order in table order (`1A`, `2A`, `4A`, `4B`, …).
    pub fn class_names(&self) -> Vec<String> {
        class_names(&self.orders)
    }

    /// Character names such as `21a`, lettered by table order among rows of
    /// equal degree.
    pub fn character_names(&self) -> Vec<String> {
        let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
        self.degrees()
            .into_iter()
            .map(|d| {
                let n = seen.entry(d).or_insert(0);
                let name = format!("{d}{}", letters(*n, false));
                *n += 1;
                name
            })
            .collect()
    }

    /// The same table with columns reordered so that new column `j` is old
    /// column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<CharacterTable> {
        let k = self.num_classes();
        let mut pos = vec![usize::MAX; k];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let power_maps = self
            .power_maps
            .iter()
            .map(|(&p, m)| (p, perm.iter().map(|&old| pos[m[old]]).collect()))
            .collect();
        CharacterTable::new(
            self.name.clone(),
            self.order,
            perm.iter().map(|&o| self.sizes[o]).collect(),
            perm.iter().map(|&o| self.orders[o]).collect(),
            power_maps,
            self.rows
                .iter()
                .map(|r| perm.iter().map(|&o| r[o].clone()).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table(perturb: bool) -> Result<CharacterTable> {
        let v = |x: i64| Cyclotomic::from_int(x);
        let mut rows = vec![vec![v(1), v(1), v(1)], vec![v(1), v(-1), v(1)], vec![v(2), v(0), v(-1)]];
        if perturb {
            rows[2][2] = v(1);
        }
        CharacterTable::new(
            "S3",
            6,
            vec![1, 3, 2],
            vec![1, 2, 3],
            BTreeMap::from([(2, vec![0, 0, 2]), (3, vec![0, 1, 0])]),
            rows,
        )
    }

    #[test]
    fn valid_table_and_names() {
        let t = s3_table(false).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(t.indicators(), &[1, 1, 1]);
        assert_eq!(t.class_names(), vec!["1A", "2A", "3A"]);
        assert_eq!(t.character_names(), vec!["1a", "1b", "2a"]);
        assert_eq!(t.real_classes(), vec![0, 1, 2]);
        assert_eq!(t.power_map(-1).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn perturbed_value_fails_validation() {
        match s3_table(true) {
            Err(Error::Validation { relation, .. }) => assert_eq!(relation, "column orthogonality"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn column_permutation_preserves_validity() {
        let t = s3_table(false).unwrap();
        let p = t.permute_columns(&[0, 2, 1]).unwrap();
        assert_eq!(p.orders(), &[1, 3, 2]);
        assert_eq!(p.power_maps()[&2], vec![0, 1, 0]);
    }

    #[test]
    fn letter_sequence() {
        assert_eq!(letters(0, false), "a");
        assert_eq!(letters(25, true), "Z");
        assert_eq!(letters(26, true), "AA");
    }
}
