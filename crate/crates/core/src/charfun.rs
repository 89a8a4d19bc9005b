//! Class functions: permutation characters, inner products, decompositions
//! and Frobenius–Schur indicators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclo::{CycloSum, Cyclotomic};
use crate::error::{Error, Result};
use crate::perm::{CosetAction, Group, Permutation};
use crate::table::CharacterTable;

/// Values of a class function, one per class in table order.
pub type ClassFunction = Vec<Cyclotomic>;

/// `(1_H)^G` evaluated at the given class representatives: the number of
/// cosets of `H` fixed by each representative.
pub fn perm_character(group: &Group, sub: &Group, reps: &[Permutation]) -> Result<ClassFunction> {
    let action = CosetAction::new(group, sub)?;
    Ok(perm_character_of(&action, reps))
}

pub fn perm_character_of(action: &CosetAction, reps: &[Permutation]) -> ClassFunction {
    reps.iter()
        .map(|r| Cyclotomic::from_int(action.fixed_cosets(r) as i64))
        .collect()
}

/// `|G|⁻¹ Σ_K |K| a(K) conj(b(K))`.
pub fn inner_product(a: &[Cyclotomic], b: &[Cyclotomic], sizes: &[u64], order: u64) -> Result<BigRational> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() != sizes.len() {
        return Err(Error::LengthMismatch(a.len(), sizes.len()));
    }
    let mut sum = CycloSum::new();
    let mut rational = BigRational::zero();
    for ((x, y), &s) in a.iter().zip(b).zip(sizes) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let size = BigRational::from_integer(BigInt::from(s));
        match (x.as_rational(), y.as_rational()) {
            (Some(p), Some(q)) => rational += p * q * size,
            _ => sum.add_scaled(&(x * &y.conj()), Some(&size)),
        }
    }
    let total = &sum.total() + &Cyclotomic::from_rational(rational);
    let q = total
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::NotACharacter("inner product".into(), format!("irrational value {total}")))?;
    Ok(q / BigRational::from_integer(BigInt::from(order)))
}

/// Multiplicities of the irreducible characters in a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub multiplicities: Vec<u64>,
    pub names: Vec<String>,
}

impl Decomposition {
    /// ATLAS-style rendering such as `1a+22a+230aa`: each constituent's
    /// letter is repeated once per unit of multiplicity.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .zip(&self.names)
            .filter(|(&m, _)| m > 0)
            .map(|(&m, name)| {
                let split = name.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(name.len());
                let (degree, letter) = name.split_at(split);
                format!("{degree}{}", letter.repeat(m as usize))
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Constituents as `(row, multiplicity)` pairs.
    pub fn constituents(&self) -> Vec<(usize, u64)> {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i, m))
            .collect()
    }
}

/// Decomposes a character into irreducibles by inner products, then checks
/// that the multiplicities recompose it exactly.
pub fn decompose(pi: &[Cyclotomic], table: &CharacterTable) -> Result<Decomposition> {
    let mut multiplicities = Vec::with_capacity(table.num_classes());
    for (i, row) in table.rows().iter().enumerate() {
        let m = inner_product(pi, row, table.sizes(), table.order())?;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NotACharacter(
                "class function".into(),
                format!("multiplicity {m} of row {}", i + 1),
            ));
        }
        multiplicities.push(m.to_integer().to_u64().expect("multiplicity fits"));
    }
    let recomposed = recompose(&multiplicities, table);
    if recomposed.as_slice() != pi {
        return Err(Error::NotACharacter(
            "class function".into(),
            "multiplicities do not reproduce its values".into(),
        ));
    }
    Ok(Decomposition {
        multiplicities,
        names: table.character_names(),
    })
}

/// `Σ m_i χ_i`.
pub fn recompose(multiplicities: &[u64], table: &CharacterTable) -> ClassFunction {
    (0..table.num_classes())
        .map(|c| {
            let mut s = CycloSum::new();
            for (row, &m) in table.rows().iter().zip(multiplicities) {
                if m > 0 {
                    s.add_scaled(&row[c], Some(&BigRational::from_integer(BigInt::from(m))));
                }
            }
            s.total()
        })
        .collect()
}

/// Renders multiplicities against a table in ATLAS style.
pub fn render_atlas(multiplicities: &[u64], table: &CharacterTable) -> String {
    Decomposition {
        multiplicities: multiplicities.to_vec(),
        names: table.character_names(),
    }
    .render()
}

/// `ν₂(χ) = |G|⁻¹ Σ_K |K| χ(K²)`, which must be 0, 1 or -1.
pub fn fs_indicator(row: &[Cyclotomic], squares: &[usize], sizes: &[u64], order: u64) -> Result<i32> {
    if row.len() != squares.len() || row.len() != sizes.len() {
        return Err(Error::LengthMismatch(row.len(), squares.len()));
    }
    let mut sum = CycloSum::new();
    for (&sq, &s) in squares.iter().zip(sizes) {
        sum.add_scaled(&row[sq], Some(&BigRational::from_integer(BigInt::from(s))));
    }
    let total = sum.total();
    let value = total
        .as_rational()
        .map(|q| q / BigRational::from_integer(BigInt::from(order)));
    match value.as_ref().and_then(|q| q.is_integer().then(|| q.to_integer())) {
        Some(v) if v.abs() <= BigInt::from(1) => Ok(v.to_i32().expect("small")),
        _ => Err(Error::BadIndicator {
            row: 0,
            value: value.map(|q| q.to_string()).unwrap_or_else(|| total.to_string()),
        }),
    }
}

/// Classes on which every character is real. Where the table's inverse
/// map is available this agrees with `{K : K⁻¹ = K}`, which is asserted.
pub fn real_classes(table: &CharacterTable) -> Vec<usize> {
    let by_values = table.real_classes();
    let by_inverse: Vec<usize> = (0..table.num_classes())
        .filter(|&c| table.inverse_map()[c] == c)
        .collect();
    assert_eq!(by_values, by_inverse, "real classes by values and by inverse map disagree");
    by_values
}

/// `θ^G` from a class function of a subgroup `H`, given the fusion of
/// `H`-classes into `G`-classes:
/// `θ^G(K) = |G| / (|H| |K|) · Σ_{L ⊆ K} |L| θ(L)`.
pub fn induce(
    theta: &[Cyclotomic],
    sub_sizes: &[u64],
    sub_order: u64,
    fusion: &[usize],
    sizes: &[u64],
    order: u64,
) -> ClassFunction {
    let mut sums: Vec<CycloSum> = sizes.iter().map(|_| CycloSum::new()).collect();
    for ((t, &l), &k) in theta.iter().zip(sub_sizes).zip(fusion) {
        sums[k].add_scaled(t, Some(&BigRational::from_integer(BigInt::from(l))));
    }
    sums.into_iter()
        .zip(sizes)
        .map(|(s, &k)| {
            let f = BigRational::new(BigInt::from(order), BigInt::from(sub_order) * BigInt::from(k));
            s.total().scale(&f)
        })
        .collect()
}

/// Names the constituents of a decomposition with their multiplicities and
/// indicators, e.g. for reports.
pub fn constituent_labels(dec: &Decomposition, table: &CharacterTable) -> Vec<(String, u64, i32)> {
    dec.constituents()
        .into_iter()
        .map(|(i, m)| (dec.names[i].clone(), m, table.indicators()[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn v(x: i64) -> Cyclotomic {
        Cyclotomic::from_int(x)
    }

    fn s3() -> CharacterTable {
        CharacterTable::new(
            "S3",
            6,
            vec![1, 3, 2],
            vec![1, 2, 3],
            BTreeMap::from([(2, vec![0, 0, 2]), (3, vec![0, 1, 0])]),
            vec![vec![v(1), v(1), v(1)], vec![v(1), v(-1), v(1)], vec![v(2), v(0), v(-1)]],
        )
        .unwrap()
    }

    #[test]
    fn regular_character_multiplicities_are_degrees() {
        let t = s3();
        let d = decompose(&[v(6), v(0), v(0)], &t).unwrap();
        assert_eq!(d.multiplicities, vec![1, 1, 2]);
        assert_eq!(d.render(), "1a+1b+2aa");
    }

    #[test]
    fn non_character_is_rejected() {
        assert!(matches!(decompose(&[v(1), v(0), v(0)], &s3()), Err(Error::NotACharacter(..))));
        assert!(matches!(
            inner_product(&[v(1)], &[v(1), v(2)], &[1], 1),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn indicator_rejects_nonsense() {
        let err = fs_indicator(&[v(3), v(3), v(3)], &[0, 0, 2], &[1, 3, 2], 6).unwrap_err();
        assert!(matches!(err, Error::BadIndicator { .. }));
    }

    #[test]
    fn render_with_high_multiplicity() {
        let d = Decomposition {
            multiplicities: vec![1, 0, 4],
            names: vec!["1a".into(), "5a".into(), "26b".into()],
        };
        assert_eq!(d.render(), "1a+26bbbb");
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let pi = induce(&[v(1)], &[1], 1, &[0], &[1, 3, 2], 6);
        assert_eq!(pi, vec![v(6), v(0), v(0)]);
    }
}
