//! Character tables by the Dixon–Schneider method.
//!
//! The class sums act on the centre of the group algebra through the class
//! multiplication coefficients. Over a prime field `F_p` with `p ≡ 1 mod
//! exp(G)` their common eigenvectors are the central characters
//! `ω_χ(K) = |K| χ(g_K) / χ(1)`; from these the degrees and the values
//! modulo `p` follow, and a discrete Fourier transform over each cyclic
//! subgroup `⟨g⟩` recovers the exact cyclotomic values.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{factorize, inv_mod, is_prime, isqrt, pow_mod};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ConjugacyClasses, Group, Permutation};
use crate::table::CharacterTable;

/// Class multiplication coefficients for a fixed first class `i`:
/// `entries[j][k] = #{(x, y) ∈ K_i × K_j : xy = g_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMatrix {
    pub class: usize,
    pub entries: Vec<Vec<u64>>,
}

pub fn class_matrix(classes: &ConjugacyClasses, i: usize) -> Result<ClassMatrix> {
    let lookup = classes.lookup().ok_or(Error::ClassesNotEnumerated)?;
    let k = classes.len();
    let degree = lookup.degree();
    let members: Vec<&[u8]> = lookup
        .iter()
        .filter(|&(_, c)| c == i)
        .map(|(key, _)| key.as_slice())
        .collect();
    let reps = classes.reps();
    // y = x⁻¹ g_k
    let entries = members
        .par_chunks(4096)
        .fold(
            || vec![vec![0u64; k]; k],
            |mut acc, chunk| {
                for key in chunk {
                    let x_inv = Permutation::from_key(key, degree).inverse();
                    for (kk, g) in reps.iter().enumerate() {
                        let j = lookup.class_of(&(&x_inv * g)).expect("product lies in the group");
                        acc[j][kk] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; k]; k],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    Ok(ClassMatrix { class: i, entries })
}

pub fn class_matrices(classes: &ConjugacyClasses) -> Result<Vec<ClassMatrix>> {
    (0..classes.len()).map(|i| class_matrix(classes, i)).collect()
}

/// Smallest prime `p ≡ 1 mod exponent` with `p > 2·√order`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("a prime has a primitive root")
}

struct Fp(u64);

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.0)
    }

    /// Row-reduced echelon form of the row space of `rows`.
    fn rref(&self, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    /// Basis of `{c : M c = 0}` for a square matrix `M`.
    fn nullspace(&self, m: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let n = m.len();
        let r = self.rref(m);
        let pivots: Vec<usize> = r
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u64; n];
                v[free] = 1;
                for (row, &pc) in r.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[free]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial (lowest coefficient first) via reduction to
    /// Hessenberg form.
    fn charpoly(&self, mut h: Vec<Vec<u64>>) -> Vec<u64> {
        let n = h.len();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(u, h[m][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for j in 0..n {
                    let t = self.mul(u, h[j][i]);
                    h[j][m] = self.add(h[j][m], t);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            // (x - h[m][m]) · P_m
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[m][m], c));
            }
            let mut t = 1u64;
            for i in (0..m).rev() {
                t = self.mul(t, h[i + 1][i]);
                let f = self.mul(t, h[i][m]);
                if f != 0 {
                    for (d, &c) in polys[i].iter().enumerate() {
                        next[d] = self.sub(next[d], self.mul(f, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().expect("n + 1 polynomials")
    }

    fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.0)
            .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| self.add(self.mul(acc, x), c)) == 0)
            .collect()
    }
}

/// Common eigenvectors of the class matrices, each normalized to have
/// first coordinate 1.
fn split_eigenspaces(classes: &ConjugacyClasses, f: &Fp) -> Result<Vec<Vec<u64>>> {
    let k = classes.len();
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut open: Vec<Vec<Vec<u64>>> = vec![identity];
    let mut done: Vec<Vec<u64>> = Vec::new();
    if k == 1 {
        return Ok(vec![vec![1]]);
    }
    for i in 1..k {
        if open.is_empty() {
            break;
        }
        let a = class_matrix(classes, i)?;
        let a: Vec<Vec<u64>> = a
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x % f.0).collect())
            .collect();
        let mut next_open = Vec::new();
        for space in open {
            let d = space.len();
            let pivots: Vec<usize> = space
                .iter()
                .map(|w| w.iter().position(|&x| x != 0).expect("basis vector is nonzero"))
                .collect();
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|w| {
                    (0..k)
                        .map(|j| (0..k).fold(0u64, |acc, l| f.add(acc, f.mul(a[j][l], w[l]))))
                        .collect()
                })
                .collect();
            // Matrix of A on the space: column s holds the coordinates of A w_s.
            let b: Vec<Vec<u64>> = (0..d)
                .map(|t| (0..d).map(|s| images[s][pivots[t]]).collect())
                .collect();
            let roots = f.roots(&f.charpoly(b.clone()));
            if roots.len() == 1 {
                next_open.push(space);
                continue;
            }
            let mut total_dim = 0;
            for lambda in roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|t| (0..d).map(|s| if s == t { f.sub(b[t][s], lambda) } else { b[t][s] }).collect())
                    .collect();
                let coeffs = f.nullspace(shifted);
                let vectors: Vec<Vec<u64>> = coeffs
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|l| (0..d).fold(0u64, |acc, s| f.add(acc, f.mul(c[s], space[s][l]))))
                            .collect()
                    })
                    .collect();
                let sub = f.rref(vectors);
                total_dim += sub.len();
                if sub.len() == 1 {
                    done.push(sub.into_iter().next().expect("one vector"));
                } else {
                    next_open.push(sub);
                }
            }
            if total_dim != d {
                return Err(Error::SplittingFailure(format!(
                    "class {i}: eigenspaces of total dimension {total_dim} in a space of dimension {d}"
                )));
            }
        }
        open = next_open;
    }
    if !open.is_empty() {
        return Err(Error::SplittingFailure(format!(
            "{} subspaces of dimension > 1 remain after all class matrices",
            open.len()
        )));
    }
    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::SplittingFailure("eigenvector vanishes at the identity class".into()));
            }
            let inv = f.inv(v[0]);
            Ok(v.into_iter().map(|x| f.mul(x, inv)).collect())
        })
        .collect()
}

pub fn character_table(group: &Group, threshold: u64) -> Result<CharacterTable> {
    let classes = conjugacy_classes(group, threshold)?;
    character_table_from_classes(&classes)
}

/// Table for enumerated classes; columns follow the class order.
pub fn character_table_from_classes(classes: &ConjugacyClasses) -> Result<CharacterTable> {
    let k = classes.len();
    let order = classes.group_order();
    let sizes = classes.sizes();
    let orders = classes.orders();
    let exponent = orders.iter().fold(1u64, |acc, o| acc.lcm(o));
    let p = dixon_prime(exponent, order);
    let f = Fp(p);
    let vectors = split_eigenspaces(classes, &f)?;
    if vectors.len() != k {
        return Err(Error::SplittingFailure(format!("{} characters for {k} classes", vectors.len())));
    }
    let inverse = classes.inverse_map();
    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    // powers[j][t] = class of g_j^t
    let powers: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            (0..orders[j])
                .map(|t| classes.class_of(&classes.reps()[j].pow(t as i64)).expect("enumerated"))
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(k);
    for v in &vectors {
        let s = (0..k).fold(0u64, |acc, j| {
            f.add(acc, f.mul(f.mul(v[j], v[inverse[j]]), f.inv(sizes[j] % p)))
        });
        let d2 = f.mul(order % p, f.inv(s));
        let degree = (1..=isqrt(order))
            .find(|&d| f.mul(d, d) == d2)
            .ok_or_else(|| Error::SplittingFailure("no degree satisfies the degree equation".into()))?;
        let values: Vec<u64> = (0..k)
            .map(|j| f.mul(f.mul(v[j], degree), f.inv(sizes[j] % p)))
            .collect();
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let o = orders[j];
            let zo = pow_mod(z, exponent / o, p);
            let zo_inv = f.inv(zo);
            let o_inv = f.inv(o % p);
            let mut m = vec![0i64; o as usize];
            for (l, ml) in m.iter_mut().enumerate() {
                let step = pow_mod(zo_inv, l as u64, p);
                let mut w = 1u64;
                let mut acc = 0u64;
                for t in 0..o as usize {
                    acc = f.add(acc, f.mul(values[powers[j][t]], w));
                    w = f.mul(w, step);
                }
                let c = f.mul(acc, o_inv);
                if c > degree {
                    return Err(Error::SplittingFailure(format!(
                        "eigenvalue multiplicity {c} exceeds degree {degree}"
                    )));
                }
                *ml = c as i64;
            }
            row.push(Cyclotomic::from_dense_int(o, &m));
        }
        rows.push(row);
    }
    rows.sort_by(|a, b| row_key(a).cmp(&row_key(b)).then_with(|| a.cmp(b)));
    CharacterTable::new(
        "",
        order,
        sizes.to_vec(),
        orders.to_vec(),
        classes.power_maps().clone(),
        rows,
    )
}

/// Sort key: degree, then the trivial character first, then rational rows
/// before real ones before non-real ones.
fn row_key(row: &[Cyclotomic]) -> (i64, bool, u8) {
    let trivial = row.iter().all(|v| v.is_one());
    let field = if row.iter().all(|v| v.is_rational()) {
        0
    } else if row.iter().all(|v| v.is_real()) {
        1
    } else {
        2
    };
    (row[0].as_i64().unwrap_or(i64::MAX), !trivial, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_THRESHOLD;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> Group {
        Group::build(vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])], 3).unwrap()
    }

    #[test]
    fn s3_structure_constants_by_brute_force() {
        let g = s3();
        let c = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        let elements = g.elements();
        for i in 0..3 {
            let m = class_matrix(&c, i).unwrap();
            for j in 0..3 {
                for k in 0..3 {
                    let target = &c.reps()[k];
                    let count = elements
                        .iter()
                        .filter(|x| c.class_of(x) == Some(i))
                        .flat_map(|x| elements.iter().map(move |y| (x, y)))
                        .filter(|(x, y)| c.class_of(y) == Some(j) && &(*x * *y) == target)
                        .count() as u64;
                    assert_eq!(m.entries[j][k], count, "a[{i}][{j}][{k}]");
                }
            }
        }
        assert_eq!(class_matrix(&c, 1).unwrap().entries[1][0], 3);
    }

    #[test]
    fn identity_class_matrix_is_identity() {
        let c = conjugacy_classes(&s3(), DEFAULT_THRESHOLD).unwrap();
        let m = class_matrix(&c, 0).unwrap();
        assert_eq!(m.entries, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn structure_constant_sums() {
        let g = Group::build(vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])], 5).unwrap();
        let c = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        let sizes = c.sizes();
        for m in class_matrices(&c).unwrap() {
            let i = m.class;
            for k in 0..c.len() {
                assert_eq!((0..c.len()).map(|j| m.entries[j][k]).sum::<u64>(), sizes[i]);
            }
            for j in 0..c.len() {
                let s: u64 = (0..c.len()).map(|k| m.entries[j][k] * sizes[k]).sum();
                assert_eq!(s, sizes[i] * sizes[j]);
            }
        }
    }

    #[test]
    fn prime_choice() {
        // exp(S3) = 6, 2√6 ≈ 4.9: 7 ≡ 1 mod 6.
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(60, 120), 61);
    }

    #[test]
    fn hessenberg_characteristic_polynomial() {
        let f = Fp(101);
        // [[2,1],[1,2]] has eigenvalues 1 and 3: x² - 4x + 3.
        assert_eq!(f.charpoly(vec![vec![2, 1], vec![1, 2]]), vec![3, 97, 1]);
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        // det(xI - M) = x³ - 16x² - 12x + 3 for this matrix.
        assert_eq!(f.charpoly(m), vec![3, 89, 85, 1]);
    }

    #[test]
    fn small_tables() {
        let c3 = Group::build(vec![perm(3, &[&[0, 1, 2]])], 3).unwrap();
        let t = character_table(&c3, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let allowed = [Cyclotomic::one(), Cyclotomic::root_of_unity(3, 1).unwrap(), Cyclotomic::root_of_unity(3, 2).unwrap()];
        assert!(t.rows().iter().flatten().all(|v| allowed.contains(v)));

        assert_eq!(character_table(&s3(), DEFAULT_THRESHOLD).unwrap().degrees(), vec![1, 1, 2]);
        let a5 = Group::build(vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])], 5).unwrap();
        assert_eq!(character_table(&a5, DEFAULT_THRESHOLD).unwrap().degrees(), vec![1, 3, 3, 4, 5]);
        assert_eq!(character_table(&Group::trivial(3), DEFAULT_THRESHOLD).unwrap().degrees(), vec![1]);
    }
}
