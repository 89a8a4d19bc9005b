//! Per-conductor data: cyclotomic polynomials, reduction tables for the power
//! basis, and the linear maps that move a value to a subfield.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::arith::{divisors, euler_phi};

/// Power-basis data for `Q(ζ_n)`.
pub struct FieldData {
    pub n: u64,
    pub phi: usize,
    /// `Φ_n`, lowest coefficient first.
    pub poly: Vec<i64>,
    /// `reduce[e - phi]` holds the coordinates of `x^e mod Φ_n`.
    pub reduce: Vec<Vec<i64>>,
}

impl FieldData {
    /// Coordinates of `ζ_n^e`.
    pub fn power(&self, e: u64) -> PowerCoords<'_> {
        let e = (e % self.n) as usize;
        if e < self.phi {
            PowerCoords::Unit(e)
        } else {
            PowerCoords::Row(&self.reduce[e - self.phi])
        }
    }

    /// Reduces a dense exponent vector of length `n` to `phi` coordinates.
    pub fn reduce_dense(&self, dense: Vec<BigRational>) -> Vec<BigRational> {
        debug_assert_eq!(dense.len() as u64, self.n);
        let mut iter = dense.into_iter();
        let mut out: Vec<BigRational> = iter.by_ref().take(self.phi).collect();
        for (row, c) in self.reduce.iter().zip(iter) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += &c * BigInt::from(r);
                }
            }
        }
        out
    }

    /// Integer variant of [`FieldData::reduce_dense`].
    pub fn reduce_dense_int(&self, dense: &[i64]) -> Vec<i128> {
        let mut out: Vec<i128> = dense[..self.phi].iter().map(|&c| c as i128).collect();
        for (row, &c) in self.reduce.iter().zip(&dense[self.phi..]) {
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o += c as i128 * r as i128;
            }
        }
        out
    }
}

pub enum PowerCoords<'a> {
    Unit(usize),
    Row(&'a [i64]),
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic.
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn compute(n: u64) -> FieldData {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            poly = poly_div_exact(&poly, &field(d).poly);
        }
    }
    let phi = euler_phi(n) as usize;
    debug_assert_eq!(poly.len(), phi + 1);
    // x^phi ≡ -Σ_{i<phi} poly[i] x^i, then multiply by x repeatedly.
    let mut reduce = Vec::with_capacity(n as usize - phi);
    let mut cur: Vec<i64> = poly[..phi].iter().map(|&c| -c).collect();
    for _ in phi..n as usize {
        reduce.push(cur.clone());
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for (x, &c) in next.iter_mut().zip(&poly[..phi]) {
                *x -= top * c;
            }
        }
        cur = next;
    }
    FieldData { n, phi, poly, reduce }
}

fn field_cache() -> &'static Mutex<FxHashMap<u64, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<FxHashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn field(n: u64) -> Arc<FieldData> {
    assert!(n >= 1);
    if let Some(f) = field_cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let data = Arc::new(compute(n));
    field_cache().lock().unwrap().entry(n).or_insert(data).clone()
}

/// Moving a value from `Q(ζ_n)` to `Q(ζ_m)` where `n = p·m` and `p ∤ m`.
pub struct Descent {
    /// Columns: coordinates in `Q(ζ_n)` of `ζ_m^j` for `j < φ(m)`.
    embed: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    /// Inverse of the embedding restricted to the pivot rows.
    inverse: Vec<Vec<BigRational>>,
}

impl Descent {
    fn new(n: u64, p: u64) -> Descent {
        let m = n / p;
        let big = field(n);
        let small_phi = euler_phi(m) as usize;
        let embed: Vec<Vec<i64>> = (0..small_phi as u64)
            .map(|j| match big.power(j * p) {
                PowerCoords::Unit(i) => {
                    let mut v = vec![0; big.phi];
                    v[i] = 1;
                    v
                }
                PowerCoords::Row(r) => r.to_vec(),
            })
            .collect();
        // Choose independent rows greedily by elimination on rows of the
        // φ(n) × φ(m) embedding matrix.
        let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
        let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut pivots = Vec::new();
        for row in 0..big.phi {
            let mut v: Vec<BigRational> = (0..small_phi).map(|j| rat(embed[j][row])).collect();
            for (col, b) in &basis {
                if !v[*col].is_zero() {
                    let f = v[*col].clone() / &b[*col];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            if let Some(col) = v.iter().position(|x| !x.is_zero()) {
                basis.push((col, v));
                pivots.push(row);
                if pivots.len() == small_phi {
                    break;
                }
            }
        }
        assert_eq!(pivots.len(), small_phi, "embedding has full column rank");
        let sub: Vec<Vec<BigRational>> = pivots
            .iter()
            .map(|&r| (0..small_phi).map(|j| rat(embed[j][r])).collect())
            .collect();
        let inverse = invert(sub);
        Descent {
            embed,
            pivots,
            inverse,
        }
    }

    /// Coordinates in `Q(ζ_m)` if the value lies there.
    pub fn apply(&self, coords: &[BigRational]) -> Option<Vec<BigRational>> {
        let rhs: Vec<&BigRational> = self.pivots.iter().map(|&r| &coords[r]).collect();
        let w: Vec<BigRational> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * *b)
            })
            .collect();
        for (row, c) in coords.iter().enumerate() {
            let mut s = BigRational::zero();
            for (j, wj) in w.iter().enumerate() {
                let e = self.embed[j][row];
                if e != 0 && !wj.is_zero() {
                    s += wj * BigInt::from(e);
                }
            }
            if &s != c {
                return None;
            }
        }
        Some(w)
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &f;
        }
        for x in inv[col].iter_mut() {
            *x /= &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                let (pa, pi) = (a[col].clone(), inv[col].clone());
                for (x, y) in a[r].iter_mut().zip(&pa) {
                    *x -= &g * y;
                }
                for (x, y) in inv[r].iter_mut().zip(&pi) {
                    *x -= &g * y;
                }
            }
        }
    }
    inv
}

fn descent_cache() -> &'static Mutex<FxHashMap<(u64, u64), Arc<Descent>>> {
    static CACHE: OnceLock<Mutex<FxHashMap<(u64, u64), Arc<Descent>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn descent(n: u64, p: u64) -> Arc<Descent> {
    if let Some(d) = descent_cache().lock().unwrap().get(&(n, p)) {
        return d.clone();
    }
    let d = Arc::new(Descent::new(n, p));
    descent_cache().lock().unwrap().entry((n, p)).or_insert(d).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(field(1).poly, vec![-1, 1]);
        assert_eq!(field(2).poly, vec![1, 1]);
        assert_eq!(field(4).poly, vec![1, 0, 1]);
        assert_eq!(field(6).poly, vec![1, -1, 1]);
        assert_eq!(field(12).poly, vec![1, 0, -1, 0, 1]);
        assert_eq!(field(15).poly.len(), 9);
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        assert!(field(105).poly.contains(&-2));
    }

    #[test]
    fn reduction_rows_are_powers_mod_phi() {
        // In Q(ζ_5): ζ^4 = -1 - ζ - ζ² - ζ³.
        assert_eq!(field(5).reduce[0], vec![-1, -1, -1, -1]);
        // In Q(ζ_8): ζ^4 = -1, ζ^7 = -ζ³.
        assert_eq!(field(8).reduce[0], vec![-1, 0, 0, 0]);
        assert_eq!(field(8).reduce[3], vec![0, 0, 0, -1]);
    }
}
