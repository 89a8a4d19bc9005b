//! `SL(n, q)` acting on nonzero vectors and `PSL(n, q)` acting on
//! projective points.

use rustc_hash::FxHashMap;

use super::gf::Gf;
use crate::error::{Error, Result};
use crate::perm::{Group, Permutation};

pub type Matrix = Vec<Vec<u32>>;

/// A linear group together with the vectors labelling its points.
pub struct LinearGroup {
    pub field: Gf,
    pub dim: usize,
    pub projective: bool,
    pub points: Vec<Vec<u32>>,
    index: FxHashMap<Vec<u32>, u32>,
    pub group: Group,
}

impl LinearGroup {
    pub fn new(dim: usize, q: u32, projective: bool) -> Result<LinearGroup> {
        if dim < 2 {
            return Err(Error::InvalidSpec(format!("dimension {dim} is below 2")));
        }
        let field = Gf::new(q)?;
        let mut points = Vec::new();
        let total = (q as u64).pow(dim as u32);
        for code in 1..total {
            let mut v = Vec::with_capacity(dim);
            let mut c = code;
            for _ in 0..dim {
                v.push((c % q as u64) as u32);
                c /= q as u64;
            }
            v.reverse();
            if !projective || v.iter().find(|&&x| x != 0) == Some(&1) {
                points.push(v);
            }
        }
        let index = points
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        let mut lg = LinearGroup {
            field,
            dim,
            projective,
            points,
            index,
            group: Group::trivial(1),
        };
        let gens: Vec<Permutation> = lg.generating_matrices().iter().map(|m| lg.perm_of(m)).collect();
        lg.group = Group::build(gens, lg.points.len())?;
        Ok(lg)
    }

    /// Elementary transvections, plus `diag(ω, ω⁻¹, 1, …)` so that the
    /// transvections with all field entries are reached by conjugation.
    fn generating_matrices(&self) -> Vec<Matrix> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = identity(n);
                    m[i][j] = 1;
                    out.push(m);
                }
            }
        }
        if self.field.order() > 2 {
            let w = self.field.primitive();
            let mut d = identity(n);
            d[0][0] = w;
            d[1][1] = self.field.inv(w);
            out.push(d);
        }
        out
    }

    fn normalize(&self, mut v: Vec<u32>) -> Vec<u32> {
        if self.projective {
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                let s = self.field.inv(lead);
                for x in v.iter_mut() {
                    *x = self.field.mul(*x, s);
                }
            }
        }
        v
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32], m: &Matrix) -> Vec<u32> {
        let f = &self.field;
        (0..self.dim)
            .map(|j| (0..self.dim).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i][j]))))
            .collect()
    }

    pub fn perm_of(&self, m: &Matrix) -> Permutation {
        let images = self
            .points
            .iter()
            .map(|v| self.index[&self.normalize(self.apply(v, m))])
            .collect();
        Permutation::from_images(images).expect("invertible matrix permutes points")
    }

    pub fn point_of(&self, v: &[u32]) -> Option<u32> {
        self.index.get(&self.normalize(v.to_vec())).copied()
    }

    /// The matrix of an element acting on vectors: row `i` is the image of
    /// the `i`-th standard basis vector.
    pub fn matrix_of(&self, g: &Permutation) -> Result<Matrix> {
        if self.projective {
            return Err(Error::InvalidSpec("matrices are determined only up to scalars on projective points".into()));
        }
        Ok((0..self.dim)
            .map(|i| {
                let mut e = vec![0; self.dim];
                e[i] = 1;
                self.points[g.apply(self.index[&e]) as usize].clone()
            })
            .collect())
    }

    /// Rank of a matrix over the field.
    pub fn rank(&self, m: &Matrix) -> usize {
        let f = &self.field;
        let mut a = m.clone();
        let (rows, cols) = (a.len(), self.dim);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let s = f.inv(a[rank][col]);
            for x in a[rank].iter_mut() {
                *x = f.mul(*x, s);
            }
            for r in 0..rows {
                if r != rank && a[r][col] != 0 {
                    let c = a[r][col];
                    for k in 0..cols {
                        let t = f.mul(c, a[rank][k]);
                        a[r][k] = f.sub(a[r][k], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.iter().map(|row| self.apply(row, b)).collect()
    }

    /// Jordan block sizes of a unipotent matrix, largest first, from the
    /// ranks of powers of `u - 1`.
    pub fn unipotent_blocks(&self, u: &Matrix) -> Vec<usize> {
        let n = self.dim;
        let f = &self.field;
        let nil: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.sub(u[i][j], 1) } else { u[i][j] }).collect())
            .collect();
        // r[k] = rank of nil^k; blocks of size ≥ k number r[k-1] - r[k].
        let mut ranks = vec![n];
        let mut power = identity(n);
        while *ranks.last().unwrap() > 0 {
            power = self.mat_mul(&power, &nil);
            let r = self.rank(&power);
            assert!(r < *ranks.last().unwrap(), "matrix is not unipotent");
            ranks.push(r);
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut blocks = Vec::new();
        for k in (0..at_least.len()).rev() {
            let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
            blocks.extend(std::iter::repeat(k + 1).take(exactly));
        }
        blocks
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}
