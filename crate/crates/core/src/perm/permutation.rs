use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Compact hashable encoding of a permutation's image sequence.
///
/// One byte per point for degree <= 256, two little-endian bytes otherwise.
pub type ElementKey = SmallVec<[u8; 24]>;

/// A permutation of `{0, .., degree - 1}` stored as its image array.
///
/// Products compose left to right: `(a * b).apply(i) == b.apply(a.apply(i))`.
/// Conjugation follows the same convention, `x^g = g⁻¹ x g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n || seen[im] {
                return Err(Error::NotBijective(n));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree || touched[p] {
                    return Err(Error::NotBijective(degree));
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im == i as u32)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&im| other.images[im as usize])
                .collect(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i ↦ g(self(g⁻¹(i))): for each point j, g(j) ↦ g(self(j)).
        let mut images = vec![0u32; self.images.len()];
        for (j, &im) in self.images.iter().enumerate() {
            images[g.images[j] as usize] = g.images[im as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        result
    }

    /// Cycle lengths including fixed points, in order of first point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &im)| im == *i as u32)
            .count()
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        transpositions % 2 == 0
    }

    pub fn key(&self) -> ElementKey {
        let mut key = ElementKey::new();
        if self.images.len() <= 256 {
            key.extend(self.images.iter().map(|&im| im as u8));
        } else {
            for &im in &self.images {
                key.extend_from_slice(&(im as u16).to_le_bytes());
            }
        }
        key
    }

    pub fn from_key(key: &[u8], degree: usize) -> Permutation {
        let images = if degree <= 256 {
            key.iter().map(|&b| b as u32).collect()
        } else {
            key.chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                .collect()
        };
        Permutation { images }
    }

    /// Restricts to the points `0..degree`, which must be an invariant set.
    pub fn restrict(&self, degree: usize) -> Result<Permutation> {
        Permutation::from_images(self.images[..degree].to_vec())
    }

    /// Disjoint-cycle notation over 1-based points, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            out.push('(');
            let parts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            out.push_str(&parts.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}
