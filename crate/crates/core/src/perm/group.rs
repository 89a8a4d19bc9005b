use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use super::chain::{Level, StabChain};
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A permutation group given by generators together with a stabilizer chain.
///
/// Immutable once built; cloning shares the chain.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl Group {
    pub fn build(generators: Vec<Permutation>, degree: usize) -> Result<Group> {
        Group::with_base(generators, degree, &[])
    }

    /// Builds the group with `base_prefix` as the leading base points.
    pub fn with_base(generators: Vec<Permutation>, degree: usize, base_prefix: &[u32]) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if let Some(&p) = base_prefix.iter().find(|&&p| p as usize >= degree) {
            return Err(Error::InvalidSpec(format!("base point {p} outside degree {degree}")));
        }
        let chain = StabChain::new(degree, &generators, base_prefix);
        let order = chain.order();
        Ok(Group {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                chain,
                order,
            }),
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::build(Vec::new(), degree).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    /// Order as `u64`; every group this crate enumerates fits.
    pub fn order_u64(&self) -> u64 {
        self.inner.order.to_u64().expect("group order exceeds u64")
    }

    pub fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.inner.chain.strong_generators()
    }

    pub fn basic_orbits(&self) -> Vec<Vec<u32>> {
        self.inner
            .chain
            .levels()
            .iter()
            .map(|l: &Level| l.orbit().to_vec())
            .collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.inner.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order == BigUint::from(1u32)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of the same symmetric group.
    pub fn same_subgroup(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, parent: &Group) -> bool {
        parent.generators().iter().all(|g| {
            self.generators()
                .iter()
                .all(|h| self.contains(&h.conjugate_by(g)))
        })
    }

    /// Index `[self : sub]` for a subgroup `sub`.
    pub fn index_of(&self, sub: &Group) -> u64 {
        (self.order() / sub.order())
            .to_u64()
            .expect("index exceeds u64")
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.inner.chain.random_element(rng)
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, f: F) {
        self.inner.chain.for_each_element(f)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order_u64() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Subgroup generated by `generators`; errors if any lies outside `self`.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<Group> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotSubgroup(format!("{g} is not an element of the group")));
            }
        }
        Group::build(generators, self.degree())
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            for g in self.generators() {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
            head += 1;
        }
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for p in 0..self.degree() as u32 {
            if !seen[p as usize] {
                let orb = self.orbit(p);
                for &q in &orb {
                    seen[q as usize] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.orbit(0).len() == self.degree()
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Group {
        let rebased = Group::with_base(self.generators().to_vec(), self.degree(), points)
            .expect("points lie within the degree");
        let levels = rebased.chain().levels();
        let gens = levels
            .get(points.len())
            .map(|l| l.generators().to_vec())
            .unwrap_or_default();
        Group::build(gens, self.degree()).expect("stabilizer generators have the group's degree")
    }

    /// Smallest normal subgroup of `self` containing `generators`.
    pub fn normal_closure(&self, generators: &[Permutation]) -> Group {
        let mut gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut closure = Group::build(gens.clone(), self.degree()).expect("degree checked");
        let mut queue: Vec<Permutation> = gens.clone();
        while let Some(x) = queue.pop() {
            for g in self.generators() {
                let y = x.conjugate_by(g);
                if !closure.contains(&y) {
                    gens.push(y.clone());
                    closure = Group::build(gens.clone(), self.degree()).expect("degree checked");
                    queue.push(y);
                }
            }
        }
        closure
    }

    pub fn derived_subgroup(&self) -> Group {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = &(&(&a.inverse() * &b.inverse()) * a) * b;
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Exponent (lcm of element orders) by full enumeration.
    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        let mut e = 1u64;
        self.for_each_element(|g| e = e.lcm(&g.order()));
        e
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree())
            .field("order", &self.order().to_string())
            .field("generators", &self.generators())
            .finish()
    }
}
