//! Subgroup constructions: stabilizers, normalizers, Sylow 2-subgroups,
//! `O^{2'}`, cores and coset actions.

use std::hash::Hash;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::group::Group;
use super::permutation::{ElementKey, Permutation};
use crate::arith::p_part;
use crate::error::{Error, Result};

/// Orbit of an object under a group, with transversal and stabilizer.
pub struct OrbitStabilizer<T> {
    pub orbit: Vec<T>,
    /// `transversal[i]` carries `orbit[0]` to `orbit[i]`.
    pub transversal: Vec<Permutation>,
    pub stabilizer: Group,
    index: FxHashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> OrbitStabilizer<T> {
    pub fn position(&self, obj: &T) -> Option<usize> {
        self.index.get(obj).copied()
    }
}

/// Orbit–stabilizer for an arbitrary right action `act(obj, g)`.
///
/// The stabilizer is grown from Schreier generators until its order reaches
/// `|G| / |orbit|`.
pub fn orbit_stabilizer<T, F>(group: &Group, seed: T, act: F) -> OrbitStabilizer<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Permutation) -> T,
{
    let mut orbit = vec![seed.clone()];
    let mut transversal = vec![group.identity()];
    let mut index: FxHashMap<T, usize> = FxHashMap::default();
    index.insert(seed, 0);
    let mut head = 0;
    while head < orbit.len() {
        for s in group.generators() {
            let img = act(&orbit[head], s);
            if !index.contains_key(&img) {
                index.insert(img.clone(), orbit.len());
                transversal.push(&transversal[head] * s);
                orbit.push(img);
            }
        }
        head += 1;
    }
    let target = group.order() / orbit.len();
    let mut stab_gens: Vec<Permutation> = Vec::new();
    let mut stabilizer = Group::trivial(group.degree());
    'outer: for i in 0..orbit.len() {
        for s in group.generators() {
            if *stabilizer.order() == target {
                break 'outer;
            }
            let j = index[&act(&orbit[i], s)];
            let schreier = &(&transversal[i] * s) * &transversal[j].inverse();
            if !stabilizer.contains(&schreier) {
                stab_gens.push(schreier);
                stabilizer = Group::build(stab_gens.clone(), group.degree()).expect("degree preserved");
            }
        }
    }
    OrbitStabilizer {
        orbit,
        transversal,
        stabilizer,
        index,
    }
}

fn sorted_image(set: &[u32], g: &Permutation) -> Vec<u32> {
    let mut img: Vec<u32> = set.iter().map(|&p| g.apply(p)).collect();
    img.sort_unstable();
    img
}

/// Setwise stabilizer of a point set.
pub fn set_stabilizer(group: &Group, set: &[u32]) -> Group {
    let mut seed = set.to_vec();
    seed.sort_unstable();
    orbit_stabilizer(group, seed, |s, g| sorted_image(s, g)).stabilizer
}

/// Canonical key of a subgroup: its sorted element encodings.
fn subgroup_key(elements: &[Permutation]) -> Vec<ElementKey> {
    let mut keys: Vec<ElementKey> = elements.iter().map(|e| e.key()).collect();
    keys.sort_unstable();
    keys
}

fn conjugate_key(key: &[ElementKey], degree: usize, g: &Permutation) -> Vec<ElementKey> {
    let mut out: Vec<ElementKey> = key
        .iter()
        .map(|k| Permutation::from_key(k, degree).conjugate_by(g).key())
        .collect();
    out.sort_unstable();
    out
}

/// Conjugation orbit of a (small) subgroup, as canonical element-set keys.
pub fn subgroup_conjugates(group: &Group, sub: &Group) -> OrbitStabilizer<Vec<ElementKey>> {
    let degree = group.degree();
    let seed = subgroup_key(&sub.elements());
    orbit_stabilizer(group, seed, |k, g| conjugate_key(k, degree, g))
}

/// `N_G(H)`, for `H` small enough to list its elements.
pub fn normalizer(group: &Group, sub: &Group) -> Group {
    subgroup_conjugates(group, sub).stabilizer
}

/// The 2-part of an element, or `None` for odd order.
pub fn two_part(g: &Permutation) -> Option<Permutation> {
    let o = g.order();
    let t = p_part(o, 2);
    (t > 1).then(|| g.pow((o / t) as i64))
}

/// A Sylow 2-subgroup, grown inside successive normalizers.
pub fn sylow_2(group: &Group, seed: u64) -> Group {
    let target = p_part(group.order_u64(), 2);
    if target == 1 {
        return Group::trivial(group.degree());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = loop {
        if let Some(x) = two_part(&group.random_element(&mut rng)) {
            break vec![x];
        }
    };
    let mut p = Group::build(gens.clone(), group.degree()).expect("degree preserved");
    while p.order_u64() < target {
        let n = normalizer(group, &p);
        loop {
            let Some(y) = two_part(&n.random_element(&mut rng)) else {
                continue;
            };
            if !p.contains(&y) {
                gens.push(y);
                p = Group::build(gens.clone(), group.degree()).expect("degree preserved");
                break;
            }
        }
    }
    p
}

/// `O^{2'}(G)`: the normal closure of a Sylow 2-subgroup.
pub fn o_2prime(group: &Group, seed: u64) -> Group {
    let p = sylow_2(group, seed);
    group.normal_closure(p.generators())
}

/// Action of `G` on the right cosets `Hg` by right multiplication.
pub struct CosetAction {
    group: Group,
    sub: Group,
    /// `H` with `G`'s base as its base, for canonical coset representatives.
    sub_rebased: Group,
    base: Vec<u32>,
    reps: Vec<Permutation>,
    index: FxHashMap<Vec<u32>, usize>,
    image: OnceLock<Group>,
}

impl CosetAction {
    pub fn new(group: &Group, sub: &Group) -> Result<CosetAction> {
        if !sub.is_subgroup_of(group) {
            return Err(Error::NotSubgroup("H is not contained in G".into()));
        }
        let base = group.base();
        let sub_rebased = Group::with_base(sub.generators().to_vec(), group.degree(), &base)?;
        let mut action = CosetAction {
            group: group.clone(),
            sub: sub.clone(),
            sub_rebased,
            base,
            reps: Vec::new(),
            index: FxHashMap::default(),
            image: OnceLock::new(),
        };
        let id = group.identity();
        let key = action.coset_key(&id);
        action.index.insert(key, 0);
        action.reps.push(id);
        let mut head = 0;
        while head < action.reps.len() {
            for s in group.generators() {
                let g = &action.reps[head] * s;
                let key = action.coset_key(&g);
                if !action.index.contains_key(&key) {
                    action.index.insert(key, action.reps.len());
                    action.reps.push(g);
                }
            }
            head += 1;
        }
        Ok(action)
    }

    /// Element of `Hg` with lexicographically least base image.
    fn canonical(&self, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for level in self.sub_rebased.chain().levels() {
            let best = level
                .orbit()
                .iter()
                .copied()
                .min_by_key(|&beta| cur.apply(beta))
                .expect("orbit contains the base point");
            if best != level.base_point() {
                cur = level.transversal(best).expect("orbit point") * &cur;
            }
        }
        cur
    }

    fn coset_key(&self, g: &Permutation) -> Vec<u32> {
        let c = self.canonical(g);
        self.base.iter().map(|&b| c.apply(b)).collect()
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroup(&self) -> &Group {
        &self.sub
    }

    /// Coset representatives; `reps()[0]` is the identity (the coset `H`).
    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.index[&self.coset_key(g)]
    }

    /// Image of `x ∈ G` as a permutation of the cosets.
    pub fn image_of(&self, x: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|t| self.coset_of(&(t * x)) as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Number of cosets fixed by `x`, via membership of `t x t⁻¹` in `H`.
    pub fn fixed_cosets(&self, x: &Permutation) -> usize {
        self.reps
            .iter()
            .filter(|t| self.sub.contains(&(&(*t * x) * &t.inverse())))
            .count()
    }

    /// The permutation group induced on the cosets.
    pub fn image(&self) -> &Group {
        self.image.get_or_init(|| {
            let gens = self.group.generators().iter().map(|g| self.image_of(g)).collect();
            Group::build(gens, self.degree()).expect("images have the action's degree")
        })
    }

    /// Kernel of the action, from a stabilizer chain of `G` acting on points
    /// and cosets simultaneously whose base starts with a base of the image.
    pub fn kernel(&self) -> Group {
        let n = self.group.degree();
        let m = self.degree();
        let diag: Vec<Permutation> = self
            .group
            .generators()
            .iter()
            .map(|g| {
                let img = self.image_of(g);
                let mut images: Vec<u32> = g.images().to_vec();
                images.extend(img.images().iter().map(|&i| i + n as u32));
                Permutation::from_images_unchecked(images)
            })
            .collect();
        let prefix: Vec<u32> = self.image().base().iter().map(|&b| b + n as u32).collect();
        let chain_group = Group::with_base(diag, n + m, &prefix).expect("diagonal degree");
        let gens: Vec<Permutation> = chain_group
            .chain()
            .levels()
            .get(prefix.len())
            .map(|l| {
                l.generators()
                    .iter()
                    .map(|g| g.restrict(n).expect("original points are invariant"))
                    .collect()
            })
            .unwrap_or_default();
        Group::build(gens, n).expect("restricted degree")
    }
}

/// `core_G(H)` as the kernel of the coset action.
pub fn core(group: &Group, sub: &Group) -> Result<Group> {
    Ok(CosetAction::new(group, sub)?.kernel())
}

/// `core_G(H)` by testing every element of `H` against all coset conjugates.
pub fn core_by_conjugation(group: &Group, sub: &Group) -> Result<Group> {
    let action = CosetAction::new(group, sub)?;
    let conj: Vec<(Permutation, Permutation)> =
        action.reps().iter().map(|t| (t.clone(), t.inverse())).collect();
    let mut gens = Vec::new();
    let mut core = Group::trivial(group.degree());
    sub.for_each_element(|h| {
        if core.contains(h) {
            return;
        }
        if conj.iter().all(|(t, ti)| sub.contains(&(&(t * h) * ti))) {
            gens.push(h.clone());
            core = Group::build(gens.clone(), group.degree()).expect("degree preserved");
        }
    });
    Ok(core)
}

/// Primitivity of a transitive group via minimal blocks.
pub fn is_primitive(group: &Group) -> bool {
    let n = group.degree();
    if n <= 2 {
        return group.is_transitive();
    }
    if !group.is_transitive() {
        return false;
    }
    (1..n as u32).all(|beta| minimal_block_size(group, beta) == n)
}

fn minimal_block_size(group: &Group, beta: u32) -> usize {
    let n = group.degree();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut queue = vec![(0u32, beta)];
    parent[beta as usize] = 0;
    while let Some((a, b)) = queue.pop() {
        for s in group.generators() {
            let c = find(&mut parent, s.apply(a));
            let d = find(&mut parent, s.apply(b));
            if c != d {
                parent[d as usize] = c;
                queue.push((c, d));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..n as u32).filter(|&x| find(&mut parent, x) == root).count()
}
