//! Conjugacy classes by full enumeration.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::group::Group;
use super::permutation::{ElementKey, Permutation};
use crate::arith::{primes_up_to, small_primes_dividing};
use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLD: u64 = 2_000_000;

/// Hash index from every group element to its class.
pub struct ClassLookup {
    degree: usize,
    map: FxHashMap<ElementKey, u32>,
}

impl ClassLookup {
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.map.get(&g.key()).map(|&c| c as usize)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Encoded elements with their class indices.
    pub fn iter(&self) -> impl Iterator<Item = (&ElementKey, usize)> {
        self.map.iter().map(|(k, &c)| (k, c as usize))
    }

    /// Every element with its class index.
    pub fn for_each<F: FnMut(Permutation, usize)>(&self, mut f: F) {
        for (k, &c) in &self.map {
            f(Permutation::from_key(k, self.degree), c as usize);
        }
    }
}

/// Conjugacy classes with their metadata.
///
/// Class 0 is always the identity. Classes are ordered by element order, then
/// class size, then the lexicographically least element, which is also the
/// stored representative.
#[derive(Clone)]
pub struct ConjugacyClasses {
    group_order: u64,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    inverse_map: Vec<usize>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    lookup: Option<Arc<ClassLookup>>,
}

impl ConjugacyClasses {
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn lookup(&self) -> Option<&Arc<ClassLookup>> {
        self.lookup.as_ref()
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.lookup.as_ref()?.class_of(g)
    }

    /// Class map `K ↦ class of rep(K)^k`. `k = -1` gives the inverse map.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        if k == -1 {
            return self.inverse_map.clone();
        }
        if let Some(lookup) = &self.lookup {
            return self
                .reps
                .iter()
                .map(|r| lookup.class_of(&r.pow(k)).expect("powers stay in the group"))
                .collect();
        }
        compose_power_map(&self.orders, &self.power_maps, &self.inverse_map, k)
            .expect("stored prime power maps generate the requested power")
    }
}

/// Power map for exponent `k` from prime power maps, by walking the
/// multiplicative monoid generated by the stored primes and `-1` modulo each
/// order. `None` when some exponent is out of reach.
pub fn compose_power_map(
    orders: &[u64],
    prime_maps: &BTreeMap<u64, Vec<usize>>,
    inverse_map: &[usize],
    k: i64,
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(orders.len());
    for c in 0..orders.len() {
        let o = orders[c];
        let (start, e) = if k < 0 {
            (inverse_map[c], ((-k) as u64) % o)
        } else {
            (c, (k as u64) % o)
        };
        if e == 0 {
            out.push(0);
            continue;
        }
        if e == 1 {
            out.push(start);
            continue;
        }
        // BFS over exponents modulo o.
        let mut class_at: FxHashMap<u64, usize> = FxHashMap::default();
        class_at.insert(1, start);
        let mut queue = VecDeque::from([1u64]);
        let mut found = None;
        while let Some(s) = queue.pop_front() {
            let cls = class_at[&s];
            if s == e {
                found = Some(cls);
                break;
            }
            let steps = prime_maps
                .iter()
                .map(|(&p, map)| ((s * p) % o, map[cls]))
                .chain(std::iter::once(((o - s) % o, inverse_map[cls])));
            for (t, img) in steps {
                if let std::collections::hash_map::Entry::Vacant(v) = class_at.entry(t) {
                    v.insert(img);
                    queue.push_back(t);
                }
            }
        }
        out.push(found?);
    }
    Some(out)
}

/// Enumerates the conjugacy classes of `group`.
///
/// Errors when `|G|` exceeds `threshold`.
pub fn conjugacy_classes(group: &Group, threshold: u64) -> Result<ConjugacyClasses> {
    let order = group.order();
    if *order > threshold.into() {
        return Err(Error::ThresholdExceeded {
            order: order.to_string(),
            threshold,
        });
    }
    let order = group.order_u64();
    let degree = group.degree();
    let gens = group.generators();

    struct Raw {
        min: Permutation,
        size: u64,
        order: u64,
    }

    let mut map: FxHashMap<ElementKey, u32> = FxHashMap::default();
    map.reserve(order as usize);
    let mut raw: Vec<Raw> = Vec::new();
    group.for_each_element(|g| {
        if map.contains_key(&g.key()) {
            return;
        }
        let id = raw.len() as u32;
        let mut min = g.clone();
        let mut size = 1u64;
        map.insert(g.key(), id);
        let mut queue = vec![g.clone()];
        while let Some(x) = queue.pop() {
            for s in gens {
                let y = x.conjugate_by(s);
                let key = y.key();
                if let std::collections::hash_map::Entry::Vacant(v) = map.entry(key) {
                    v.insert(id);
                    size += 1;
                    if y < min {
                        min = y.clone();
                    }
                    queue.push(y);
                }
            }
        }
        raw.push(Raw {
            order: g.order(),
            min,
            size,
        });
    });

    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by(|&a, &b| {
        (raw[a].order, raw[a].size, &raw[a].min).cmp(&(raw[b].order, raw[b].size, &raw[b].min))
    });
    let mut new_id = vec![0u32; raw.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_id[old] = new as u32;
    }
    for v in map.values_mut() {
        *v = new_id[*v as usize];
    }
    let reps: Vec<Permutation> = perm.iter().map(|&i| raw[i].min.clone()).collect();
    let sizes: Vec<u64> = perm.iter().map(|&i| raw[i].size).collect();
    let orders: Vec<u64> = perm.iter().map(|&i| raw[i].order).collect();
    let lookup = ClassLookup { degree, map };

    let inverse_map: Vec<usize> = reps
        .iter()
        .map(|r| lookup.class_of(&r.inverse()).expect("closed under inverses"))
        .collect();
    let max_order = orders.iter().copied().max().unwrap_or(1);
    let mut primes: Vec<u64> = primes_up_to(max_order);
    for p in small_primes_dividing(order) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    let power_maps = primes
        .into_iter()
        .map(|p| {
            let map = reps
                .iter()
                .map(|r| lookup.class_of(&r.pow(p as i64)).expect("closed under powers"))
                .collect();
            (p, map)
        })
        .collect();

    Ok(ConjugacyClasses {
        group_order: order,
        reps,
        sizes,
        orders,
        inverse_map,
        power_maps,
        lookup: Some(Arc::new(lookup)),
    })
}

impl ConjugacyClasses {
    /// Class metadata without an element index (used for matched tables).
    pub fn from_parts(
        group_order: u64,
        reps: Vec<Permutation>,
        sizes: Vec<u64>,
        orders: Vec<u64>,
        inverse_map: Vec<usize>,
        power_maps: BTreeMap<u64, Vec<usize>>,
    ) -> Self {
        ConjugacyClasses {
            group_order,
            reps,
            sizes,
            orders,
            inverse_map,
            power_maps,
            lookup: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::build(
            vec![
                Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            3,
        )
        .unwrap()
    }

    #[test]
    fn s3_classes() {
        let c = conjugacy_classes(&s3(), DEFAULT_THRESHOLD).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.sizes(), &[1, 3, 2]);
        assert_eq!(c.orders(), &[1, 2, 3]);
        assert!(c.reps()[0].is_identity());
    }

    #[test]
    fn s3_square_map() {
        let c = conjugacy_classes(&s3(), DEFAULT_THRESHOLD).unwrap();
        assert_eq!(c.power_map(2), vec![0, 0, 2]);
        assert_eq!(c.power_map(1), vec![0, 1, 2]);
        assert_eq!(c.power_map(-1)[0], 0);
        assert_eq!(c.power_maps()[&2], vec![0, 0, 2]);
    }

    #[test]
    fn trivial_group_has_one_class() {
        let c = conjugacy_classes(&Group::trivial(4), DEFAULT_THRESHOLD).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.sizes(), &[1]);
    }

    #[test]
    fn threshold_is_enforced() {
        let err = conjugacy_classes(&s3(), 5).err().unwrap();
        assert!(matches!(err, Error::ThresholdExceeded { .. }));
    }

    #[test]
    fn composed_power_maps_agree_with_lookup() {
        // C5 x S3 style group: (0..4 cycle) and S3 on 5,6,7.
        let g = Group::build(
            vec![
                Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(8, &[&[5, 6]]).unwrap(),
                Permutation::from_cycles(8, &[&[5, 6, 7]]).unwrap(),
            ],
            8,
        )
        .unwrap();
        let c = conjugacy_classes(&g, DEFAULT_THRESHOLD).unwrap();
        for k in [-7i64, -3, -1, 0, 2, 3, 4, 7, 9, 11, 13, 29] {
            let direct = c.power_map(k);
            let composed = compose_power_map(c.orders(), c.power_maps(), c.inverse_map(), k).unwrap();
            assert_eq!(direct, composed, "k = {k}");
        }
    }
}
