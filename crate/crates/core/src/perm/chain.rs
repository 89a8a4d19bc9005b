//! Stabilizer chains built by deterministic Schreier–Sims.

use num_bigint::BigUint;
use rand::Rng;

use super::permutation::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of a stabilizer chain: the base point, the strong generators
/// fixing all earlier base points, and a transversal for the basic orbit.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: u32,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `slot[p]` is the index into `orbit`/`reps` of point `p`, or `NOT_IN_ORBIT`.
    slot: Vec<u32>,
    /// `reps[i]` maps the base point to `orbit[i]`.
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        for &p in &self.orbit {
            self.slot[p as usize] = NOT_IN_ORBIT;
        }
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        let id = Permutation::identity(degree);
        self.slot[self.base_point as usize] = 0;
        self.orbit.push(self.base_point);
        self.inv_reps.push(id.clone());
        self.reps.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            for s in &self.generators {
                let gamma = s.apply(beta);
                if self.slot[gamma as usize] == NOT_IN_ORBIT {
                    let rep = &self.reps[head] * s;
                    self.slot[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    pub fn base_point(&self) -> u32 {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains_point(&self, p: u32) -> bool {
        self.slot[p as usize] != NOT_IN_ORBIT
    }

    /// Transversal element taking the base point to `p`.
    pub fn transversal(&self, p: u32) -> Option<&Permutation> {
        match self.slot[p as usize] {
            NOT_IN_ORBIT => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    pub fn transversal_reps(&self) -> &[Permutation] {
        &self.reps
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims. Points of `base_prefix` become the leading base
    /// points in the given order (even when their basic orbit is trivial).
    pub fn new(degree: usize, generators: &[Permutation], base_prefix: &[u32]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in base_prefix {
            if chain.levels.iter().all(|l| l.base_point != b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let moved = first_moved_point(g).expect("non-identity generator");
                chain.levels.push(Level::new(moved, degree));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.generators.push(g.clone());
                if g.apply(level.base_point) != level.base_point {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.recompute_orbit(degree);
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart = None;
            'search: for idx in 0..self.levels[li].orbit.len() {
                for s_idx in 0..self.levels[li].generators.len() {
                    let level = &self.levels[li];
                    let s = &level.generators[s_idx];
                    let gamma = s.apply(level.orbit[idx]);
                    let g_slot = level.slot[gamma as usize] as usize;
                    // u_beta · s · u_gamma⁻¹ fixes the base point of level li.
                    let schreier = &(&level.reps[idx] * s) * &level.inv_reps[g_slot];
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip_from(schreier, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let moved = first_moved_point(&h).expect("non-identity residue");
                            self.levels.push(Level::new(moved, self.degree));
                        }
                        for l in (li + 1)..=j {
                            self.levels[l].generators.push(h.clone());
                            self.levels[l].recompute_orbit(self.degree);
                        }
                        restart = Some(j);
                        break 'search;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` from level `start` down. Returns the residue and the index of
    /// the level at which sifting stopped (`levels.len()` if it passed all).
    fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base_point);
            if beta == level.base_point {
                continue;
            }
            let slot = level.slot[beta as usize];
            if slot == NOT_IN_ORBIT {
                return (g, l);
            }
            g = &g * &level.inv_reps[slot as usize];
        }
        (g, self.levels.len())
    }

    pub fn strip(&self, g: &Permutation) -> (Permutation, usize) {
        self.strip_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g);
        j == self.levels.len() && h.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let i = rng.gen_range(0..level.reps.len());
            g = &g * &level.reps[i];
        }
        g
    }

    /// Calls `f` on every group element exactly once, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
            return;
        }
        self.enumerate_rec(self.levels.len() - 1, &id, &mut f);
    }

    fn enumerate_rec<F: FnMut(&Permutation)>(&self, level: usize, prefix: &Permutation, f: &mut F) {
        for rep in &self.levels[level].reps {
            let g = prefix * rep;
            if level == 0 {
                f(&g);
            } else {
                self.enumerate_rec(level - 1, &g, f);
            }
        }
    }
}

fn first_moved_point(g: &Permutation) -> Option<u32> {
    g.images()
        .iter()
        .enumerate()
        .find(|(i, &im)| im != *i as u32)
        .map(|(i, _)| i as u32)
}
