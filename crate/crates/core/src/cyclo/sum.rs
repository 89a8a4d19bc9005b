use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::Cyclotomic;

/// Accumulator for long sums of cyclotomics.
///
/// Terms are added coordinate-wise into one bucket per conductor, so only
/// the final [`CycloSum::total`] pays for lifting between fields.
#[derive(Default)]
pub struct CycloSum {
    buckets: FxHashMap<u64, Vec<BigRational>>,
}

impl CycloSum {
    pub fn new() -> Self {
        CycloSum::default()
    }

    pub fn add(&mut self, x: &Cyclotomic) {
        self.add_scaled(x, None);
    }

    /// Adds `q·x`.
    pub fn add_scaled(&mut self, x: &Cyclotomic, q: Option<&BigRational>) {
        if x.is_zero() {
            return;
        }
        let bucket = self
            .buckets
            .entry(x.conductor())
            .or_insert_with(|| vec![BigRational::zero(); x.coords().len()]);
        for (b, c) in bucket.iter_mut().zip(x.coords()) {
            if !c.is_zero() {
                match q {
                    Some(q) => *b += c * q,
                    None => *b += c,
                }
            }
        }
    }

    pub fn total(self) -> Cyclotomic {
        let mut keys: Vec<u64> = self.buckets.keys().copied().collect();
        keys.sort_unstable();
        let m = keys.iter().fold(1u64, |acc, k| acc.lcm(k));
        let mut buckets = self.buckets;
        let parts: Vec<Cyclotomic> = keys
            .into_iter()
            .map(|k| Cyclotomic::from_coords(k, buckets.remove(&k).expect("key present")))
            .collect();
        if parts.iter().all(|p| p.is_rational()) {
            let q = parts
                .iter()
                .fold(BigRational::zero(), |acc, p| acc + p.as_rational().expect("rational"));
            return Cyclotomic::from_rational(q);
        }
        let mut acc = vec![BigRational::zero(); super::field(m).phi];
        for p in parts {
            for (a, c) in acc.iter_mut().zip(p.lift(m)) {
                *a += c;
            }
        }
        Cyclotomic::from_coords(m, acc)
    }
}
