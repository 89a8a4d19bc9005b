//! Seeded sweeps of the pair checks over corpus groups and sampled
//! subgroups.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::checks::{
    check_lemma_bob, check_odd_multiplicity_hypotheses, check_real_coverage, check_theorem_a, check_theorem_b,
    PairData,
};
use super::structure::{check_burnside, check_indicator_oracle, check_theorem_d};
use super::Report;
use crate::context::TableContext;
use crate::corpus::{construct, Family};
use crate::error::{Error, Result};
use crate::perm::subgroups::normalizer;
use crate::perm::{o_2prime, sylow_2, ElementKey, Group, Permutation};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    /// Groups above this order are skipped.
    pub max_order: u64,
    /// Randomly generated subgroups tried per group, before removing
    /// duplicates.
    pub random_subgroups: usize,
    /// Indicators are also checked by summing over elements up to this
    /// group order.
    pub oracle_max_order: u64,
    pub threshold: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0,
            max_order: 2000,
            random_subgroups: 24,
            oracle_max_order: 5000,
            threshold: crate::perm::DEFAULT_THRESHOLD,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub groups: usize,
    pub pairs: usize,
    pub reports: Vec<Report>,
}

impl SweepSummary {
    pub fn failures(&self) -> Vec<&Report> {
        self.reports.iter().filter(|r| !r.pass).collect()
    }

    /// Number of reports for a statement, and how many of them passed.
    pub fn tally(&self, statement: &str) -> (usize, usize) {
        let of: Vec<&Report> = self.reports.iter().filter(|r| r.statement == statement).collect();
        (of.len(), of.iter().filter(|r| r.pass).count())
    }
}

fn subgroup_key(h: &Group) -> Vec<ElementKey> {
    let mut keys: Vec<ElementKey> = h.elements().iter().map(Permutation::key).collect();
    keys.sort_unstable();
    keys
}

fn label(h: &Group) -> String {
    let gens: Vec<String> = h.generators().iter().map(Permutation::to_cycle_string).collect();
    format!("gens:{}", gens.join(";"))
}

/// Distinct subgroups: the trivial group, the whole group, a Sylow
/// 2-subgroup and its normalizer, `O^{2'}(G)`, the derived subgroup, then
/// cyclic and 2-generated subgroups of random elements. This samples the
/// subgroup lattice; it does not enumerate it.
pub fn sample_subgroups(group: &Group, seed: u64, random: usize) -> Result<Vec<(String, Group)>> {
    let p = sylow_2(group, seed);
    let mut candidates: Vec<(String, Group)> = vec![
        ("trivial".into(), Group::trivial(group.degree())),
        ("whole".into(), group.clone()),
        ("sylow2-normalizer".into(), normalizer(group, &p)),
        ("sylow2".into(), p),
        ("o2prime".into(), o_2prime(group, seed)),
        ("derived".into(), group.derived_subgroup()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let g = group.random_element(&mut rng);
        let gens = if i % 2 == 0 { vec![g] } else { vec![g, group.random_element(&mut rng)] };
        let h = group.subgroup(gens)?;
        candidates.push((label(&h), h));
    }
    let mut seen = FxHashSet::default();
    Ok(candidates
        .into_iter()
        .filter(|(_, h)| seen.insert(subgroup_key(h)))
        .collect())
}

fn run_group(family: &Family, data_dir: &Path, cfg: &SweepConfig, seed: u64) -> Result<(usize, Vec<Report>)> {
    let named = construct(family, data_dir)?;
    let ctx = TableContext::computed(&family.to_string(), named.group.clone(), cfg.threshold)?;
    let mut reports = vec![check_theorem_d(&ctx, seed)?, check_burnside(&ctx)?];
    if ctx.order() <= cfg.oracle_max_order {
        reports.push(check_indicator_oracle(&ctx)?);
    }
    let subs = sample_subgroups(&ctx.group, seed, cfg.random_subgroups)?;
    for (name, h) in &subs {
        let p = PairData::new(&ctx, h, name)?;
        reports.push(check_theorem_a(&p)?);
        reports.push(check_theorem_b(&p, seed)?);
        reports.push(check_real_coverage(&p)?);
        reports.push(check_lemma_bob(&p)?);
        reports.push(check_odd_multiplicity_hypotheses(&p, seed)?);
    }
    Ok((subs.len(), reports))
}

/// Runs every pair check on sampled subgroups of each family of order at
/// most `cfg.max_order`, plus the per-group checks. Output order follows
/// `families` regardless of the number of threads.
pub fn sweep(families: &[Family], data_dir: &Path, cfg: &SweepConfig) -> Result<SweepSummary> {
    let selected: Vec<&Family> = families
        .iter()
        .filter(|f| f.order_formula().is_some_and(|o| o <= cfg.max_order))
        .collect();
    let work = || {
        selected
            .par_iter()
            .enumerate()
            .map(|(i, f)| run_group(f, data_dir, cfg, cfg.seed.wrapping_add(i as u64)))
            .collect::<Result<Vec<_>>>()
    };
    let results = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut summary = SweepSummary {
        groups: selected.len(),
        ..Default::default()
    };
    for (pairs, reports) in results {
        summary.pairs += pairs;
        summary.reports.extend(reports);
    }
    Ok(summary)
}
