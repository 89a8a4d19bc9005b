//! Checks on a single pair `(G, H)` via the permutation character
//! `(1_H)^G`.

use serde_json::json;

use super::Report;
use crate::charfun::{decompose, perm_character_of, ClassFunction, Decomposition};
use crate::context::TableContext;
use crate::error::Result;
use crate::perm::subgroups::is_primitive;
use crate::perm::{core, o_2prime, CosetAction, Group};

/// The permutation character of `H` and its decomposition, shared by the
/// pair checks.
pub struct PairData<'a> {
    pub ctx: &'a TableContext,
    pub sub: &'a Group,
    pub label: String,
    pub action: CosetAction,
    pub pi: ClassFunction,
    pub dec: Decomposition,
    pub index: u64,
}

impl<'a> PairData<'a> {
    pub fn new(ctx: &'a TableContext, sub: &'a Group, label: &str) -> Result<PairData<'a>> {
        let action = CosetAction::new(&ctx.group, sub)?;
        let pi = perm_character_of(&action, &ctx.reps);
        let dec = decompose(&pi, &ctx.table)?;
        Ok(PairData {
            ctx,
            sub,
            label: label.to_string(),
            index: action.degree() as u64,
            action,
            pi,
            dec,
        })
    }

    fn report(&self, statement: &str) -> Report {
        Report::new(statement, &self.ctx.name, Some(&self.label))
    }

    /// Rows that are real-valued and occur with odd multiplicity.
    pub fn odd_real_rows(&self) -> Vec<usize> {
        self.dec
            .constituents()
            .into_iter()
            .filter(|&(i, m)| m % 2 == 1 && self.ctx.table.is_row_real(i))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_nontrivial_odd_real(&self) -> bool {
        self.odd_real_rows().iter().any(|&i| i != 0)
    }

    fn constituent_witness(&self) -> serde_json::Value {
        let t = &self.ctx.table;
        let items: Vec<_> = self
            .dec
            .constituents()
            .into_iter()
            .map(|(i, m)| {
                json!({
                    "constituent": self.dec.names[i],
                    "multiplicity": m,
                    "indicator": t.indicators()[i],
                    "real": t.is_row_real(i),
                    "rational": t.is_row_rational(i),
                })
            })
            .collect();
        json!({ "decomposition": self.dec.render(), "index": self.index, "constituents": items })
    }

    fn pi_value(&self, c: usize) -> u64 {
        self.pi[c].as_i64().expect("permutation character values are integers") as u64
    }
}

/// A unique real-valued constituent of `+` type exists exactly when
/// `[G : core_G(H)]` is odd.
pub fn check_theorem_a(p: &PairData) -> Result<Report> {
    let t = &p.ctx.table;
    let plus: Vec<usize> = p
        .dec
        .constituents()
        .into_iter()
        .filter(|&(i, _)| t.indicators()[i] == 1)
        .map(|(i, _)| i)
        .collect();
    let core = core(&p.ctx.group, p.sub)?;
    let core_index = p.ctx.order() / core.order_u64();
    let unique = plus.len() == 1;
    let odd = core_index % 2 == 1;
    let mut r = p.report("theorem-a");
    r.conclude("unique + type constituent", unique)
        .conclude("core index odd", odd)
        .witness(p.constituent_witness())
        .witness(json!({ "core order": core.order_u64(), "core index": core_index }));
    Ok(r.with_pass(unique == odd))
}

/// If `G = O^{2'}(G) H` and `H` does not contain `O^{2'}(G)`, some
/// nontrivial real constituent has odd multiplicity.
pub fn check_theorem_b(p: &PairData, seed: u64) -> Result<Report> {
    let g = &p.ctx.group;
    let k = o_2prime(g, seed);
    let mut gens = k.generators().to_vec();
    gens.extend(p.sub.generators().iter().cloned());
    let kh = g.subgroup(gens)?;
    let mut r = p.report("theorem-b");
    r.hypothesis("H proper", p.index > 1)
        .hypothesis("O^2'(G) H = G", kh.order() == g.order())
        .hypothesis("H does not contain O^2'(G)", !k.is_subgroup_of(p.sub))
        .conclude("nontrivial real constituent of odd multiplicity", p.has_nontrivial_odd_real())
        .witness(p.constituent_witness())
        .witness(json!({ "O^2'(G) order": k.order_u64() }));
    Ok(r.by_implication())
}

/// If the trivial character is the only real constituent of odd
/// multiplicity, then `[G:H]` is odd and `H` meets every real class.
pub fn check_real_coverage(p: &PairData) -> Result<Report> {
    let t = &p.ctx.table;
    let real = t.real_classes();
    let names = t.class_names();
    let missed: Vec<&str> = real.iter().filter(|&&c| p.pi_value(c) == 0).map(|&c| names[c].as_str()).collect();
    let parities: Vec<_> = real
        .iter()
        .map(|&c| json!({ "class": names[c], "value": p.pi_value(c), "odd": p.pi_value(c) % 2 == 1 }))
        .collect();
    let mut r = p.report("real-coverage");
    r.hypothesis("1 is the only real constituent of odd multiplicity", p.odd_real_rows() == [0])
        .conclude("index odd", p.index % 2 == 1)
        .conclude("H meets every real class", missed.is_empty())
        .witness(json!({ "real classes missing H": missed }))
        .witness(json!({ "values at real classes": parities }));
    Ok(r.by_implication())
}

/// Real constituents of odd multiplicity have `+` type.
pub fn check_lemma_bob(p: &PairData) -> Result<Report> {
    let t = &p.ctx.table;
    let odd = p.odd_real_rows();
    let bad: Vec<&str> = odd
        .iter()
        .filter(|&&i| t.indicators()[i] != 1)
        .map(|&i| p.dec.names[i].as_str())
        .collect();
    let mut r = p.report("odd-multiplicity-type");
    r.hypothesis("has real constituents of odd multiplicity", !odd.is_empty())
        .conclude("all of + type", bad.is_empty())
        .witness(p.constituent_witness());
    if !bad.is_empty() {
        r.witness(json!({ "violations": bad }));
    }
    Ok(r.by_implication())
}

/// Each of five sufficient conditions forces a nontrivial real constituent
/// of odd multiplicity; the report passes when no condition holds without
/// the conclusion.
pub fn check_odd_multiplicity_hypotheses(p: &PairData, seed: u64) -> Result<Report> {
    let g = &p.ctx.group;
    let t = &p.ctx.table;
    let real = t.real_classes();
    let proper = p.index > 1;
    let core_index = g.order_u64() / core(g, p.sub)?.order_u64();
    let maximal = proper && is_primitive(p.action.image());
    let k = o_2prime(g, seed);
    let mut gens = k.generators().to_vec();
    gens.extend(p.sub.generators().iter().cloned());
    let kh_full = g.subgroup(gens)?.order() == g.order();
    let hyps = [
        ("index even", p.index % 2 == 0),
        ("some real class misses H", real.iter().any(|&c| p.pi_value(c) == 0)),
        ("even value at some real class", real.iter().any(|&c| p.pi_value(c) % 2 == 0)),
        ("H maximal with G/core even", maximal && core_index % 2 == 0),
        ("O^2'(G) H = G, H does not contain O^2'(G)", kh_full && !k.is_subgroup_of(p.sub)),
    ];
    let concl = p.has_nontrivial_odd_real();
    let mut r = p.report("odd-multiplicity-hypotheses");
    for (name, v) in hyps {
        r.hypothesis(name, v);
    }
    r.conclude("nontrivial real constituent of odd multiplicity", concl)
        .witness(p.constituent_witness());
    let pass = concl || hyps.iter().all(|&(_, v)| !v);
    Ok(r.with_pass(pass))
}
