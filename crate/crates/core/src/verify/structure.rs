//! Checks on a group's classes and table that are not tied to a single
//! permutation character, and the worked examples about particular groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashSet;
use serde_json::json;

use super::checks::PairData;
use super::Report;
use crate::arith::factorize;
use crate::charfun::{decompose, induce, inner_product};
use crate::context::TableContext;
use crate::corpus::linear::LinearGroup;
use crate::cyclo::{CycloSum, Cyclotomic};
use crate::error::{Error, Result};
use crate::perm::subgroups::subgroup_conjugates;
use crate::perm::{conjugacy_classes, sylow_2, CosetAction, Group, Permutation};
use crate::table::class_names;

/// Checks that these are equivalent: `P` normal, no nontrivial real
/// elements of odd order, and every real element of odd order normalizing
/// a conjugate of `P`. Also checks that a nontrivial real
/// element of odd order normalizes an even number of Sylow 2-subgroups,
/// counted both directly and as a permutation character value.
pub fn check_theorem_d(ctx: &TableContext, seed: u64) -> Result<Report> {
    ctx.classes()?;
    let g = &ctx.group;
    let t = &ctx.table;
    let names = t.class_names();
    let p = sylow_2(g, seed);
    let conj = subgroup_conjugates(g, &p);
    let n = conj.stabilizer.clone();
    let on_sylows = CosetAction::new(g, &n)?;
    let odd_real: Vec<usize> = (1..t.num_classes())
        .filter(|&c| t.orders()[c] % 2 == 1 && t.inverse_map()[c] == c)
        .collect();
    let mut all_normalize = true;
    let mut parity_ok = true;
    let mut per_class = Vec::new();
    for &c in &odd_real {
        let x = &ctx.reps[c];
        let count = conj
            .transversal
            .iter()
            .filter(|t| n.contains(&x.conjugate_by(&t.inverse())))
            .count();
        let value = on_sylows.fixed_cosets(x);
        all_normalize &= count > 0;
        parity_ok &= count % 2 == 0 && count == value;
        per_class.push(json!({ "class": names[c], "Sylow 2-subgroups normalized": count, "character value": value }));
    }
    let normal = conj.orbit.len() == 1;
    let none_real = odd_real.is_empty();
    let mut r = Report::new("theorem-d", &ctx.name, None);
    r.conclude("Sylow 2-subgroup normal", normal)
        .conclude("no nontrivial real element of odd order", none_real)
        .conclude("every real element of odd order normalizes a Sylow 2-subgroup", all_normalize)
        .conclude("normalized Sylow counts even", parity_ok)
        .witness(json!({ "Sylow 2-subgroups": conj.orbit.len(), "P order": p.order_u64(), "N(P) order": n.order_u64() }))
        .witness(json!({ "real classes of odd order": per_class }))
        .witness(json!({ "note": "the equivalent condition on 2-Brauer characters is not checked" }));
    let pass = normal == none_real && none_real == all_normalize && parity_ok;
    Ok(r.with_pass(pass))
}

/// A group of odd order has no nontrivial real-valued irreducible
/// characters; all nontrivial indicators are then 0.
pub fn check_burnside(ctx: &TableContext) -> Result<Report> {
    let t = &ctx.table;
    let real_rows: Vec<String> = (1..t.num_classes())
        .filter(|&i| t.is_row_real(i))
        .map(|i| t.character_names()[i].clone())
        .collect();
    let mut r = Report::new("burnside", &ctx.name, None);
    r.hypothesis("order odd", ctx.order() % 2 == 1)
        .conclude("no nontrivial real row", real_rows.is_empty())
        .conclude("nontrivial indicators zero", t.indicators()[1..].iter().all(|&v| v == 0))
        .witness(json!({ "nontrivial real rows": real_rows }));
    Ok(r.by_implication())
}

/// Compares the table's indicators with `|G|⁻¹ Σ_g χ(g²)` summed over every
/// element of the group.
pub fn check_indicator_oracle(ctx: &TableContext) -> Result<Report> {
    let classes = ctx.classes()?;
    let t = &ctx.table;
    let mut squares = vec![0u64; t.num_classes()];
    let mut missing = false;
    ctx.group.for_each_element(|g| match classes.class_of(&(g * g)) {
        Some(c) => squares[c] += 1,
        None => missing = true,
    });
    if missing {
        return Err(Error::ClassesNotEnumerated);
    }
    let order = BigRational::from_integer(BigInt::from(ctx.order()));
    let mut brute = Vec::new();
    for row in t.rows() {
        let mut s = CycloSum::new();
        for (v, &n) in row.iter().zip(&squares) {
            if n > 0 {
                s.add(&v.scale_int(n as i64));
            }
        }
        let total = s.total();
        brute.push(total.as_rational().map(|q| q / &order));
    }
    let agree = brute
        .iter()
        .zip(t.indicators())
        .all(|(b, &v)| b.as_ref() == Some(&BigRational::from_integer(BigInt::from(v))));
    let brute_text: Vec<String> = brute
        .iter()
        .map(|b| b.as_ref().map_or("irrational".to_string(), |q| q.to_string()))
        .collect();
    let mut r = Report::new("indicator-oracle", &ctx.name, None);
    r.conclude("indicators agree with element sum", agree)
        .witness(json!({ "from power maps": t.indicators(), "from elements": brute_text }));
    Ok(r.by_implication())
}

/// For the dihedral group of order 10 and `P` a Sylow 2-subgroup,
/// `(1_P)^G` has exactly one rational-valued constituent of odd
/// multiplicity but three real-valued ones.
pub fn check_d10_remark(ctx: &TableContext, seed: u64) -> Result<Report> {
    let p = sylow_2(&ctx.group, seed);
    let data = PairData::new(ctx, &p, "Sylow 2-subgroup")?;
    let odd_real = data.odd_real_rows();
    let odd_rational: Vec<usize> = odd_real
        .iter()
        .copied()
        .filter(|&i| ctx.table.is_row_rational(i))
        .collect();
    let mut r = Report::new("dihedral-10", &ctx.name, Some("Sylow 2-subgroup"));
    r.hypothesis("order 10", ctx.order() == 10)
        .conclude("exactly one rational constituent of odd multiplicity", odd_rational == [0])
        .conclude("exactly three real constituents of odd multiplicity", odd_real.len() == 3)
        .witness(json!({ "decomposition": data.dec.render() }));
    Ok(r.by_implication())
}

/// `AGL(1, q)` with `q = p^a`, `p ≡ 3 mod 4`, `a > 1` odd, and `H` of
/// order `2p`: the degree `q-1` character `θ` is rational and occurs with
/// even multiplicity `(p^{a-1}-1)/2`; the remaining constituents are the
/// `(q-1)/2` linear characters of `G/FH`, each once. There is no nontrivial
/// real constituent of odd multiplicity, although `[G:core_G(H)]` is even.
pub fn check_agl_multiplicity(p: &PairData, q: u64) -> Result<Report> {
    let t = &p.ctx.table;
    let f = factorize(q);
    let (prime, a) = (f[0].0, f[0].1);
    let theta = t
        .degrees()
        .iter()
        .position(|&d| d == q - 1)
        .ok_or_else(|| Error::InvalidSpec(format!("no character of degree {}", q - 1)))?;
    let m = p.dec.multiplicities[theta];
    let expected = (prime.pow(a - 1) - 1) / 2;
    let printed = (q.pow(a - 1) - 1) / 2;
    let linear_once = p
        .dec
        .constituents()
        .into_iter()
        .filter(|&(i, _)| i != theta)
        .all(|(i, mult)| t.degrees()[i] == 1 && mult == 1);
    let linear_count = p.dec.constituents().len() - usize::from(m > 0);
    let mut r = Report::new("agl-multiplicity", &p.ctx.name, Some(&p.label));
    r.hypothesis("q = p^a with p = 3 mod 4 and a > 1 odd", f.len() == 1 && prime % 4 == 3 && a > 1 && a % 2 == 1)
        .hypothesis("|H| = 2p", p.sub.order_u64() == 2 * prime)
        .conclude("theta multiplicity is (p^(a-1)-1)/2", m == expected)
        .conclude("theta multiplicity even", m % 2 == 0)
        .conclude("theta rational", t.is_row_rational(theta))
        .conclude("other constituents: linear characters of G/FH once each", linear_once && linear_count as u64 == (q - 1) / 2)
        .conclude("no nontrivial real constituent of odd multiplicity", !p.has_nontrivial_odd_real())
        .witness(json!({ "decomposition": p.dec.render(), "theta": p.dec.names[theta], "multiplicity": m }))
        .witness(json!({
            "(p^(a-1)-1)/2": expected,
            "(q^(a-1)-1)/2": printed,
            "note": "the multiplicity is (p^(a-1)-1)/2; the expression (q^(a-1)-1)/2 does not match it",
        }));
    Ok(r.by_implication())
}

/// Fusion of `H`-classes into `G`-classes.
fn fusion(ctx: &TableContext, sub: &TableContext) -> Result<Vec<usize>> {
    sub.reps.iter().map(|r| ctx.class_of(r)).collect()
}

/// For `[G:H]` odd: lists, for each real-valued `θ ∈ Irr(H)`, whether
/// `θ^G` has a real-valued constituent. The concluded flag records whether
/// some real `θ` of `+` type induces with no real constituent at all.
pub fn check_odd_index_induction(ctx: &TableContext, sub: &Group, label: &str, threshold: u64) -> Result<Report> {
    let h = TableContext::computed(label, sub.clone(), threshold)?;
    let fus = fusion(ctx, &h)?;
    let t = &ctx.table;
    let mut exhibits = false;
    let mut items = Vec::new();
    for (i, theta) in h.table.rows().iter().enumerate() {
        if !h.table.is_row_real(i) {
            continue;
        }
        let induced = induce(theta, h.table.sizes(), h.order(), &fus, t.sizes(), t.order());
        let dec = decompose(&induced, t)?;
        let real: Vec<String> = dec
            .constituents()
            .into_iter()
            .filter(|&(j, _)| t.is_row_real(j))
            .map(|(j, _)| dec.names[j].clone())
            .collect();
        if real.is_empty() && h.table.indicators()[i] == 1 {
            exhibits = true;
        }
        items.push(json!({
            "theta": h.table.character_names()[i],
            "indicator": h.table.indicators()[i],
            "induced": dec.render(),
            "real constituents": real,
        }));
    }
    let index = ctx.order() / h.order();
    let mut r = Report::new("odd-index-induction", &ctx.name, Some(label));
    r.hypothesis("index odd", index % 2 == 1)
        .conclude("some real theta of + type induces with no real constituent", exhibits)
        .witness(json!({ "index": index, "real characters of H": items }));
    Ok(r.with_pass(true))
}

/// Conjugation orbit of `x` under `N`.
fn conjugation_orbit(n: &Group, x: &Permutation) -> FxHashSet<crate::perm::ElementKey> {
    let mut seen = FxHashSet::default();
    seen.insert(x.key());
    let mut stack = vec![x.clone()];
    while let Some(y) = stack.pop() {
        for s in n.generators() {
            let z = y.conjugate_by(s);
            if seen.insert(z.key()) {
                stack.push(z);
            }
        }
    }
    seen
}

/// For `N` normal and `x ∈ N` real in `G`: if `[G : N C_G(x)]` is odd then
/// `x` is real in `N`. The index equals the number of `N`-classes that
/// `x^G` splits into.
pub fn check_normal_reality(ctx: &TableContext, n: &Group, label: &str) -> Result<Report> {
    let t = &ctx.table;
    let names = t.class_names();
    let mut holds = true;
    let mut items = Vec::new();
    for c in 0..t.num_classes() {
        let x = &ctx.reps[c];
        if !n.contains(x) {
            continue;
        }
        let real_g = t.inverse_map()[c] == c;
        let orbit = conjugation_orbit(n, x);
        let m = t.sizes()[c] / orbit.len() as u64;
        let real_n = orbit.contains(&x.inverse().key());
        if real_g && m % 2 == 1 && !real_n {
            holds = false;
        }
        items.push(json!({ "class": names[c], "real in G": real_g, "index": m, "real in N": real_n }));
    }
    let mut r = Report::new("normal-reality", &ctx.name, Some(label));
    r.hypothesis("N normal", n.is_normal_in(&ctx.group))
        .conclude("odd index and real in G imply real in N", holds)
        .witness(json!({ "classes in N": items }));
    Ok(r.by_implication())
}

/// In `SL(n, q)`, a unipotent element is real when `q` is even or it has a
/// Jordan block of odd size. For `n = 2` and `q ≡ 3 mod 4`, transvections
/// are not real.
pub fn check_unipotent_reality(n: usize, q: u32, threshold: u64) -> Result<Report> {
    let lg = LinearGroup::new(n, q, false)?;
    let classes = conjugacy_classes(&lg.group, threshold)?;
    let p = lg.field.characteristic() as u64;
    let names = class_names(classes.orders());
    let mut holds = true;
    let mut transvections_real = Vec::new();
    let mut items = Vec::new();
    for (c, rep) in classes.reps().iter().enumerate() {
        let o = classes.orders()[c];
        if o == 1 || factorize(o).iter().any(|&(r, _)| r != p) {
            continue;
        }
        let blocks = lg.unipotent_blocks(&lg.matrix_of(rep)?);
        let hyp = q % 2 == 0 || blocks.iter().any(|b| b % 2 == 1);
        let real = classes.inverse_map()[c] == c;
        if hyp && !real {
            holds = false;
        }
        if blocks == [2] {
            transvections_real.push(real);
        }
        items.push(json!({ "class": names[c], "blocks": blocks, "real": real }));
    }
    let mut r = Report::new("unipotent-reality", &format!("sl:{n}:{q}"), None);
    r.conclude("q even or an odd block implies real", holds)
        .witness(json!({ "unipotent classes": items }));
    if n == 2 && q % 4 == 3 {
        r.conclude("transvections not real", transvections_real.iter().all(|&x| !x));
    }
    Ok(r.by_implication())
}

/// For `N` normal with `G/N` of odd order, the constituents of `χ_N` are
/// real for real `χ ∈ Irr(G)`, and each real `θ ∈ Irr(N)` lies under
/// exactly one real `χ ∈ Irr(G)`.
pub fn check_odd_quotient_reality(ctx: &TableContext, n: &Group, label: &str, threshold: u64) -> Result<Report> {
    let nctx = TableContext::computed(label, n.clone(), threshold)?;
    let fus = fusion(ctx, &nctx)?;
    let (t, tn) = (&ctx.table, &nctx.table);
    let restrictions: Vec<Vec<Cyclotomic>> = t
        .rows()
        .iter()
        .map(|row| fus.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let mut restricts_real = true;
    for (i, res) in restrictions.iter().enumerate() {
        if t.is_row_real(i) {
            let dec = decompose(res, tn)?;
            restricts_real &= dec.constituents().iter().all(|&(j, _)| tn.is_row_real(j));
        }
    }
    let mut unique_over = true;
    let mut items = Vec::new();
    for (j, theta) in tn.rows().iter().enumerate() {
        if !tn.is_row_real(j) {
            continue;
        }
        let over: Vec<String> = restrictions
            .iter()
            .enumerate()
            .filter(|&(i, res)| {
                t.is_row_real(i) && !inner_product(res, theta, tn.sizes(), tn.order()).map_or(true, |v| v.is_zero())
            })
            .map(|(i, _)| t.character_names()[i].clone())
            .collect();
        unique_over &= over.len() == 1;
        items.push(json!({ "theta": tn.character_names()[j], "real characters over theta": over }));
    }
    let mut r = Report::new("odd-quotient-reality", &ctx.name, Some(label));
    r.hypothesis("N normal", n.is_normal_in(&ctx.group))
        .hypothesis("G/N odd", (ctx.order() / nctx.order()) % 2 == 1)
        .conclude("real characters restrict to real constituents", restricts_real)
        .conclude("unique real character over each real theta", unique_over)
        .witness(json!({ "real characters of N": items }));
    Ok(r.by_implication())
}
