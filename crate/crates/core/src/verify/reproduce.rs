//! Permutation characters of Mathieu groups on cosets of large subgroups,
//! compared with their known decompositions.

use std::path::Path;

use serde_json::json;

use super::Report;
use crate::context::TableContext;
use crate::corpus::{construct, Family};
use crate::error::Result;

/// A subgroup selector of a bundled group with the expected index and
/// decomposition of its permutation character.
#[derive(Clone, Copy, Debug)]
pub struct KnownDecomposition {
    pub group: &'static str,
    pub selector: &'static str,
    pub subgroup: &'static str,
    pub index: u64,
    pub decomposition: &'static str,
}

pub const KNOWN_DECOMPOSITIONS: &[KnownDecomposition] = &[
    KnownDecomposition { group: "m22", selector: "hexad", subgroup: "2^4:A6", index: 77, decomposition: "1a+21a+55a" },
    KnownDecomposition { group: "m22", selector: "duad", subgroup: "2^4:S5", index: 231, decomposition: "1a+21a+55a+154a" },
    KnownDecomposition { group: "m23", selector: "point", subgroup: "M22", index: 23, decomposition: "1a+22a" },
    KnownDecomposition { group: "m23", selector: "duad", subgroup: "L3(4).2", index: 253, decomposition: "1a+22a+230a" },
    KnownDecomposition { group: "m23", selector: "heptad", subgroup: "2^4:A7", index: 253, decomposition: "1a+22a+230a" },
    KnownDecomposition { group: "m23", selector: "triad", subgroup: "2^4:(3xA5).2", index: 1771, decomposition: "1a+22a+230aa+253a+1035a" },
    KnownDecomposition { group: "m11", selector: "s5", subgroup: "S5", index: 66, decomposition: "1a+10a+11a+44a" },
];

/// Builds each bundled action, computes its permutation character at the
/// matched class representatives, decomposes it against the bundled table
/// and compares the rendering and index exactly. `groups` restricts the
/// run to the named groups when non-empty.
pub fn reproduce(data_dir: &Path, seed: u64, groups: &[&str]) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let mut current: Option<(&str, TableContext, crate::corpus::NamedGroup)> = None;
    for item in KNOWN_DECOMPOSITIONS {
        if !groups.is_empty() && !groups.contains(&item.group) {
            continue;
        }
        if current.as_ref().map(|c| c.0) != Some(item.group) {
            let named = construct(&Family::Named(item.group.to_string()), data_dir)?;
            let ctx = TableContext::for_group(&named, data_dir, 0, seed)?;
            current = Some((item.group, ctx, named));
        }
        let (_, ctx, named) = current.as_ref().expect("context loaded");
        let sub = named.subgroup(item.selector, seed)?;
        let (_, dec) = ctx.decompose_subgroup(&sub)?;
        let got = dec.render();
        let index = ctx.group.index_of(&sub);
        let mut r = Report::new("permutation-character", &ctx.name, Some(item.subgroup));
        r.conclude("decomposition matches", got == item.decomposition)
            .conclude("index matches", index == item.index)
            .witness(json!({
                "selector": item.selector,
                "decomposition": got,
                "expected": item.decomposition,
                "index": index,
                "expected index": item.index,
            }));
        out.push(r.by_implication());
    }
    Ok(out)
}
