//! A line-oriented text format for character tables, matching of tables up
//! to row and column permutation, and discovery of class representatives in
//! groups too large to enumerate.
//!
//! ```text
//! # leading comments are kept
//! name S3
//! order 6
//! classes 3
//! sizes 1 3 2
//! orders 1 2 3
//! power 2 1 1 3
//! power 3 1 2 1
//! chi 1 1 1
//! chi 1 -1 1
//! chi 2 0 -1
//! ```
//!
//! Power maps list 1-based class indices.

use std::collections::BTreeMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::arith::{divisors, factorize, primes_up_to};
use crate::charfun::decompose;
use crate::cyclo::{parse_cyclotomic, Cyclotomic};
use crate::error::{Error, Result};
use crate::perm::{ElementKey, Group, Permutation};
use crate::table::CharacterTable;

/// A parsed table file: the table and its leading comment lines.
#[derive(Clone, Debug)]
pub struct TableFile {
    pub comments: Vec<String>,
    pub table: CharacterTable,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_ints(toks: &[(usize, &str)], line: usize) -> Result<Vec<u64>> {
    toks.iter()
        .map(|&(col, t)| t.parse().map_err(|_| syntax(line, col, format!("expected an integer, found {t:?}"))))
        .collect()
}

pub fn parse_table_file(text: &str) -> Result<TableFile> {
    let mut comments = Vec::new();
    let mut in_header = true;
    let mut name = None;
    let mut order = None;
    let mut classes: Option<usize> = None;
    let mut sizes = None;
    let mut orders = None;
    let mut power_maps = BTreeMap::new();
    let mut rows = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if in_header {
                comments.push(raw.to_string());
            }
            continue;
        }
        in_header = false;
        let toks = tokens(raw);
        let (kcol, key) = toks[0];
        let args = &toks[1..];
        let need_k = |col: usize| classes.ok_or_else(|| syntax(line, col, "`classes` must precede class data"));
        let check_len = |n: usize, k: usize| {
            if n != k {
                Err(syntax(line, kcol, format!("expected {k} entries, found {n}")))
            } else {
                Ok(())
            }
        };
        match key {
            "name" => {
                let rest = raw.trim_start()[4..].trim();
                if rest.is_empty() {
                    return Err(syntax(line, kcol, "missing name"));
                }
                name = Some(rest.to_string());
            }
            "order" => {
                let v = parse_ints(args, line)?;
                check_len(v.len(), 1)?;
                order = Some(v[0]);
            }
            "classes" => {
                let v = parse_ints(args, line)?;
                check_len(v.len(), 1)?;
                classes = Some(v[0] as usize);
            }
            "sizes" | "orders" => {
                let k = need_k(kcol)?;
                let v = parse_ints(args, line)?;
                check_len(v.len(), k)?;
                if key == "sizes" {
                    sizes = Some(v);
                } else {
                    orders = Some(v);
                }
            }
            "power" => {
                let k = need_k(kcol)?;
                let v = parse_ints(args, line)?;
                check_len(v.len(), k + 1)?;
                let mut map = Vec::with_capacity(k);
                for (&(col, _), &c) in args[1..].iter().zip(&v[1..]) {
                    if c == 0 || c as usize > k {
                        return Err(syntax(line, col, format!("class index {c} out of range 1..{k}")));
                    }
                    map.push(c as usize - 1);
                }
                power_maps.insert(v[0], map);
            }
            "chi" => {
                let k = need_k(kcol)?;
                check_len(args.len(), k)?;
                let row = args
                    .iter()
                    .map(|&(col, t)| {
                        parse_cyclotomic(t).map_err(|e| match e {
                            Error::Parse { column, message, .. } => syntax(line, col + column - 1, message),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<Cyclotomic>>>()?;
                rows.push(row);
            }
            other => return Err(syntax(line, kcol, format!("unknown keyword {other:?}"))),
        }
    }
    let missing = |what: &str| syntax(last_line + 1, 1, format!("missing `{what}` line"));
    let table = CharacterTable::new(
        name.ok_or_else(|| missing("name"))?,
        order.ok_or_else(|| missing("order"))?,
        sizes.ok_or_else(|| missing("sizes"))?,
        orders.ok_or_else(|| missing("orders"))?,
        power_maps,
        rows,
    )?;
    Ok(TableFile { comments, table })
}

pub fn parse_table(text: &str) -> Result<CharacterTable> {
    parse_table_file(text).map(|f| f.table)
}

pub fn load_table(path: &Path) -> Result<TableFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table_file(&text)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn serialize_table(table: &CharacterTable, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("name {}\n", table.name()));
    out.push_str(&format!("order {}\n", table.order()));
    out.push_str(&format!("classes {}\n", table.num_classes()));
    out.push_str(&format!("sizes {}\n", join(table.sizes())));
    out.push_str(&format!("orders {}\n", join(table.orders())));
    for (p, map) in table.power_maps() {
        out.push_str(&format!("power {p} {}\n", join(map.iter().map(|c| c + 1))));
    }
    for row in table.rows() {
        out.push_str(&format!("chi {}\n", join(row)));
    }
    out
}

pub fn serialize_table_file(file: &TableFile) -> String {
    serialize_table(&file.table, &file.comments)
}

/// A bijection between two tables: `columns[j]` and `rows[i]` are the
/// column and row of `b` corresponding to column `j` and row `i` of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableIsomorphism {
    pub columns: Vec<usize>,
    pub rows: Vec<usize>,
}

/// Finds row and column permutations carrying `a` onto `b` exactly,
/// respecting class sizes, element orders and power maps.
pub fn match_tables(a: &CharacterTable, b: &CharacterTable) -> Option<TableIsomorphism> {
    let k = a.num_classes();
    if a.order() != b.order() || b.num_classes() != k {
        return None;
    }
    let column_profile = |t: &CharacterTable, c: usize| {
        let mut vals: Vec<String> = t.rows().iter().map(|r| r[c].to_string()).collect();
        vals.sort();
        (t.orders()[c], t.sizes()[c], vals)
    };
    let pa: Vec<_> = (0..k).map(|c| column_profile(a, c)).collect();
    let pb: Vec<_> = (0..k).map(|c| column_profile(b, c)).collect();
    let primes: Vec<u64> = a
        .power_maps()
        .keys()
        .filter(|p| b.power_maps().contains_key(p))
        .copied()
        .collect();
    let mut assign = vec![usize::MAX; k];
    let mut used = vec![false; k];
    let mut rows = None;
    search(a, b, &pa, &pb, &primes, 0, &mut assign, &mut used, &mut rows);
    rows.map(|rows| TableIsomorphism { columns: assign, rows })
}

#[allow(clippy::too_many_arguments)]
fn search<P: PartialEq>(
    a: &CharacterTable,
    b: &CharacterTable,
    pa: &[P],
    pb: &[P],
    primes: &[u64],
    j: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Option<Vec<usize>>,
) -> bool {
    let k = pa.len();
    if j == k {
        *found = match_rows(a, b, assign);
        return found.is_some();
    }
    for c in 0..k {
        if used[c] || pa[j] != pb[c] {
            continue;
        }
        assign[j] = c;
        let consistent = primes.iter().all(|p| {
            let (ma, mb) = (&a.power_maps()[p], &b.power_maps()[p]);
            (0..=j).all(|x| {
                let img = ma[x];
                img > j || mb[assign[x]] == assign[img]
            })
        });
        if consistent {
            used[c] = true;
            if search(a, b, pa, pb, primes, j + 1, assign, used, found) {
                return true;
            }
            used[c] = false;
        }
    }
    assign[j] = usize::MAX;
    false
}

fn match_rows(a: &CharacterTable, b: &CharacterTable, columns: &[usize]) -> Option<Vec<usize>> {
    let mut index: FxHashMap<Vec<&Cyclotomic>, usize> = FxHashMap::default();
    for (i, row) in b.rows().iter().enumerate() {
        index.insert(columns.iter().map(|&c| &row[c]).collect(), i);
    }
    a.rows()
        .iter()
        .map(|row| index.get(&row.iter().collect::<Vec<_>>()).copied())
        .collect()
}

/// Representatives for the columns of a table in a live group.
#[derive(Clone, Debug)]
pub struct ClassMatching {
    /// One representative per table column.
    pub reps: Vec<Permutation>,
    /// Columns grouped by the invariants that can be checked on elements.
    pub buckets: Vec<Vec<usize>>,
    /// Buckets with several columns: algebraically conjugate classes that
    /// the invariants cannot tell apart.
    pub ambiguity_groups: Vec<Vec<usize>>,
    /// Random elements drawn.
    pub samples: usize,
}

impl ClassMatching {
    /// The representatives with every ambiguity group rotated by one place,
    /// which is another admissible assignment.
    pub fn alternative_reps(&self) -> Vec<Permutation> {
        let mut reps = self.reps.clone();
        for group in &self.ambiguity_groups {
            for (i, &c) in group.iter().enumerate() {
                reps[c] = self.reps[group[(i + 1) % group.len()]].clone();
            }
        }
        reps
    }
}

pub fn default_budget(table: &CharacterTable) -> usize {
    10_000 * table.num_classes()
}

struct Buckets<'a> {
    table: &'a CharacterTable,
    of_column: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// `power[p][b]`: bucket containing the `p`-th powers of bucket `b`.
    power: BTreeMap<u64, Vec<usize>>,
}

impl<'a> Buckets<'a> {
    fn new(table: &'a CharacterTable) -> Buckets<'a> {
        let k = table.num_classes();
        let max_order = table.orders().iter().copied().max().unwrap_or(1);
        let maps: BTreeMap<u64, Vec<usize>> = primes_up_to(max_order)
            .into_iter()
            .filter_map(|p| table.power_map(p as i64).map(|m| (p, m)))
            .collect();
        let mut of_column = canonical(&(0..k).map(|c| (table.orders()[c], table.sizes()[c])).collect::<Vec<_>>());
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..k)
                .map(|c| (of_column[c], maps.values().map(|m| of_column[m[c]]).collect()))
                .collect();
            let next = canonical(&keys);
            let done = next.iter().max() == of_column.iter().max();
            of_column = next;
            if done {
                break;
            }
        }
        let n = of_column.iter().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); n];
        for (c, &b) in of_column.iter().enumerate() {
            members[b].push(c);
        }
        let power = maps
            .iter()
            .map(|(&p, m)| (p, members.iter().map(|cols| of_column[m[cols[0]]]).collect()))
            .collect();
        Buckets {
            table,
            of_column,
            members,
            power,
        }
    }

    fn order(&self, b: usize) -> u64 {
        self.table.orders()[self.members[b][0]]
    }

    fn size(&self, b: usize) -> u64 {
        self.table.sizes()[self.members[b][0]]
    }

    /// The bucket of an element, if its order, the buckets of its prime
    /// powers and, where still needed, its class size single one out.
    fn classify(&self, group: &Group, g: &Permutation) -> Option<usize> {
        let o = g.order();
        let mut cands: Vec<usize> = (0..self.members.len()).filter(|&b| self.order(b) == o).collect();
        if o > 1 {
            for (p, _) in factorize(o) {
                let hb = self.classify(group, &g.pow(p as i64))?;
                let map = self.power.get(&p)?;
                cands.retain(|&b| map[b] == hb);
            }
        }
        if cands.len() > 1 {
            let sizes: FxHashSet<u64> = cands.iter().map(|&b| self.size(b)).collect();
            if sizes.len() > 1 {
                let cap = sizes.iter().copied().max().unwrap_or(0);
                let size = class_size(group, g, cap);
                cands.retain(|&b| Some(self.size(b)) == size);
            }
        }
        (cands.len() == 1).then(|| cands[0])
    }
}

/// Relabels keys by order of first appearance.
fn canonical<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: FxHashMap<K, usize> = FxHashMap::default();
    keys.iter()
        .map(|k| {
            let n = ids.len();
            *ids.entry(k.clone()).or_insert(n)
        })
        .collect()
}

/// Size of the conjugacy class of `g`, or `None` once it exceeds `cap`.
fn class_size(group: &Group, g: &Permutation, cap: u64) -> Option<u64> {
    let mut seen = FxHashSet::default();
    seen.insert(g.key());
    let mut queue = vec![g.clone()];
    while let Some(x) = queue.pop() {
        for s in group.generators() {
            let y = x.conjugate_by(s);
            if seen.insert(y.key()) {
                if seen.len() as u64 > cap {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len() as u64)
}

/// Finds a representative in `group` for every column of `table` by
/// seeded random sampling, using the group's own permutation action as the
/// reference action.
///
/// Elements are sorted into buckets of columns by element order, the
/// buckets of their prime powers and, where needed, class size. Within a
/// bucket, algebraically conjugate columns get powers of one sampled
/// element. A bucket holding several Galois orbits of columns gets one
/// element per orbit, pairwise not algebraically conjugate, and is accepted
/// only when the table has automorphisms interchanging those orbits, so the
/// arbitrary assignment is as good as any. The result is checked against
/// fixed-point counts of powers, and the fixed-point character must
/// decompose into the table with nonnegative integer multiplicities.
pub fn find_representatives(
    group: &Group,
    table: &CharacterTable,
    seed: u64,
    budget: usize,
) -> Result<ClassMatching> {
    if group.order_u64() != table.order() {
        return Err(Error::Matching(format!(
            "group order {} differs from table order {}",
            group.order_u64(),
            table.order()
        )));
    }
    let buckets = Buckets::new(table);
    let nb = buckets.members.len();
    let orbits: Vec<Vec<Vec<usize>>> = buckets.members.iter().map(|cols| galois_orbits(table, cols)).collect();
    for (b, orbs) in orbits.iter().enumerate() {
        if orbs.len() > 1 {
            check_interchangeable(table, orbs)?;
            if buckets.size(b) * buckets.order(b) > MAX_SEPARATION {
                let names = table.class_names();
                return Err(Error::Matching(format!(
                    "classes {} are too large to tell apart by conjugation",
                    orbs.iter().map(|o| names[o[0]].as_str()).collect::<Vec<_>>().join(", ")
                )));
            }
        }
    }
    // Per bucket: one element for each Galois orbit of columns, with the
    // elements of its algebraic class when the bucket has several orbits.
    let mut found: Vec<Vec<(Permutation, FxHashSet<ElementKey>)>> = vec![Vec::new(); nb];
    found[buckets.of_column[0]].push((group.identity(), FxHashSet::default()));
    let mut filled = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    while filled < nb {
        if samples >= budget {
            let empty: Vec<String> = (0..nb)
                .filter(|&b| found[b].len() < orbits[b].len())
                .map(|b| table.class_names()[buckets.members[b][0]].clone())
                .collect();
            return Err(Error::Matching(format!(
                "no element found for classes {} after {samples} samples",
                empty.join(", ")
            )));
        }
        samples += 1;
        let g = group.random_element(&mut rng);
        for d in divisors(g.order()) {
            let h = g.pow(d as i64);
            let Some(b) = buckets.classify(group, &h) else { continue };
            let want = orbits[b].len();
            if found[b].len() == want || found[b].iter().any(|(_, seen)| seen.contains(&h.key())) {
                continue;
            }
            let class = if want > 1 { algebraic_class(group, &h) } else { FxHashSet::default() };
            found[b].push((h, class));
            if found[b].len() == want {
                filled += 1;
            }
        }
    }

    let mut reps = vec![group.identity(); table.num_classes()];
    let mut ambiguity_groups = Vec::new();
    for (b, cols) in buckets.members.iter().enumerate() {
        for (orbit, (rep, _)) in orbits[b].iter().zip(&found[b]) {
            for &c in orbit {
                let k = conjugating_power(table, orbit[0], c).expect("orbit members are conjugate");
                reps[c] = rep.pow(k as i64);
            }
        }
        if cols.len() > 1 {
            ambiguity_groups.push(cols.clone());
        }
    }
    check_fixed_points(table, &reps)?;
    Ok(ClassMatching {
        reps,
        buckets: buckets.members,
        ambiguity_groups,
        samples,
    })
}

/// Largest algebraic class enumerated to separate interchangeable classes.
const MAX_SEPARATION: u64 = 2_000_000;

/// Splits columns into orbits under `c ↦ c^k`, `k` prime to the order.
fn galois_orbits(table: &CharacterTable, cols: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &c in cols {
        match out.iter_mut().find(|o| conjugating_power(table, o[0], c).is_some()) {
            Some(o) => o.push(c),
            None => out.push(vec![c]),
        }
    }
    out
}

/// Every element conjugate to a generator of `⟨g⟩`.
fn algebraic_class(group: &Group, g: &Permutation) -> FxHashSet<ElementKey> {
    let o = g.order();
    let mut seen = FxHashSet::default();
    for k in (1..=o).filter(|&k| num_integer::gcd(k, o) == 1) {
        let start = g.pow(k as i64);
        if !seen.insert(start.key()) {
            continue;
        }
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for s in group.generators() {
                let y = x.conjugate_by(s);
                if seen.insert(y.key()) {
                    queue.push(y);
                }
            }
        }
    }
    seen
}

/// Requires, for every two Galois orbits in a bucket, a table automorphism
/// swapping them: the column permutation exchanging `a^k` and `b^k` for
/// the orbit leaders `a`, `b` must carry the rows onto themselves.
fn check_interchangeable(table: &CharacterTable, orbits: &[Vec<usize>]) -> Result<()> {
    let rows: FxHashSet<&Vec<Cyclotomic>> = table.rows().iter().collect();
    for (i, a) in orbits.iter().enumerate() {
        for b in &orbits[i + 1..] {
            let mut perm: Vec<usize> = (0..table.num_classes()).collect();
            let o = table.orders()[a[0]];
            for k in (1..=o).filter(|&k| num_integer::gcd(k, o) == 1) {
                let m = table.power_map(k as i64).expect("powers prime to the order resolve");
                perm[m[a[0]]] = m[b[0]];
                perm[m[b[0]]] = m[a[0]];
            }
            let swapped = table.rows().iter().all(|row| {
                let moved: Vec<Cyclotomic> = perm.iter().map(|&c| row[c].clone()).collect();
                rows.contains(&moved)
            });
            if !swapped {
                let names = table.class_names();
                return Err(Error::Matching(format!(
                    "classes {} and {} are indistinguishable but not interchangeable",
                    names[a[0]], names[b[0]]
                )));
            }
        }
    }
    Ok(())
}

/// Smallest `k` prime to the element order with `from^k = to`.
fn conjugating_power(table: &CharacterTable, from: usize, to: usize) -> Option<u64> {
    let o = table.orders()[from];
    (1..=o.max(1))
        .filter(|&k| num_integer::gcd(k, o) == 1)
        .find(|&k| table.power_map(k as i64).map(|m| m[from]) == Some(to))
}

fn check_fixed_points(table: &CharacterTable, reps: &[Permutation]) -> Result<()> {
    let names = table.class_names();
    for (c, r) in reps.iter().enumerate() {
        for d in divisors(table.orders()[c]) {
            let img = table
                .power_map(d as i64)
                .ok_or_else(|| Error::Matching("table lacks power maps".into()))?[c];
            if r.pow(d as i64).fixed_points() != reps[img].fixed_points() {
                return Err(Error::Matching(format!(
                    "fixed points of the {d}-th power of {} disagree with {}",
                    names[c], names[img]
                )));
            }
        }
    }
    let pi: Vec<Cyclotomic> = reps.iter().map(|r| Cyclotomic::from_int(r.fixed_points() as i64)).collect();
    decompose(&pi, table).map_err(|e| Error::Matching(format!("fixed-point character does not decompose: {e}")))?;
    Ok(())
}
