//! Constructors for the groups and subgroups used throughout, plus the
//! bundled Mathieu data.

pub mod gf;
pub mod linear;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::io::{load_group_file, parse_cycles};
use crate::perm::subgroups::{normalizer, set_stabilizer};
use crate::perm::{o_2prime, sylow_2, Group, Permutation};
use gf::Gf;
use linear::LinearGroup;

/// A group family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(u32),
    /// Dihedral group of the given order.
    Dihedral(u32),
    /// Dicyclic group of the given order; generalized quaternion for powers of 2.
    Quaternion(u32),
    Sym(u32),
    Alt(u32),
    /// `AGL(1, q)` on the field.
    Agl1(u32),
    /// `C_p ⋊ C_k` for `k | p - 1`, acting on `p` points.
    Frobenius(u32, u32),
    Psl2(u32),
    Psl3(u32),
    /// `SL(n, q)` on nonzero vectors.
    Sl(u32, u32),
    /// `C3 ⋊ Q16` with `Q16` acting through a quotient of order 2.
    C3Q16,
    /// `A4 ⋊ C4` with `C4` acting through `S4 / A4`.
    A4C4,
    /// A group read from `data/groups/<name>.grp`.
    Named(String),
}

/// A family plus an optional subgroup selector, written `family/selector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: Family,
    pub subgroup: Option<String>,
}

fn num(s: &str, whole: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::InvalidSpec(format!("bad parameter {s:?} in {whole:?}")))
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let fam = match parts.as_slice() {
            ["sl23"] => Family::Sl(2, 3),
            ["c3_q16"] | ["c3q16"] => Family::C3Q16,
            ["a4c4"] | ["a4_c4"] => Family::A4C4,
            ["f21"] | ["c7c3"] => Family::Frobenius(7, 3),
            ["c13c3"] => Family::Frobenius(13, 3),
            ["d10"] => Family::Dihedral(10),
            ["cyclic", n] => Family::Cyclic(num(n, s)?),
            ["dihedral", n] => Family::Dihedral(num(n, s)?),
            ["quaternion", n] => Family::Quaternion(num(n, s)?),
            ["sym", n] => Family::Sym(num(n, s)?),
            ["alt", n] => Family::Alt(num(n, s)?),
            ["agl1", q] => Family::Agl1(num(q, s)?),
            ["frobenius", p, k] => Family::Frobenius(num(p, s)?, num(k, s)?),
            ["psl2", q] => Family::Psl2(num(q, s)?),
            ["psl3", q] => Family::Psl3(num(q, s)?),
            ["sl", n, q] => Family::Sl(num(n, s)?, num(q, s)?),
            [one] if one.len() > 1 && one[1..].chars().all(|c| c.is_ascii_digit()) => {
                let n = num(&one[1..], s)?;
                match &one[..1] {
                    "c" => Family::Cyclic(n),
                    "d" => Family::Dihedral(n),
                    "q" => Family::Quaternion(n),
                    "s" => Family::Sym(n),
                    "a" => Family::Alt(n),
                    "m" => Family::Named(one.to_string()),
                    _ => return Err(Error::InvalidSpec(format!("unknown group family {s:?}"))),
                }
            }
            [name] if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                Family::Named(name.to_string())
            }
            _ => return Err(Error::InvalidSpec(format!("unknown group family {s:?}"))),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "c{n}"),
            Family::Dihedral(n) => write!(f, "d{n}"),
            Family::Quaternion(n) => write!(f, "q{n}"),
            Family::Sym(n) => write!(f, "s{n}"),
            Family::Alt(n) => write!(f, "a{n}"),
            Family::Agl1(q) => write!(f, "agl1:{q}"),
            Family::Frobenius(p, k) => write!(f, "frobenius:{p}:{k}"),
            Family::Psl2(q) => write!(f, "psl2:{q}"),
            Family::Psl3(q) => write!(f, "psl3:{q}"),
            Family::Sl(2, 3) => write!(f, "sl23"),
            Family::Sl(n, q) => write!(f, "sl:{n}:{q}"),
            Family::C3Q16 => write!(f, "c3_q16"),
            Family::A4C4 => write!(f, "a4c4"),
            Family::Named(name) => write!(f, "{name}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let (fam, sub) = match s.split_once('/') {
            Some((a, b)) => (a, Some(b.to_string())),
            None => (s, None),
        };
        Ok(GroupSpec {
            family: fam.parse()?,
            subgroup: sub,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.subgroup {
            Some(s) => write!(f, "{}/{s}", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// The repository's `data` directory.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn cycle(points: impl IntoIterator<Item = u32>, degree: usize) -> Permutation {
    let pts: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[&pts]).expect("valid cycle")
}

fn from_fn(degree: usize, f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::from_images((0..degree as u32).map(f).collect()).expect("bijection")
}

fn affine(field: &Gf, mult: u32, add: u32) -> Permutation {
    from_fn(field.order() as usize, |x| field.add(field.mul(mult, x), add))
}

/// Right-regular action of the dicyclic group `⟨a, b | a^n, b² = a^{n/2},
/// a^b = a⁻¹⟩` of order `2n` on the points `a^i b^j ↦ i + n·j`.
fn dicyclic_generators(order: u32) -> (Permutation, Permutation) {
    let n = order / 2;
    let idx = |i: u32, j: u32| i % n + n * j;
    let a = from_fn(order as usize, |x| {
        let (i, j) = (x % n, x / n);
        if j == 0 {
            idx(i + 1, 0)
        } else {
            idx(i + n - 1, 1)
        }
    });
    let b = from_fn(order as usize, |x| {
        let (i, j) = (x % n, x / n);
        if j == 0 {
            idx(i, 1)
        } else {
            idx(i + n / 2, 0)
        }
    });
    (a, b)
}

fn shift(g: &Permutation, by: u32, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (x, &y) in g.images().iter().enumerate() {
        images[x + by as usize] = y + by;
    }
    Permutation::from_images(images).expect("bijection")
}

fn combine(a: &Permutation, b: &Permutation) -> Permutation {
    a * b
}

impl Family {
    /// Builds the group in its standard permutation representation.
    pub fn construct(&self, data_dir: &Path) -> Result<Group> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        let group = match *self {
            Family::Cyclic(n) => {
                if n == 0 {
                    return bad("cyclic group of order 0".into());
                }
                Group::build(vec![cycle(0..n, n as usize)], n as usize)?
            }
            Family::Dihedral(order) => {
                if order < 4 || order % 2 == 1 {
                    return bad(format!("dihedral order {order} must be even and at least 4"));
                }
                let m = order / 2;
                if m == 2 {
                    let gens = vec![
                        Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                        Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
                    ];
                    Group::build(gens, 4)?
                } else {
                    let r = cycle(0..m, m as usize);
                    let s = from_fn(m as usize, |x| (m - x) % m);
                    Group::build(vec![r, s], m as usize)?
                }
            }
            Family::Quaternion(order) => {
                if order < 8 || order % 4 != 0 {
                    return bad(format!("dicyclic order {order} must be a multiple of 4, at least 8"));
                }
                let (a, b) = dicyclic_generators(order);
                Group::build(vec![a, b], order as usize)?
            }
            Family::Sym(n) => {
                if n < 2 {
                    Group::trivial(1)
                } else {
                    Group::build(vec![cycle(0..n, n as usize), cycle(0..2, n as usize)], n as usize)?
                }
            }
            Family::Alt(n) => {
                if n < 3 {
                    Group::trivial(n.max(1) as usize)
                } else {
                    let long = if n % 2 == 1 { cycle(0..n, n as usize) } else { cycle(1..n, n as usize) };
                    Group::build(vec![cycle(0..3, n as usize), long], n as usize)?
                }
            }
            Family::Agl1(q) => {
                let f = Gf::new(q)?;
                let mut gens = vec![affine(&f, 1, 1)];
                if q > 2 {
                    gens.push(affine(&f, f.primitive(), 0));
                }
                Group::build(gens, q as usize)?
            }
            Family::Frobenius(p, k) => {
                if !crate::arith::is_prime(p as u64) || k == 0 || (p - 1) % k != 0 {
                    return bad(format!("frobenius:{p}:{k} needs a prime p and k dividing p-1"));
                }
                let f = Gf::new(p)?;
                let w = f.pow(f.primitive(), ((p - 1) / k) as u64);
                Group::build(vec![affine(&f, 1, 1), affine(&f, w, 0)], p as usize)?
            }
            Family::Psl2(q) => LinearGroup::new(2, q, true)?.group,
            Family::Psl3(q) => LinearGroup::new(3, q, true)?.group,
            Family::Sl(n, q) => LinearGroup::new(n as usize, q, false)?.group,
            Family::C3Q16 => {
                let degree = 19;
                let c = cycle(0..3, degree);
                let (a, b) = dicyclic_generators(16);
                let a = shift(&a, 3, degree);
                let b = combine(&shift(&b, 3, degree), &cycle(1..3, degree));
                Group::build(vec![c, a, b], degree)?
            }
            Family::A4C4 => {
                let gens = vec![
                    Permutation::from_cycles(8, &[&[0, 1, 2]])?,
                    Permutation::from_cycles(8, &[&[0, 1], &[2, 3]])?,
                    Permutation::from_cycles(8, &[&[0, 1], &[4, 5, 6, 7]])?,
                ];
                Group::build(gens, 8)?
            }
            Family::Named(ref name) => load_group_file(&data_dir.join("groups").join(format!("{name}.grp")))?,
        };
        if let Some(expected) = self.order_formula() {
            if group.order_u64() != expected {
                return Err(Error::OrderMismatch {
                    name: self.to_string(),
                    expected: expected.to_string(),
                    actual: group.order_u64().to_string(),
                });
            }
        }
        Ok(group)
    }

    /// Closed-form order, where the family has one.
    pub fn order_formula(&self) -> Option<u64> {
        let factorial = |n: u64| (1..=n).product::<u64>();
        let gl = |n: u32, q: u64| (0..n).map(|i| q.pow(n) - q.pow(i)).product::<u64>();
        Some(match *self {
            Family::Cyclic(n) => n as u64,
            Family::Dihedral(n) | Family::Quaternion(n) => n as u64,
            Family::Sym(n) => factorial(n as u64),
            Family::Alt(n) => (factorial(n as u64) / 2).max(1),
            Family::Agl1(q) => q as u64 * (q as u64 - 1),
            Family::Frobenius(p, k) => (p * k) as u64,
            Family::Psl2(q) => {
                let q = q as u64;
                q * (q * q - 1) / num_integer::gcd(2, q - 1)
            }
            Family::Psl3(q) => {
                let q = q as u64;
                q.pow(3) * (q.pow(3) - 1) * (q * q - 1) / num_integer::gcd(3, q - 1)
            }
            Family::Sl(n, q) => gl(n, q as u64) / (q as u64 - 1),
            Family::C3Q16 | Family::A4C4 => 48,
            Family::Named(_) => return None,
        })
    }
}

/// A constructed group together with the family it came from.
pub struct NamedGroup {
    pub family: Family,
    pub group: Group,
}

pub fn construct(family: &Family, data_dir: &Path) -> Result<NamedGroup> {
    Ok(NamedGroup {
        family: family.clone(),
        group: family.construct(data_dir)?,
    })
}

/// Stabilizer of `set`, and the single orbit of size `size` of that
/// stabilizer outside `set`.
fn completing_orbit(group: &Group, set: &[u32], size: usize) -> Result<Vec<u32>> {
    let stab = set_stabilizer(group, set);
    let mut found: Vec<Vec<u32>> = stab
        .orbits()
        .into_iter()
        .filter(|o| o.len() == size && !set.contains(&o[0]))
        .collect();
    if found.len() != 1 {
        return Err(Error::InvalidSpec(format!(
            "stabilizer of {set:?} has {} orbits of size {size}",
            found.len()
        )));
    }
    Ok(found.pop().expect("one orbit"))
}

/// The block of the Steiner system containing `set`, found as `set` plus
/// the orbit of size `rest` of its setwise stabilizer.
fn steiner_block(group: &Group, set: &[u32], rest: usize) -> Result<Vec<u32>> {
    let mut block = set.to_vec();
    block.extend(completing_orbit(group, set, rest)?);
    block.sort_unstable();
    Ok(block)
}

fn expect_index(group: &Group, sub: Group, index: u64, what: &str) -> Result<Group> {
    let got = group.index_of(&sub);
    if got != index {
        return Err(Error::InvalidSpec(format!("{what} has index {got}, expected {index}")));
    }
    Ok(sub)
}

impl NamedGroup {
    /// Resolves a subgroup selector.
    ///
    /// Every group accepts `trivial`, `whole`, `sylow2`, `sylow2-normalizer`,
    /// `o2prime`, `derived`, `point` (stabilizer of the first point) and
    /// `gens:<cycles>;<cycles>…` in 1-based cycle notation. Families add
    /// their own named subgroups.
    pub fn subgroup(&self, selector: &str, seed: u64) -> Result<Group> {
        let g = &self.group;
        let deg = g.degree();
        let unknown = || Error::UnknownSelector {
            group: self.family.to_string(),
            selector: selector.to_string(),
        };
        if let Some(list) = selector.strip_prefix("gens:") {
            let gens = list
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_cycles(s, deg, 1))
                .collect::<Result<Vec<_>>>()?;
            return g.subgroup(gens);
        }
        match selector {
            "trivial" => return Ok(Group::trivial(deg)),
            "whole" => return Ok(g.clone()),
            "sylow2" => return Ok(sylow_2(g, seed)),
            "sylow2-normalizer" => return Ok(normalizer(g, &sylow_2(g, seed))),
            "o2prime" => return Ok(o_2prime(g, seed)),
            "derived" => return Ok(g.derived_subgroup()),
            "point" => return Ok(g.pointwise_stabilizer(&[0])),
            _ => {}
        }
        match (&self.family, selector) {
            (Family::Agl1(q), "order2p") => {
                let f = Gf::new(*q)?;
                let minus_one = f.neg(1);
                g.subgroup(vec![affine(&f, 1, 1), affine(&f, minus_one, 0)])
            }
            (Family::Agl1(q), "translations") => {
                let f = Gf::new(*q)?;
                let gens = (0..f.degree()).map(|i| affine(&f, 1, f.characteristic().pow(i))).collect();
                g.subgroup(gens)
            }
            (Family::Agl1(q), "squares") | (Family::Agl1(q), "affine-squares") => {
                let f = Gf::new(*q)?;
                let mut gens = vec![affine(&f, f.pow(f.primitive(), 2), 0)];
                if selector == "affine-squares" {
                    gens.extend((0..f.degree()).map(|i| affine(&f, 1, f.characteristic().pow(i))));
                }
                g.subgroup(gens)
            }
            (Family::Sym(n), "alt") => g.subgroup(Family::Alt(*n).construct(Path::new("."))?.generators().to_vec()),
            (Family::Sym(n), "d8") if *n >= 4 => {
                g.subgroup(vec![cycle(0..4, deg), Permutation::from_cycles(deg, &[&[0, 2]])?])
            }
            (Family::Sym(n), "c4") if *n >= 4 => g.subgroup(vec![cycle(0..4, deg)]),
            (Family::Sym(n), "v4") if *n >= 4 => g.subgroup(vec![
                Permutation::from_cycles(deg, &[&[0, 1], &[2, 3]])?,
                Permutation::from_cycles(deg, &[&[0, 2], &[1, 3]])?,
            ]),
            (Family::Psl3(q), "line") | (Family::Psl3(q @ 2), "s4") => {
                let lg = LinearGroup::new(3, *q, true)?;
                let line: Vec<u32> = (0..lg.points.len() as u32)
                    .filter(|&i| lg.points[i as usize][0] == 0)
                    .collect();
                Ok(set_stabilizer(g, &line))
            }
            (Family::C3Q16, "q16") => Ok(sylow_2(g, seed)),
            (Family::Named(name), sel) => match (name.as_str(), sel) {
                ("m11", "s5") => {
                    let block = steiner_block(g, &[0, 1, 2, 3], 1)?;
                    expect_index(g, set_stabilizer(g, &block), 66, "S5")
                }
                ("m22", "hexad") => {
                    let hexad = steiner_block(g, &[0, 1, 2], 3)?;
                    expect_index(g, set_stabilizer(g, &hexad), 77, "hexad stabilizer")
                }
                ("m22", "duad") => expect_index(g, set_stabilizer(g, &[0, 1]), 231, "duad stabilizer"),
                ("m23", "duad") => expect_index(g, set_stabilizer(g, &[0, 1]), 253, "duad stabilizer"),
                ("m23", "heptad") => {
                    let heptad = steiner_block(g, &[0, 1, 2, 3], 3)?;
                    expect_index(g, set_stabilizer(g, &heptad), 253, "heptad stabilizer")
                }
                ("m23", "triad") => expect_index(g, set_stabilizer(g, &[0, 1, 2]), 1771, "triad stabilizer"),
                _ => Err(unknown()),
            },
            _ => Err(unknown()),
        }
    }
}

/// Groups of order at most 2000 used by the property sweeps.
pub fn sweep_families() -> Vec<Family> {
    use Family::*;
    let mut out = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15] {
        out.push(Cyclic(n));
    }
    for n in [4, 6, 8, 10, 12, 14, 16, 18, 20] {
        out.push(Dihedral(n));
    }
    out.extend([Quaternion(8), Quaternion(12), Quaternion(16)]);
    out.extend([Sym(3), Sym(4), Sym(5), Sym(6), Alt(4), Alt(5), Alt(6)]);
    for q in [3, 4, 5, 7, 8, 9, 11, 16, 25, 27] {
        out.push(Agl1(q));
    }
    out.extend([Frobenius(7, 3), Frobenius(13, 3), Frobenius(11, 5)]);
    out.extend([Psl2(7), Psl2(8), Psl2(11), Psl2(13), Psl3(2)]);
    out.extend([Sl(2, 3), Sl(2, 5), Sl(2, 7)]);
    out.extend([C3Q16, A4C4]);
    out
}

/// Odd-order groups in the corpus.
pub fn odd_order_families() -> Vec<Family> {
    use Family::*;
    vec![
        Cyclic(1),
        Cyclic(3),
        Cyclic(5),
        Cyclic(7),
        Cyclic(9),
        Cyclic(15),
        Cyclic(21),
        Frobenius(7, 3),
        Frobenius(13, 3),
        Frobenius(11, 5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> NamedGroup {
        construct(&s.parse().unwrap(), &default_data_dir()).unwrap()
    }

    #[test]
    fn family_names_roundtrip() {
        for s in ["c6", "d10", "q8", "s4", "a5", "agl1:27", "frobenius:7:3", "psl2:7", "psl3:2", "sl23", "sl:2:5", "c3_q16", "a4c4", "m22"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("f21".parse::<Family>().unwrap(), Family::Frobenius(7, 3));
        assert!("x:1".parse::<Family>().is_err());
        let spec: GroupSpec = "m22/hexad".parse().unwrap();
        assert_eq!(spec.subgroup.as_deref(), Some("hexad"));
    }

    #[test]
    fn orders_and_degrees() {
        let d10 = build("d10");
        assert_eq!((d10.group.order_u64(), d10.group.degree()), (10, 5));
        let agl = build("agl1:27");
        assert_eq!((agl.group.order_u64(), agl.group.degree()), (702, 27));
        assert!(agl.group.is_transitive());
        let psl = build("psl3:2");
        assert_eq!((psl.group.order_u64(), psl.group.degree()), (168, 7));
        assert_eq!(build("c3_q16").group.order_u64(), 48);
        assert_eq!(build("a4c4").group.order_u64(), 48);
        assert_eq!(build("q16").group.order_u64(), 16);
    }

    #[test]
    fn agl_order_2p_subgroup() {
        let agl = build("agl1:27");
        let h = agl.subgroup("order2p", 0).unwrap();
        assert_eq!(h.order_u64(), 6);
        assert_eq!(agl.group.index_of(&h), 117);
        let f = agl.subgroup("translations", 0).unwrap();
        assert_eq!(f.order_u64(), 27);
        assert!(f.is_normal_in(&agl.group));
        assert_eq!(agl.subgroup("squares", 0).unwrap().order_u64(), 13);
        assert_eq!(agl.subgroup("affine-squares", 0).unwrap().order_u64(), 351);
    }

    #[test]
    fn unknown_selector_is_reported() {
        let s4 = build("s4");
        assert!(matches!(s4.subgroup("hexad", 0), Err(Error::UnknownSelector { .. })));
        assert_eq!(s4.subgroup("d8", 0).unwrap().order_u64(), 8);
        assert_eq!(s4.subgroup("gens:(1,2,3,4)", 0).unwrap().order_u64(), 4);
    }

    #[test]
    fn fano_line_stabilizer_is_s4() {
        let g = build("psl3:2");
        let h = g.subgroup("s4", 0).unwrap();
        assert_eq!(h.order_u64(), 24);
    }
}
