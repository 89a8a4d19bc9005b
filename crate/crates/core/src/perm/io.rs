//! Group definition files.
//!
//! ```text
//! # order 168
//! degree 7
//! (1,2,3,4,5,6,7)
//! (3,5)(6,7)
//! ```
//!
//! The first non-comment line declares the degree; each further line is one
//! generator in disjoint-cycle notation over 1-based points. A comment of the
//! form `# order N` records the expected group order, which loading checks.

use std::path::Path;

use num_bigint::BigUint;

use super::group::Group;
use super::permutation::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected_order: Option<BigUint>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses cycle notation such as `(1,2)(3,4,5)`; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize, line: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut current: Option<Vec<u32>> = None;
    let mut number = String::new();
    let mut number_col = 0;
    let flush = |number: &mut String, col: usize, cycle: &mut Vec<u32>| -> Result<()> {
        if number.is_empty() {
            return Err(parse_error(line, col, "expected a point"));
        }
        let p: usize = number
            .parse()
            .map_err(|_| parse_error(line, col, format!("bad point `{number}`")))?;
        if p == 0 || p > degree {
            return Err(parse_error(line, col, format!("point {p} outside 1..={degree}")));
        }
        cycle.push((p - 1) as u32);
        number.clear();
        Ok(())
    };
    for (i, ch) in text.char_indices() {
        let col = i + 1;
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(parse_error(line, col, "nested `(`"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                let mut cycle = current
                    .take()
                    .ok_or_else(|| parse_error(line, col, "unmatched `)`"))?;
                if !number.is_empty() {
                    flush(&mut number, number_col, &mut cycle)?;
                } else if !cycle.is_empty() {
                    return Err(parse_error(line, col, "expected a point before `)`"));
                }
                cycles.push(cycle);
            }
            ',' => {
                let cycle = current
                    .as_mut()
                    .ok_or_else(|| parse_error(line, col, "`,` outside a cycle"))?;
                flush(&mut number, col, cycle)?;
            }
            c if c.is_ascii_digit() => {
                if current.is_none() {
                    return Err(parse_error(line, col, "point outside a cycle"));
                }
                if number.is_empty() {
                    number_col = col;
                }
                number.push(c);
            }
            c if c.is_whitespace() => {}
            c => return Err(parse_error(line, col, format!("unexpected character `{c}`"))),
        }
    }
    if current.is_some() {
        return Err(parse_error(line, text.len() + 1, "unterminated cycle"));
    }
    let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs)
        .map_err(|_| parse_error(line, 1, "cycles are not disjoint"))
}

pub fn parse_group_text(text: &str) -> Result<GroupFile> {
    let mut degree = None;
    let mut generators = Vec::new();
    let mut expected_order = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("order") {
                let value = words.next().unwrap_or("");
                expected_order = Some(
                    value
                        .parse::<BigUint>()
                        .map_err(|_| parse_error(line_no, 1, format!("bad order `{value}`")))?,
                );
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| parse_error(line_no, 1, "expected `degree N`"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line_no, 8, format!("bad degree `{}`", rest.trim())))?;
                degree = Some(n);
            }
            Some(n) => generators.push(parse_cycles(line, n, line_no)?),
        }
    }
    let degree = degree.ok_or_else(|| parse_error(1, 1, "missing `degree N` line"))?;
    Ok(GroupFile {
        degree,
        generators,
        expected_order,
    })
}

/// Builds the group and checks any recorded order.
pub fn group_from_text(text: &str, name: &str) -> Result<Group> {
    let file = parse_group_text(text)?;
    let group = Group::build(file.generators, file.degree)?;
    if let Some(expected) = file.expected_order {
        if &expected != group.order() {
            return Err(Error::OrderMismatch {
                name: name.to_string(),
                expected: expected.to_string(),
                actual: group.order().to_string(),
            });
        }
    }
    Ok(group)
}

pub fn load_group_file(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    group_from_text(&text, &path.display().to_string())
}

/// Renders a group file with an order header.
pub fn write_group_text(group: &Group, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&format!("# order {}\n", group.order()));
    out.push_str(&format!("degree {}\n", group.degree()));
    for g in group.generators() {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_psl32_on_seven_points() {
        let text = "# order 168\ndegree 7\n(1,2,3,4,5,6,7)\n\n(3,5)(6,7)\n";
        let g = group_from_text(text, "psl32").unwrap();
        assert_eq!(g.order_u64(), 168);
    }

    #[test]
    fn order_mismatch_is_reported() {
        let text = "# order 100\ndegree 3\n(1,2)\n";
        assert!(matches!(
            group_from_text(text, "bad"),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn corrupted_generator_reports_line() {
        let text = "degree 5\n(1,2)\n(1,2,x)\n";
        match parse_group_text(text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(column, 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_group_text("degree 3\n(1,4)\n").is_err());
        assert!(parse_group_text("degree 3\n(1,2)(2,3)\n").is_err());
        assert!(parse_group_text("(1,2)\n").is_err());
    }

    #[test]
    fn write_then_read() {
        let g = group_from_text("degree 4\n(1,2,3,4)\n(1,3)\n", "d8").unwrap();
        let again = group_from_text(&write_group_text(&g, &["dihedral"]), "d8").unwrap();
        assert!(again.same_subgroup(&g));
    }
}
