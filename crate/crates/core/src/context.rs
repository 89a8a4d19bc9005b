//! A group together with its character table and one representative per
//! table column, obtained either by enumerating classes or by matching a
//! bundled table.

use std::path::Path;

use crate::charfun::{decompose, perm_character_of, ClassFunction, Decomposition};
use crate::corpus::{Family, NamedGroup};
use crate::dixon::character_table_from_classes;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ConjugacyClasses, CosetAction, Group, Permutation};
use crate::table::CharacterTable;
use crate::tableio::{default_budget, find_representatives, load_table};

pub struct TableContext {
    pub name: String,
    pub group: Group,
    pub table: CharacterTable,
    /// `reps[c]` lies in the class of column `c`.
    pub reps: Vec<Permutation>,
    /// Present when the classes were enumerated; table columns are then in
    /// class order.
    pub classes: Option<ConjugacyClasses>,
    /// Columns that only the table can tell apart (see
    /// [`crate::tableio::ClassMatching`]).
    pub ambiguity: Vec<Vec<usize>>,
}

impl TableContext {
    /// Enumerates classes and computes the table.
    pub fn computed(name: &str, group: Group, threshold: u64) -> Result<TableContext> {
        let classes = conjugacy_classes(&group, threshold)?;
        let mut table = character_table_from_classes(&classes)?;
        table.set_name(name);
        Ok(TableContext {
            name: name.to_string(),
            group,
            reps: classes.reps().to_vec(),
            table,
            classes: Some(classes),
            ambiguity: Vec::new(),
        })
    }

    /// Uses a given table, locating class representatives by sampling.
    pub fn matched(name: &str, group: Group, table: CharacterTable, seed: u64) -> Result<TableContext> {
        let budget = default_budget(&table);
        let m = find_representatives(&group, &table, seed, budget)?;
        Ok(TableContext {
            name: name.to_string(),
            group,
            table,
            reps: m.reps,
            classes: None,
            ambiguity: m.ambiguity_groups,
        })
    }

    /// Groups read from data files use their bundled table
    /// `data/tables/<name>.ctbl` when there is one; all others get a
    /// computed table.
    pub fn for_group(named: &NamedGroup, data_dir: &Path, threshold: u64, seed: u64) -> Result<TableContext> {
        let name = named.family.to_string();
        let path = data_dir.join("tables").join(format!("{name}.ctbl"));
        if matches!(named.family, Family::Named(_)) && path.exists() {
            let file = load_table(&path)?;
            TableContext::matched(&name, named.group.clone(), file.table, seed)
        } else {
            TableContext::computed(&name, named.group.clone(), threshold)
        }
    }

    pub fn order(&self) -> u64 {
        self.table.order()
    }

    pub fn classes(&self) -> Result<&ConjugacyClasses> {
        self.classes.as_ref().ok_or(Error::ClassesNotEnumerated)
    }

    /// Column of an element; needs enumerated classes.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        self.classes()?
            .class_of(g)
            .ok_or_else(|| Error::NotSubgroup(format!("{} is not in {}", g.to_cycle_string(), self.name)))
    }

    pub fn perm_character(&self, sub: &Group) -> Result<ClassFunction> {
        let action = CosetAction::new(&self.group, sub)?;
        Ok(perm_character_of(&action, &self.reps))
    }

    pub fn decompose_subgroup(&self, sub: &Group) -> Result<(ClassFunction, Decomposition)> {
        let pi = self.perm_character(sub)?;
        let d = decompose(&pi, &self.table)?;
        Ok((pi, d))
    }
}
