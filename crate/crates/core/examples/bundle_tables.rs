//! Regenerates `data/tables/<name>.ctbl` for the bundled permutation groups
//! by computing their character tables from the generators in
//! `data/groups/<name>.grp`.
//!
//! cargo run --release -p permchar --example bundle_tables -- m11 m22 m23

use std::time::Instant;

use permchar::corpus::default_data_dir;
use permchar::dixon::character_table;
use permchar::perm::io::load_group_file;
use permchar::tableio::serialize_table;

fn main() -> permchar::Result<()> {
    let data = default_data_dir();
    for name in std::env::args().skip(1) {
        let start = Instant::now();
        let group = load_group_file(&data.join("groups").join(format!("{name}.grp")))?;
        let mut table = character_table(&group, u64::MAX)?;
        table.set_name(name.to_uppercase());
        let comments = vec![
            format!("# Character table of {}", name.to_uppercase()),
            format!("# computed from data/groups/{name}.grp by the bundle_tables example"),
        ];
        let path = data.join("tables").join(format!("{name}.ctbl"));
        std::fs::write(&path, serialize_table(&table, &comments)).expect("write table");
        eprintln!("{name}: {} classes in {:.1?}", table.num_classes(), start.elapsed());
    }
    Ok(())
}
