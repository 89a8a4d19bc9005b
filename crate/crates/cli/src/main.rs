//! `permchar`: character tables, permutation-character decompositions and
//! checks of statements about their real constituents.
//!
//! Exit status 0 when every check passes, 1 when some check fails and 2 for
//! usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use permchar::charfun::constituent_labels;
use permchar::context::TableContext;
use permchar::corpus::{construct, default_data_dir, sweep_families, Family, GroupSpec, NamedGroup};
use permchar::perm::io::load_group_file;
use permchar::perm::{Group, DEFAULT_THRESHOLD};
use permchar::tableio::{load_table, serialize_table};
use permchar::verify::*;

#[derive(Parser)]
#[command(name = "permchar", version, about = "Character tables and permutation characters of permutation groups")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Opts {
    /// Group family, e.g. s4, d10, agl1:27, psl3:2, m22; `family/selector`
    /// also sets the subgroup.
    #[arg(long, global = true)]
    family: Option<String>,
    /// Group definition file: `degree N`, then one generator per line in
    /// 1-based cycle notation.
    #[arg(long, global = true, conflicts_with = "family")]
    group_file: Option<PathBuf>,
    /// Subgroup selector, e.g. hexad, sylow2, gens:(1,2);(1,2,3).
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Character table file to use instead of computing one.
    #[arg(long, global = true)]
    table_file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order whose elements are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: u64,
    /// Worker threads for independent reports.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory holding `groups/` and `tables/`.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the character table.
    Table,
    /// Decompose the permutation character on the cosets of the subgroup.
    Decompose,
    /// Frobenius-Schur indicator of every irreducible character.
    Fsind,
    /// Classes closed under inversion.
    RealClasses,
    /// Check one statement. Pair statements without --subgroup run on a
    /// seeded sample of subgroups.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(STATEMENTS))]
        statement: String,
    },
    /// Recompute the permutation characters of the bundled Mathieu actions.
    Reproduce,
    /// Run every check over the corpus with seeded subgroup samples.
    Sweep {
        /// Skip groups above this order.
        #[arg(long, default_value_t = 2000)]
        max_order: u64,
        /// Random subgroups tried per group.
        #[arg(long, default_value_t = 24)]
        random_subgroups: usize,
    },
}

const STATEMENTS: &[&str] = &[
    "theorem-a",
    "theorem-b",
    "theorem-d",
    "real-coverage",
    "odd-multiplicity-type",
    "odd-multiplicity-hypotheses",
    "burnside",
    "indicator-oracle",
    "dihedral-10",
    "agl-multiplicity",
    "odd-index-induction",
    "normal-reality",
    "odd-quotient-reality",
    "unipotent-reality",
];

type Failure = Box<dyn std::error::Error>;

// Writes to stdout, ignoring a closed pipe such as `permchar table | head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

struct Env {
    opts: Opts,
    data_dir: PathBuf,
    spec: Option<GroupSpec>,
}

impl Env {
    fn new(opts: Opts) -> Result<Env, Failure> {
        let data_dir = opts.data_dir.clone().unwrap_or_else(default_data_dir);
        let spec = opts.family.as_deref().map(str::parse::<GroupSpec>).transpose()?;
        Ok(Env { opts, data_dir, spec })
    }

    fn family(&self) -> Option<&Family> {
        self.spec.as_ref().map(|s| &s.family)
    }

    fn group(&self) -> Result<NamedGroup, Failure> {
        if let Some(path) = &self.opts.group_file {
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group").to_string();
            return Ok(NamedGroup {
                family: Family::Named(name),
                group: load_group_file(path)?,
            });
        }
        let family = self.family().ok_or("no group given; use --family or --group-file")?;
        Ok(construct(family, &self.data_dir)?)
    }

    fn subgroup_selector(&self) -> Option<&str> {
        self.opts
            .subgroup
            .as_deref()
            .or_else(|| self.spec.as_ref().and_then(|s| s.subgroup.as_deref()))
    }

    fn context(&self, g: &NamedGroup) -> Result<TableContext, Failure> {
        if let Some(path) = &self.opts.table_file {
            let table = load_table(path)?.table;
            return Ok(TableContext::matched(&g.family.to_string(), g.group.clone(), table, self.opts.seed)?);
        }
        if self.opts.group_file.is_some() {
            return Ok(TableContext::computed(&g.family.to_string(), g.group.clone(), self.opts.threshold)?);
        }
        Ok(TableContext::for_group(g, &self.data_dir, self.opts.threshold, self.opts.seed)?)
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Failure> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.opts.jobs {
            b = b.num_threads(n);
        }
        Ok(b.build()?)
    }
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn emit_reports(env: &Env, reports: &[Report]) -> ExitCode {
    if env.opts.json {
        print_json(&serde_json::to_value(reports).expect("reports serialize"));
    } else {
        for r in reports {
            out!("{r}");
        }
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn table(env: &Env) -> Result<ExitCode, Failure> {
    let g = env.group()?;
    let ctx = env.context(&g)?;
    let t = &ctx.table;
    if env.opts.json {
        let rows: Vec<Value> = t
            .rows()
            .iter()
            .zip(t.character_names())
            .zip(t.indicators())
            .map(|((row, name), ind)| {
                json!({
                    "name": name,
                    "values": row.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "indicator": ind,
                })
            })
            .collect();
        print_json(&json!({
            "group": ctx.name,
            "order": t.order(),
            "classes": t.class_names(),
            "sizes": t.sizes(),
            "orders": t.orders(),
            "characters": rows,
        }));
    } else {
        out!("{}", serialize_table(t, &[]));
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(env: &Env) -> Result<ExitCode, Failure> {
    let g = env.group()?;
    let sel = env.subgroup_selector().ok_or("decompose needs --subgroup")?;
    let h = g.subgroup(sel, env.opts.seed)?;
    let ctx = env.context(&g)?;
    let (pi, dec) = ctx.decompose_subgroup(&h)?;
    if env.opts.json {
        let parts: Vec<Value> = constituent_labels(&dec, &ctx.table)
            .into_iter()
            .map(|(name, m, ind)| json!({ "constituent": name, "multiplicity": m, "indicator": ind }))
            .collect();
        print_json(&json!({
            "group": ctx.name,
            "subgroup": sel,
            "index": ctx.group.index_of(&h),
            "values": pi.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "decomposition": dec.render(),
            "constituents": parts,
        }));
    } else {
        outln!("{}", dec.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn fsind(env: &Env) -> Result<ExitCode, Failure> {
    let ctx = env.context(&env.group()?)?;
    let t = &ctx.table;
    let items: Vec<(String, u64, i32)> = t
        .character_names()
        .into_iter()
        .zip(t.degrees())
        .zip(t.indicators().iter().copied())
        .map(|((n, d), i)| (n, d, i))
        .collect();
    if env.opts.json {
        let v: Vec<Value> = items
            .iter()
            .map(|(n, d, i)| json!({ "character": n, "degree": d, "indicator": i }))
            .collect();
        print_json(&json!({ "group": ctx.name, "indicators": v }));
    } else {
        for (n, d, i) in items {
            outln!("{n} {d} {}", if i > 0 { format!("+{i}") } else { i.to_string() });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn real_classes(env: &Env) -> Result<ExitCode, Failure> {
    let ctx = env.context(&env.group()?)?;
    let names = ctx.table.class_names();
    let real: Vec<&str> = ctx.table.real_classes().into_iter().map(|c| names[c].as_str()).collect();
    if env.opts.json {
        print_json(&json!({ "group": ctx.name, "real classes": real }));
    } else {
        outln!("{}", real.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

/// Subgroups a pair statement runs on: the selected one, or a sample.
fn pair_subgroups(env: &Env, g: &NamedGroup, defaults: Option<&[&str]>) -> Result<Vec<(String, Group)>, Failure> {
    if let Some(sel) = env.subgroup_selector() {
        return Ok(vec![(sel.to_string(), g.subgroup(sel, env.opts.seed)?)]);
    }
    match defaults {
        Some(sels) => sels
            .iter()
            .map(|s| Ok((s.to_string(), g.subgroup(s, env.opts.seed)?)))
            .collect(),
        None => Ok(sample_subgroups(&g.group, env.opts.seed, 24)?),
    }
}

fn verify(env: &Env, statement: &str) -> Result<ExitCode, Failure> {
    let seed = env.opts.seed;
    let threshold = env.opts.threshold;
    if statement == "unipotent-reality" {
        let Some(Family::Sl(n, q)) = env.family() else {
            return Err("unipotent-reality needs --family sl:n:q".into());
        };
        return Ok(emit_reports(env, &[check_unipotent_reality(*n as usize, *q, threshold)?]));
    }
    let g = env.group()?;
    let ctx = env.context(&g)?;
    let single = match statement {
        "theorem-d" => Some(check_theorem_d(&ctx, seed)?),
        "burnside" => Some(check_burnside(&ctx)?),
        "indicator-oracle" => Some(check_indicator_oracle(&ctx)?),
        "dihedral-10" => Some(check_d10_remark(&ctx, seed)?),
        _ => None,
    };
    if let Some(r) = single {
        return Ok(emit_reports(env, &[r]));
    }
    let normal_defaults: &[&str] = &["derived", "o2prime"];
    let defaults = match statement {
        "normal-reality" | "odd-quotient-reality" => Some(normal_defaults),
        "agl-multiplicity" => Some(&["order2p"][..]),
        _ => None,
    };
    let subs = pair_subgroups(env, &g, defaults)?;
    let run = |(label, h): &(String, Group)| -> permchar::Result<Report> {
        match statement {
            "normal-reality" => check_normal_reality(&ctx, h, label),
            "odd-quotient-reality" => check_odd_quotient_reality(&ctx, h, label, threshold),
            "odd-index-induction" => check_odd_index_induction(&ctx, h, label, threshold),
            _ => {
                let p = PairData::new(&ctx, h, label)?;
                match statement {
                    "theorem-a" => check_theorem_a(&p),
                    "theorem-b" => check_theorem_b(&p, seed),
                    "real-coverage" => check_real_coverage(&p),
                    "odd-multiplicity-type" => check_lemma_bob(&p),
                    "odd-multiplicity-hypotheses" => check_odd_multiplicity_hypotheses(&p, seed),
                    "agl-multiplicity" => match &g.family {
                        Family::Agl1(q) => check_agl_multiplicity(&p, *q as u64),
                        other => Err(permchar::Error::InvalidSpec(format!("agl-multiplicity needs agl1:q, not {other}"))),
                    },
                    _ => unreachable!("statement names are validated by the parser"),
                }
            }
        }
    };
    let reports = env
        .pool()?
        .install(|| subs.par_iter().map(run).collect::<permchar::Result<Vec<_>>>())?;
    Ok(emit_reports(env, &reports))
}

fn reproduce_cmd(env: &Env) -> Result<ExitCode, Failure> {
    let only: Vec<String> = env.family().map(|f| f.to_string()).into_iter().collect();
    let only: Vec<&str> = only.iter().map(String::as_str).collect();
    let reports = reproduce(&env.data_dir, env.opts.seed, &only)?;
    if reports.is_empty() {
        return Err("no bundled decompositions for this group".into());
    }
    if env.opts.json {
        return Ok(emit_reports(env, &reports));
    }
    for r in &reports {
        let w = &r.witnesses[0];
        outln!(
            "{} {} / {} [{}] {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.group,
            r.subgroup.as_deref().unwrap_or(""),
            w["index"],
            w["decomposition"].as_str().unwrap_or("")
        );
    }
    Ok(if reports.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep_cmd(env: &Env, max_order: u64, random_subgroups: usize) -> Result<ExitCode, Failure> {
    let families = match env.family() {
        Some(f) => vec![f.clone()],
        None => sweep_families(),
    };
    let cfg = SweepConfig {
        seed: env.opts.seed,
        max_order,
        random_subgroups,
        threshold: env.opts.threshold,
        jobs: env.opts.jobs,
        ..Default::default()
    };
    let s = sweep(&families, &env.data_dir, &cfg)?;
    let mut statements: Vec<&str> = s.reports.iter().map(|r| r.statement.as_str()).collect();
    statements.dedup();
    statements.sort_unstable();
    statements.dedup();
    let failures = s.failures();
    if env.opts.json {
        let tally: serde_json::Map<String, Value> = statements
            .iter()
            .map(|st| {
                let (n, p) = s.tally(st);
                (st.to_string(), json!({ "reports": n, "passed": p }))
            })
            .collect();
        print_json(&json!({
            "seed": cfg.seed,
            "groups": s.groups,
            "pairs": s.pairs,
            "random subgroups per group": cfg.random_subgroups,
            "tally": tally,
            "failures": failures,
        }));
    } else {
        outln!(
            "{} groups, {} sampled subgroup pairs (seed {}, {} random subgroups per group)",
            s.groups, s.pairs, cfg.seed, cfg.random_subgroups
        );
        for st in &statements {
            let (n, p) = s.tally(st);
            outln!("{} {st}: {p}/{n}", if p == n { "PASS" } else { "FAIL" });
        }
        for f in &failures {
            out!("{f}");
        }
    }
    Ok(if failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let env = Env::new(cli.opts)?;
    if !Path::new(&env.data_dir).is_dir() {
        return Err(format!("data directory {} not found", env.data_dir.display()).into());
    }
    match cli.verb {
        Verb::Table => table(&env),
        Verb::Decompose => decompose(&env),
        Verb::Fsind => fsind(&env),
        Verb::RealClasses => real_classes(&env),
        Verb::Verify { statement } => verify(&env, &statement),
        Verb::Reproduce => reproduce_cmd(&env),
        Verb::Sweep {
            max_order,
            random_subgroups,
        } => sweep_cmd(&env, max_order, random_subgroups),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
