//! Command line front end: subgroup lattices, transfer systems, universes
//! and the theorem verification suites.
//!
//! Exit codes: 0 success, 1 theorem failure with witness, 2 usage error,
//! 3 feasibility refusal.

use clap::{Args, Parser, Subcommand};
use ninfty::character::DEFAULT_CHAR_SEED;
use ninfty::error::Error;
use ninfty::lattice::{lattice_dot, lattice_json, GroupData};
use ninfty::theorems::{self, CheckReport, Verdict};
use ninfty::transfer::{enumerate_all, generate, Relation, TransferSystem, DEFAULT_SUBGROUP_CAP};
use ninfty::universe::{Field, IndexSet, Universe, UniverseCtx};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ninfty", version, about = "Transfer systems and universes over small finite groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect the subgroup lattice of a group
    Group(GroupArgs),
    /// Enumerate or build transfer systems
    Transfer(TransferArgs),
    /// Apply a change-of-group map to a transfer system
    Map(MapArgs),
    /// Map a universe to its transfer systems
    Universe(UniverseArgs),
    /// Run theorem verification checks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Group spec, e.g. C12, D8, Q8, S4, A5, Q8xC3, perm:(123);(12)
    spec: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct TransferArgs {
    /// enumerate | count | generate | predicates
    action: String,
    spec: String,
    /// Generating pairs as JSON, e.g. `[[0,2],[1,2]]` (for generate/predicates)
    relation: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    dot: bool,
    /// Cap on the subgroup count for exhaustive enumeration
    #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
    max_subgroups: usize,
}

#[derive(Args)]
struct MapArgs {
    /// restrict | induce | coinduce | fixed-points | inflate
    op: String,
    /// The ambient group G
    spec: String,
    /// Lattice index of the subgroup H (restrict/induce/coinduce) or of the
    /// normal subgroup N (fixed-points/inflate)
    subgroup: usize,
    /// Input system as JSON pairs, over G for restrict/fixed-points, over
    /// the standalone subgroup for induce/coinduce, over the quotient for
    /// inflate. Closed to a transfer system first.
    relation: Option<String>,
}

#[derive(Args)]
struct UniverseArgs {
    spec: String,
    /// `complete | trivial | regular:C<k> | irr:{i,j,...} | index:{0,1,3}`
    literal: String,
    /// disc | linear | closure | hull
    op: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name (paper-default) or a theorem id
    target: String,
    /// Group spec (for single-theorem runs)
    group: Option<String>,
    /// Per-check time budget in milliseconds
    #[arg(long, default_value_t = 300_000)]
    budget_ms: u64,
    /// Run saturation checks over complex universes as well
    #[arg(long)]
    both_fields: bool,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let seed = std::env::var("NINFTY_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(DEFAULT_CHAR_SEED);
    let code = match cli.cmd {
        Cmd::Group(a) => cmd_group(a),
        Cmd::Transfer(a) => cmd_transfer(a),
        Cmd::Map(a) => cmd_map(a),
        Cmd::Universe(a) => cmd_universe(a, seed),
        Cmd::Verify(a) => cmd_verify(a, seed),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Infeasible(_) => 3u8,
                _ => 2u8,
            })
        }
    }
}

fn cmd_group(a: GroupArgs) -> Result<u8, Error> {
    let data = GroupData::build(&a.spec)?;
    if a.dot {
        print!("{}", lattice_dot(&data));
    } else if a.json {
        println!("{}", serde_json::to_string_pretty(&lattice_json(&data))?);
    } else {
        let lat = &data.lattice;
        let normal = lat.normal_indices().len();
        let cocyclic = (0..lat.count()).filter(|&i| lat.is_cocyclic(i)).count();
        println!(
            "{}: order {}, {} subgroups, {} normal, {} cocyclic",
            data.table.name(),
            data.table.order(),
            lat.count(),
            normal,
            cocyclic
        );
        for i in 0..lat.count() {
            println!(
                "  H{i}: order {}{}{}",
                lat.order(i),
                if lat.is_normal(i) { ", normal" } else { "" },
                if lat.is_cocyclic(i) { ", cocyclic" } else { "" },
            );
        }
    }
    Ok(0)
}

fn parse_relation(data: &Arc<GroupData>, s: Option<&str>) -> Result<Relation, Error> {
    let mut rel = Relation::empty(data)?;
    if let Some(s) = s {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::BadArgument(format!("relation is not JSON: {e}")))?;
        let arr = v
            .as_array()
            .ok_or_else(|| Error::BadArgument("relation must be a JSON array of pairs".into()))?;
        for p in arr {
            let i = p[0].as_u64().ok_or_else(|| Error::BadArgument("bad pair".into()))?;
            let j = p[1].as_u64().ok_or_else(|| Error::BadArgument("bad pair".into()))?;
            rel.insert(i as usize, j as usize)?;
        }
    }
    Ok(rel)
}

fn print_system(t: &TransferSystem, json: bool, dot: bool) -> Result<(), Error> {
    if dot {
        print!("{}", t.to_dot());
    } else if json {
        println!("{}", serde_json::to_string(&t.to_json())?);
    } else {
        println!("pairs: {:?}", t.nonreflexive_pairs());
    }
    Ok(())
}

fn cmd_transfer(a: TransferArgs) -> Result<u8, Error> {
    let data = GroupData::build(&a.spec)?;
    match a.action.as_str() {
        "enumerate" => {
            let all = enumerate_all(&data, a.max_subgroups)?;
            for t in &all {
                print_system(t, true, false)?;
            }
            Ok(0)
        }
        "count" => {
            let all = enumerate_all(&data, a.max_subgroups)?;
            let saturated = all.iter().filter(|t| t.is_saturated()).count();
            let disclike = all.iter().filter(|t| t.is_disclike()).count();
            let bisat = all.iter().filter(|t| t.is_bisaturated()).count();
            if a.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "group": data.table.name(),
                        "total": all.len(),
                        "saturated": saturated,
                        "disclike": disclike,
                        "bisaturated": bisat,
                    })
                );
            } else {
                println!(
                    "{}: total {}, saturated {}, disc-like {}, bisaturated {}",
                    data.table.name(),
                    all.len(),
                    saturated,
                    disclike,
                    bisat
                );
            }
            Ok(0)
        }
        "generate" => {
            let rel = parse_relation(&data, a.relation.as_deref())?;
            let t = generate(&rel);
            print_system(&t, true, a.dot)?;
            Ok(0)
        }
        "predicates" => {
            let rel = parse_relation(&data, a.relation.as_deref())?;
            let t = generate(&rel);
            if a.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "group": data.table.name(),
                        "pairs": t.nonreflexive_pairs(),
                        "saturated": t.is_saturated(),
                        "disclike": t.is_disclike(),
                        "bisaturated": t.is_bisaturated(),
                        "minimal_fibrant": t.minimal_fibrant(),
                    })
                );
            } else {
                println!("pairs: {:?}", t.nonreflexive_pairs());
                println!("saturated: {}", t.is_saturated());
                println!("disc-like: {}", t.is_disclike());
                println!("bisaturated: {}", t.is_bisaturated());
                println!("minimal fibrant subgroup: H{}", t.minimal_fibrant());
            }
            Ok(0)
        }
        other => Err(Error::BadArgument(format!(
            "unknown transfer action `{other}` (enumerate|count|generate|predicates)"
        ))),
    }
}

fn cmd_map(a: MapArgs) -> Result<u8, Error> {
    use ninfty::changeof;
    use ninfty::lattice::{quotient, subgroup_embedding};
    let data = GroupData::build(&a.spec)?;
    if a.subgroup >= data.lattice.count() {
        return Err(Error::BadArgument(format!(
            "subgroup index {} out of range (lattice has {})",
            a.subgroup,
            data.lattice.count()
        )));
    }
    let result = match a.op.as_str() {
        "restrict" => {
            let emb = subgroup_embedding(&data, a.subgroup)?;
            let t = generate(&parse_relation(&data, a.relation.as_deref())?);
            changeof::restrict(&t, &emb)?
        }
        "induce" => {
            let emb = subgroup_embedding(&data, a.subgroup)?;
            let p = generate(&parse_relation(&emb.child, a.relation.as_deref())?);
            changeof::induce(&p, &emb)?
        }
        "coinduce" => {
            let emb = subgroup_embedding(&data, a.subgroup)?;
            let p = generate(&parse_relation(&emb.child, a.relation.as_deref())?);
            changeof::coinduce(&p, &emb)?
        }
        "fixed-points" => {
            let qd = quotient(&data, a.subgroup)?;
            let t = generate(&parse_relation(&data, a.relation.as_deref())?);
            changeof::fixed_points(&t, &qd)?
        }
        "inflate" => {
            let qd = quotient(&data, a.subgroup)?;
            let q = generate(&parse_relation(&qd.quotient, a.relation.as_deref())?);
            changeof::inflate(&q, &qd)?
        }
        other => {
            return Err(Error::BadArgument(format!(
                "unknown map `{other}` (restrict|induce|coinduce|fixed-points|inflate)"
            )))
        }
    };
    print_system(&result, true, false)?;
    Ok(0)
}

fn parse_universe(ctx: &Arc<UniverseCtx>, literal: &str) -> Result<Universe, Error> {
    if literal == "complete" {
        return Ok(Universe::complete(ctx, Field::Real));
    }
    if literal == "trivial" {
        return Ok(Universe::trivial(ctx, Field::Real));
    }
    if let Some(spec) = literal.strip_prefix("regular:") {
        let lat = &ctx.data.lattice;
        let n_idx = if let Some(idx) = spec.strip_prefix('#') {
            idx.parse::<usize>().map_err(|_| Error::BadArgument("bad subgroup index".into()))?
        } else {
            // pick the unique normal subgroup of the given cyclic order
            let order: usize = spec
                .strip_prefix('C')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::BadArgument("regular:<C<k> or #index> expected".into()))?;
            let matches: Vec<usize> = lat
                .normal_indices()
                .into_iter()
                .filter(|&i| lat.order(i) == order)
                .collect();
            match matches.as_slice() {
                [one] => *one,
                [] => return Err(Error::BadArgument(format!("no normal subgroup of order {order}"))),
                _ => {
                    return Err(Error::BadArgument(format!(
                        "normal subgroup of order {order} is ambiguous; use regular:#<index>"
                    )))
                }
            }
        };
        return Universe::regular_quotient(ctx, n_idx);
    }
    if let Some(body) = literal.strip_prefix("irr:") {
        let idxs = parse_brace_list(body)?;
        let mut support = 1u32;
        for i in idxs {
            if i >= ctx.irr_count() {
                return Err(Error::BadArgument(format!("irreducible index {i} out of range")));
            }
            support |= 1 << i;
        }
        // tag real when conjugation-closed, complex otherwise
        let field = if ctx.is_conj_closed(support) { Field::Real } else { Field::Complex };
        return Universe::new(ctx, support, field);
    }
    if let Some(body) = literal.strip_prefix("index:") {
        let members = parse_brace_list(body)?;
        let set = IndexSet::new(ctx.data.table.order(), &members)?;
        return set.to_universe(ctx);
    }
    Err(Error::BadArgument(format!("unknown universe literal `{literal}`")))
}

fn parse_brace_list(s: &str) -> Result<Vec<usize>, Error> {
    let inner = s
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| Error::BadArgument("expected {i,j,...}".into()))?;
    let mut out = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<usize>()
                .map_err(|_| Error::BadArgument(format!("bad index `{part}`")))?,
        );
    }
    Ok(out)
}

fn cmd_universe(a: UniverseArgs, seed: u64) -> Result<u8, Error> {
    let data = GroupData::build(&a.spec)?;
    let ctx = UniverseCtx::build_seeded(&data, seed)?;
    let u = parse_universe(&ctx, &a.literal)?;
    match a.op.as_str() {
        "disc" => print_system(&u.disc_transfer()?, true, false)?,
        "linear" => print_system(&u.linear_transfer()?, true, false)?,
        "closure" => {
            let c = u.closure();
            println!("{}", serde_json::to_string(&c.to_json())?);
        }
        "hull" => {
            let d = u.disc_transfer()?;
            let h = theorems::hull(&d)?;
            print_system(&h, true, false)?;
        }
        other => {
            return Err(Error::BadArgument(format!(
                "unknown universe op `{other}` (disc|linear|closure|hull)"
            )))
        }
    }
    Ok(0)
}

fn print_reports(reports: &[CheckReport], json: bool) -> Result<(), Error> {
    if json {
        println!("{}", serde_json::to_string_pretty(reports)?);
        return Ok(());
    }
    for r in reports {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::FailsWithWitness => "FAILS",
            Verdict::SkippedInfeasible => "skipped",
        };
        println!(
            "{:<18} {:<8} {:<8} {:>7}ms  {}",
            r.theorem, r.group, verdict, r.millis, r.detail
        );
        if r.verdict == Verdict::FailsWithWitness {
            if let Some(w) = &r.witness {
                println!("    witness: {w}");
            }
        }
    }
    Ok(())
}

fn exit_code_for(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::FailsWithWitness) {
        1
    } else if !reports.is_empty()
        && reports.iter().all(|r| r.verdict == Verdict::SkippedInfeasible)
    {
        3
    } else {
        0
    }
}

fn cmd_verify(a: VerifyArgs, seed: u64) -> Result<u8, Error> {
    let reports: Vec<CheckReport> = if a.target == "paper-default" {
        let mut entries = theorems::default_suite();
        if a.both_fields {
            for g in ["C2", "C3", "C4", "C8", "S3", "A4", "Q8", "D8"] {
                entries.push(("saturated-complex", g));
            }
        }
        theorems::run_suite(&entries, a.budget_ms, seed)
    } else {
        let group = a
            .group
            .as_deref()
            .ok_or_else(|| Error::BadArgument("single-theorem runs need a group".into()))?;
        let mut entries = vec![(a.target.as_str(), group)];
        if a.both_fields && a.target == "saturated" {
            entries.push(("saturated-complex", group));
        }
        theorems::run_suite(&entries, a.budget_ms, seed)
    };
    print_reports(&reports, a.json)?;
    Ok(exit_code_for(&reports))
}
