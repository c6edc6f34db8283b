//! Executable verification harness: each structure theorem becomes a
//! checkable property over a named group, decided by exhaustive computation
//! and reported with a machine-replayable witness.

use crate::error::{Error, Result};
use crate::lattice::{modular_product_check, quotient, GroupData};
use crate::transfer::{TransferSystem, DEFAULT_SUBGROUP_CAP};
use crate::universe::{Field, UniverseCtx};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "fails-with-witness")]
    FailsWithWitness,
    #[serde(rename = "skipped-infeasible")]
    SkippedInfeasible,
}

/// Outcome of one theorem check on one group. `witness` is machine-readable;
/// a fails-with-witness verdict always carries one.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub theorem: String,
    pub group: String,
    pub verdict: Verdict,
    pub witness: Option<serde_json::Value>,
    pub millis: u128,
    #[serde(skip)]
    pub detail: String,
}

impl CheckReport {
    fn new(theorem: &str, group: &str) -> Self {
        CheckReport {
            theorem: theorem.into(),
            group: group.into(),
            verdict: Verdict::Holds,
            witness: None,
            millis: 0,
            detail: String::new(),
        }
    }
}

/// Wall-clock cap for a single check.
#[derive(Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn from_millis(ms: u64) -> Self {
        Budget { deadline: Some(Instant::now() + std::time::Duration::from_millis(ms)) }
    }

    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn check(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::Infeasible("time budget exceeded".into()));
            }
        }
        Ok(())
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }
}

/// Enumeration bounded by the check's time budget.
fn enumerate_budgeted(data: &Arc<GroupData>, budget: &Budget) -> Result<Vec<TransferSystem>> {
    crate::transfer::enumerate_all_within(data, DEFAULT_SUBGROUP_CAP, budget.deadline())
}

fn finish(mut report: CheckReport, started: Instant) -> CheckReport {
    report.millis = started.elapsed().as_millis();
    report
}

fn skip(mut report: CheckReport, started: Instant, why: &str) -> CheckReport {
    report.verdict = Verdict::SkippedInfeasible;
    report.detail = why.into();
    finish(report, started)
}

fn fail(mut report: CheckReport, started: Instant, witness: serde_json::Value, detail: String) -> CheckReport {
    report.verdict = Verdict::FailsWithWitness;
    report.witness = Some(witness);
    report.detail = detail;
    finish(report, started)
}

/// Index of the commutator subgroup in the lattice.
pub fn commutator_index(data: &GroupData) -> usize {
    data.lattice
        .index_of_mask(data.table.commutator_mask())
        .expect("commutator subgroup is in the lattice")
}

/// (P, O) is compatible: P refines O, and K ->_P H with (K meet L) ->_O K
/// forces L ->_O H for all L <= H.
pub fn is_compatible_pair(p: &TransferSystem, o: &TransferSystem) -> Result<bool> {
    if !p.refines(o)? {
        return Ok(false);
    }
    let lat = &p.data().lattice;
    let n = lat.count();
    for h in 0..n {
        for k in 0..n {
            if !lat.leq(k, h) || !p.has(k, h) {
                continue;
            }
            for l in 0..n {
                if lat.leq(l, h) && o.has(lat.meet(k, l), k) && !o.has(l, h) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The multiplicative hull of a transfer system over an abelian group:
/// K -> H iff every pair of O under H pulls back from its meet with K, which
/// is the coinduction-refinement condition spelled out on the ambient
/// lattice.
pub fn hull(o: &TransferSystem) -> Result<TransferSystem> {
    let data = o.data();
    if !data.table.is_abelian() {
        return Err(Error::NonAbelian(data.table.name().into()));
    }
    let lat = &data.lattice;
    let n = lat.count();
    let mut rel = crate::transfer::Relation::empty(data)?;
    for k in 0..n {
        for h in 0..n {
            if !lat.leq(k, h) {
                continue;
            }
            // coind^H_K res^G_K O <= res^G_H O
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    !(lat.leq(a, b) && lat.leq(b, h))
                        || !o.has(lat.meet(a, k), lat.meet(b, k))
                        || o.has(a, b)
                })
            });
            if ok {
                rel.insert(k, h)?;
            }
        }
    }
    TransferSystem::new(rel)
}

/// Maximum of the compatible partners of O over the full enumeration; the
/// independent oracle for [`hull`].
pub fn brute_force_hull(o: &TransferSystem, all: &[TransferSystem]) -> Result<TransferSystem> {
    let mut partners = Vec::new();
    for p in all {
        if is_compatible_pair(p, o)? {
            partners.push(p);
        }
    }
    for p in &partners {
        let mut is_max = true;
        for q in &partners {
            if !q.refines(p)? {
                is_max = false;
                break;
            }
        }
        if is_max {
            return Ok((*p).clone());
        }
    }
    Err(Error::Validation("compatible partners have no maximum".into()))
}

/// All linear-isometries row matrices realizable by some universe of the
/// given field, memoised so saturation checks are a single scan.
fn realizable_linear_rows(
    ctx: &Arc<UniverseCtx>,
    field: Field,
    budget: &Budget,
) -> Result<HashSet<Vec<u64>>> {
    let supports = ctx.supports_for(field)?;
    let mut set = HashSet::new();
    for (i, &s) in supports.iter().enumerate() {
        if i % 512 == 0 {
            budget.check()?;
        }
        set.insert(ctx.linear_rows(s));
    }
    Ok(set)
}

/// D(U) = L(U) exactly on the regular quotient universes R[G/N]^infty.
pub fn check_disc_equals_linear(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("disc-eq-linear", ctx.data.table.name());
    let supports = match ctx.real_supports() {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    let regular: HashSet<u32> = ctx
        .data
        .lattice
        .normal_indices()
        .into_iter()
        .map(|n| ctx.regular_quotient_support(n).expect("normal"))
        .collect();
    let mut checked = 0usize;
    for (i, &s) in supports.iter().enumerate() {
        if i % 64 == 0 && budget.check().is_err() {
            return skip(report, started, "time budget exceeded");
        }
        let equal = ctx.disc_rows(s) == ctx.linear_rows(s);
        let is_regular = regular.contains(&s);
        if equal != is_regular {
            return fail(
                report,
                started,
                serde_json::json!({
                    "kind": "universe",
                    "support": support_indices(s),
                    "field": "real",
                    "disc_eq_linear": equal,
                    "is_regular_quotient": is_regular,
                }),
                format!("support {:?} breaks the classification", support_indices(s)),
            );
        }
        checked += 1;
    }
    let mut r = finish(report, started);
    r.detail = format!("{checked} real universes, {} regular quotients", regular.len());
    r
}

fn support_indices(s: u32) -> Vec<usize> {
    (0..32).filter(|&v| s >> v & 1 != 0).collect()
}

/// Minimal fibrant subgroup restricts to an order-reversing bijection from
/// bisaturated systems onto normal subgroups, and each bisaturated system is
/// the disc system of its regular quotient universe.
pub fn check_bisaturated_bijection(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("bisaturated", ctx.data.table.name());
    let data = &ctx.data;
    let all = match enumerate_budgeted(data, budget) {
        Ok(a) => a,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    if budget.check().is_err() {
        return skip(report, started, "time budget exceeded");
    }
    let bisat: Vec<&TransferSystem> = all.iter().filter(|t| t.is_bisaturated()).collect();
    let normals = data.lattice.normal_indices();
    if bisat.len() != normals.len() {
        return fail(
            report,
            started,
            serde_json::json!({
                "kind": "count-mismatch",
                "bisaturated": bisat.len(),
                "normal_subgroups": normals.len(),
            }),
            format!("{} bisaturated vs {} normal subgroups", bisat.len(), normals.len()),
        );
    }
    let images: HashSet<usize> = bisat.iter().map(|t| t.minimal_fibrant()).collect();
    if images.len() != normals.len() || !normals.iter().all(|n| images.contains(n)) {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "not-bijective", "images": images.iter().collect::<Vec<_>>()}),
            "minimal fibrant map is not a bijection onto normal subgroups".into(),
        );
    }
    for a in &bisat {
        for b in &bisat {
            let le = a.refines(b).expect("same lattice");
            let rev = data.lattice.leq(b.minimal_fibrant(), a.minimal_fibrant());
            if le != rev {
                return fail(
                    report,
                    started,
                    serde_json::json!({
                        "kind": "order-mismatch",
                        "a": a.nonreflexive_pairs(),
                        "b": b.nonreflexive_pairs(),
                    }),
                    "minimal fibrant map does not reverse order".into(),
                );
            }
        }
    }
    // each bisaturated system comes from its regular quotient universe
    for t in &bisat {
        let n = t.minimal_fibrant();
        let d = ctx.disc_transfer(ctx.regular_quotient_support(n).expect("normal"));
        if d.as_ref().ok() != Some(*t) {
            return fail(
                report,
                started,
                serde_json::json!({
                    "kind": "not-regular-quotient",
                    "pairs": t.nonreflexive_pairs(),
                    "minimal_fibrant": n,
                }),
                "bisaturated system differs from its regular quotient disc system".into(),
            );
        }
    }
    let mut r = finish(report, started);
    r.detail = format!("{} bisaturated = {} normal subgroups", bisat.len(), normals.len());
    r
}

/// L(U) refines D(U) for every universe; L is saturated, D disc-like.
pub fn check_l_refines_d(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("l-refines-d", ctx.data.table.name());
    let supports = match ctx.complex_supports() {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    for (i, &s) in supports.iter().enumerate() {
        if i % 64 == 0 && budget.check().is_err() {
            return skip(report, started, "time budget exceeded");
        }
        let bad = |why: &str| {
            fail(
                CheckReport::new("l-refines-d", ctx.data.table.name()),
                started,
                serde_json::json!({
                    "kind": "universe",
                    "support": support_indices(s),
                    "field": "complex",
                    "reason": why,
                }),
                format!("support {:?}: {why}", support_indices(s)),
            )
        };
        // constructors enforce that L is saturated and D is disc-like
        let l = match ctx.linear_transfer(s) {
            Ok(l) => l,
            Err(_) => return bad("linear system invalid or not saturated"),
        };
        let d = match ctx.disc_transfer(s) {
            Ok(d) => d,
            Err(_) => return bad("disc system invalid or not disc-like"),
        };
        if !l.refines(&d).expect("same lattice") {
            return bad("L(U) does not refine D(U)");
        }
    }
    let mut r = finish(report, started);
    r.detail = format!("{} complex universes (real ones included)", supports.len());
    r
}

/// Hull(D(U)) = L(closure(U)) over abelian groups, with the hull cross-checked
/// against the brute-force maximum over compatible partners.
pub fn check_hull_disc(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("hull", ctx.data.table.name());
    if !ctx.data.table.is_abelian() {
        return skip(report, started, "hull is only defined over abelian groups");
    }
    let all = match enumerate_budgeted(&ctx.data, budget) {
        Ok(a) => a,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    let supports = match ctx.real_supports() {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    for &s in &supports {
        if budget.check().is_err() {
            return skip(report, started, "time budget exceeded");
        }
        let d = ctx.disc_transfer(s).expect("disc system");
        let h = hull(&d).expect("abelian");
        let bf = brute_force_hull(&d, &all).expect("hull exists");
        if h != bf {
            return fail(
                report,
                started,
                serde_json::json!({
                    "kind": "universe",
                    "support": support_indices(s),
                    "reason": "hull differs from brute-force maximum",
                }),
                format!("support {:?}: hull oracle mismatch", support_indices(s)),
            );
        }
        let closed = ctx.closure(s, Field::Real);
        let l = ctx.linear_transfer(closed).expect("linear system");
        if h != l {
            return fail(
                report,
                started,
                serde_json::json!({
                    "kind": "universe",
                    "support": support_indices(s),
                    "closure": support_indices(closed),
                    "reason": "Hull(D(U)) != L(closure(U))",
                }),
                format!("support {:?}: hull differs from L of the closure", support_indices(s)),
            );
        }
    }
    let mut r = finish(report, started);
    r.detail = format!("{} real universes", supports.len());
    r
}

/// (L(U), D(U)) is a compatible pair for every real universe.
pub fn check_compatible_pairs(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("compatible-pairs", ctx.data.table.name());
    let supports = match ctx.real_supports() {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    for &s in &supports {
        if budget.check().is_err() {
            return skip(report, started, "time budget exceeded");
        }
        let l = ctx.linear_transfer(s).expect("linear");
        let d = ctx.disc_transfer(s).expect("disc");
        if !is_compatible_pair(&l, &d).expect("same lattice") {
            return fail(
                report,
                started,
                serde_json::json!({"kind": "universe", "support": support_indices(s)}),
                format!("support {:?}: (L, D) not compatible", support_indices(s)),
            );
        }
    }
    let mut r = finish(report, started);
    r.detail = format!("{} real universes", supports.len());
    r
}

/// Outcome of the saturation scan, before matching against expectations.
pub struct SaturationScan {
    pub saturated_count: usize,
    pub unrealizable: Vec<TransferSystem>,
}

/// Enumerate the saturated transfer systems and scan the universes of the
/// given field for linear-isometries realizations.
pub fn saturation_scan(
    ctx: &Arc<UniverseCtx>,
    field: Field,
    budget: &Budget,
) -> Result<SaturationScan> {
    let all = enumerate_budgeted(&ctx.data, budget)?;
    let realizable = realizable_linear_rows(ctx, field, budget)?;
    let saturated: Vec<&TransferSystem> = all.iter().filter(|t| t.is_saturated()).collect();
    let unrealizable = saturated
        .iter()
        .filter(|t| !realizable.contains(t.rows()))
        .map(|t| (*t).clone())
        .collect();
    Ok(SaturationScan { saturated_count: saturated.len(), unrealizable })
}

/// Is every saturated transfer system realized by a universe? The report
/// verdict states whether the computed answer matches `expect_saturated`.
pub fn check_saturated(
    ctx: &Arc<UniverseCtx>,
    field: Field,
    expect_saturated: bool,
    budget: &Budget,
) -> CheckReport {
    let name = match field {
        Field::Real => "saturated".to_string(),
        Field::Complex => "saturated-complex".to_string(),
    };
    let started = Instant::now();
    let report = CheckReport::new(&name, ctx.data.table.name());
    let scan = match saturation_scan(ctx, field, budget) {
        Ok(s) => s,
        Err(Error::Infeasible(why)) => return skip(report, started, &why),
        Err(e) => return skip(report, started, &e.to_string()),
    };
    let saturated_group = scan.unrealizable.is_empty();
    // prefer a subgroup witness O_H^G when one is unrealizable, with H an
    // abelian normal subgroup of prime index first
    let lat = &ctx.data.lattice;
    let preferred: Vec<usize> = pq_hypothesis_pairs(&ctx.data)
        .into_iter()
        .map(|(h, _)| h)
        .chain(0..lat.count())
        .collect();
    let ohg_witness = preferred
        .into_iter()
        .filter_map(|h| crate::transfer::witness_ohg(&ctx.data, h).ok())
        .find(|w| scan.unrealizable.contains(w));
    let witness = ohg_witness.as_ref().or(scan.unrealizable.first()).map(|t| {
        serde_json::json!({
            "kind": "unrealizable-saturated-system",
            "pairs": t.nonreflexive_pairs(),
            "field": field.as_str(),
            "unrealizable_count": scan.unrealizable.len(),
        })
    });
    let detail = if saturated_group {
        format!("saturated: all {} saturated systems realized", scan.saturated_count)
    } else {
        format!(
            "NOT saturated: {}/{} saturated systems unrealizable",
            scan.unrealizable.len(),
            scan.saturated_count
        )
    };
    let mut r = finish(report, started);
    r.witness = witness;
    r.detail = detail;
    if saturated_group != expect_saturated {
        r.verdict = Verdict::FailsWithWitness;
        if r.witness.is_none() {
            r.witness = Some(serde_json::json!({
                "kind": "unexpected-saturation",
                "expected_saturated": expect_saturated,
            }));
        }
    }
    r
}

/// Hypothesis pairs for the prime-index implication: H abelian normal of
/// prime index, K not containing the commutator subgroup.
pub fn pq_hypothesis_pairs(data: &GroupData) -> Vec<(usize, usize)> {
    let lat = &data.lattice;
    let comm = commutator_index(data);
    let order = data.table.order();
    let mut out = Vec::new();
    for h in 0..lat.count() {
        let index = order / lat.order(h);
        if !lat.is_normal(h) || !lat.is_abelian_subgroup(h) || !is_prime(index) {
            continue;
        }
        for k in 0..lat.count() {
            if !lat.leq(comm, k) {
                out.push((h, k));
            }
        }
    }
    out
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..=n / 2).all(|d| n % d != 0)
}

fn distinct_prime_count(mut m: usize) -> usize {
    let mut count = 0;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            count += 1;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    count
}

/// Validate the hypotheses for one (H, K) pair; hypothesis violations are
/// reported as `BadArgument`, distinct from scan failures.
fn pq_check_hypotheses(ctx: &UniverseCtx, h: usize, k: usize) -> Result<()> {
    let lat = &ctx.data.lattice;
    let order = ctx.data.table.order();
    if distinct_prime_count(order) > 2 {
        return Err(Error::BadArgument("group order has more than two prime factors".into()));
    }
    if !lat.is_normal(h) || !lat.is_abelian_subgroup(h) || !is_prime(order / lat.order(h)) {
        return Err(Error::BadArgument(format!(
            "H{h} is not an abelian normal subgroup of prime index"
        )));
    }
    let comm = commutator_index(&ctx.data);
    if lat.leq(comm, k) {
        return Err(Error::BadArgument(format!("H{k} contains the commutator subgroup")));
    }
    Ok(())
}

/// For all real universes: {e} -> H in L(U) implies {e} -> K in L(U), for
/// one hypothesis pair.
pub fn check_pq_implication_pair(
    ctx: &Arc<UniverseCtx>,
    h: usize,
    k: usize,
    budget: &Budget,
) -> Result<CheckReport> {
    let started = Instant::now();
    let report = CheckReport::new("pq-implication", ctx.data.table.name());
    pq_check_hypotheses(ctx, h, k)?;
    let supports = match ctx.real_supports() {
        Ok(s) => s,
        Err(e) => return Ok(skip(report, started, &e.to_string())),
    };
    for (i, &s) in supports.iter().enumerate() {
        if i % 64 == 0 && budget.check().is_err() {
            return Ok(skip(report, started, "time budget exceeded"));
        }
        let rows = ctx.linear_rows(s);
        if rows[0] >> h & 1 != 0 && rows[0] >> k & 1 == 0 {
            return Ok(fail(
                report,
                started,
                serde_json::json!({
                    "kind": "universe",
                    "support": support_indices(s),
                    "h": h,
                    "k": k,
                }),
                format!("support {:?}: e -> H{h} without e -> H{k}", support_indices(s)),
            ));
        }
    }
    let mut r = finish(report, started);
    r.detail = format!("H{h}, H{k}: {} universes", supports.len());
    Ok(r)
}

/// The implication over every valid hypothesis pair of the group.
pub fn check_pq_implication(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("pq-implication", ctx.data.table.name());
    let pairs = pq_hypothesis_pairs(&ctx.data);
    if pairs.is_empty() || distinct_prime_count(ctx.data.table.order()) > 2 {
        return skip(report, started, "no subgroup pair satisfies the hypotheses");
    }
    for &(h, k) in &pairs {
        match check_pq_implication_pair(ctx, h, k, budget) {
            Ok(r) if r.verdict == Verdict::Holds => {}
            Ok(r) => return r,
            Err(e) => return skip(report, started, &e.to_string()),
        }
    }
    let mut r = finish(report, started);
    let universes = ctx.real_supports().map(|s| s.len()).unwrap_or(0);
    r.detail = format!("{} universes x {} hypothesis pairs", universes, pairs.len());
    r
}

/// Restriction-completeness of complex universes around the commutator
/// subgroup, plus the squared-degree identity.
pub fn check_complete_restriction(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("complete-restriction", ctx.data.table.name());
    let data = &ctx.data;
    let lat = &data.lattice;
    let comm = commutator_index(data);
    let order = data.table.order();

    // degree identity: sum over dim > 1 of dim^2 = |G| - |G_ab|
    let sum: usize = (0..ctx.irr_count())
        .filter(|&v| ctx.chars.dim(v) > 1)
        .map(|v| ctx.chars.dim(v) * ctx.chars.dim(v))
        .sum();
    let ab = order / lat.order(comm);
    if sum != order - ab {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "degree-identity", "sum": sum, "expected": order - ab}),
            format!("degree identity fails: {sum} != {order} - {ab}"),
        );
    }

    let ks: Vec<usize> = (0..lat.count()).filter(|&k| !lat.leq(comm, k)).collect();
    // the H-direction needs the order to have at most two prime factors
    let hs: Vec<usize> = if distinct_prime_count(order) <= 2 {
        (0..lat.count())
            .filter(|&h| {
                lat.is_normal(h)
                    && lat.is_abelian_subgroup(h)
                    && is_prime(order / lat.order(h))
            })
            .collect()
    } else {
        Vec::new()
    };
    let big = ctx.dim_gt1_support();
    let supports = match ctx.complex_supports() {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    for (i, &s) in supports.iter().enumerate() {
        if i % 64 == 0 && budget.check().is_err() {
            return skip(report, started, "time budget exceeded");
        }
        // restriction to K is complete once the large irreducibles embed
        if big & !s == 0 {
            for &k in &ks {
                let full: u64 = (1u64 << ctx.subs[k].chars.irr_count()) - 1;
                let mut res = 0u64;
                let mut bits = s;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    res |= ctx.res_mask_for(k, v);
                }
                if res != full {
                    return fail(
                        report,
                        started,
                        serde_json::json!({
                            "kind": "universe",
                            "support": support_indices(s),
                            "subgroup": k,
                            "reason": "restriction not complete on K",
                        }),
                        format!("support {:?}: res to H{k} incomplete", support_indices(s)),
                    );
                }
            }
        }
        // complete restriction to a prime-index abelian normal H forces the
        // large irreducibles into the universe
        for &h in &hs {
            let full: u64 = (1u64 << ctx.subs[h].chars.irr_count()) - 1;
            let mut res = 0u64;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                res |= ctx.res_mask_for(h, v);
            }
            if res == full && big & !s != 0 {
                return fail(
                    report,
                    started,
                    serde_json::json!({
                        "kind": "universe",
                        "support": support_indices(s),
                        "subgroup": h,
                        "reason": "complete on H but missing a large irreducible",
                    }),
                    format!("support {:?}: complete on H{h} yet misses dim>1", support_indices(s)),
                );
            }
        }
    }
    let mut r = finish(report, started);
    r.detail = format!(
        "identity {sum} = {order} - {ab}; {} K-subgroups, {} H-subgroups, {} universes",
        ks.len(),
        hs.len(),
        supports.len()
    );
    r
}

/// Hamiltonian groups split off a quaternion factor; the quaternion witness
/// inflated along the retraction is saturated but unrealizable.
pub fn check_hamiltonian(ctx: &Arc<UniverseCtx>, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("hamiltonian", ctx.data.table.name());
    let data = &ctx.data;
    let lat = &data.lattice;
    if data.table.is_abelian() || !(0..lat.count()).all(|i| lat.is_normal(i)) {
        return skip(report, started, "group is not Hamiltonian");
    }
    let order = data.table.order();
    // normal complement of a quaternion factor: G/N of order 8, non-abelian
    let n_idx = match (0..lat.count()).find(|&i| {
        lat.order(i) == order / 8 && {
            let q = quotient(data, i).expect("normal");
            !q.quotient.table.is_abelian()
        }
    }) {
        Some(i) => i,
        None => return skip(report, started, "no quaternion quotient found"),
    };
    let qd = quotient(data, n_idx).expect("normal");
    let q_ctx = match UniverseCtx::build_seeded(&qd.quotient, ctx.seed()) {
        Ok(c) => c,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    // unrealizable saturated witness over the quotient (all its supports are
    // conjugation-closed)
    let scan = match saturation_scan(&q_ctx, Field::Real, budget) {
        Ok(s) => s,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    let q_witness = match scan.unrealizable.first() {
        Some(w) => w.clone(),
        None => {
            return fail(
                report,
                started,
                serde_json::json!({"kind": "no-quotient-witness"}),
                "quaternion quotient has no unrealizable saturated system".into(),
            )
        }
    };
    let witness = crate::changeof::inflate(&q_witness, &qd).expect("inflation");
    if !witness.is_saturated() {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "witness-not-saturated", "pairs": witness.nonreflexive_pairs()}),
            "inflated witness is not saturated".into(),
        );
    }
    // no complex universe (hence no real one) realizes the witness
    let realizable = match realizable_linear_rows(ctx, Field::Complex, budget) {
        Ok(r) => r,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    if realizable.contains(witness.rows()) {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "witness-realized", "pairs": witness.nonreflexive_pairs()}),
            "inflated witness is realized by a universe".into(),
        );
    }
    let mut r = finish(report, started);
    r.witness = Some(serde_json::json!({
        "kind": "unrealizable-saturated-system",
        "pairs": witness.nonreflexive_pairs(),
        "field": "complex",
    }));
    r.detail = format!(
        "all {} subgroups normal; inflated witness matches none of the {} realizable systems",
        lat.count(),
        realizable.len()
    );
    r
}

/// Enumerated transfer-system counts for cyclic prime-power groups follow
/// the Catalan numbers.
pub fn check_catalan(group: &str, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("catalan", group);
    let data = match GroupData::build(group) {
        Ok(d) => d,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    if budget.check().is_err() {
        return skip(report, started, "time budget exceeded");
    }
    // the count is asserted for cyclic prime-power groups only, i.e. when
    // the subgroup lattice is a chain
    let lat = &data.lattice;
    let is_chain =
        (0..lat.count()).all(|i| (0..lat.count()).all(|j| lat.leq(i, j) || lat.leq(j, i)));
    if !is_chain {
        return skip(report, started, "subgroup lattice is not a chain");
    }
    let n = lat.count() - 1; // chain length: order is p^n
    let expected = catalan(n + 1);
    let all = match enumerate_budgeted(&data, budget) {
        Ok(a) => a,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    if all.len() != expected {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "count", "got": all.len(), "expected": expected}),
            format!("|Tr| = {} but Catalan({}) = {}", all.len(), n + 1, expected),
        );
    }
    let mut r = finish(report, started);
    r.detail = format!("|Tr| = {} = Catalan({})", all.len(), n + 1);
    r
}

pub fn catalan(n: usize) -> usize {
    // binomial(2n, n) / (n + 1)
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (2 * (n as u128) - i) / (i + 1);
    }
    (c / (n as u128 + 1)) as usize
}

/// Lattice self-test: the product identities for normal subgroups.
pub fn check_modular_law(group: &str, budget: &Budget) -> CheckReport {
    let started = Instant::now();
    let report = CheckReport::new("modular-law", group);
    let data = match GroupData::build(group) {
        Ok(d) => d,
        Err(e) => return skip(report, started, &e.to_string()),
    };
    if budget.check().is_err() {
        return skip(report, started, "time budget exceeded");
    }
    if !modular_product_check(&data) {
        return fail(
            report,
            started,
            serde_json::json!({"kind": "modular-law"}),
            "a product identity fails".into(),
        );
    }
    let mut r = finish(report, started);
    r.detail = format!("{} subgroups checked", data.lattice.count());
    r
}

/// The theorem/group matrix of the default verification suite.
pub fn default_suite() -> Vec<(&'static str, &'static str)> {
    const GROUPS: [&str; 13] = [
        "C2", "C3", "C4", "C6", "C8", "C12", "C2xC2", "C2xC4", "S3", "Q8", "A4", "D8", "Q8xC3",
    ];
    let mut entries = Vec::new();
    for g in GROUPS {
        entries.push(("modular-law", g));
    }
    for g in ["C1", "C2", "C4", "C8", "C16", "C3", "C9", "C27"] {
        entries.push(("catalan", g));
    }
    for g in ["C4", "C8", "C12", "C2xC2", "C2xC4", "S3", "Q8", "A4", "D8"] {
        entries.push(("bisaturated", g));
    }
    for g in GROUPS {
        entries.push(("disc-eq-linear", g));
    }
    for g in GROUPS {
        entries.push(("l-refines-d", g));
    }
    for g in ["C2", "C4", "C6", "C8", "C12", "C2xC2", "C2xC4"] {
        entries.push(("hull", g));
    }
    for g in ["C4", "C6", "S3"] {
        entries.push(("compatible-pairs", g));
    }
    for g in ["C2", "C3", "C4", "C8", "S3", "A4", "Q8", "D8"] {
        entries.push(("saturated", g));
    }
    for g in ["S3", "A4"] {
        entries.push(("pq-implication", g));
    }
    for g in ["S3", "Q8", "A4", "D8", "Q8xC3"] {
        entries.push(("complete-restriction", g));
    }
    for g in ["Q8", "Q8xC2", "Q8xC3"] {
        entries.push(("hamiltonian", g));
    }
    entries
}

/// Groups the suite asserts to be saturated / not saturated.
pub fn expected_saturated(group: &str) -> Option<bool> {
    match group {
        // cyclic prime-power groups are saturated
        "C1" | "C2" | "C3" | "C4" | "C5" | "C7" | "C8" | "C9" | "C16" | "C27" => Some(true),
        // minimal non-abelian, symmetric/alternating and Hamiltonian groups
        // are not
        "S3" | "S4" | "A4" | "A5" | "Q8" | "D8" | "Q8xC2" | "Q8xC3" => Some(false),
        _ => None,
    }
}

/// Saturation check against the recorded expectation, or informational when
/// no expectation exists for the group (the verdict then only reflects the
/// scan completing).
fn saturated_with_expectation(
    ctx: &Arc<UniverseCtx>,
    field: Field,
    group: &str,
    budget: &Budget,
) -> CheckReport {
    match expected_saturated(group) {
        Some(expect) => check_saturated(ctx, field, expect, budget),
        None => {
            let started = Instant::now();
            let name = match field {
                Field::Real => "saturated",
                Field::Complex => "saturated-complex",
            };
            let report = CheckReport::new(name, group);
            match saturation_scan(ctx, field, budget) {
                Ok(scan) => {
                    let mut r = finish(report, started);
                    r.detail = if scan.unrealizable.is_empty() {
                        format!(
                            "computed (no recorded assertion): saturated, {} systems realized",
                            scan.saturated_count
                        )
                    } else {
                        format!(
                            "computed (no recorded assertion): NOT saturated, {}/{} unrealizable",
                            scan.unrealizable.len(),
                            scan.saturated_count
                        )
                    };
                    r.witness = scan.unrealizable.first().map(|t| {
                        serde_json::json!({
                            "kind": "unrealizable-saturated-system",
                            "pairs": t.nonreflexive_pairs(),
                            "field": field.as_str(),
                        })
                    });
                    r
                }
                Err(e) => skip(report, started, &e.to_string()),
            }
        }
    }
}

/// Run one named check; theorem ids are the ones used by [`default_suite`].
pub fn run_check(theorem: &str, group: &str, budget: &Budget, seed: u64) -> Result<CheckReport> {
    match theorem {
        "catalan" => return Ok(check_catalan(group, budget)),
        "modular-law" => return Ok(check_modular_law(group, budget)),
        _ => {}
    }
    let data = GroupData::build(group)?;
    let ctx = UniverseCtx::build_seeded(&data, seed)?;
    Ok(match theorem {
        "bisaturated" => check_bisaturated_bijection(&ctx, budget),
        "disc-eq-linear" => check_disc_equals_linear(&ctx, budget),
        "l-refines-d" => check_l_refines_d(&ctx, budget),
        "hull" => check_hull_disc(&ctx, budget),
        "compatible-pairs" => check_compatible_pairs(&ctx, budget),
        "saturated" => saturated_with_expectation(&ctx, Field::Real, group, budget),
        "saturated-complex" => saturated_with_expectation(&ctx, Field::Complex, group, budget),
        "pq-implication" => check_pq_implication(&ctx, budget),
        "complete-restriction" => check_complete_restriction(&ctx, budget),
        "hamiltonian" => check_hamiltonian(&ctx, budget),
        _ => return Err(Error::BadArgument(format!("unknown theorem `{theorem}`"))),
    })
}

/// Run a batch of checks in a parallel pool; reports come back in the given
/// deterministic order.
pub fn run_suite(
    entries: &[(&str, &str)],
    budget_ms: u64,
    seed: u64,
) -> Vec<CheckReport> {
    entries
        .par_iter()
        .map(|&(theorem, group)| {
            let budget = Budget::from_millis(budget_ms);
            run_check(theorem, group, &budget, seed).unwrap_or_else(|e| CheckReport {
                theorem: theorem.into(),
                group: group.into(),
                verdict: Verdict::FailsWithWitness,
                witness: Some(serde_json::json!({"kind": "error", "message": e.to_string()})),
                millis: 0,
                detail: format!("internal error: {e}"),
            })
        })
        .collect()
}

/// Re-verify a report from its embedded witness: an unrealizable-system
/// witness is replayed against a fresh scan; reports without a witness are
/// replayed by re-running the whole check. Returns whether the original
/// verdict is reproduced.
pub fn replay(report: &CheckReport, budget: &Budget, seed: u64) -> Result<bool> {
    if let Some(witness) = &report.witness {
        if witness["kind"] == "unrealizable-saturated-system" {
            let data = GroupData::build(&report.group)?;
            let ctx = UniverseCtx::build_seeded(&data, seed)?;
            let ts = TransferSystem::from_json(
                &data,
                &serde_json::json!({"pairs": witness["pairs"]}),
            )?;
            if !ts.is_saturated() {
                return Ok(false);
            }
            let field = if witness["field"] == "complex" { Field::Complex } else { Field::Real };
            let realizable = realizable_linear_rows(&ctx, field, budget)?;
            let unrealizable = !realizable.contains(ts.rows());
            // the witness supported a Holds verdict for an expected
            // non-saturation (or a failure report); either way the claim is
            // that the system is unrealizable
            return Ok(unrealizable);
        }
    }
    let fresh = run_check(&report.theorem, &report.group, budget, seed)?;
    Ok(fresh.verdict == report.verdict)
}
