//! Transfer systems over a subgroup lattice.
//!
//! A transfer system is a partial order on subgroups refining inclusion and
//! closed under conjugation and restriction. It is stored as one bit per
//! ordered subgroup pair, one `u64` row per source subgroup, which limits
//! transfer-system machinery to lattices with at most 64 subgroups.

use crate::error::{Error, Result};
use crate::lattice::GroupData;
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

/// Exhaustive enumeration refuses lattices with more subgroups than this
/// (the pointwise operations continue to work up to 64 subgroups).
pub const DEFAULT_SUBGROUP_CAP: usize = 40;

/// A binary relation on subgroup indices in which every pair respects
/// containment. Row `i`, bit `j` means `i -> j`.
#[derive(Clone)]
pub struct Relation {
    data: Arc<GroupData>,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(data: &Arc<GroupData>) -> Result<Self> {
        let n = data.lattice.count();
        if n > 64 {
            return Err(Error::Infeasible(format!(
                "transfer systems need at most 64 subgroups, lattice has {n}"
            )));
        }
        Ok(Relation { data: data.clone(), rows: vec![0u64; n] })
    }

    pub fn from_pairs(data: &Arc<GroupData>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Relation::empty(data)?;
        for &(i, j) in pairs {
            rel.insert(i, j)?;
        }
        Ok(rel)
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        let lat = &self.data.lattice;
        if i >= lat.count() || j >= lat.count() || !lat.leq(i, j) {
            return Err(Error::PairNotContainment(i, j));
        }
        self.rows[i] |= 1u64 << j;
        Ok(())
    }

    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 != 0
    }

    pub fn data(&self) -> &Arc<GroupData> {
        &self.data
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.has(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn nonreflexive_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|&(i, j)| i != j).collect()
    }
}

/// True iff the relation is reflexive, refines inclusion, and is closed
/// under restriction, conjugation and transitivity.
pub fn validate(rel: &Relation) -> bool {
    let lat = &rel.data.lattice;
    let t = &rel.data.table;
    let n = lat.count();
    for i in 0..n {
        if !rel.has(i, i) {
            return false;
        }
        for j in 0..n {
            if rel.has(i, j) && !lat.leq(i, j) {
                return false;
            }
        }
    }
    // conjugation
    for i in 0..n {
        for j in 0..n {
            if !rel.has(i, j) {
                continue;
            }
            for g in 0..t.order() {
                if !rel.has(lat.conj_sub(g, i), lat.conj_sub(g, j)) {
                    return false;
                }
            }
        }
    }
    // restriction: L -> H and K <= H imply (K ∧ L) -> K
    for l in 0..n {
        for h in 0..n {
            if !rel.has(l, h) {
                continue;
            }
            for k in 0..n {
                if lat.leq(k, h) && !rel.has(lat.meet(k, l), k) {
                    return false;
                }
            }
        }
    }
    // transitivity
    for i in 0..n {
        let mut bits = rel.rows[i];
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if rel.rows[j] & !rel.rows[i] != 0 {
                return false;
            }
        }
    }
    true
}

fn close_reflexive(rows: &mut [u64]) {
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1u64 << i;
    }
}

fn close_conjugation(data: &GroupData, rows: &mut [u64]) {
    let lat = &data.lattice;
    let order = data.table.order();
    let n = rows.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut bits = rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for g in 0..order {
                    let (ci, cj) = (lat.conj_sub(g, i), lat.conj_sub(g, j));
                    if rows[ci] >> cj & 1 == 0 {
                        rows[ci] |= 1u64 << cj;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn close_restriction(data: &GroupData, rows: &mut [u64]) {
    let lat = &data.lattice;
    let n = rows.len();
    loop {
        let mut changed = false;
        for l in 0..n {
            let mut bits = rows[l];
            while bits != 0 {
                let h = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut ks = lat.under_mask(h).expect("<= 64 subgroups");
                while ks != 0 {
                    let k = ks.trailing_zeros() as usize;
                    ks &= ks - 1;
                    let m = lat.meet(k, l);
                    if rows[m] >> k & 1 == 0 {
                        rows[m] |= 1u64 << k;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn close_transitivity(rows: &mut [u64]) {
    let n = rows.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut acc = rows[i];
            let mut bits = rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc |= rows[j];
            }
            if acc != rows[i] {
                rows[i] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Closure to the least transfer system containing `rows`: reflexivity, then
/// conjugation, restriction and transitivity in that order, re-run to a
/// global fixpoint so correctness does not depend on the rule order.
fn close_rows(data: &GroupData, rows: &mut Vec<u64>) {
    close_reflexive(rows);
    loop {
        let before = rows.clone();
        close_conjugation(data, rows);
        close_restriction(data, rows);
        close_transitivity(rows);
        if *rows == before {
            break;
        }
    }
}

/// The least transfer system containing the relation.
pub fn generate(rel: &Relation) -> TransferSystem {
    let mut rows = rel.rows.clone();
    close_rows(&rel.data, &mut rows);
    let rel = Relation { data: rel.data.clone(), rows };
    debug_assert!(validate(&rel));
    TransferSystem::from_closed(rel)
}

/// A validated transfer system with its minimal fibrant subgroup cached.
#[derive(Clone)]
pub struct TransferSystem {
    rel: Relation,
    minimal_fibrant: u16,
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        GroupData::same_lattice(&self.rel.data, &other.rel.data) && self.rel.rows == other.rel.rows
    }
}
impl Eq for TransferSystem {}

impl std::fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TransferSystem({}, {:?})",
            self.rel.data.table.name(),
            self.rel.nonreflexive_pairs()
        )
    }
}

impl TransferSystem {
    fn from_closed(rel: Relation) -> Self {
        let lat = &rel.data.lattice;
        let top = lat.top();
        let mut mf = top;
        for i in 0..lat.count() {
            if rel.has(i, top) {
                mf = lat.meet(mf, i);
            }
        }
        TransferSystem { rel, minimal_fibrant: mf as u16 }
    }

    /// Wrap a relation, checking all transfer-system invariants.
    pub fn new(rel: Relation) -> Result<Self> {
        if !validate(&rel) {
            return Err(Error::Validation("relation is not a transfer system".into()));
        }
        Ok(Self::from_closed(rel))
    }

    pub fn minimal_over(data: &Arc<GroupData>) -> Result<Self> {
        let rel = Relation::empty(data)?;
        Ok(generate(&rel))
    }

    pub fn maximal_over(data: &Arc<GroupData>) -> Result<Self> {
        let mut rel = Relation::empty(data)?;
        let lat = &data.lattice;
        for i in 0..lat.count() {
            for j in 0..lat.count() {
                if lat.leq(i, j) {
                    rel.rows[i] |= 1u64 << j;
                }
            }
        }
        Self::new(rel)
    }

    pub fn data(&self) -> &Arc<GroupData> {
        &self.rel.data
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn rows(&self) -> &[u64] {
        &self.rel.rows
    }

    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.rel.has(i, j)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rel.pairs()
    }

    pub fn nonreflexive_pairs(&self) -> Vec<(usize, usize)> {
        self.rel.nonreflexive_pairs()
    }

    /// The least subgroup M with M -> G; always normal.
    pub fn minimal_fibrant(&self) -> usize {
        self.minimal_fibrant as usize
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if GroupData::same_lattice(&self.rel.data, &other.rel.data) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// True iff every pair of `self` is a pair of `other`.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self
            .rel
            .rows
            .iter()
            .zip(&other.rel.rows)
            .all(|(a, b)| a & !b == 0))
    }

    /// Pairwise intersection; already a transfer system.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let rows: Vec<u64> =
            self.rel.rows.iter().zip(&other.rel.rows).map(|(a, b)| a & b).collect();
        let rel = Relation { data: self.rel.data.clone(), rows };
        debug_assert!(validate(&rel));
        Ok(Self::from_closed(rel))
    }

    /// Least transfer system containing both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let rows: Vec<u64> =
            self.rel.rows.iter().zip(&other.rel.rows).map(|(a, b)| a | b).collect();
        let rel = Relation { data: self.rel.data.clone(), rows };
        Ok(generate(&rel))
    }

    /// Whenever L <= K <= H and L -> H, also K -> H.
    pub fn is_saturated(&self) -> bool {
        let lat = &self.rel.data.lattice;
        let n = lat.count();
        // column masks: sources into h
        let mut cols = vec![0u64; n];
        for i in 0..n {
            let mut bits = self.rel.rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cols[j] |= 1u64 << i;
            }
        }
        let mut sat = true;
        'outer: for h in 0..n {
            let under_h = lat.under_mask(h).expect("<= 64 subgroups");
            let mut ls = cols[h];
            while ls != 0 {
                let l = ls.trailing_zeros() as usize;
                ls &= ls - 1;
                let between = lat.over_mask(l).expect("<= 64 subgroups") & under_h;
                if between & !cols[h] != 0 {
                    sat = false;
                    break 'outer;
                }
            }
        }
        debug_assert_eq!(sat, self.two_out_of_three());
        sat
    }

    /// The equivalent two-out-of-three formulation on nested triples.
    fn two_out_of_three(&self) -> bool {
        let lat = &self.rel.data.lattice;
        let n = lat.count();
        for l in 0..n {
            for k in 0..n {
                if !lat.leq(l, k) {
                    continue;
                }
                for h in 0..n {
                    if !lat.leq(k, h) {
                        continue;
                    }
                    let (lk, kh, lh) = (self.has(l, k), self.has(k, h), self.has(l, h));
                    let count = lk as u8 + kh as u8 + lh as u8;
                    if count == 2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff the system is generated by its transfers with target G.
    pub fn is_disclike(&self) -> bool {
        let lat = &self.rel.data.lattice;
        let top = lat.top();
        let mut rel = Relation { data: self.rel.data.clone(), rows: vec![0; lat.count()] };
        for h in 0..lat.count() {
            if self.has(h, top) {
                rel.rows[h] |= 1u64 << top;
            }
        }
        generate(&rel) == *self
    }

    pub fn is_bisaturated(&self) -> bool {
        self.is_saturated() && self.is_disclike()
    }

    /// JSON export `{group, pairs}` listing non-reflexive pairs only.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.rel.data.table.name(),
            "pairs": self.nonreflexive_pairs(),
        })
    }

    pub fn from_json(data: &Arc<GroupData>, v: &serde_json::Value) -> Result<Self> {
        let pairs = v["pairs"]
            .as_array()
            .ok_or_else(|| Error::BadArgument("missing `pairs` array".into()))?;
        let mut rel = Relation::empty(data)?;
        for p in pairs {
            let (i, j) = (
                p[0].as_u64().ok_or_else(|| Error::BadArgument("bad pair".into()))? as usize,
                p[1].as_u64().ok_or_else(|| Error::BadArgument("bad pair".into()))? as usize,
            );
            rel.insert(i, j)?;
        }
        close_reflexive(&mut rel.rows);
        Self::new(rel)
    }

    /// DOT export: transitive reduction of the non-reflexive pairs.
    pub fn to_dot(&self) -> String {
        let lat = &self.rel.data.lattice;
        let n = lat.count();
        let mut s = String::new();
        s.push_str(&format!(
            "digraph \"{}\" {{\n  rankdir=BT;\n",
            self.rel.data.table.name()
        ));
        for i in 0..n {
            s.push_str(&format!("  n{} [label=\"H{} (order {})\"];\n", i, i, lat.order(i)));
        }
        for (i, j) in self.nonreflexive_pairs() {
            let redundant = (0..n)
                .any(|k| k != i && k != j && self.has(i, k) && self.has(k, j));
            if !redundant {
                s.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Sort key: lexicographic on the bit matrix.
pub fn canonical_cmp(a: &TransferSystem, b: &TransferSystem) -> std::cmp::Ordering {
    a.rows().cmp(b.rows())
}

/// All transfer systems over the lattice, canonically ordered.
///
/// Walks the closure system breadth-first: from each known system, close the
/// union with each additional containment pair.
pub fn enumerate_all(data: &Arc<GroupData>, cap: usize) -> Result<Vec<TransferSystem>> {
    enumerate_all_within(data, cap, None)
}

/// [`enumerate_all`] with an optional wall-clock deadline; exceeding it
/// reports infeasibility instead of running on.
pub fn enumerate_all_within(
    data: &Arc<GroupData>,
    cap: usize,
    deadline: Option<std::time::Instant>,
) -> Result<Vec<TransferSystem>> {
    let lat = &data.lattice;
    let n = lat.count();
    if n > cap.min(64) {
        return Err(Error::Infeasible(format!(
            "lattice has {n} subgroups (enumeration cap {})",
            cap.min(64)
        )));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && lat.leq(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let start = TransferSystem::minimal_over(data)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue: VecDeque<Vec<u64>> = VecDeque::new();
    seen.insert(start.rows().to_vec());
    queue.push_back(start.rows().to_vec());
    let mut steps = 0usize;
    while let Some(rows) = queue.pop_front() {
        steps += 1;
        if steps % 64 == 0 {
            if let Some(d) = deadline {
                if std::time::Instant::now() > d {
                    return Err(Error::Infeasible(format!(
                        "enumeration time budget exceeded after {} systems",
                        seen.len()
                    )));
                }
            }
        }
        for &(i, j) in &pairs {
            if rows[i] >> j & 1 != 0 {
                continue;
            }
            let mut next = rows.clone();
            next[i] |= 1u64 << j;
            close_rows(data, &mut next);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<TransferSystem> = seen
        .into_iter()
        .map(|rows| TransferSystem::from_closed(Relation { data: data.clone(), rows }))
        .collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// The saturated transfer system with L -> K iff L = K or L <= K <= H^g for
/// some g.
pub fn witness_ohg(data: &Arc<GroupData>, h: usize) -> Result<TransferSystem> {
    let lat = &data.lattice;
    let n = lat.count();
    let orbit: HashSet<usize> =
        (0..data.table.order()).map(|g| lat.conj_sub(g, h)).collect();
    let mut rel = Relation::empty(data)?;
    for l in 0..n {
        rel.rows[l] |= 1u64 << l;
        for k in 0..n {
            if l != k && lat.leq(l, k) && orbit.iter().any(|&o| lat.leq(k, o)) {
                rel.rows[l] |= 1u64 << k;
            }
        }
    }
    let ts = TransferSystem::new(rel)?;
    if !ts.is_saturated() {
        return Err(Error::Validation("subgroup witness system is not saturated".into()));
    }
    Ok(ts)
}
