//! Change-of-group maps on transfer systems: restriction, induction,
//! coinduction (abelian ambient group), fixed points and inflation.

use crate::error::{Error, Result};
use crate::lattice::{QuotientData, SubgroupEmbedding};
use crate::transfer::{generate, validate, Relation, TransferSystem};

/// Restriction to a subgroup: keep exactly the pairs lying under H,
/// reindexed to H's own lattice.
pub fn restrict(t: &TransferSystem, emb: &SubgroupEmbedding) -> Result<TransferSystem> {
    if !crate::lattice::GroupData::same_lattice(t.data(), &emb.parent) {
        return Err(Error::LatticeMismatch);
    }
    let clat = &emb.child.lattice;
    let mut rel = Relation::empty(&emb.child)?;
    for a in 0..clat.count() {
        for b in 0..clat.count() {
            if clat.leq(a, b)
                && t.has(emb.sub_to_parent[a] as usize, emb.sub_to_parent[b] as usize)
            {
                rel.insert(a, b)?;
            }
        }
    }
    TransferSystem::new(rel)
}

/// Induction from a subgroup: the reflexive-transitive closure of all
/// conjugates of the pairs of P.
///
/// The closure is also expected to be restriction-closed; if that ever fails
/// the offending pair is logged and the full generation algorithm is used
/// instead.
pub fn induce(p: &TransferSystem, emb: &SubgroupEmbedding) -> Result<TransferSystem> {
    if !crate::lattice::GroupData::same_lattice(p.data(), &emb.child) {
        return Err(Error::LatticeMismatch);
    }
    let parent = &emb.parent;
    let lat = &parent.lattice;
    let mut rel = Relation::empty(parent)?;
    for (a, b) in p.pairs() {
        let (pa, pb) = (emb.sub_to_parent[a] as usize, emb.sub_to_parent[b] as usize);
        for g in 0..parent.table.order() {
            rel.insert(lat.conj_sub(g, pa), lat.conj_sub(g, pb))?;
        }
    }
    // reflexive and transitive closure only
    let mut rows = rel.rows().to_vec();
    for (i, row) in rows.iter_mut().enumerate() {
        *row |= 1u64 << i;
    }
    loop {
        let mut changed = false;
        for i in 0..rows.len() {
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
    let closed = Relation::from_pairs(
        parent,
        &rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| {
                (0..rows.len()).filter(move |&j| r >> j & 1 != 0).map(move |j| (i, j))
            })
            .collect::<Vec<_>>(),
    )?;
    if validate(&closed) {
        return TransferSystem::new(closed);
    }
    // find an offending pair for the log, then fall back to full closure
    let n = lat.count();
    'search: for l in 0..n {
        for h in 0..n {
            if !closed.has(l, h) {
                continue;
            }
            for k in 0..n {
                if lat.leq(k, h) && !closed.has(lat.meet(k, l), k) {
                    log::warn!(
                        "induced relation over {} not restriction-closed at ({}, {}); \
                         falling back to full generation",
                        parent.table.name(),
                        lat.meet(k, l),
                        k
                    );
                    break 'search;
                }
            }
        }
    }
    Ok(generate(&closed))
}

/// Coinduction from a subgroup of an abelian group:
/// L -> K iff (L ∩ H) -> (K ∩ H) in P.
pub fn coinduce(p: &TransferSystem, emb: &SubgroupEmbedding) -> Result<TransferSystem> {
    if !crate::lattice::GroupData::same_lattice(p.data(), &emb.child) {
        return Err(Error::LatticeMismatch);
    }
    let parent = &emb.parent;
    if !parent.table.is_abelian() {
        return Err(Error::NonAbelian(parent.table.name().into()));
    }
    let lat = &parent.lattice;
    let h = emb.subgroup_index;
    let mut rel = Relation::empty(parent)?;
    for l in 0..lat.count() {
        for k in 0..lat.count() {
            if !lat.leq(l, k) {
                continue;
            }
            let lh = emb.parent_to_sub[lat.meet(l, h)].expect("meet with H is under H");
            let kh = emb.parent_to_sub[lat.meet(k, h)].expect("meet with H is under H");
            if p.has(lh as usize, kh as usize) {
                rel.insert(l, k)?;
            }
        }
    }
    TransferSystem::new(rel)
}

/// Fixed points along a normal subgroup: keep transfers above N, transported
/// to the quotient lattice.
pub fn fixed_points(t: &TransferSystem, qd: &QuotientData) -> Result<TransferSystem> {
    if !crate::lattice::GroupData::same_lattice(t.data(), &qd.parent) {
        return Err(Error::LatticeMismatch);
    }
    let qlat = &qd.quotient.lattice;
    let mut rel = Relation::empty(&qd.quotient)?;
    for a in 0..qlat.count() {
        for b in 0..qlat.count() {
            if qlat.leq(a, b) && t.has(qd.sub_lift[a] as usize, qd.sub_lift[b] as usize) {
                rel.insert(a, b)?;
            }
        }
    }
    TransferSystem::new(rel)
}

/// Inflation along a quotient map: the least transfer system containing every
/// lifted pair {K -> H : N <= K <= H, K/N -> H/N in Q}.
pub fn inflate(q: &TransferSystem, qd: &QuotientData) -> Result<TransferSystem> {
    if !crate::lattice::GroupData::same_lattice(q.data(), &qd.quotient) {
        return Err(Error::LatticeMismatch);
    }
    let lat = &qd.parent.lattice;
    let n_idx = qd.normal_index;
    let mut rel = Relation::empty(&qd.parent)?;
    for k in 0..lat.count() {
        if !lat.leq(n_idx, k) {
            continue;
        }
        for h in 0..lat.count() {
            if !lat.leq(k, h) {
                continue;
            }
            let (qk, qh) = (qd.sub_proj[k].unwrap() as usize, qd.sub_proj[h].unwrap() as usize);
            if q.has(qk, qh) {
                rel.insert(k, h)?;
            }
        }
    }
    Ok(generate(&rel))
}
