//! Subgroup lattices of small finite groups, with quotient and
//! change-of-group bookkeeping.
//!
//! Subgroups are element bitmasks, canonically ordered by (order, mask).
//! Index 0 is the trivial subgroup, the last index is the whole group.

use crate::error::{Error, Result};
use crate::group::GroupTable;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// A group table together with its subgroup lattice. Most of the crate
/// operates on `Arc<GroupData>` so transfer systems and universes can share
/// their context cheaply.
pub struct GroupData {
    pub table: GroupTable,
    pub lattice: SubgroupLattice,
}

impl GroupData {
    pub fn build(spec: &str) -> Result<Arc<Self>> {
        Self::from_table(crate::group::build_group(spec)?)
    }

    pub fn from_table(table: GroupTable) -> Result<Arc<Self>> {
        let lattice = SubgroupLattice::compute(&table)?;
        Ok(Arc::new(GroupData { table, lattice }))
    }

    /// Two handles describe the same lattice if they are literally shared or
    /// structurally identical.
    pub fn same_lattice(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.table.order() == b.table.order() && a.lattice.masks == b.lattice.masks)
    }
}

impl std::fmt::Debug for GroupData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupData({}, {} subgroups)", self.table.name(), self.lattice.count())
    }
}

pub struct SubgroupLattice {
    masks: Vec<u64>,
    orders: Vec<usize>,
    n: usize,
    /// leq[i * n + j] == true iff subgroup i is contained in subgroup j.
    leq: Vec<bool>,
    /// For n <= 64: bitmask of subgroups contained in i / containing i.
    under: Option<Vec<u64>>,
    over: Option<Vec<u64>>,
    meet: Vec<u16>,
    join: Vec<u16>,
    /// conj[g][i] = index of g·H_i·g^{-1}.
    conj: Vec<Vec<u16>>,
    normal: Vec<bool>,
    cocyclic: Vec<bool>,
    abelian: Vec<bool>,
    cyclic_of: Vec<u16>,
    mask_index: HashMap<u64, u16>,
}

impl SubgroupLattice {
    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.masks[i]
    }

    pub fn order(&self, i: usize) -> usize {
        self.orders[i]
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.n + j] as usize
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.n + j] as usize
    }

    pub fn conj_sub(&self, g: usize, i: usize) -> usize {
        self.conj[g][i] as usize
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn is_cocyclic(&self, i: usize) -> bool {
        self.cocyclic[i]
    }

    pub fn is_abelian_subgroup(&self, i: usize) -> bool {
        self.abelian[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n - 1
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.mask_index.get(&mask).map(|&i| i as usize)
    }

    /// Index of the cyclic subgroup generated by an element.
    pub fn cyclic_subgroup_of(&self, elem: usize) -> usize {
        self.cyclic_of[elem] as usize
    }

    /// Bitmask over subgroup indices of all subgroups contained in `h`.
    /// Only available when the lattice has at most 64 subgroups.
    pub fn under_mask(&self, h: usize) -> Option<u64> {
        self.under.as_ref().map(|u| u[h])
    }

    /// Bitmask over subgroup indices of all subgroups containing `i`.
    pub fn over_mask(&self, i: usize) -> Option<u64> {
        self.over.as_ref().map(|o| o[i])
    }

    pub fn normal_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.normal[i]).collect()
    }

    /// Covering pairs (i, j) of the containment order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.n {
            'outer: for j in 0..self.n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if k != i && k != j && self.leq(i, k) && self.leq(k, j) {
                        continue 'outer;
                    }
                }
                edges.push((i, j));
            }
        }
        edges
    }

    fn compute(table: &GroupTable) -> Result<Self> {
        let g_order = table.order();
        // all cyclic subgroups
        let mut cyclic_masks: Vec<u64> = Vec::new();
        let mut cyclic_of_elem = vec![0u64; g_order];
        for a in 0..g_order {
            let m = table.subgroup_closure(1u64 << a);
            cyclic_of_elem[a] = m;
            if !cyclic_masks.contains(&m) {
                cyclic_masks.push(m);
            }
        }
        // every subgroup is an iterated join of cyclic subgroups
        let mut seen: HashMap<u64, ()> = HashMap::new();
        let mut all: Vec<u64> = vec![1u64];
        seen.insert(1u64, ());
        let mut head = 0;
        while head < all.len() {
            let base = all[head];
            head += 1;
            for &c in &cyclic_masks {
                let j = table.subgroup_closure(base | c);
                if seen.insert(j, ()).is_none() {
                    all.push(j);
                }
            }
        }
        all.sort_by_key(|&m| (m.count_ones(), m));
        let n = all.len();
        let mut mask_index = HashMap::with_capacity(n);
        for (i, &m) in all.iter().enumerate() {
            mask_index.insert(m, i as u16);
        }
        let orders: Vec<usize> = all.iter().map(|m| m.count_ones() as usize).collect();

        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = all[i] & !all[j] == 0;
            }
        }
        let (under, over) = if n <= 64 {
            let mut u = vec![0u64; n];
            let mut o = vec![0u64; n];
            for i in 0..n {
                for j in 0..n {
                    if leq[i * n + j] {
                        u[j] |= 1u64 << i;
                        o[i] |= 1u64 << j;
                    }
                }
            }
            (Some(u), Some(o))
        } else {
            (None, None)
        };

        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for i in 0..n {
            for j in i..n {
                let m = mask_index[&(all[i] & all[j])];
                let jn = mask_index[&table.subgroup_closure(all[i] | all[j])];
                meet[i * n + j] = m;
                meet[j * n + i] = m;
                join[i * n + j] = jn;
                join[j * n + i] = jn;
            }
        }

        let mut conj = Vec::with_capacity(g_order);
        for g in 0..g_order {
            let mut row = Vec::with_capacity(n);
            for &m in &all {
                let mut cm = 0u64;
                let mut bits = m;
                while bits != 0 {
                    let h = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    cm |= 1u64 << table.conj(g, h);
                }
                row.push(mask_index[&cm]);
            }
            conj.push(row);
        }

        let normal: Vec<bool> =
            (0..n).map(|i| (0..g_order).all(|g| conj[g][i] as usize == i)).collect();

        let abelian: Vec<bool> = all
            .iter()
            .map(|&m| {
                let elems: Vec<usize> = mask_elems(m);
                elems
                    .iter()
                    .all(|&a| elems.iter().all(|&b| table.mul(a, b) == table.mul(b, a)))
            })
            .collect();

        // H is cocyclic when it is normal and some coset generates G/H.
        let cocyclic: Vec<bool> = (0..n)
            .map(|i| {
                if !normal[i] {
                    return false;
                }
                let index = g_order / orders[i];
                (0..g_order).any(|g| coset_order(table, all[i], g) == index)
            })
            .collect();

        let cyclic_of: Vec<u16> = cyclic_of_elem.iter().map(|m| mask_index[m]).collect();

        Ok(SubgroupLattice {
            masks: all,
            orders,
            n,
            leq,
            under,
            over,
            meet,
            join,
            conj,
            normal,
            cocyclic,
            abelian,
            cyclic_of,
            mask_index,
        })
    }
}

fn mask_elems(m: u64) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    let mut bits = m;
    while bits != 0 {
        v.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    v
}

/// Smallest k >= 1 with g^k in H.
fn coset_order(table: &GroupTable, h_mask: u64, g: usize) -> usize {
    let mut x = g;
    let mut k = 1;
    while h_mask & (1u64 << x) == 0 {
        x = table.mul(x, g);
        k += 1;
    }
    k
}

/// Product set A·B as an element mask.
pub fn product_mask(table: &GroupTable, a: u64, b: u64) -> u64 {
    let mut m = 0u64;
    for x in mask_elems(a) {
        for y in mask_elems(b) {
            m |= 1u64 << table.mul(x, y);
        }
    }
    m
}

/// Normal core of `h` inside `gp`: the intersection of all conjugates of `h`
/// by elements of `gp`. Requires `h <= gp`.
pub fn normal_core(data: &GroupData, h: usize, gp: usize) -> Result<usize> {
    let lat = &data.lattice;
    if !lat.leq(h, gp) {
        return Err(Error::NotContained { sub: h, sup: gp });
    }
    let mut core = h;
    for g in mask_elems(lat.mask(gp)) {
        core = lat.meet(core, lat.conj_sub(g, h));
    }
    Ok(core)
}

/// Lattice self-test: for every normal N and all H, K, the two product
/// identities `NH ∩ K = N(H∩K)` (K >= N) and `NH ∩ K = (N∩K)H` (K >= H)
/// hold, and NH is the join of N and H.
pub fn modular_product_check(data: &GroupData) -> bool {
    let lat = &data.lattice;
    let t = &data.table;
    let n = lat.count();
    for ni in 0..n {
        if !lat.is_normal(ni) {
            continue;
        }
        for h in 0..n {
            let nh = product_mask(t, lat.mask(ni), lat.mask(h));
            if lat.index_of_mask(nh) != Some(lat.join(ni, h)) {
                return false;
            }
            for k in 0..n {
                let km = lat.mask(k);
                if lat.leq(ni, k) {
                    let lhs = nh & km;
                    let rhs = product_mask(t, lat.mask(ni), lat.mask(h) & km);
                    if lhs != rhs {
                        return false;
                    }
                }
                if lat.leq(h, k) {
                    let lhs = nh & km;
                    let rhs = product_mask(t, lat.mask(ni) & km, lat.mask(h));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Non-abelian with every proper subgroup abelian.
pub fn is_minimal_nonabelian(data: &GroupData) -> bool {
    let lat = &data.lattice;
    if data.table.is_abelian() {
        return false;
    }
    (0..lat.count() - 1).all(|i| lat.is_abelian_subgroup(i))
}

/// A quotient `G/N` with translation maps in both directions.
pub struct QuotientData {
    pub parent: Arc<GroupData>,
    pub normal_index: usize,
    pub quotient: Arc<GroupData>,
    /// parent element -> quotient element
    pub proj: Vec<u8>,
    /// quotient subgroup index -> parent subgroup index (its full preimage)
    pub sub_lift: Vec<u16>,
    /// parent subgroup index -> quotient subgroup index, for subgroups >= N
    pub sub_proj: Vec<Option<u16>>,
}

pub fn quotient(data: &Arc<GroupData>, n_idx: usize) -> Result<QuotientData> {
    let lat = &data.lattice;
    let t = &data.table;
    if !lat.is_normal(n_idx) {
        return Err(Error::NotNormal(n_idx));
    }
    let n_mask = lat.mask(n_idx);
    let g_order = t.order();
    // cosets ordered by minimal element; the identity coset N comes first
    let mut coset_of = vec![usize::MAX; g_order];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..g_order {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for x in mask_elems(n_mask) {
            coset_of[t.mul(g, x)] = id;
        }
    }
    let q_order = reps.len();
    let mut mul = vec![0u8; q_order * q_order];
    for a in 0..q_order {
        for b in 0..q_order {
            mul[a * q_order + b] = coset_of[t.mul(reps[a], reps[b])] as u8;
        }
    }
    let name = format!("{}/N{}", t.name(), n_idx);
    let q_table = GroupTable::from_table(name, q_order, mul)?;
    let quotient = GroupData::from_table(q_table)?;

    let qlat = &quotient.lattice;
    let mut sub_lift = Vec::with_capacity(qlat.count());
    let mut sub_proj = vec![None; lat.count()];
    for qs in 0..qlat.count() {
        let qm = qlat.mask(qs);
        let mut pm = 0u64;
        for g in 0..g_order {
            if qm & (1u64 << coset_of[g]) != 0 {
                pm |= 1u64 << g;
            }
        }
        let pi = lat
            .index_of_mask(pm)
            .ok_or_else(|| Error::Validation("coset union is not a subgroup".into()))?;
        sub_lift.push(pi as u16);
        sub_proj[pi] = Some(qs as u16);
    }
    // order isomorphism sanity: every parent subgroup above N is hit
    for i in 0..lat.count() {
        if lat.leq(n_idx, i) && sub_proj[i].is_none() {
            return Err(Error::Validation(format!("subgroup {i} above N has no image")));
        }
    }

    Ok(QuotientData {
        parent: data.clone(),
        normal_index: n_idx,
        quotient,
        proj: coset_of.iter().map(|&c| c as u8).collect(),
        sub_lift,
        sub_proj,
    })
}

/// A subgroup H <= G as a standalone group, with element and subgroup
/// translation maps.
pub struct SubgroupEmbedding {
    pub parent: Arc<GroupData>,
    pub subgroup_index: usize,
    pub child: Arc<GroupData>,
    /// child element -> parent element
    pub elem_to_parent: Vec<u8>,
    /// child subgroup index -> parent subgroup index
    pub sub_to_parent: Vec<u16>,
    /// parent subgroup index -> child subgroup index, for subgroups <= H
    pub parent_to_sub: Vec<Option<u16>>,
}

pub fn subgroup_embedding(data: &Arc<GroupData>, idx: usize) -> Result<SubgroupEmbedding> {
    let lat = &data.lattice;
    let t = &data.table;
    let h_mask = lat.mask(idx);
    let elems = mask_elems(h_mask);
    let order = elems.len();
    let mut pos = vec![usize::MAX; t.order()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = pos[t.mul(elems[a], elems[b])] as u8;
        }
    }
    let name = format!("{}[H{}]", t.name(), idx);
    let child = GroupData::from_table(GroupTable::from_table(name, order, mul)?)?;

    let clat = &child.lattice;
    let mut sub_to_parent = Vec::with_capacity(clat.count());
    let mut parent_to_sub = vec![None; lat.count()];
    for cs in 0..clat.count() {
        let cm = clat.mask(cs);
        let mut pm = 0u64;
        for b in mask_elems(cm) {
            pm |= 1u64 << elems[b];
        }
        let pi = lat
            .index_of_mask(pm)
            .ok_or_else(|| Error::Validation("child subgroup missing in parent".into()))?;
        sub_to_parent.push(pi as u16);
        parent_to_sub[pi] = Some(cs as u16);
    }

    Ok(SubgroupEmbedding {
        parent: data.clone(),
        subgroup_index: idx,
        child,
        elem_to_parent: elems.iter().map(|&e| e as u8).collect(),
        sub_to_parent,
        parent_to_sub,
    })
}

#[derive(Serialize)]
struct SubgroupJson {
    order: usize,
    mask: u64,
}

/// JSON export: `{subgroups:[{order,mask}], normal:[...], hasse_edges:[[i,j],...]}`.
pub fn lattice_json(data: &GroupData) -> serde_json::Value {
    let lat = &data.lattice;
    let subgroups: Vec<SubgroupJson> = (0..lat.count())
        .map(|i| SubgroupJson { order: lat.order(i), mask: lat.mask(i) })
        .collect();
    serde_json::json!({
        "subgroups": subgroups,
        "normal": lat.normal_indices(),
        "hasse_edges": lat.hasse_edges(),
    })
}

/// DOT digraph of the subgroup lattice (Hasse diagram, edges point up).
pub fn lattice_dot(data: &GroupData) -> String {
    let lat = &data.lattice;
    let mut s = String::new();
    s.push_str(&format!("digraph \"{}\" {{\n  rankdir=BT;\n", data.table.name()));
    for i in 0..lat.count() {
        let shape = if lat.is_normal(i) { "ellipse" } else { "box" };
        s.push_str(&format!(
            "  n{} [label=\"H{} (order {})\", shape={}];\n",
            i,
            i,
            lat.order(i),
            shape
        ));
    }
    for (i, j) in lat.hasse_edges() {
        s.push_str(&format!("  n{i} -> n{j};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn data(spec: &str) -> Arc<GroupData> {
        GroupData::build(spec).unwrap()
    }

    /// Independent subgroup oracle: close every subset of elements (as a
    /// meet over all generated-by-subset subgroups this is exhaustive for
    /// small orders).
    fn oracle_subgroup_count(t: &GroupTable) -> usize {
        use std::collections::HashSet;
        let n = t.order();
        assert!(n <= 16, "oracle only for tiny groups");
        let mut set = HashSet::new();
        for m in 0..(1u64 << n) {
            set.insert(t.subgroup_closure(m));
        }
        set.len()
    }

    #[test]
    fn counts_for_small_groups() {
        assert_eq!(data("C1").lattice.count(), 1);
        assert_eq!(data("S3").lattice.count(), 6);
        assert_eq!(data("Q8").lattice.count(), 6);
        assert_eq!(data("A4").lattice.count(), 10);
        assert_eq!(data("D8").lattice.count(), 10);
        assert_eq!(data("C12").lattice.count(), 6);
        assert_eq!(data("Q8xC3").lattice.count(), 12);
        assert_eq!(data("S4").lattice.count(), 30);
        // dicyclic lattices: the order-4 subgroups of Q12 are conjugate
        let q12 = data("Q12");
        assert_eq!(q12.lattice.count(), 8);
        assert_eq!(q12.lattice.normal_indices().len(), 5);
        let q16 = data("Q16");
        assert_eq!(q16.lattice.count(), 11);
        assert_eq!(q16.lattice.normal_indices().len(), 7);
    }

    #[test]
    fn oracle_agrees_on_subgroup_counts() {
        for spec in ["C8", "C12", "S3", "Q8", "D8", "A4", "C2xC4", "C2xC2xC2"] {
            let d = data(spec);
            assert_eq!(d.lattice.count(), oracle_subgroup_count(&d.table), "{spec}");
        }
    }

    #[test]
    fn q8_all_normal() {
        let d = data("Q8");
        assert!((0..6).all(|i| d.lattice.is_normal(i)));
    }

    #[test]
    fn s3_structure() {
        let d = data("S3");
        let lat = &d.lattice;
        assert_eq!(lat.order(0), 1);
        assert_eq!(lat.order(lat.top()), 6);
        let normals = lat.normal_indices();
        assert_eq!(normals.len(), 3); // 1, A3, S3
        // three conjugate C2s with trivial core
        let c2s: Vec<usize> = (0..6).filter(|&i| lat.order(i) == 2).collect();
        assert_eq!(c2s.len(), 3);
        for &h in &c2s {
            assert_eq!(normal_core(&d, h, lat.top()).unwrap(), lat.bottom());
        }
    }

    #[test]
    fn normal_core_trivial_cases() {
        let d = data("Q8");
        let lat = &d.lattice;
        for h in 0..lat.count() {
            // H normal in G: core is H itself
            assert_eq!(normal_core(&d, h, lat.top()).unwrap(), h);
            // core within H itself is H
            assert_eq!(normal_core(&d, h, h).unwrap(), h);
        }
        assert!(normal_core(&data("S3"), 5, 0).is_err());
    }

    #[test]
    fn lagrange_and_lattice_laws() {
        for spec in ["C12", "S3", "Q8", "A4", "D8", "C2xC4"] {
            let d = data(spec);
            let lat = &d.lattice;
            let n = lat.count();
            for i in 0..n {
                assert_eq!(d.table.order() % lat.order(i), 0, "{spec}: Lagrange");
                assert_eq!(lat.meet(i, i), i);
                assert_eq!(lat.join(i, i), i);
                for j in 0..n {
                    // absorption
                    assert_eq!(lat.meet(i, lat.join(i, j)), i);
                    assert_eq!(lat.join(i, lat.meet(i, j)), i);
                    // meet is the greatest lower bound
                    let m = lat.meet(i, j);
                    assert!(lat.leq(m, i) && lat.leq(m, j));
                    for k in 0..n {
                        if lat.leq(k, i) && lat.leq(k, j) {
                            assert!(lat.leq(k, m));
                        }
                        if lat.leq(i, k) && lat.leq(j, k) {
                            assert!(lat.leq(lat.join(i, j), k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_is_lattice_automorphism() {
        for spec in ["S3", "Q8", "A4", "D8"] {
            let d = data(spec);
            let lat = &d.lattice;
            for g in 0..d.table.order() {
                for i in 0..lat.count() {
                    for j in 0..lat.count() {
                        let ci = lat.conj_sub(g, i);
                        let cj = lat.conj_sub(g, j);
                        assert_eq!(lat.conj_sub(g, lat.meet(i, j)), lat.meet(ci, cj));
                        assert_eq!(lat.conj_sub(g, lat.join(i, j)), lat.join(ci, cj));
                    }
                }
            }
        }
    }

    #[test]
    fn modular_check_on_families() {
        // every built-in test group of order <= 24
        for spec in [
            "C1", "C2", "C3", "C4", "C6", "C8", "C12", "C2xC2", "C2xC4", "S3", "Q8", "A4",
            "D8", "Q8xC3", "S4",
        ] {
            assert!(modular_product_check(&data(spec)), "{spec}");
        }
    }

    #[test]
    fn minimal_nonabelian_families() {
        assert!(!is_minimal_nonabelian(&data("C6")));
        assert!(is_minimal_nonabelian(&data("S3")));
        assert!(is_minimal_nonabelian(&data("A4")));
        assert!(is_minimal_nonabelian(&data("Q8")));
        assert!(is_minimal_nonabelian(&data("D8")));
        assert!(!is_minimal_nonabelian(&data("S4")));
        assert!(!is_minimal_nonabelian(&data("Q8xC3")));
    }

    #[test]
    fn quotient_basics() {
        let d = data("Q8");
        let lat = &d.lattice;
        // N = G gives the trivial quotient
        let q = quotient(&d, lat.top()).unwrap();
        assert_eq!(q.quotient.table.order(), 1);
        // Q8 / center is the Klein group
        let center = (0..lat.count()).find(|&i| lat.order(i) == 2).unwrap();
        let q = quotient(&d, center).unwrap();
        assert_eq!(q.quotient.table.order(), 4);
        assert!((1..4).all(|a| q.quotient.table.element_order(a) == 2));
    }

    #[test]
    fn quotient_c12_by_c4_is_c3() {
        let d = data("C12");
        let lat = &d.lattice;
        let c4 = (0..lat.count()).find(|&i| lat.order(i) == 4).unwrap();
        let q = quotient(&d, c4).unwrap();
        assert_eq!(q.quotient.table.order(), 3);
        // isomorphic to C3: one generator of order 3
        assert_eq!(q.quotient.table.element_order(1), 3);
        let c3 = build_group("C3").unwrap();
        let mut a: Vec<_> = (0..3).map(|x| q.quotient.table.element_order(x)).collect();
        let mut b: Vec<_> = (0..3).map(|x| c3.element_order(x)).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_lift_is_order_isomorphism() {
        for (spec, pick) in [("Q8", 2usize), ("C12", 4), ("A4", 4)] {
            let d = data(spec);
            let lat = &d.lattice;
            let n_idx = (0..lat.count())
                .find(|&i| lat.is_normal(i) && lat.order(i) == pick)
                .unwrap();
            let q = quotient(&d, n_idx).unwrap();
            let qlat = &q.quotient.lattice;
            // bijective onto subgroups above N
            let above: Vec<usize> =
                (0..lat.count()).filter(|&i| lat.leq(n_idx, i)).collect();
            assert_eq!(above.len(), qlat.count());
            for a in 0..qlat.count() {
                for b in 0..qlat.count() {
                    let (la, lb) = (q.sub_lift[a] as usize, q.sub_lift[b] as usize);
                    assert_eq!(qlat.leq(a, b), lat.leq(la, lb));
                }
            }
            // kernel of proj is exactly N
            for g in 0..d.table.order() {
                assert_eq!(q.proj[g] == 0, lat.mask(n_idx) & (1 << g) != 0);
            }
            // proj is a homomorphism
            for a in 0..d.table.order() {
                for b in 0..d.table.order() {
                    let lhs = q.proj[d.table.mul(a, b)];
                    let rhs =
                        q.quotient.table.mul(q.proj[a] as usize, q.proj[b] as usize) as u8;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let d = data("S4");
        let lat = &d.lattice;
        for idx in 0..lat.count() {
            let emb = subgroup_embedding(&d, idx).unwrap();
            assert_eq!(emb.child.table.order(), lat.order(idx));
            // element map is a homomorphism
            let ct = &emb.child.table;
            for a in 0..ct.order() {
                for b in 0..ct.order() {
                    let lhs = emb.elem_to_parent[ct.mul(a, b)] as usize;
                    let rhs = d
                        .table
                        .mul(emb.elem_to_parent[a] as usize, emb.elem_to_parent[b] as usize);
                    assert_eq!(lhs, rhs);
                }
            }
            // subgroup map is order-preserving and injective
            let clat = &emb.child.lattice;
            for a in 0..clat.count() {
                for b in 0..clat.count() {
                    assert_eq!(
                        clat.leq(a, b),
                        lat.leq(emb.sub_to_parent[a] as usize, emb.sub_to_parent[b] as usize)
                    );
                }
            }
        }
    }

    #[test]
    fn cocyclic_flags() {
        let d = data("C12");
        let lat = &d.lattice;
        // every subgroup of a cyclic group is cocyclic
        assert!((0..lat.count()).all(|i| lat.is_cocyclic(i)));
        let d = data("C2xC2");
        let lat = &d.lattice;
        // the trivial subgroup is not cocyclic in the Klein group
        assert!(!lat.is_cocyclic(0));
        assert!(lat.is_cocyclic(lat.top()));
        assert!((1..4).all(|i| lat.is_cocyclic(i)));
        let d = data("S3");
        let lat = &d.lattice;
        // A3 is cocyclic, the C2s are not normal hence not cocyclic
        let a3 = (0..6).find(|&i| lat.order(i) == 3).unwrap();
        assert!(lat.is_cocyclic(a3));
        assert!((0..6).filter(|&i| lat.order(i) == 2).all(|i| !lat.is_cocyclic(i)));
    }

    #[test]
    fn json_and_dot_exports() {
        let d = data("Q8");
        let v = lattice_json(&d);
        assert_eq!(v["subgroups"].as_array().unwrap().len(), 6);
        assert_eq!(v["normal"].as_array().unwrap().len(), 6);
        let dot = lattice_dot(&d);
        assert_eq!(dot.matches("label=").count(), 6);
    }
}
