//! Isomorphism classes of G-universes and the transfer systems they induce.
//!
//! A universe is stored as the support set of complex irreducibles it
//! contains (with infinite multiplicity); real universes are the supports
//! closed under complex conjugation. The little-discs transfer system D(U)
//! is decided by a strict drop in fixed-space dimensions, the
//! linear-isometries transfer system L(U) by induced/restricted character
//! supports.

use crate::character::{
    appears_in_induced, class_fusion, restriction_multiplicity, CharacterData, DEFAULT_CHAR_SEED,
    TOL,
};
use crate::error::{Error, Result};
use crate::lattice::{subgroup_embedding, GroupData, QuotientData, SubgroupEmbedding};
use crate::transfer::{Relation, TransferSystem};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Arc;

/// Representation-size limit for support bitmasks.
pub const MAX_IRR: usize = 32;
/// Exhaustive support scans refuse groups with more irreducibles than this.
pub const SCAN_IRR_CAP: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// Per-subgroup character data inside a [`UniverseCtx`].
pub struct SubCtx {
    pub emb: SubgroupEmbedding,
    pub chars: CharacterData,
}

/// Everything needed to map universes over a fixed group to transfer
/// systems: the group's character table, standalone character tables for all
/// subgroups, fixed-space dimension tables, and per-pair induction and
/// restriction support masks. Built once per group and shared.
pub struct UniverseCtx {
    pub data: Arc<GroupData>,
    pub chars: CharacterData,
    pub subs: Vec<SubCtx>,
    seed: u64,
    /// fixdim[v][s] = dim V^S
    fixdim: Vec<Vec<u32>>,
    /// distinct joins <K, h> over h in H \ K, for each containment pair
    joins: HashMap<(u16, u16), Vec<u16>>,
    /// drop_mask[k][J] = irreducibles V with dim V^J < dim V^K
    drop_mask: Vec<HashMap<u16, u32>>,
    /// res_mask[h][v] = H-irreducibles appearing in res^G_H V
    res_mask: Vec<Vec<u64>>,
    /// ind_mask[(k, h)][v] = H-irreducibles appearing in ind^H_K res^G_K V
    ind_mask: HashMap<(u16, u16), Vec<u64>>,
    /// orbits of complex conjugation on the non-trivial irreducibles
    conj_orbits: Vec<u32>,
}

impl UniverseCtx {
    pub fn build(data: &Arc<GroupData>) -> Result<Arc<Self>> {
        Self::build_seeded(data, DEFAULT_CHAR_SEED)
    }

    pub fn build_seeded(data: &Arc<GroupData>, seed: u64) -> Result<Arc<Self>> {
        let chars = CharacterData::compute(&data.table, seed)?;
        let k = chars.irr_count();
        if k > MAX_IRR {
            return Err(Error::Infeasible(format!(
                "{} has {k} irreducibles (limit {MAX_IRR})",
                data.table.name()
            )));
        }
        let lat = &data.lattice;
        let n = lat.count();

        let mut subs = Vec::with_capacity(n);
        for s in 0..n {
            let emb = subgroup_embedding(data, s)?;
            let sub_chars = CharacterData::compute(&emb.child.table, seed)?;
            subs.push(SubCtx { emb, chars: sub_chars });
        }

        let mut fixdim = vec![vec![0u32; n]; k];
        for (v, row) in fixdim.iter_mut().enumerate() {
            for (s, cell) in row.iter_mut().enumerate() {
                *cell = chars.fixed_space_dim(v, lat.mask(s))?;
            }
        }

        let mut joins: HashMap<(u16, u16), Vec<u16>> = HashMap::new();
        let mut drop_mask: Vec<HashMap<u16, u32>> = vec![HashMap::new(); n];
        for kk in 0..n {
            for h in 0..n {
                if kk == h || !lat.leq(kk, h) {
                    continue;
                }
                let mut list: Vec<u16> = Vec::new();
                let mut extra = lat.mask(h) & !lat.mask(kk);
                while extra != 0 {
                    let e = extra.trailing_zeros() as usize;
                    extra &= extra - 1;
                    let j = lat.join(kk, lat.cyclic_subgroup_of(e)) as u16;
                    if !list.contains(&j) {
                        list.push(j);
                    }
                }
                for &j in &list {
                    drop_mask[kk].entry(j).or_insert_with(|| {
                        let mut m = 0u32;
                        for v in 0..k {
                            if fixdim[v][j as usize] < fixdim[v][kk] {
                                m |= 1 << v;
                            }
                        }
                        m
                    });
                }
                joins.insert((kk as u16, h as u16), list);
            }
        }

        // per-subgroup restriction supports
        let mut res_mask = vec![Vec::new(); n];
        for h in 0..n {
            let sc = &subs[h];
            let fusion = class_fusion(&chars, &sc.chars, &sc.emb.elem_to_parent);
            let hc = sc.chars.irr_count();
            let mut per_v = vec![0u64; k];
            for (v, cell) in per_v.iter_mut().enumerate() {
                for w in 0..hc {
                    if restriction_multiplicity(&chars, v, &sc.chars, w, &fusion)? > 0 {
                        *cell |= 1u64 << w;
                    }
                }
            }
            res_mask[h] = per_v;
        }

        // per-pair induction supports
        let mut ind_mask: HashMap<(u16, u16), Vec<u64>> = HashMap::new();
        for h in 0..n {
            let sc = &subs[h];
            let hc = sc.chars.irr_count();
            // parent element -> position within H
            let mut pos = vec![usize::MAX; data.table.order()];
            for (i, &e) in sc.emb.elem_to_parent.iter().enumerate() {
                pos[e as usize] = i;
            }
            for kk in 0..n {
                if !lat.leq(kk, h) {
                    continue;
                }
                let mut k_mask_child = 0u64;
                let mut bits = lat.mask(kk);
                while bits != 0 {
                    let e = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    k_mask_child |= 1u64 << pos[e];
                }
                let mut per_v = vec![0u64; k];
                for (v, cell) in per_v.iter_mut().enumerate() {
                    for w in 0..hc {
                        if appears_in_induced(
                            &sc.chars,
                            w,
                            &chars,
                            v,
                            k_mask_child,
                            &sc.emb.elem_to_parent,
                        )? {
                            *cell |= 1u64 << w;
                        }
                    }
                }
                ind_mask.insert((kk as u16, h as u16), per_v);
            }
        }

        let mut conj_orbits = Vec::new();
        let mut seen = 1u32; // trivial row is pinned
        for r in 1..k {
            if seen >> r & 1 != 0 {
                continue;
            }
            let p = chars.conj_partner(r);
            let orbit = (1u32 << r) | (1u32 << p);
            seen |= orbit;
            conj_orbits.push(orbit);
        }

        Ok(Arc::new(UniverseCtx {
            data: data.clone(),
            chars,
            subs,
            seed,
            fixdim,
            joins,
            drop_mask,
            res_mask,
            ind_mask,
            conj_orbits,
        }))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn irr_count(&self) -> usize {
        self.chars.irr_count()
    }

    pub fn same_ctx(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || GroupData::same_lattice(&a.data, &b.data)
    }

    pub fn complete_support(&self) -> u32 {
        ((1u64 << self.irr_count()) - 1) as u32
    }

    pub fn trivial_support(&self) -> u32 {
        1
    }

    /// Support of R[G/N]^infinity: the irreducibles with N in their kernel.
    pub fn regular_quotient_support(&self, n_idx: usize) -> Result<u32> {
        if !self.data.lattice.is_normal(n_idx) {
            return Err(Error::NotNormal(n_idx));
        }
        let mut m = 0u32;
        for v in 0..self.irr_count() {
            if self.fixdim[v][n_idx] as usize == self.chars.dim(v) {
                m |= 1 << v;
            }
        }
        Ok(m)
    }

    /// The trivial irreducible together with every irreducible of degree > 1.
    pub fn dim_gt1_support(&self) -> u32 {
        let mut m = 1u32;
        for v in 1..self.irr_count() {
            if self.chars.dim(v) > 1 {
                m |= 1 << v;
            }
        }
        m
    }

    /// H-irreducibles appearing in the restriction of one G-irreducible.
    pub fn res_mask_for(&self, h: usize, v: usize) -> u64 {
        self.res_mask[h][v]
    }

    pub fn is_conj_closed(&self, support: u32) -> bool {
        (0..self.irr_count())
            .all(|v| support >> v & 1 == 0 || support >> self.chars.conj_partner(v) & 1 == 1)
    }

    fn scan_guard(&self) -> Result<()> {
        if self.irr_count() > SCAN_IRR_CAP {
            return Err(Error::Infeasible(format!(
                "{} has {} irreducibles (scan cap {SCAN_IRR_CAP})",
                self.data.table.name(),
                self.irr_count()
            )));
        }
        Ok(())
    }

    /// All complex supports (every subset containing the trivial row).
    pub fn complex_supports(&self) -> Result<Vec<u32>> {
        self.scan_guard()?;
        let k = self.irr_count();
        Ok((0..1u64 << (k - 1)).map(|m| ((m << 1) | 1) as u32).collect())
    }

    /// All conjugation-closed supports, i.e. real universes.
    pub fn real_supports(&self) -> Result<Vec<u32>> {
        self.scan_guard()?;
        let orbits = &self.conj_orbits;
        let mut out = Vec::with_capacity(1 << orbits.len());
        for m in 0..1u64 << orbits.len() {
            let mut s = 1u32;
            for (b, &orbit) in orbits.iter().enumerate() {
                if m >> b & 1 != 0 {
                    s |= orbit;
                }
            }
            out.push(s);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn supports_for(&self, field: Field) -> Result<Vec<u32>> {
        match field {
            Field::Real => self.real_supports(),
            Field::Complex => self.complex_supports(),
        }
    }

    /// Raw little-discs relation rows for a support.
    pub fn disc_rows(&self, support: u32) -> Vec<u64> {
        let lat = &self.data.lattice;
        let n = lat.count();
        let mut rows = vec![0u64; n];
        for kk in 0..n {
            rows[kk] |= 1u64 << kk;
            for h in 0..n {
                if kk == h || !lat.leq(kk, h) {
                    continue;
                }
                let joins = &self.joins[&(kk as u16, h as u16)];
                let ok = joins
                    .iter()
                    .all(|j| self.drop_mask[kk][j] & support != 0);
                if ok {
                    rows[kk] |= 1u64 << h;
                }
            }
        }
        rows
    }

    /// Raw linear-isometries relation rows for a support.
    pub fn linear_rows(&self, support: u32) -> Vec<u64> {
        let lat = &self.data.lattice;
        let n = lat.count();
        let mut rows = vec![0u64; n];
        for kk in 0..n {
            rows[kk] |= 1u64 << kk;
            for h in 0..n {
                if kk == h || !lat.leq(kk, h) {
                    continue;
                }
                let ind = &self.ind_mask[&(kk as u16, h as u16)];
                let res = &self.res_mask[h];
                let mut need = 0u64;
                let mut have = 0u64;
                let mut bits = support;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    need |= ind[v];
                    have |= res[v];
                }
                if need & !have == 0 {
                    rows[kk] |= 1u64 << h;
                }
            }
        }
        rows
    }

    fn system_from_rows(&self, rows: Vec<u64>) -> Result<TransferSystem> {
        let lat = &self.data.lattice;
        let mut pairs = Vec::new();
        for (i, &row) in rows.iter().enumerate() {
            for j in 0..lat.count() {
                if row >> j & 1 != 0 {
                    pairs.push((i, j));
                }
            }
        }
        TransferSystem::new(Relation::from_pairs(&self.data, &pairs)?)
    }

    /// The little-discs transfer system D(U). The result is checked to be a
    /// valid disc-like transfer system.
    pub fn disc_transfer(&self, support: u32) -> Result<TransferSystem> {
        let ts = self.system_from_rows(self.disc_rows(support))?;
        if !ts.is_disclike() {
            return Err(Error::Validation("little-discs system is not disc-like".into()));
        }
        Ok(ts)
    }

    /// The linear-isometries transfer system L(U). The result is checked to
    /// be a valid saturated transfer system.
    pub fn linear_transfer(&self, support: u32) -> Result<TransferSystem> {
        let ts = self.system_from_rows(self.linear_rows(support))?;
        if !ts.is_saturated() {
            return Err(Error::Validation(
                "linear-isometries system is not saturated".into(),
            ));
        }
        Ok(ts)
    }

    /// The largest support with the same little-discs system. Irreducibles
    /// are tried one at a time against the original support, which is enough
    /// because D preserves joins.
    pub fn closure(&self, support: u32, field: Field) -> u32 {
        let base = self.disc_rows(support);
        let grow = |order: &mut dyn Iterator<Item = usize>| -> u32 {
            let mut acc = support;
            for v in order {
                if support >> v & 1 != 0 {
                    continue;
                }
                let mut cand = support | (1 << v);
                if field == Field::Real {
                    cand |= 1 << self.chars.conj_partner(v);
                }
                if self.disc_rows(cand) == base {
                    acc |= cand;
                }
            }
            acc
        };
        let k = self.irr_count();
        let result = grow(&mut (0..k));
        debug_assert_eq!(result, grow(&mut (0..k).rev()));
        result
    }
}

/// An isomorphism class of G-universe: a support of complex irreducibles
/// containing the trivial one, conjugation-closed when tagged real.
#[derive(Clone)]
pub struct Universe {
    pub ctx: Arc<UniverseCtx>,
    support: u32,
    field: Field,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        UniverseCtx::same_ctx(&self.ctx, &other.ctx)
            && self.support == other.support
            && self.field == other.field
    }
}
impl Eq for Universe {}

impl std::fmt::Debug for Universe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Universe({}, {:?}, {})",
            self.ctx.data.table.name(),
            self.support_indices(),
            self.field.as_str()
        )
    }
}

impl Universe {
    pub fn new(ctx: &Arc<UniverseCtx>, support: u32, field: Field) -> Result<Self> {
        if support & 1 == 0 {
            return Err(Error::Validation("universe must contain the trivial irreducible".into()));
        }
        if u64::from(support) >> ctx.irr_count() != 0 {
            return Err(Error::BadArgument("support bit out of range".into()));
        }
        if field == Field::Real && !ctx.is_conj_closed(support) {
            return Err(Error::Validation(
                "real universe support must be closed under conjugation".into(),
            ));
        }
        Ok(Universe { ctx: ctx.clone(), support, field })
    }

    pub fn complete(ctx: &Arc<UniverseCtx>, field: Field) -> Self {
        Universe { ctx: ctx.clone(), support: ctx.complete_support(), field }
    }

    pub fn trivial(ctx: &Arc<UniverseCtx>, field: Field) -> Self {
        Universe { ctx: ctx.clone(), support: 1, field }
    }

    pub fn regular_quotient(ctx: &Arc<UniverseCtx>, n_idx: usize) -> Result<Self> {
        Universe::new(ctx, ctx.regular_quotient_support(n_idx)?, Field::Real)
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn support_indices(&self) -> Vec<usize> {
        (0..self.ctx.irr_count()).filter(|&v| self.support >> v & 1 != 0).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.support == self.ctx.complete_support()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !UniverseCtx::same_ctx(&self.ctx, &other.ctx) || self.field != other.field {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    /// Join: direct sum, i.e. support union.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Universe {
            ctx: self.ctx.clone(),
            support: self.support | other.support,
            field: self.field,
        })
    }

    /// Meet: support intersection.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Universe {
            ctx: self.ctx.clone(),
            support: self.support & other.support,
            field: self.field,
        })
    }

    /// U embeds into W: support containment.
    pub fn embeds_in(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.support & !other.support == 0)
    }

    pub fn disc_transfer(&self) -> Result<TransferSystem> {
        self.ctx.disc_transfer(self.support)
    }

    pub fn linear_transfer(&self) -> Result<TransferSystem> {
        self.ctx.linear_transfer(self.support)
    }

    pub fn closure(&self) -> Self {
        Universe {
            ctx: self.ctx.clone(),
            support: self.ctx.closure(self.support, self.field),
            field: self.field,
        }
    }

    /// res^G_H U as a universe over the standalone subgroup context.
    pub fn restrict(&self, target: &Arc<UniverseCtx>, h_idx: usize) -> Result<Universe> {
        let sub = &self.ctx.subs[h_idx];
        if !GroupData::same_lattice(&target.data, &sub.emb.child) {
            return Err(Error::UniverseMismatch);
        }
        let mut s = 0u64;
        let mut bits = self.support;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            s |= self.ctx.res_mask[h_idx][v];
        }
        Universe::new(target, s as u32, self.field)
    }

    /// ind^G_H of a universe over the subgroup context (abelian groups).
    pub fn induce_from(
        parent: &Arc<UniverseCtx>,
        h_idx: usize,
        child_universe: &Universe,
    ) -> Result<Universe> {
        if !parent.data.table.is_abelian() {
            return Err(Error::NonAbelian(parent.data.table.name().into()));
        }
        let sub = &parent.subs[h_idx];
        if !GroupData::same_lattice(&child_universe.ctx.data, &sub.emb.child) {
            return Err(Error::UniverseMismatch);
        }
        let mut s = 0u32;
        for v in 0..parent.irr_count() {
            // all irreducibles are 1-dimensional, so res V is a single row
            if parent.res_mask[h_idx][v] & u64::from(child_universe.support) != 0 {
                s |= 1 << v;
            }
        }
        Universe::new(parent, s, child_universe.field)
    }

    /// Identify Irr(G/N) with the parent irreducibles containing N in their
    /// kernel, by matching inflated character values.
    pub fn quotient_irr_lift(
        parent: &Arc<UniverseCtx>,
        qd: &QuotientData,
        q_ctx: &Arc<UniverseCtx>,
    ) -> Result<Vec<u16>> {
        if !GroupData::same_lattice(&q_ctx.data, &qd.quotient)
            || !GroupData::same_lattice(&parent.data, &qd.parent)
        {
            return Err(Error::UniverseMismatch);
        }
        let pk = parent.irr_count();
        let classes = &parent.chars.classes;
        let mut lift = Vec::with_capacity(q_ctx.irr_count());
        for w in 0..q_ctx.irr_count() {
            let mut found = None;
            'rows: for v in 0..pk {
                for c in 0..classes.count() {
                    let rep = classes.reps[c] as usize;
                    let inflated = q_ctx.chars.value_at_elem(w, qd.proj[rep] as usize);
                    if (parent.chars.value(v, c) - inflated).norm() > TOL {
                        continue 'rows;
                    }
                }
                found = Some(v as u16);
                break;
            }
            lift.push(found.ok_or_else(|| {
                Error::Validation("no inflation match for quotient irreducible".into())
            })?);
        }
        Ok(lift)
    }

    /// U^N as a universe over the quotient context.
    pub fn fixed_points(&self, qd: &QuotientData, q_ctx: &Arc<UniverseCtx>) -> Result<Universe> {
        let lift = Self::quotient_irr_lift(&self.ctx, qd, q_ctx)?;
        let mut s = 0u32;
        for (w, &v) in lift.iter().enumerate() {
            if self.support >> v & 1 != 0 {
                s |= 1 << w;
            }
        }
        Universe::new(q_ctx, s, self.field)
    }

    /// Inflation of a quotient universe along G -> G/N.
    pub fn inflate_from(
        parent: &Arc<UniverseCtx>,
        qd: &QuotientData,
        quotient_universe: &Universe,
    ) -> Result<Universe> {
        let lift = Self::quotient_irr_lift(parent, qd, &quotient_universe.ctx)?;
        let mut s = 0u32;
        for (w, &v) in lift.iter().enumerate() {
            if quotient_universe.support >> w & 1 != 0 {
                s |= 1 << v;
            }
        }
        Universe::new(parent, s, quotient_universe.field)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.ctx.data.table.name(),
            "support": self.support_indices(),
            "field": self.field.as_str(),
        })
    }
}

/// An index set for a cyclic group C_n: a subset of Z/n containing 0 and
/// closed under negation, encoding the universe as a sum of rotation planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    n: usize,
    members: u64,
}

impl IndexSet {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::BadArgument("modulus must be in 1..=64".into()));
        }
        let mut m = 0u64;
        for &i in members {
            m |= 1u64 << (i % n);
        }
        let set = IndexSet { n, members: m };
        if !set.contains(0) {
            return Err(Error::Validation("index set must contain 0".into()));
        }
        for i in 0..n {
            if set.contains(i) && !set.contains((n - i) % n) {
                return Err(Error::Validation(format!(
                    "index set not closed under negation at {i}"
                )));
            }
        }
        Ok(set)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members >> (i % self.n) & 1 != 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    /// I mod d, the index set of the restricted universe. Requires d | n.
    pub fn restrict(&self, d: usize) -> IndexSet {
        assert!(d > 0 && self.n % d == 0, "restriction modulus must divide n");
        let mut m = 0u64;
        for i in 0..self.n {
            if self.contains(i) {
                m |= 1u64 << (i % d);
            }
        }
        IndexSet { n: d, members: m }
    }

    /// C_a -> C_b in D(U_I)?  Points in the plane of weight j have
    /// stabiliser of order gcd(j, b), so the transfer exists exactly when
    /// the weights divisible by `a` cut the stabiliser down to order `a`.
    pub fn disc_pair(&self, a: usize, b: usize) -> bool {
        let i = self.restrict(b);
        let mut g = b;
        for j in i.members() {
            if j != 0 && j % a == 0 {
                g = gcd(g, j);
            }
        }
        g == a
    }

    /// Closed: whenever C_d -> C_n in D(U_I) and gcd(i, n) = d, then i is a
    /// member.
    pub fn is_closed(&self) -> bool {
        let n = self.n;
        for d in 1..=n {
            if n % d != 0 || !self.disc_pair(d, n) {
                continue;
            }
            for i in 1..=n {
                if gcd(i, n) == d && !self.contains(i % n) {
                    return false;
                }
            }
        }
        true
    }

    /// The little-discs transfer system of U_I computed purely
    /// arithmetically, independent of character theory.
    pub fn disc_transfer(&self, data: &Arc<GroupData>) -> Result<TransferSystem> {
        if data.table.order() != self.n || !data.table.is_abelian() {
            return Err(Error::NotCyclic(data.table.name().into()));
        }
        let lat = &data.lattice;
        let mut order_to_idx = HashMap::new();
        for s in 0..lat.count() {
            if order_to_idx.insert(lat.order(s), s).is_some() {
                return Err(Error::NotCyclic(data.table.name().into()));
            }
        }
        let mut pairs = Vec::new();
        for (&a, &ia) in &order_to_idx {
            for (&b, &ib) in &order_to_idx {
                if b % a == 0 && self.disc_pair(a, b) {
                    pairs.push((ia, ib));
                }
            }
        }
        TransferSystem::new(Relation::from_pairs(data, &pairs)?)
    }

    /// The universe with support {chi_i : i in I}.
    pub fn to_universe(&self, ctx: &Arc<UniverseCtx>) -> Result<Universe> {
        let exps = cyclic_exponents(ctx)?;
        if ctx.data.table.order() != self.n {
            return Err(Error::BadArgument("index set modulus differs from group order".into()));
        }
        let mut s = 0u32;
        for (row, &e) in exps.iter().enumerate() {
            if self.contains(e) {
                s |= 1 << row;
            }
        }
        Universe::new(ctx, s, Field::Real)
    }

    pub fn from_universe(u: &Universe) -> Result<IndexSet> {
        let exps = cyclic_exponents(&u.ctx)?;
        let n = u.ctx.data.table.order();
        let mut members = Vec::new();
        for (row, &e) in exps.iter().enumerate() {
            if u.support >> row & 1 != 0 {
                members.push(e);
            }
        }
        IndexSet::new(n, &members)
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// For each irreducible row of a cyclic group, the exponent m with
/// chi(g) = e^{2 pi i m / n} on a fixed generator g.
pub fn cyclic_exponents(ctx: &Arc<UniverseCtx>) -> Result<Vec<usize>> {
    let t = &ctx.data.table;
    let n = t.order();
    let gen = (0..n)
        .find(|&g| t.element_order(g) == n)
        .ok_or_else(|| Error::NotCyclic(t.name().into()))?;
    let mut exps = Vec::with_capacity(ctx.irr_count());
    for row in 0..ctx.irr_count() {
        let v = ctx.chars.value_at_elem(row, gen);
        let m = (v.arg() * n as f64 / (2.0 * std::f64::consts::PI)).round();
        let m = ((m as i64 % n as i64) + n as i64) as usize % n;
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64);
        if (v - expect).norm() > 1e-6 {
            return Err(Error::Validation(format!("row {row} is not a root-of-unity character")));
        }
        exps.push(m);
    }
    Ok(exps)
}

/// Some m <= n with m = i (mod d) and gcd(m, n) = e. Requires d, e | n,
/// gcd(d, e) = 1 and gcd(i, d) = 1; existence is then guaranteed.
pub fn find_residue(n: usize, d: usize, e: usize, i: usize) -> Result<usize> {
    if d == 0 || e == 0 || n % d != 0 || n % e != 0 || gcd(d, e) != 1 || gcd(i, d) != 1 {
        return Err(Error::BadArgument(format!(
            "need d, e dividing n with gcd(d, e) = 1 and gcd(i, d) = 1; got n={n} d={d} e={e} i={i}"
        )));
    }
    (1..=n)
        .find(|&m| m % d == i % d && gcd(m, n) == e)
        .ok_or_else(|| Error::Validation("no residue found despite valid preconditions".into()))
}
