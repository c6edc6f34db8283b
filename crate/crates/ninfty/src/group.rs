//! Finite groups as explicit multiplication tables.
//!
//! Groups are built from a small spec grammar (`C6`, `D8`, `Q8`, `S4`, `A5`,
//! direct products like `Q8xC3`, and `perm:` generator lists) and carry a
//! canonical element ordering: the identity is element 0 and the remaining
//! elements are numbered by a breadth-first walk over the construction
//! generators.

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Hard cap on the order of any constructed group.
pub const MAX_GROUP_ORDER: usize = 64;
/// Permutation input acts on points 1..=MAX_PERM_POINTS.
pub const MAX_PERM_POINTS: usize = 8;

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    gens: Vec<u8>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({}, order {})", self.name, self.order)
    }
}

impl GroupTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Conjugate `h` by `g`, i.e. `g h g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generators used during construction (canonical indices).
    pub fn generators(&self) -> &[u8] {
        &self.gens
    }

    /// Closure of a subset (given as an element bitmask) under multiplication.
    /// The identity is always included.
    pub fn subgroup_closure(&self, mask: u64) -> u64 {
        let mut m = mask | 1;
        loop {
            let mut next = m;
            let mut a_bits = m;
            while a_bits != 0 {
                let a = a_bits.trailing_zeros() as usize;
                a_bits &= a_bits - 1;
                let mut b_bits = m;
                while b_bits != 0 {
                    let b = b_bits.trailing_zeros() as usize;
                    b_bits &= b_bits - 1;
                    next |= 1u64 << self.mul(a, b);
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }

    /// The commutator subgroup, as an element bitmask.
    pub fn commutator_mask(&self) -> u64 {
        let mut m = 1u64;
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.inv(self.mul(b, a)));
                m |= 1u64 << c;
            }
        }
        self.subgroup_closure(m)
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Wrap a raw multiplication table without reordering elements.
    /// The caller must already have the identity at index 0.
    pub(crate) fn from_table(name: impl Into<String>, order: usize, mul: Vec<u8>) -> Result<Self> {
        let mut inv = vec![0u8; order];
        for a in 0..order {
            let mut found = None;
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    found = Some(b);
                    break;
                }
            }
            match found {
                Some(b) => inv[a] = b as u8,
                None => return Err(Error::BadTable(format!("element {a} has no inverse"))),
            }
        }
        let gens = (1..order).map(|i| i as u8).collect();
        let g = GroupTable { name: name.into(), order, mul, inv, gens };
        g.validate()?;
        Ok(g)
    }

    /// Build from a raw multiplication rule, renumbering elements so that the
    /// identity is 0 and the rest follow a breadth-first walk over `gens`.
    fn from_raw(
        name: impl Into<String>,
        order: usize,
        raw_mul: impl Fn(usize, usize) -> usize,
        raw_identity: usize,
        raw_gens: &[usize],
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadTable("empty group".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit { order, max: MAX_GROUP_ORDER });
        }
        let mut raw_to_new = vec![usize::MAX; order];
        let mut new_to_raw = Vec::with_capacity(order);
        raw_to_new[raw_identity] = 0;
        new_to_raw.push(raw_identity);
        let mut head = 0;
        while head < new_to_raw.len() {
            let x = new_to_raw[head];
            head += 1;
            for &g in raw_gens {
                let y = raw_mul(x, g);
                if raw_to_new[y] == usize::MAX {
                    raw_to_new[y] = new_to_raw.len();
                    new_to_raw.push(y);
                }
            }
        }
        if new_to_raw.len() != order {
            return Err(Error::BadTable(format!(
                "generators reach only {} of {} elements",
                new_to_raw.len(),
                order
            )));
        }
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = raw_to_new[raw_mul(new_to_raw[a], new_to_raw[b])] as u8;
            }
        }
        let mut table = GroupTable::from_table(name, order, mul)?;
        table.gens = raw_gens.iter().map(|&g| raw_to_new[g] as u8).collect();
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit { order: n, max: MAX_GROUP_ORDER });
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::BadTable("element 0 is not a two-sided identity".into()));
            }
            let i = self.inv(a);
            if self.mul(a, i) != 0 || self.mul(i, a) != 0 {
                return Err(Error::BadTable(format!("bad inverse for element {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build a group from a spec string.
///
/// Grammar: `C<n>`, `D<2n>` (dihedral of order 2n), `Q<4n>` (generalized
/// quaternion), `S<n>`, `A<n>`, `trivial`, direct products `<spec>x<spec>`,
/// and `perm:<cycles;cycles;...>` for a permutation group on points 1..=8
/// given by its generators in disjoint cycle notation.
pub fn build_group(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::ParseSpec(spec.into(), "empty spec".into()));
    }
    if spec.starts_with("perm:") {
        // products of perm groups are not supported; `x` may not appear in cycles
        return perm_group(spec);
    }
    let parts: Vec<&str> = spec.split('x').collect();
    let mut table = atom(parts[0])?;
    for part in &parts[1..] {
        table = product(&table, &atom(part)?)?;
    }
    Ok(table)
}

fn atom(s: &str) -> Result<GroupTable> {
    let err = |m: &str| Error::ParseSpec(s.into(), m.into());
    if s == "trivial" {
        return cyclic(1).map(|g| g.with_name("trivial"));
    }
    if s.len() < 2 || !s.is_char_boundary(1) {
        return Err(err("expected `<letter><number>`"));
    }
    let (kind, digits) = s.split_at(1);
    let n: usize = digits.parse().map_err(|_| err("expected `<letter><number>`"))?;
    match kind {
        "C" => {
            if n == 0 {
                return Err(err("C0 is not a group"));
            }
            cyclic(n)
        }
        "D" => {
            if n < 2 || n % 2 != 0 {
                return Err(err("dihedral spec D<m> needs even m >= 2"));
            }
            dihedral(n)
        }
        "Q" => {
            if n < 8 || n % 4 != 0 {
                return Err(err("quaternion spec Q<m> needs m >= 8 divisible by 4"));
            }
            quaternion(n)
        }
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(err("unknown family")),
    }
}

fn cyclic(n: usize) -> Result<GroupTable> {
    let gens: &[usize] = if n > 1 { &[1] } else { &[] };
    GroupTable::from_raw(format!("C{n}"), n, |a, b| (a + b) % n, 0, gens)
}

/// Dihedral group of order `m = 2n`: rotations `r^i` and reflections `r^i s`.
fn dihedral(m: usize) -> Result<GroupTable> {
    let n = m / 2;
    // element i + n*j encodes r^i s^j
    let mul = move |x: usize, y: usize| {
        let (i1, j1) = (x % n, x / n);
        let (i2, j2) = (y % n, y / n);
        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
        i + n * (j1 ^ j2)
    };
    let gens: Vec<usize> = if n > 1 { vec![1, n] } else { vec![n] };
    GroupTable::from_raw(format!("D{m}"), m, mul, 0, &gens)
}

/// Generalized quaternion group of order `m = 4n`: `a` of order 2n,
/// `b^2 = a^n`, `b a b^{-1} = a^{-1}`.
fn quaternion(m: usize) -> Result<GroupTable> {
    let tn = m / 2; // order of a
    let half = tn / 2;
    let mul = move |x: usize, y: usize| {
        let (i1, j1) = (x % tn, x / tn);
        let (i2, j2) = (y % tn, y / tn);
        if j1 == 0 {
            (i1 + i2) % tn + tn * j2
        } else if j2 == 0 {
            (i1 + tn - i2) % tn + tn
        } else {
            (i1 + tn - i2 + half) % tn
        }
    };
    GroupTable::from_raw(format!("Q{m}"), m, mul, 0, &[1, tn])
}

type Perm = [u8; MAX_PERM_POINTS];

const IDENTITY_PERM: Perm = [0, 1, 2, 3, 4, 5, 6, 7];

fn perm_compose(p: &Perm, q: &Perm) -> Perm {
    // (p*q)(i) = p(q(i))
    let mut r = IDENTITY_PERM;
    for i in 0..MAX_PERM_POINTS {
        r[i] = p[q[i] as usize];
    }
    r
}

fn perm_from_cycles(s: &str) -> Result<Perm> {
    let err = |m: &str| Error::ParseSpec(s.into(), m.into());
    let mut p = IDENTITY_PERM;
    let mut moved = [false; MAX_PERM_POINTS];
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err("expected `(`"));
        }
        let mut cycle = Vec::new();
        i += 1;
        while i < bytes.len() && bytes[i] != b')' {
            let c = bytes[i];
            if c == b' ' || c == b',' {
                i += 1;
                continue;
            }
            if !(b'1'..=b'8').contains(&c) {
                return Err(err("points must be digits 1..8"));
            }
            let pt = (c - b'1') as usize;
            if moved[pt] || cycle.contains(&pt) {
                return Err(err("cycles must be disjoint"));
            }
            cycle.push(pt);
            i += 1;
        }
        if i == bytes.len() {
            return Err(err("unclosed cycle"));
        }
        i += 1;
        for &pt in &cycle {
            moved[pt] = true;
        }
        for w in 0..cycle.len() {
            p[cycle[w]] = cycle[(w + 1) % cycle.len()] as u8;
        }
    }
    Ok(p)
}

fn perm_closure(name: String, gens: Vec<Perm>) -> Result<GroupTable> {
    let mut elems = vec![IDENTITY_PERM];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(IDENTITY_PERM, 0);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head];
        head += 1;
        for g in &gens {
            let y = perm_compose(&x, g);
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(y) {
                if elems.len() >= MAX_GROUP_ORDER {
                    return Err(Error::SizeLimit {
                        order: elems.len() + 1,
                        max: MAX_GROUP_ORDER,
                    });
                }
                slot.insert(elems.len());
                elems.push(y);
            }
        }
    }
    let order = elems.len();
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = index[&perm_compose(&elems[a], &elems[b])] as u8;
        }
    }
    let mut table = GroupTable::from_table(name, order, mul)?;
    table.gens = gens.iter().filter_map(|g| index.get(g).map(|&i| i as u8)).collect();
    Ok(table)
}

fn symmetric(n: usize) -> Result<GroupTable> {
    if n > MAX_PERM_POINTS {
        return Err(Error::ParseSpec(format!("S{n}"), "at most 8 points".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm_from_cycles("(12)")?);
    }
    if n >= 3 {
        let cyc: String = (1..=n).map(|i| i.to_string()).collect();
        gens.push(perm_from_cycles(&format!("({cyc})"))?);
    }
    perm_closure(format!("S{n}"), gens)
}

fn alternating(n: usize) -> Result<GroupTable> {
    if n > MAX_PERM_POINTS {
        return Err(Error::ParseSpec(format!("A{n}"), "at most 8 points".into()));
    }
    let mut gens = Vec::new();
    for k in 3..=n {
        gens.push(perm_from_cycles(&format!("(12{k})"))?);
    }
    perm_closure(format!("A{n}"), gens)
}

fn perm_group(spec: &str) -> Result<GroupTable> {
    let body = &spec["perm:".len()..];
    let mut gens = Vec::new();
    for part in body.split(';') {
        let part = part.trim();
        if !part.is_empty() {
            gens.push(perm_from_cycles(part)?);
        }
    }
    perm_closure(spec.to_string(), gens)
}

fn product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (oa, ob) = (a.order, b.order);
    let order = oa * ob;
    if order > MAX_GROUP_ORDER {
        return Err(Error::SizeLimit { order, max: MAX_GROUP_ORDER });
    }
    let mul = |x: usize, y: usize| {
        let (xa, xb) = (x / ob, x % ob);
        let (ya, yb) = (y / ob, y % ob);
        a.mul(xa, ya) * ob + b.mul(xb, yb)
    };
    let mut gens: Vec<usize> = a.gens.iter().map(|&g| (g as usize) * ob).collect();
    gens.extend(b.gens.iter().map(|&g| g as usize));
    GroupTable::from_raw(format!("{}x{}", a.name, b.name), order, mul, 0, &gens)
}
