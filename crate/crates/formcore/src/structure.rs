//! Structural invariants of a finite group: the normal-subgroup lattice,
//! socle, Frattini subgroup, chief series, cores, radicals, and the set of
//! composition factors.
//!
//! Everything here runs over the parent group's element table.  A normal
//! subgroup is represented as a bitset of element indices, so joins, meets,
//! containment, and interval questions reduce to word operations plus one
//! closure pass, and every subgroup has exactly one machine representation.
//! The lattice is built from conjugacy classes: the closure of a single
//! class is normal, every normal subgroup is a join of the class closures it
//! contains, and the join closure of that seed set is therefore the complete
//! lattice.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::caps::Caps;
use crate::catalog::{SimpleType, NONABELIAN_SIMPLE};
use crate::error::{GroupError, Result};
use crate::group::{ElementTable, PermGroup};
use crate::perm::Perm;
use crate::quotient::{coset_action, Epimorphism};
use crate::subgroup::{is_nilpotent, sylow_subgroup, Subgroup};

/// Bitset over element-table indices.
///
/// The derived lexicographic ordering on the word array is the canonical
/// tie-break order used whenever a deterministic choice between subgroups of
/// equal order is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Bits {
    words: Box<[u64]>,
}

impl Bits {
    pub(crate) fn empty(n: usize) -> Bits {
        Bits {
            words: vec![0u64; n.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn union(&self, other: &Bits) -> Bits {
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        Bits { words }
    }

    pub(crate) fn intersect(&self, other: &Bits) -> Bits {
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        Bits { words }
    }

    pub(crate) fn is_subset(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// Largest element table for which the full multiplication table is
/// precomputed.  Above this the oracle composes permutations on demand.
const PRODUCT_TABLE_LIMIT: usize = 1024;

/// Multiplication oracle over an element table.
struct Muls {
    table: Arc<ElementTable>,
    prods: Option<Vec<u16>>,
    n: usize,
}

impl Muls {
    fn new(table: Arc<ElementTable>) -> Muls {
        let n = table.list.len();
        let prods = (n <= PRODUCT_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &table.list {
                for b in &table.list {
                    let p = a.compose(b);
                    t.push(table.position(&p).expect("table is closed under products") as u16);
                }
            }
            t
        });
        Muls { table, prods, n }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.prods {
            Some(t) => t[a * self.n + b] as usize,
            None => {
                let p = self.table.list[a].compose(&self.table.list[b]);
                self.table.position(&p).expect("table is closed under products") as usize
            }
        }
    }

    fn full(&self) -> Bits {
        let mut bits = Bits::empty(self.n);
        for i in 0..self.n {
            bits.set(i);
        }
        bits
    }

    /// Subgroup generated by the seed indices, as a bitset.  Once more than
    /// half the parent is reached the subgroup is the whole parent, so the
    /// scan stops early.
    fn closure(&self, seeds: &[usize]) -> Bits {
        let mut bits = Bits::empty(self.n);
        bits.set(0);
        let mut count = 1usize;
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !bits.get(y) {
                    bits.set(y);
                    count += 1;
                    if count * 2 > self.n {
                        return self.full();
                    }
                    frontier.push(y);
                }
            }
        }
        bits
    }

    /// Product set `A·B` of two normal subgroups, which is again a subgroup.
    fn normal_product(&self, a: &Bits, b: &Bits) -> Bits {
        if a.is_subset(b) {
            return b.clone();
        }
        if b.is_subset(a) {
            return a.clone();
        }
        let bs: Vec<usize> = b.iter_ones().collect();
        let mut out = Bits::empty(self.n);
        let mut count = 0usize;
        for x in a.iter_ones() {
            for &y in &bs {
                let z = self.mul(x, y);
                if !out.get(z) {
                    out.set(z);
                    count += 1;
                    if count * 2 > self.n {
                        return self.full();
                    }
                }
            }
        }
        out
    }

    /// Minimal-length greedy generating set for the subgroup with the given
    /// element bitset, as table indices.
    fn greedy_gens(&self, bits: &Bits) -> Vec<usize> {
        let mut seeds: Vec<usize> = Vec::new();
        let mut cur = Bits::empty(self.n);
        cur.set(0);
        for e in bits.iter_ones() {
            if !cur.get(e) {
                seeds.push(e);
                cur = self.closure(&seeds);
            }
        }
        seeds
    }
}

/// Index maps `e ↦ position(gᵢ⁻¹·e·gᵢ)`, one per parent generator.
fn conj_maps(g: &PermGroup, table: &ElementTable) -> Vec<Vec<u32>> {
    g.gens()
        .iter()
        .map(|gp| {
            table
                .list
                .iter()
                .map(|e| {
                    table
                        .position(&e.conjugate(gp))
                        .expect("conjugation preserves membership")
                })
                .collect()
        })
        .collect()
}

pub(crate) struct MemberData {
    pub bits: Bits,
    pub order: u128,
    pub gens: Vec<Perm>,
}

/// The complete normal-subgroup lattice, members sorted by (order, bitset);
/// index 0 is the trivial subgroup and the last index is the whole group.
pub(crate) struct LatticeData {
    pub members: Vec<MemberData>,
    index: HashMap<Bits, usize>,
    leq: Vec<Vec<bool>>,
}

impl LatticeData {
    fn build(g: &PermGroup) -> Result<LatticeData> {
        let caps = Caps::global();
        let order = g.order();
        if order > caps.lattice_order {
            return Err(GroupError::Capacity {
                what: "group order for the normal-subgroup lattice",
                value: order,
                bound: caps.lattice_order,
            });
        }
        let table = g.element_table()?;
        let muls = Muls::new(table.clone());
        let n = muls.n;
        let classes = g.conjugacy_classes()?;

        let mut trivial = Bits::empty(n);
        trivial.set(0);
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(trivial.clone());
        let mut list: Vec<Bits> = vec![trivial];
        for class in classes.iter() {
            let seeds: Vec<usize> = class.iter().map(|&i| i as usize).collect();
            let closed = muls.closure(&seeds);
            if seen.insert(closed.clone()) {
                list.push(closed);
            }
        }
        // Join closure.  The triangular scan pairs every entry with every
        // earlier one, including entries appended along the way, so the final
        // list is closed under pairwise products.
        let mut i = 1;
        while i < list.len() {
            for j in 0..i {
                let p = muls.normal_product(&list[i], &list[j]);
                if seen.insert(p.clone()) {
                    list.push(p);
                }
            }
            i += 1;
        }

        // Verify normality of every member: conjugation by each parent
        // generator must map the member onto itself.
        let cmaps = conj_maps(g, &table);
        for bits in &list {
            for cmap in &cmaps {
                for e in bits.iter_ones() {
                    if !bits.get(cmap[e] as usize) {
                        return Err(GroupError::Integrity(
                            "lattice member is not closed under conjugation".into(),
                        ));
                    }
                }
            }
        }

        let mut members: Vec<MemberData> = list
            .into_iter()
            .map(|bits| {
                let order = bits.count() as u128;
                MemberData {
                    bits,
                    order,
                    gens: Vec::new(),
                }
            })
            .collect();
        members.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.bits.cmp(&b.bits)));
        for m in &mut members {
            if m.order == order {
                m.gens = g.gens().to_vec();
            } else {
                m.gens = muls
                    .greedy_gens(&m.bits)
                    .into_iter()
                    .map(|e| table.list[e].clone())
                    .collect();
            }
        }
        let index: HashMap<Bits, usize> = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.bits.clone(), i))
            .collect();
        let k = members.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = members[i].bits.is_subset(&members[j].bits);
            }
        }
        Ok(LatticeData {
            members,
            index,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn full_index(&self) -> usize {
        self.members.len() - 1
    }

    pub fn index_of(&self, bits: &Bits) -> Option<usize> {
        self.index.get(bits).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Index of `⟨members[i], members[j]⟩`; the members are sorted by order,
    /// so the first superset of the union is the join.
    pub fn join(&self, i: usize, j: usize) -> usize {
        if self.leq[i][j] {
            return j;
        }
        if self.leq[j][i] {
            return i;
        }
        let u = self.members[i].bits.union(&self.members[j].bits);
        self.members
            .iter()
            .position(|m| u.is_subset(&m.bits))
            .expect("the whole group contains every union")
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        if self.leq[i][j] {
            return Ok(i);
        }
        if self.leq[j][i] {
            return Ok(j);
        }
        let m = self.members[i].bits.intersect(&self.members[j].bits);
        self.index_of(&m).ok_or_else(|| {
            GroupError::Integrity("intersection of normal subgroups is missing from the lattice".into())
        })
    }

    /// Members minimal among those strictly above `i`.
    pub fn atoms_above(&self, i: usize) -> Vec<usize> {
        let k = self.members.len();
        (0..k)
            .filter(|&j| {
                j != i
                    && self.leq[i][j]
                    && !(0..k).any(|m| {
                        m != i && m != j && self.leq[i][m] && self.leq[m][j]
                    })
            })
            .collect()
    }

    /// Chief steps of the interval from `lo` up to `hi`, typed by order ratio
    /// alone: each entry describes one chief factor as (simple type, copies).
    pub fn interval_steps(&self, lo: usize, hi: usize) -> Result<Vec<(SimpleType, u32)>> {
        if !self.leq[lo][hi] {
            return Err(GroupError::Integrity(
                "interval endpoints are not nested".into(),
            ));
        }
        let mut out = Vec::new();
        let mut cur = lo;
        while cur != hi {
            let step = self
                .atoms_above(cur)
                .into_iter()
                .filter(|&j| self.leq[j][hi])
                .min_by(|&a, &b| {
                    let ma = &self.members[a];
                    let mb = &self.members[b];
                    ma.order.cmp(&mb.order).then_with(|| ma.bits.cmp(&mb.bits))
                })
                .ok_or_else(|| {
                    GroupError::Integrity("interval has no minimal step".into())
                })?;
            let ratio = self.members[step].order / self.members[cur].order;
            out.push(type_of_ratio(ratio)?);
            cur = step;
        }
        Ok(out)
    }
}

/// Types one chief step from its order alone.  A prime-power order p^m means
/// the factor is elementary abelian of rank m (a chief factor is a direct
/// power of one simple group, and an abelian one is a power of C_p);
/// otherwise the order must be a power of a catalogued nonabelian simple
/// order.
fn type_of_ratio(ratio: u128) -> Result<(SimpleType, u32)> {
    let fac = arith::factorize(ratio);
    if fac.len() == 1 {
        return Ok((SimpleType::Cyclic(fac[0].0 as u64), fac[0].1));
    }
    for &(o, _) in NONABELIAN_SIMPLE {
        let mut pow = o;
        let mut m = 1u32;
        while pow < ratio {
            pow = pow.saturating_mul(o);
            m += 1;
        }
        if pow == ratio {
            return Ok((SimpleType::NonAbelian { order: o as u64 }, m));
        }
    }
    Err(GroupError::UnknownSimpleOrder(ratio))
}

pub(crate) fn lattice_data(g: &PermGroup) -> Result<Arc<LatticeData>> {
    if let Some(l) = g.inner.lattice.get() {
        return Ok(l.clone());
    }
    let data = Arc::new(LatticeData::build(g)?);
    let _ = g.inner.lattice.set(data);
    Ok(g.inner.lattice.get().expect("just set").clone())
}

pub(crate) fn member_subgroup(g: &PermGroup, lat: &LatticeData, i: usize) -> Subgroup {
    Subgroup::from_verified(g, lat.members[i].gens.clone())
}

/// Element bitset of the subgroup generated by `gens`, relative to the given
/// element table.  Fails with `NotAMember` when a generator (or product)
/// falls outside the table.
pub(crate) fn element_bits(table: &ElementTable, gens: &[Perm]) -> Result<Bits> {
    let n = table.list.len();
    let mut bits = Bits::empty(n);
    bits.set(0);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for gen in gens {
            let y = table.list[x].compose(gen);
            let yi = table.position(&y).ok_or(GroupError::NotAMember)? as usize;
            if !bits.get(yi) {
                bits.set(yi);
                frontier.push(yi);
            }
        }
    }
    Ok(bits)
}

/// The lattice of normal subgroups of one parent group.
///
/// Members are indexed 0..len() in ascending (order, element-set) order, so
/// index 0 is always the trivial subgroup and the last index the whole group.
pub struct NormalLattice {
    parent: PermGroup,
    data: Arc<LatticeData>,
}

/// Computes the complete normal-subgroup lattice of `g`.
///
/// Every member's normality is verified during construction; the result is
/// cached on the group, so repeated calls are cheap.
pub fn normal_subgroups(g: &PermGroup) -> Result<NormalLattice> {
    Ok(NormalLattice {
        parent: g.clone(),
        data: lattice_data(g)?,
    })
}

impl NormalLattice {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn full_index(&self) -> usize {
        self.data.full_index()
    }

    pub fn order_of(&self, i: usize) -> u128 {
        self.data.members[i].order
    }

    pub fn member(&self, i: usize) -> Subgroup {
        member_subgroup(&self.parent, &self.data, i)
    }

    /// Containment test between members, read from the precomputed matrix.
    pub fn contains_index(&self, i: usize, j: usize) -> bool {
        self.data.leq(j, i)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.data.join(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        self.data.meet(i, j)
    }

    /// Indices of the minimal normal subgroups.
    pub fn minimal_members(&self) -> Vec<usize> {
        self.data.atoms_above(0)
    }

    /// Indices of the members covering member `i`.
    pub fn atoms_above(&self, i: usize) -> Vec<usize> {
        self.data.atoms_above(i)
    }

    /// Lattice index of `sub`, or `None` when `sub` is not normal in the
    /// parent (or not a subgroup of it at all).
    pub fn index_of(&self, sub: &Subgroup) -> Result<Option<usize>> {
        let table = self.parent.element_table()?;
        let elems = sub.group().element_table()?;
        let mut bits = Bits::empty(table.list.len());
        for e in elems.list.iter() {
            match table.position(e) {
                Some(i) => bits.set(i as usize),
                None => return Ok(None),
            }
        }
        Ok(self.data.index_of(&bits))
    }
}

pub(crate) struct ChiefStepData {
    pub lower: usize,
    pub upper: usize,
    pub stype: SimpleType,
    pub copies: u32,
    /// The factor realized as a permutation group on the coset space of
    /// `lower` inside `upper`.
    pub factor: PermGroup,
    /// For each parent generator, the permutation of that coset space induced
    /// by conjugation.
    pub action_images: Vec<Perm>,
    /// Generators of the centralizer of this factor in the parent.
    pub centralizer: OnceLock<Vec<Perm>>,
    /// Lattice index of the small centralizer of this factor.
    pub small: OnceLock<usize>,
}

pub(crate) struct ChiefData {
    pub steps: Vec<ChiefStepData>,
}

/// Generator encoding used as the deterministic tie-break between realized
/// factors of equal order: the concatenated image words of the generators.
fn factor_encoding(g: &PermGroup) -> Vec<u16> {
    g.gens()
        .iter()
        .flat_map(|p| p.images().iter().copied())
        .collect()
}

impl ChiefData {
    fn build(g: &PermGroup, lat: &LatticeData, alt: bool) -> Result<ChiefData> {
        if g.is_trivial() {
            return Ok(ChiefData { steps: Vec::new() });
        }
        let table = g.element_table()?;
        let muls = Muls::new(table);
        let full = lat.full_index();
        let mut steps = Vec::new();
        let mut cur = 0usize;
        while cur != full {
            let cands = lat.atoms_above(cur);
            let ratio_of = |c: usize| lat.members[c].order / lat.members[cur].order;
            let pick = if alt {
                cands.iter().map(|&c| ratio_of(c)).max()
            } else {
                cands.iter().map(|&c| ratio_of(c)).min()
            }
            .ok_or_else(|| GroupError::Integrity("chief ascent found no covering member".into()))?;
            let mut realized: Vec<(Vec<u16>, usize, PermGroup, Vec<Perm>)> = Vec::new();
            for c in cands {
                if ratio_of(c) != pick {
                    continue;
                }
                let (factor, action_images) = realize_step(g, &muls, lat, cur, c)?;
                realized.push((factor_encoding(&factor), c, factor, action_images));
            }
            realized.sort_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| lat.members[a.1].bits.cmp(&lat.members[b.1].bits))
            });
            let (_, upper, factor, action_images) = if alt {
                realized.pop().expect("at least one candidate realized")
            } else {
                realized.remove(0)
            };
            let (stype, copies) = type_of_ratio(pick)?;
            if factor.order() != pick {
                return Err(GroupError::Integrity(
                    "realized chief factor has the wrong order".into(),
                ));
            }
            steps.push(ChiefStepData {
                lower: cur,
                upper,
                stype,
                copies,
                factor,
                action_images,
                centralizer: OnceLock::new(),
                small: OnceLock::new(),
            });
            cur = upper;
        }
        Ok(ChiefData { steps })
    }
}

/// Realizes the factor `upper/lower` as a permutation group on the coset
/// space of `lower` inside `upper`, and computes the permutation of that
/// space induced by conjugation with each parent generator.
fn realize_step(
    g: &PermGroup,
    muls: &Muls,
    lat: &LatticeData,
    lower: usize,
    upper: usize,
) -> Result<(PermGroup, Vec<Perm>)> {
    let k_elems: Vec<usize> = lat.members[lower].bits.iter_ones().collect();
    let h_gens: Vec<usize> = lat.members[upper]
        .gens
        .iter()
        .map(|p| {
            muls.table
                .position(p)
                .expect("member generators are table entries") as usize
        })
        .collect();
    let mut coset_no: Vec<u32> = vec![u32::MAX; muls.n];
    let mut reps: Vec<usize> = vec![0];
    for &k in &k_elems {
        coset_no[k] = 0;
    }
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head];
        head += 1;
        for &s in &h_gens {
            let c = muls.mul(r, s);
            if coset_no[c] == u32::MAX {
                let t = reps.len() as u32;
                reps.push(c);
                for &k in &k_elems {
                    coset_no[muls.mul(k, c)] = t;
                }
            }
        }
    }
    let deg = reps.len();
    let expected = lat.members[upper].order / lat.members[lower].order;
    if deg as u128 != expected {
        return Err(GroupError::Integrity(
            "coset enumeration does not match the factor order".into(),
        ));
    }
    let fgens: Vec<Perm> = h_gens
        .iter()
        .map(|&s| {
            let imgs: Vec<u16> = reps
                .iter()
                .map(|&r| coset_no[muls.mul(r, s)] as u16)
                .collect();
            Perm::from_images(imgs).expect("coset multiplication is a permutation")
        })
        .collect();
    let factor = PermGroup::new(deg, fgens)?;
    let action_images: Vec<Perm> = g
        .gens()
        .iter()
        .map(|gp| {
            let imgs: Vec<u16> = reps
                .iter()
                .map(|&r| {
                    let conj = muls.table.list[r].conjugate(gp);
                    let ci = muls
                        .table
                        .position(&conj)
                        .expect("conjugation preserves membership")
                        as usize;
                    coset_no[ci] as u16
                })
                .collect();
            Perm::from_images(imgs).expect("conjugation permutes the coset space")
        })
        .collect();
    Ok((factor, action_images))
}

pub(crate) fn chief_data(g: &PermGroup, alt: bool) -> Result<Arc<ChiefData>> {
    let slot = if alt {
        &g.inner.chief_alt
    } else {
        &g.inner.chief
    };
    if let Some(c) = slot.get() {
        return Ok(c.clone());
    }
    let lat = lattice_data(g)?;
    let data = Arc::new(ChiefData::build(g, &lat, alt)?);
    let _ = slot.set(data);
    Ok(slot.get().expect("just set").clone())
}

/// A chief series of `parent`, ascending from the trivial subgroup to the
/// whole group through lattice members, each step covering the previous one.
pub struct ChiefSeries {
    parent: PermGroup,
    lat: Arc<LatticeData>,
    data: Arc<ChiefData>,
}

/// Computes the canonical chief series of `g`.
///
/// Ties between covering members are broken deterministically: smallest
/// factor order first, then the lexicographically smallest generator encoding
/// of the realized factor.  The result is cached on the group.
pub fn chief_series(g: &PermGroup) -> Result<ChiefSeries> {
    Ok(ChiefSeries {
        parent: g.clone(),
        lat: lattice_data(g)?,
        data: chief_data(g, false)?,
    })
}

/// Computes a second chief series with the tie-breaking order reversed
/// (largest factor order first, last generator encoding).  Comparing the two
/// series exercises statements that must not depend on the series chosen.
pub fn chief_series_alt(g: &PermGroup) -> Result<ChiefSeries> {
    Ok(ChiefSeries {
        parent: g.clone(),
        lat: lattice_data(g)?,
        data: chief_data(g, true)?,
    })
}

impl ChiefSeries {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    /// Number of chief factors (zero exactly for the trivial group).
    pub fn len(&self) -> usize {
        self.data.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.steps.is_empty()
    }

    pub fn factor(&self, i: usize) -> ChiefFactor {
        ChiefFactor {
            parent: self.parent.clone(),
            lat: self.lat.clone(),
            data: self.data.clone(),
            idx: i,
        }
    }

    pub fn factors(&self) -> Vec<ChiefFactor> {
        (0..self.len()).map(|i| self.factor(i)).collect()
    }
}

/// One chief factor H/K of a parent group, together with its realization as
/// a permutation group and the parent's conjugation action on it.
#[derive(Clone)]
pub struct ChiefFactor {
    parent: PermGroup,
    lat: Arc<LatticeData>,
    data: Arc<ChiefData>,
    idx: usize,
}

impl ChiefFactor {
    pub(crate) fn step(&self) -> &ChiefStepData {
        &self.data.steps[self.idx]
    }

    pub(crate) fn lattice(&self) -> &Arc<LatticeData> {
        &self.lat
    }

    pub(crate) fn belongs_to(&self, g: &PermGroup) -> bool {
        Arc::ptr_eq(&self.parent.inner, &g.inner)
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    /// Position of this factor in its series, counting from the bottom.
    pub fn index(&self) -> usize {
        self.idx
    }

    pub fn lower(&self) -> Subgroup {
        member_subgroup(&self.parent, &self.lat, self.step().lower)
    }

    pub fn upper(&self) -> Subgroup {
        member_subgroup(&self.parent, &self.lat, self.step().upper)
    }

    pub(crate) fn lower_index(&self) -> usize {
        self.step().lower
    }

    pub(crate) fn upper_index(&self) -> usize {
        self.step().upper
    }

    /// The factor H/K itself, realized on the coset space of K in H.
    pub fn factor(&self) -> &PermGroup {
        &self.step().factor
    }

    pub fn order(&self) -> u128 {
        self.step().factor.order()
    }

    /// The simple group this factor is a direct power of.
    pub fn simple_type(&self) -> SimpleType {
        self.step().stype
    }

    /// Number of simple direct factors.
    pub fn copies(&self) -> u32 {
        self.step().copies
    }

    /// The parent's conjugation action on the factor's coset space, as an
    /// epimorphism onto the induced permutation group.  The kernel of this
    /// map is the centralizer of the factor.
    pub fn action(&self) -> Result<Epimorphism> {
        Epimorphism::from_images(&self.parent, self.step().action_images.clone())
    }
}

/// Socle: the join of the minimal normal subgroups.
///
/// Undefined for the trivial group, which has no minimal normal subgroups.
pub fn socle(g: &PermGroup) -> Result<Subgroup> {
    if g.is_trivial() {
        return Err(GroupError::Undefined("the socle of the trivial group"));
    }
    let lat = lattice_data(g)?;
    let mut idx = 0;
    for a in lat.atoms_above(0) {
        idx = lat.join(idx, a);
    }
    Ok(member_subgroup(g, &lat, idx))
}

/// π-core: the largest normal subgroup whose order is divisible only by
/// primes in `pi`.  Computed as the join of all such lattice members, with
/// the π-property of the join re-verified.
pub fn pi_core(g: &PermGroup, pi: &[u64]) -> Result<Subgroup> {
    let lat = lattice_data(g)?;
    let is_pi = |order: u128| {
        arith::prime_divisors(order)
            .into_iter()
            .all(|p| pi.contains(&(p as u64)))
    };
    let mut idx = 0;
    for i in 0..lat.len() {
        if is_pi(lat.members[i].order) {
            idx = lat.join(idx, i);
        }
    }
    if !is_pi(lat.members[idx].order) {
        return Err(GroupError::Integrity(
            "join of normal π-subgroups is not a π-group".into(),
        ));
    }
    Ok(member_subgroup(g, &lat, idx))
}

/// The p-layer O_{p′,p}(G): the preimage in G of O_p(G/O_{p′}(G)).
pub fn p_layer(g: &PermGroup, p: u64) -> Result<Subgroup> {
    let others: Vec<u64> = g.primes().into_iter().filter(|&q| q != p).collect();
    let opp = pi_core(g, &others)?;
    if opp.is_trivial() {
        return pi_core(g, &[p]);
    }
    let epi = coset_action(g, &opp)?;
    let core = pi_core(epi.target(), &[p])?;
    epi.preimage_subgroup(core.gens())
}

/// Largest normal subgroup all of whose chief factors have simple types
/// accepted by `allow`.  The set of such subgroups is closed under joins
/// because the chief factors of a product N₁N₂ are factors of N₁ and of
/// N₂-modulo-N₁; the property is nevertheless re-verified on the join.
pub fn type_restricted_radical<F>(g: &PermGroup, allow: F) -> Result<Subgroup>
where
    F: Fn(&SimpleType) -> bool,
{
    let lat = lattice_data(g)?;
    let ok = |lat: &LatticeData, i: usize| -> Result<bool> {
        Ok(lat
            .interval_steps(0, i)?
            .iter()
            .all(|(s, _)| allow(s)))
    };
    let mut idx = 0;
    for i in 0..lat.len() {
        if ok(&lat, i)? {
            idx = lat.join(idx, i);
        }
    }
    if !ok(&lat, idx)? {
        return Err(GroupError::Integrity(
            "type-restricted radical join violates the type restriction".into(),
        ));
    }
    Ok(member_subgroup(g, &lat, idx))
}

/// The ω-d radical: the largest normal subgroup all of whose G-chief factors
/// have order divisible by at least one prime in `omega`.
pub fn omega_d_radical(g: &PermGroup, omega: &[u64]) -> Result<Subgroup> {
    type_restricted_radical(g, |s| s.primes().iter().any(|p| omega.contains(p)))
}

/// Largest normal subgroup satisfying `pred`, for predicates closed under
/// products of normal subgroups.  The predicate must accept the trivial
/// group; the join of the qualifying members is re-checked, and a predicate
/// that is not closed under normal products is reported as an integrity
/// error naming the failure.
pub fn n0_radical<F>(g: &PermGroup, pred: F) -> Result<Subgroup>
where
    F: Fn(&PermGroup) -> Result<bool>,
{
    let trivial = PermGroup::trivial(g.degree());
    if !pred(&trivial)? {
        return Err(GroupError::Integrity(
            "radical predicate rejects the trivial group".into(),
        ));
    }
    let lat = lattice_data(g)?;
    let mut idx = 0;
    for i in 1..lat.len() {
        let member = PermGroup::new(g.degree(), lat.members[i].gens.clone())?;
        if pred(&member)? {
            idx = lat.join(idx, i);
        }
    }
    if idx != 0 {
        let joined = PermGroup::new(g.degree(), lat.members[idx].gens.clone())?;
        if !pred(&joined)? {
            return Err(GroupError::Integrity(
                "predicate is not N₀-closed on this input: the product of qualifying normal subgroups fails it"
                    .into(),
            ));
        }
    }
    Ok(member_subgroup(g, &lat, idx))
}

/// Composition factors of `g` as a set of simple types, read off any chief
/// interval decomposition of the full lattice.
pub fn com(g: &PermGroup) -> Result<BTreeSet<SimpleType>> {
    let lat = lattice_data(g)?;
    Ok(lat
        .interval_steps(0, lat.full_index())?
        .into_iter()
        .map(|(s, _)| s)
        .collect())
}

/// Abelian composition factors of `g`.
pub fn com_plus(g: &PermGroup) -> Result<BTreeSet<SimpleType>> {
    Ok(com(g)?.into_iter().filter(|s| s.is_abelian()).collect())
}

/// Nonabelian composition factors of `g`.
pub fn com_minus(g: &PermGroup) -> Result<BTreeSet<SimpleType>> {
    Ok(com(g)?.into_iter().filter(|s| !s.is_abelian()).collect())
}

/// Every subgroup of `g` up to conjugacy, as element bitsets.
pub(crate) struct SubgroupClasses {
    /// Lexicographically least bitset of each conjugacy class of subgroups.
    pub reps: Vec<Bits>,
    /// Every subgroup of the parent (all conjugates of all classes).
    pub all: HashSet<Bits>,
}

/// Enumerates all subgroups of `g` up to conjugacy by cyclic extension:
/// every subgroup arises from a smaller one by adjoining one element of
/// prime-power order, so a breadth-first pass over class representatives
/// reaches every class.
pub(crate) fn subgroup_classes(g: &PermGroup) -> Result<SubgroupClasses> {
    let table = g.element_table()?;
    let muls = Muls::new(table.clone());
    let n = muls.n;
    let cmaps = conj_maps(g, &table);

    // Elements of prime-power order, each with the cyclic subgroup it
    // generates.
    let mut pp: Vec<(usize, Bits)> = Vec::new();
    for (e, perm) in table.list.iter().enumerate().skip(1) {
        let o = perm.order();
        if arith::factorize(o as u128).len() == 1 {
            let mut bits = Bits::empty(n);
            bits.set(0);
            let mut c = e;
            while c != 0 {
                bits.set(c);
                c = muls.mul(c, e);
            }
            pp.push((e, bits));
        }
    }

    let mut trivial = Bits::empty(n);
    trivial.set(0);
    let mut reps: Vec<Bits> = vec![trivial.clone()];
    let mut rep_gens: Vec<Vec<usize>> = vec![Vec::new()];
    let mut rep_set: HashSet<Bits> = HashSet::new();
    rep_set.insert(trivial.clone());
    let mut all: HashSet<Bits> = HashSet::new();
    all.insert(trivial);
    let mut tried: HashSet<Bits> = HashSet::new();

    let mut head = 0;
    while head < reps.len() {
        let h_bits = reps[head].clone();
        let h_gens = rep_gens[head].clone();
        head += 1;
        for (e, cyc) in &pp {
            if h_bits.get(*e) {
                continue;
            }
            let key = h_bits.union(cyc);
            if !tried.insert(key) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(*e);
            let cand = muls.closure(&gens);
            let orbit = conj_orbit(&cand, &cmaps, n);
            let rep = orbit.iter().min().expect("orbit is nonempty").clone();
            for b in orbit {
                all.insert(b);
            }
            if rep_set.insert(rep.clone()) {
                rep_gens.push(muls.greedy_gens(&rep));
                reps.push(rep);
            }
        }
    }
    Ok(SubgroupClasses { reps, all })
}

/// Orbit of a subgroup bitset under conjugation by the parent's generators.
fn conj_orbit(bits: &Bits, cmaps: &[Vec<u32>], n: usize) -> Vec<Bits> {
    let mut seen: HashSet<Bits> = HashSet::new();
    seen.insert(bits.clone());
    let mut orbit = vec![bits.clone()];
    let mut head = 0;
    while head < orbit.len() {
        let b = orbit[head].clone();
        head += 1;
        for cmap in cmaps {
            let mut nb = Bits::empty(n);
            for e in b.iter_ones() {
                nb.set(cmap[e] as usize);
            }
            if seen.insert(nb.clone()) {
                orbit.push(nb);
            }
        }
    }
    orbit
}

/// Frattini subgroup: the intersection of the maximal subgroups.
///
/// For the trivial group (which has no maximal subgroups) the intersection
/// is empty and the result is G itself.  Nilpotent groups use the product of
/// the Frattini subgroups of their Sylow subgroups, where Φ(P) = P′·⟨xᵖ⟩;
/// any other group must fit the enumeration capacity, since the maximal
/// subgroups are found by listing all subgroup classes.
pub fn frattini(g: &PermGroup) -> Result<Subgroup> {
    if let Some(gens) = g.inner.frattini.get() {
        return Ok(Subgroup::from_verified(g, gens.as_ref().clone()));
    }
    let gens = frattini_gens(g)?;
    let _ = g.inner.frattini.set(Arc::new(gens));
    let gens = g.inner.frattini.get().expect("just set");
    Ok(Subgroup::from_verified(g, gens.as_ref().clone()))
}

fn frattini_gens(g: &PermGroup) -> Result<Vec<Perm>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    if is_nilpotent(g)? {
        // Burnside basis theorem: in a p-group, Φ(P) = P′⟨xᵖ : x ∈ P⟩, and
        // the Frattini subgroup of a nilpotent group is the product over its
        // Sylow subgroups.
        let mut out: Vec<Perm> = Vec::new();
        for p in g.primes() {
            let syl = sylow_subgroup(g, p)?;
            let pg = syl.group();
            let derived = crate::subgroup::derived_subgroup(pg);
            out.extend(derived.gens().iter().cloned());
            let table = pg.element_table()?;
            let mut powers: BTreeSet<Perm> = BTreeSet::new();
            for x in table.list.iter() {
                let y = x.pow(p);
                if !y.is_identity() {
                    powers.insert(y);
                }
            }
            out.extend(powers);
        }
        let phi = PermGroup::new(g.degree(), out)?;
        return Ok(phi.gens().to_vec());
    }
    let caps = Caps::global();
    let order = g.order();
    if order > caps.frattini_order {
        return Err(GroupError::Capacity {
            what: "group order for Frattini subgroup enumeration",
            value: order,
            bound: caps.frattini_order,
        });
    }
    let classes = subgroup_classes(g)?;
    let table = g.element_table()?;
    let muls = Muls::new(table.clone());
    let n = muls.n;
    let mut inter = muls.full();
    let mut found_maximal = false;
    for rep in &classes.reps {
        let size = rep.count();
        if size == n {
            continue;
        }
        let maximal = !classes
            .all
            .iter()
            .any(|b| b.count() > size && b.count() < n && rep.is_subset(b));
        if !maximal {
            continue;
        }
        found_maximal = true;
        // Core of the maximal subgroup: the largest subgroup contained in
        // every conjugate, i.e. the intersection over the conjugacy orbit.
        let cmaps = conj_maps(g, &table);
        let mut core = rep.clone();
        for b in conj_orbit(rep, &cmaps, n) {
            core = core.intersect(&b);
        }
        // Maximality is conjugation-invariant, so intersecting the cores of
        // the class representatives intersects all maximal subgroups.
        inter = inter.intersect(&core);
    }
    if !found_maximal {
        return Err(GroupError::Integrity(
            "nontrivial group has no maximal subgroup".into(),
        ));
    }
    let gens: Vec<Perm> = muls
        .greedy_gens(&inter)
        .into_iter()
        .map(|e| table.list[e].clone())
        .collect();
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::subgroup::{elementary_abelian_shape, is_soluble};

    fn symmetric(n: usize) -> PermGroup {
        PermGroup::symmetric(n)
    }
    fn alternating(n: usize) -> PermGroup {
        PermGroup::alternating(n)
    }
    fn cyclic(n: usize) -> PermGroup {
        PermGroup::cyclic(n)
    }
    fn dihedral(n: usize) -> PermGroup {
        PermGroup::dihedral(n)
    }
    fn elementary_abelian(p: usize, k: usize) -> PermGroup {
        PermGroup::elementary_abelian(p, k)
    }
    fn quaternion8() -> PermGroup {
        PermGroup::quaternion8()
    }
    fn klein4() -> PermGroup {
        PermGroup::klein4()
    }

    fn lattice_orders(g: &PermGroup) -> Vec<u128> {
        let lat = normal_subgroups(g).unwrap();
        (0..lat.len()).map(|i| lat.order_of(i)).collect()
    }

    #[test]
    fn normal_lattices_match_hand_counts() {
        assert_eq!(lattice_orders(&symmetric(4)), vec![1, 4, 12, 24]);
        assert_eq!(lattice_orders(&alternating(4)), vec![1, 4, 12]);
        assert_eq!(lattice_orders(&quaternion8()), vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(lattice_orders(&dihedral(4)), vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(lattice_orders(&cyclic(12)), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(lattice_orders(&alternating(5)), vec![1, 60]);
        assert_eq!(lattice_orders(&symmetric(3)), vec![1, 3, 6]);
        assert_eq!(lattice_orders(&cyclic(6)), vec![1, 2, 3, 6]);
        // Subspace counts of F₂³: 1 + 7 + 7 + 1.
        assert_eq!(lattice_orders(&elementary_abelian(2, 3)).len(), 16);
    }

    #[test]
    fn s4_minimal_normal_is_the_double_transposition_subgroup() {
        let g = symmetric(4);
        let lat = normal_subgroups(&g).unwrap();
        let mins = lat.minimal_members();
        assert_eq!(mins.len(), 1);
        let v = lat.member(mins[0]);
        assert_eq!(v.order(), 4);
        assert!(v.is_normal());
        let table = v.group().element_table().unwrap();
        for p in table.list.iter().skip(1) {
            assert_eq!(p.order(), 2);
            assert_eq!((0..4).filter(|&i| p.images()[i] != i as u16).count(), 4);
        }
    }

    #[test]
    fn join_meet_are_bounds() {
        for g in [symmetric(4), dihedral(4), cyclic(12)] {
            let lat = normal_subgroups(&g).unwrap();
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let m = lat.meet(i, j).unwrap();
                    let u = lat.join(i, j);
                    assert!(lat.contains_index(i, m) && lat.contains_index(j, m));
                    assert!(lat.contains_index(u, i) && lat.contains_index(u, j));
                    // Meet and join are tight: nothing fits strictly between
                    // them and the pair.
                    for k in 0..lat.len() {
                        if lat.contains_index(i, k) && lat.contains_index(j, k) {
                            assert!(lat.contains_index(m, k));
                        }
                        if lat.contains_index(k, i) && lat.contains_index(k, j) {
                            assert!(lat.contains_index(k, u));
                        }
                    }
                }
            }
        }
    }

    /// The lattice (built from conjugacy-class closures and joins) must agree
    /// with an independent enumeration of all subgroups filtered for
    /// normality.
    #[test]
    fn lattice_agrees_with_subgroup_enumeration() {
        for g in [
            symmetric(4),
            alternating(4),
            dihedral(4),
            quaternion8(),
            cyclic(12),
            symmetric(3),
        ] {
            let lat = lattice_data(&g).unwrap();
            let table = g.element_table().unwrap();
            let cmaps = conj_maps(&g, &table);
            let classes = subgroup_classes(&g).unwrap();
            let mut normal: Vec<&Bits> = classes
                .all
                .iter()
                .filter(|b| {
                    cmaps
                        .iter()
                        .all(|cmap| b.iter_ones().all(|e| b.get(cmap[e] as usize)))
                })
                .collect();
            normal.sort();
            let mut from_lattice: Vec<&Bits> = lat.members.iter().map(|m| &m.bits).collect();
            from_lattice.sort();
            assert_eq!(normal, from_lattice, "degree {}", g.degree());
        }
    }

    #[test]
    fn socle_values() {
        assert_eq!(socle(&symmetric(4)).unwrap().order(), 4);
        assert_eq!(socle(&cyclic(6)).unwrap().order(), 6);
        assert_eq!(socle(&quaternion8()).unwrap().order(), 2);
        assert_eq!(socle(&cyclic(12)).unwrap().order(), 6);
        assert_eq!(socle(&alternating(5)).unwrap().order(), 60);
        assert_eq!(socle(&elementary_abelian(2, 3)).unwrap().order(), 8);
        assert!(matches!(
            socle(&PermGroup::trivial(3)),
            Err(GroupError::Undefined(_))
        ));
    }

    #[test]
    fn frattini_values() {
        assert_eq!(frattini(&PermGroup::trivial(2)).unwrap().order(), 1);
        assert_eq!(frattini(&symmetric(4)).unwrap().order(), 1);
        assert_eq!(frattini(&symmetric(3)).unwrap().order(), 1);
        assert_eq!(frattini(&alternating(4)).unwrap().order(), 1);
        assert_eq!(frattini(&quaternion8()).unwrap().order(), 2);
        assert_eq!(frattini(&dihedral(4)).unwrap().order(), 2);
        assert_eq!(frattini(&dihedral(8)).unwrap().order(), 4);
        assert_eq!(frattini(&cyclic(12)).unwrap().order(), 2);
        assert_eq!(frattini(&cyclic(9)).unwrap().order(), 3);
        // Nilpotent with two primes: Φ(D₈×C₃) = Φ(D₈)×Φ(C₃).
        assert_eq!(
            frattini(&direct_product(&dihedral(4), &cyclic(3)))
                .unwrap()
                .order(),
            2
        );
        // Non-nilpotent, nontrivial result: Φ(C₄×S₃) = Φ(C₄)×Φ(S₃).
        let g = direct_product(&cyclic(4), &symmetric(3));
        let phi = frattini(&g).unwrap();
        assert_eq!(phi.order(), 2);
        assert!(phi.is_normal());
    }

    #[test]
    fn chief_series_of_s4() {
        let g = symmetric(4);
        let s = chief_series(&g).unwrap();
        assert_eq!(s.len(), 3);
        let shapes: Vec<(SimpleType, u32)> = s
            .factors()
            .iter()
            .map(|f| (f.simple_type(), f.copies()))
            .collect();
        assert_eq!(
            shapes,
            vec![
                (SimpleType::Cyclic(2), 2),
                (SimpleType::Cyclic(3), 1),
                (SimpleType::Cyclic(2), 1),
            ]
        );
        let borders: Vec<u128> = (0..3).map(|i| s.factor(i).lower().order()).collect();
        assert_eq!(borders, vec![1, 4, 12]);
        assert_eq!(s.factor(2).upper().order(), 24);

        let bottom = s.factor(0);
        assert_eq!(bottom.order(), 4);
        assert_eq!(elementary_abelian_shape(bottom.factor()), Some((2, 2)));
        // The action on the bottom factor has kernel C_G(V) = V and induces
        // the full symmetric group on the three involutions, of order 6.
        let act = bottom.action().unwrap();
        assert_eq!(act.kernel().order(), 4);
        assert_eq!(act.target().order(), 6);
    }

    #[test]
    fn chief_series_tie_breaks_ascend_by_factor_order() {
        let s = chief_series(&cyclic(12)).unwrap();
        let types: Vec<SimpleType> = s.factors().iter().map(|f| f.simple_type()).collect();
        assert_eq!(
            types,
            vec![
                SimpleType::Cyclic(2),
                SimpleType::Cyclic(2),
                SimpleType::Cyclic(3)
            ]
        );
        let alt = chief_series_alt(&cyclic(12)).unwrap();
        let alt_types: Vec<SimpleType> = alt.factors().iter().map(|f| f.simple_type()).collect();
        assert_eq!(
            alt_types,
            vec![
                SimpleType::Cyclic(3),
                SimpleType::Cyclic(2),
                SimpleType::Cyclic(2)
            ]
        );
    }

    /// The multiset of chief factors must not depend on the series chosen.
    #[test]
    fn chief_factors_are_series_independent() {
        for g in [
            symmetric(4),
            cyclic(12),
            dihedral(6),
            alternating(4),
            quaternion8(),
            direct_product(&symmetric(3), &cyclic(3)),
            direct_product(&alternating(5), &cyclic(2)),
        ] {
            let mut std: Vec<(SimpleType, u32)> = chief_series(&g)
                .unwrap()
                .factors()
                .iter()
                .map(|f| (f.simple_type(), f.copies()))
                .collect();
            let mut alt: Vec<(SimpleType, u32)> = chief_series_alt(&g)
                .unwrap()
                .factors()
                .iter()
                .map(|f| (f.simple_type(), f.copies()))
                .collect();
            std.sort();
            alt.sort();
            assert_eq!(std, alt, "degree {}", g.degree());
        }
    }

    /// Each chief factor is characteristically simple: its socle is itself,
    /// and its count of minimal normal subgroups matches the copy count
    /// ((p^m−1)/(p−1) for C_p^m, m for a power of a nonabelian simple group).
    #[test]
    fn chief_factor_realizations_are_characteristically_simple() {
        for g in [symmetric(4), alternating(5), elementary_abelian(2, 3)] {
            let s = chief_series(&g).unwrap();
            for f in s.factors() {
                let fac = f.factor();
                assert_eq!(fac.order(), f.order());
                assert_eq!(socle(fac).unwrap().order(), fac.order());
                let mins = normal_subgroups(fac).unwrap().minimal_members().len() as u64;
                let expected = match f.simple_type() {
                    SimpleType::Cyclic(p) => (p.pow(f.copies()) - 1) / (p - 1),
                    SimpleType::NonAbelian { .. } => f.copies() as u64,
                };
                assert_eq!(mins, expected);
            }
        }
    }

    #[test]
    fn chief_series_of_trivial_group_is_empty() {
        let s = chief_series(&PermGroup::trivial(2)).unwrap();
        assert!(s.is_empty());
        assert!(com(&PermGroup::trivial(2)).unwrap().is_empty());
    }

    #[test]
    fn pi_core_values() {
        let s4 = symmetric(4);
        assert_eq!(pi_core(&s4, &[2]).unwrap().order(), 4);
        assert_eq!(pi_core(&s4, &[3]).unwrap().order(), 1);
        assert_eq!(pi_core(&s4, &[2, 3]).unwrap().order(), 24);
        let s3 = symmetric(3);
        assert_eq!(pi_core(&s3, &[3]).unwrap().order(), 3);
        assert_eq!(pi_core(&s3, &[2]).unwrap().order(), 1);
        let c12 = cyclic(12);
        assert_eq!(pi_core(&c12, &[2]).unwrap().order(), 4);
        assert_eq!(pi_core(&c12, &[3]).unwrap().order(), 3);
        let a5 = alternating(5);
        assert_eq!(pi_core(&a5, &[2]).unwrap().order(), 1);
        assert_eq!(pi_core(&a5, &[2, 3, 5]).unwrap().order(), 60);
    }

    #[test]
    fn p_layer_values() {
        assert_eq!(p_layer(&symmetric(3), 2).unwrap().order(), 6);
        assert_eq!(p_layer(&symmetric(3), 3).unwrap().order(), 3);
        assert_eq!(p_layer(&symmetric(4), 2).unwrap().order(), 4);
        let a4_inside = p_layer(&symmetric(4), 3).unwrap();
        assert_eq!(a4_inside.order(), 12);
        assert!(a4_inside.is_normal());
        assert_eq!(p_layer(&cyclic(12), 2).unwrap().order(), 12);
        assert_eq!(p_layer(&alternating(5), 5).unwrap().order(), 1);
    }

    #[test]
    fn omega_d_radical_values() {
        assert_eq!(omega_d_radical(&symmetric(4), &[2]).unwrap().order(), 4);
        assert_eq!(omega_d_radical(&symmetric(4), &[3]).unwrap().order(), 1);
        assert_eq!(omega_d_radical(&symmetric(4), &[2, 3]).unwrap().order(), 24);
        // A nonabelian chief factor counts as ω-divisible as soon as one of
        // its primes lies in ω.
        assert_eq!(omega_d_radical(&alternating(5), &[2]).unwrap().order(), 60);
        assert_eq!(
            omega_d_radical(&direct_product(&alternating(5), &cyclic(3)), &[5])
                .unwrap()
                .order(),
            60
        );
    }

    #[test]
    fn n0_radical_values() {
        let soluble = |g: &PermGroup| Ok(is_soluble(g));
        assert_eq!(n0_radical(&symmetric(4), soluble).unwrap().order(), 24);
        assert_eq!(n0_radical(&alternating(5), soluble).unwrap().order(), 1);
        assert_eq!(
            n0_radical(&direct_product(&alternating(5), &cyclic(2)), soluble)
                .unwrap()
                .order(),
            2
        );
        let nilpotent = |g: &PermGroup| crate::subgroup::is_nilpotent(g);
        assert_eq!(n0_radical(&symmetric(4), nilpotent).unwrap().order(), 4);
        assert_eq!(n0_radical(&symmetric(3), nilpotent).unwrap().order(), 3);
        assert_eq!(n0_radical(&dihedral(6), nilpotent).unwrap().order(), 6);
    }

    #[test]
    fn n0_radical_rejects_non_closed_predicate() {
        // "Cyclic" is not closed under products of normal subgroups: in the
        // Klein four-group the three C₂s qualify but their join does not.
        let cyclic_pred = |g: &PermGroup| {
            let table = g.element_table()?;
            Ok(table.list.iter().any(|p| p.order() as u128 == g.order()))
        };
        let err = n0_radical(&klein4(), cyclic_pred).unwrap_err();
        match err {
            GroupError::Integrity(msg) => assert!(msg.contains("N₀-closed")),
            other => panic!("expected integrity error, got {other:?}"),
        }
    }

    #[test]
    fn com_values() {
        let s4 = com(&symmetric(4)).unwrap();
        assert_eq!(
            s4.into_iter().collect::<Vec<_>>(),
            vec![SimpleType::Cyclic(2), SimpleType::Cyclic(3)]
        );
        let a5 = com(&alternating(5)).unwrap();
        assert_eq!(
            a5.into_iter().collect::<Vec<_>>(),
            vec![SimpleType::NonAbelian { order: 60 }]
        );
        let big = direct_product(&alternating(5), &symmetric(3));
        assert_eq!(com(&big).unwrap().len(), 3);
        assert_eq!(
            com_plus(&big).unwrap().into_iter().collect::<Vec<_>>(),
            vec![SimpleType::Cyclic(2), SimpleType::Cyclic(3)]
        );
        assert_eq!(
            com_minus(&big).unwrap().into_iter().collect::<Vec<_>>(),
            vec![SimpleType::NonAbelian { order: 60 }]
        );
        assert!(com_minus(&symmetric(4)).unwrap().is_empty());
    }

    #[test]
    fn subgroup_class_counts() {
        let counts = |g: &PermGroup| {
            let c = subgroup_classes(g).unwrap();
            (c.all.len(), c.reps.len())
        };
        assert_eq!(counts(&symmetric(4)), (30, 11));
        assert_eq!(counts(&symmetric(3)), (6, 4));
        assert_eq!(counts(&alternating(4)), (10, 5));
        assert_eq!(counts(&quaternion8()), (6, 6));
        assert_eq!(counts(&dihedral(4)), (10, 8));
        assert_eq!(counts(&cyclic(12)), (6, 6));
        assert_eq!(counts(&klein4()), (5, 5));
    }

    #[test]
    fn lattice_index_round_trips() {
        let g = symmetric(4);
        let lat = normal_subgroups(&g).unwrap();
        for i in 0..lat.len() {
            assert_eq!(lat.index_of(&lat.member(i)).unwrap(), Some(i));
        }
        let transposition = Perm::parse_cycles(4, "(1 2)", 0).unwrap();
        let point_stab = Subgroup::new(&g, vec![transposition]).unwrap();
        assert_eq!(lat.index_of(&point_stab).unwrap(), None);
    }
}
