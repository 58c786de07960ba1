//! Permutation groups backed by deterministic stabilizer chains.
//!
//! The chain is built by the classical Schreier generator / sifting loop with
//! no randomization: base points are the smallest moved points (or a forced
//! prefix, which pointwise-stabilizer computations rely on), orbits are grown
//! breadth-first with generators in insertion order, and scans repeat until no
//! Schreier generator survives sifting.  Every derived quantity (element
//! lists, conjugacy classes) is reported in a canonical order so repeated runs
//! agree byte for byte.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::perm::{pad_pair, Perm};

pub(crate) struct Level {
    pub point: u16,
    pub gens: Vec<Perm>,
    pub orbit: Vec<u16>,
    pub transversal: Vec<Option<Perm>>,
}

/// A base and strong generating set for a permutation group.
pub(crate) struct StabChain {
    degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm], forced_prefix: &[u16]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &p in forced_prefix {
            chain.push_level(p);
        }
        for g in gens {
            if !g.is_identity() {
                let (res, lvl) = chain.sift(0, g.clone());
                if !res.is_identity() {
                    chain.add_at(lvl, res);
                }
            }
        }
        chain.complete();
        chain
    }

    fn push_level(&mut self, point: u16) {
        let mut transversal = vec![None; self.degree];
        transversal[point as usize] = Some(Perm::identity(self.degree));
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        });
    }

    /// Generators of the group at `level` (all strong generators fixing the
    /// base points above it).
    fn gens_from(&self, level: usize) -> Vec<Perm> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, level: usize) {
        let gens = self.gens_from(level);
        let point = self.levels[level].point;
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[point as usize] = Some(Perm::identity(self.degree));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for s in &gens {
                let y = s.apply(x as usize);
                if transversal[y].is_none() {
                    let t = transversal[x as usize].as_ref().unwrap().compose(s);
                    transversal[y] = Some(t);
                    orbit.push(y as u16);
                }
            }
        }
        self.levels[level].orbit = orbit;
        self.levels[level].transversal = transversal;
    }

    /// Strips `g` down the chain starting at `from`; returns the residue and
    /// the level at which sifting stopped (== number of levels when `g`
    /// passed all of them).
    fn sift(&self, from: usize, g: Perm) -> (Perm, usize) {
        let mut g = g;
        for i in from..self.levels.len() {
            if g.is_identity() {
                return (g, i);
            }
            let p = self.levels[i].point as usize;
            let x = g.apply(p);
            match &self.levels[i].transversal[x] {
                None => return (g, i),
                Some(t) => g = g.compose(&t.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn add_at(&mut self, level: usize, residue: Perm) {
        debug_assert!(!residue.is_identity());
        if level == self.levels.len() {
            let point = residue.smallest_moved().unwrap() as u16;
            self.push_level(point);
        }
        self.levels[level].gens.push(residue);
        for i in (0..=level).rev() {
            self.recompute_orbit(i);
        }
    }

    /// Repeats full Schreier scans until every Schreier generator sifts to
    /// the identity.  Each insertion strictly grows some orbit product, so
    /// this terminates.
    fn complete(&mut self) {
        'scan: loop {
            for i in 0..self.levels.len() {
                let hgens = self.gens_from(i);
                for oi in 0..self.levels[i].orbit.len() {
                    let x = self.levels[i].orbit[oi] as usize;
                    let ux = self.levels[i].transversal[x].clone().unwrap();
                    for s in &hgens {
                        let y = s.apply(x);
                        let uy = self.levels[i].transversal[y].clone().unwrap();
                        let schreier = ux.compose(s).compose(&uy.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (res, lvl) = self.sift(i + 1, schreier);
                        if !res.is_identity() {
                            self.add_at(lvl, res);
                            continue 'scan;
                        }
                    }
                }
            }
            return;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.sift(0, g.clone()).0.is_identity()
    }

    /// All group elements as products of transversal representatives, one per
    /// chain decomposition, in a fixed deterministic order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for e in &out {
                for &x in &level.orbit {
                    next.push(e.compose(level.transversal[x as usize].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }

    /// Strong generators fixing the first `prefix_len` base points, i.e. a
    /// generating set for the pointwise stabilizer of the forced prefix.
    pub fn tail_gens(&self, prefix_len: usize) -> Vec<Perm> {
        self.levels[prefix_len.min(self.levels.len())..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }
}

/// Elements of a group together with a lookup index; list is sorted
/// lexicographically by image array, so the identity is entry 0.
pub struct ElementTable {
    pub list: Vec<Perm>,
    pub index: HashMap<Perm, u32>,
}

impl ElementTable {
    pub fn position(&self, g: &Perm) -> Option<u32> {
        self.index.get(g).copied()
    }
}

pub(crate) struct Inner {
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub chain: OnceLock<StabChain>,
    pub elements: OnceLock<Arc<ElementTable>>,
    pub classes: OnceLock<Arc<Vec<Vec<u32>>>>,
    pub lattice: OnceLock<Arc<crate::structure::LatticeData>>,
    pub chief: OnceLock<Arc<crate::structure::ChiefData>>,
    pub chief_alt: OnceLock<Arc<crate::structure::ChiefData>>,
    pub frattini: OnceLock<Arc<Vec<Perm>>>,
    pub fingerprint: OnceLock<Arc<crate::iso::Fingerprint>>,
    pub derived: OnceLock<Arc<Vec<Perm>>>,
    pub sylow_cache: Mutex<HashMap<u64, Arc<Vec<Perm>>>>,
    pub pred_cache: Mutex<HashMap<String, bool>>,
}

/// A finite permutation group, cheap to clone, with lazily cached structure.
#[derive(Clone)]
pub struct PermGroup {
    pub(crate) inner: Arc<Inner>,
}

impl PermGroup {
    /// Builds a group from generators; identity and duplicate generators are
    /// dropped, the rest keep their input order.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(GroupError::Parse {
                line: 0,
                msg: "degree must be at least 1".into(),
            });
        }
        let mut cleaned: Vec<Perm> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            if !g.is_identity() && !cleaned.contains(&g) {
                cleaned.push(g);
            }
        }
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens: cleaned,
                chain: OnceLock::new(),
                elements: OnceLock::new(),
                classes: OnceLock::new(),
                lattice: OnceLock::new(),
                chief: OnceLock::new(),
                chief_alt: OnceLock::new(),
                frattini: OnceLock::new(),
                fingerprint: OnceLock::new(),
                derived: OnceLock::new(),
                sylow_cache: Mutex::new(HashMap::new()),
                pred_cache: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree.max(1), Vec::new()).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.inner.gens
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::build(self.inner.degree, &self.inner.gens, &[]))
    }

    /// A standalone chain whose base starts with the given points; exposes
    /// the pointwise-stabilizer machinery to the tests below.  Not cached.
    #[cfg(test)]
    fn build_prefix_chain(&self, prefix: &[u16]) -> StabChain {
        StabChain::build(self.inner.degree, &self.inner.gens, prefix)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.gens.is_empty()
    }

    /// Membership via sifting.  A permutation of the wrong degree is never a
    /// member.
    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.inner.degree && self.chain().contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.inner.gens;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// The full element table, sorted lexicographically (identity first).
    /// Guarded by the element-order capacity bound.
    pub fn element_table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.inner.elements.get() {
            return Ok(t.clone());
        }
        let caps = Caps::global();
        let order = self.order();
        if order > caps.element_order {
            return Err(GroupError::Capacity {
                what: "group order for element enumeration",
                value: order,
                bound: caps.element_order,
            });
        }
        let mut list = self.chain().elements();
        list.sort_unstable();
        debug_assert_eq!(list.len() as u128, order);
        let index = list
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let table = Arc::new(ElementTable { list, index });
        let _ = self.inner.elements.set(table.clone());
        Ok(self.inner.elements.get().unwrap().clone())
    }

    /// Conjugacy classes as sorted index lists into the element table,
    /// ordered by smallest member; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Result<Arc<Vec<Vec<u32>>>> {
        if let Some(c) = self.inner.classes.get() {
            return Ok(c.clone());
        }
        let table = self.element_table()?;
        let n = table.list.len();
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut class = vec![start as u32];
            seen[start] = true;
            let mut head = 0;
            while head < class.len() {
                let x = table.list[class[head] as usize].clone();
                head += 1;
                for g in &self.inner.gens {
                    let y = x.conjugate(g);
                    let yi = table.position(&y).expect("conjugate stays in group");
                    if !seen[yi as usize] {
                        seen[yi as usize] = true;
                        class.push(yi);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        let arc = Arc::new(classes);
        let _ = self.inner.classes.set(arc);
        Ok(self.inner.classes.get().unwrap().clone())
    }

    /// One representative per conjugacy class: the lexicographically smallest
    /// member of each.
    pub fn class_reps(&self) -> Result<Vec<Perm>> {
        let table = self.element_table()?;
        Ok(self
            .conjugacy_classes()?
            .iter()
            .map(|c| table.list[c[0] as usize].clone())
            .collect())
    }

    /// Primes dividing the group order, increasing.
    pub fn primes(&self) -> Vec<u64> {
        crate::arith::prime_divisors(self.order())
    }

    /// Cached boolean predicate store, used by class-membership evaluation to
    /// avoid recomputing builtin class membership for the same group.  The
    /// lock is released during computation, so re-entrant evaluation is safe.
    pub(crate) fn cached_pred(&self, key: &str, compute: impl FnOnce() -> bool) -> bool {
        if let Some(&v) = self.inner.pred_cache.lock().unwrap().get(key) {
            return v;
        }
        let v = compute();
        self.inner.pred_cache.lock().unwrap().insert(key.into(), v);
        v
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {} gens)",
            self.degree(),
            self.order(),
            self.gens().len()
        )
    }
}

/// Parses the group file format: optional `#` comments, a `degree N` line,
/// then one generator per line in 1-based disjoint-cycle notation.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line.strip_prefix("degree").ok_or(GroupError::Parse {
                    line: line_no,
                    msg: "expected `degree N` before generators".into(),
                })?;
                let n: usize = rest.trim().parse().map_err(|_| GroupError::Parse {
                    line: line_no,
                    msg: format!("invalid degree {:?}", rest.trim()),
                })?;
                if n == 0 || n > u16::MAX as usize {
                    return Err(GroupError::Parse {
                        line: line_no,
                        msg: format!("degree {n} out of range"),
                    });
                }
                degree = Some(n);
            }
            Some(n) => gens.push(Perm::parse_cycles(n, line, line_no)?),
        }
    }
    let degree = degree.ok_or(GroupError::Parse {
        line: 0,
        msg: "missing `degree N` line".into(),
    })?;
    PermGroup::new(degree, gens)
}

/// Canonical group-file serialization: degree line plus one generator per
/// line in cycle notation, in stored generator order.
pub fn render_group_file(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    if g.gens().is_empty() {
        out.push_str("()\n");
    }
    for gen in g.gens() {
        out.push_str(&gen.to_string());
        out.push('\n');
    }
    out
}

// ---- standard constructions ----

impl PermGroup {
    /// Symmetric group on `n` points, `⟨(1 2), (1 2 … n)⟩`.
    pub fn symmetric(n: usize) -> PermGroup {
        assert!(n >= 1);
        if n == 1 {
            return PermGroup::trivial(1);
        }
        let mut gens = Vec::new();
        let mut tr: Vec<u16> = (0..n as u16).collect();
        tr.swap(0, 1);
        gens.push(Perm::from_images(tr).unwrap());
        let cyc: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        gens.push(Perm::from_images(cyc).unwrap());
        PermGroup::new(n, gens).unwrap()
    }

    /// Alternating group on `n` points, generated by 3-cycles `(1 2 k)`.
    pub fn alternating(n: usize) -> PermGroup {
        assert!(n >= 1);
        if n <= 2 {
            return PermGroup::trivial(n);
        }
        let mut gens = Vec::new();
        for k in 2..n {
            let mut img: Vec<u16> = (0..n as u16).collect();
            img[0] = 1;
            img[1] = k as u16;
            img[k] = 0;
            gens.push(Perm::from_images(img).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// Cyclic group of order `n` on `n` points.
    pub fn cyclic(n: usize) -> PermGroup {
        assert!(n >= 1);
        let cyc: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        PermGroup::new(n, vec![Perm::from_images(cyc).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2n` on `n` points (`n ≥ 3`).
    pub fn dihedral(n: usize) -> PermGroup {
        assert!(n >= 3);
        let rot: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        let refl: Vec<u16> = (0..n as u16).map(|i| ((n as u16) - i) % n as u16).collect();
        PermGroup::new(
            n,
            vec![
                Perm::from_images(rot).unwrap(),
                Perm::from_images(refl).unwrap(),
            ],
        )
        .unwrap()
    }

    /// Elementary abelian group of order `p^k` as `k` disjoint `p`-cycles.
    pub fn elementary_abelian(p: usize, k: usize) -> PermGroup {
        assert!(k >= 1 && p >= 2);
        let degree = p * k;
        let mut gens = Vec::new();
        for block in 0..k {
            let mut img: Vec<u16> = (0..degree as u16).collect();
            for j in 0..p {
                img[block * p + j] = (block * p + (j + 1) % p) as u16;
            }
            gens.push(Perm::from_images(img).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    /// Quaternion group of order 8 in its regular representation; points are
    /// ordered 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion8() -> PermGroup {
        let i = Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
        let j = Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
        PermGroup::new(8, vec![i, j]).unwrap()
    }

    /// Klein four-group on 4 points.
    pub fn klein4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Perm::parse_cycles(4, "(1 2)(3 4)", 0).unwrap(),
                Perm::parse_cycles(4, "(1 3)(2 4)", 0).unwrap(),
            ],
        )
        .unwrap()
    }
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let ida = Perm::identity(a.degree());
    let idb = Perm::identity(b.degree());
    let mut gens: Vec<Perm> = a.gens().iter().map(|g| pad_pair(g, &idb)).collect();
    gens.extend(b.gens().iter().map(|h| pad_pair(&ida, h)));
    PermGroup::new(a.degree() + b.degree(), gens).unwrap()
}
