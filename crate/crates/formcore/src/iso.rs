//! Exact isomorphism testing for small groups.
//!
//! Cheap invariants (order, element-order multiset, conjugacy class profile,
//! derived and center orders) reject most non-isomorphic pairs; abelian pairs
//! are decided by the element-order multiset alone, which classifies finite
//! abelian groups.  The remaining pairs go through generator-image
//! backtracking where each partial assignment is validated by checking that
//! the diagonal subgroup it generates has exactly the order of the source
//! prefix — a partial map extends to a monomorphism iff that holds.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::{pad_pair, Perm};
use crate::subgroup::{center, derived_subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u128,
    pub abelian: bool,
    /// (element order, element count), sorted by order.
    pub element_orders: Vec<(u64, u32)>,
    /// (element order, class size, class count), sorted.
    pub class_profile: Vec<(u64, u64, u32)>,
    pub derived_order: u128,
    pub center_order: u128,
}

pub fn fingerprint(g: &PermGroup) -> Result<Arc<Fingerprint>> {
    if let Some(f) = g.inner.fingerprint.get() {
        return Ok(f.clone());
    }
    let table = g.element_table()?;
    let classes = g.conjugacy_classes()?;
    let mut order_counts: BTreeMap<u64, u32> = BTreeMap::new();
    for e in &table.list {
        *order_counts.entry(e.order()).or_insert(0) += 1;
    }
    let mut class_counts: BTreeMap<(u64, u64), u32> = BTreeMap::new();
    for c in classes.iter() {
        let rep_order = table.list[c[0] as usize].order();
        *class_counts.entry((rep_order, c.len() as u64)).or_insert(0) += 1;
    }
    let f = Arc::new(Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        element_orders: order_counts.into_iter().collect(),
        class_profile: class_counts
            .into_iter()
            .map(|((o, s), n)| (o, s, n))
            .collect(),
        derived_order: derived_subgroup(g).order(),
        center_order: center(g)?.order(),
    });
    let _ = g.inner.fingerprint.set(f);
    Ok(g.inner.fingerprint.get().unwrap().clone())
}

/// A short generating sequence: greedily extends by the first class
/// representative (largest element order first) that enlarges the generated
/// subgroup.
fn small_generating_sequence(g: &PermGroup) -> Result<Vec<Perm>> {
    let mut reps = g.class_reps()?;
    reps.sort_by_key(|r| std::cmp::Reverse(r.order()));
    let mut gens: Vec<Perm> = Vec::new();
    let mut current = PermGroup::trivial(g.degree());
    while current.order() < g.order() {
        let next = reps
            .iter()
            .find(|r| !current.contains(r))
            .expect("reps generate the group")
            .clone();
        gens.push(next);
        current = PermGroup::new(g.degree(), gens.clone())?;
    }
    Ok(gens)
}

struct Search<'a> {
    a: &'a PermGroup,
    b: &'a PermGroup,
    gens_a: Vec<Perm>,
    /// order of ⟨gens_a[..=k]⟩ for each prefix
    prefix_orders: Vec<u128>,
    /// class representative images allowed for the first generator
    first_candidates: Vec<Perm>,
    /// element candidates (by order/class size) for later generators
    later_candidates: Vec<Vec<Perm>>,
}

impl Search<'_> {
    fn run(&self) -> bool {
        let mut chosen: Vec<Perm> = Vec::new();
        self.extend(&mut chosen)
    }

    fn extend(&self, chosen: &mut Vec<Perm>) -> bool {
        let k = chosen.len();
        if k == self.gens_a.len() {
            // surjectivity: the images must generate all of b
            let image = PermGroup::new(self.b.degree(), chosen.clone()).expect("degree ok");
            return image.order() == self.b.order();
        }
        let candidates = if k == 0 {
            &self.first_candidates
        } else {
            &self.later_candidates[k]
        };
        'cands: for cand in candidates {
            // cheap word checks against already-placed generators
            for (aj, bj) in self.gens_a[..k].iter().zip(chosen.iter()) {
                if aj.compose(&self.gens_a[k]).order() != bj.compose(cand).order() {
                    continue 'cands;
                }
                if Perm::commutator(aj, &self.gens_a[k]).order()
                    != Perm::commutator(bj, cand).order()
                {
                    continue 'cands;
                }
            }
            // diagonal order check: pairs must generate a graph of order
            // |⟨a-prefix⟩|
            let pairs: Vec<Perm> = self.gens_a[..=k]
                .iter()
                .zip(chosen.iter().chain(std::iter::once(cand)))
                .map(|(x, y)| pad_pair(x, y))
                .collect();
            let diag = PermGroup::new(self.a.degree() + self.b.degree(), pairs)
                .expect("degree ok");
            if diag.order() != self.prefix_orders[k] {
                continue 'cands;
            }
            chosen.push(cand.clone());
            if self.extend(chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Decides isomorphism of two groups within the capacity bound.
pub fn are_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    let caps = Caps::global();
    for g in [a, b] {
        if g.order() > caps.iso_order {
            return Err(GroupError::Capacity {
                what: "group order for isomorphism testing",
                value: g.order(),
                bound: caps.iso_order,
            });
        }
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.order() == 1 {
        return Ok(true);
    }
    let fa = fingerprint(a)?;
    let fb = fingerprint(b)?;
    if fa != fb {
        return Ok(false);
    }
    if fa.abelian {
        // equal element-order multisets classify finite abelian groups
        return Ok(true);
    }

    let gens_a = small_generating_sequence(a)?;
    let mut prefix_orders = Vec::with_capacity(gens_a.len());
    for k in 0..gens_a.len() {
        prefix_orders.push(PermGroup::new(a.degree(), gens_a[..=k].to_vec())?.order());
    }

    // class data of a and b for candidate filtering
    let table_a = a.element_table()?;
    let classes_a = a.conjugacy_classes()?;
    let class_size_of = |g: &PermGroup, x: &Perm| -> Result<u64> {
        let t = g.element_table()?;
        let idx = t.position(x).expect("member");
        Ok(g.conjugacy_classes()?
            .iter()
            .find(|c| c.binary_search(&idx).is_ok())
            .expect("class exists")
            .len() as u64)
    };
    let first_order = gens_a[0].order();
    let first_size = {
        let idx = table_a.position(&gens_a[0]).unwrap();
        classes_a
            .iter()
            .find(|c| c.binary_search(&idx).is_ok())
            .unwrap()
            .len() as u64
    };
    // first generator: up to conjugacy in b, so class representatives only
    let mut first_candidates = Vec::new();
    for rep in b.class_reps()? {
        if rep.order() == first_order && class_size_of(b, &rep)? == first_size {
            first_candidates.push(rep);
        }
    }
    let table_b = b.element_table()?;
    let mut later_candidates: Vec<Vec<Perm>> = vec![Vec::new()];
    for ga in gens_a.iter().skip(1) {
        let o = ga.order();
        let s = class_size_of(a, ga)?;
        let mut cands = Vec::new();
        for x in &table_b.list {
            if x.order() == o && class_size_of(b, x)? == s {
                cands.push(x.clone());
            }
        }
        later_candidates.push(cands);
    }

    let search = Search {
        a,
        b,
        gens_a,
        prefix_orders,
        first_candidates,
        later_candidates,
    };
    Ok(search.run())
}
