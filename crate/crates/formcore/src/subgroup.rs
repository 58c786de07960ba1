//! Subgroups of a fixed parent group, plus the classical subgroup-valued
//! operators: generated subgroup, normal closure, derived subgroup, Sylow
//! subgroups, centralizers and normalizers.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A subgroup of `parent`, carried as a group of the same degree whose
/// generators were verified to be members of the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: PermGroup,
    group: PermGroup,
}

impl Subgroup {
    /// Creates a subgroup from generating elements, verifying each one is a
    /// member of the parent.
    pub fn new(parent: &PermGroup, gens: Vec<Perm>) -> Result<Subgroup> {
        for g in &gens {
            if !parent.contains(g) {
                return Err(GroupError::NotAMember);
            }
        }
        Ok(Subgroup {
            group: PermGroup::new(parent.degree(), gens)?,
            parent: parent.clone(),
        })
    }

    /// Internal constructor for generators already known to lie in `parent`.
    pub(crate) fn from_verified(parent: &PermGroup, gens: Vec<Perm>) -> Subgroup {
        debug_assert!(gens.iter().all(|g| parent.contains(g)));
        Subgroup {
            group: PermGroup::new(parent.degree(), gens).expect("degrees verified"),
            parent: parent.clone(),
        }
    }

    pub fn trivial(parent: &PermGroup) -> Subgroup {
        Subgroup {
            group: PermGroup::trivial(parent.degree()),
            parent: parent.clone(),
        }
    }

    pub fn full(parent: &PermGroup) -> Subgroup {
        Subgroup {
            group: parent.clone(),
            parent: parent.clone(),
        }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    /// The subgroup as a group in its own right (same degree as the parent).
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn gens(&self) -> &[Perm] {
        self.group.gens()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.group.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// Verified normality: every generator conjugate lands back inside.
    pub fn is_normal(&self) -> bool {
        self.group.cached_pred("normal-in-parent", || {
            self.gens().iter().all(|n| {
                self.parent
                    .gens()
                    .iter()
                    .all(|g| self.group.contains(&n.conjugate(g)))
            })
        })
    }

    /// Set containment test against another subgroup of the same parent.
    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    pub fn same_subgroup(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.contains_subgroup(other)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} of order {})",
            self.order(),
            self.parent.order()
        )
    }
}

/// Smallest normal subgroup of `g` containing `seed`: closes the seed under
/// conjugation by generators, extending the generating set until stable.
pub fn normal_closure(g: &PermGroup, seed: &[Perm]) -> Result<Subgroup> {
    for s in seed {
        if !g.contains(s) {
            return Err(GroupError::NotAMember);
        }
    }
    let mut gens: Vec<Perm> = seed
        .iter()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    let mut current = PermGroup::new(g.degree(), gens.clone())?;
    let mut i = 0;
    while i < gens.len() {
        let n = gens[i].clone();
        for c in g.gens() {
            let conj = n.conjugate(c);
            if !current.contains(&conj) {
                gens.push(conj);
                current = PermGroup::new(g.degree(), gens.clone())?;
            }
        }
        i += 1;
    }
    Ok(Subgroup {
        group: current,
        parent: g.clone(),
    })
}

/// Derived subgroup `[G, G]`: the normal closure of the generator
/// commutators.  Cached on the group.
pub fn derived_subgroup(g: &PermGroup) -> Subgroup {
    if let Some(gens) = g.inner.derived.get() {
        return Subgroup::from_verified(g, gens.as_ref().clone());
    }
    let mut comms = Vec::new();
    for (i, a) in g.gens().iter().enumerate() {
        for b in &g.gens()[i + 1..] {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let sub = normal_closure(g, &comms).expect("commutators are members");
    let _ = g.inner.derived.set(Arc::new(sub.gens().to_vec()));
    sub
}

/// The derived series down to its stable term; first entry is `G` itself.
pub fn derived_series(g: &PermGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::full(g)];
    loop {
        let last = series.last().unwrap().group().clone();
        let next = derived_subgroup(&last);
        if next.order() == last.order() {
            break;
        }
        let stop = next.is_trivial();
        series.push(Subgroup {
            group: next.group().clone(),
            parent: g.clone(),
        });
        if stop {
            break;
        }
    }
    series
}

pub fn is_soluble(g: &PermGroup) -> bool {
    g.cached_pred("soluble", || {
        derived_series(g).last().unwrap().is_trivial() || g.is_trivial()
    })
}

pub fn is_perfect(g: &PermGroup) -> bool {
    derived_subgroup(g).order() == g.order()
}

/// A Sylow `p`-subgroup, grown deterministically: starting from a cyclic
/// `p`-subgroup, repeatedly pick the first normalizer element whose `p`-th
/// power falls inside and extend, until the full `p`-part is reached.
/// Requires element enumeration of the parent.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<Subgroup> {
    let order = g.order();
    let p_part = crate::arith::p_part(order, p);
    if p_part == 1 {
        return Ok(Subgroup::trivial(g));
    }
    if let Some(gens) = g.inner.sylow_cache.lock().unwrap().get(&p) {
        return Ok(Subgroup::from_verified(g, gens.as_ref().clone()));
    }
    let table = g.element_table()?;
    // seed: first element of order p (a power of the first element whose
    // order is divisible by p)
    let seed = table
        .list
        .iter()
        .find_map(|x| {
            let o = x.order();
            if o % p == 0 {
                Some(x.pow(o / p))
            } else {
                None
            }
        })
        .expect("Cauchy: an element of order p exists");
    let mut current = PermGroup::new(g.degree(), vec![seed])?;
    while current.order() < p_part {
        // N_G(current)/current has order divisible by p, so some normalizer
        // element outside has p-th power inside; the first found extends it.
        let mut extended = false;
        for y in &table.list {
            if current.contains(y) {
                continue;
            }
            if !current.contains(&y.pow(p)) {
                continue;
            }
            let normalizes = current
                .gens()
                .iter()
                .all(|n| current.contains(&n.conjugate(y)));
            if normalizes {
                let mut gens = current.gens().to_vec();
                gens.push(y.clone());
                current = PermGroup::new(g.degree(), gens)?;
                extended = true;
                break;
            }
        }
        if !extended {
            return Err(GroupError::Integrity(format!(
                "sylow growth stalled at order {} of {}",
                current.order(),
                p_part
            )));
        }
    }
    g.inner
        .sylow_cache
        .lock()
        .unwrap()
        .insert(p, Arc::new(current.gens().to_vec()));
    Ok(Subgroup {
        group: current,
        parent: g.clone(),
    })
}

/// Nilpotency via the Sylow criterion: every Sylow subgroup is normal.
pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    if let Some(&v) = g.inner.pred_cache.lock().unwrap().get("nilpotent") {
        return Ok(v);
    }
    let mut v = true;
    for p in g.primes() {
        if !sylow_subgroup(g, p)?.is_normal() {
            v = false;
            break;
        }
    }
    g.inner
        .pred_cache
        .lock()
        .unwrap()
        .insert("nilpotent".into(), v);
    Ok(v)
}

/// Elementwise centralizer `C_G(H)` by element scan.
pub fn centralizer_of(g: &PermGroup, h_gens: &[Perm]) -> Result<Subgroup> {
    let table = g.element_table()?;
    let gens: Vec<Perm> = table
        .list
        .iter()
        .filter(|x| h_gens.iter().all(|h| x.compose(h) == h.compose(x)))
        .cloned()
        .collect();
    Ok(Subgroup::from_verified(g, gens))
}

/// The center `Z(G)`.
pub fn center(g: &PermGroup) -> Result<Subgroup> {
    centralizer_of(g, &g.gens().to_vec())
}

/// Normalizer `N_G(H)` by element scan.
pub fn normalizer_of(g: &PermGroup, h: &PermGroup) -> Result<Subgroup> {
    let table = g.element_table()?;
    let gens: Vec<Perm> = table
        .list
        .iter()
        .filter(|x| h.gens().iter().all(|n| h.contains(&n.conjugate(x))))
        .cloned()
        .collect();
    Ok(Subgroup::from_verified(g, gens))
}

/// Whether a group is elementary abelian (nontrivial abelian of exponent p),
/// returning the prime and rank.
pub fn elementary_abelian_shape(g: &PermGroup) -> Option<(u64, u32)> {
    if g.is_trivial() || !g.is_abelian() {
        return None;
    }
    let primes = g.primes();
    if primes.len() != 1 {
        return None;
    }
    let p = primes[0];
    if g.gens().iter().any(|x| !x.pow(p).is_identity()) {
        return None;
    }
    let factors = crate::arith::factorize(g.order());
    Some((p, factors[0].1))
}
