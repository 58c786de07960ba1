//! Chief-factor centralizers: the ordinary centralizer C_G(H/K), the small
//! centralizer c_G(H/K), and the intersections C^S(G), C^p(G) over all chief
//! factors of a fixed simple type.
//!
//! Every centralizer here is obtained as the kernel of a conjugation action
//! or by a scan of the normal-subgroup lattice — never by element search —
//! so the operations inherit the lattice capacity bound.

use crate::catalog::SimpleType;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::structure::{
    chief_series, element_bits, lattice_data, member_subgroup, ChiefFactor, LatticeData,
};
use crate::subgroup::Subgroup;

/// Convention: the intersection of an empty family of subgroups of G is G
/// itself.
pub fn empty_intersection_convention(g: &PermGroup) -> Subgroup {
    Subgroup::full(g)
}

fn foreign_factor() -> GroupError {
    GroupError::Undefined("a centralizer of another group's chief factor")
}

/// Ordinary centralizer C_G(H/K) = {g ∈ G : [g, H] ⊆ K}, computed as the
/// kernel of the conjugation action of G on the realized factor.  The result
/// is cached on the chief series.
pub fn chief_centralizer(g: &PermGroup, f: &ChiefFactor) -> Result<Subgroup> {
    if !f.belongs_to(g) {
        return Err(foreign_factor());
    }
    let step = f.step();
    if let Some(gens) = step.centralizer.get() {
        return Ok(Subgroup::from_verified(g, gens.clone()));
    }
    let kernel = f.action()?.kernel().gens().to_vec();
    let _ = step.centralizer.set(kernel);
    Ok(Subgroup::from_verified(
        g,
        step.centralizer.get().expect("just set").clone(),
    ))
}

/// Lattice index of the ordinary centralizer of `f`.
pub(crate) fn centralizer_index(
    g: &PermGroup,
    lat: &LatticeData,
    f: &ChiefFactor,
) -> Result<usize> {
    let c = chief_centralizer(g, f)?;
    let table = g.element_table()?;
    let bits = element_bits(&table, c.gens())?;
    lat.index_of(&bits).ok_or_else(|| {
        GroupError::Integrity("chief-factor centralizer is missing from the normal lattice".into())
    })
}

/// Small centralizer c_G(H/K): the subgroup generated by all normal
/// subgroups N of G such that Com(NK/K) ∩ Com(H/K) = ∅.
///
/// Every chief factor is a power of a single simple group, so the
/// disjointness test reduces to: the simple type of H/K must not occur among
/// the chief steps from K up to NK.  The generated subgroup is itself a
/// product of qualifying members; the defining condition is re-verified on
/// the result.
pub fn small_centralizer(g: &PermGroup, f: &ChiefFactor) -> Result<Subgroup> {
    if !f.belongs_to(g) {
        return Err(foreign_factor());
    }
    let step = f.step();
    let lat = f.lattice().clone();
    if let Some(&idx) = step.small.get() {
        return Ok(member_subgroup(g, &lat, idx));
    }
    let k = f.lower_index();
    let stype = f.simple_type();
    let avoids = |n_idx: usize| -> Result<bool> {
        let j = lat.join(n_idx, k);
        Ok(lat.interval_steps(k, j)?.iter().all(|(s, _)| *s != stype))
    };
    let mut acc = 0usize;
    for i in 0..lat.len() {
        if avoids(i)? {
            acc = lat.join(acc, i);
        }
    }
    if !avoids(acc)? {
        return Err(GroupError::Integrity(
            "product of Com-disjoint normal subgroups is not Com-disjoint".into(),
        ));
    }
    let _ = step.small.set(acc);
    Ok(member_subgroup(g, &lat, acc))
}

/// C^S(G): the intersection of the ordinary centralizers of all chief
/// factors of simple type S, and G itself when S ∉ Com(G).
pub fn c_s(g: &PermGroup, s: SimpleType) -> Result<Subgroup> {
    let lat = lattice_data(g)?;
    let series = chief_series(g)?;
    let mut cur: Option<usize> = None;
    for f in series.factors() {
        if f.simple_type() != s {
            continue;
        }
        let ci = centralizer_index(g, &lat, &f)?;
        cur = Some(match cur {
            None => ci,
            Some(x) => lat.meet(x, ci)?,
        });
    }
    Ok(match cur {
        None => empty_intersection_convention(g),
        Some(idx) => member_subgroup(g, &lat, idx),
    })
}

/// C^p(G) = C^S(G) with S = C_p.
pub fn c_p(g: &PermGroup, p: u64) -> Result<Subgroup> {
    c_s(g, SimpleType::Cyclic(p))
}

/// The two centralizers attached to one chief factor.
pub struct FactorCentralizers {
    pub factor: ChiefFactor,
    pub ordinary: Subgroup,
    pub small: Subgroup,
}

pub fn factor_centralizers(g: &PermGroup, f: &ChiefFactor) -> Result<FactorCentralizers> {
    Ok(FactorCentralizers {
        factor: f.clone(),
        ordinary: chief_centralizer(g, f)?,
        small: small_centralizer(g, f)?,
    })
}
