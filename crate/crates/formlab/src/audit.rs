//! Saturation audits.
//!
//! Each audit kind names a closure condition of the form "if G/N lies in the
//! class for every qualifying normal subgroup N, then so does G".  The audit
//! enumerates, for every corpus group, every qualifying N (the hypothesis
//! instances), and reports a witness whenever some quotient lies in the class
//! while the group itself does not.  Witnesses are re-derived from scratch
//! before they are reported, so every published witness replays.

use std::collections::BTreeSet;
use std::fmt;

use formcore::arith::{p_part, prime_divisors};
use formcore::formations::{formation_contains, FormationExpr};
use formcore::quotient::coset_action;
use formcore::structure::{frattini, normal_subgroups, pi_core, type_restricted_radical};
use formcore::{GroupError, PermGroup, Result, Subgroup};
use rayon::prelude::*;

use crate::corpus::Corpus;
use crate::report::Witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationKind {
    /// Quotients by the Frattini subgroup.
    Saturated,
    /// Quotients by normal p-subgroups inside the Frattini subgroup.
    PSaturated(u64),
    /// Quotients by Frattini subgroups of normal p-subgroups.
    NpSaturated(u64),
    /// Quotients by Φ(G) ∩ O_p(G) for each p in ω.
    OmegaSaturated(BTreeSet<u64>),
    /// Quotients by the Frattini subgroup of the soluble radical.
    SolublySaturated,
    /// Quotients by normal ω-subgroups inside the Frattini subgroup of the
    /// ω-soluble radical.
    OmegaSolublySaturated(BTreeSet<u64>),
    /// Quotients by Φ(O_p(G)) for each p in ω.
    NOmegaSaturated(BTreeSet<u64>),
}

fn primes_list(omega: &BTreeSet<u64>) -> String {
    let items: Vec<String> = omega.iter().map(|p| p.to_string()).collect();
    items.join(",")
}

impl fmt::Display for SaturationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaturationKind::Saturated => f.write_str("saturated"),
            SaturationKind::PSaturated(p) => write!(f, "{p}-saturated"),
            SaturationKind::NpSaturated(p) => write!(f, "N{p}-saturated"),
            SaturationKind::OmegaSaturated(w) => write!(f, "{{{}}}-saturated", primes_list(w)),
            SaturationKind::SolublySaturated => f.write_str("solubly-saturated"),
            SaturationKind::OmegaSolublySaturated(w) => {
                write!(f, "{{{}}}-solubly-saturated", primes_list(w))
            }
            SaturationKind::NOmegaSaturated(w) => write!(f, "N{{{}}}-saturated", primes_list(w)),
        }
    }
}

/// One qualifying normal subgroup for an audit kind on a fixed group.
pub struct HypothesisInstance {
    pub label: String,
    pub kernel: Subgroup,
}

/// Lifts a subgroup computed inside a (possibly re-built) member group back
/// to a verified subgroup of `g`.
fn lift(g: &PermGroup, gens: &[formcore::Perm]) -> Result<Subgroup> {
    Subgroup::new(g, gens.to_vec())
}

/// The Frattini subgroup of a normal subgroup, as a subgroup of `g`.  When
/// the subgroup is all of `g` the group's own cached computation is reused.
pub(crate) fn frattini_of(g: &PermGroup, n: &Subgroup) -> Result<Subgroup> {
    if n.order() == g.order() {
        return frattini(g);
    }
    let phi = frattini(n.group())?;
    lift(g, phi.gens())
}

/// The largest normal subgroup all of whose chief factors are ω′-groups or
/// abelian.
pub fn omega_soluble_radical(g: &PermGroup, omega: &BTreeSet<u64>) -> Result<Subgroup> {
    type_restricted_radical(g, |s| {
        s.is_abelian() || s.primes().iter().all(|p| !omega.contains(p))
    })
}

/// Enumerates every hypothesis instance of `kind` on `g`.
pub fn enumerate_instances(g: &PermGroup, kind: &SaturationKind) -> Result<Vec<HypothesisInstance>> {
    let mut out = Vec::new();
    match kind {
        SaturationKind::Saturated => {
            out.push(HypothesisInstance {
                label: "kernel Φ(G)".into(),
                kernel: frattini(g)?,
            });
        }
        SaturationKind::PSaturated(p) => {
            let lat = normal_subgroups(g)?;
            let phi = frattini(g)?;
            let phi_idx = lat
                .index_of(&phi)?
                .ok_or(GroupError::Integrity("Φ(G) is missing from the lattice".into()))?;
            for i in 0..lat.len() {
                let order = lat.order_of(i);
                if p_part(order, *p) == order && lat.contains_index(phi_idx, i) {
                    out.push(HypothesisInstance {
                        label: format!("kernel a normal {p}-subgroup of order {order} inside Φ(G)"),
                        kernel: lat.member(i),
                    });
                }
            }
        }
        SaturationKind::NpSaturated(p) => {
            let lat = normal_subgroups(g)?;
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for i in 0..lat.len() {
                let order = lat.order_of(i);
                if p_part(order, *p) != order {
                    continue;
                }
                let n = lat.member(i);
                let kernel = frattini_of(g, &n)?;
                let idx = lat
                    .index_of(&kernel)?
                    .ok_or(GroupError::Integrity("Φ(N) is missing from the lattice".into()))?;
                if seen.insert(idx) {
                    out.push(HypothesisInstance {
                        label: format!("kernel Φ(N) for a normal {p}-subgroup N of order {order}"),
                        kernel,
                    });
                }
            }
        }
        SaturationKind::OmegaSaturated(omega) => {
            let lat = normal_subgroups(g)?;
            let phi = frattini(g)?;
            let phi_idx = lat
                .index_of(&phi)?
                .ok_or(GroupError::Integrity("Φ(G) is missing from the lattice".into()))?;
            for &p in omega {
                let core = pi_core(g, &[p])?;
                let core_idx = lat
                    .index_of(&core)?
                    .ok_or(GroupError::Integrity("O_p(G) is missing from the lattice".into()))?;
                let meet = lat.meet(phi_idx, core_idx)?;
                out.push(HypothesisInstance {
                    label: format!("kernel Φ(G) ∩ O_{p}(G)"),
                    kernel: lat.member(meet),
                });
            }
        }
        SaturationKind::SolublySaturated => {
            let radical = type_restricted_radical(g, |s| s.is_abelian())?;
            out.push(HypothesisInstance {
                label: "kernel Φ(soluble radical)".into(),
                kernel: frattini_of(g, &radical)?,
            });
        }
        SaturationKind::OmegaSolublySaturated(omega) => {
            let radical = omega_soluble_radical(g, omega)?;
            let phi = frattini_of(g, &radical)?;
            let lat = normal_subgroups(g)?;
            let phi_idx = lat.index_of(&phi)?.ok_or(GroupError::Integrity(
                "Φ(ω-soluble radical) is missing from the lattice".into(),
            ))?;
            for i in 0..lat.len() {
                let order = lat.order_of(i);
                let omega_group = prime_divisors(order).iter().all(|p| omega.contains(p));
                if omega_group && lat.contains_index(phi_idx, i) {
                    out.push(HypothesisInstance {
                        label: format!(
                            "kernel a normal ω-subgroup of order {order} inside Φ(ω-soluble radical)"
                        ),
                        kernel: lat.member(i),
                    });
                }
            }
        }
        SaturationKind::NOmegaSaturated(omega) => {
            for &p in omega {
                let core = pi_core(g, &[p])?;
                out.push(HypothesisInstance {
                    label: format!("kernel Φ(O_{p}(G))"),
                    kernel: frattini_of(g, &core)?,
                });
            }
        }
    }
    Ok(out)
}

pub struct GroupAudit {
    pub group: String,
    pub instances: u64,
    pub violations: Vec<Witness>,
}

/// Checks every pre-enumerated instance of one group against the class.
pub fn audit_group(
    name: &str,
    g: &PermGroup,
    f: &FormationExpr,
    instances: &[HypothesisInstance],
) -> Result<GroupAudit> {
    let mut violations = Vec::new();
    // A member satisfies every instance of the implication outright.
    if !formation_contains(f, g)? {
        for inst in instances {
            let quotient_in = formation_contains(f, coset_action(g, &inst.kernel)?.target())?;
            if quotient_in {
                let replayed = formation_contains(f, coset_action(g, &inst.kernel)?.target())?
                    && !formation_contains(f, g)?;
                if !replayed {
                    return Err(GroupError::Integrity(
                        "a saturation witness failed to replay".into(),
                    ));
                }
                violations.push(
                    Witness::new(name, &inst.label)
                        .with_subgroup(inst.kernel.gens())
                        .fact("kernel-order", inst.kernel.order())
                        .fact("quotient-in-class", true)
                        .fact("group-in-class", false),
                );
            }
        }
    }
    Ok(GroupAudit {
        group: name.into(),
        instances: instances.len() as u64,
        violations,
    })
}

/// Runs one saturation audit over the whole corpus, in corpus order.
pub fn audit_corpus(
    corpus: &Corpus,
    f: &FormationExpr,
    kind: &SaturationKind,
) -> Result<Vec<GroupAudit>> {
    corpus
        .entries()
        .par_iter()
        .map(|e| {
            let instances = enumerate_instances(&e.group, kind)?;
            audit_group(&e.name, &e.group, f, &instances)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use formcore::formations::parse_formation;

    fn check(
        g: &PermGroup,
        name: &str,
        f: &str,
        kind: SaturationKind,
    ) -> (u64, Vec<Witness>) {
        let f = parse_formation(f).unwrap();
        let instances = enumerate_instances(g, &kind).unwrap();
        let audit = audit_group(name, g, &f, &instances).unwrap();
        (audit.instances, audit.violations)
    }

    #[test]
    fn abelian_fails_two_saturation_at_q8() {
        let q8 = PermGroup::quaternion8();
        let (instances, violations) = check(&q8, "Q8", "abelian", SaturationKind::PSaturated(2));
        // qualifying kernels: the trivial subgroup and the centre
        assert_eq!(instances, 2);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].facts["kernel-order"], "2");
    }

    #[test]
    fn nilpotent_is_saturated_on_samples() {
        for g in [
            PermGroup::quaternion8(),
            PermGroup::symmetric(4),
            PermGroup::dihedral(6),
            PermGroup::cyclic(12),
        ] {
            let (_, violations) = check(&g, "G", "nilpotent", SaturationKind::Saturated);
            assert!(violations.is_empty());
        }
    }

    #[test]
    fn sylow_restricted_nilpotency_is_not_saturated() {
        let q8 = PermGroup::quaternion8();
        let (_, violations) = check(
            &q8,
            "Q8",
            "and(nilpotent, nilab 2)",
            SaturationKind::Saturated,
        );
        assert_eq!(violations.len(), 1);
        let (_, violations) = check(
            &q8,
            "Q8",
            "and(nilpotent, nilab 2)",
            SaturationKind::PSaturated(3),
        );
        assert!(violations.is_empty());
    }

    #[test]
    fn omega_soluble_radical_splits_off_simple_factors() {
        let g = formcore::group::direct_product(
            &PermGroup::alternating(5),
            &PermGroup::cyclic(2),
        );
        let omega: BTreeSet<u64> = [2].into();
        let r = omega_soluble_radical(&g, &omega).unwrap();
        assert_eq!(r.order(), 2);
        let all: BTreeSet<u64> = [2, 3, 5].into();
        let r = omega_soluble_radical(&g, &all).unwrap();
        assert_eq!(r.order(), 2);
        let s4 = PermGroup::symmetric(4);
        let r = omega_soluble_radical(&s4, &omega).unwrap();
        assert_eq!(r.order(), 24);
    }

    #[test]
    fn np_and_omega_soluble_audits_agree_at_q8() {
        let q8 = PermGroup::quaternion8();
        let omega: BTreeSet<u64> = [2].into();
        let (_, np) = check(
            &q8,
            "Q8",
            "abelian",
            SaturationKind::NOmegaSaturated(omega.clone()),
        );
        let (_, ws) = check(
            &q8,
            "Q8",
            "abelian",
            SaturationKind::OmegaSolublySaturated(omega),
        );
        assert!(!np.is_empty());
        assert!(!ws.is_empty());
    }

    #[test]
    fn np_instances_deduplicate_kernels() {
        // All normal 2-subgroups of Q8 have the same Frattini subgroup as Q8
        // itself only for Q8; the cyclic ones contribute distinct kernels.
        let q8 = PermGroup::quaternion8();
        let instances =
            enumerate_instances(&q8, &SaturationKind::NpSaturated(2)).unwrap();
        // kernels: 1 (from N = 1, Z, and the three C4s) and Z (from N = Q8)
        assert_eq!(instances.len(), 2);
    }
}
