//! Epimorphisms and quotient realizations.
//!
//! A quotient `G/N` is realized as a faithful permutation group via the right
//! coset action of `G` on the cosets of `N`; the identity coset is point 0.
//! General homomorphisms given by generator images get their kernels and
//! element maps through a "paired chain": the diagonal group generated by
//! `(g, φ(g))` on the disjoint union of both point sets, with the base forced
//! to exhaust one side first, so that sifting an element of one side through
//! the prefix accumulates its partner on the other side.

use std::sync::{Arc, OnceLock};

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::{PermGroup, StabChain};
use crate::perm::{pad_pair, split_pair, Perm};
use crate::subgroup::Subgroup;

/// A surjective homomorphism `source → target`, stored by generator images:
/// `gen_images[i]` is the image of `source.gens()[i]`.
pub struct Epimorphism {
    source: PermGroup,
    target: PermGroup,
    gen_images: Vec<Perm>,
    /// For coset actions: representative of the coset behind each target
    /// point, making preimages a lookup.
    coset_reps: Option<Arc<Vec<Perm>>>,
    /// Kernel generators, computed lazily unless known at construction.
    kernel_gens: OnceLock<Vec<Perm>>,
    /// Paired chain with source points first (for `image_of`).
    fwd: OnceLock<PairChain>,
    /// Paired chain with target points first (for `preimage` / kernel).
    bwd: OnceLock<PairChain>,
}

struct PairChain {
    chain: StabChain,
    prefix_len: usize,
    first_degree: usize,
}

impl PairChain {
    /// Builds the diagonal group of `(a_i, b_i)` pairs with the base forced
    /// to exhaust the points moved on the `a` side.
    fn build(a_gens: &[Perm], b_gens: &[Perm], a_degree: usize, b_degree: usize) -> PairChain {
        debug_assert_eq!(a_gens.len(), b_gens.len());
        let pairs: Vec<Perm> = a_gens
            .iter()
            .zip(b_gens)
            .map(|(a, b)| pad_pair(a, b))
            .collect();
        let mut moved = vec![false; a_degree];
        for a in a_gens {
            for pt in a.moved_points() {
                moved[pt] = true;
            }
        }
        let prefix: Vec<u16> = (0..a_degree as u16).filter(|&p| moved[p as usize]).collect();
        let prefix_len = prefix.len();
        PairChain {
            chain: StabChain::build(a_degree + b_degree, &pairs, &prefix),
            prefix_len,
            first_degree: a_degree,
        }
    }

    /// Sifts `x` (an element on the `a` side) through the prefix levels and
    /// returns its partner on the `b` side; `None` if `x` is not in the `a`
    /// projection of the diagonal group.
    fn partner(&self, x: &Perm, b_degree: usize) -> Option<Perm> {
        let mut residue = pad_pair(x, &Perm::identity(b_degree));
        let mut collected: Vec<Perm> = Vec::new();
        for level in 0..self.prefix_len {
            let t = {
                let l = &self.chain.levels[level];
                let y = residue.apply(l.point as usize);
                match &l.transversal[y] {
                    None => return None,
                    Some(t) => t.clone(),
                }
            };
            residue = residue.compose(&t.inverse());
            collected.push(t);
        }
        // after the prefix the a-side must be fully reduced
        if (0..self.first_degree).any(|p| residue.apply(p) != p) {
            return None;
        }
        let mut acc = Perm::identity(self.chain.degree());
        for t in collected.iter().rev() {
            acc = acc.compose(t);
        }
        let (_, b) = split_pair(&acc, self.first_degree);
        Some(b)
    }

    /// Strong generators fixing the whole `a` side, projected to the `b`
    /// side: generators of the kernel of the `a`-projection.
    fn stabilizer_side_b(&self) -> Vec<Perm> {
        self.chain
            .tail_gens(self.prefix_len)
            .iter()
            .map(|g| split_pair(g, self.first_degree).1)
            .collect()
    }
}

impl Epimorphism {
    /// Builds an epimorphism from aligned generator images.  Verifies the
    /// assignment extends to a homomorphism by checking that the diagonal
    /// group has the source's order.
    pub fn from_images(source: &PermGroup, gen_images: Vec<Perm>) -> Result<Epimorphism> {
        if gen_images.len() != source.gens().len() {
            return Err(GroupError::BadAction(format!(
                "{} images for {} generators",
                gen_images.len(),
                source.gens().len()
            )));
        }
        let target_degree = gen_images.first().map(|p| p.degree()).unwrap_or(1);
        for img in &gen_images {
            if img.degree() != target_degree {
                return Err(GroupError::DegreeMismatch {
                    expected: target_degree,
                    got: img.degree(),
                });
            }
        }
        let target = PermGroup::new(target_degree, gen_images.clone())?;
        let epi = Epimorphism {
            source: source.clone(),
            target,
            gen_images,
            coset_reps: None,
            kernel_gens: OnceLock::new(),
            fwd: OnceLock::new(),
            bwd: OnceLock::new(),
        };
        // homomorphism check: |⟨(g_i, φ(g_i))⟩| == |source|
        let fwd = epi.fwd_chain();
        if fwd.chain.order() != epi.source.order() {
            return Err(GroupError::BadAction(
                "generator images do not define a homomorphism".into(),
            ));
        }
        Ok(epi)
    }

    /// The identity epimorphism (used for quotients by the trivial subgroup).
    pub fn identity(source: &PermGroup) -> Epimorphism {
        let epi = Epimorphism {
            source: source.clone(),
            target: source.clone(),
            gen_images: source.gens().to_vec(),
            coset_reps: None,
            kernel_gens: OnceLock::new(),
            fwd: OnceLock::new(),
            bwd: OnceLock::new(),
        };
        let _ = epi.kernel_gens.set(Vec::new());
        epi
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    fn fwd_chain(&self) -> &PairChain {
        self.fwd.get_or_init(|| {
            PairChain::build(
                self.source.gens(),
                &self.gen_images,
                self.source.degree(),
                self.target.degree(),
            )
        })
    }

    fn bwd_chain(&self) -> &PairChain {
        self.bwd.get_or_init(|| {
            PairChain::build(
                &self.gen_images,
                self.source.gens(),
                self.target.degree(),
                self.source.degree(),
            )
        })
    }

    /// Image of an arbitrary source element.
    pub fn image_of(&self, x: &Perm) -> Result<Perm> {
        if !self.source.contains(x) {
            return Err(GroupError::NotAMember);
        }
        if x.is_identity() {
            return Ok(Perm::identity(self.target.degree()));
        }
        self.fwd_chain()
            .partner(x, self.target.degree())
            .ok_or_else(|| GroupError::Integrity("image lookup failed for a member".into()))
    }

    /// Some preimage of a target element (coset representative when the
    /// epimorphism came from a coset action).
    pub fn preimage(&self, t: &Perm) -> Result<Perm> {
        if !self.target.contains(t) {
            return Err(GroupError::NotAMember);
        }
        if let Some(reps) = &self.coset_reps {
            return Ok(reps[t.apply(0)].clone());
        }
        if t.is_identity() {
            return Ok(Perm::identity(self.source.degree()));
        }
        self.bwd_chain()
            .partner(t, self.source.degree())
            .ok_or_else(|| GroupError::Integrity("preimage lookup failed for a member".into()))
    }

    /// Kernel as a subgroup of the source.
    pub fn kernel(&self) -> Subgroup {
        let gens = self.kernel_gens.get_or_init(|| {
            PermGroup::new(self.source.degree(), self.bwd_chain().stabilizer_side_b())
                .expect("kernel gens share the source degree")
                .gens()
                .to_vec()
        });
        Subgroup::from_verified(&self.source, gens.clone())
    }

    /// Image of the subgroup generated by `gens` (which must lie in the
    /// source): the target subgroup generated by the element images.
    pub fn image_subgroup(&self, gens: &[Perm]) -> Result<Subgroup> {
        let imgs = gens
            .iter()
            .map(|g| self.image_of(g))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::new(&self.target, imgs)
    }

    /// Full preimage of a target subgroup: kernel generators plus one
    /// preimage per generator.
    pub fn preimage_subgroup(&self, sub_gens: &[Perm]) -> Result<Subgroup> {
        let mut gens = self.kernel().gens().to_vec();
        for t in sub_gens {
            gens.push(self.preimage(t)?);
        }
        Subgroup::new(&self.source, gens)
    }
}

impl std::fmt::Debug for Epimorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Epimorphism(order {} -> order {})",
            self.source.order(),
            self.target.order()
        )
    }
}

/// Right coset action of `g` on the cosets of the normal subgroup `n`:
/// returns the epimorphism onto the quotient realized on `[G : N]` points.
/// For `n` trivial the identity epimorphism is returned instead of the
/// regular action (same group, no degree blow-up).
pub fn coset_action(g: &PermGroup, n: &Subgroup) -> Result<Epimorphism> {
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    if n.is_trivial() {
        return Ok(Epimorphism::identity(g));
    }
    let index = g.order() / n.order();
    let caps = Caps::global();
    if index > caps.element_order {
        return Err(GroupError::Capacity {
            what: "quotient index",
            value: index,
            bound: caps.element_order,
        });
    }
    // enumerate coset representatives breadth-first
    let mut reps: Vec<Perm> = vec![Perm::identity(g.degree())];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for s in g.gens() {
            let cand = r.compose(s);
            let known = reps.iter().any(|r2| n.contains(&cand.compose(&r2.inverse())));
            if !known {
                reps.push(cand);
            }
        }
    }
    debug_assert_eq!(reps.len() as u128, index);
    let coset_of = |x: &Perm| -> usize {
        reps.iter()
            .position(|r| n.contains(&x.compose(&r.inverse())))
            .expect("every element lies in some coset")
    };
    let gen_images: Vec<Perm> = g
        .gens()
        .iter()
        .map(|s| {
            let images: Vec<u16> = reps
                .iter()
                .map(|r| coset_of(&r.compose(s)) as u16)
                .collect();
            Perm::from_images(images).expect("coset action is a permutation")
        })
        .collect();
    let target = PermGroup::new(reps.len(), gen_images.clone())?;
    let epi = Epimorphism {
        source: g.clone(),
        target,
        gen_images,
        coset_reps: Some(Arc::new(reps)),
        kernel_gens: OnceLock::new(),
        fwd: OnceLock::new(),
        bwd: OnceLock::new(),
    };
    let _ = epi.kernel_gens.set(n.gens().to_vec());
    Ok(epi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{derived_subgroup, normal_closure};

    #[test]
    fn s4_mod_v4_is_s3() {
        let s4 = PermGroup::symmetric(4);
        let v = normal_closure(
            &s4,
            &[Perm::parse_cycles(4, "(1 2)(3 4)", 0).unwrap()],
        )
        .unwrap();
        let q = coset_action(&s4, &v).unwrap();
        assert_eq!(q.target().order(), 6);
        assert_eq!(q.target().degree(), 6);
        assert!(!q.target().is_abelian());
        // kernel is V4 again
        assert_eq!(q.kernel().order(), 4);
        assert!(q.kernel().same_subgroup(&v));
    }

    #[test]
    fn a4_mod_v4_is_c3() {
        let a4 = PermGroup::alternating(4);
        let v = derived_subgroup(&a4);
        assert_eq!(v.order(), 4);
        let q = coset_action(&a4, &v).unwrap();
        assert_eq!(q.target().order(), 3);
        assert!(q.target().is_abelian());
    }

    #[test]
    fn quotient_by_trivial_is_identity_map() {
        let s3 = PermGroup::symmetric(3);
        let q = coset_action(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(q.target().order(), 6);
        assert_eq!(q.target().degree(), 3);
        let x = Perm::parse_cycles(3, "(1 2 3)", 0).unwrap();
        assert_eq!(q.image_of(&x).unwrap(), x);
        assert_eq!(q.preimage(&x).unwrap(), x);
        assert!(q.kernel().is_trivial());
    }

    #[test]
    fn quotient_by_full_group_is_trivial() {
        let s3 = PermGroup::symmetric(3);
        let q = coset_action(&s3, &Subgroup::full(&s3)).unwrap();
        assert_eq!(q.target().order(), 1);
        assert_eq!(q.target().degree(), 1);
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        let s4 = PermGroup::symmetric(4);
        let t = Subgroup::new(&s4, vec![Perm::parse_cycles(4, "(1 2)", 0).unwrap()]).unwrap();
        assert!(matches!(coset_action(&s4, &t), Err(GroupError::NotNormal)));
    }

    #[test]
    fn images_compose_correctly() {
        let s4 = PermGroup::symmetric(4);
        let v = normal_closure(
            &s4,
            &[Perm::parse_cycles(4, "(1 2)(3 4)", 0).unwrap()],
        )
        .unwrap();
        let q = coset_action(&s4, &v).unwrap();
        // φ(xy) = φ(x)φ(y) over all elements of S4
        let table = s4.element_table().unwrap();
        for x in table.list.iter().take(8) {
            for y in table.list.iter().take(8) {
                let lhs = q.image_of(&x.compose(y)).unwrap();
                let rhs = q.image_of(x).unwrap().compose(&q.image_of(y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        // preimages really map back
        for t in q.target().element_table().unwrap().list.iter() {
            let pre = q.preimage(t).unwrap();
            assert_eq!(&q.image_of(&pre).unwrap(), t);
        }
    }

    #[test]
    fn kernel_of_conjugation_action() {
        // S4 acting on the three points {cosets} via its quotient S3:
        // kernel of S4 → S3 is V4.
        let s4 = PermGroup::symmetric(4);
        let v = normal_closure(
            &s4,
            &[Perm::parse_cycles(4, "(1 2)(3 4)", 0).unwrap()],
        )
        .unwrap();
        let q = coset_action(&s4, &v).unwrap();
        // rebuild as a bare generator-image epimorphism (drops coset reps)
        let epi = Epimorphism::from_images(&s4, q.gen_images().to_vec()).unwrap();
        let k = epi.kernel();
        assert_eq!(k.order(), 4);
        assert!(k.same_subgroup(&v));
        // and image/preimage work through the paired chains
        let x = Perm::parse_cycles(4, "(1 2 3)", 0).unwrap();
        let img = epi.image_of(&x).unwrap();
        assert_eq!(img.order(), 3);
        let pre = epi.preimage(&img).unwrap();
        assert_eq!(epi.image_of(&pre).unwrap(), img);
    }

    #[test]
    fn bad_images_rejected() {
        // (1 2) ↦ 3-cycle is not a homomorphism on S3 = ⟨(1 2), (1 2 3)⟩
        let s3 = PermGroup::symmetric(3);
        let bad = vec![
            Perm::parse_cycles(3, "(1 2 3)", 0).unwrap(),
            Perm::parse_cycles(3, "(1 2 3)", 0).unwrap(),
        ];
        assert!(Epimorphism::from_images(&s3, bad).is_err());
    }

    #[test]
    fn image_subgroup_and_preimage_subgroup() {
        let s4 = PermGroup::symmetric(4);
        let v = normal_closure(
            &s4,
            &[Perm::parse_cycles(4, "(1 2)(3 4)", 0).unwrap()],
        )
        .unwrap();
        let q = coset_action(&s4, &v).unwrap();
        // image of A4 in S3 is C3
        let a4 = derived_subgroup(&s4);
        let img = q.image_subgroup(a4.gens()).unwrap();
        assert_eq!(img.order(), 3);
        // preimage of that C3 is A4
        let pre = q.preimage_subgroup(img.gens()).unwrap();
        assert!(pre.same_subgroup(&a4));
    }
}
