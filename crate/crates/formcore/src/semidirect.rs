//! Semidirect products [N]Q of an elementary abelian module by a group.
//!
//! The module N = F_p^rank is written with row vectors: a matrix acts on the
//! right, v ↦ v·M, so row j of each action matrix is the image of the j-th
//! basis vector.  One matrix per generator of Q, in Q's generator order; the
//! assignment must extend to a homomorphism Q → GL(rank, p), which is
//! verified during construction.
//!
//! The product is realized on the p^rank module vectors through the affine
//! action — translations for N, the linear maps for Q.  When the matrices do
//! not act faithfully, the realization is padded with the regular action of
//! Q so the result stays a faithful permutation group.

use std::collections::HashMap;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::{pad_pair, Perm};
use crate::subgroup::{elementary_abelian_shape, Subgroup};

/// Maximum permutation degree the builder will produce (points are `u16`).
const MAX_DEGREE: u128 = u16::MAX as u128;

/// An elementary abelian module with row-acting matrices over F_p, one per
/// generator of the acting group.
#[derive(Clone, Debug)]
pub struct ModuleDesc {
    p: u64,
    rank: u32,
    matrices: Vec<Vec<Vec<u64>>>,
}

impl ModuleDesc {
    /// Validates shapes and invertibility; entries are reduced mod `p`.
    pub fn new(p: u64, rank: u32, matrices: Vec<Vec<Vec<u64>>>) -> Result<ModuleDesc> {
        if !arith::is_prime(p) {
            return Err(GroupError::BadAction(format!(
                "the field size {p} is not prime"
            )));
        }
        if rank == 0 {
            return Err(GroupError::BadAction("the module rank must be positive".into()));
        }
        let r = rank as usize;
        let mut reduced = Vec::with_capacity(matrices.len());
        for (i, m) in matrices.into_iter().enumerate() {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(GroupError::BadAction(format!(
                    "matrix {} is not {r}x{r}",
                    i + 1
                )));
            }
            let m: Vec<Vec<u64>> = m
                .into_iter()
                .map(|row| row.into_iter().map(|x| x % p).collect())
                .collect();
            if !is_invertible(&m, p) {
                return Err(GroupError::SingularMatrix(p));
            }
            reduced.push(m);
        }
        Ok(ModuleDesc {
            p,
            rank,
            matrices: reduced,
        })
    }

    /// The trivial action: identity matrices for each of `ngens` generators.
    pub fn identity_action(p: u64, rank: u32, ngens: usize) -> Result<ModuleDesc> {
        let r = rank as usize;
        let id: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect();
        ModuleDesc::new(p, rank, vec![id; ngens])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn matrices(&self) -> &[Vec<Vec<u64>>] {
        &self.matrices
    }

    /// Number of module vectors, i.e. the degree of the affine action.
    fn points(&self) -> Result<usize> {
        let m = (self.p as u128)
            .checked_pow(self.rank)
            .unwrap_or(u128::MAX);
        if m > MAX_DEGREE {
            return Err(GroupError::Capacity {
                what: "semidirect module points",
                value: m,
                bound: MAX_DEGREE,
            });
        }
        Ok(m as usize)
    }

    fn decode(&self, mut index: usize) -> Vec<u64> {
        let p = self.p as usize;
        (0..self.rank)
            .map(|_| {
                let d = (index % p) as u64;
                index /= p;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> usize {
        let p = self.p as usize;
        v.iter()
            .rev()
            .fold(0usize, |acc, &d| acc * p + d as usize)
    }

    /// The permutation of the module vectors induced by matrix `i`.
    fn matrix_perm(&self, i: usize) -> Result<Perm> {
        let m = self.points()?;
        let mat = &self.matrices[i];
        let r = self.rank as usize;
        let images = (0..m)
            .map(|x| {
                let v = self.decode(x);
                let mut w = vec![0u64; r];
                for (j, &vj) in v.iter().enumerate() {
                    if vj == 0 {
                        continue;
                    }
                    for (k, wk) in w.iter_mut().enumerate() {
                        *wk = (*wk + vj * mat[j][k]) % self.p;
                    }
                }
                self.encode(&w) as u16
            })
            .collect();
        Perm::from_images(images)
    }

    /// The translation v ↦ v + e_j as a permutation of the module vectors.
    fn translation_perm(&self, j: usize) -> Result<Perm> {
        let m = self.points()?;
        let images = (0..m)
            .map(|x| {
                let mut v = self.decode(x);
                v[j] = (v[j] + 1) % self.p;
                self.encode(&v) as u16
            })
            .collect();
        Perm::from_images(images)
    }
}

/// A constructed semidirect product with its distinguished subgroups.
pub struct Semidirect {
    group: PermGroup,
    module: Subgroup,
    complement: Subgroup,
    faithful: bool,
}

impl Semidirect {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The distinguished normal copy of the module.
    pub fn module(&self) -> &Subgroup {
        &self.module
    }

    /// The subgroup generated by the images of the acting group's
    /// generators; isomorphic to it exactly when the action is faithful.
    pub fn complement(&self) -> &Subgroup {
        &self.complement
    }

    pub fn action_faithful(&self) -> bool {
        self.faithful
    }
}

/// Builds [N]Q for the described module and acting group.
///
/// Fails with `BadAction` when the number of matrices does not match Q's
/// generators or the assignment does not extend to a homomorphism.
pub fn semidirect(module: &ModuleDesc, q: &PermGroup) -> Result<Semidirect> {
    let ngens = q.gens().len();
    if module.matrices.len() != ngens {
        return Err(GroupError::BadAction(format!(
            "{} matrices for {} generators",
            module.matrices.len(),
            ngens
        )));
    }
    let m = module.points()?;
    let linear: Vec<Perm> = (0..ngens)
        .map(|i| module.matrix_perm(i))
        .collect::<Result<_>>()?;
    let translations: Vec<Perm> = (0..module.rank as usize)
        .map(|j| module.translation_perm(j))
        .collect::<Result<_>>()?;

    // The graph of the generator assignment against Q's own faithful action:
    // its order exceeds |Q| exactly when some relation of Q is broken by the
    // matrices.
    let graph_gens: Vec<Perm> = linear
        .iter()
        .zip(q.gens())
        .map(|(l, g)| pad_pair(l, g))
        .collect();
    let graph = PermGroup::new(m + q.degree(), graph_gens)?;
    if graph.order() != q.order() {
        return Err(GroupError::BadAction(
            "the generator assignment does not extend to a homomorphism".into(),
        ));
    }
    let image = PermGroup::new(m, linear.clone())?;
    let faithful = image.order() == q.order();

    let (group, module_gens, complement_gens) = if faithful {
        let mut gens = translations.clone();
        gens.extend(linear.iter().cloned());
        (PermGroup::new(m, gens)?, translations, linear)
    } else {
        // Pad with the regular action of Q to restore faithfulness.
        let table = q.element_table()?;
        if m as u128 + table.list.len() as u128 > MAX_DEGREE {
            return Err(GroupError::Capacity {
                what: "semidirect degree",
                value: m as u128 + table.list.len() as u128,
                bound: MAX_DEGREE,
            });
        }
        let regular: Vec<Perm> = q
            .gens()
            .iter()
            .map(|g| {
                let images = table
                    .list
                    .iter()
                    .map(|e| table.position(&e.compose(g)).unwrap() as u16)
                    .collect();
                Perm::from_images(images)
            })
            .collect::<Result<_>>()?;
        let id_q = Perm::identity(table.list.len());
        let module_gens: Vec<Perm> = translations.iter().map(|t| pad_pair(t, &id_q)).collect();
        let complement_gens: Vec<Perm> = linear
            .iter()
            .zip(&regular)
            .map(|(l, r)| pad_pair(l, r))
            .collect();
        let mut gens = module_gens.clone();
        gens.extend(complement_gens.iter().cloned());
        (
            PermGroup::new(m + table.list.len(), gens)?,
            module_gens,
            complement_gens,
        )
    };
    debug_assert_eq!(group.order(), (m as u128) * q.order());
    let module_sub = Subgroup::new(&group, module_gens)?;
    let complement = Subgroup::new(&group, complement_gens)?;
    Ok(Semidirect {
        group,
        module: module_sub,
        complement,
        faithful,
    })
}

/// Reads off the conjugation action of a group on an elementary abelian
/// normal subgroup as a module description, one matrix per generator of the
/// parent.
pub fn conjugation_module(g: &PermGroup, n: &Subgroup) -> Result<ModuleDesc> {
    conjugation_module_for(g, n, g.gens())
}

/// Like [`conjugation_module`], but with one matrix per listed element
/// instead of one per generator of `g`.
///
/// The usual callers pass preimages of the generators of a quotient of `g`
/// through which the action factors, so the matrices line up with that
/// quotient's generators for [`semidirect`].  (Quotient realizations drop
/// generators whose images are redundant, so the parent's own generator list
/// need not match.)
pub fn conjugation_module_for(
    g: &PermGroup,
    n: &Subgroup,
    elements: &[Perm],
) -> Result<ModuleDesc> {
    if !n.is_normal() || n.parent().degree() != g.degree() || !n.gens().iter().all(|x| g.contains(x)) {
        return Err(GroupError::NotNormal);
    }
    if !elements.iter().all(|x| g.contains(x)) {
        return Err(GroupError::NotAMember);
    }
    let Some((p, rank)) = elementary_abelian_shape(n.group()) else {
        return Err(GroupError::BadAction(
            "the subgroup is not elementary abelian".into(),
        ));
    };
    // Pick a basis greedily from the element list.
    let table = n.group().element_table()?;
    let mut basis: Vec<Perm> = Vec::with_capacity(rank as usize);
    let mut span: Vec<Perm> = vec![Perm::identity(g.degree())];
    for e in &table.list {
        if basis.len() == rank as usize {
            break;
        }
        if span.contains(e) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * p as usize);
        let mut power = Perm::identity(g.degree());
        for _ in 0..p {
            next.extend(span.iter().map(|s| s.compose(&power)));
            power = power.compose(e);
        }
        basis.push(e.clone());
        span = next;
    }
    // Coordinates of every module element over the basis.
    let mut coords: HashMap<Perm, Vec<u64>> = HashMap::with_capacity(table.list.len());
    let mut stack = vec![(Perm::identity(g.degree()), vec![0u64; rank as usize], 0usize)];
    while let Some((elem, vec, j)) = stack.pop() {
        if j == basis.len() {
            coords.insert(elem, vec);
            continue;
        }
        let mut e = elem;
        for c in 0..p {
            let mut v = vec.clone();
            v[j] = c;
            stack.push((e.clone(), v, j + 1));
            e = e.compose(&basis[j]);
        }
    }
    let matrices = elements
        .iter()
        .map(|gen| {
            basis
                .iter()
                .map(|b| {
                    coords.get(&b.conjugate(gen)).cloned().ok_or(GroupError::NotNormal)
                })
                .collect::<Result<Vec<Vec<u64>>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleDesc::new(p, rank, matrices)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn is_invertible(m: &[Vec<u64>], p: u64) -> bool {
    let r = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    for col in 0..r {
        let Some(pivot) = (col..r).find(|&row| a[row][col] != 0) else {
            return false;
        };
        a.swap(col, pivot);
        let inv = mod_inverse(a[col][col], p);
        for x in &mut a[col] {
            *x = *x * inv % p;
        }
        for row in 0..r {
            if row != col && a[row][col] != 0 {
                let f = a[row][col];
                for j in 0..r {
                    a[row][j] = (a[row][j] + (p - f) * a[col][j]) % p;
                }
            }
        }
    }
    true
}
