//! A small expression language of decidable group classes.
//!
//! Every [`FormationExpr`] node denotes a class of finite groups with an
//! exact, computable membership test.  The builtin nodes are all formations
//! (classes closed under quotients and subdirect products); the audit in
//! [`closure_audit`] re-checks both closure properties over any corpus
//! instead of taking them on faith.  On top of membership the module
//! provides residual computation, the closure audit, and corpus-generated
//! canonical values used to reconstruct satellites from a class.
//!
//! Expressions are immutable and evaluation is pure, so concurrent
//! evaluation over a corpus is safe.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::catalog::SimpleType;
use crate::centralizers;
use crate::error::{GroupError, Result};
use crate::group::{parse_group_file, render_group_file, PermGroup};
use crate::iso::are_isomorphic;
use crate::quotient::coset_action;
use crate::satellites::{self, SatelliteSpec};
use crate::structure::{self, chief_series, com, lattice_data, n0_radical, socle};
use crate::subgroup::{
    elementary_abelian_shape, is_nilpotent, is_soluble, sylow_subgroup, Subgroup,
};

/// Maximum nesting depth for membership evaluation.
///
/// Recursion arises from Gaschütz products (membership of the residual) and
/// from satellite-class leaves whose values mention the class itself.  Those
/// constructions only ever recurse into proper quotients or unrelated
/// groups, so the bound is never reached by well-formed expressions; it
/// converts a malformed self-reference into an explicit error instead of a
/// stack overflow.
pub const MAX_EVAL_DEPTH: u8 = 8;

/// Evaluation context: the current recursion depth.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct EvalCtx {
    depth: u8,
}

impl EvalCtx {
    pub(crate) fn root() -> EvalCtx {
        EvalCtx { depth: 0 }
    }

    pub(crate) fn deeper(self) -> Result<EvalCtx> {
        if self.depth >= MAX_EVAL_DEPTH {
            return Err(GroupError::DepthExceeded(MAX_EVAL_DEPTH));
        }
        Ok(EvalCtx {
            depth: self.depth + 1,
        })
    }
}

/// A class of simple groups, given by finitely many listed members on each
/// of the two halves (abelian and nonabelian), each half optionally
/// complemented.
///
/// The file and DSL grammars only produce the uniform cases (both halves
/// listed, or both complemented: "everything except the listed types"); the
/// mixed combinations arise from the derived views, e.g. the abelian part of
/// a complemented class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleClassSpec {
    primes: BTreeSet<u64>,
    primes_complemented: bool,
    nonabelian: BTreeSet<u64>,
    nonabelian_complemented: bool,
}

impl SimpleClassSpec {
    /// The class containing exactly the listed types, or its complement in
    /// the class 𝔍 of all simple groups.
    pub fn listed(primes: &[u64], nonabelian: &[SimpleType], complemented: bool) -> Result<Self> {
        let mut ps = BTreeSet::new();
        for &p in primes {
            if !arith::is_prime(p) {
                return Err(GroupError::ClassSyntax {
                    pos: 0,
                    msg: format!("{p} is not prime"),
                });
            }
            ps.insert(p);
        }
        let mut na = BTreeSet::new();
        for s in nonabelian {
            match s {
                SimpleType::Cyclic(p) => {
                    return Err(GroupError::ClassSyntax {
                        pos: 0,
                        msg: format!("C{p} is abelian; list it as a prime"),
                    })
                }
                SimpleType::NonAbelian { order } => {
                    na.insert(*order);
                }
            }
        }
        Ok(SimpleClassSpec {
            primes: ps,
            primes_complemented: complemented,
            nonabelian: na,
            nonabelian_complemented: complemented,
        })
    }

    /// The class 𝔍 of all simple groups.
    pub fn all() -> Self {
        SimpleClassSpec {
            primes: BTreeSet::new(),
            primes_complemented: true,
            nonabelian: BTreeSet::new(),
            nonabelian_complemented: true,
        }
    }

    /// All abelian simple groups.
    pub fn abelian_all() -> Self {
        SimpleClassSpec {
            primes: BTreeSet::new(),
            primes_complemented: true,
            nonabelian: BTreeSet::new(),
            nonabelian_complemented: false,
        }
    }

    /// The abelian simple groups C_p for the given primes.
    pub fn abelian_of(primes: &[u64]) -> Result<Self> {
        Self::listed(primes, &[], false)
    }

    pub fn contains(&self, s: SimpleType) -> bool {
        match s {
            SimpleType::Cyclic(p) => self.primes.contains(&p) != self.primes_complemented,
            SimpleType::NonAbelian { order } => {
                self.nonabelian.contains(&order) != self.nonabelian_complemented
            }
        }
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.contains(SimpleType::Cyclic(p))
    }

    /// The abelian members (the paper's 𝔏⁺).
    pub fn plus(&self) -> Self {
        SimpleClassSpec {
            primes: self.primes.clone(),
            primes_complemented: self.primes_complemented,
            nonabelian: BTreeSet::new(),
            nonabelian_complemented: false,
        }
    }

    /// The nonabelian members (𝔏⁻).
    pub fn minus(&self) -> Self {
        SimpleClassSpec {
            primes: BTreeSet::new(),
            primes_complemented: false,
            nonabelian: self.nonabelian.clone(),
            nonabelian_complemented: self.nonabelian_complemented,
        }
    }

    /// The complement 𝔏′ = 𝔍 ∖ 𝔏.
    pub fn complement(&self) -> Self {
        SimpleClassSpec {
            primes: self.primes.clone(),
            primes_complemented: !self.primes_complemented,
            nonabelian: self.nonabelian.clone(),
            nonabelian_complemented: !self.nonabelian_complemented,
        }
    }

    pub fn is_abelian_only(&self) -> bool {
        !self.nonabelian_complemented && self.nonabelian.is_empty()
    }

    /// The class with the same abelian part and every nonabelian simple
    /// group adjoined — the largest class sharing this one's 𝔏⁺.
    pub fn with_all_nonabelian(&self) -> Self {
        SimpleClassSpec {
            primes: self.primes.clone(),
            primes_complemented: self.primes_complemented,
            nonabelian: BTreeSet::new(),
            nonabelian_complemented: true,
        }
    }

    /// Whether the abelian parts of two classes agree, i.e. 𝔏⁺ = 𝔐⁺.
    pub fn same_plus(&self, other: &Self) -> bool {
        self.plus() == other.plus()
    }

    /// The characteristic as a finite prime list when it is finite.
    ///
    /// `None` means the class contains all but finitely many C_p; callers
    /// that must enumerate Char handle that case separately.
    pub fn finite_char(&self) -> Option<Vec<u64>> {
        if self.primes_complemented {
            None
        } else {
            Some(self.primes.iter().copied().collect())
        }
    }

    /// Checks Char(𝔛) = π(𝔛): every prime dividing the order of a member
    /// must itself label an abelian member.
    pub fn char_equals_pi(&self) -> bool {
        if self.nonabelian_complemented {
            // Cofinitely many nonabelian simple groups remain in the class,
            // so π is the set of all primes; Char must be too.
            return self.primes_complemented && self.primes.is_empty();
        }
        let allows = |p: u64| self.contains_prime(p);
        self.nonabelian
            .iter()
            .all(|&o| SimpleType::NonAbelian { order: o }.primes().iter().all(|&p| allows(p)))
    }

    /// Renders the class in the satellite-file syntax where possible, and in
    /// an extended report-only syntax for the mixed cases produced by the
    /// derived views.
    pub fn render(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        let ns: Vec<String> = self
            .nonabelian
            .iter()
            .map(|&o| SimpleType::NonAbelian { order: o }.label())
            .collect();
        if self.primes_complemented == self.nonabelian_complemented {
            let mut out = String::new();
            if !ps.is_empty() {
                out.push_str(&format!("primes={}", ps.join(",")));
            }
            if !ns.is_empty() {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&format!("nonabelian={}", ns.join(",")));
            }
            if self.primes_complemented {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str("complement");
            }
            if out.is_empty() {
                out.push_str("primes=");
            }
            return out;
        }
        let abelian = if self.primes_complemented {
            if ps.is_empty() {
                "primes=all".to_string()
            } else {
                format!("primes=all-but:{}", ps.join(","))
            }
        } else {
            format!("primes={}", ps.join(","))
        };
        let nonabelian = if self.nonabelian_complemented {
            if ns.is_empty() {
                "nonabelian=all".to_string()
            } else {
                format!("nonabelian=all-but:{}", ns.join(","))
            }
        } else if ns.is_empty() {
            "nonabelian=".to_string()
        } else {
            format!("nonabelian={}", ns.join(","))
        };
        format!("{abelian} {nonabelian}")
    }

    /// The items of an `eclass{...}` literal, when expressible there.
    fn eclass_items(&self) -> Option<String> {
        if self.primes_complemented != self.nonabelian_complemented {
            return None;
        }
        let mut items: Vec<String> = self.primes.iter().map(|p| format!("p{p}")).collect();
        items.extend(
            self.nonabelian
                .iter()
                .map(|&o| SimpleType::NonAbelian { order: o }.label()),
        );
        if self.primes_complemented {
            items.push("complement".into());
        }
        Some(items.join(","))
    }
}

impl fmt::Display for SimpleClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An expression denoting a class of finite groups.
#[derive(Clone)]
pub enum FormationExpr {
    /// The empty class ∅.  First-class because satellite values may be empty.
    Empty,
    /// Groups of order 1.
    Trivial,
    /// All groups.
    All,
    Abelian,
    Nilpotent,
    Soluble,
    Supersoluble,
    /// Quasinilpotent groups, decided by the chief-factor coverage oracle.
    QuasiNilpotent,
    /// Groups whose order involves only the listed primes.
    PiGroups(BTreeSet<u64>),
    /// Groups of p-power order.
    PGroups(u64),
    /// Groups all of whose composition factors lie in the class.
    EClass(SimpleClassSpec),
    /// Direct powers of a fixed simple group (including the trivial group).
    FormSimple(SimpleType),
    /// Placeholder inside satellite values: direct powers of "the factor's
    /// own simple type".  Substituted before evaluation; never valid on its
    /// own.
    FormSimpleSelf,
    /// Nilpotent groups with an abelian Sylow p-subgroup.
    NilpotentAbelianSylow(u64),
    /// Groups isomorphic to one of the listed representatives.
    IsoSet(Vec<PermGroup>),
    /// Intersection; the empty intersection is the class of all groups.
    And(Vec<FormationExpr>),
    /// Gaschütz product: groups whose right-residual lies in the left class.
    GProduct(Box<FormationExpr>, Box<FormationExpr>),
    /// The class defined by a satellite, usable as a value inside other
    /// satellites (the transforms assign "the class itself" as a value).
    ClassOf(Arc<SatelliteSpec>),
}

impl FormationExpr {
    pub fn and(parts: Vec<FormationExpr>) -> FormationExpr {
        FormationExpr::And(parts)
    }

    /// Replaces every `formsimple self` placeholder by direct powers of `s`.
    pub(crate) fn substitute_self(&self, s: SimpleType) -> FormationExpr {
        match self {
            FormationExpr::FormSimpleSelf => FormationExpr::FormSimple(s),
            FormationExpr::And(parts) => {
                FormationExpr::And(parts.iter().map(|e| e.substitute_self(s)).collect())
            }
            FormationExpr::GProduct(a, b) => FormationExpr::GProduct(
                Box::new(a.substitute_self(s)),
                Box::new(b.substitute_self(s)),
            ),
            other => other.clone(),
        }
    }

    pub(crate) fn contains_at(&self, g: &PermGroup, ctx: EvalCtx) -> Result<bool> {
        match self {
            FormationExpr::Empty => Ok(false),
            FormationExpr::Trivial => Ok(g.is_trivial()),
            FormationExpr::All => Ok(true),
            FormationExpr::Abelian => Ok(g.is_abelian()),
            FormationExpr::Nilpotent => is_nilpotent(g),
            FormationExpr::Soluble => Ok(is_soluble(g)),
            FormationExpr::Supersoluble => is_supersoluble(g),
            FormationExpr::QuasiNilpotent => is_quasinilpotent(g),
            FormationExpr::PiGroups(pi) => Ok(g.primes().iter().all(|p| pi.contains(p))),
            FormationExpr::PGroups(p) => Ok(g.primes().iter().all(|q| q == p)),
            FormationExpr::EClass(spec) => Ok(com(g)?.iter().all(|&s| spec.contains(s))),
            FormationExpr::FormSimple(s) => is_direct_power_of(g, *s),
            FormationExpr::FormSimpleSelf => Err(GroupError::Integrity(
                "a direct-power template was evaluated outside a satellite value".into(),
            )),
            FormationExpr::NilpotentAbelianSylow(p) => {
                if !is_nilpotent(g)? {
                    return Ok(false);
                }
                Ok(sylow_subgroup(g, *p)?.group().is_abelian())
            }
            FormationExpr::IsoSet(reps) => {
                for r in reps {
                    if are_isomorphic(g, r)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            FormationExpr::And(parts) => {
                for part in parts {
                    if !part.contains_at(g, ctx)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            FormationExpr::GProduct(left, right) => {
                let inner = ctx.deeper()?;
                match residual_at(g, right, inner) {
                    Ok(res) => left.contains_at(res.group(), inner),
                    // The residual does not exist exactly when the right
                    // class rejects every quotient, and then no group lies
                    // in the product.
                    Err(GroupError::EmptyResidual) => Ok(false),
                    Err(e) => Err(e),
                }
            }
            FormationExpr::ClassOf(spec) => satellites::membership_at(g, spec, ctx.deeper()?),
        }
    }
}

/// Exact membership of `g` in the class denoted by `f`.
pub fn formation_contains(f: &FormationExpr, g: &PermGroup) -> Result<bool> {
    f.contains_at(g, EvalCtx::root())
}

fn is_supersoluble(g: &PermGroup) -> Result<bool> {
    if let Some(&v) = g.inner.pred_cache.lock().unwrap().get("supersoluble") {
        return Ok(v);
    }
    let lat = lattice_data(g)?;
    let v = lat
        .interval_steps(0, lat.full_index())?
        .iter()
        .all(|&(s, m)| matches!(s, SimpleType::Cyclic(_)) && m == 1);
    g.inner
        .pred_cache
        .lock()
        .unwrap()
        .insert("supersoluble".into(), v);
    Ok(v)
}

/// Quasinilpotency oracle: G = H·C_G(H/K) for every chief factor H/K,
/// checked as a join in the normal-subgroup lattice.
fn is_quasinilpotent(g: &PermGroup) -> Result<bool> {
    if let Some(&v) = g.inner.pred_cache.lock().unwrap().get("quasinilpotent") {
        return Ok(v);
    }
    let lat = lattice_data(g)?;
    let series = chief_series(g)?;
    let mut v = true;
    for f in series.factors() {
        let ci = centralizers::centralizer_index(g, &lat, &f)?;
        if lat.join(f.upper_index(), ci) != lat.full_index() {
            v = false;
            break;
        }
    }
    g.inner
        .pred_cache
        .lock()
        .unwrap()
        .insert("quasinilpotent".into(), v);
    Ok(v)
}

/// Membership in form(S), the direct powers of the simple group S.
///
/// For abelian S = C_p these are exactly the elementary abelian p-groups.
/// For nonabelian S the criterion is: trivial soluble radical, Com(G) = {S},
/// and Soc(G) = G; the socle is then a direct product of minimal normal
/// subgroups, each a direct power of S.
fn is_direct_power_of(g: &PermGroup, s: SimpleType) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    match s {
        SimpleType::Cyclic(p) => Ok(elementary_abelian_shape(g).is_some_and(|(q, _)| q == p)),
        SimpleType::NonAbelian { .. } => {
            let key = format!("formsimple:{}", s.label());
            if let Some(&v) = g.inner.pred_cache.lock().unwrap().get(&key) {
                return Ok(v);
            }
            let radical = n0_radical(g, |h| Ok(is_soluble(h)))?;
            let v = radical.is_trivial()
                && com(g)? == BTreeSet::from([s])
                && socle(g)?.order() == g.order();
            g.inner.pred_cache.lock().unwrap().insert(key, v);
            Ok(v)
        }
    }
}

/// The F-residual of `g`: the least normal subgroup with quotient in F.
///
/// Computed as the intersection of all normal subgroups with quotient in
/// the class.  The intersection is verified stepwise: whenever two
/// qualifying subgroups have a meet whose quotient falls outside the class,
/// the class is not closed under subdirect products and the pair is
/// reported.
pub fn residual(g: &PermGroup, f: &FormationExpr) -> Result<Subgroup> {
    residual_at(g, f, EvalCtx::root())
}

pub(crate) fn residual_at(g: &PermGroup, f: &FormationExpr, ctx: EvalCtx) -> Result<Subgroup> {
    let lat = lattice_data(g)?;
    let quotient_in = |i: usize| -> Result<bool> {
        let epi = coset_action(g, &structure::member_subgroup(g, &lat, i))?;
        f.contains_at(epi.target(), ctx)
    };
    let mut acc: Option<usize> = None;
    for i in 0..lat.len() {
        if !quotient_in(i)? {
            continue;
        }
        acc = Some(match acc {
            None => i,
            Some(a) => {
                let m = lat.meet(a, i)?;
                if m != a && m != i && !quotient_in(m)? {
                    return Err(GroupError::Integrity(format!(
                        "the class is not R₀-closed on this group: the quotients by \
                         normal subgroups of orders {} and {} lie in it, but the quotient \
                         by their intersection (order {}) does not",
                        lat.members[a].order, lat.members[i].order, lat.members[m].order
                    )));
                }
                m
            }
        });
    }
    match acc {
        None => Err(GroupError::EmptyResidual),
        Some(i) => Ok(structure::member_subgroup(g, &lat, i)),
    }
}

/// Which closure property a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    /// A member has a quotient outside the class.
    Quotient,
    /// Two quotients over trivially intersecting kernels lie in the class
    /// but the group itself does not.
    Subdirect,
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureKind::Quotient => f.write_str("quotient-closure"),
            ClosureKind::Subdirect => f.write_str("subdirect-closure"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureViolation {
    /// Index of the offending group in the audited corpus.
    pub group_index: usize,
    pub kind: ClosureKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    /// Number of corpus groups examined.
    pub checked: usize,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits the two formation closure properties of `f` over a corpus.
///
/// For every corpus member of the class, each quotient must stay in the
/// class; for every corpus group with two normal subgroups intersecting
/// trivially whose quotients lie in the class, the group itself must too.
pub fn closure_audit(f: &FormationExpr, corpus: &[PermGroup]) -> Result<ClosureReport> {
    let mut report = ClosureReport {
        checked: corpus.len(),
        ..ClosureReport::default()
    };
    for (gi, g) in corpus.iter().enumerate() {
        let lat = lattice_data(g)?;
        let quotient_in = |i: usize| -> Result<bool> {
            let epi = coset_action(g, &structure::member_subgroup(g, &lat, i))?;
            formation_contains(f, epi.target())
        };
        if formation_contains(f, g)? {
            for i in 1..lat.len() {
                if !quotient_in(i)? {
                    report.violations.push(ClosureViolation {
                        group_index: gi,
                        kind: ClosureKind::Quotient,
                        detail: format!(
                            "the quotient by a normal subgroup of order {} leaves the class",
                            lat.members[i].order
                        ),
                    });
                }
            }
        } else {
            for i in 1..lat.len() {
                for j in i..lat.len() {
                    if lat.meet(i, j)? == 0 && quotient_in(i)? && quotient_in(j)? {
                        report.violations.push(ClosureViolation {
                            group_index: gi,
                            kind: ClosureKind::Subdirect,
                            detail: format!(
                                "the quotients by normal subgroups of orders {} and {} \
                                 (intersecting trivially) lie in the class but the group \
                                 does not",
                                lat.members[i].order, lat.members[j].order
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The corpus-restricted canonical satellite value at `s`: the isomorphism
/// classes of all quotients of G/C^s(G) for G ranging over the class members
/// in the corpus, packaged as an [`FormationExpr::IsoSet`].
///
/// Including all quotients makes the result quotient-closed within the
/// corpus order bound by construction.  Representatives are deduplicated by
/// isomorphism; per class the representative with the smallest
/// (order, degree, rendered form) is kept so reports are reproducible.
pub fn canonical_value(
    f: &FormationExpr,
    s: SimpleType,
    corpus: &[PermGroup],
) -> Result<FormationExpr> {
    let mut reps: Vec<PermGroup> = Vec::new();
    let mut keys: Vec<(u128, usize, String)> = Vec::new();
    let mut add = |g: PermGroup| -> Result<()> {
        let key = (g.order(), g.degree(), render_group_file(&g));
        for (i, r) in reps.iter().enumerate() {
            if are_isomorphic(&g, r)? {
                if key < keys[i] {
                    reps[i] = g;
                    keys[i] = key;
                }
                return Ok(());
            }
        }
        reps.push(g);
        keys.push(key);
        Ok(())
    };
    for g in corpus {
        if !formation_contains(f, g)? {
            continue;
        }
        let c = centralizers::c_s(g, s)?;
        let q = coset_action(g, &c)?.target().clone();
        let qlat = lattice_data(&q)?;
        for i in 0..qlat.len() {
            let sub = structure::member_subgroup(&q, &qlat, i);
            add(coset_action(&q, &sub)?.target().clone())?;
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    Ok(FormationExpr::IsoSet(
        order.into_iter().map(|i| reps[i].clone()).collect(),
    ))
}

impl fmt::Display for FormationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormationExpr::Empty => f.write_str("empty"),
            FormationExpr::Trivial => f.write_str("trivial"),
            FormationExpr::All => f.write_str("all"),
            FormationExpr::Abelian => f.write_str("abelian"),
            FormationExpr::Nilpotent => f.write_str("nilpotent"),
            FormationExpr::Soluble => f.write_str("soluble"),
            FormationExpr::Supersoluble => f.write_str("supersoluble"),
            FormationExpr::QuasiNilpotent => f.write_str("quasinilpotent"),
            FormationExpr::PiGroups(pi) => {
                let items: Vec<String> = pi.iter().map(|p| p.to_string()).collect();
                write!(f, "pigroups{{{}}}", items.join(","))
            }
            FormationExpr::PGroups(p) => write!(f, "pgroups {p}"),
            FormationExpr::EClass(spec) => match spec.eclass_items() {
                Some(items) => write!(f, "eclass{{{items}}}"),
                None => write!(f, "eclass{{«{spec}»}}"),
            },
            FormationExpr::FormSimple(s) => match s {
                SimpleType::Cyclic(p) => write!(f, "formsimple p{p}"),
                SimpleType::NonAbelian { .. } => write!(f, "formsimple {}", s.label()),
            },
            FormationExpr::FormSimpleSelf => f.write_str("formsimple self"),
            FormationExpr::NilpotentAbelianSylow(p) => write!(f, "nilab {p}"),
            FormationExpr::IsoSet(reps) => {
                let mut orders: Vec<String> =
                    reps.iter().take(8).map(|g| g.order().to_string()).collect();
                if reps.len() > 8 {
                    orders.push("…".into());
                }
                write!(f, "isoset(«orders {}»)", orders.join(","))
            }
            FormationExpr::And(parts) => {
                let items: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "and({})", items.join(", "))
            }
            FormationExpr::GProduct(a, b) => write!(f, "gprod({a}, {b})"),
            FormationExpr::ClassOf(spec) => write!(f, "class-of(«{} satellite»)", spec.kind_name()),
        }
    }
}

impl fmt::Debug for FormationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a formation expression from the DSL.
///
/// Grammar: `empty | trivial | all | abelian | nilpotent | soluble |
/// supersoluble | quasinilpotent | pgroups P | pigroups{P,...} |
/// eclass{...} | formsimple <order|pP> | nilab P | isoset(<file>,...) |
/// and(E,...) | gprod(E,E)`, with `sylow-abelian P` accepted as a synonym
/// for `nilab P`.  `eclass` items are primes (`p2`), catalog labels (`A5`)
/// or orders, plus an optional `complement` flag.
pub fn parse_formation(text: &str) -> Result<FormationExpr> {
    parse_formation_value(text, false)
}

/// Parser entry point shared with satellite files, which additionally allow
/// the `formsimple self` template in value position.
pub(crate) fn parse_formation_value(text: &str, allow_self: bool) -> Result<FormationExpr> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        allow_self,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.fail("trailing input after the expression"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    allow_self: bool,
}

impl<'a> Parser<'a> {
    fn fail(&self, msg: impl Into<String>) -> GroupError {
        GroupError::ClassSyntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'-' || c == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| GroupError::ClassSyntax {
                pos: start,
                msg: "number out of range".into(),
            })
    }

    fn prime(&mut self) -> Result<u64> {
        self.skip_ws();
        let at = self.pos;
        let n = self.number()?;
        if !arith::is_prime(n) {
            return Err(GroupError::ClassSyntax {
                pos: at,
                msg: format!("{n} is not prime"),
            });
        }
        Ok(n)
    }

    /// Reads one argument token, stopping at a comma, closing bracket or
    /// whitespace at parenthesis depth zero, so catalog labels such as
    /// `PSL(2,7)` survive intact.
    fn arg_token(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            match c {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' | b'}' if depth == 0 => break,
                c if c.is_ascii_whitespace() && depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected an argument"));
        }
        Ok((
            start,
            String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned(),
        ))
    }

    fn simple_type_arg(&mut self) -> Result<SimpleType> {
        let (at, token) = self.arg_token()?;
        SimpleType::parse(&token).map_err(|e| match e {
            GroupError::ClassSyntax { msg, .. } => GroupError::ClassSyntax { pos: at, msg },
            other => other,
        })
    }

    fn expr(&mut self) -> Result<FormationExpr> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident();
        match name.as_str() {
            "empty" => Ok(FormationExpr::Empty),
            "trivial" => Ok(FormationExpr::Trivial),
            "all" => Ok(FormationExpr::All),
            "abelian" => Ok(FormationExpr::Abelian),
            "nilpotent" => Ok(FormationExpr::Nilpotent),
            "soluble" => Ok(FormationExpr::Soluble),
            "supersoluble" => Ok(FormationExpr::Supersoluble),
            "quasinilpotent" => Ok(FormationExpr::QuasiNilpotent),
            "pgroups" => Ok(FormationExpr::PGroups(self.prime()?)),
            "pigroups" => {
                self.skip_ws();
                self.expect(b'{')?;
                let mut pi = BTreeSet::new();
                self.skip_ws();
                if !self.eat(b'}') {
                    loop {
                        pi.insert(self.prime()?);
                        self.skip_ws();
                        if self.eat(b'}') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(FormationExpr::PiGroups(pi))
            }
            "eclass" => {
                self.skip_ws();
                self.expect(b'{')?;
                let mut primes = Vec::new();
                let mut nonabelian = Vec::new();
                let mut complemented = false;
                self.skip_ws();
                if !self.eat(b'}') {
                    loop {
                        self.skip_ws();
                        let (at, token) = self.arg_token()?;
                        if token == "complement" {
                            complemented = true;
                        } else {
                            let s = SimpleType::parse(&token).map_err(|e| match e {
                                GroupError::ClassSyntax { msg, .. } => {
                                    GroupError::ClassSyntax { pos: at, msg }
                                }
                                other => other,
                            })?;
                            match s {
                                SimpleType::Cyclic(p) => primes.push(p),
                                other => nonabelian.push(other),
                            }
                        }
                        self.skip_ws();
                        if self.eat(b'}') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                let spec = SimpleClassSpec::listed(&primes, &nonabelian, complemented)?;
                Ok(FormationExpr::EClass(spec))
            }
            "formsimple" => {
                self.skip_ws();
                let save = self.pos;
                let (_, token) = self.arg_token()?;
                if token == "self" {
                    if self.allow_self {
                        return Ok(FormationExpr::FormSimpleSelf);
                    }
                    self.pos = save;
                    return Err(self.fail(
                        "'formsimple self' is only meaningful inside a satellite value",
                    ));
                }
                self.pos = save;
                Ok(FormationExpr::FormSimple(self.simple_type_arg()?))
            }
            "nilab" | "sylow-abelian" => Ok(FormationExpr::NilpotentAbelianSylow(self.prime()?)),
            "isoset" => {
                self.skip_ws();
                self.expect(b'(')?;
                let mut reps = Vec::new();
                loop {
                    self.skip_ws();
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c != b',' && c != b')') {
                        self.pos += 1;
                    }
                    let path = String::from_utf8_lossy(&self.bytes[start..self.pos])
                        .trim()
                        .to_string();
                    if path.is_empty() {
                        return Err(self.fail("expected a group file path"));
                    }
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| GroupError::Io(format!("{path}: {e}")))?;
                    reps.push(parse_group_file(&text)?);
                    self.skip_ws();
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
                Ok(FormationExpr::IsoSet(reps))
            }
            "and" => {
                self.skip_ws();
                self.expect(b'(')?;
                let mut parts = Vec::new();
                self.skip_ws();
                if !self.eat(b')') {
                    loop {
                        parts.push(self.expr()?);
                        self.skip_ws();
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(FormationExpr::And(parts))
            }
            "gprod" => {
                self.skip_ws();
                self.expect(b'(')?;
                let mut parts = vec![self.expr()?];
                self.skip_ws();
                self.expect(b',')?;
                loop {
                    parts.push(self.expr()?);
                    self.skip_ws();
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
                // gprod(a, b, c) is sugar for gprod(a, gprod(b, c)).
                let mut iter = parts.into_iter().rev();
                let mut acc = iter.next().expect("at least two parts");
                for part in iter {
                    acc = FormationExpr::GProduct(Box::new(part), Box::new(acc));
                }
                Ok(acc)
            }
            "" => Err(self.fail("expected a formation expression")),
            other => Err(GroupError::ClassSyntax {
                pos: at,
                msg: format!("unknown builtin `{other}`"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;

    fn contains(expr: &str, g: &PermGroup) -> bool {
        formation_contains(&parse_formation(expr).unwrap(), g).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for text in [
            "nilpotent",
            "and(nilpotent, nilab 2)",
            "gprod(pigroups{2,3}, abelian)",
            "eclass{p2,p3,A5}",
            "eclass{p2,complement}",
            "pigroups{}",
            "and()",
            "formsimple A5",
            "formsimple p2",
            "pgroups 7",
        ] {
            let once = parse_formation(text).unwrap().to_string();
            let twice = parse_formation(&once).unwrap().to_string();
            assert_eq!(once, twice, "display of {text:?} must re-parse to itself");
        }
        assert_eq!(
            parse_formation("and(nilpotent, sylow-abelian 2)")
                .unwrap()
                .to_string(),
            "and(nilpotent, nilab 2)"
        );
    }

    #[test]
    fn gprod_right_associates() {
        let e = parse_formation("gprod(abelian, nilpotent, soluble)").unwrap();
        assert_eq!(e.to_string(), "gprod(abelian, gprod(nilpotent, soluble))");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_formation("pgroups 6") {
            Err(GroupError::ClassSyntax { pos, msg }) => {
                assert_eq!(pos, 8);
                assert!(msg.contains("not prime"));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse_formation("frobnicate"),
            Err(GroupError::ClassSyntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_formation("nilpotent junk"),
            Err(GroupError::ClassSyntax { .. })
        ));
        assert!(matches!(
            parse_formation("formsimple self"),
            Err(GroupError::ClassSyntax { .. })
        ));
    }

    #[test]
    fn leaf_membership_matches_hand_checks() {
        let s3 = PermGroup::symmetric(3);
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        let a5 = PermGroup::alternating(5);
        let c12 = PermGroup::cyclic(12);
        let d8 = PermGroup::dihedral(4);
        let q8 = PermGroup::quaternion8();
        let triv = PermGroup::trivial(1);

        assert!(!contains("nilpotent", &s3));
        assert!(contains("nilpotent", &c12));
        assert!(contains("nilpotent", &q8));

        assert!(contains("supersoluble", &s3));
        assert!(contains("supersoluble", &d8));
        assert!(contains("supersoluble", &c12));
        assert!(!contains("supersoluble", &s4));
        assert!(!contains("supersoluble", &a4));
        assert!(!contains("supersoluble", &a5));

        assert!(contains("soluble", &s4));
        assert!(!contains("soluble", &a5));

        assert!(contains("pigroups{2,3}", &s4));
        assert!(!contains("pigroups{2,3}", &a5));
        assert!(contains("pigroups{}", &triv));
        assert!(!contains("pigroups{}", &s3));
        assert!(contains("pgroups 2", &d8));
        assert!(!contains("pgroups 2", &c12));

        assert!(contains("empty", &triv) == false);
        assert!(contains("trivial", &triv));
        assert!(!contains("trivial", &s3));
        assert!(contains("all", &a5));
    }

    #[test]
    fn quasinilpotent_oracle_values() {
        let a5 = PermGroup::alternating(5);
        let c2 = PermGroup::cyclic(2);
        assert!(contains("quasinilpotent", &a5));
        assert!(contains("quasinilpotent", &direct_product(&a5, &c2)));
        assert!(contains("quasinilpotent", &PermGroup::quaternion8()));
        assert!(contains("quasinilpotent", &PermGroup::cyclic(12)));
        assert!(contains("quasinilpotent", &PermGroup::trivial(1)));
        assert!(!contains("quasinilpotent", &PermGroup::symmetric(3)));
        assert!(!contains("quasinilpotent", &PermGroup::symmetric(4)));
        assert!(!contains("quasinilpotent", &PermGroup::alternating(4)));
    }

    #[test]
    fn quasinilpotent_is_series_independent() {
        for g in [
            PermGroup::symmetric(4),
            PermGroup::alternating(5),
            PermGroup::cyclic(12),
            direct_product(&PermGroup::alternating(5), &PermGroup::cyclic(2)),
            PermGroup::dihedral(6),
        ] {
            let lat = lattice_data(&g).unwrap();
            let std_v = is_quasinilpotent(&g).unwrap();
            let mut alt_v = true;
            for f in crate::structure::chief_series_alt(&g).unwrap().factors() {
                let ci = centralizers::centralizer_index(&g, &lat, &f).unwrap();
                if lat.join(f.upper_index(), ci) != lat.full_index() {
                    alt_v = false;
                }
            }
            assert_eq!(std_v, alt_v, "series choice changed the verdict on {g:?}");
        }
    }

    #[test]
    fn form_simple_criteria() {
        let a5 = PermGroup::alternating(5);
        let c2 = PermGroup::cyclic(2);
        assert!(contains("formsimple A5", &a5));
        assert!(contains("formsimple A5", &PermGroup::trivial(1)));
        assert!(!contains("formsimple A5", &direct_product(&a5, &c2)));
        assert!(!contains("formsimple A5", &PermGroup::symmetric(3)));
        assert!(!contains("formsimple A5", &PermGroup::alternating(6)));

        assert!(contains("formsimple p2", &PermGroup::klein4()));
        assert!(contains("formsimple p2", &c2));
        assert!(contains("formsimple p2", &PermGroup::trivial(1)));
        assert!(!contains("formsimple p2", &PermGroup::cyclic(4)));
        assert!(!contains("formsimple p2", &PermGroup::cyclic(3)));
    }

    #[test]
    fn eclass_membership() {
        let a5 = PermGroup::alternating(5);
        assert!(contains("eclass{p2,p3}", &PermGroup::symmetric(3)));
        assert!(contains("eclass{p2,p3}", &PermGroup::symmetric(4)));
        assert!(!contains("eclass{p2,p3}", &a5));
        assert!(contains("eclass{p2,p3,p5,A5}", &a5));
        assert!(contains("eclass{p2,complement}", &PermGroup::cyclic(3)));
        assert!(contains("eclass{p2,complement}", &a5));
        assert!(!contains("eclass{p2,complement}", &PermGroup::klein4()));
        assert!(contains("eclass{complement}", &PermGroup::trivial(1)));
    }

    #[test]
    fn nilab_membership() {
        let d8 = PermGroup::dihedral(4);
        let c12 = PermGroup::cyclic(12);
        assert!(!contains("nilab 2", &d8));
        assert!(contains("nilab 2", &c12));
        assert!(contains("nilab 3", &d8));
        assert!(!contains("nilab 3", &PermGroup::symmetric(3)));
    }

    #[test]
    fn residual_values() {
        let s3 = PermGroup::symmetric(3);
        let r = residual(&s3, &FormationExpr::Abelian).unwrap();
        assert_eq!(r.order(), 3);

        let s4 = PermGroup::symmetric(4);
        let r = residual(&s4, &FormationExpr::Nilpotent).unwrap();
        assert_eq!(r.order(), 12);

        let c6 = PermGroup::cyclic(6);
        assert!(residual(&c6, &FormationExpr::Abelian).unwrap().is_trivial());

        assert!(matches!(
            residual(&s3, &FormationExpr::Empty),
            Err(GroupError::EmptyResidual)
        ));
    }

    #[test]
    fn residual_reports_subdirect_failure() {
        let v4 = PermGroup::klein4();
        let c2 = PermGroup::cyclic(2);
        let bad = FormationExpr::IsoSet(vec![c2]);
        match residual(&v4, &bad) {
            Err(GroupError::Integrity(msg)) => {
                assert!(msg.contains("orders 2 and 2"), "unexpected message: {msg}");
            }
            other => panic!("expected an integrity error, got {other:?}"),
        }
    }

    #[test]
    fn residual_is_monotone_on_examples() {
        let s4 = PermGroup::symmetric(4);
        let small = residual(&s4, &FormationExpr::Soluble).unwrap();
        let big = residual(&s4, &FormationExpr::Nilpotent).unwrap();
        assert!(big.contains_subgroup(&small));
        assert!(small.is_trivial());
    }

    #[test]
    fn gprod_membership_via_residual() {
        let s3 = PermGroup::symmetric(3);
        let c6 = PermGroup::cyclic(6);
        let d8c3 = direct_product(&PermGroup::dihedral(4), &PermGroup::cyclic(3));
        // S3 has 3-residual S3 (its only quotient that is a 3-group is
        // trivial, forcing the residual meet down to... S3 itself), so it
        // fails; its 2-residual is A3, a 3-group, so the swapped product
        // succeeds.
        assert!(!contains("gprod(pgroups 2, pigroups{3})", &s3));
        assert!(contains("gprod(pigroups{3}, pigroups{2})", &s3));
        // C6 = C2 × C3 splits both ways.
        assert!(contains("gprod(pgroups 2, pigroups{3})", &c6));
        // (D8×C3)^{E_3} = D8, a 2-group; being a direct product, it splits
        // the other way round as well.
        assert!(contains("gprod(pgroups 2, pigroups{3})", &d8c3));
        assert!(contains("gprod(pgroups 3, pigroups{2})", &d8c3));
        // S4^{E_2} = A4, which is no 3-group.
        let s4 = PermGroup::symmetric(4);
        assert!(!contains("gprod(pgroups 3, pigroups{2})", &s4));
    }

    #[test]
    fn gprod_agrees_with_normal_subgroup_splitting() {
        // For a class closed under normal subgroups the Gaschütz product
        // coincides with the product class: a member is exactly a group with
        // a normal π-subgroup whose quotient lies in the right class.
        let pi = FormationExpr::PiGroups(BTreeSet::from([2]));
        let h = FormationExpr::PiGroups(BTreeSet::from([3]));
        let gp = FormationExpr::GProduct(Box::new(pi), Box::new(h));
        for g in [
            PermGroup::symmetric(3),
            PermGroup::symmetric(4),
            PermGroup::cyclic(6),
            PermGroup::cyclic(12),
            PermGroup::dihedral(6),
            PermGroup::alternating(4),
            direct_product(&PermGroup::dihedral(4), &PermGroup::cyclic(3)),
        ] {
            let lat = lattice_data(&g).unwrap();
            let mut split = false;
            for i in 0..lat.len() {
                let is_pi2 = arith::prime_divisors(lat.members[i].order)
                    .into_iter()
                    .all(|p| p == 2);
                if !is_pi2 {
                    continue;
                }
                let epi = coset_action(&g, &structure::member_subgroup(&g, &lat, i)).unwrap();
                if epi.target().primes().iter().all(|&p| p == 3) {
                    split = true;
                }
            }
            assert_eq!(
                formation_contains(&gp, &g).unwrap(),
                split,
                "product-class disagreement on {g:?}"
            );
        }
    }

    #[test]
    fn isoset_membership_and_closure_audit() {
        let s3 = PermGroup::symmetric(3);
        let f = FormationExpr::IsoSet(vec![PermGroup::symmetric(3)]);
        assert!(formation_contains(&f, &s3).unwrap());
        assert!(!formation_contains(&f, &PermGroup::cyclic(6)).unwrap());

        let corpus = vec![
            PermGroup::cyclic(2),
            PermGroup::symmetric(3),
            PermGroup::cyclic(6),
            PermGroup::klein4(),
        ];
        let report = closure_audit(&f, &corpus).unwrap();
        assert_eq!(report.checked, 4);
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .all(|v| v.group_index == 1 && v.kind == ClosureKind::Quotient));
        // S3 has two proper quotients (by A3 and by S3), both outside the set.
        assert_eq!(report.violations.len(), 2);
    }

    #[test]
    fn builtins_pass_closure_audit() {
        let corpus = vec![
            PermGroup::trivial(1),
            PermGroup::cyclic(2),
            PermGroup::symmetric(3),
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::cyclic(12),
            PermGroup::dihedral(4),
            PermGroup::quaternion8(),
            PermGroup::alternating(5),
            direct_product(&PermGroup::symmetric(3), &PermGroup::cyclic(2)),
        ];
        for expr in [
            "empty",
            "trivial",
            "all",
            "abelian",
            "nilpotent",
            "soluble",
            "supersoluble",
            "quasinilpotent",
            "pigroups{2,3}",
            "pgroups 2",
            "eclass{p2,p3}",
            "formsimple p2",
            "formsimple A5",
            "nilab 2",
            "and(soluble, pigroups{2,3})",
            "gprod(pigroups{2}, pigroups{3})",
        ] {
            let f = parse_formation(expr).unwrap();
            let report = closure_audit(&f, &corpus).unwrap();
            assert!(
                report.is_clean(),
                "{expr} violations: {:?}",
                report.violations
            );
        }
    }

    #[test]
    fn canonical_values_match_hand_computation() {
        let corpus = vec![
            PermGroup::trivial(1),
            PermGroup::cyclic(2),
            PermGroup::cyclic(6),
            PermGroup::symmetric(3),
            PermGroup::quaternion8(),
            PermGroup::dihedral(4),
            PermGroup::cyclic(12),
        ];
        // Nilpotent groups centralize their chief p-factors, so every
        // canonical value collapses to the trivial group.
        let v = canonical_value(&FormationExpr::Nilpotent, SimpleType::Cyclic(2), &corpus).unwrap();
        match &v {
            FormationExpr::IsoSet(reps) => {
                assert_eq!(reps.len(), 1);
                assert_eq!(reps[0].order(), 1);
            }
            other => panic!("expected an iso-set, got {other}"),
        }
        // S3/C^3(S3) = S3/A3 ≅ C2 enters the supersoluble value at p = 3.
        let v =
            canonical_value(&FormationExpr::Supersoluble, SimpleType::Cyclic(3), &corpus).unwrap();
        match &v {
            FormationExpr::IsoSet(reps) => {
                let orders: Vec<u128> = reps.iter().map(|g| g.order()).collect();
                assert_eq!(orders, vec![1, 2]);
            }
            other => panic!("expected an iso-set, got {other}"),
        }
        // The empty class contributes nothing.
        let v = canonical_value(&FormationExpr::Empty, SimpleType::Cyclic(2), &corpus).unwrap();
        match &v {
            FormationExpr::IsoSet(reps) => assert!(reps.is_empty()),
            other => panic!("expected an iso-set, got {other}"),
        }
    }

    #[test]
    fn depth_guard_trips_on_deep_nesting() {
        let mut e = FormationExpr::All;
        for _ in 0..(MAX_EVAL_DEPTH as usize + 2) {
            e = FormationExpr::GProduct(Box::new(e), Box::new(FormationExpr::All));
        }
        match formation_contains(&e, &PermGroup::cyclic(2)) {
            Err(GroupError::DepthExceeded(d)) => assert_eq!(d, MAX_EVAL_DEPTH),
            other => panic!("expected a depth error, got {other:?}"),
        }
    }

    #[test]
    fn simple_class_spec_views() {
        let spec = SimpleClassSpec::listed(
            &[2, 3],
            &[SimpleType::NonAbelian { order: 60 }],
            false,
        )
        .unwrap();
        assert!(spec.contains(SimpleType::Cyclic(2)));
        assert!(!spec.contains(SimpleType::Cyclic(5)));
        assert!(spec.contains(SimpleType::NonAbelian { order: 60 }));
        assert!(!spec.contains(SimpleType::NonAbelian { order: 168 }));

        let plus = spec.plus();
        assert!(plus.contains(SimpleType::Cyclic(2)));
        assert!(!plus.contains(SimpleType::NonAbelian { order: 60 }));
        assert!(plus.is_abelian_only());

        let minus = spec.minus();
        assert!(!minus.contains(SimpleType::Cyclic(2)));
        assert!(minus.contains(SimpleType::NonAbelian { order: 60 }));

        let comp = spec.complement();
        assert!(comp.contains(SimpleType::Cyclic(5)));
        assert!(!comp.contains(SimpleType::Cyclic(2)));
        assert!(comp.contains(SimpleType::NonAbelian { order: 168 }));

        // Char({C2, C3, A5}) = {2,3} but π adds 5 through A5.
        assert!(!spec.char_equals_pi());
        let ok = SimpleClassSpec::listed(
            &[2, 3, 5],
            &[SimpleType::NonAbelian { order: 60 }],
            false,
        )
        .unwrap();
        assert!(ok.char_equals_pi());
        assert!(SimpleClassSpec::all().char_equals_pi());
        assert!(SimpleClassSpec::abelian_all().char_equals_pi());
        assert!(SimpleClassSpec::abelian_of(&[2, 3]).unwrap().char_equals_pi());

        // 𝔍 minus {C2}: the characteristic drops 2 but π keeps it.
        let dropped = SimpleClassSpec::listed(&[2], &[], true).unwrap();
        assert!(!dropped.char_equals_pi());
        assert!(SimpleClassSpec::listed(&[], &[], true).unwrap().char_equals_pi());
    }

    #[test]
    fn and_of_empty_list_is_all() {
        let e = parse_formation("and()").unwrap();
        assert!(formation_contains(&e, &PermGroup::alternating(5)).unwrap());
    }
}
