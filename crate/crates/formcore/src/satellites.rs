//! Satellites: local definitions of group classes.
//!
//! A satellite assigns formations to primes and simple groups (plus one
//! value for "everything outside the class" where the kind calls for it) and
//! induces a group class through an f-centrality rule on chief factors.
//! Five kinds are implemented: local, ω-local, composition, 𝔏-composition
//! and 𝔛-local.  Membership can be decided straight from the definition
//! ([`membership`]) or through the closed-form characterizations
//! ([`membership_characterized`]); the verification harness compares the two
//! on every corpus group.
//!
//! The transforms ([`integrate`], [`lemma43_normalize`],
//! [`theorem44_transform`], [`theorem51_bridge`]) rebuild a satellite in a
//! different shape while preserving its class; the rebuilt values may refer
//! to the source class itself through [`FormationExpr::ClassOf`].

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::catalog::SimpleType;
use crate::centralizers::{c_s, chief_centralizer, small_centralizer};
use crate::error::{GroupError, Result};
use crate::formations::{
    parse_formation_value, EvalCtx, FormationExpr, SimpleClassSpec,
};
use crate::group::PermGroup;
use crate::quotient::coset_action;
use crate::structure::{
    chief_series, com, lattice_data, member_subgroup, omega_d_radical, type_restricted_radical,
    ChiefFactor,
};

/// Which kind of local definition a satellite is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatelliteKind {
    Local,
    OmegaLocal(BTreeSet<u64>),
    Composition,
    LComposition(SimpleClassSpec),
    XLocal(SimpleClassSpec),
}

/// A satellite: formation-valued slots keyed by primes, simple types and an
/// optional complement symbol, together with the kind that fixes the
/// f-centrality rule.
///
/// Values are keyed by prime, simple type or the complement symbol only, so
/// the map cannot distinguish non-isomorphic groups with the same
/// composition factors; that structural property is part of the definition.
#[derive(Clone, Debug)]
pub struct SatelliteSpec {
    kind: SatelliteKind,
    prime_values: BTreeMap<u64, FormationExpr>,
    /// Value at primes missing from `prime_values`.
    default_prime: FormationExpr,
    /// Values at simple types, keyed by (is_nonabelian, order); for the
    /// 𝔛-local kind this may also carry abelian types outside 𝔛.
    simple_values: BTreeMap<(bool, u64), FormationExpr>,
    /// Value at simple types missing from `simple_values`.
    default_simple: FormationExpr,
    /// f(ω′) or f(𝔏′); present exactly for the ω-local and 𝔏-composition
    /// kinds.
    complement_value: Option<FormationExpr>,
}

fn skey(s: SimpleType) -> (bool, u64) {
    match s {
        SimpleType::Cyclic(p) => (false, p),
        SimpleType::NonAbelian { order } => (true, order),
    }
}

/// Which clause of the f-centrality rule applies to a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralRule {
    /// Test G/C_G(H/K) against the value.
    Ordinary,
    /// Test G/c_G(H/K) (small centralizer) against the value.
    Small,
    /// 𝔛-local condition (ii): test a monolithic quotient G/L itself.
    MonolithicQuotient,
}

impl fmt::Display for CentralRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralRule::Ordinary => f.write_str("ordinary-centralizer"),
            CentralRule::Small => f.write_str("small-centralizer"),
            CentralRule::MonolithicQuotient => f.write_str("monolithic-quotient"),
        }
    }
}

/// The verdict of the f-centrality rule on one subject (a chief factor, or
/// a monolithic quotient for the 𝔛-local kind).
#[derive(Clone, Debug)]
pub struct FCentralVerdict {
    /// Chief-series position for factor rules; lattice index of the kernel
    /// for monolithic-quotient rules.
    pub factor_index: usize,
    /// Human-readable description of what was tested.
    pub subject: String,
    pub central: bool,
    pub rule_used: CentralRule,
    /// The formation the quotient was tested against.
    pub formation_value: FormationExpr,
}

impl SatelliteSpec {
    /// Builds and validates a satellite.
    ///
    /// The slot layout depends on the kind: simple-type slots exist only for
    /// the composition-like kinds, the complement slot exactly for ω-local
    /// and 𝔏-composition, and the 𝔛-local kind requires Char(𝔛) = π(𝔛).
    pub fn new(
        kind: SatelliteKind,
        prime_values: BTreeMap<u64, FormationExpr>,
        default_prime: FormationExpr,
        simple_values: BTreeMap<SimpleType, FormationExpr>,
        default_simple: FormationExpr,
        complement_value: Option<FormationExpr>,
    ) -> Result<SatelliteSpec> {
        let fail = |msg: String| GroupError::ClassSyntax { pos: 0, msg };
        match &kind {
            SatelliteKind::Local | SatelliteKind::OmegaLocal(_) => {
                if !simple_values.is_empty() {
                    return Err(fail(
                        "this kind has no simple-type slots; only prime values apply".into(),
                    ));
                }
            }
            SatelliteKind::Composition | SatelliteKind::LComposition(_) => {
                if let Some(s) = simple_values.keys().find(|s| s.is_abelian()) {
                    return Err(fail(format!(
                        "assign the value at {} with `p {} => ...`",
                        s.label(),
                        s.primes()[0]
                    )));
                }
            }
            SatelliteKind::XLocal(_) => {}
        }
        match &kind {
            SatelliteKind::OmegaLocal(omega) => {
                if omega.is_empty() {
                    return Err(fail("omega must list at least one prime".into()));
                }
                if let Some(p) = prime_values.keys().find(|p| !omega.contains(p)) {
                    return Err(fail(format!("prime {p} is outside omega")));
                }
                if complement_value.is_none() {
                    return Err(fail(
                        "the ω-local kind requires a complement value (`complement => ...`)"
                            .into(),
                    ));
                }
            }
            SatelliteKind::LComposition(class) => {
                if let Some(p) = prime_values.keys().find(|&&p| !class.contains_prime(p)) {
                    return Err(fail(format!("C{p} is outside the class")));
                }
                if let Some(s) = simple_values.keys().find(|&&s| !class.contains(s)) {
                    return Err(fail(format!(
                        "{} is outside the class; its value is the complement value",
                        s.label()
                    )));
                }
                if complement_value.is_none() {
                    return Err(fail(
                        "the 𝔏-composition kind requires a complement value \
                         (`complement => ...`)"
                            .into(),
                    ));
                }
            }
            SatelliteKind::XLocal(class) => {
                if !class.char_equals_pi() {
                    return Err(fail(
                        "the 𝔛-local kind requires Char(𝔛) = π(𝔛) on its class".into(),
                    ));
                }
                if let Some(p) = prime_values.keys().find(|&&p| !class.contains_prime(p)) {
                    return Err(fail(format!("prime {p} is outside Char of the class")));
                }
                if let Some(s) = simple_values.keys().find(|&&s| class.contains(s)) {
                    return Err(fail(format!(
                        "{} lies inside the class; its factors are tested through the \
                         prime values",
                        s.label()
                    )));
                }
                if complement_value.is_some() {
                    return Err(fail(
                        "the 𝔛-local kind has no complement slot; use simple-type values"
                            .into(),
                    ));
                }
            }
            SatelliteKind::Local | SatelliteKind::Composition => {
                if complement_value.is_some() {
                    return Err(fail("this kind has no complement slot".into()));
                }
            }
        }
        Ok(SatelliteSpec {
            kind,
            prime_values,
            default_prime,
            simple_values: simple_values.into_iter().map(|(s, v)| (skey(s), v)).collect(),
            default_simple,
            complement_value,
        })
    }

    /// An ω-composition satellite: the 𝔏-composition kind over the class of
    /// abelian simple groups C_p with p ∈ ω.
    pub fn omega_composition(
        omega: &[u64],
        prime_values: BTreeMap<u64, FormationExpr>,
        default_prime: FormationExpr,
        complement_value: FormationExpr,
    ) -> Result<SatelliteSpec> {
        let class = SimpleClassSpec::abelian_of(omega)?;
        SatelliteSpec::new(
            SatelliteKind::LComposition(class),
            prime_values,
            default_prime,
            BTreeMap::new(),
            FormationExpr::Empty,
            Some(complement_value),
        )
    }

    pub fn kind(&self) -> &SatelliteKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SatelliteKind::Local => "local",
            SatelliteKind::OmegaLocal(_) => "omegalocal",
            SatelliteKind::Composition => "composition",
            SatelliteKind::LComposition(_) => "lcomposition",
            SatelliteKind::XLocal(_) => "xlocal",
        }
    }

    /// The value at a prime slot.
    pub fn value_at_prime(&self, p: u64) -> &FormationExpr {
        self.prime_values.get(&p).unwrap_or(&self.default_prime)
    }

    /// The value at a simple-type slot, with the direct-power template
    /// instantiated at that type.
    pub fn value_at_simple(&self, s: SimpleType) -> FormationExpr {
        self.simple_values
            .get(&skey(s))
            .unwrap_or(&self.default_simple)
            .substitute_self(s)
    }

    pub fn complement_value(&self) -> Option<&FormationExpr> {
        self.complement_value.as_ref()
    }

    fn complement_or_integrity(&self) -> Result<&FormationExpr> {
        self.complement_value.as_ref().ok_or_else(|| {
            GroupError::Integrity("the kind carries no complement value".into())
        })
    }

    /// Intersection of the prime values over `primes`, per the ∩ f(p) rules.
    fn prime_intersection(&self, primes: &[u64]) -> FormationExpr {
        let mut parts: Vec<FormationExpr> =
            primes.iter().map(|&p| self.value_at_prime(p).clone()).collect();
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            FormationExpr::And(parts)
        }
    }
}

impl fmt::Display for SatelliteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind {}", self.kind_name())?;
        match &self.kind {
            SatelliteKind::OmegaLocal(omega) => {
                let ps: Vec<String> = omega.iter().map(|p| p.to_string()).collect();
                write!(f, "\nomega {}", ps.join(","))?;
            }
            SatelliteKind::LComposition(class) | SatelliteKind::XLocal(class) => {
                write!(f, "\nclass {class}")?;
            }
            _ => {}
        }
        for (p, v) in &self.prime_values {
            write!(f, "\np {p} => {v}")?;
        }
        write!(f, "\ndefault_prime => {}", self.default_prime)?;
        for (&(na, o), v) in &self.simple_values {
            let s = if na {
                SimpleType::NonAbelian { order: o }.label()
            } else {
                format!("p{o}")
            };
            write!(f, "\nsimple {s} => {v}")?;
        }
        match self.kind {
            SatelliteKind::Composition | SatelliteKind::LComposition(_) | SatelliteKind::XLocal(_) => {
                write!(f, "\ndefault_simple => {}", self.default_simple)?;
            }
            _ => {}
        }
        if let Some(c) = &self.complement_value {
            write!(f, "\ncomplement => {c}")?;
        }
        Ok(())
    }
}

/// Parses the line-oriented satellite file format.
///
/// `kind` must come first; `omega`/`class` (where the kind needs them)
/// before any assignment; then `p P => expr`, `simple S => expr`,
/// `default_prime => expr`, `default_simple => expr` and
/// `complement => expr` lines.  `#` starts a comment.
pub fn parse_satellite(text: &str) -> Result<SatelliteSpec> {
    let fail = |line: usize, msg: String| GroupError::SatelliteParse { line, msg };
    let reword = |line: usize, e: GroupError| match e {
        GroupError::ClassSyntax { pos, msg } => GroupError::SatelliteParse {
            line,
            msg: format!("at column {pos}: {msg}"),
        },
        other => other,
    };
    let mut kind: Option<SatelliteKind> = None;
    let mut kind_word = String::new();
    let mut omega: Option<BTreeSet<u64>> = None;
    let mut class: Option<SimpleClassSpec> = None;
    let mut prime_values: BTreeMap<u64, FormationExpr> = BTreeMap::new();
    let mut default_prime: Option<FormationExpr> = None;
    let mut simple_values: BTreeMap<SimpleType, FormationExpr> = BTreeMap::new();
    let mut default_simple: Option<FormationExpr> = None;
    let mut complement: Option<FormationExpr> = None;
    let mut last_line = 0usize;

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
        last_line = line_no;
        let (word, rest) = match line.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (line, ""),
        };
        if kind.is_none() && word != "kind" {
            return Err(fail(line_no, "the first directive must be `kind ...`".into()));
        }
        match word {
            "kind" => {
                if kind.is_some() {
                    return Err(fail(line_no, "duplicate kind directive".into()));
                }
                kind_word = rest.to_string();
                kind = Some(match rest {
                    "local" => SatelliteKind::Local,
                    // Placeholders; omega / class lines fill these in below.
                    "omegalocal" => SatelliteKind::OmegaLocal(BTreeSet::new()),
                    "composition" => SatelliteKind::Composition,
                    "lcomposition" => SatelliteKind::LComposition(SimpleClassSpec::all()),
                    "xlocal" => SatelliteKind::XLocal(SimpleClassSpec::all()),
                    other => return Err(GroupError::UnsupportedKind(other.to_string())),
                });
            }
            "omega" => {
                if !matches!(kind, Some(SatelliteKind::OmegaLocal(_))) {
                    return Err(fail(line_no, format!("kind {kind_word} takes no omega line")));
                }
                if omega.is_some() {
                    return Err(fail(line_no, "duplicate omega line".into()));
                }
                if !prime_values.is_empty() {
                    return Err(fail(line_no, "omega must precede the assignments".into()));
                }
                let mut set = BTreeSet::new();
                for tok in rest.split(',') {
                    let t = tok.trim();
                    let p: u64 = t
                        .parse()
                        .map_err(|_| fail(line_no, format!("invalid prime {t:?}")))?;
                    if !arith::is_prime(p) {
                        return Err(fail(line_no, format!("{p} is not prime")));
                    }
                    set.insert(p);
                }
                omega = Some(set);
            }
            "class" => {
                match kind {
                    Some(SatelliteKind::LComposition(_)) | Some(SatelliteKind::XLocal(_)) => {}
                    _ => {
                        return Err(fail(line_no, format!("kind {kind_word} takes no class line")))
                    }
                }
                if class.is_some() {
                    return Err(fail(line_no, "duplicate class line".into()));
                }
                if !prime_values.is_empty() || !simple_values.is_empty() {
                    return Err(fail(line_no, "class must precede the assignments".into()));
                }
                class = Some(parse_class_line(rest).map_err(|e| reword(line_no, e))?);
            }
            "p" => {
                let (ptext, expr_text) = rest.split_once("=>").ok_or_else(|| {
                    fail(line_no, "expected `p P => <formation-expr>`".into())
                })?;
                let t = ptext.trim();
                let p: u64 = t
                    .parse()
                    .map_err(|_| fail(line_no, format!("invalid prime {t:?}")))?;
                if !arith::is_prime(p) {
                    return Err(fail(line_no, format!("{p} is not prime")));
                }
                if prime_values.contains_key(&p) {
                    return Err(fail(line_no, format!("duplicate value for prime {p}")));
                }
                let expr = parse_formation_value(expr_text.trim(), false)
                    .map_err(|e| reword(line_no, e))?;
                prime_values.insert(p, expr);
            }
            "simple" => {
                let (stext, expr_text) = rest.split_once("=>").ok_or_else(|| {
                    fail(line_no, "expected `simple S => <formation-expr>`".into())
                })?;
                let s = SimpleType::parse(stext.trim()).map_err(|e| reword(line_no, e))?;
                if simple_values.contains_key(&s) {
                    return Err(fail(line_no, format!("duplicate value for {}", s.label())));
                }
                let expr = parse_formation_value(expr_text.trim(), true)
                    .map_err(|e| reword(line_no, e))?;
                simple_values.insert(s, expr);
            }
            "default_prime" => {
                let expr_text = rest.strip_prefix("=>").ok_or_else(|| {
                    fail(line_no, "expected `default_prime => <formation-expr>`".into())
                })?;
                if default_prime.is_some() {
                    return Err(fail(line_no, "duplicate default_prime".into()));
                }
                default_prime = Some(
                    parse_formation_value(expr_text.trim(), false)
                        .map_err(|e| reword(line_no, e))?,
                );
            }
            "default_simple" => {
                let expr_text = rest.strip_prefix("=>").ok_or_else(|| {
                    fail(line_no, "expected `default_simple => <formation-expr>`".into())
                })?;
                if default_simple.is_some() {
                    return Err(fail(line_no, "duplicate default_simple".into()));
                }
                default_simple = Some(
                    parse_formation_value(expr_text.trim(), true)
                        .map_err(|e| reword(line_no, e))?,
                );
            }
            "complement" => {
                let expr_text = rest.strip_prefix("=>").ok_or_else(|| {
                    fail(line_no, "expected `complement => <formation-expr>`".into())
                })?;
                if complement.is_some() {
                    return Err(fail(line_no, "duplicate complement".into()));
                }
                complement = Some(
                    parse_formation_value(expr_text.trim(), false)
                        .map_err(|e| reword(line_no, e))?,
                );
            }
            other => return Err(fail(line_no, format!("unknown directive {other:?}"))),
        }
    }

    let Some(mut kind) = kind else {
        return Err(fail(0, "missing kind directive".into()));
    };
    match &mut kind {
        SatelliteKind::OmegaLocal(slot) => {
            *slot = omega.ok_or_else(|| {
                fail(last_line, "the ω-local kind requires an omega line".into())
            })?;
        }
        SatelliteKind::LComposition(slot) | SatelliteKind::XLocal(slot) => {
            *slot = class.ok_or_else(|| {
                fail(last_line, format!("kind {kind_word} requires a class line"))
            })?;
        }
        _ => {}
    }
    SatelliteSpec::new(
        kind,
        prime_values,
        default_prime.unwrap_or(FormationExpr::Empty),
        simple_values,
        default_simple.unwrap_or(FormationExpr::Empty),
        complement,
    )
    .map_err(|e| reword(last_line.max(1), e))
}

/// Parses `primes=2,3 nonabelian=A5,PSL(2,7) [complement]`.
fn parse_class_line(text: &str) -> Result<SimpleClassSpec> {
    let mut primes: Vec<u64> = Vec::new();
    let mut nonabelian: Vec<SimpleType> = Vec::new();
    let mut complemented = false;
    for field in split_fields(text) {
        if field == "complement" {
            complemented = true;
        } else if let Some(list) = field.strip_prefix("primes=") {
            for tok in split_top_commas(list) {
                let p: u64 = tok.parse().map_err(|_| GroupError::ClassSyntax {
                    pos: 0,
                    msg: format!("invalid prime {tok:?}"),
                })?;
                primes.push(p);
            }
        } else if let Some(list) = field.strip_prefix("nonabelian=") {
            for tok in split_top_commas(list) {
                nonabelian.push(SimpleType::parse(&tok)?);
            }
        } else {
            return Err(GroupError::ClassSyntax {
                pos: 0,
                msg: format!("unknown class field {field:?}"),
            });
        }
    }
    SimpleClassSpec::listed(&primes, &nonabelian, complemented)
}

/// Splits on whitespace, keeping parenthesized label arguments intact.
fn split_fields(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Splits on commas at parenthesis depth zero, so `A5,PSL(2,7)` yields two
/// items.
fn split_top_commas(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|s| s.trim().to_string()).collect()
}

/// The formation a chief factor must satisfy and the centralizer clause the
/// kind's f-rule dictates for it.
///
/// For the 𝔛-local kind a factor outside 𝔛 is reported with the
/// monolithic-quotient rule: it carries no factor-wise condition, and the
/// returned value is the one a monolithic quotient with that socle type
/// would be tested against.
pub fn satellite_value(
    spec: &SatelliteSpec,
    f: &ChiefFactor,
) -> Result<(FormationExpr, CentralRule)> {
    let stype = f.simple_type();
    let value = match &spec.kind {
        SatelliteKind::Local => (
            spec.prime_intersection(&stype.primes()),
            CentralRule::Ordinary,
        ),
        SatelliteKind::OmegaLocal(omega) => {
            let shared: Vec<u64> = stype
                .primes()
                .into_iter()
                .filter(|p| omega.contains(p))
                .collect();
            if shared.is_empty() {
                (
                    spec.complement_or_integrity()?.clone(),
                    CentralRule::Small,
                )
            } else {
                (spec.prime_intersection(&shared), CentralRule::Ordinary)
            }
        }
        SatelliteKind::Composition => match stype {
            SimpleType::Cyclic(p) => (spec.value_at_prime(p).clone(), CentralRule::Ordinary),
            s @ SimpleType::NonAbelian { .. } => {
                (spec.value_at_simple(s), CentralRule::Ordinary)
            }
        },
        SatelliteKind::LComposition(class) => {
            if class.contains(stype) {
                match stype {
                    SimpleType::Cyclic(p) => {
                        (spec.value_at_prime(p).clone(), CentralRule::Ordinary)
                    }
                    s => (spec.value_at_simple(s), CentralRule::Ordinary),
                }
            } else {
                (
                    spec.complement_or_integrity()?.clone(),
                    CentralRule::Small,
                )
            }
        }
        SatelliteKind::XLocal(class) => {
            if class.contains(stype) {
                (
                    spec.prime_intersection(&stype.primes()),
                    CentralRule::Ordinary,
                )
            } else {
                (spec.value_at_simple(stype), CentralRule::MonolithicQuotient)
            }
        }
    };
    Ok(value)
}

/// Evaluates the f-centrality rule on every subject it constrains in `g`:
/// each chief factor, plus each qualifying monolithic quotient for the
/// 𝔛-local kind.
pub fn fcentral_verdicts(g: &PermGroup, spec: &SatelliteSpec) -> Result<Vec<FCentralVerdict>> {
    fcentral_verdicts_at(g, spec, EvalCtx::root())
}

fn fcentral_verdicts_at(
    g: &PermGroup,
    spec: &SatelliteSpec,
    ctx: EvalCtx,
) -> Result<Vec<FCentralVerdict>> {
    let mut out = Vec::new();
    if g.is_trivial() {
        return Ok(out);
    }
    let series = chief_series(g)?;
    for f in series.factors() {
        let (value, rule) = satellite_value(spec, &f)?;
        let subject = format!(
            "chief factor of order {} (type {}^{}) at step {}",
            f.order(),
            f.simple_type().label(),
            f.copies(),
            f.index()
        );
        match rule {
            CentralRule::Ordinary | CentralRule::Small => {
                let c = match rule {
                    CentralRule::Ordinary => chief_centralizer(g, &f)?,
                    _ => small_centralizer(g, &f)?,
                };
                let q = coset_action(g, &c)?;
                let central = value.contains_at(q.target(), ctx)?;
                out.push(FCentralVerdict {
                    factor_index: f.index(),
                    subject,
                    central,
                    rule_used: rule,
                    formation_value: value,
                });
            }
            // 𝔛-local factors outside 𝔛 carry no factor-wise condition;
            // the quotient scan below covers them.
            CentralRule::MonolithicQuotient => {}
        }
    }
    if let SatelliteKind::XLocal(class) = &spec.kind {
        let lat = lattice_data(g)?;
        for l in 0..lat.len() {
            let atoms = lat.atoms_above(l);
            if atoms.len() != 1 {
                continue;
            }
            let steps = lat.interval_steps(l, atoms[0])?;
            let (stype, _) = steps[0];
            if class.contains(stype) {
                continue;
            }
            let value = spec.value_at_simple(stype);
            let q = coset_action(g, &member_subgroup(g, &lat, l))?;
            let central = value.contains_at(q.target(), ctx)?;
            out.push(FCentralVerdict {
                factor_index: l,
                subject: format!(
                    "monolithic quotient of order {} with socle type {}",
                    q.target().order(),
                    stype.label()
                ),
                central,
                rule_used: CentralRule::MonolithicQuotient,
                formation_value: value,
            });
        }
    }
    Ok(out)
}

/// Definition-based membership: every constrained subject must pass.
///
/// The trivial group is a member of every satellite class by convention.
pub fn membership(g: &PermGroup, spec: &SatelliteSpec) -> Result<bool> {
    membership_at(g, spec, EvalCtx::root())
}

pub(crate) fn membership_at(g: &PermGroup, spec: &SatelliteSpec, ctx: EvalCtx) -> Result<bool> {
    Ok(fcentral_verdicts_at(g, spec, ctx)?
        .iter()
        .all(|v| v.central))
}

/// Characterization-based membership, via the closed-form conditions.
///
/// An empty complement value first triggers the reduction to the plain
/// local/composition form.  The 𝔛-local kind has no characterization.
pub fn membership_characterized(g: &PermGroup, spec: &SatelliteSpec) -> Result<bool> {
    let ctx = EvalCtx::root();
    match &spec.kind {
        SatelliteKind::XLocal(_) => Err(GroupError::UnsupportedKind(
            "no characterization applies to the 𝔛-local kind".into(),
        )),
        SatelliteKind::Local => {
            local_characterized(g, ctx, &|p| Some(spec.value_at_prime(p).clone()))
        }
        SatelliteKind::OmegaLocal(omega) => {
            let complement = spec.complement_or_integrity()?;
            if matches!(complement, FormationExpr::Empty) {
                // Reduction: the class equals the one locally defined by
                // f on ω and the empty value off ω.
                let value = |p: u64| {
                    if omega.contains(&p) {
                        Some(spec.value_at_prime(p).clone())
                    } else {
                        None
                    }
                };
                return local_characterized(g, ctx, &value);
            }
            if g.is_trivial() {
                return Ok(true);
            }
            let omega_list: Vec<u64> = omega.iter().copied().collect();
            let rad = omega_d_radical(g, &omega_list)?;
            let q = coset_action(g, &rad)?;
            if !complement.contains_at(q.target(), ctx)? {
                return Ok(false);
            }
            for p in g.primes() {
                if !omega.contains(&p) {
                    continue;
                }
                if !quotient_by_p_layer_in(g, p, spec.value_at_prime(p), ctx)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SatelliteKind::Composition => {
            composition_characterized(g, ctx, &|s| Some(spec_value_for(spec, s)))
        }
        SatelliteKind::LComposition(class) => {
            let complement = spec.complement_or_integrity()?;
            if matches!(complement, FormationExpr::Empty) {
                // Reduction: the class equals the composition class of
                // f on 𝔏 and the empty value on 𝔏′.
                let value = |s: SimpleType| {
                    if class.contains(s) {
                        Some(spec_value_for(spec, s))
                    } else {
                        None
                    }
                };
                return composition_characterized(g, ctx, &value);
            }
            if g.is_trivial() {
                return Ok(true);
            }
            let rad = type_restricted_radical(g, |s| class.contains(*s))?;
            let q = coset_action(g, &rad)?;
            if !complement.contains_at(q.target(), ctx)? {
                return Ok(false);
            }
            for s in com(g)? {
                if !class.contains(s) {
                    continue;
                }
                if !quotient_by_cs_in(g, s, &spec_value_for(spec, s), ctx)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn spec_value_for(spec: &SatelliteSpec, s: SimpleType) -> FormationExpr {
    match s {
        SimpleType::Cyclic(p) => spec.value_at_prime(p).clone(),
        other => spec.value_at_simple(other),
    }
}

/// The local characterization: G must be a π-group for π = {p : f(p) ≠ ∅}
/// and satisfy G/O_{p′,p}(G) ∈ f(p) for every prime p of its order.  A
/// `None` value plays the role of the empty formation.
fn local_characterized(
    g: &PermGroup,
    ctx: EvalCtx,
    value: &dyn Fn(u64) -> Option<FormationExpr>,
) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    for p in g.primes() {
        let Some(v) = value(p) else { return Ok(false) };
        if matches!(v, FormationExpr::Empty) {
            return Ok(false);
        }
        if !quotient_by_p_layer_in(g, p, &v, ctx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The composition characterization: G/C^S(G) ∈ f(S) for every composition
/// factor S of G.
fn composition_characterized(
    g: &PermGroup,
    ctx: EvalCtx,
    value: &dyn Fn(SimpleType) -> Option<FormationExpr>,
) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    for s in com(g)? {
        let Some(v) = value(s) else { return Ok(false) };
        if !quotient_by_cs_in(g, s, &v, ctx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn quotient_by_p_layer_in(
    g: &PermGroup,
    p: u64,
    value: &FormationExpr,
    ctx: EvalCtx,
) -> Result<bool> {
    let layer = crate::structure::p_layer(g, p)?;
    let q = coset_action(g, &layer)?;
    value.contains_at(q.target(), ctx)
}

fn quotient_by_cs_in(
    g: &PermGroup,
    s: SimpleType,
    value: &FormationExpr,
    ctx: EvalCtx,
) -> Result<bool> {
    let c = c_s(g, s)?;
    let q = coset_action(g, &c)?;
    value.contains_at(q.target(), ctx)
}

fn and_with(value: &FormationExpr, ambient: &FormationExpr) -> FormationExpr {
    FormationExpr::And(vec![value.clone(), ambient.clone()])
}

/// Intersects every value with an ambient class, producing an integrated
/// satellite (one whose values lie inside the class it defines when the
/// ambient is that class).
pub fn integrate(spec: &SatelliteSpec, ambient: &FormationExpr) -> Result<SatelliteSpec> {
    match spec.kind {
        SatelliteKind::Composition | SatelliteKind::LComposition(_) => {}
        _ => {
            return Err(GroupError::UnsupportedKind(format!(
                "integrate applies to composition kinds, not {}",
                spec.kind_name()
            )))
        }
    }
    Ok(SatelliteSpec {
        kind: spec.kind.clone(),
        prime_values: spec
            .prime_values
            .iter()
            .map(|(&p, v)| (p, and_with(v, ambient)))
            .collect(),
        default_prime: and_with(&spec.default_prime, ambient),
        simple_values: spec
            .simple_values
            .iter()
            .map(|(&k, v)| (k, and_with(v, ambient)))
            .collect(),
        default_simple: and_with(&spec.default_simple, ambient),
        complement_value: spec
            .complement_value
            .as_ref()
            .map(|v| and_with(v, ambient)),
    })
}

/// Rebuilds an 𝔏-composition satellite with every value outside 𝔏⁺
/// replaced by the defined class itself; the prime values are integrated.
/// The class of groups is unchanged.
pub fn lemma43_normalize(spec: &SatelliteSpec) -> Result<SatelliteSpec> {
    let SatelliteKind::LComposition(class) = &spec.kind else {
        return Err(GroupError::UnsupportedKind(format!(
            "the normalization applies to the 𝔏-composition kind, not {}",
            spec.kind_name()
        )));
    };
    let own = FormationExpr::ClassOf(Arc::new(spec.clone()));
    Ok(SatelliteSpec {
        kind: SatelliteKind::LComposition(class.clone()),
        prime_values: spec
            .prime_values
            .iter()
            .map(|(&p, v)| (p, and_with(v, &own)))
            .collect(),
        default_prime: and_with(&spec.default_prime, &own),
        simple_values: BTreeMap::new(),
        default_simple: own.clone(),
        complement_value: Some(own),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem44Direction {
    /// From a satellite over 𝔏 to one over 𝔏⁺.
    ToPlus,
    /// From a satellite over an abelian-only class 𝔏⁺ back to one over a
    /// class with the same abelian part (the largest such: all nonabelian
    /// types included).
    FromPlus,
}

/// Moves an 𝔏-composition satellite between 𝔏 and 𝔏⁺, preserving the
/// class: values on 𝔏⁺ are kept (integrated), all others become the class
/// itself.
pub fn theorem44_transform(
    spec: &SatelliteSpec,
    direction: Theorem44Direction,
) -> Result<SatelliteSpec> {
    let SatelliteKind::LComposition(class) = &spec.kind else {
        return Err(GroupError::UnsupportedKind(format!(
            "the transform applies to the 𝔏-composition kind, not {}",
            spec.kind_name()
        )));
    };
    let target = match direction {
        Theorem44Direction::ToPlus => class.plus(),
        Theorem44Direction::FromPlus => {
            if !class.is_abelian_only() {
                return Err(GroupError::UnsupportedKind(
                    "the reverse transform expects a satellite over an abelian-only class"
                        .into(),
                ));
            }
            class.with_all_nonabelian()
        }
    };
    let own = FormationExpr::ClassOf(Arc::new(spec.clone()));
    Ok(SatelliteSpec {
        kind: SatelliteKind::LComposition(target),
        prime_values: spec
            .prime_values
            .iter()
            .map(|(&p, v)| (p, and_with(v, &own)))
            .collect(),
        default_prime: and_with(&spec.default_prime, &own),
        simple_values: BTreeMap::new(),
        default_simple: own.clone(),
        complement_value: Some(own),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem51Direction {
    /// From an 𝔛-local satellite to an 𝔏-composition satellite, for any 𝔏
    /// with 𝔏⁺ = 𝔛⁺ (default 𝔏 = 𝔛⁺).
    XLocalToComposition,
    /// From an 𝔏-composition satellite to an 𝔛-local one over 𝔛 = 𝔏⁺.
    CompositionToXPlus,
}

/// Bridges between the 𝔛-local and composition worlds, preserving the
/// class.
///
/// `lclass` chooses the target class for the composition direction; it must
/// have the same abelian part as 𝔛.  The other direction ignores it.
pub fn theorem51_bridge(
    spec: &SatelliteSpec,
    direction: Theorem51Direction,
    lclass: Option<SimpleClassSpec>,
) -> Result<SatelliteSpec> {
    match direction {
        Theorem51Direction::XLocalToComposition => {
            let SatelliteKind::XLocal(xclass) = &spec.kind else {
                return Err(GroupError::UnsupportedKind(format!(
                    "this direction starts from the 𝔛-local kind, not {}",
                    spec.kind_name()
                )));
            };
            let target = lclass.unwrap_or_else(|| xclass.plus());
            if !target.same_plus(xclass) {
                return Err(GroupError::ClassSyntax {
                    pos: 0,
                    msg: "the target class must have the same abelian part as 𝔛".into(),
                });
            }
            let own = FormationExpr::ClassOf(Arc::new(spec.clone()));
            Ok(SatelliteSpec {
                kind: SatelliteKind::LComposition(target),
                prime_values: spec
                    .prime_values
                    .iter()
                    .map(|(&p, v)| (p, and_with(v, &own)))
                    .collect(),
                default_prime: and_with(&spec.default_prime, &own),
                simple_values: BTreeMap::new(),
                default_simple: own.clone(),
                complement_value: Some(own),
            })
        }
        Theorem51Direction::CompositionToXPlus => {
            let lspec = match &spec.kind {
                SatelliteKind::LComposition(_) => spec.clone(),
                // A plain composition satellite is the 𝔏 = 𝔍 case; the
                // complement slot is never consulted when 𝔏′ is empty.
                SatelliteKind::Composition => SatelliteSpec {
                    kind: SatelliteKind::LComposition(SimpleClassSpec::all()),
                    prime_values: spec.prime_values.clone(),
                    default_prime: spec.default_prime.clone(),
                    simple_values: spec.simple_values.clone(),
                    default_simple: spec.default_simple.clone(),
                    complement_value: Some(FormationExpr::Empty),
                },
                _ => {
                    return Err(GroupError::UnsupportedKind(format!(
                        "this direction starts from a composition kind, not {}",
                        spec.kind_name()
                    )))
                }
            };
            let SatelliteKind::LComposition(class) = &lspec.kind else {
                unreachable!()
            };
            let own = FormationExpr::ClassOf(Arc::new(spec.clone()));
            Ok(SatelliteSpec {
                kind: SatelliteKind::XLocal(class.plus()),
                prime_values: lspec
                    .prime_values
                    .iter()
                    .map(|(&p, v)| (p, and_with(v, &own)))
                    .collect(),
                default_prime: and_with(&lspec.default_prime, &own),
                simple_values: BTreeMap::new(),
                default_simple: own,
                complement_value: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formations::{formation_contains, parse_formation};
    use crate::group::direct_product;

    fn sample_groups() -> Vec<PermGroup> {
        vec![
            PermGroup::trivial(1),
            PermGroup::cyclic(2),
            PermGroup::cyclic(6),
            PermGroup::symmetric(3),
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::dihedral(4),
            PermGroup::quaternion8(),
            PermGroup::cyclic(12),
            PermGroup::alternating(5),
            direct_product(&PermGroup::alternating(5), &PermGroup::cyclic(2)),
            direct_product(&PermGroup::symmetric(3), &PermGroup::cyclic(2)),
        ]
    }

    fn nilpotency_satellite() -> SatelliteSpec {
        parse_satellite("kind local\ndefault_prime => trivial\n").unwrap()
    }

    fn nstar_satellite() -> SatelliteSpec {
        parse_satellite(
            "kind composition\ndefault_prime => trivial\ndefault_simple => formsimple self\n",
        )
        .unwrap()
    }

    #[test]
    fn nilpotency_satellite_matches_direct_nilpotency() {
        let spec = nilpotency_satellite();
        for g in sample_groups() {
            let direct = crate::subgroup::is_nilpotent(&g).unwrap();
            assert_eq!(membership(&g, &spec).unwrap(), direct, "on {g:?}");
            assert_eq!(
                membership_characterized(&g, &spec).unwrap(),
                direct,
                "characterized, on {g:?}"
            );
        }
    }

    #[test]
    fn nstar_satellite_matches_quasinilpotency_oracle() {
        let spec = nstar_satellite();
        let oracle = parse_formation("quasinilpotent").unwrap();
        for g in sample_groups() {
            let expect = formation_contains(&oracle, &g).unwrap();
            assert_eq!(membership(&g, &spec).unwrap(), expect, "on {g:?}");
            assert_eq!(
                membership_characterized(&g, &spec).unwrap(),
                expect,
                "characterized, on {g:?}"
            );
        }
    }

    #[test]
    fn omega_local_example_from_both_paths() {
        let spec = parse_satellite(
            "kind omegalocal\nomega 2\np 2 => trivial\ncomplement => all\n",
        )
        .unwrap();
        let s3 = PermGroup::symmetric(3);
        assert!(membership(&s3, &spec).unwrap());
        assert!(membership_characterized(&s3, &spec).unwrap());
        // S4 fails: the Klein-four chief factor is 2d with quotient S3 ∉ (1).
        let s4 = PermGroup::symmetric(4);
        assert!(!membership(&s4, &spec).unwrap());
        assert!(!membership_characterized(&s4, &spec).unwrap());
    }

    #[test]
    fn definition_and_characterization_agree_on_samples() {
        let specs = vec![
            nilpotency_satellite(),
            nstar_satellite(),
            parse_satellite("kind local\ndefault_prime => abelian\n").unwrap(),
            parse_satellite("kind omegalocal\nomega 2\np 2 => trivial\ncomplement => all\n")
                .unwrap(),
            parse_satellite("kind omegalocal\nomega 2,3\ndefault_prime => abelian\ncomplement => empty\n")
                .unwrap(),
            parse_satellite(
                "kind lcomposition\nclass primes=2,3\np 2 => trivial\np 3 => abelian\ncomplement => all\n",
            )
            .unwrap(),
            parse_satellite(
                "kind lcomposition\nclass primes=2,3,5 nonabelian=A5\ndefault_prime => soluble\nsimple A5 => formsimple self\ncomplement => empty\n",
            )
            .unwrap(),
            parse_satellite("kind composition\ndefault_prime => abelian\ndefault_simple => all\n")
                .unwrap(),
        ];
        for spec in &specs {
            for g in sample_groups() {
                assert_eq!(
                    membership(&g, spec).unwrap(),
                    membership_characterized(&g, spec).unwrap(),
                    "spec {spec} disagrees on {g:?}"
                );
            }
        }
    }

    #[test]
    fn trivial_group_is_always_a_member() {
        let triv = PermGroup::trivial(2);
        for spec in [
            nilpotency_satellite(),
            nstar_satellite(),
            parse_satellite("kind xlocal\nclass primes=2,3\ndefault_simple => all\n").unwrap(),
        ] {
            assert!(membership(&triv, &spec).unwrap());
        }
        // Even with every value empty.
        let empty = parse_satellite("kind local\n").unwrap();
        assert!(membership(&triv, &empty).unwrap());
        assert!(membership_characterized(&triv, &empty).unwrap());
        assert!(!membership(&PermGroup::cyclic(2), &empty).unwrap());
        assert!(!membership_characterized(&PermGroup::cyclic(2), &empty).unwrap());
    }

    #[test]
    fn omega_with_all_corpus_primes_agrees_with_local() {
        let local = parse_satellite("kind local\ndefault_prime => trivial\n").unwrap();
        let omega = parse_satellite(
            "kind omegalocal\nomega 2,3,5,7\ndefault_prime => trivial\ncomplement => empty\n",
        )
        .unwrap();
        for g in sample_groups() {
            assert_eq!(
                membership(&g, &local).unwrap(),
                membership(&g, &omega).unwrap(),
                "on {g:?}"
            );
        }
    }

    #[test]
    fn full_class_lcomposition_agrees_with_composition() {
        let comp = nstar_satellite();
        let lcomp = parse_satellite(
            "kind lcomposition\nclass complement\ndefault_prime => trivial\ndefault_simple => formsimple self\ncomplement => empty\n",
        )
        .unwrap();
        assert!(matches!(lcomp.kind(), SatelliteKind::LComposition(c) if c == &SimpleClassSpec::all()));
        for g in sample_groups() {
            assert_eq!(
                membership(&g, &comp).unwrap(),
                membership(&g, &lcomp).unwrap(),
                "on {g:?}"
            );
        }
    }

    #[test]
    fn satellite_value_rules() {
        let s4 = PermGroup::symmetric(4);
        let series = chief_series(&s4).unwrap();
        let spec = parse_satellite(
            "kind omegalocal\nomega 3\np 3 => trivial\ncomplement => all\n",
        )
        .unwrap();
        // V4 factor: a 3′-group, so the complement value and small
        // centralizer apply; A4/V4 ≅ C3 factor: ordinary rule.
        let (v, rule) = satellite_value(&spec, &series.factor(0)).unwrap();
        assert_eq!(rule, CentralRule::Small);
        assert!(matches!(v, FormationExpr::All));
        let (_, rule1) = satellite_value(&spec, &series.factor(1)).unwrap();
        assert_eq!(rule1, CentralRule::Ordinary);

        let a5c2 = direct_product(&PermGroup::alternating(5), &PermGroup::cyclic(2));
        let series = chief_series(&a5c2).unwrap();
        let nstar = nstar_satellite();
        let mut saw_self = false;
        for f in series.factors() {
            let (v, rule) = satellite_value(&nstar, &f).unwrap();
            assert_eq!(rule, CentralRule::Ordinary);
            if !f.simple_type().is_abelian() {
                assert_eq!(v.to_string(), "formsimple A5");
                saw_self = true;
            }
        }
        assert!(saw_self);
    }

    #[test]
    fn fcentral_verdicts_report_rules() {
        let s3 = PermGroup::symmetric(3);
        let spec = nilpotency_satellite();
        let verdicts = fcentral_verdicts(&s3, &spec).unwrap();
        assert_eq!(verdicts.len(), 2);
        assert!(verdicts.iter().all(|v| v.rule_used == CentralRule::Ordinary));
        // The A3 factor is eccentric (S3/A3 ≅ C2 ∉ (1)); the top factor is
        // central (its centralizer is all of S3).
        assert!(!verdicts[0].central);
        assert!(verdicts[1].central);
    }

    #[test]
    fn xlocal_membership_uses_both_conditions() {
        // 𝔛 = {C2, C3}: chief {2,3}-factors are tested prime-wise;
        // monolithic quotients with socle outside 𝔛 against f(S).
        let accepting = parse_satellite(
            "kind xlocal\nclass primes=2,3\np 2 => trivial\np 3 => trivial\ndefault_simple => all\n",
        )
        .unwrap();
        let rejecting = parse_satellite(
            "kind xlocal\nclass primes=2,3\np 2 => trivial\np 3 => trivial\ndefault_simple => empty\n",
        )
        .unwrap();
        let a5 = PermGroup::alternating(5);
        // A5 is monolithic with nonabelian socle: condition (ii) decides.
        assert!(membership(&a5, &accepting).unwrap());
        assert!(!membership(&a5, &rejecting).unwrap());
        // C6 has only abelian factors, both central here.
        let c6 = PermGroup::cyclic(6);
        assert!(membership(&c6, &accepting).unwrap());
        assert!(membership(&c6, &rejecting).unwrap());
        // S3 fails condition (i) at its C2 factor over the full action.
        let s3 = PermGroup::symmetric(3);
        assert!(!membership(&s3, &accepting).unwrap());

        assert!(matches!(
            membership_characterized(&a5, &accepting),
            Err(GroupError::UnsupportedKind(_))
        ));
    }

    #[test]
    fn xlocal_rejects_char_pi_mismatch() {
        match parse_satellite("kind xlocal\nclass primes=2 nonabelian=A5\ndefault_simple => all\n")
        {
            Err(GroupError::SatelliteParse { msg, .. }) => {
                assert!(msg.contains("Char"), "unexpected message: {msg}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parser_rejects_malformed_files() {
        assert!(matches!(
            parse_satellite("p 2 => trivial\n"),
            Err(GroupError::SatelliteParse { line: 1, .. })
        ));
        assert!(matches!(
            parse_satellite("kind frobnicate\n"),
            Err(GroupError::UnsupportedKind(_))
        ));
        assert!(matches!(
            parse_satellite("kind omegalocal\nomega 2\np 5 => trivial\ncomplement => all\n"),
            Err(GroupError::SatelliteParse { .. })
        ));
        assert!(matches!(
            parse_satellite("kind omegalocal\nomega 2\np 2 => trivial\n"),
            Err(GroupError::SatelliteParse { .. })
        ));
        assert!(matches!(
            parse_satellite("kind local\np 2 => frobnicate\n"),
            Err(GroupError::SatelliteParse { line: 2, .. })
        ));
        // The direct-power template is reserved for simple-type slots.
        assert!(matches!(
            parse_satellite("kind local\np 2 => formsimple self\n"),
            Err(GroupError::SatelliteParse { .. })
        ));
    }

    #[test]
    fn integrate_preserves_verdicts() {
        let spec = nstar_satellite();
        let own = FormationExpr::ClassOf(Arc::new(spec.clone()));
        let integrated = integrate(&spec, &own).unwrap();
        let again = integrate(&integrated, &own).unwrap();
        let all = integrate(&spec, &FormationExpr::All).unwrap();
        for g in sample_groups() {
            let expect = membership(&g, &spec).unwrap();
            assert_eq!(membership(&g, &integrated).unwrap(), expect, "on {g:?}");
            assert_eq!(membership(&g, &again).unwrap(), expect, "idempotence on {g:?}");
            assert_eq!(membership(&g, &all).unwrap(), expect, "ambient all on {g:?}");
        }
        assert!(matches!(
            integrate(&nilpotency_satellite(), &FormationExpr::All),
            Err(GroupError::UnsupportedKind(_))
        ));
    }

    #[test]
    fn lemma43_normalization_preserves_verdicts() {
        let specs = vec![
            parse_satellite(
                "kind lcomposition\nclass complement\ndefault_prime => trivial\ndefault_simple => formsimple self\ncomplement => empty\n",
            )
            .unwrap(),
            parse_satellite(
                "kind lcomposition\nclass primes=2,3\np 2 => trivial\np 3 => abelian\ncomplement => all\n",
            )
            .unwrap(),
            parse_satellite(
                "kind lcomposition\nclass primes=2,3,5 nonabelian=A5\ndefault_prime => soluble\nsimple A5 => all\ncomplement => empty\n",
            )
            .unwrap(),
        ];
        for spec in &specs {
            let normalized = lemma43_normalize(spec).unwrap();
            for g in sample_groups() {
                assert_eq!(
                    membership(&g, spec).unwrap(),
                    membership(&g, &normalized).unwrap(),
                    "spec {spec} changed on {g:?}"
                );
            }
        }
    }

    #[test]
    fn theorem44_round_trip_preserves_verdicts() {
        let spec = parse_satellite(
            "kind lcomposition\nclass primes=2,3 nonabelian=A5\np 2 => trivial\np 3 => abelian\nsimple A5 => all\ncomplement => empty\n",
        )
        .unwrap();
        let plus = theorem44_transform(&spec, Theorem44Direction::ToPlus).unwrap();
        assert!(matches!(
            plus.kind(),
            SatelliteKind::LComposition(c) if c.is_abelian_only()
        ));
        let back = theorem44_transform(&plus, Theorem44Direction::FromPlus).unwrap();
        for g in sample_groups() {
            let expect = membership(&g, &spec).unwrap();
            assert_eq!(membership(&g, &plus).unwrap(), expect, "to-plus on {g:?}");
            assert_eq!(membership(&g, &back).unwrap(), expect, "round trip on {g:?}");
        }
        assert!(matches!(
            theorem44_transform(&spec, Theorem44Direction::FromPlus),
            Err(GroupError::UnsupportedKind(_))
        ));
    }

    #[test]
    fn theorem51_bridges_preserve_verdicts() {
        let xspec = parse_satellite(
            "kind xlocal\nclass primes=2,3\np 2 => trivial\np 3 => trivial\ndefault_simple => all\n",
        )
        .unwrap();
        let bridged = theorem51_bridge(&xspec, Theorem51Direction::XLocalToComposition, None)
            .unwrap();
        assert!(matches!(bridged.kind(), SatelliteKind::LComposition(_)));
        for g in sample_groups() {
            assert_eq!(
                membership(&g, &xspec).unwrap(),
                membership(&g, &bridged).unwrap(),
                "xlocal-to-comp on {g:?}"
            );
        }

        let nstar = nstar_satellite();
        let xplus = theorem51_bridge(&nstar, Theorem51Direction::CompositionToXPlus, None)
            .unwrap();
        assert!(matches!(xplus.kind(), SatelliteKind::XLocal(_)));
        for g in sample_groups() {
            assert_eq!(
                membership(&g, &nstar).unwrap(),
                membership(&g, &xplus).unwrap(),
                "comp-to-xplus on {g:?}"
            );
        }
    }

    #[test]
    fn membership_is_series_independent_on_samples() {
        let specs = vec![nilpotency_satellite(), nstar_satellite()];
        for spec in &specs {
            for g in sample_groups() {
                if g.is_trivial() {
                    continue;
                }
                let std_v = membership(&g, spec).unwrap();
                let mut alt_v = true;
                for f in crate::structure::chief_series_alt(&g).unwrap().factors() {
                    let (value, rule) = satellite_value(spec, &f).unwrap();
                    let c = match rule {
                        CentralRule::Ordinary => chief_centralizer(&g, &f).unwrap(),
                        CentralRule::Small => small_centralizer(&g, &f).unwrap(),
                        CentralRule::MonolithicQuotient => continue,
                    };
                    let q = coset_action(&g, &c).unwrap();
                    if !formation_contains(&value, q.target()).unwrap() {
                        alt_v = false;
                    }
                }
                assert_eq!(std_v, alt_v, "series choice changed {spec} on {g:?}");
            }
        }
    }

    #[test]
    fn monotone_in_the_values() {
        let small = parse_satellite("kind local\ndefault_prime => trivial\n").unwrap();
        let large = parse_satellite("kind local\ndefault_prime => abelian\n").unwrap();
        for g in sample_groups() {
            if membership(&g, &small).unwrap() {
                assert!(membership(&g, &large).unwrap(), "monotonicity broke on {g:?}");
            }
        }
    }

    #[test]
    fn omega_composition_helper_builds_lcomposition() {
        let spec = SatelliteSpec::omega_composition(
            &[2, 3],
            BTreeMap::from([(2, FormationExpr::Trivial), (3, FormationExpr::Trivial)]),
            FormationExpr::Empty,
            FormationExpr::All,
        )
        .unwrap();
        assert!(matches!(
            spec.kind(),
            SatelliteKind::LComposition(c) if c.is_abelian_only()
        ));
        // ω = {2,3} with trivial values and f(𝔏′) = 𝔈: on {2,3}-soluble
        // corpus members this behaves like the nilpotency satellite.
        assert!(membership(&PermGroup::cyclic(12), &spec).unwrap());
        assert!(!membership(&PermGroup::symmetric(3), &spec).unwrap());
        // A5 factors through the complement slot only.
        assert!(membership(&PermGroup::alternating(5), &spec).unwrap());
    }
}
